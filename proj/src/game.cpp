#include "gks/game.hpp"

#include <algorithm>
#include <numeric>

namespace gks {

void RandomAdversary::begin(int n) {
  order_ = rng_.permutation(n);
  next_ = 0;
  bit_ = rng_.bit();
}

namespace {

int checked_bit(int bit, const char* who) {
  if (bit != 0 && bit != 1) {
    throw std::logic_error(std::string(who) + " produced a non-bit value " + std::to_string(bit));
  }
  return bit;
}

std::string order_to_text(std::span<const int> order) {
  std::string s;
  for (int i : order) s += (s.empty() ? "" : " ") + std::to_string(i + 1);
  return s;
}

}  // namespace

GameResult run_game(const AugmentedStrategy& strategy, Adversary& merlin) {
  const GameConfig cfg = strategy.config();
  const int n = cfg.n;

  std::vector<std::int8_t> board(n, -1);
  std::vector<int> order;
  order.reserve(n);
  auto session = strategy.make_session();

  merlin.begin(n);
  for (int step = 0; step + 1 < n; ++step) {
    const int index = merlin.next_index(board);
    if (index < 0 || index >= n) {
      throw AdversaryProtocolError("adversary sent out-of-range index " + std::to_string(index + 1));
    }
    if (board[index] != -1) {
      throw AdversaryProtocolError("adversary repeated index " + std::to_string(index + 1));
    }
    board[index] = static_cast<std::int8_t>(checked_bit(session->fill(index), "fill"));
    order.push_back(index);
  }

  int merlin_pos = -1;
  for (int i = 0; i < n; ++i) {
    if (board[i] == -1) {
      merlin_pos = i;
      break;
    }
  }
  const int merlin_bit = merlin.merlin_bit(board, merlin_pos);
  if (merlin_bit != 0 && merlin_bit != 1) {
    throw AdversaryProtocolError("adversary wrote a non-bit value " + std::to_string(merlin_bit));
  }
  board[merlin_pos] = static_cast<std::int8_t>(merlin_bit);
  order.push_back(merlin_pos);

  GameResult result;
  result.transcript.arrival_order = std::move(order);
  result.transcript.written.assign(board.begin(), board.end());
  result.transcript.merlin_pos = merlin_pos;
  result.transcript.merlin_bit = merlin_bit;

  DecodeOutput out = strategy.decode(result.transcript.written);
  result.set_size = static_cast<int>(out.set.size());
  result.win = result.set_size <= cfg.k &&
               std::binary_search(out.set.begin(), out.set.end(), merlin_pos);
  result.transcript.bob_set = std::move(out.set);
  result.transcript.bob_bit = out.bit;
  return result;
}

GameResult run_planned(const AugmentedStrategy& strategy, const PlannedGame& game) {
  ScriptedAdversary merlin(game.order, game.merlin_bit);
  return run_game(strategy, merlin);
}

// ---------------------------------------------------------------------------
// Flood strategy

namespace {

class FloodSession : public AliceSession {
 public:
  int fill(int) override { return 0; }
  int fill_final(int, int b) override { return b; }
};

class FloodStrategy : public AugmentedStrategy {
 public:
  explicit FloodStrategy(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("flood: n must be >= 1");
  }

  GameConfig config() const override { return {n_, n_}; }

  std::unique_ptr<AliceSession> make_session() const override {
    return std::make_unique<FloodSession>();
  }

  DecodeOutput decode(std::span<const std::uint8_t> word) const override {
    if (static_cast<int>(word.size()) != n_) {
      throw std::invalid_argument("flood decode: word length != n");
    }
    int one_pos = -1;
    int ones = 0;
    for (int i = 0; i < n_; ++i) {
      if (word[i]) {
        ++ones;
        one_pos = i;
      }
    }
    if (ones > 1) {
      throw DecodeError(DecodeError::Kind::MultipleOnes,
                        "flood decode: " + std::to_string(ones) +
                            " ones in the received string; transcript is corrupt");
    }
    if (ones == 1) return {{one_pos}, 1};
    DecodeOutput all;
    all.set.resize(n_);
    std::iota(all.set.begin(), all.set.end(), 0);
    all.bit = 0;
    return all;
  }

  std::string describe() const override { return "flood:" + std::to_string(n_); }

  std::optional<std::vector<PlannedGame>> structural_games() const override {
    // Outcomes depend only on Merlin's bit (and his position, for the
    // singleton case), so position x bit covers everything.
    std::vector<PlannedGame> games;
    games.reserve(2 * static_cast<std::size_t>(n_));
    for (int pos = 0; pos < n_; ++pos) {
      for (int bit = 0; bit < 2; ++bit) {
        PlannedGame g;
        g.merlin_bit = bit;
        for (int i = 0; i < n_; ++i) {
          if (i != pos) g.order.push_back(i);
        }
        g.order.push_back(pos);
        games.push_back(std::move(g));
      }
    }
    return games;
  }

 private:
  int n_;
};

}  // namespace

StrategyPtr flood_strategy(int n) { return std::make_shared<FloodStrategy>(n); }

// ---------------------------------------------------------------------------
// Verification

namespace {

void record_failure(VerifyReport& report, const Transcript& transcript, std::string message) {
  report.pass = false;
  if (!report.counterexample) report.counterexample = transcript;
  report.failures.push_back(std::move(message));
}

}  // namespace

VerifyReport verify_exhaustive(const AugmentedStrategy& strategy, int max_n) {
  const GameConfig cfg = strategy.config();
  if (cfg.n > max_n) {
    throw BudgetExceeded("verify_exhaustive: n = " + std::to_string(cfg.n) +
                         " exceeds the budget of n <= " + std::to_string(max_n));
  }
  VerifyReport report;
  report.pass = true;
  std::vector<int> order(cfg.n);
  std::iota(order.begin(), order.end(), 0);
  do {
    for (int bit = 0; bit < 2; ++bit) {
      GameResult r = run_planned(strategy, {order, bit});
      ++report.games;
      report.max_set_size = std::max(report.max_set_size, r.set_size);
      if (!r.win) {
        record_failure(report, r.transcript,
                       "lost game: order [" + order_to_text(order) + "], merlin bit " +
                           std::to_string(bit) + ", |S| = " + std::to_string(r.set_size));
      }
    }
  } while (std::next_permutation(order.begin(), order.end()));
  return report;
}

VerifyReport verify_augmented(const AugmentedStrategy& strategy, const Probe& orders) {
  const GameConfig cfg = strategy.config();
  VerifyReport report;
  report.pass = true;

  auto check_order = [&](const std::vector<int>& order) {
    for (int b = 0; b < 2; ++b) {
      auto session = strategy.make_session();
      std::vector<std::uint8_t> word(cfg.n, 0);
      for (int step = 0; step < cfg.n - 1; ++step) {
        word[order[step]] = static_cast<std::uint8_t>(checked_bit(session->fill(order[step]), "fill"));
      }
      const int last = order[cfg.n - 1];
      word[last] = static_cast<std::uint8_t>(checked_bit(session->fill_final(last, b), "fill_final"));
      DecodeOutput out = strategy.decode(word);
      ++report.games;
      if (out.bit != b) {
        Transcript t;
        t.arrival_order = order;
        t.written = word;
        t.merlin_pos = -1;
        t.bob_set = out.set;
        t.bob_bit = out.bit;
        record_failure(report, t,
                       "transmitted bit lost: order [" + order_to_text(order) + "], sent " +
                           std::to_string(b) + ", decoded " + std::to_string(out.bit));
      }
    }
  };

  switch (orders.kind) {
    case Probe::Kind::Exhaustive: {
      if (cfg.n > orders.max_n) {
        throw BudgetExceeded("verify_augmented: n = " + std::to_string(cfg.n) +
                             " exceeds the budget of n <= " + std::to_string(orders.max_n));
      }
      std::vector<int> order(cfg.n);
      std::iota(order.begin(), order.end(), 0);
      do {
        check_order(order);
      } while (std::next_permutation(order.begin(), order.end()));
      break;
    }
    case Probe::Kind::Sampled: {
      Rng rng(orders.seed);
      for (std::uint64_t i = 0; i < orders.samples; ++i) {
        check_order(rng.permutation(cfg.n));
      }
      break;
    }
    case Probe::Kind::Structural:
      throw std::invalid_argument("verify_augmented: structural probe not applicable");
  }
  return report;
}

}  // namespace gks
