#include "gks/composer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace gks {
namespace {

// Largest structural family worth materializing; beyond this the probe is
// no better than sampling anyway.
constexpr std::uint64_t kMaxStructuralGames = 2'000'000;

class ComposedSession : public AliceSession {
 public:
  ComposedSession(const AugmentedStrategy& outer, const AugmentedStrategy& inner)
      : n_inner_(inner.config().n), outer_session_(outer.make_session()) {
    const int blocks = outer.config().n;
    inner_sessions_.reserve(blocks);
    for (int b = 0; b < blocks; ++b) inner_sessions_.push_back(inner.make_session());
    fills_.assign(blocks, 0);
  }

  int fill(int index) override {
    const int b = index / n_inner_;
    const int l = index % n_inner_;
    if (++fills_[b] < n_inner_) return inner_sessions_[b]->fill(l);
    // Arrival completes block b: blocks complete in the order the outer
    // instance sees its positions arrive, so draw the outer bit now and
    // transmit it through the block.
    const int c = outer_session_->fill(b);
    return inner_sessions_[b]->fill_final(l, c);
  }

  int fill_final(int index, int b_bit) override {
    const int b = index / n_inner_;
    const int l = index % n_inner_;
    ++fills_[b];
    const int c = outer_session_->fill_final(b, b_bit);
    return inner_sessions_[b]->fill_final(l, c);
  }

 private:
  int n_inner_;
  std::unique_ptr<AliceSession> outer_session_;
  std::vector<std::unique_ptr<AliceSession>> inner_sessions_;
  std::vector<int> fills_;
};

class ComposedStrategy : public AugmentedStrategy {
 public:
  ComposedStrategy(StrategyPtr outer, StrategyPtr inner)
      : outer_(std::move(outer)), inner_(std::move(inner)) {
    if (!outer_ || !inner_) throw std::invalid_argument("compose: null operand");
    const GameConfig o = outer_->config();
    const GameConfig i = inner_->config();
    const std::int64_t n = std::int64_t{o.n} * i.n;
    const std::int64_t k = std::int64_t{o.k} * i.k;
    if (n > std::numeric_limits<int>::max() || k > n) {
      throw std::invalid_argument("compose: resulting instance is out of range");
    }
    config_ = {static_cast<int>(n), static_cast<int>(k)};
  }

  GameConfig config() const override { return config_; }

  std::unique_ptr<AliceSession> make_session() const override {
    return std::make_unique<ComposedSession>(*outer_, *inner_);
  }

  DecodeOutput decode(std::span<const std::uint8_t> word) const override {
    const int n_inner = inner_->config().n;
    const int blocks = outer_->config().n;
    if (static_cast<int>(word.size()) != config_.n) {
      throw std::invalid_argument("compose decode: word length != n");
    }
    std::vector<DecodeOutput> per_block;
    per_block.reserve(blocks);
    std::vector<std::uint8_t> carried(blocks);
    for (int b = 0; b < blocks; ++b) {
      per_block.push_back(inner_->decode(word.subspan(
          static_cast<std::size_t>(b) * n_inner, static_cast<std::size_t>(n_inner))));
      carried[b] = static_cast<std::uint8_t>(per_block.back().bit);
    }
    const DecodeOutput outer_out = outer_->decode(carried);
    DecodeOutput out;
    out.bit = outer_out.bit;
    for (int b : outer_out.set) {
      for (int s : per_block[b].set) out.set.push_back(b * n_inner + s);
    }
    return out;
  }

  std::string describe() const override {
    return "compose(" + outer_->describe() + "," + inner_->describe() + ")";
  }

  // One composed game per (outer arrival order, inner game in the last
  // block): the other blocks fill in outer order with their cells in
  // ascending order, then Merlin's block follows the inner game. Outer
  // orders are taken from the outer family with duplicates (same order,
  // different outer bit) dropped, since the outer bit is not free here; it
  // is whatever Merlin's block decodes to.
  std::optional<std::vector<PlannedGame>> structural_games() const override {
    const auto outer_family = outer_->structural_games();
    const auto inner_family = inner_->structural_games();
    if (!outer_family || !inner_family) return std::nullopt;
    if (static_cast<std::uint64_t>(outer_family->size()) * inner_family->size() >
        2 * kMaxStructuralGames) {
      return std::nullopt;
    }

    std::vector<const std::vector<int>*> orders;
    std::set<std::vector<int>> seen;
    for (const PlannedGame& g : *outer_family) {
      if (seen.insert(g.order).second) orders.push_back(&g.order);
    }
    const std::uint64_t total =
        static_cast<std::uint64_t>(orders.size()) * inner_family->size();
    if (total > kMaxStructuralGames) return std::nullopt;

    const int n_inner = inner_->config().n;
    std::vector<PlannedGame> games;
    games.reserve(total);
    for (const std::vector<int>* order : orders) {
      const int merlin_block = order->back();
      for (const PlannedGame& g : *inner_family) {
        PlannedGame composed;
        composed.merlin_bit = g.merlin_bit;
        composed.order.reserve(config_.n);
        for (std::size_t i = 0; i + 1 < order->size(); ++i) {
          for (int l = 0; l < n_inner; ++l) composed.order.push_back((*order)[i] * n_inner + l);
        }
        for (int l : g.order) composed.order.push_back(merlin_block * n_inner + l);
        games.push_back(std::move(composed));
      }
    }
    return games;
  }

 private:
  StrategyPtr outer_;
  StrategyPtr inner_;
  GameConfig config_{};
};

class DeclaredKStrategy : public AugmentedStrategy {
 public:
  DeclaredKStrategy(StrategyPtr base, int k, std::string label)
      : base_(std::move(base)), k_(k), label_(std::move(label)) {
    if (!base_) throw std::invalid_argument("with_declared_k: null strategy");
    if (k_ < 1 || k_ > base_->config().n) {
      throw std::invalid_argument("with_declared_k: k out of range");
    }
  }

  GameConfig config() const override { return {base_->config().n, k_}; }
  std::unique_ptr<AliceSession> make_session() const override { return base_->make_session(); }
  DecodeOutput decode(std::span<const std::uint8_t> word) const override {
    return base_->decode(word);
  }
  std::string describe() const override {
    return label_.empty() ? base_->describe() + "[k=" + std::to_string(k_) + "]" : label_;
  }
  std::optional<std::vector<PlannedGame>> structural_games() const override {
    return base_->structural_games();
  }

 private:
  StrategyPtr base_;
  int k_;
  std::string label_;
};

}  // namespace

StrategyPtr compose(StrategyPtr outer, StrategyPtr inner) {
  return std::make_shared<ComposedStrategy>(std::move(outer), std::move(inner));
}

StrategyPtr with_declared_k(StrategyPtr strategy, int k) {
  return std::make_shared<DeclaredKStrategy>(std::move(strategy), k, "");
}

StrategyPtr theorem2_strategy(std::shared_ptr<const CodeTable> table) {
  if (!table) throw std::invalid_argument("theorem2: null table");
  const int m = table->m();
  const int u = table->u();
  std::string label =
      "theorem2(m=" + std::to_string(m) + ",u=" + std::to_string(u) + ")";
  // Flood over blocks: whichever side Bob lands on, every selected block
  // contributes its exact count, m-u from a codeword block or one per
  // flipped block, so the worst case is exactly m-u.
  return std::make_shared<DeclaredKStrategy>(
      compose(flood_strategy(m - u), code_block_strategy(std::move(table))), m - u,
      std::move(label));
}

MeasuredK measured_k(const AugmentedStrategy& strategy, const Probe& probe) {
  MeasuredK result;
  auto record = [&](const GameResult& g) {
    result.k = std::max(result.k, g.set_size);
    ++result.games;
  };
  switch (probe.kind) {
    case Probe::Kind::Exhaustive: {
      const int n = strategy.config().n;
      if (n > probe.max_n) {
        throw BudgetExceeded("measured_k: exhaustive probe infeasible at n=" +
                             std::to_string(n));
      }
      std::vector<int> order(n);
      for (int i = 0; i < n; ++i) order[i] = i;
      do {
        for (int bit = 0; bit < 2; ++bit) {
          record(run_planned(strategy, {order, bit}));
        }
      } while (std::next_permutation(order.begin(), order.end()));
      result.exact = true;
      return result;
    }
    case Probe::Kind::Structural: {
      const auto family = strategy.structural_games();
      if (!family) {
        throw BudgetExceeded("measured_k: no structural family at n=" +
                             std::to_string(strategy.config().n));
      }
      for (const PlannedGame& g : *family) record(run_planned(strategy, g));
      result.exact = true;
      return result;
    }
    case Probe::Kind::Sampled: {
      RandomAdversary merlin(probe.seed);
      for (std::uint64_t t = 0; t < probe.samples; ++t) {
        record(run_game(strategy, merlin));
      }
      result.exact = false;
      return result;
    }
  }
  throw std::logic_error("measured_k: unknown probe kind");
}

double exponent(int k, int n) {
  if (k < 1 || n < 2) {
    throw std::domain_error("exponent: requires k >= 1 and n >= 2");
  }
  return std::log(static_cast<double>(k)) / std::log(static_cast<double>(n));
}

}  // namespace gks
