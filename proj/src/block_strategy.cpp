#include "gks/block_strategy.hpp"

#include <algorithm>

namespace gks {
namespace {

class BlockSession : public AliceSession {
 public:
  explicit BlockSession(const CodeTable& table) : table_(table) {}

  int fill(int index) override {
    ++arrivals_;
    if (arrivals_ <= table_.u()) {
      first_ |= Mask{1} << index;
      if (arrivals_ == table_.u()) {
        assigned_ = lookup_row_by_underline(table_, first_);
      }
      return 1;
    }
    return has_bit(table_.row(assigned_).bits, index) ? 1 : 0;
  }

  int fill_final(int index, int b) override {
    ++arrivals_;
    if (assigned_ < 0) {
      throw std::logic_error("block fill_final before the codeword was assigned");
    }
    const int codeword_bit = has_bit(table_.row(assigned_).bits, index) ? 1 : 0;
    return b == 1 ? codeword_bit : 1 - codeword_bit;
  }

 private:
  const CodeTable& table_;
  Mask first_ = 0;   // the first u arrivals, which become the underline set
  int arrivals_ = 0;
  int assigned_ = -1;
};

class BlockStrategy : public AugmentedStrategy {
 public:
  explicit BlockStrategy(std::shared_ptr<const CodeTable> table) : table_(std::move(table)) {
    if (!table_) throw std::invalid_argument("block strategy: null table");
    if (table_->u() >= table_->m()) {
      throw std::invalid_argument("block strategy: needs u < m");
    }
  }

  GameConfig config() const override { return {table_->m(), table_->m() - table_->u()}; }

  std::unique_ptr<AliceSession> make_session() const override {
    return std::make_unique<BlockSession>(*table_);
  }

  DecodeOutput decode(std::span<const std::uint8_t> word) const override {
    if (static_cast<int>(word.size()) != table_->m()) {
      throw std::invalid_argument("block decode: word length != m");
    }
    const DecodeResult r = gks::decode(*table_, pack_word(word));
    switch (r.kind) {
      case DecodeResult::Kind::Exact: {
        // Merlin matched the codeword: he sits somewhere non-underlined.
        DecodeOutput out;
        const Codeword& row = table_->row(r.row);
        for (int p = 0; p < table_->m(); ++p) {
          if (!has_bit(row.underline, p)) out.set.push_back(p);
        }
        out.bit = 1;
        return out;
      }
      case DecodeResult::Kind::OneError:
        // The flipped position was filled last.
        return {{r.position}, 0};
      case DecodeResult::Kind::NoMatch:
        break;
    }
    throw DecodeError(DecodeError::Kind::NoMatch,
                      "block decode: string is outside every ball; transcript is corrupt");
  }

  std::string describe() const override {
    return "block(m=" + std::to_string(table_->m()) + ",u=" + std::to_string(table_->u()) + ")";
  }

  std::optional<std::vector<PlannedGame>> structural_games() const override {
    // Every honest game is determined, up to middle-arrival order, by the
    // first-arrival set, Merlin's position and Merlin's bit.
    const int m = table_->m();
    std::vector<PlannedGame> games;
    games.reserve(static_cast<std::size_t>(table_->row_count()) * (m - table_->u()) * 2);
    for (const Codeword& row : table_->rows()) {
      for (int p = 0; p < m; ++p) {
        if (has_bit(row.underline, p)) continue;
        for (int bit = 0; bit < 2; ++bit) {
          PlannedGame g;
          g.merlin_bit = bit;
          for (int q : mask_positions(row.underline)) g.order.push_back(q);
          for (int q = 0; q < m; ++q) {
            if (q != p && !has_bit(row.underline, q)) g.order.push_back(q);
          }
          g.order.push_back(p);
          games.push_back(std::move(g));
        }
      }
    }
    return games;
  }

 private:
  std::shared_ptr<const CodeTable> table_;
};

}  // namespace

StrategyPtr code_block_strategy(std::shared_ptr<const CodeTable> table) {
  return std::make_shared<BlockStrategy>(std::move(table));
}

VerifyReport structural_verify_block(std::shared_ptr<const CodeTable> table,
                                     std::uint64_t invariance_samples, std::uint64_t seed) {
  const CodeTable& t = *table;
  const int m = t.m();
  const int u = t.u();
  StrategyPtr strategy = code_block_strategy(table);

  VerifyReport report;
  report.pass = true;

  // Completes a block for first-arrival set T, last position p, middle
  // arrivals in the given order; mode: 0/1 = Alice transmits that bit,
  // 2/3 = Merlin writes bit mode-2.
  auto complete = [&](Mask T, int p, std::span<const int> middle, int mode) {
    auto session = strategy->make_session();
    std::vector<std::uint8_t> word(m, 0);
    for (int q : mask_positions(T)) word[q] = static_cast<std::uint8_t>(session->fill(q));
    for (int q : middle) word[q] = static_cast<std::uint8_t>(session->fill(q));
    if (mode <= 1) {
      word[p] = static_cast<std::uint8_t>(session->fill_final(p, mode));
    } else {
      word[p] = static_cast<std::uint8_t>(mode - 2);
    }
    return word;
  };

  auto fail = [&](Mask T, int p, int mode, const std::string& what) {
    static const char* kModes[] = {"alice transmit 0", "alice transmit 1", "merlin bit 0",
                                   "merlin bit 1"};
    report.pass = false;
    std::string positions;
    for (int q : mask_positions(T)) positions += (positions.empty() ? "" : ",") + std::to_string(q + 1);
    report.failures.push_back("T={" + positions + "} last=" + std::to_string(p + 1) + " " +
                              kModes[mode] + ": " + what);
  };

  const std::vector<Mask> all_subsets = subsets_colex(m, u);
  for (Mask T : all_subsets) {
    for (int p = 0; p < m; ++p) {
      if (has_bit(T, p)) continue;
      std::vector<int> middle;
      for (int q = 0; q < m; ++q) {
        if (q != p && !has_bit(T, q)) middle.push_back(q);
      }
      for (int mode = 0; mode < 4; ++mode) {
        ++report.games;
        std::vector<std::uint8_t> word;
        try {
          word = complete(T, p, middle, mode);
        } catch (const std::exception& e) {
          fail(T, p, mode, e.what());
          continue;
        }
        const Mask packed = pack_word(word);
        const int exact_row = t.row_by_bits(packed);
        if (mode == 0) {
          if (exact_row >= 0) {
            fail(T, p, mode, "block completed by Alice equals row " + std::to_string(exact_row + 1));
            continue;
          }
          const DecodeResult r = gks::decode(t, packed);
          if (r.kind != DecodeResult::Kind::OneError || t.row(r.row).underline != T ||
              r.position != p) {
            fail(T, p, mode, "expected a one-flip decode back to the assigned row at the last position");
          }
        } else if (mode == 1) {
          if (exact_row < 0 || t.row(exact_row).underline != T) {
            fail(T, p, mode, "block does not equal the assigned codeword");
          }
        } else {
          DecodeOutput out;
          try {
            out = strategy->decode(word);
          } catch (const std::exception& e) {
            fail(T, p, mode, e.what());
            continue;
          }
          report.max_set_size = std::max(report.max_set_size, static_cast<int>(out.set.size()));
          if (!std::binary_search(out.set.begin(), out.set.end(), p)) {
            fail(T, p, mode, "Bob's set misses the last position");
          } else if (static_cast<int>(out.set.size()) > m - u) {
            fail(T, p, mode, "Bob's set exceeds m-u positions");
          }
        }
      }
    }
  }

  // Order invariance: the completed block is a function of (T, p, mode).
  Rng rng(seed);
  for (std::uint64_t s = 0; s < invariance_samples; ++s) {
    const Mask T = all_subsets[rng.below(all_subsets.size())];
    std::vector<int> rest;
    for (int q = 0; q < m; ++q) {
      if (!has_bit(T, q)) rest.push_back(q);
    }
    const int p = rest[rng.below(rest.size())];
    std::vector<int> middle;
    for (int q : rest) {
      if (q != p) middle.push_back(q);
    }
    const int mode = static_cast<int>(rng.below(4));
    const std::vector<std::uint8_t> reference = complete(T, p, middle, mode);
    rng.shuffle(middle);
    ++report.games;
    if (complete(T, p, middle, mode) != reference) {
      fail(T, p, mode, "completed block depends on the middle arrival order");
    }
  }
  return report;
}

}  // namespace gks
