// simulate.hpp -- batch simulation and report/transcript serialization.

#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "gks/game.hpp"

namespace gks {

enum class AdversaryModel { Random, Sweep };

// Deterministic permutation family: trial t plays the rotation starting at
// position (t mod n), so Merlin's position sweeps the whole board; Merlin's
// bit alternates with t.
class SweepAdversary : public Adversary {
 public:
  explicit SweepAdversary(std::uint64_t trial) : trial_(trial) {}

  void begin(int n) override;
  int next_index(std::span<const std::int8_t>) override { return order_[next_++]; }
  int merlin_bit(std::span<const std::int8_t>, int) override {
    return static_cast<int>(trial_ & 1);
  }

 private:
  std::uint64_t trial_;
  std::vector<int> order_;
  std::size_t next_ = 0;
};

struct BatchReport {
  std::string strategy;   // descriptor as given
  std::string adversary;  // "random" | "sweep"
  int n = 0;
  int declared_k = 0;
  std::uint64_t trials = 0;
  std::uint64_t wins = 0;
  int max_set_size = 0;
  std::map<int, std::uint64_t> set_size_histogram;
  std::uint64_t seed = 0;
};

// Runs `trials` independent games. Trial t uses seed + t, so the report is
// a pure function of (strategy, adversary, trials, seed) regardless of
// execution order.
BatchReport simulate_batch(const StrategyPtr& strategy,
                           const std::string& descriptor,
                           AdversaryModel adversary, std::uint64_t trials,
                           std::uint64_t seed);

std::string to_text(const BatchReport& report);
std::string to_json(const BatchReport& report);

// Positions render 1-based in both formats.
std::string to_text(const Transcript& transcript);
std::string to_json(const Transcript& transcript);

}  // namespace gks
