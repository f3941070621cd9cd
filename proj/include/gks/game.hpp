// game.hpp -- game engine, strategy contract, flood strategy, verification.
//
// One game on n positions: the adversary (Merlin) reveals positions one by
// one; Alice immediately writes a bit into each revealed position; the last
// position is written by Merlin, not Alice; Bob sees only the final string
// and must name a set of at most k positions containing Merlin's position.
//
// Strategies here satisfy an augmented contract: when Alice herself fills
// the final position (no Merlin), she is handed one extra bit b via
// fill_final and Bob's decoder must recover exactly b. That hook is what
// makes strategy composition constructive; a plain game never calls
// fill_final on the outermost strategy.

#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "gks/rng.hpp"

namespace gks {

struct GameConfig {
  int n = 0;  // number of positions
  int k = 0;  // declared bound on Bob's set size, 1 <= k <= n
};

class DecodeError : public std::runtime_error {
 public:
  enum class Kind { MultipleOnes, NoMatch };

  DecodeError(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class AdversaryProtocolError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One Alice play-through. Stateful, single-threaded, deterministic.
class AliceSession {
 public:
  virtual ~AliceSession() = default;

  // Alice's bit for a newly revealed position.
  virtual int fill(int index) = 0;

  // Called instead of fill() when `index` is the instance's last position
  // and Alice (not Merlin) fills it; b is the bit to transmit. Returns the
  // bit actually written.
  virtual int fill_final(int index, int b) = 0;
};

struct DecodeOutput {
  std::vector<int> set;  // Bob's positions, sorted ascending
  int bit = 0;           // transmitted bit (meaningful when Alice filled all)
};

// An honest game fixed up front: a permutation of 0..n-1 whose last element
// is Merlin's position, plus Merlin's bit.
struct PlannedGame {
  std::vector<int> order;
  int merlin_bit = 0;
};

// Strategy factories and decoders are immutable after construction and safe
// to share; sessions are not.
class AugmentedStrategy {
 public:
  virtual ~AugmentedStrategy() = default;

  virtual GameConfig config() const = 0;
  virtual std::unique_ptr<AliceSession> make_session() const = 0;
  virtual DecodeOutput decode(std::span<const std::uint8_t> word) const = 0;
  virtual std::string describe() const = 0;

  // A finite family of honest games sweeping every configuration the
  // decoder can distinguish structurally (see measured_k). Strategies
  // without such a family return nullopt.
  virtual std::optional<std::vector<PlannedGame>> structural_games() const {
    return std::nullopt;
  }
};

using StrategyPtr = std::shared_ptr<const AugmentedStrategy>;

struct Transcript {
  std::vector<int> arrival_order;       // last element is Merlin's position
  std::vector<std::uint8_t> written;    // final string
  int merlin_pos = -1;
  int merlin_bit = 0;
  std::vector<int> bob_set;
  int bob_bit = 0;

  friend bool operator==(const Transcript&, const Transcript&) = default;
};

struct GameResult {
  Transcript transcript;
  bool win = false;
  int set_size = 0;
};

// Adaptive adversary: sees Alice's written bits (board cells are 0/1, -1
// while empty) before choosing the next position. Deterministic Alice makes
// this exactly as strong as fixing the permutation up front.
class Adversary {
 public:
  virtual ~Adversary() = default;

  virtual void begin(int n) = 0;
  virtual int next_index(std::span<const std::int8_t> board) = 0;
  virtual int merlin_bit(std::span<const std::int8_t> board, int merlin_pos) = 0;
};

class ScriptedAdversary : public Adversary {
 public:
  ScriptedAdversary(std::vector<int> order, int bit)
      : order_(std::move(order)), bit_(bit) {}

  void begin(int) override { next_ = 0; }
  int next_index(std::span<const std::int8_t>) override { return order_[next_++]; }
  int merlin_bit(std::span<const std::int8_t>, int) override { return bit_; }

 private:
  std::vector<int> order_;
  std::size_t next_ = 0;
  int bit_;
};

// Fresh uniform permutation and uniform bit per game.
class RandomAdversary : public Adversary {
 public:
  explicit RandomAdversary(std::uint64_t seed) : rng_(seed) {}

  void begin(int n) override;
  int next_index(std::span<const std::int8_t>) override { return order_[next_++]; }
  int merlin_bit(std::span<const std::int8_t>, int) override { return bit_; }

 private:
  Rng rng_;
  std::vector<int> order_;
  std::size_t next_ = 0;
  int bit_ = 0;
};

// Plays one game: n-1 positions go to Alice, Merlin fills the remaining one,
// Bob decodes the final string. Alice never sees Merlin's position and Bob
// sees only the final string. win <=> Merlin's position is in Bob's set and
// the set is within the declared bound.
GameResult run_game(const AugmentedStrategy& strategy, Adversary& merlin);
GameResult run_planned(const AugmentedStrategy& strategy, const PlannedGame& game);

// The trivial (n, n)-strategy: Alice writes zeros; a lone one marks Merlin's
// position, an all-zero string means Merlin wrote zero somewhere. Its
// decoder raises MultipleOnes on strings unreachable in honest play.
StrategyPtr flood_strategy(int n);

struct VerifyReport {
  bool pass = false;
  std::uint64_t games = 0;
  int max_set_size = 0;
  std::vector<std::string> failures;
  std::optional<Transcript> counterexample;  // first failing game, if any
};

// Probe sizes for verification and worst-case measurement.
struct Probe {
  enum class Kind { Exhaustive, Structural, Sampled };

  Kind kind = Kind::Exhaustive;
  std::uint64_t samples = 0;
  std::uint64_t seed = 0;
  int max_n = 8;  // exhaustive budget: n! * 2 games is feasible up to here

  static Probe exhaustive(int max_n = 8) { return {Kind::Exhaustive, 0, 0, max_n}; }
  static Probe structural() { return {Kind::Structural, 0, 0, 0}; }
  static Probe sampled(std::uint64_t count, std::uint64_t seed) {
    return {Kind::Sampled, count, seed, 0};
  }
};

// Runs every permutation of the n positions against both Merlin bits.
// Throws BudgetExceeded when n exceeds max_n.
VerifyReport verify_exhaustive(const AugmentedStrategy& strategy, int max_n = 8);

// Checks the bit-transmission half of the augmented contract: for each
// tested arrival order and each b in {0,1}, Alice fills all n positions
// ending with fill_final(last, b), and the decoded bit must equal b.
// Accepts exhaustive or sampled probes.
VerifyReport verify_augmented(const AugmentedStrategy& strategy, const Probe& orders);

}  // namespace gks
