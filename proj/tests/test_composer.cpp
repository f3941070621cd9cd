#include <doctest.h>

#include <cmath>

#include "gks/composer.hpp"

using namespace gks;

TEST_CASE("compose multiplies both parameters") {
  const StrategyPtr c = compose(flood_strategy(2), flood_strategy(3));
  CHECK(c->config().n == 6);
  CHECK(c->config().k == 6);
  CHECK(c->describe() == "compose(flood:2,flood:3)");
  CHECK_THROWS_AS(compose(nullptr, flood_strategy(2)), std::invalid_argument);
}

TEST_CASE("composed flood wins exhaustively") {
  const StrategyPtr c = compose(flood_strategy(2), flood_strategy(3));
  const VerifyReport report = verify_exhaustive(*c);
  CHECK(report.pass);
  CHECK(report.games == 1440);
  CHECK(report.max_set_size == 6);
}

TEST_CASE("composed strategies keep the augmented contract") {
  const StrategyPtr c = compose(flood_strategy(2), flood_strategy(3));
  CHECK(verify_augmented(*c, Probe::exhaustive()).pass);

  const StrategyPtr with_block = compose(flood_strategy(3), code_block_strategy(canonical_table()));
  CHECK(verify_augmented(*with_block, Probe::sampled(100, 3)).pass);
}

TEST_CASE("composed structural family agrees with exhaustion") {
  const StrategyPtr c = compose(flood_strategy(2), flood_strategy(2));
  const MeasuredK structural = measured_k(*c, Probe::structural());
  const MeasuredK exhaustive = measured_k(*c, Probe::exhaustive());
  CHECK(structural.exact);
  CHECK(exhaustive.exact);
  CHECK(structural.k == exhaustive.k);
  CHECK(structural.k == 4);
  // 2 distinct outer orders x (2 positions x 2 bits) inner games
  CHECK(structural.games == 8);
  CHECK(exhaustive.games == 48);
}

TEST_CASE("theorem2 is the flood-over-blocks composition, declared exactly") {
  const StrategyPtr t2 = theorem2_strategy(canonical_table());
  CHECK(t2->config().n == 108);
  CHECK(t2->config().k == 9);
  CHECK(t2->describe() == "theorem2(m=12,u=3)");

  const MeasuredK m = measured_k(*t2, Probe::structural());
  CHECK(m.exact);
  CHECK(m.k == 9);
  CHECK(m.games == 35640);  // 9 merlin blocks x 3960 block games

  const StrategyPtr raw = compose(flood_strategy(9), code_block_strategy(canonical_table()));
  CHECK(raw->config().k == 81);  // the safe product, before re-declaration
  const MeasuredK raw_m = measured_k(*raw, Probe::structural());
  CHECK(raw_m.k == 9);
}

TEST_CASE("theorem2 wins sampled games with set size exactly 9") {
  const StrategyPtr t2 = theorem2_strategy(canonical_table());
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    RandomAdversary merlin(seed);
    const GameResult r = run_game(*t2, merlin);
    CHECK(r.win);
    CHECK(r.set_size == 9);
  }
}

TEST_CASE("with_declared_k re-declares only the bound") {
  const StrategyPtr flood = flood_strategy(6);
  const StrategyPtr tight = with_declared_k(flood, 2);
  CHECK(tight->config().n == 6);
  CHECK(tight->config().k == 2);

  // The all-zero game answers with all 6 positions: within flood's declared
  // bound, outside the tightened one.
  const GameResult loose = run_planned(*flood, {{0, 1, 2, 3, 4, 5}, 0});
  CHECK(loose.win);
  const GameResult r = run_planned(*tight, {{0, 1, 2, 3, 4, 5}, 0});
  CHECK_FALSE(r.win);
  CHECK(r.set_size == 6);

  CHECK_THROWS_AS(with_declared_k(flood, 0), std::invalid_argument);
  CHECK_THROWS_AS(with_declared_k(flood, 7), std::invalid_argument);
}

TEST_CASE("double composition reaches (81, 11664)") {
  const StrategyPtr t2 = theorem2_strategy(canonical_table());
  const StrategyPtr c = compose(t2, t2);
  CHECK(c->config().n == 11664);
  CHECK(c->config().k <= 81);
  CHECK(c->config().k == 81);

  RandomAdversary merlin(5);
  const GameResult r = run_game(*c, merlin);
  CHECK(r.win);
  CHECK(r.set_size == 81);  // 9 selected blocks x 9 positions each
}

TEST_CASE("composed decode propagates block errors") {
  const StrategyPtr c = compose(flood_strategy(2), flood_strategy(3));
  // Two ones within one block: the inner decoder rejects it.
  const std::vector<std::uint8_t> corrupt{1, 1, 0, 0, 0, 0};
  CHECK_THROWS_AS(c->decode(corrupt), DecodeError);
  const std::vector<std::uint8_t> wrong_length(5, 0);
  CHECK_THROWS_AS(c->decode(wrong_length), std::invalid_argument);
}

TEST_CASE("measured_k probes") {
  const StrategyPtr flood = flood_strategy(4);
  const MeasuredK exhaustive = measured_k(*flood, Probe::exhaustive());
  CHECK(exhaustive.k == 4);
  CHECK(exhaustive.exact);
  CHECK(exhaustive.games == 48);

  const MeasuredK sampled = measured_k(*flood, Probe::sampled(64, 11));
  CHECK_FALSE(sampled.exact);
  CHECK(sampled.games == 64);
  CHECK(sampled.k <= 4);
  CHECK(sampled.k >= 1);

  CHECK_THROWS_AS(measured_k(*flood_strategy(9), Probe::exhaustive()), BudgetExceeded);
}

TEST_CASE("exponent") {
  CHECK(exponent(9, 108) == doctest::Approx(std::log(9.0) / std::log(108.0)).epsilon(1e-12));
  CHECK(exponent(1, 2) == 0.0);
  CHECK_THROWS_AS(exponent(0, 10), std::domain_error);
  CHECK_THROWS_AS(exponent(3, 1), std::domain_error);
}
