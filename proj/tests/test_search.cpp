#include <doctest.h>

#include "gks/search.hpp"

#include "gks/game.hpp"

using namespace gks;

TEST_CASE("counting bound") {
  const CountingBound ok = counting_bound(12, 3);
  CHECK(ok.lhs == 2200);
  CHECK(ok.rhs == 4096);
  CHECK(ok.feasible);

  const CountingBound no = counting_bound(3, 1);
  CHECK(no.lhs == 9);
  CHECK(no.rhs == 8);
  CHECK_FALSE(no.feasible);

  const CountingBound edge = counting_bound(4, 1);
  CHECK(edge.lhs == 16);
  CHECK(edge.rhs == 16);
  CHECK(edge.feasible);

  CHECK_THROWS_AS(counting_bound(5, 0), std::invalid_argument);
  CHECK_THROWS_AS(counting_bound(5, 6), std::invalid_argument);
}

namespace {

SearchProblem problem_for(int m, int u, std::uint64_t seed = 0) {
  SearchProblem p;
  p.m = m;
  p.u = u;
  p.seed = seed;
  return p;
}

}  // namespace

TEST_CASE("infeasible counting is refused immediately") {
  const SearchOutcome out = search_table(problem_for(3, 1));
  CHECK(out.kind == SearchOutcome::Kind::UnsatCounting);
  CHECK(out.stats.nodes == 0);
  CHECK_FALSE(out.table.has_value());
}

TEST_CASE("trivial instances are decided exactly") {
  const SearchOutcome one = search_table(problem_for(1, 1));
  REQUIRE(one.kind == SearchOutcome::Kind::Found);
  REQUIRE(one.table.has_value());
  CHECK(verify_table(*one.table).pass());
  CHECK(one.table->row_count() == 1);
  CHECK(one.table->row(0).bits == 0b1);

  const SearchOutcome full = search_table(problem_for(2, 2));
  REQUIRE(full.kind == SearchOutcome::Kind::Found);
  CHECK(full.table->row(0).bits == 0b11);

  CHECK(search_table(problem_for(2, 1)).kind == SearchOutcome::Kind::UnsatExhausted);
  CHECK(search_table(problem_for(3, 2)).kind == SearchOutcome::Kind::UnsatExhausted);

  const SearchOutcome tiny = brute_force_oracle(2, 1);
  CHECK(tiny.kind == SearchOutcome::Kind::UnsatExhausted);
  CHECK(tiny.stats.nodes == 4);
}

TEST_CASE("oracle agrees with the backtracker on small instances") {
  struct Case {
    int m, u;
  };
  const Case cases[] = {{1, 1}, {2, 1}, {2, 2}, {3, 1}, {3, 2},
                        {3, 3}, {4, 1}, {4, 3}, {5, 1}};
  for (const Case& c : cases) {
    CAPTURE(c.m);
    CAPTURE(c.u);
    const SearchOutcome oracle = brute_force_oracle(c.m, c.u);
    const SearchOutcome search = search_table(problem_for(c.m, c.u, 5));
    const bool oracle_found = oracle.kind == SearchOutcome::Kind::Found;
    const bool search_found = search.kind == SearchOutcome::Kind::Found;
    CHECK(oracle_found == search_found);
    if (oracle_found) {
      CHECK(verify_table(*oracle.table).pass());
      CHECK(verify_table(*search.table).pass());
    }
  }
}

TEST_CASE("the (4,1) regression verdict") {
  // Counting is boundary-feasible (16 = 16) yet no assignment works; the
  // oracle's 4096-case enumeration fixes this verdict permanently.
  const SearchOutcome oracle = brute_force_oracle(4, 1);
  CHECK(oracle.kind == SearchOutcome::Kind::UnsatExhausted);
  CHECK(oracle.stats.nodes == 4096);

  const SearchOutcome search = search_table(problem_for(4, 1));
  CHECK(search.kind == SearchOutcome::Kind::UnsatExhausted);
}

TEST_CASE("oracle refuses oversized enumerations") {
  CHECK_THROWS_AS(brute_force_oracle(12, 3), BudgetExceeded);
  CHECK_THROWS_AS(brute_force_oracle(5, 1, 1000), BudgetExceeded);
}

TEST_CASE("fixed seed implies identical outcome and node count") {
  SearchProblem a = problem_for(12, 3, 77);
  a.node_budget = 150000;
  const SearchOutcome first = search_table(a);
  const SearchOutcome second = search_table(a);
  CHECK(first.kind == second.kind);
  CHECK(first.stats.nodes == second.stats.nodes);
  CHECK(first.best_depth == second.best_depth);
  CHECK(first.kind == SearchOutcome::Kind::Timeout);
  CHECK(first.stats.nodes >= 150000);
  CHECK(first.best_depth > 0);
}

TEST_CASE("budgets produce Timeout, not false Unsat") {
  SearchProblem p = problem_for(12, 3, 1);
  p.time_budget = std::chrono::milliseconds(30);
  const SearchOutcome out = search_table(p);
  CHECK(out.kind == SearchOutcome::Kind::Timeout);
  CHECK_FALSE(out.table.has_value());
}

TEST_CASE("rejected candidates are never extended") {
  SearchProblem p = problem_for(4, 1, 3);
  int last_depth = -1;
  bool last_accepted = true;
  std::uint64_t events = 0;
  p.observer = [&](const SearchEvent& e) {
    ++events;
    if (!last_accepted) {
      // after a rejection the search must not descend
      CHECK(e.depth <= last_depth);
    } else {
      CHECK(e.depth <= last_depth + 1);
    }
    last_depth = e.depth;
    last_accepted = e.accepted;
  };
  const SearchOutcome out = search_table(p);
  CHECK(out.kind == SearchOutcome::Kind::UnsatExhausted);
  CHECK(events == out.stats.nodes);
}

TEST_CASE("pinning the first row is flagged and never proves Unsat") {
  SearchProblem found = problem_for(1, 1, 0);
  found.fix_first_row = true;
  const SearchOutcome one = search_table(found);
  CHECK(one.kind == SearchOutcome::Kind::Found);
  CHECK(one.symmetry_broken);

  // (2,1) is genuinely unsatisfiable, but under a pinned first row the
  // search may only report that its restricted space ran dry.
  SearchProblem unsat = problem_for(2, 1, 0);
  unsat.fix_first_row = true;
  const SearchOutcome out = search_table(unsat);
  CHECK(out.kind == SearchOutcome::Kind::Timeout);
  CHECK(out.symmetry_broken);
}

TEST_CASE("parallel mode finds tables and respects budgets") {
  SearchProblem p = problem_for(1, 1, 9);
  p.threads = 2;
  p.time_budget = std::chrono::milliseconds(2000);
  const SearchOutcome found = search_table(p);
  REQUIRE(found.kind == SearchOutcome::Kind::Found);
  CHECK(verify_table(*found.table).pass());

  SearchProblem hard = problem_for(12, 3, 9);
  hard.threads = 2;
  hard.time_budget = std::chrono::milliseconds(100);
  const SearchOutcome out = search_table(hard);
  CHECK(out.kind == SearchOutcome::Kind::Timeout);
  CHECK(out.stats.nodes > 0);
}

TEST_CASE("search parameter validation") {
  CHECK_THROWS_AS(search_table(problem_for(0, 1)), std::invalid_argument);
  CHECK_THROWS_AS(search_table(problem_for(5, 6)), std::invalid_argument);
  CHECK_THROWS_AS(brute_force_oracle(25, 3), std::invalid_argument);
}
