// search.hpp -- search for underlined-code tables with the coverage and
// ball-disjointness properties, for given (m, u).

#pragma once

#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>

#include "gks/code_table.hpp"

namespace gks {

struct CountingBound {
  std::uint64_t lhs = 0;  // C(m,u) * (m-u+1) ball members to place
  std::uint64_t rhs = 0;  // 2^m cube size
  bool feasible = false;  // necessary condition only
};

CountingBound counting_bound(int m, int u);

// Emitted once per admissibility test of a candidate row (sequential mode).
struct SearchEvent {
  int depth = 0;       // row being chosen, in colex subset order
  Mask row_bits = 0;   // candidate
  bool accepted = false;
};

struct SearchProblem {
  int m = 12;
  int u = 3;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> node_budget;  // admissibility tests
  std::optional<std::chrono::milliseconds> time_budget;
  // Pins the first row's free bits to zero. A heuristic that can exclude
  // tables, so exhaustion under it proves nothing: the outcome is flagged
  // and Unsat(exhausted) is never claimed.
  bool fix_first_row = false;
  int threads = 1;  // >1: independent seeded restarts, first verified find wins
  std::function<void(const SearchEvent&)> observer;  // test hook, threads == 1
};

struct SearchStats {
  std::uint64_t nodes = 0;
  std::uint32_t restarts = 0;
  double wall_ms = 0.0;
};

struct SearchOutcome {
  enum class Kind { Found, UnsatCounting, UnsatExhausted, Timeout };

  Kind kind = Kind::Timeout;
  std::optional<CodeTable> table;  // Found only; passes verify_table
  int best_depth = 0;              // deepest partial table reached
  bool symmetry_broken = false;    // fix_first_row was in effect
  SearchStats stats;
};

// Backtracking over the u-subsets in colexicographic order, choosing the
// m-u free bits of each row. A candidate row is admissible iff its whole
// ball misses the occupancy set of everything placed so far; rejected
// partial assignments are never extended. Value order is randomized from
// the seed per restart under a geometric node-limit schedule, so restarts
// explore different tables while keeping the pruning structure.
//
// Outcomes: Unsat(counting) immediately when the counting bound fails;
// Unsat(exhausted) only after a complete un-truncated enumeration in
// sequential mode without fix_first_row; Timeout when a budget runs out.
// Found tables are re-verified before being returned.
SearchOutcome search_table(const SearchProblem& problem);

// Independent oracle: enumerates every assignment of free bits to every
// row and reports Found iff some assignment has pairwise-disjoint balls.
// Throws BudgetExceeded when the assignment count exceeds max_assignments.
SearchOutcome brute_force_oracle(int m, int u,
                                 std::uint64_t max_assignments = 1u << 22);

}  // namespace gks
