#include "gks/search.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <thread>

#include "gks/game.hpp"
#include "gks/rng.hpp"

namespace gks {
namespace {

void check_parameters(int m, int u) {
  if (m < 1 || m > kMaxBits || u < 1 || u > m) {
    throw std::invalid_argument("search: requires 1 <= u <= m <= " +
                                std::to_string(kMaxBits));
  }
}

CodeTable assemble(int m, int u, const std::vector<Mask>& subsets,
                   const std::vector<Mask>& bits) {
  std::vector<Codeword> rows;
  rows.reserve(subsets.size());
  for (std::size_t i = 0; i < subsets.size(); ++i) {
    rows.push_back({bits[i], subsets[i]});
  }
  CodeTable table(m, u, std::move(rows));
  if (!verify_table(table).pass()) {
    throw std::logic_error("search: produced a table failing verification");
  }
  return table;
}

// One backtracking pass over the rows in colex subset order with a fixed
// value permutation per depth drawn from `rng`. Truncates after node_limit
// admissibility tests (0 = none). Writes progress into `stats`/`best_depth`
// and returns Found, UnsatExhausted (complete pass) or Timeout (truncated
// or stop() went high).
struct Pass {
  int m, u;
  const std::vector<Mask>& subsets;
  const std::vector<std::vector<int>>& free_positions;  // per depth
  std::function<void(const SearchEvent&)> const* observer = nullptr;
  std::function<bool()> const* stop = nullptr;

  SearchOutcome::Kind run(Rng& rng, bool fix_first_row, std::uint64_t node_limit,
                          SearchStats& stats, int& best_depth,
                          std::optional<CodeTable>& found) const {
    const int rows = static_cast<int>(subsets.size());
    std::vector<std::uint8_t> occupied(std::size_t{1} << m, 0);
    // chosen[d]: admitted row bits; undo[d]: its stamped ball.
    std::vector<Mask> chosen(rows);
    std::vector<std::vector<Mask>> undo(rows);
    std::vector<std::vector<std::uint32_t>> values(rows);
    std::vector<std::size_t> cursor(rows, 0);
    std::uint64_t tested = 0;
    bool truncated = false;

    auto enter = [&](int d) {
      cursor[d] = 0;
      const std::uint32_t count = std::uint32_t{1} << free_positions[d].size();
      values[d].resize(count);
      for (std::uint32_t v = 0; v < count; ++v) values[d][v] = v;
      if (d == 0 && fix_first_row) {
        values[d].resize(1);  // free bits pinned to zero
      } else {
        rng.shuffle(values[d]);
      }
    };

    int d = 0;
    enter(0);
    while (true) {
      if (d == rows) {
        found = assemble(m, u, subsets, chosen);
        return SearchOutcome::Kind::Found;
      }
      if (cursor[d] == values[d].size()) {
        if (d == 0) {
          return truncated ? SearchOutcome::Kind::Timeout
                           : SearchOutcome::Kind::UnsatExhausted;
        }
        --d;
        for (Mask w : undo[d]) occupied[w] = 0;
        ++cursor[d];
        continue;
      }
      if ((node_limit != 0 && tested >= node_limit) ||
          (stop && (tested & 1023) == 0 && (*stop)())) {
        truncated = true;
        // Unwind so the caller can restart with a clean slate.
        while (d > 0) {
          --d;
          for (Mask w : undo[d]) occupied[w] = 0;
        }
        return SearchOutcome::Kind::Timeout;
      }

      Mask candidate = subsets[d];
      const std::uint32_t v = values[d][cursor[d]];
      for (std::size_t i = 0; i < free_positions[d].size(); ++i) {
        if ((v >> i) & 1u) candidate |= Mask{1} << free_positions[d][i];
      }
      ++tested;
      ++stats.nodes;

      bool ok = !occupied[candidate];
      for (std::size_t i = 0; ok && i < free_positions[d].size(); ++i) {
        ok = !occupied[flip_bit(candidate, free_positions[d][i])];
      }
      if (observer && *observer) {
        (*observer)(SearchEvent{d, candidate, ok});
      }
      if (!ok) {
        ++cursor[d];
        continue;
      }
      undo[d].clear();
      undo[d].push_back(candidate);
      occupied[candidate] = 1;
      for (int p : free_positions[d]) {
        const Mask w = flip_bit(candidate, p);
        occupied[w] = 1;
        undo[d].push_back(w);
      }
      chosen[d] = candidate;
      ++d;
      best_depth = std::max(best_depth, d);
      if (d < rows) enter(d);
    }
  }
};

// Node limit for restart r of the geometric schedule.
std::uint64_t restart_limit(std::uint32_t r) {
  const int shift = std::min<std::uint32_t>(r, 16);
  return std::uint64_t{1} << (14 + shift);
}

}  // namespace

CountingBound counting_bound(int m, int u) {
  check_parameters(m, u);
  CountingBound b;
  b.lhs = binomial(m, u) * static_cast<std::uint64_t>(m - u + 1);
  b.rhs = std::uint64_t{1} << m;
  b.feasible = b.lhs <= b.rhs;
  return b;
}

SearchOutcome search_table(const SearchProblem& problem) {
  check_parameters(problem.m, problem.u);
  if (problem.m - problem.u > 20) {
    throw std::invalid_argument("search: more than 2^20 values per row");
  }
  const auto start = std::chrono::steady_clock::now();
  auto elapsed_ms = [&] {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() -
                                                     start)
        .count();
  };

  SearchOutcome outcome;
  outcome.symmetry_broken = problem.fix_first_row;
  if (const CountingBound bound = counting_bound(problem.m, problem.u); !bound.feasible) {
    outcome.kind = SearchOutcome::Kind::UnsatCounting;
    outcome.stats.wall_ms = elapsed_ms();
    return outcome;
  }

  const std::vector<Mask> subsets = subsets_colex(problem.m, problem.u);
  std::vector<std::vector<int>> free_positions(subsets.size());
  for (std::size_t d = 0; d < subsets.size(); ++d) {
    for (int p = 0; p < problem.m; ++p) {
      if (!has_bit(subsets[d], p)) free_positions[d].push_back(p);
    }
  }

  const bool bounded = problem.node_budget.has_value() || problem.time_budget.has_value();
  auto out_of_budget = [&](std::uint64_t nodes) {
    if (problem.node_budget && nodes >= *problem.node_budget) return true;
    return problem.time_budget && elapsed_ms() >= static_cast<double>(problem.time_budget->count());
  };

  if (problem.threads <= 1) {
    Pass pass{problem.m, problem.u, subsets, free_positions, &problem.observer, nullptr};
    std::function<bool()> stop = [&] { return out_of_budget(outcome.stats.nodes); };
    pass.stop = &stop;
    for (std::uint32_t r = 0;; ++r) {
      Rng rng(problem.seed + r);
      // Without a budget the single pass must run to completion so that
      // exhaustion is meaningful; with one, truncate on the schedule.
      std::uint64_t limit = 0;
      if (bounded) {
        limit = restart_limit(r);
        if (problem.node_budget) {
          limit = std::min(limit, *problem.node_budget - outcome.stats.nodes);
        }
      }
      std::optional<CodeTable> found;
      const auto kind = pass.run(rng, problem.fix_first_row, limit, outcome.stats,
                                 outcome.best_depth, found);
      outcome.stats.restarts = r + 1;
      if (kind == SearchOutcome::Kind::Found) {
        outcome.kind = kind;
        outcome.table = std::move(found);
        break;
      }
      if (kind == SearchOutcome::Kind::UnsatExhausted) {
        // Exhaustion under a pinned first row proves nothing; every restart
        // scans the same restricted space, so report the truncation instead.
        outcome.kind = problem.fix_first_row ? SearchOutcome::Kind::Timeout
                                             : SearchOutcome::Kind::UnsatExhausted;
        break;
      }
      if (out_of_budget(outcome.stats.nodes)) {
        outcome.kind = SearchOutcome::Kind::Timeout;
        break;
      }
    }
    outcome.stats.wall_ms = elapsed_ms();
    return outcome;
  }

  // Parallel mode: workers run disjoint restart indices against private
  // occupancy sets; the first verified find wins. Exhaustion is reported as
  // Timeout here; Unsat claims require the sequential complete mode.
  std::atomic<bool> stop_all{false};
  std::atomic<std::uint64_t> total_nodes{0};
  std::atomic<std::uint32_t> next_restart{0};
  std::atomic<int> best_depth{0};
  std::mutex result_mutex;
  std::optional<CodeTable> winner;
  std::uint32_t restarts_run = 0;

  auto worker = [&] {
    Pass pass{problem.m, problem.u, subsets, free_positions, nullptr, nullptr};
    std::function<bool()> stop = [&] {
      return stop_all.load(std::memory_order_relaxed) || out_of_budget(total_nodes);
    };
    pass.stop = &stop;
    while (!stop()) {
      const std::uint32_t r = next_restart.fetch_add(1);
      SearchStats local_stats;
      int local_best = 0;
      std::optional<CodeTable> found;
      Rng rng(problem.seed + r);
      std::uint64_t limit = restart_limit(r);
      if (problem.node_budget) {
        const std::uint64_t used = total_nodes.load(std::memory_order_relaxed);
        if (used >= *problem.node_budget) break;
        limit = std::min(limit, *problem.node_budget - used);
      }
      const auto kind = pass.run(rng, problem.fix_first_row, limit, local_stats,
                                 local_best, found);
      total_nodes.fetch_add(local_stats.nodes, std::memory_order_relaxed);
      int seen = best_depth.load(std::memory_order_relaxed);
      while (local_best > seen &&
             !best_depth.compare_exchange_weak(seen, local_best)) {
      }
      {
        std::lock_guard<std::mutex> lock(result_mutex);
        ++restarts_run;
        if (kind == SearchOutcome::Kind::Found && !winner) {
          winner = std::move(found);
          stop_all.store(true);
        }
      }
      if (kind == SearchOutcome::Kind::UnsatExhausted) break;
    }
  };

  std::vector<std::thread> pool;
  pool.reserve(problem.threads);
  for (int t = 0; t < problem.threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();

  outcome.stats.nodes = total_nodes.load();
  outcome.stats.restarts = restarts_run;
  outcome.best_depth = best_depth.load();
  if (winner) {
    outcome.kind = SearchOutcome::Kind::Found;
    outcome.table = std::move(winner);
  } else {
    outcome.kind = SearchOutcome::Kind::Timeout;
  }
  outcome.stats.wall_ms = elapsed_ms();
  return outcome;
}

SearchOutcome brute_force_oracle(int m, int u, std::uint64_t max_assignments) {
  check_parameters(m, u);
  const auto start = std::chrono::steady_clock::now();
  const std::vector<Mask> subsets = subsets_colex(m, u);
  const int rows = static_cast<int>(subsets.size());
  const std::uint64_t values = std::uint64_t{1} << (m - u);

  std::uint64_t total = 1;
  for (int d = 0; d < rows; ++d) {
    if (total > max_assignments / values) {
      throw BudgetExceeded("brute_force_oracle: more than " +
                           std::to_string(max_assignments) + " assignments");
    }
    total *= values;
  }

  std::vector<std::vector<int>> free_positions(rows);
  for (int d = 0; d < rows; ++d) {
    for (int p = 0; p < m; ++p) {
      if (!has_bit(subsets[d], p)) free_positions[d].push_back(p);
    }
  }

  // Epoch-stamped occupancy: one fresh epoch per assignment.
  std::vector<std::uint64_t> stamped(std::size_t{1} << m, 0);
  std::uint64_t epoch = 0;

  SearchOutcome outcome;
  outcome.kind = SearchOutcome::Kind::UnsatExhausted;
  std::vector<std::uint32_t> digits(rows, 0);
  std::vector<Mask> bits(rows);
  for (std::uint64_t a = 0; a < total; ++a) {
    ++epoch;
    ++outcome.stats.nodes;
    bool disjoint = true;
    int depth = 0;
    for (int d = 0; d < rows && disjoint; ++d) {
      Mask candidate = subsets[d];
      for (std::size_t i = 0; i < free_positions[d].size(); ++i) {
        if ((digits[d] >> i) & 1u) candidate |= Mask{1} << free_positions[d][i];
      }
      bits[d] = candidate;
      auto place = [&](Mask w) {
        if (stamped[w] == epoch) return false;
        stamped[w] = epoch;
        return true;
      };
      disjoint = place(candidate);
      for (int p : free_positions[d]) disjoint = disjoint && place(flip_bit(candidate, p));
      if (disjoint) depth = d + 1;
    }
    outcome.best_depth = std::max(outcome.best_depth, depth);
    if (disjoint) {
      outcome.kind = SearchOutcome::Kind::Found;
      outcome.table = assemble(m, u, subsets, bits);
      break;
    }
    // Odometer step over the per-row digits.
    for (int d = 0; d < rows; ++d) {
      if (++digits[d] < values) break;
      digits[d] = 0;
    }
  }
  outcome.stats.wall_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
          .count();
  return outcome;
}

}  // namespace gks
