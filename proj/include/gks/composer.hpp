// composer.hpp -- strategy composition and cost exponents.
//
// compose(outer, inner) plays one inner instance per block of n' positions
// and one outer instance whose "positions" are the blocks. Alice routes each
// arrival into its block's inner session; an arrival completing a block
// consumes the outer session's bit for that block and passes it to the inner
// fill_final, so the completed block carries the outer Alice's bit. Bob
// decodes every block to (set, bit), decodes the bit string with the outer
// decoder to (T, t), and returns the union of the block sets selected by T.
// This yields a (kk', nn')-strategy from a (k, n) and a (k', n') one.

#pragma once

#include <memory>

#include "gks/block_strategy.hpp"
#include "gks/code_table.hpp"
#include "gks/game.hpp"

namespace gks {

// Both operands must satisfy the augmented contract. The declared bound of
// the result is the safe product k*k'; tighter behavior (the flood-over-
// block composition always answers with exactly m-u positions) is measured,
// not assumed -- see measured_k and with_declared_k.
StrategyPtr compose(StrategyPtr outer, StrategyPtr inner);

// Same strategy, re-declared bound. Used where a composition's true
// worst-case set size is established independently of the k*k' product.
StrategyPtr with_declared_k(StrategyPtr strategy, int k);

// The (9,108)-strategy: flood over blocks composed with the single-block
// table strategy, declared at its exact worst case k = m-u. Both Bob cases
// produce exactly m-u positions: a codeword block contributes its m-u
// non-underlined positions; otherwise every block contributes its single
// error position.
StrategyPtr theorem2_strategy(std::shared_ptr<const CodeTable> table);

struct MeasuredK {
  int k = 0;          // maximum Bob-set size over the probed games
  bool exact = true;  // exhaustive/structural probes: exact worst case;
                      // sampled probes: lower bound only
  std::uint64_t games = 0;
};

// Worst observed Bob-set size over honest games. The structural probe runs
// the strategy's structural_games() family and is exact for flood, the
// block strategy, and flood-over-inner compositions, where the family
// covers every achievable set size. Throws BudgetExceeded when the probe is
// infeasible at the strategy's n.
MeasuredK measured_k(const AugmentedStrategy& strategy, const Probe& probe);

// ln(k) / ln(n). Throws std::domain_error unless k >= 1 and n >= 2.
double exponent(int k, int n);

}  // namespace gks
