// block_strategy.hpp -- the single-block strategy over an underlined-code
// table, an augmented (m-u, m)-strategy.
//
// Alice: the first u arrivals are filled with ones; those positions select
// the unique row in which exactly they are underlined; every later arrival
// is filled as in that row, except that when Alice herself fills the block's
// last position she either matches the row (transmit 1) or flips it
// (transmit 0). Bob: a block equal to a row decodes to (the row's
// non-underlined positions, 1); a row with one non-underlined bit flipped
// decodes to (that single position, 0).

#pragma once

#include <cstdint>
#include <memory>

#include "gks/code_table.hpp"
#include "gks/game.hpp"

namespace gks {

// Requires u < m and a table passing verify_table. Bob's set size is m-u in
// the codeword case and 1 in the error case, both within k = m-u.
StrategyPtr code_block_strategy(std::shared_ptr<const CodeTable> table);

// Proof-by-exhaustion over every block configuration: first-arrival set T
// (one per table row), last position p outside T, and completion mode
// (Alice transmit 0, Alice transmit 1, Merlin bit 0, Merlin bit 1); for
// (12,3) that is 220*9*4 = 7920 cases. Asserts:
//   - Alice transmit 0: the block is not a table row and decodes to (T's
//     row, p);
//   - Alice transmit 1: the block equals the assigned row exactly;
//   - Merlin modes: Bob's set contains p and has size <= m-u.
// Additionally replays `invariance_samples` random middle-arrival orders to
// confirm the completed block depends only on (T, p, mode).
VerifyReport structural_verify_block(std::shared_ptr<const CodeTable> table,
                                     std::uint64_t invariance_samples = 0,
                                     std::uint64_t seed = 0);

}  // namespace gks
