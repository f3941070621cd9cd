// descriptor.hpp -- textual strategy descriptors used by the CLI.
//
// Grammar:
//   flood:<n>
//   block:<tablefile>
//   theorem2:<tablefile>
//   compose(<desc>,<desc>)
// Table files are loaded and verified at resolution time.

#pragma once

#include <stdexcept>
#include <string>

#include "gks/game.hpp"

namespace gks {

class DescriptorError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class TableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

StrategyPtr parse_strategy(const std::string& descriptor);

}  // namespace gks
