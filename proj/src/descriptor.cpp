#include "gks/descriptor.hpp"

#include <charconv>
#include <memory>

#include "gks/block_strategy.hpp"
#include "gks/code_table.hpp"
#include "gks/composer.hpp"

namespace gks {
namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
  while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
  return s;
}

std::shared_ptr<const CodeTable> load_verified(std::string_view path_view) {
  const std::string path(path_view);
  if (path.empty()) throw DescriptorError("descriptor: missing table file");
  std::shared_ptr<const CodeTable> table;
  try {
    table = std::make_shared<const CodeTable>(load_table_file(path));
  } catch (const std::runtime_error& e) {
    // Unreadable file, parse failure or shape violation alike.
    throw TableError(e.what());
  }
  const TableReport report = verify_table(*table);
  if (!report.pass()) {
    std::string msg = path + ": table fails verification (" +
                      std::to_string(report.violations.size()) + " violation" +
                      (report.violations.size() == 1 ? "" : "s") + "); first: " +
                      report.violations.front();
    throw TableError(msg);
  }
  return table;
}

StrategyPtr parse(std::string_view desc) {
  desc = trim(desc);
  if (desc.empty()) throw DescriptorError("descriptor: empty");

  if (desc.starts_with("compose(")) {
    if (!desc.ends_with(")")) {
      throw DescriptorError("descriptor: compose(...) is not closed: " + std::string(desc));
    }
    const std::string_view inner = desc.substr(8, desc.size() - 9);
    int depth = 0;
    std::size_t comma = std::string_view::npos;
    for (std::size_t i = 0; i < inner.size(); ++i) {
      if (inner[i] == '(') ++depth;
      if (inner[i] == ')') --depth;
      if (inner[i] == ',' && depth == 0) {
        comma = i;
        break;
      }
    }
    if (comma == std::string_view::npos) {
      throw DescriptorError("descriptor: compose takes two operands: " + std::string(desc));
    }
    StrategyPtr outer = parse(inner.substr(0, comma));
    StrategyPtr inner_strategy = parse(inner.substr(comma + 1));
    return compose(std::move(outer), std::move(inner_strategy));
  }

  const std::size_t colon = desc.find(':');
  if (colon == std::string_view::npos) {
    throw DescriptorError("descriptor: expected flood:<n>, block:<file>, "
                          "theorem2:<file> or compose(a,b), got: " +
                          std::string(desc));
  }
  const std::string_view head = desc.substr(0, colon);
  const std::string_view arg = trim(desc.substr(colon + 1));

  if (head == "flood") {
    int n = 0;
    const auto [end, ec] = std::from_chars(arg.data(), arg.data() + arg.size(), n);
    if (ec != std::errc{} || end != arg.data() + arg.size() || n < 1) {
      throw DescriptorError("descriptor: flood needs a positive integer, got: " +
                            std::string(arg));
    }
    return flood_strategy(n);
  }
  if (head == "block") {
    auto table = load_verified(arg);
    if (table->u() >= table->m()) {
      throw DescriptorError("descriptor: block needs a table with u < m");
    }
    return code_block_strategy(std::move(table));
  }
  if (head == "theorem2") {
    auto table = load_verified(arg);
    if (table->u() >= table->m()) {
      throw DescriptorError("descriptor: theorem2 needs a table with u < m");
    }
    return theorem2_strategy(std::move(table));
  }
  throw DescriptorError("descriptor: unknown strategy kind: " + std::string(head));
}

}  // namespace

StrategyPtr parse_strategy(const std::string& descriptor) {
  return parse(descriptor);
}

}  // namespace gks
