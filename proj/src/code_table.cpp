#include "gks/code_table.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace gks {
namespace {

std::string ordinal_row(int row) { return "row " + std::to_string(row + 1); }

// Ball of a row: the row itself (flip = -1) plus one flip per non-underlined
// position.
template <class Fn>
void for_each_ball_member(const Codeword& cw, int m, Fn&& fn) {
  fn(cw.bits, -1);
  for (int p = 0; p < m; ++p) {
    if (!has_bit(cw.underline, p)) fn(flip_bit(cw.bits, p), p);
  }
}

}  // namespace

CodeTable::CodeTable(int m, int u, std::vector<Codeword> rows)
    : m_(m), u_(u), rows_(std::move(rows)) {
  if (m < 1 || m > kMaxBits) throw std::invalid_argument("m out of range");
  if (u < 1 || u > m) throw std::invalid_argument("u out of range");
  const Mask width = (m == 32 ? ~Mask{0} : (Mask{1} << m) - 1);
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const Codeword& cw = rows_[i];
    if ((cw.bits & ~width) != 0 || (cw.underline & ~width) != 0) {
      throw std::invalid_argument(ordinal_row(static_cast<int>(i)) +
                                  ": bits outside length m");
    }
    if (popcount(cw.underline) != u) {
      throw std::invalid_argument(ordinal_row(static_cast<int>(i)) +
                                  ": underline count != u");
    }
    if ((cw.bits & cw.underline) != cw.underline) {
      throw std::invalid_argument(ordinal_row(static_cast<int>(i)) +
                                  ": underlined position holds a zero");
    }
  }
  by_underline_.reserve(rows_.size());
  by_bits_.reserve(rows_.size());
  ball_index_.reserve(rows_.size() * static_cast<std::size_t>(m - u + 1));
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const int idx = static_cast<int>(i);
    by_underline_.emplace(rows_[i].underline, idx);
    by_bits_.emplace(rows_[i].bits, idx);
    for_each_ball_member(rows_[i], m_, [&](Mask member, int flipped) {
      ball_index_.emplace(member, std::make_pair(idx, flipped));
    });
  }
}

int CodeTable::row_by_underline(Mask underline) const {
  auto it = by_underline_.find(underline);
  return it == by_underline_.end() ? -1 : it->second;
}

int CodeTable::row_by_bits(Mask bits) const {
  auto it = by_bits_.find(bits);
  return it == by_bits_.end() ? -1 : it->second;
}

namespace {

struct Line {
  std::string text;
  int number;  // 1-based
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> lines;
  std::istringstream in(text);
  std::string raw;
  int number = 0;
  while (std::getline(in, raw)) {
    ++number;
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    std::size_t start = raw.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    std::size_t end = raw.find_last_not_of(" \t");
    std::string trimmed = raw.substr(start, end - start + 1);
    if (trimmed[0] == '#') continue;
    lines.push_back({std::move(trimmed), number});
  }
  return lines;
}

}  // namespace

CodeTable parse_table(const std::string& text) {
  const std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) {
    throw ParseError(ParseErrorKind::HeaderMissing, 0, "empty input, expected 'm=<int> u=<int>'");
  }

  int m = 0, u = 0;
  {
    const Line& header = lines.front();
    char trailing = 0;
    if (std::sscanf(header.text.c_str(), "m=%d u=%d%c", &m, &u, &trailing) != 2) {
      throw ParseError(ParseErrorKind::HeaderMissing, header.number,
                       "line " + std::to_string(header.number) +
                           ": expected header 'm=<int> u=<int>', got '" + header.text + "'");
    }
    if (m < 1 || m > kMaxBits || u < 1 || u > m) {
      throw ParseError(ParseErrorKind::HeaderMissing, header.number,
                       "line " + std::to_string(header.number) + ": header out of range (1 <= u <= m <= " +
                           std::to_string(kMaxBits) + ")");
    }
  }

  std::vector<Codeword> rows;
  rows.reserve(lines.size() - 1);
  for (std::size_t li = 1; li < lines.size(); ++li) {
    const Line& line = lines[li];
    const std::string where = "line " + std::to_string(line.number);

    std::istringstream fields(line.text);
    std::string bits_text, mask_text, extra;
    fields >> bits_text >> mask_text;
    if (fields >> extra) {
      throw ParseError(ParseErrorKind::BadCharacter, line.number,
                       where + ": unexpected trailing field '" + extra + "'");
    }

    if (static_cast<int>(bits_text.size()) != m || static_cast<int>(mask_text.size()) != m) {
      throw ParseError(ParseErrorKind::LengthMismatch, line.number,
                       where + ": expected " + std::to_string(m) + " bit and " +
                           std::to_string(m) + " mark characters, got " +
                           std::to_string(bits_text.size()) + " and " +
                           std::to_string(mask_text.size()));
    }

    Codeword cw;
    for (int p = 0; p < m; ++p) {
      const char b = bits_text[p];
      if (b != '0' && b != '1') {
        throw ParseError(ParseErrorKind::BadCharacter, line.number,
                         where + ": bit character '" + std::string(1, b) + "' at position " +
                             std::to_string(p + 1));
      }
      if (b == '1') cw.bits |= Mask{1} << p;
      const char mk = mask_text[p];
      if (mk != '.' && mk != '^') {
        throw ParseError(ParseErrorKind::BadCharacter, line.number,
                         where + ": mark character '" + std::string(1, mk) + "' at position " +
                             std::to_string(p + 1));
      }
      if (mk == '^') cw.underline |= Mask{1} << p;
    }

    // Underlined-zero is diagnosed before the caret count: a caret over a
    // zero is the sharper complaint about that position.
    if ((cw.bits & cw.underline) != cw.underline) {
      const int p = std::countr_zero(cw.underline & ~cw.bits);
      throw ParseError(ParseErrorKind::UnderlinedZero, line.number,
                       where + ": position " + std::to_string(p + 1) + " is underlined but holds 0");
    }
    if (popcount(cw.underline) != u) {
      throw ParseError(ParseErrorKind::UnderlineCountMismatch, line.number,
                       where + ": expected " + std::to_string(u) + " underlined positions, got " +
                           std::to_string(popcount(cw.underline)));
    }
    rows.push_back(cw);
  }
  return CodeTable(m, u, std::move(rows));
}

std::string serialize_table(const CodeTable& table) {
  std::string out = "m=" + std::to_string(table.m()) + " u=" + std::to_string(table.u()) + "\n";
  for (const Codeword& cw : table.rows()) {
    out += mask_to_string(cw.bits, table.m());
    out += ' ';
    for (int p = 0; p < table.m(); ++p) out += has_bit(cw.underline, p) ? '^' : '.';
    out += '\n';
  }
  return out;
}

TableReport verify_table(const CodeTable& table) {
  TableReport report;
  report.rows = table.row_count();
  report.expected_rows = binomial(table.m(), table.u());

  // Coverage: the multiset of underline sets is every u-subset exactly once.
  report.coverage_pass = true;
  std::unordered_map<Mask, std::vector<int>> by_subset;
  for (int i = 0; i < table.row_count(); ++i) {
    by_subset[table.row(i).underline].push_back(i);
  }
  if (static_cast<std::uint64_t>(table.row_count()) != report.expected_rows) {
    report.coverage_pass = false;
    report.violations.push_back("coverage: " + std::to_string(table.row_count()) + " rows, expected C(" +
                                std::to_string(table.m()) + "," + std::to_string(table.u()) + ") = " +
                                std::to_string(report.expected_rows));
  }
  for (Mask subset : subsets_colex(table.m(), table.u())) {
    auto it = by_subset.find(subset);
    const std::size_t count = it == by_subset.end() ? 0 : it->second.size();
    if (count == 1) continue;
    report.coverage_pass = false;
    std::string positions;
    for (int p : mask_positions(subset)) {
      positions += (positions.empty() ? "" : ",") + std::to_string(p + 1);
    }
    if (count == 0) {
      report.violations.push_back("coverage: underline set {" + positions + "} missing");
    } else {
      std::string where;
      for (int r : it->second) where += (where.empty() ? "" : ",") + std::to_string(r + 1);
      report.violations.push_back("coverage: underline set {" + positions + "} appears " +
                                  std::to_string(count) + " times (rows " + where + ")");
    }
  }

  // Disjointness: no string lies in two punctured balls.
  report.disjointness_pass = true;
  std::unordered_map<Mask, int> owner;
  owner.reserve(table.row_count() * static_cast<std::size_t>(table.m() - table.u() + 1));
  for (int i = 0; i < table.row_count(); ++i) {
    for_each_ball_member(table.row(i), table.m(), [&](Mask member, int) {
      auto [it, inserted] = owner.emplace(member, i);
      if (!inserted) {
        report.disjointness_pass = false;
        report.violations.push_back("disjointness: rows " + std::to_string(it->second + 1) + " and " +
                                    std::to_string(i + 1) + " share ball member " +
                                    mask_to_string(member, table.m()));
      }
    });
  }
  report.ball_members = owner.size();
  return report;
}

int lookup_row_by_underline(const CodeTable& table, Mask subset) {
  const int row = table.row_by_underline(subset);
  if (row < 0) {
    std::string positions;
    for (int p : mask_positions(subset)) {
      positions += (positions.empty() ? "" : ",") + std::to_string(p + 1);
    }
    throw NotFoundError("no row with underline set {" + positions + "}");
  }
  return row;
}

const Codeword& lookup_by_underline(const CodeTable& table, Mask subset) {
  return table.row(lookup_row_by_underline(table, subset));
}

struct BallIndexAccess {
  static DecodeResult decode(const CodeTable& table, Mask word) {
    auto it = table.ball_index_.find(word);
    if (it == table.ball_index_.end()) return DecodeResult::no_match();
    const auto [row, flipped] = it->second;
    return flipped < 0 ? DecodeResult::exact(row) : DecodeResult::one_error(row, flipped);
  }
};

DecodeResult decode(const CodeTable& table, Mask word) {
  return BallIndexAccess::decode(table, word);
}

DecodeResult decode_scan(const CodeTable& table, Mask word) {
  int row = table.row_by_bits(word);
  if (row >= 0) return DecodeResult::exact(row);
  for (int p = 0; p < table.m(); ++p) {
    row = table.row_by_bits(flip_bit(word, p));
    if (row >= 0 && !has_bit(table.row(row).underline, p)) {
      return DecodeResult::one_error(row, p);
    }
  }
  return DecodeResult::no_match();
}

CodeTable load_table_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open table file: " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  try {
    return parse_table(buffer.str());
  } catch (const ParseError& e) {
    throw ParseError(e.kind(), e.line(), path + ": " + e.what());
  }
}

}  // namespace gks
