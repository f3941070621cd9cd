// code_table.hpp -- underlined-codeword tables.
//
// A codeword is an m-bit string with u designated ("underlined") positions,
// all of which hold ones. A table collects one codeword per underline set.
// The punctured ball of a row x is x itself plus every string obtained by
// flipping exactly one non-underlined bit of x; a good table has pairwise
// disjoint balls, so a received block decodes to a unique (row, flip) pair.
//
// UCODE v1 text format:
//   - optional comment lines starting with '#', blank lines ignored
//   - one header line "m=<int> u=<int>"
//   - one data line per row: <m chars of 0/1> <space> <m chars of . / ^>,
//     '^' marking an underlined position; exactly u carets; LF line ends.
// Data line order is table row order. serialize_table emits the canonical
// form (header + data lines); parse/serialize round-trip exactly.

#pragma once

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "gks/bits.hpp"

namespace gks {

struct Codeword {
  Mask bits = 0;
  Mask underline = 0;

  friend bool operator==(const Codeword&, const Codeword&) = default;
};

enum class ParseErrorKind {
  HeaderMissing,
  LengthMismatch,
  BadCharacter,
  UnderlinedZero,
  UnderlineCountMismatch,
};

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, int line, const std::string& what)
      : std::runtime_error(what), kind_(kind), line_(line) {}

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }  // 1-based line in the input text

 private:
  ParseErrorKind kind_;
  int line_;
};

class NotFoundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Immutable after construction; safe to share across threads.
//
// Construction enforces per-row shape (bits fit in m, exactly u underlines,
// underlined bits are ones) but deliberately not table-level properties:
// duplicate or missing underline sets and overlapping balls must stay
// representable so verify_table can report them.
class CodeTable {
 public:
  CodeTable(int m, int u, std::vector<Codeword> rows);

  int m() const { return m_; }
  int u() const { return u_; }
  int row_count() const { return static_cast<int>(rows_.size()); }
  const std::vector<Codeword>& rows() const { return rows_; }
  const Codeword& row(int i) const { return rows_[i]; }

  // First row with the given underline set / exact bit pattern, -1 if none.
  int row_by_underline(Mask underline) const;
  int row_by_bits(Mask bits) const;

  friend bool operator==(const CodeTable& a, const CodeTable& b) {
    return a.m_ == b.m_ && a.u_ == b.u_ && a.rows_ == b.rows_;
  }

 private:
  friend struct BallIndexAccess;

  int m_;
  int u_;
  std::vector<Codeword> rows_;
  std::unordered_map<Mask, int> by_underline_;
  std::unordered_map<Mask, int> by_bits_;
  // word -> (row, flipped position or -1 for the row itself); first writer
  // wins when balls overlap, which verify_table reports.
  std::unordered_map<Mask, std::pair<int, int>> ball_index_;
};

struct DecodeResult {
  enum class Kind { Exact, OneError, NoMatch };

  Kind kind = Kind::NoMatch;
  int row = -1;
  int position = -1;  // flipped position, OneError only

  static DecodeResult exact(int row) { return {Kind::Exact, row, -1}; }
  static DecodeResult one_error(int row, int position) {
    return {Kind::OneError, row, position};
  }
  static DecodeResult no_match() { return {}; }

  friend bool operator==(const DecodeResult&, const DecodeResult&) = default;
};

struct TableReport {
  bool coverage_pass = false;
  bool disjointness_pass = false;
  int rows = 0;
  std::uint64_t expected_rows = 0;    // C(m, u)
  std::uint64_t ball_members = 0;     // distinct members across all balls
  std::vector<std::string> violations;  // every violation, 1-based in text

  bool pass() const { return coverage_pass && disjointness_pass; }
};

CodeTable parse_table(const std::string& text);
std::string serialize_table(const CodeTable& table);

// Coverage: the underline sets are exactly the u-subsets of the m positions,
// each appearing once. Disjointness: punctured balls are pairwise disjoint.
// All violations are reported, not just the first.
TableReport verify_table(const CodeTable& table);

// The unique row whose underline set equals `subset`; throws NotFoundError
// when absent (only possible on tables failing coverage).
const Codeword& lookup_by_underline(const CodeTable& table, Mask subset);
int lookup_row_by_underline(const CodeTable& table, Mask subset);

// Decodes `word` against the table: Exact when it equals a row, OneError
// when it equals a row with one non-underlined bit flipped, NoMatch
// otherwise. Unique by disjointness. decode() answers from the precomputed
// ball index; decode_scan() recomputes via exact lookup plus a flip scan.
// The two must agree on every word of a verified table.
DecodeResult decode(const CodeTable& table, Mask word);
DecodeResult decode_scan(const CodeTable& table, Mask word);

// Reads and parses a UCODE file; ParseError gains the path as context.
CodeTable load_table_file(const std::string& path);

// The built-in 220-row (m=12, u=3) table and its UCODE source text.
const std::shared_ptr<const CodeTable>& canonical_table();
const std::string& canonical_table_text();

}  // namespace gks
