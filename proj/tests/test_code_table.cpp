#include <doctest.h>

#include <fstream>
#include <set>
#include <sstream>

#include "gks/code_table.hpp"

using namespace gks;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE(in.good());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

const std::string kCanonicalPath = std::string(GKS_TABLES_DIR) + "/gks_12_3.ucode";

Mask bits_of(const std::string& s) {
  Mask m = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '1') m |= Mask{1} << i;
  }
  return m;
}

}  // namespace

TEST_CASE("canonical table parses to 220 verified rows") {
  const CodeTable table = parse_table(read_file(kCanonicalPath));
  CHECK(table.m() == 12);
  CHECK(table.u() == 3);
  CHECK(table.row_count() == 220);

  const TableReport report = verify_table(table);
  CHECK(report.coverage_pass);
  CHECK(report.disjointness_pass);
  CHECK(report.pass());
  CHECK(report.rows == 220);
  CHECK(report.expected_rows == 220);
  CHECK(report.ball_members == 2200);
  CHECK(report.violations.empty());
}

TEST_CASE("canonical table spot rows") {
  const auto& table = *canonical_table();
  CHECK(table.row(0).bits == bits_of("111000100000"));
  CHECK(table.row(0).underline == bits_of("111000000000"));
  CHECK(table.row(1).bits == bits_of("111110000000"));
  CHECK(table.row(1).underline == bits_of("110100000000"));
  CHECK(table.row(219).bits == bits_of("110100000111"));
  CHECK(table.row(219).underline == bits_of("000000000111"));
}

TEST_CASE("embedded table equals the file") {
  const CodeTable from_file = parse_table(read_file(kCanonicalPath));
  CHECK(*canonical_table() == from_file);
  CHECK(parse_table(canonical_table_text()) == from_file);
}

TEST_CASE("serialize then parse is the identity") {
  const auto& table = *canonical_table();
  const std::string text = serialize_table(table);
  CHECK(parse_table(text) == table);
  CHECK(serialize_table(parse_table(text)) == text);
}

TEST_CASE("serialized data lines are byte-identical to the file") {
  const std::string file_text = read_file(kCanonicalPath);
  std::vector<std::string> file_lines;
  std::istringstream in(file_text);
  for (std::string line; std::getline(in, line);) {
    if (line.empty() || line[0] == '#') continue;
    file_lines.push_back(line);
  }

  const std::string serialized = serialize_table(parse_table(file_text));
  std::vector<std::string> out_lines;
  std::istringstream out(serialized);
  for (std::string line; std::getline(out, line);) out_lines.push_back(line);

  REQUIRE(file_lines.size() == out_lines.size());
  CHECK(file_lines == out_lines);
}

TEST_CASE("parser reports positions and kinds") {
  SUBCASE("empty input") {
    CHECK_THROWS_AS(parse_table(""), ParseError);
    CHECK_THROWS_AS(parse_table("# only comments\n\n"), ParseError);
  }
  SUBCASE("bad header") {
    try {
      parse_table("m=12\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::HeaderMissing);
      CHECK(e.line() == 1);
    }
  }
  SUBCASE("header range") {
    CHECK_THROWS_AS(parse_table("m=0 u=0\n"), ParseError);
    CHECK_THROWS_AS(parse_table("m=12 u=13\n"), ParseError);
    CHECK_THROWS_AS(parse_table("m=25 u=3\n"), ParseError);
  }
  SUBCASE("length mismatch") {
    try {
      parse_table("# c\nm=3 u=1\n10 ^..\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::LengthMismatch);
      CHECK(e.line() == 3);
    }
  }
  SUBCASE("bad bit character") {
    try {
      parse_table("m=3 u=1\n1x0 ^..\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::BadCharacter);
    }
  }
  SUBCASE("bad mark character") {
    try {
      parse_table("m=3 u=1\n100 ^_.\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::BadCharacter);
    }
  }
  SUBCASE("underlined zero wins over caret count") {
    // Two carets where u=3, but the caret over a zero is reported first.
    try {
      parse_table("m=12 u=3\n011000000000 ^^..........\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::UnderlinedZero);
      CHECK(e.line() == 2);
    }
  }
  SUBCASE("underline count") {
    try {
      parse_table("m=12 u=3\n110000000000 ^^..........\n");
      FAIL("expected ParseError");
    } catch (const ParseError& e) {
      CHECK(e.kind() == ParseErrorKind::UnderlineCountMismatch);
    }
  }
  SUBCASE("trailing field") {
    CHECK_THROWS_AS(parse_table("m=3 u=1\n100 ^.. junk\n"), ParseError);
  }
  SUBCASE("comments, blank lines and CRLF are tolerated") {
    const CodeTable t =
        parse_table("# head\r\n\r\nm=3 u=1\n100 ^..\n# middle\n\n010 .^.\n001 ..^\r\n");
    CHECK(t.row_count() == 3);
  }
}

TEST_CASE("constructor enforces row shape only") {
  CHECK_THROWS_AS(CodeTable(0, 1, {}), std::invalid_argument);
  CHECK_THROWS_AS(CodeTable(3, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(CodeTable(3, 4, {}), std::invalid_argument);
  // bits outside m
  CHECK_THROWS_AS(CodeTable(3, 1, {{0b1001, 0b001}}), std::invalid_argument);
  // wrong underline count
  CHECK_THROWS_AS(CodeTable(3, 1, {{0b011, 0b011}}), std::invalid_argument);
  // underlined zero
  CHECK_THROWS_AS(CodeTable(3, 1, {{0b010, 0b001}}), std::invalid_argument);

  // Table-level violations stay representable for verify_table.
  const CodeTable dup(3, 1, {{0b001, 0b001}, {0b001, 0b001}});
  const TableReport report = verify_table(dup);
  CHECK_FALSE(report.coverage_pass);
  CHECK_FALSE(report.pass());
}

TEST_CASE("verify_table reports every violation") {
  // Duplicate {1}, missing {3}, and overlapping balls all in one table.
  const CodeTable bad(3, 1, {{0b001, 0b001}, {0b001, 0b001}, {0b010, 0b010}});
  const TableReport report = verify_table(bad);
  CHECK_FALSE(report.coverage_pass);
  CHECK_FALSE(report.disjointness_pass);
  // duplicate set, missing set, plus duplicated-row ball collisions
  CHECK(report.violations.size() >= 3);

  bool saw_duplicate = false, saw_missing = false, saw_ball = false;
  for (const std::string& v : report.violations) {
    saw_duplicate = saw_duplicate || v.find("appears 2 times") != std::string::npos;
    saw_missing = saw_missing || v.find("{3} missing") != std::string::npos;
    saw_ball = saw_ball || v.find("share ball member") != std::string::npos;
  }
  CHECK(saw_duplicate);
  CHECK(saw_missing);
  CHECK(saw_ball);
}

TEST_CASE("lookup by underline") {
  const auto& table = *canonical_table();
  for (Mask subset : subsets_colex(12, 3)) {
    const Codeword& row = lookup_by_underline(table, subset);
    CHECK(row.underline == subset);
    CHECK((row.bits & subset) == subset);
  }
  const CodeTable partial(3, 1, {{0b001, 0b001}});
  CHECK_THROWS_AS(lookup_by_underline(partial, 0b010), NotFoundError);
  CHECK(lookup_row_by_underline(partial, 0b001) == 0);
}

TEST_CASE("decode and decode_scan agree on the whole cube") {
  const auto& table = *canonical_table();
  int hits = 0;
  for (Mask word = 0; word < (Mask{1} << 12); ++word) {
    const DecodeResult fast = decode(table, word);
    const DecodeResult slow = decode_scan(table, word);
    CHECK(fast == slow);
    if (fast.kind != DecodeResult::Kind::NoMatch) ++hits;
  }
  CHECK(hits == 2200);
}

TEST_CASE("decode classifies members of one ball") {
  const auto& table = *canonical_table();
  const Codeword& row = table.row(17);
  CHECK(decode(table, row.bits) == DecodeResult::exact(17));
  for (int p = 0; p < 12; ++p) {
    if (has_bit(row.underline, p)) continue;
    CHECK(decode(table, flip_bit(row.bits, p)) == DecodeResult::one_error(17, p));
  }
}

TEST_CASE("load_table_file") {
  const CodeTable table = load_table_file(kCanonicalPath);
  CHECK(table.row_count() == 220);
  CHECK_THROWS_AS(load_table_file(std::string(GKS_TEST_DATA_DIR) + "/no_such.ucode"),
                  std::runtime_error);
  try {
    load_table_file(std::string(GKS_TEST_DATA_DIR) + "/bad_dup.ucode");
    // Parses fine (duplicates are a table-level issue), so no throw expected.
  } catch (const ParseError&) {
    FAIL("duplicate underline sets must parse; they fail verify_table instead");
  }
}

TEST_CASE("fixture tables fail verification as designed") {
  const CodeTable dup = load_table_file(std::string(GKS_TEST_DATA_DIR) + "/bad_dup.ucode");
  const TableReport dup_report = verify_table(dup);
  CHECK_FALSE(dup_report.coverage_pass);

  const CodeTable overlap =
      load_table_file(std::string(GKS_TEST_DATA_DIR) + "/bad_overlap.ucode");
  const TableReport overlap_report = verify_table(overlap);
  CHECK(overlap_report.coverage_pass);
  CHECK_FALSE(overlap_report.disjointness_pass);
}
