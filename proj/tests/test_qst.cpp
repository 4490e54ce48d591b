#include <gtest/gtest.h>

#include <cstring>

#include "gqd/qst.hpp"
#include "gqd/states.hpp"

namespace {

using namespace gqd;

TEST(ParseState, CsMaximallyMixed) {
  const ParsedState s = parse_state("format qst1\nkind cs\n0.25 0 0 0 0 0 0");
  EXPECT_EQ(s.kind, StateKind::Cs);
  ASSERT_TRUE(s.cs.has_value());
  EXPECT_FALSE(s.x.has_value());
  EXPECT_EQ(s.rho.matrix(), CMat4::identity() * cplx(0.25));
}

TEST(ParseState, XBell) {
  const ParsedState s = parse_state("format qst1\nkind x\n0.5 0 0 0.5 0 0 0");
  CMat4 bell;
  bell(0, 0) = bell(0, 3) = bell(3, 0) = bell(3, 3) = 0.5;
  EXPECT_EQ(s.rho.matrix(), bell);
  EXPECT_EQ(s.x->q4, 0.5);
}

TEST(ParseState, CommentsAndBlankLines) {
  const char* text =
      "# a comment\n\n  format   qst1 # trailing\n\tkind matrix\n"
      "0.25 0 0 0 0 0 0 0\n0 0 0.25 0 0 0 0 0\n0 0 0 0 +0.25 0 0 0\r\n0 0 0 0 0 0 2.5e-1 0\n";
  EXPECT_EQ(parse_state(text).rho.matrix(), CMat4::identity() * cplx(0.25));
}

TEST(ParseState, TraceViolation) {
  const char* text = "format qst1\nkind matrix\n0.3 0 0 0 0 0 0 0 0 0 0.2 0 0 0 0 0 0 0 0 0 0.2 0 0 0 0 0 0 0 0 0 0.2 0\n";
  try {
    parse_state(text);
    FAIL() << "expected InvalidState";
  } catch (const InvalidState& e) {
    EXPECT_NE(std::string(e.what()).find("trace"), std::string::npos);
  }
}

TEST(ParseState, FamilyValidation) {
  EXPECT_THROW(parse_state("format qst1\nkind cs\n0.5 0.3 0 0 0 0 0"), InvalidState);
}

void expect_parse_error(const char* text, int line, int column) {
  try {
    parse_state(text);
    FAIL() << "expected ParseError for: " << text;
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), line) << e.what();
    EXPECT_EQ(e.column(), column) << e.what();
  }
}

TEST(ParseState, ParseErrorsCarryPosition) {
  expect_parse_error("", 1, 1);
  expect_parse_error("fmt qst1", 1, 1);
  expect_parse_error("format qst2", 1, 8);
  expect_parse_error("format qst1\nkind y\n", 2, 6);
  expect_parse_error("format qst1\nkind cs\n0.25 0 0 abc 0 0 0", 3, 10);
  expect_parse_error("format qst1\nkind cs\n0.25 0 0 0 0 0", 3, 15);
  expect_parse_error("format qst1\nkind cs\n0.25 0 0 0 0 0 0\n  extra", 4, 3);
  expect_parse_error("format qst1\nkind cs\n0.25 0 0 0 0 nan 0", 3, 14);
  expect_parse_error("format qst1\nkind cs\n0.25 0 0 0 0 1e999 0", 3, 14);
}

TEST(FormatState, RoundTripIsExact) {
  for (std::uint64_t s = 0; s < 200; ++s) {
    const DensityMatrix rho = random_density_matrix(s);
    EXPECT_EQ(parse_state(format_state(rho)).rho.matrix(), rho.matrix());
  }
  const CsParams p{0.3, 0.05, 0.0, 0.05, 0.0, 0.1, 0.05};
  EXPECT_EQ(parse_state(format_state(p)).cs->values(), p.values());
  const XParams q{0.4, 0.3, 0.2, 0.1, 0.05, 0.1, 0.0};
  EXPECT_EQ(parse_state(format_state(q)).x->values(), q.values());
}

TEST(FormatState, SeventeenDigits) {
  EXPECT_EQ(detail::format_real(0.1), "0.10000000000000001");
  EXPECT_EQ(detail::format_real(0.25), "0.25");
  const std::string text = format_state(CsParams{0.25, 0, 0, 0, 0, 0, 0});
  EXPECT_EQ(text, "format qst1\nkind cs\n0.25 0 0 0 0 0 0\n");
}

}  // namespace
