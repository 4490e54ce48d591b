#ifndef GQD_QST_HPP
#define GQD_QST_HPP

// qst1 state files.
//
//   file     := { line }
//   '#' starts a comment that runs to end of line; blank lines are ignored.
//   Tokens are separated by whitespace (space, tab, CR, LF) and must appear as
//     format qst1
//     kind <matrix|cs|x>
//     <payload>
//   payload for `matrix`: 32 reals, row-major (re im) pairs of the 4x4 matrix.
//   payload for `cs` and `x`: the 7 real family parameters in order.
//   Nothing may follow the payload.

#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gqd/errors.hpp"
#include "gqd/matkit.hpp"
#include "gqd/states.hpp"

namespace gqd {

enum class StateKind { Matrix, Cs, X };

inline const char* to_string(StateKind k) {
  switch (k) {
    case StateKind::Matrix: return "matrix";
    case StateKind::Cs: return "cs";
    case StateKind::X: return "x";
  }
  return "?";
}

struct ParsedState {
  StateKind kind = StateKind::Matrix;
  DensityMatrix rho = DensityMatrix::maximally_mixed();
  std::optional<CsParams> cs;
  std::optional<XParams> x;
};

namespace detail {

struct Token {
  std::string_view text;
  int line;
  int column;
};

inline std::vector<Token> tokenize_qst(std::string_view text) {
  std::vector<Token> tokens;
  int line = 1;
  int column = 1;
  std::size_t i = 0;
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      column = 1;
      ++i;
    } else if (c == ' ' || c == '\t' || c == '\r') {
      ++column;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else {
      const std::size_t start = i;
      const int start_col = column;
      while (i < text.size() && text[i] != ' ' && text[i] != '\t' && text[i] != '\r' && text[i] != '\n' &&
             text[i] != '#') {
        ++i;
        ++column;
      }
      tokens.push_back({text.substr(start, i - start), line, start_col});
    }
  }
  return tokens;
}

inline double parse_real(const Token& t) {
  std::string_view s = t.text;
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(value))
    throw ParseError("expected a real number, got '" + std::string(t.text) + "'", t.line, t.column);
  return value;
}

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

/// Parses and validates a qst1 document. Throws ParseError (with line and
/// column) on malformed text and InvalidState when the payload is not a
/// density matrix.
inline ParsedState parse_state(std::string_view text) {
  const auto tokens = detail::tokenize_qst(text);
  std::size_t pos = 0;
  auto next = [&](const char* what) -> const detail::Token& {
    if (pos >= tokens.size()) {
      const int line = tokens.empty() ? 1 : tokens.back().line;
      const int col = tokens.empty() ? 1 : tokens.back().column + static_cast<int>(tokens.back().text.size());
      throw ParseError(std::string("unexpected end of input, expected ") + what, line, col);
    }
    return tokens[pos++];
  };
  auto expect = [&](std::string_view word) {
    const auto& t = next(std::string(word).c_str());
    if (t.text != word)
      throw ParseError("expected '" + std::string(word) + "', got '" + std::string(t.text) + "'", t.line, t.column);
  };

  expect("format");
  const auto& version = next("format tag");
  if (version.text != "qst1")
    throw ParseError("unsupported format '" + std::string(version.text) + "'", version.line, version.column);
  expect("kind");
  const auto& kind_tok = next("kind");

  ParsedState out;
  std::size_t count = 0;
  if (kind_tok.text == "matrix") {
    out.kind = StateKind::Matrix;
    count = 32;
  } else if (kind_tok.text == "cs") {
    out.kind = StateKind::Cs;
    count = 7;
  } else if (kind_tok.text == "x") {
    out.kind = StateKind::X;
    count = 7;
  } else {
    throw ParseError("unknown kind '" + std::string(kind_tok.text) + "'", kind_tok.line, kind_tok.column);
  }

  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) values.push_back(detail::parse_real(next("payload value")));
  if (pos != tokens.size())
    throw ParseError("trailing content '" + std::string(tokens[pos].text) + "'", tokens[pos].line, tokens[pos].column);

  switch (out.kind) {
    case StateKind::Matrix: {
      CMat4 m;
      for (std::size_t i = 0; i < 16; ++i) m(i / 4, i % 4) = cplx(values[2 * i], values[2 * i + 1]);
      out.rho = DensityMatrix(m);
      break;
    }
    case StateKind::Cs: {
      std::array<double, 7> v{};
      std::copy(values.begin(), values.end(), v.begin());
      out.cs = CsParams::from_values(v);
      out.rho = cs_to_matrix(*out.cs);
      break;
    }
    case StateKind::X: {
      std::array<double, 7> v{};
      std::copy(values.begin(), values.end(), v.begin());
      out.x = XParams::from_values(v);
      out.rho = x_to_matrix(*out.x);
      break;
    }
  }
  return out;
}

inline std::string format_matrix_state(const CMat4& m) {
  std::string s = "format qst1\nkind matrix\n";
  for (std::size_t i = 0; i < 4; ++i) {
    for (std::size_t j = 0; j < 4; ++j) {
      if (j) s += "  ";
      s += detail::format_real(m(i, j).real()) + " " + detail::format_real(m(i, j).imag());
    }
    s += "\n";
  }
  return s;
}

inline std::string format_params(StateKind kind, const std::array<double, 7>& v) {
  std::string s = std::string("format qst1\nkind ") + to_string(kind) + "\n";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += " ";
    s += detail::format_real(v[i]);
  }
  return s + "\n";
}

inline std::string format_state(const CsParams& p) { return format_params(StateKind::Cs, p.values()); }
inline std::string format_state(const XParams& q) { return format_params(StateKind::X, q.values()); }
inline std::string format_state(const DensityMatrix& rho) { return format_matrix_state(rho.matrix()); }

}  // namespace gqd

#endif  // GQD_QST_HPP
