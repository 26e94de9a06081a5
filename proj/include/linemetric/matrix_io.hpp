#pragma once

// Text format for distance matrices:
//
//   line 1       n
//   line 2       n whitespace-separated labels
//   lines 3..n+2 n scalar literals each (row-major, full matrix)
//
// The radicand is fixed by the first sqrt literal (or by the caller's context);
// literals from a different field are a parse error.

#include <cstddef>
#include <istream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "linemetric/error.hpp"
#include "linemetric/metric_space.hpp"
#include "linemetric/scalar.hpp"

namespace linemetric {

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;  // 1-based
};

inline std::vector<Token> split_tokens(std::string_view line) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r')) ++i;
    const std::size_t start = i;
    while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != '\r') ++i;
    if (i > start) tokens.push_back({line.substr(start, i - start), start + 1});
  }
  return tokens;
}

}  // namespace detail

inline FiniteMetricSpace parse_matrix(std::istream& in, ScalarContext ctx = {}) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) lines.push_back(line);
  while (!lines.empty() && detail::split_tokens(lines.back()).empty()) lines.pop_back();

  auto line_tokens = [&](std::size_t lineno) {
    if (lineno > lines.size()) throw ParseError("unexpected end of input", lineno, 0);
    return detail::split_tokens(lines[lineno - 1]);
  };

  const auto header = line_tokens(1);
  if (header.size() != 1) throw ParseError("expected a single point count", 1, header.empty() ? 1 : header[0].column);
  std::size_t n = 0;
  for (char ch : header[0].text) {
    if (ch < '0' || ch > '9') throw ParseError("point count must be a positive integer", 1, header[0].column);
    n = n * 10 + static_cast<std::size_t>(ch - '0');
    if (n > 100000) throw ParseError("point count too large", 1, header[0].column);
  }
  if (n == 0) throw ParseError("point count must be positive", 1, header[0].column);

  const auto label_tokens = line_tokens(2);
  if (label_tokens.size() != n) {
    throw ParseError("expected " + std::to_string(n) + " labels, found " + std::to_string(label_tokens.size()), 2, 1);
  }
  std::vector<std::string> labels;
  for (const auto& t : label_tokens) labels.emplace_back(t.text);

  std::vector<QuadScalar> entries;
  entries.reserve(n * n);
  for (std::size_t row = 0; row < n; ++row) {
    const std::size_t lineno = row + 3;
    const auto tokens = line_tokens(lineno);
    if (tokens.size() != n) {
      throw ParseError("expected " + std::to_string(n) + " entries, found " + std::to_string(tokens.size()), lineno, 1);
    }
    for (const auto& t : tokens) {
      try {
        QuadScalar x = parse_scalar(t.text, ctx, t.column);
        ctx.infer(x);
        entries.push_back(std::move(x));
      } catch (const ParseError& e) {
        throw ParseError(e.message(), lineno, e.column());
      } catch (const RadicandMismatch& e) {
        throw ParseError(std::string("mixed radicands, ") + e.what(), lineno, t.column);
      }
    }
  }
  if (lines.size() > n + 2) throw ParseError("trailing content after matrix", n + 3, 1);

  try {
    return FiniteMetricSpace(std::move(labels), std::move(entries));
  } catch (const ShapeError& e) {
    throw ParseError(e.what(), 2, 1);
  }
}

inline FiniteMetricSpace parse_matrix(std::string_view text, ScalarContext ctx = {}) {
  std::istringstream in{std::string(text)};
  return parse_matrix(in, ctx);
}

inline std::string format_matrix(const FiniteMetricSpace& m) {
  std::ostringstream out;
  out << m.size() << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) out << (i ? " " : "") << m.label(i);
  out << '\n';
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out << (j ? " " : "") << m(i, j).to_string();
    out << '\n';
  }
  return out.str();
}

}  // namespace linemetric
