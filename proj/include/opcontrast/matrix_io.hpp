#pragma once

// Plain-text matrix and block-operator files.
//
//   # comment lines start with '#'
//   n m
//   <n lines of m reals>
//   imag                      (optional)
//   <n lines of m reals>      (imaginary parts)
//
// A block file is a sequence of such matrices separated by lines reading
// `---`; a `# name: <label>` comment inside a section labels that block.

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "opcontrast/blocks.hpp"
#include "opcontrast/errors.hpp"
#include "opcontrast/linalg.hpp"

namespace opcontrast {

struct MatrixText {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> re;
  std::optional<std::vector<double>> im;
  std::string label;
  std::size_t offset = 0;  // byte offset of the header line
};

namespace detail {

struct TextLine {
  std::string_view text;
  std::size_t offset;
};

inline std::string_view trim(std::string_view s) {
  const auto ws = " \t\r\f\v";
  const auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

inline std::vector<TextLine> split_lines(std::string_view s) {
  std::vector<TextLine> out;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const auto nl = s.find('\n', pos);
    const auto end = nl == std::string_view::npos ? s.size() : nl;
    out.push_back({s.substr(pos, end - pos), pos});
    if (nl == std::string_view::npos) break;
    pos = nl + 1;
  }
  return out;
}

inline bool is_comment(std::string_view line) {
  const auto t = trim(line);
  return !t.empty() && t.front() == '#';
}

inline std::vector<std::pair<std::string_view, std::size_t>> tokens(const TextLine& l) {
  std::vector<std::pair<std::string_view, std::size_t>> out;
  std::size_t i = 0;
  const auto& s = l.text;
  while (i < s.size()) {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    const std::size_t b = i;
    while (i < s.size() && !std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    if (i > b) out.emplace_back(s.substr(b, i - b), l.offset + b);
  }
  return out;
}

inline double parse_real(std::string_view tok, std::size_t offset) {
  if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
  double v = 0.0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || !std::isfinite(v)) {
    throw ParseError("matrix: invalid real number '" + std::string(tok) + "'", offset);
  }
  return v;
}

inline std::size_t parse_dim(std::string_view tok, std::size_t offset) {
  std::size_t v = 0;
  const auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
  if (ec != std::errc{} || p != tok.data() + tok.size() || v == 0 || v > 4096) {
    throw ParseError("matrix: invalid dimension '" + std::string(tok) + "'", offset);
  }
  return v;
}

// Parses one matrix from the non-comment lines of a section. `end_offset` is
// reported when the section runs out of rows.
inline MatrixText parse_matrix_lines(const std::vector<TextLine>& lines, std::size_t end_offset) {
  MatrixText m;
  std::size_t k = 0;
  auto next_data_line = [&]() -> const TextLine* {
    while (k < lines.size()) {
      const auto& l = lines[k++];
      if (is_comment(l.text)) {
        const auto t = trim(l.text);
        constexpr std::string_view kName = "name:";
        auto body = trim(t.substr(1));
        if (body.substr(0, kName.size()) == kName) m.label = std::string(trim(body.substr(kName.size())));
        continue;
      }
      if (trim(l.text).empty()) continue;
      return &l;
    }
    return nullptr;
  };
  const TextLine* header = next_data_line();
  if (!header) throw ParseError("matrix: missing 'rows cols' header", end_offset);
  const auto ht = tokens(*header);
  if (ht.size() != 2) throw ParseError("matrix: header must be 'rows cols'", header->offset);
  m.offset = header->offset;
  m.rows = parse_dim(ht[0].first, ht[0].second);
  m.cols = parse_dim(ht[1].first, ht[1].second);

  auto read_block = [&](std::vector<double>& dst) {
    dst.reserve(m.rows * m.cols);
    for (std::size_t r = 0; r < m.rows; ++r) {
      const TextLine* l = next_data_line();
      if (!l) {
        throw ParseError("matrix: expected " + std::to_string(m.rows) + " rows, found " +
                             std::to_string(r),
                         end_offset);
      }
      const auto t = tokens(*l);
      if (t.size() != m.cols) {
        throw ParseError("matrix: row " + std::to_string(r) + " has " + std::to_string(t.size()) +
                             " values, expected " + std::to_string(m.cols),
                         l->offset);
      }
      for (const auto& [tok, off] : t) dst.push_back(parse_real(tok, off));
    }
  };
  read_block(m.re);
  if (const TextLine* l = next_data_line()) {
    if (trim(l->text) != "imag") {
      throw ParseError("matrix: unexpected content after matrix rows", l->offset);
    }
    m.im.emplace();
    read_block(*m.im);
    if (const TextLine* extra = next_data_line()) {
      throw ParseError("matrix: unexpected content after imaginary rows", extra->offset);
    }
  }
  return m;
}

}  // namespace detail

inline MatrixText parse_matrix_text(std::string_view text) {
  return detail::parse_matrix_lines(detail::split_lines(text), text.size());
}

inline std::vector<MatrixText> parse_block_text(std::string_view text) {
  std::vector<MatrixText> out;
  std::vector<detail::TextLine> section;
  for (const auto& l : detail::split_lines(text)) {
    if (detail::trim(l.text) == "---") {
      out.push_back(detail::parse_matrix_lines(section, l.offset));
      section.clear();
    } else {
      section.push_back(l);
    }
  }
  out.push_back(detail::parse_matrix_lines(section, text.size()));
  return out;
}

inline HermitianMatrix to_hermitian(const MatrixText& m) {
  if (m.rows != m.cols) {
    throw DimensionMismatch("matrix at byte offset " + std::to_string(m.offset) + " is " +
                            std::to_string(m.rows) + "x" + std::to_string(m.cols) +
                            ", expected square");
  }
  if (m.im) return HermitianMatrix::from_parts(m.rows, m.re, *m.im);
  return HermitianMatrix::from_real(m.rows, m.re);
}

inline RectMatrix to_rect(const MatrixText& m) {
  if (m.im) {
    for (double v : *m.im)
      if (v != 0.0) throw DomainError("rectangular matrices must be real");
  }
  return RectMatrix(m.rows, m.cols, m.re);
}

inline BlockOperator to_block_operator(const std::vector<MatrixText>& parts) {
  std::vector<HermitianMatrix> blocks;
  std::vector<std::string> labels;
  bool any_label = false;
  for (const auto& p : parts) {
    blocks.push_back(to_hermitian(p));
    labels.push_back(p.label);
    any_label = any_label || !p.label.empty();
  }
  if (!any_label) labels.clear();
  return BlockOperator(std::move(blocks), std::move(labels));
}

namespace detail {

inline std::string format_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace detail

inline std::string format_matrix_text(const HermitianMatrix& h) {
  const std::size_t n = h.dim();
  std::string out = std::to_string(n) + " " + std::to_string(n) + "\n";
  auto rows = [&](auto part) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (j) out += ' ';
        out += detail::format_real(part(h(i, j)));
      }
      out += '\n';
    }
  };
  rows([](Complex c) { return c.real(); });
  if (!h.is_real()) {
    out += "imag\n";
    rows([](Complex c) { return c.imag(); });
  }
  return out;
}

inline std::string format_matrix_text(const RectMatrix& m) {
  std::string out = std::to_string(m.rows()) + " " + std::to_string(m.cols()) + "\n";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) out += ' ';
      out += detail::format_real(m(i, j));
    }
    out += '\n';
  }
  return out;
}

inline std::string format_block_text(const BlockOperator& b) {
  std::string out;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) out += "---\n";
    if (!b.labels().empty() && !b.labels()[i].empty()) out += "# name: " + b.labels()[i] + "\n";
    out += format_matrix_text(b.block(i));
  }
  return out;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  if (in.bad()) throw IoError("error reading '" + path + "'");
  return ss.str();
}

}  // namespace opcontrast
