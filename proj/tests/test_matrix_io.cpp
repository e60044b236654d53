#include <gtest/gtest.h>

#include <string>

#include "opcontrast/matrix_io.hpp"
#include "opcontrast/random.hpp"

using namespace opcontrast;

TEST(MatrixText, ParsesRealWithComments) {
  const auto m = parse_matrix_text("# a comment\n2 2\n 2 0\n0 4\n\n");
  EXPECT_EQ(m.rows, 2u);
  EXPECT_EQ(m.cols, 2u);
  EXPECT_EQ(m.re, (std::vector<double>{2, 0, 0, 4}));
  EXPECT_FALSE(m.im.has_value());
  EXPECT_EQ(m.offset, 12u);
  EXPECT_EQ(to_hermitian(m), HermitianMatrix::diagonal({2, 4}));
}

TEST(MatrixText, ParsesImaginaryPart) {
  const auto h = to_hermitian(parse_matrix_text("2 2\n2 1\n1 2\nimag\n0 1\n-1 0\n"));
  EXPECT_FALSE(h.is_real());
  EXPECT_EQ(h(0, 1), Complex(1.0, 1.0));
  EXPECT_EQ(h(1, 0), Complex(1.0, -1.0));
}

TEST(MatrixText, ErrorsCarryOffsets) {
  try {
    parse_matrix_text("2 2\n1 0\n0 z\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 10u);
    EXPECT_NE(std::string(e.what()).find("byte offset 10"), std::string::npos);
  }
  EXPECT_THROW(parse_matrix_text(""), ParseError);
  EXPECT_THROW(parse_matrix_text("2\n1 2\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("0 2\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("2 2\n1 0\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("2 2\n1 0 3\n0 1\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("1 1\n1\nextra\n"), ParseError);
  EXPECT_THROW(parse_matrix_text("1 1\ninf\n"), ParseError);
}

TEST(MatrixText, NonSquareIsDomainError) {
  const auto m = parse_matrix_text("2 3\n1 0 0\n0 2 0\n");
  EXPECT_THROW(to_hermitian(m), DimensionMismatch);
  EXPECT_EQ(to_rect(m).cols(), 3u);
}

TEST(MatrixText, RoundTripsBitExact) {
  Rng rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto h = t % 2 ? complex_wishart(4, 5, rng) : random_psd(5, rng);
    EXPECT_EQ(to_hermitian(parse_matrix_text(format_matrix_text(h))), h);
  }
  const auto r = gaussian_rect(3, 5, rng);
  const auto back = to_rect(parse_matrix_text(format_matrix_text(r)));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 5; ++j) EXPECT_EQ(back(i, j), r(i, j));
}

TEST(BlockText, LabelsAndSeparators) {
  const auto parts = parse_block_text("# name: first\n2 2\n2 0\n0 4\n---\n1 1\n5\n");
  ASSERT_EQ(parts.size(), 2u);
  EXPECT_EQ(parts[0].label, "first");
  EXPECT_EQ(parts[1].label, "");
  const auto b = to_block_operator(parts);
  EXPECT_EQ(b.labels(), (std::vector<std::string>{"first", ""}));
  const auto again = to_block_operator(parse_block_text(format_block_text(b)));
  EXPECT_EQ(again.block(0), b.block(0));
  EXPECT_EQ(again.labels(), b.labels());
}

TEST(BlockText, EmptySectionReportsSeparatorOffset) {
  try {
    parse_block_text("1 1\n1\n---\n---\n1 1\n2\n");
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 10u);
  }
}

TEST(ReadFile, MissingFileIsIoError) {
  EXPECT_THROW(read_file("/nonexistent/definitely/missing.txt"), IoError);
}
