#pragma once

// Netpbm grayscale/RGB images (P2, P3, P5, P6) and the classical Michelson
// contrast of their channels.

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "opcontrast/contrast.hpp"
#include "opcontrast/errors.hpp"
#include "opcontrast/linalg.hpp"

namespace opcontrast {

enum class PnmErrorKind { BadMagic, BadHeader, TruncatedData, MaxvalOutOfRange, SampleOutOfRange };

inline const char* to_string(PnmErrorKind k) {
  switch (k) {
    case PnmErrorKind::BadMagic:
      return "BadMagic";
    case PnmErrorKind::BadHeader:
      return "BadHeader";
    case PnmErrorKind::TruncatedData:
      return "TruncatedData";
    case PnmErrorKind::MaxvalOutOfRange:
      return "MaxvalOutOfRange";
    case PnmErrorKind::SampleOutOfRange:
      return "SampleOutOfRange";
  }
  return "Unknown";
}

class PnmError : public ParseError {
 public:
  PnmError(PnmErrorKind kind, const std::string& what, std::size_t offset)
      : ParseError(std::string("pnm: ") + to_string(kind) + ": " + what, offset), kind_(kind) {}

  PnmErrorKind kind() const noexcept { return kind_; }

 private:
  PnmErrorKind kind_;
};

// Samples are normalized to [0, 1] by maxval and stored per channel,
// row-major (index y * width + x).
struct ImageChannels {
  std::size_t width = 0;
  std::size_t height = 0;
  unsigned maxval = 255;
  std::vector<std::vector<double>> channels;

  std::size_t channel_count() const noexcept { return channels.size(); }

  RectMatrix channel_matrix(std::size_t c) const {
    return RectMatrix(height, width, channels.at(c));
  }
};

namespace detail {

class PnmReader {
 public:
  explicit PnmReader(std::span<const unsigned char> bytes) : b_(bytes) {}

  std::size_t pos() const noexcept { return pos_; }
  std::size_t remaining() const noexcept { return b_.size() - pos_; }

  unsigned char byte_at(std::size_t i) const { return b_[i]; }

  void skip_space_and_comments() {
    while (pos_ < b_.size()) {
      if (std::isspace(b_[pos_])) {
        ++pos_;
      } else if (b_[pos_] == '#') {
        while (pos_ < b_.size() && b_[pos_] != '\n' && b_[pos_] != '\r') ++pos_;
      } else {
        break;
      }
    }
  }

  // Unsigned decimal token; `what` names the field in diagnostics.
  std::uint64_t read_uint(const char* what, PnmErrorKind eof_kind) {
    skip_space_and_comments();
    if (pos_ >= b_.size()) {
      throw PnmError(eof_kind, std::string("unexpected end of data reading ") + what, pos_);
    }
    const std::size_t start = pos_;
    std::uint64_t v = 0;
    while (pos_ < b_.size() && std::isdigit(b_[pos_])) {
      v = v * 10 + (b_[pos_] - '0');
      if (v > 0xFFFFFFFFull) throw PnmError(PnmErrorKind::BadHeader, std::string(what) + " too large", start);
      ++pos_;
    }
    if (pos_ == start) {
      throw PnmError(eof_kind == PnmErrorKind::TruncatedData ? PnmErrorKind::TruncatedData
                                                              : PnmErrorKind::BadHeader,
                     std::string("expected a decimal ") + what, start);
    }
    if (pos_ < b_.size() && !std::isspace(b_[pos_]) && b_[pos_] != '#') {
      throw PnmError(PnmErrorKind::BadHeader, std::string("malformed ") + what, pos_);
    }
    return v;
  }

  void advance(std::size_t n) { pos_ += n; }

 private:
  std::span<const unsigned char> b_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline ImageChannels parse_pnm(std::span<const unsigned char> bytes) {
  if (bytes.size() < 2 || bytes[0] != 'P' ||
      (bytes[1] != '2' && bytes[1] != '3' && bytes[1] != '5' && bytes[1] != '6')) {
    throw PnmError(PnmErrorKind::BadMagic, "expected P2, P3, P5 or P6", 0);
  }
  const char kind = static_cast<char>(bytes[1]);
  const bool binary = kind == '5' || kind == '6';
  const std::size_t nch = (kind == '3' || kind == '6') ? 3 : 1;
  if (bytes.size() > 2 && !std::isspace(bytes[2]) && bytes[2] != '#') {
    throw PnmError(PnmErrorKind::BadMagic, "magic number must be followed by whitespace", 2);
  }

  detail::PnmReader r(bytes);
  r.advance(2);
  ImageChannels img;
  const std::size_t width_at = r.pos();
  img.width = r.read_uint("width", PnmErrorKind::BadHeader);
  img.height = r.read_uint("height", PnmErrorKind::BadHeader);
  if (img.width == 0 || img.height == 0 || img.width * img.height > (std::size_t{1} << 28)) {
    throw PnmError(PnmErrorKind::BadHeader, "image dimensions out of range", width_at);
  }
  r.skip_space_and_comments();
  const std::size_t maxval_at = r.pos();
  const auto maxval = r.read_uint("maxval", PnmErrorKind::BadHeader);
  if (maxval == 0 || maxval > 65535) {
    throw PnmError(PnmErrorKind::MaxvalOutOfRange,
                   "maxval " + std::to_string(maxval) + " outside 1..65535", maxval_at);
  }
  img.maxval = static_cast<unsigned>(maxval);

  const std::size_t pixels = img.width * img.height;
  img.channels.assign(nch, std::vector<double>(pixels));
  const double denom = static_cast<double>(img.maxval);
  auto store = [&](std::size_t idx, std::uint64_t v, std::size_t at) {
    if (v > img.maxval) {
      throw PnmError(PnmErrorKind::SampleOutOfRange,
                     "sample " + std::to_string(v) + " exceeds maxval", at);
    }
    img.channels[idx % nch][idx / nch] = static_cast<double>(v) / denom;
  };

  const std::size_t total = pixels * nch;
  if (binary) {
    // Exactly one whitespace byte separates maxval from the raster.
    if (r.remaining() == 0) {
      throw PnmError(PnmErrorKind::TruncatedData, "missing raster", r.pos());
    }
    if (!std::isspace(r.byte_at(r.pos()))) {
      throw PnmError(PnmErrorKind::BadHeader, "expected whitespace after maxval", r.pos());
    }
    r.advance(1);
    const std::size_t bps = img.maxval > 255 ? 2 : 1;
    if (r.remaining() < total * bps) {
      throw PnmError(PnmErrorKind::TruncatedData,
                     "raster needs " + std::to_string(total * bps) + " bytes, found " +
                         std::to_string(r.remaining()),
                     bytes.size());
    }
    for (std::size_t i = 0; i < total; ++i) {
      const std::size_t at = r.pos();
      std::uint64_t v = r.byte_at(at);
      if (bps == 2) v = (v << 8) | r.byte_at(at + 1);
      store(i, v, at);
      r.advance(bps);
    }
  } else {
    for (std::size_t i = 0; i < total; ++i) {
      r.skip_space_and_comments();
      const std::size_t at = r.pos();
      store(i, r.read_uint("sample", PnmErrorKind::TruncatedData), at);
    }
  }
  return img;
}

inline ImageChannels parse_pnm(std::string_view bytes) {
  return parse_pnm(std::span<const unsigned char>(
      reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size()));
}

// Serializes with samples quantized to round(s * maxval). `kind` is one of
// '2', '3', '5', '6' and must match the channel count.
inline std::string write_pnm(const ImageChannels& img, char kind) {
  const std::size_t nch = img.channel_count();
  const bool rgb = kind == '3' || kind == '6';
  if ((kind != '2' && kind != '3' && kind != '5' && kind != '6') || (rgb ? 3u : 1u) != nch) {
    throw DomainError("write_pnm: format does not match channel count");
  }
  const bool binary = kind == '5' || kind == '6';
  std::string out = std::string("P") + kind + "\n" + std::to_string(img.width) + " " +
                    std::to_string(img.height) + "\n" + std::to_string(img.maxval) + "\n";
  auto quantize = [&](double s) {
    const double q = std::round(std::clamp(s, 0.0, 1.0) * img.maxval);
    return static_cast<unsigned>(q);
  };
  for (std::size_t y = 0; y < img.height; ++y) {
    for (std::size_t x = 0; x < img.width; ++x) {
      for (std::size_t c = 0; c < nch; ++c) {
        const unsigned v = quantize(img.channels[c][y * img.width + x]);
        if (binary) {
          if (img.maxval > 255) out += static_cast<char>(v >> 8);
          out += static_cast<char>(v & 0xFF);
        } else {
          if (x || c) out += ' ';
          out += std::to_string(v);
        }
      }
    }
    if (!binary) out += '\n';
  }
  return out;
}

// (I_max - I_min) / (I_max + I_min); an all-zero signal gives 1.
inline double michelson_contrast(std::span<const double> samples) {
  if (samples.empty()) throw EmptyInput("michelson_contrast: no samples");
  const auto [lo, hi] = std::minmax_element(samples.begin(), samples.end());
  if (*lo < 0.0) throw NotPositive("michelson_contrast: negative sample");
  if (*hi <= 0.0) return 1.0;
  return (*hi - *lo) / (*hi + *lo);
}

}  // namespace opcontrast
