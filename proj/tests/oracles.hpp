#pragma once

// Reference computations that share no code with the library's solvers.

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include <Eigen/Dense>

#include "opcontrast/linalg.hpp"

namespace oracle {

// Ascending eigenvalues from Eigen's Hermitian solver.
inline std::vector<double> eigenvalues(const opcontrast::HermitianMatrix& h) {
  const auto n = static_cast<Eigen::Index>(h.dim());
  Eigen::MatrixXcd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = h(i, j);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(m, Eigen::EigenvaluesOnly);
  std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + n);
  return out;
}

struct Interval {
  double lo;
  double hi;
};

// min over z in [0,1] of max(|z - l lo|, |z - l hi|): the distance from the
// interval [l lo, l hi] to the best real scalar clamped into [0, 1].
inline double free_block(const Interval& s, double l) {
  const double z = std::clamp(0.5 * l * (s.lo + s.hi), 0.0, 1.0);
  return std::max(std::abs(z - l * s.lo), std::abs(z - l * s.hi));
}

inline double pinned_block(const Interval& s, double l) {
  return std::max(std::abs(1.0 - l * s.lo), std::abs(1.0 - l * s.hi));
}

// inf over central unit z and l >= 0 of max_i || z_i - l x_i ||, written per
// pinned block j (the block where |z_j| = 1).
inline double central_at(const std::vector<Interval>& spectra, double l) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 0; j < spectra.size(); ++j) {
    double v = pinned_block(spectra[j], l);
    for (std::size_t i = 0; i < spectra.size(); ++i)
      if (i != j) v = std::max(v, free_block(spectra[i], l));
    best = std::min(best, v);
  }
  return best;
}

// Exact minimum of the piecewise-linear function central_at over l >= 0: the
// minimum sits at l = 0 or at an intersection of two of its linear pieces.
inline double central_exact(const std::vector<Interval>& spectra) {
  struct Line {
    double a, b;  // a l + b
  };
  std::vector<Line> lines{{0.0, 0.0}, {0.0, 1.0}};
  for (const auto& s : spectra) {
    lines.push_back({0.5 * (s.hi - s.lo), 0.0});
    lines.push_back({s.hi, -1.0});
    lines.push_back({-s.lo, 1.0});
    lines.push_back({s.lo, -1.0});
    lines.push_back({-s.hi, 1.0});
    lines.push_back({0.5 * (s.lo + s.hi), 0.0});   // z breakpoint: l mid = 1
    lines.push_back({0.5 * (s.lo + s.hi), -1.0});
  }
  std::vector<double> cand{0.0};
  for (std::size_t p = 0; p < lines.size(); ++p)
    for (std::size_t q = p + 1; q < lines.size(); ++q) {
      const double da = lines[p].a - lines[q].a;
      if (da == 0.0) continue;
      const double l = (lines[q].b - lines[p].b) / da;
      if (l >= 0.0 && std::isfinite(l)) cand.push_back(l);
    }
  double best = 1.0;
  for (double l : cand) best = std::min(best, central_at(spectra, l));
  return best;
}

// Brute force over signed real coefficients z_i in [-1, 1] on a grid and a
// grid of l, with one coefficient pinned to +-1. Slow; small inputs only.
inline double central_signed_grid(const std::vector<Interval>& spectra, int z_steps, int l_steps,
                                  double l_max) {
  const std::size_t k = spectra.size();
  auto block = [](const Interval& s, double z, double l) {
    return std::max(std::abs(z - l * s.lo), std::abs(z - l * s.hi));
  };
  double best = 1.0;
  std::vector<int> idx(k, 0);
  for (int li = 0; li <= l_steps; ++li) {
    const double l = l_max * li / l_steps;
    for (std::size_t j = 0; j < k; ++j) {
      for (double pin : {-1.0, 1.0}) {
        std::fill(idx.begin(), idx.end(), 0);
        while (true) {
          double v = block(spectra[j], pin, l);
          for (std::size_t i = 0; i < k && v < best; ++i) {
            if (i == j) continue;
            const double z = -1.0 + 2.0 * idx[i] / z_steps;
            v = std::max(v, block(spectra[i], z, l));
          }
          best = std::min(best, v);
          std::size_t t = 0;
          for (; t < k; ++t) {
            if (t == j) continue;
            if (++idx[t] <= z_steps) break;
            idx[t] = 0;
          }
          if (t == k) break;
        }
      }
    }
  }
  return best;
}

}  // namespace oracle
