#pragma once

#include <cstdint>
#include <numeric>
#include <random>
#include <vector>

#include "qmot/error.hpp"
#include "qmot/harness.hpp"
#include "qmot/normal_form.hpp"

namespace testing {

using qmot::Cell;
using qmot::CoeffRing;
using qmot::Correspondence;
using qmot::Cycle;
using qmot::Int;
using qmot::Mat;
using qmot::SplitQuadric;

// Plain 64-bit matrices, used as an oracle independent of the library.
using Plain = std::vector<std::vector<long long>>;

inline Plain mul(const Plain& a, const Plain& b) {
  Plain c(a.size(), std::vector<long long>(b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k)
      for (std::size_t j = 0; j < b[0].size(); ++j) c[i][j] += a[i][k] * b[k][j];
  return c;
}

inline Plain mod(Plain a, long long m) {
  for (auto& row : a)
    for (auto& x : row) x = ((x % m) + m) % m;
  return a;
}

inline long long det(Plain a) {
  // Laplace expansion; fine for the sizes used here.
  std::size_t n = a.size();
  if (n == 0) return 1;
  if (n == 1) return a[0][0];
  long long out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    Plain minor;
    for (std::size_t i = 1; i < n; ++i) {
      std::vector<long long> row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(a[i][k]);
      minor.push_back(row);
    }
    long long term = a[0][j] * det(minor);
    out += (j % 2 == 0) ? term : -term;
  }
  return out;
}

inline Plain plain(const Mat& m) {
  Plain out(m.rows(), std::vector<long long>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j).get_si();
  return out;
}

inline Mat mat(const CoeffRing& r, std::initializer_list<std::initializer_list<long>> rows) {
  return Mat::from_rows(r, rows);
}

inline Cycle L(const SplitQuadric& x, const CoeffRing& r, int i) { return Cycle::cell(x, r, {Cell::Kind::L, i}); }
inline Cycle Lp(const SplitQuadric& x, const CoeffRing& r, int i) {
  return Cycle::cell(x, r, {Cell::Kind::LPrime, i});
}
inline Cycle h(const SplitQuadric& x, const CoeffRing& r, int a) { return Cycle::h_power(x, r, a); }

inline Correspondence corr(const SplitQuadric& x, const CoeffRing& r, std::vector<Mat> blocks) {
  return Correspondence(x, x, r, std::move(blocks));
}

inline Correspondence random_corr(std::mt19937_64& rng, const SplitQuadric& x, const SplitQuadric& y,
                                  const CoeffRing& r, int lo = -4, int hi = 4) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Int> flat(Correspondence::flat_size(x, y));
  for (auto& v : flat) v = d(rng);
  return Correspondence::unflatten(x, y, r, flat);
}

inline Mat random_mat(std::mt19937_64& rng, const CoeffRing& r, std::size_t rows, std::size_t cols, int lo,
                      int hi) {
  std::uniform_int_distribution<int> d(lo, hi);
  std::vector<Int> e(rows * cols);
  for (auto& v : e) v = d(rng);
  return Mat(r, rows, cols, std::move(e));
}

// Uniform element of SL_k(Z/2^n): random matrix, then fix the determinant
// by scaling the first row with the inverse of the (odd) determinant.
inline Mat random_sl(std::mt19937_64& rng, int k, int n) {
  CoeffRing r = CoeffRing::pow2(n);
  for (;;) {
    Mat m = random_mat(rng, r, static_cast<std::size_t>(k), static_cast<std::size_t>(k), 0, (1 << n) - 1);
    Int d = m.det();
    if (!r.is_unit(d)) continue;
    m.scale_row(0, r.inverse(d));
    return m;
  }
}

}  // namespace testing
