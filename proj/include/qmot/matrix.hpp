#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

#include "qmot/ring.hpp"

namespace qmot {

/// Dense row-major matrix over a CoeffRing. Entries are kept canonical
/// (in [0, m) for residue rings) by every mutating operation.
class Mat {
 public:
  Mat(CoeffRing ring, std::size_t rows, std::size_t cols);
  Mat(CoeffRing ring, std::size_t rows, std::size_t cols, std::vector<Int> entries);

  /// Convenience for tests and literals.
  static Mat from_rows(CoeffRing ring,
                       std::initializer_list<std::initializer_list<long>> rows);
  static Mat identity(CoeffRing ring, std::size_t n);
  static Mat zero(CoeffRing ring, std::size_t rows, std::size_t cols) {
    return Mat(std::move(ring), rows, cols);
  }

  const CoeffRing& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  const Int& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }
  void set(std::size_t i, std::size_t j, const Int& v);
  const std::vector<Int>& entries() const { return entries_; }
  std::vector<Int> row(std::size_t i) const;
  std::vector<Int> col(std::size_t j) const;

  bool is_zero() const;
  bool is_identity() const;

  Mat transpose() const;
  /// Entrywise reduction into `target`; requires ring().reduces_to(target).
  Mat reduce(const CoeffRing& target) const;
  /// Lift residues to integers using canonical representatives.
  Mat lift_canonical() const;
  /// Lift residues to integers using representatives in (-m/2, m/2].
  Mat lift_symmetric() const;

  Int det() const;
  bool is_idempotent() const { return is_square() && (*this) * (*this) == *this; }

  /// Row operation: row[dst] += c * row[src].
  void add_row(std::size_t dst, std::size_t src, const Int& c);
  /// Column operation: col[dst] += c * col[src].
  void add_col(std::size_t dst, std::size_t src, const Int& c);
  void swap_rows(std::size_t a, std::size_t b);
  void swap_cols(std::size_t a, std::size_t b);
  void scale_row(std::size_t i, const Int& c);

  Mat operator*(const Mat& o) const;
  Mat operator+(const Mat& o) const;
  Mat operator-(const Mat& o) const;
  Mat operator-() const;
  Mat scaled(const Int& c) const;

  std::string to_string() const;

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.ring_ == b.ring_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.entries_ == b.entries_;
  }

 private:
  void normalize();

  CoeffRing ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Int> entries_;
};

/// Exact determinant of an integer matrix (fraction-free elimination).
Int integer_det(std::size_t n, std::vector<Int> a);

/// Inverse of a square matrix whose determinant is a unit of its ring
/// (adjugate formula; intended for the small blocks used here).
Mat inverse(const Mat& m);

/// Row vector times matrix.
std::vector<Int> row_times(std::span<const Int> x, const Mat& m);

}  // namespace qmot
