#include "qmot/matrix.hpp"

#include <sstream>
#include <utility>

#include "qmot/error.hpp"

namespace qmot {

Mat::Mat(CoeffRing ring, std::size_t rows, std::size_t cols)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(rows * cols, Int(0)) {}

Mat::Mat(CoeffRing ring, std::size_t rows, std::size_t cols, std::vector<Int> entries)
    : ring_(std::move(ring)), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  require(entries_.size() == rows_ * cols_,
          "matrix entry count " + std::to_string(entries_.size()) + " != " +
              std::to_string(rows_) + "x" + std::to_string(cols_));
  normalize();
}

Mat Mat::from_rows(CoeffRing ring,
                   std::initializer_list<std::initializer_list<long>> rows) {
  std::size_t r = rows.size();
  std::size_t c = r == 0 ? 0 : rows.begin()->size();
  std::vector<Int> e;
  e.reserve(r * c);
  for (const auto& row : rows) {
    require(row.size() == c, "ragged matrix literal");
    for (long v : row) e.emplace_back(v);
  }
  return Mat(std::move(ring), r, c, std::move(e));
}

Mat Mat::identity(CoeffRing ring, std::size_t n) {
  Mat m(std::move(ring), n, n);
  for (std::size_t i = 0; i < n; ++i) m.entries_[i * n + i] = 1;
  return m;
}

void Mat::normalize() {
  if (ring_.is_integers()) return;
  for (auto& e : entries_) e = mod_floor(e, ring_.modulus());
}

void Mat::set(std::size_t i, std::size_t j, const Int& v) {
  entries_[i * cols_ + j] = ring_.canonical(v);
}

std::vector<Int> Mat::row(std::size_t i) const {
  return {entries_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
          entries_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_)};
}

std::vector<Int> Mat::col(std::size_t j) const {
  std::vector<Int> out;
  out.reserve(rows_);
  for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
  return out;
}

bool Mat::is_zero() const {
  for (const auto& e : entries_)
    if (e != 0) return false;
  return true;
}

bool Mat::is_identity() const {
  if (!is_square()) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1 : 0)) return false;
  return true;
}

Mat Mat::transpose() const {
  Mat t(ring_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) t.entries_[j * rows_ + i] = (*this)(i, j);
  return t;
}

Mat Mat::reduce(const CoeffRing& target) const {
  require(ring_.reduces_to(target),
          "cannot reduce from " + ring_.to_string() + " to " + target.to_string());
  return Mat(target, rows_, cols_, entries_);
}

Mat Mat::lift_canonical() const { return Mat(CoeffRing::integers(), rows_, cols_, entries_); }

Mat Mat::lift_symmetric() const {
  if (ring_.is_integers()) return *this;
  std::vector<Int> e;
  e.reserve(entries_.size());
  for (const auto& v : entries_) e.push_back(symmetric_mod(v, ring_.modulus()));
  return Mat(CoeffRing::integers(), rows_, cols_, std::move(e));
}

Int integer_det(std::size_t n, std::vector<Int> a) {
  if (n == 0) return 1;
  Int sign = 1;
  Int prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (a[k * n + k] == 0) {
      std::size_t p = k + 1;
      while (p < n && a[p * n + k] == 0) ++p;
      if (p == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(a[k * n + j], a[p * n + j]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        Int v = a[i * n + j] * a[k * n + k] - a[i * n + k] * a[k * n + j];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i * n + j] = v;
      }
    }
    prev = a[k * n + k];
  }
  return sign * a[(n - 1) * n + (n - 1)];
}

Int Mat::det() const {
  require(is_square(), "determinant of a non-square matrix");
  return ring_.canonical(integer_det(rows_, entries_));
}

void Mat::add_row(std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t j = 0; j < cols_; ++j)
    entries_[dst * cols_ + j] = ring_.canonical(entries_[dst * cols_ + j] + c * entries_[src * cols_ + j]);
}

void Mat::add_col(std::size_t dst, std::size_t src, const Int& c) {
  for (std::size_t i = 0; i < rows_; ++i)
    entries_[i * cols_ + dst] = ring_.canonical(entries_[i * cols_ + dst] + c * entries_[i * cols_ + src]);
}

void Mat::swap_rows(std::size_t a, std::size_t b) {
  for (std::size_t j = 0; j < cols_; ++j) std::swap(entries_[a * cols_ + j], entries_[b * cols_ + j]);
}

void Mat::swap_cols(std::size_t a, std::size_t b) {
  for (std::size_t i = 0; i < rows_; ++i) std::swap(entries_[i * cols_ + a], entries_[i * cols_ + b]);
}

void Mat::scale_row(std::size_t i, const Int& c) {
  for (std::size_t j = 0; j < cols_; ++j)
    entries_[i * cols_ + j] = ring_.canonical(entries_[i * cols_ + j] * c);
}

Mat Mat::operator*(const Mat& o) const {
  require(ring_ == o.ring_, "ring mismatch in product");
  require(cols_ == o.rows_, "shape mismatch in product");
  std::vector<Int> e(rows_ * o.cols_, Int(0));
  Int acc;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < o.cols_; ++j) {
      acc = 0;
      for (std::size_t k = 0; k < cols_; ++k) acc += (*this)(i, k) * o(k, j);
      e[i * o.cols_ + j] = acc;
    }
  return Mat(ring_, rows_, o.cols_, std::move(e));
}

Mat Mat::operator+(const Mat& o) const {
  require(ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_, "mismatch in sum");
  std::vector<Int> e(entries_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = entries_[k] + o.entries_[k];
  return Mat(ring_, rows_, cols_, std::move(e));
}

Mat Mat::operator-(const Mat& o) const {
  require(ring_ == o.ring_ && rows_ == o.rows_ && cols_ == o.cols_, "mismatch in difference");
  std::vector<Int> e(entries_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = entries_[k] - o.entries_[k];
  return Mat(ring_, rows_, cols_, std::move(e));
}

Mat Mat::operator-() const { return scaled(-1); }

Mat Mat::scaled(const Int& c) const {
  std::vector<Int> e(entries_.size());
  for (std::size_t k = 0; k < e.size(); ++k) e[k] = entries_[k] * c;
  return Mat(ring_, rows_, cols_, std::move(e));
}

std::string Mat::to_string() const {
  std::ostringstream os;
  os << "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    os << (i ? ", [" : "[");
    for (std::size_t j = 0; j < cols_; ++j) os << (j ? ", " : "") << (*this)(i, j).get_str();
    os << "]";
  }
  os << "] over " << ring_.to_string();
  return os.str();
}

Mat inverse(const Mat& m) {
  require(m.is_square(), "inverse of a non-square matrix");
  const auto& ring = m.ring();
  std::size_t n = m.rows();
  Int d = m.det();
  require(ring.is_unit(d), "matrix is not invertible over " + ring.to_string());
  Int dinv = ring.inverse(d);
  if (n == 0) return m;
  Mat adj(ring, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::vector<Int> minor;
      minor.reserve((n - 1) * (n - 1));
      for (std::size_t r = 0; r < n; ++r) {
        if (r == j) continue;
        for (std::size_t c = 0; c < n; ++c)
          if (c != i) minor.push_back(m(r, c));
      }
      Int cof = integer_det(n - 1, std::move(minor));
      if ((i + j) % 2) cof = -cof;
      adj.set(i, j, cof * dinv);
    }
  return adj;
}

std::vector<Int> row_times(std::span<const Int> x, const Mat& m) {
  require(x.size() == m.rows(), "row vector length mismatch");
  std::vector<Int> out(m.cols(), Int(0));
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] += x[i] * m(i, j);
  }
  for (auto& v : out) v = m.ring().canonical(v);
  return out;
}

}  // namespace qmot
