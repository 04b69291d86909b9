#include "qmot/lifting.hpp"

#include "qmot/error.hpp"
#include "qmot/normal_form.hpp"

namespace qmot {

namespace {

// Elementary operation recorded while reducing a matrix to the identity.
// Row op: A <- (I + c e_{dst,src}) A.  Column op: A <- A (I + c e_{src,dst}).
struct ElementaryOp {
  bool on_rows;
  std::size_t dst;
  std::size_t src;
  Int c;
};

class Reducer {
 public:
  explicit Reducer(Mat a) : a_(std::move(a)) {}

  void row_op(std::size_t dst, std::size_t src, const Int& c) {
    Int cc = a_.ring().canonical(c);
    if (cc == 0) return;
    a_.add_row(dst, src, cc);
    ops_.push_back({true, dst, src, cc});
  }
  void col_op(std::size_t dst, std::size_t src, const Int& c) {
    Int cc = a_.ring().canonical(c);
    if (cc == 0) return;
    a_.add_col(dst, src, cc);
    ops_.push_back({false, dst, src, cc});
  }

  const Mat& mat() const { return a_; }
  const std::vector<ElementaryOp>& ops() const { return ops_; }

 private:
  Mat a_;
  std::vector<ElementaryOp> ops_;
};

Mat integral_elementary(std::size_t k, std::size_t r, std::size_t c, const Int& v) {
  Mat e = Mat::identity(CoeffRing::integers(), k);
  e.set(r, c, v);
  return e;
}

// Make the entry (j, j) a unit using row operations among rows >= j.
void bring_unit_to_pivot(Reducer& red, std::size_t j) {
  const auto& ring = red.mat().ring();
  const std::size_t k = red.mat().rows();
  std::size_t p = k;
  for (std::size_t i = j; i < k; ++i)
    if (ring.is_unit(red.mat()(i, j))) {
      p = i;
      break;
    }
  if (p == k) {
    // No unit in the column (only possible when m is not a prime power):
    // Euclid on the representatives concentrates the gcd, which is a unit.
    for (;;) {
      std::size_t best = k;
      std::size_t nonzero = 0;
      for (std::size_t i = j; i < k; ++i) {
        const Int& x = red.mat()(i, j);
        if (x == 0) continue;
        ++nonzero;
        if (best == k || x < red.mat()(best, j)) best = i;
      }
      ensure(best != k, "lift_sl: zero column in an invertible matrix");
      if (nonzero == 1) {
        p = best;
        break;
      }
      for (std::size_t i = j; i < k; ++i) {
        if (i == best || red.mat()(i, j) == 0) continue;
        Int q;
        mpz_fdiv_q(q.get_mpz_t(), red.mat()(i, j).get_mpz_t(), red.mat()(best, j).get_mpz_t());
        red.row_op(i, best, -q);
      }
    }
    ensure(ring.is_unit(red.mat()(p, j)), "lift_sl: column does not generate the unit ideal");
  }
  if (p != j) {
    Int c = (Int(1) - red.mat()(j, j)) * ring.inverse(red.mat()(p, j));
    red.row_op(j, p, c);
    return;
  }
  if (red.mat()(j, j) == 1 || j + 1 == k) return;
  Int u = red.mat()(j, j);
  red.row_op(j + 1, j, (Int(1) - red.mat()(j + 1, j)) * ring.inverse(u));
  red.row_op(j, j + 1, Int(1) - u);
}

}  // namespace

Mat lift_sl(const Mat& m) {
  require(m.ring().is_residue(), "lift_sl expects a matrix over Z/m");
  require(m.is_square(), "lift_sl expects a square matrix");
  require(m.det() == 1, "lift_sl: determinant is " + m.det().get_str() + ", not 1");
  const std::size_t k = m.rows();

  Mat sym = m.lift_symmetric();
  if (sym.det() == 1) return sym;

  Reducer red(m);
  for (std::size_t j = 0; j < k; ++j) {
    bring_unit_to_pivot(red, j);
    for (std::size_t i = 0; i < k; ++i)
      if (i != j) red.row_op(i, j, -red.mat()(i, j));
    for (std::size_t l = j + 1; l < k; ++l) red.col_op(l, j, -red.mat()(j, l));
  }
  ensure(red.mat().is_identity(), "lift_sl: reduction did not reach the identity");

  // L_t ... L_1 M R_1 ... R_s = I, so M = L_1^{-1} ... L_t^{-1} R_s^{-1} ... R_1^{-1}.
  const Int& mod = m.ring().modulus();
  Mat left = Mat::identity(CoeffRing::integers(), k);
  std::vector<const ElementaryOp*> cols;
  for (const auto& op : red.ops()) {
    Int c = -symmetric_mod(op.c, mod);
    if (op.on_rows)
      left = left * integral_elementary(k, op.dst, op.src, c);
    else
      cols.push_back(&op);
  }
  for (auto it = cols.rbegin(); it != cols.rend(); ++it) {
    Int c = -symmetric_mod((*it)->c, mod);
    left = left * integral_elementary(k, (*it)->src, (*it)->dst, c);
  }
  ensure(left.det() == 1, "lift_sl: integral lift has determinant != 1");
  ensure(left.reduce(m.ring()) == m, "lift_sl: integral lift does not reduce to the input");
  return left;
}

int newton_steps(int n) {
  int s = 0;
  while ((1 << s) < n) ++s;
  return s;
}

Mat lift_idempotent_newton(const Mat& e) {
  auto n = e.ring().two_exponent();
  require(n.has_value(), "newton lifting expects a matrix over Z/2^n");
  require(e.is_square(), "newton lifting expects a square matrix");
  Mat e2 = e.reduce(CoeffRing::pow2(1));
  require(e2.is_idempotent(), "input is not idempotent mod 2");
  Mat f = e;
  for (int s = 0; s < newton_steps(*n); ++s) {
    Mat f2 = f * f;
    f = f2.scaled(3) - (f2 * f).scaled(2);
  }
  ensure(f.is_idempotent(), "newton iteration did not converge");
  return f;
}

UnitSplit unit_decompose(const Int& u, const CoeffRing& ring) {
  require(ring.two_exponent().has_value(), "unit_decompose expects Z/2^n");
  Int c = ring.canonical(u);
  require(mpz_odd_p(c.get_mpz_t()) != 0, "unit_decompose: " + c.get_str() + " is even");
  Int inv = ring.inverse(c);
  Int k = (inv - 1) / 2;
  return {inv, k};
}

std::vector<Int> normalized_column_generator(const Mat& a) {
  const auto& ring = a.ring();
  require(ring.is_residue(), "normalized_column_generator expects Z/m");
  for (std::size_t j = 0; j < a.cols(); ++j) {
    std::vector<Int> v = a.col(j);
    for (const auto& x : v) {
      if (!ring.is_unit(x)) continue;
      Int s = ring.inverse(x);
      for (auto& y : v) y = ring.canonical(y * s);
      return v;
    }
  }
  invalid("column span has no unimodular generator");
}

Mat rank1_decomposition_to_sl2(const Mat& p) {
  const auto& ring = p.ring();
  require(ring.is_residue(), "rank1_decomposition_to_sl2 expects Z/m");
  require(p.rows() == 2 && p.cols() == 2, "rank1_decomposition_to_sl2 expects a 2x2 matrix");
  require(p.is_idempotent(), "matrix is not idempotent");
  Mat id = Mat::identity(ring, 2);
  require(!p.is_zero() && p != id, "idempotent is 0 or the identity");
  require(free_rank(p) == 1, "idempotent does not have rank 1");

  std::vector<Int> v = normalized_column_generator(p);
  std::vector<Int> w = normalized_column_generator(id - p);
  Mat g(ring, 2, 2, {v[0], w[0], v[1], w[1]});
  Int d = g.det();
  require(ring.is_unit(d), "image and kernel generators are not a basis");
  Int s = ring.inverse(d);
  g.set(0, 1, w[0] * s);
  g.set(1, 1, w[1] * s);
  ensure(g.det() == 1, "rank1 decomposition: determinant not 1");
  Mat e11(ring, 2, 2, {1, 0, 0, 0});
  ensure(g * e11 * inverse(g) == p, "rank1 decomposition: conjugation check failed");
  return g;
}

}  // namespace qmot
