#include "qmot/normal_form.hpp"

#include <algorithm>

#include "qmot/error.hpp"

namespace qmot {

namespace {

Int abs_int(const Int& x) { return x < 0 ? Int(-x) : x; }

Int tdiv(const Int& a, const Int& b) {
  Int q;
  mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

Int fdiv(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

bool divides(const Int& d, const Int& x) {
  return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0;
}

}  // namespace

SmithForm snf(const Mat& a0) {
  require(a0.ring().is_integers(), "snf requires an integer matrix");
  const auto Z = CoeffRing::integers();
  const std::size_t r = a0.rows(), c = a0.cols();
  Mat A = a0;
  Mat U = Mat::identity(Z, r);
  Mat V = Mat::identity(Z, c);

  for (std::size_t t = 0; t < std::min(r, c); ++t) {
    bool empty_block = false;
    for (;;) {
      std::size_t p = r, q = c;
      for (std::size_t i = t; i < r; ++i)
        for (std::size_t j = t; j < c; ++j)
          if (A(i, j) != 0 && (p == r || abs_int(A(i, j)) < abs_int(A(p, q)))) {
            p = i;
            q = j;
          }
      if (p == r) {
        empty_block = true;
        break;
      }
      if (p != t) {
        A.swap_rows(t, p);
        U.swap_rows(t, p);
      }
      if (q != t) {
        A.swap_cols(t, q);
        V.swap_cols(t, q);
      }

      bool clean = true;
      for (std::size_t i = t + 1; i < r; ++i) {
        if (A(i, t) == 0) continue;
        Int k = tdiv(A(i, t), A(t, t));
        A.add_row(i, t, -k);
        U.add_row(i, t, -k);
        if (A(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < c; ++j) {
        if (A(t, j) == 0) continue;
        Int k = tdiv(A(t, j), A(t, t));
        A.add_col(j, t, -k);
        V.add_col(j, t, -k);
        if (A(t, j) != 0) clean = false;
      }
      if (!clean) continue;

      // divisibility chain: fold an offending row into the pivot row
      std::size_t bad = r;
      for (std::size_t i = t + 1; i < r && bad == r; ++i)
        for (std::size_t j = t + 1; j < c; ++j)
          if (!divides(A(t, t), A(i, j))) {
            bad = i;
            break;
          }
      if (bad == r) break;
      A.add_row(t, bad, 1);
      U.add_row(t, bad, 1);
    }
    if (empty_block) break;
    if (A(t, t) < 0) {
      A.scale_row(t, -1);
      U.scale_row(t, -1);
    }
  }
  return {std::move(U), std::move(A), std::move(V)};
}

namespace {

struct TrackedRow {
  std::vector<Int> v;
  std::vector<Int> coef;
};

bool all_zero(const std::vector<Int>& v) {
  return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

void axpy_mod(std::vector<Int>& y, const Int& a, const std::vector<Int>& x, const Int& m) {
  for (std::size_t k = 0; k < y.size(); ++k) y[k] = mod_floor(y[k] + a * x[k], m);
}

std::vector<Int> lincomb_mod(const Int& a, const std::vector<Int>& x, const Int& b,
                             const std::vector<Int>& y, const Int& m) {
  std::vector<Int> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = mod_floor(a * x[k] + b * y[k], m);
  return out;
}

// Unit u of Z/m with u*x == gcd(x, m).
Int normalizing_unit(const Int& x, const Int& m) {
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  Int xr = x / g, mr = m / g;
  Int u;
  if (mr == 1) {
    u = 1;
  } else {
    mpz_invert(u.get_mpz_t(), xr.get_mpz_t(), mr.get_mpz_t());
  }
  for (;;) {
    Int h;
    mpz_gcd(h.get_mpz_t(), u.get_mpz_t(), m.get_mpz_t());
    if (h == 1) return mod_floor(u, m);
    u += mr;
  }
}

std::size_t leading_index(const std::vector<Int>& v) {
  for (std::size_t k = 0; k < v.size(); ++k)
    if (v[k] != 0) return k;
  return v.size();
}

}  // namespace

HowellForm howell_with_transform(const Mat& a) {
  require(a.ring().is_residue(), "howell form requires a residue ring");
  const Int& m = a.ring().modulus();
  const std::size_t r = a.rows(), c = a.cols();

  std::vector<TrackedRow> pool;
  pool.reserve(r);
  for (std::size_t i = 0; i < r; ++i) {
    TrackedRow row{a.row(i), std::vector<Int>(r, Int(0))};
    row.coef[i] = 1;
    pool.push_back(std::move(row));
  }

  std::vector<TrackedRow> h;
  for (std::size_t j = 0; j < c; ++j) {
    std::ptrdiff_t piv = -1;
    for (std::size_t k = 0; k < pool.size(); ++k) {
      if (pool[k].v[j] == 0) continue;
      if (piv < 0) {
        piv = static_cast<std::ptrdiff_t>(k);
        continue;
      }
      auto& P = pool[static_cast<std::size_t>(piv)];
      auto& K = pool[k];
      Gcdex e = gcdex(P.v[j], K.v[j]);
      Int u = -(K.v[j] / e.g), w = P.v[j] / e.g;
      TrackedRow np{lincomb_mod(e.s, P.v, e.t, K.v, m), lincomb_mod(e.s, P.coef, e.t, K.coef, m)};
      TrackedRow nk{lincomb_mod(u, P.v, w, K.v, m), lincomb_mod(u, P.coef, w, K.coef, m)};
      P = std::move(np);
      K = std::move(nk);
    }
    if (piv < 0) continue;

    TrackedRow P = std::move(pool[static_cast<std::size_t>(piv)]);
    pool.erase(pool.begin() + piv);
    Int unit = normalizing_unit(P.v[j], m);
    for (auto& x : P.v) x = mod_floor(x * unit, m);
    for (auto& x : P.coef) x = mod_floor(x * unit, m);

    Int ann = m / P.v[j];
    TrackedRow sat{P.v, P.coef};
    for (auto& x : sat.v) x = mod_floor(x * ann, m);
    for (auto& x : sat.coef) x = mod_floor(x * ann, m);
    if (!all_zero(sat.v)) pool.push_back(std::move(sat));

    std::erase_if(pool, [](const TrackedRow& t) { return all_zero(t.v); });
    h.push_back(std::move(P));
  }

  for (std::size_t i = 0; i < h.size(); ++i) {
    std::size_t j = leading_index(h[i].v);
    const Int g = h[i].v[j];
    for (std::size_t k = 0; k < i; ++k) {
      Int q = fdiv(h[k].v[j], g);
      if (q == 0) continue;
      axpy_mod(h[k].v, -q, h[i].v, m);
      axpy_mod(h[k].coef, -q, h[i].coef, m);
    }
  }

  std::vector<Int> he, te;
  he.reserve(h.size() * c);
  te.reserve(h.size() * r);
  for (auto& row : h) {
    he.insert(he.end(), row.v.begin(), row.v.end());
    te.insert(te.end(), row.coef.begin(), row.coef.end());
  }
  return {Mat(a.ring(), h.size(), c, std::move(he)), Mat(a.ring(), h.size(), r, std::move(te))};
}

Mat howell(const Mat& a) { return howell_with_transform(a).H; }

std::optional<std::vector<Int>> howell_reduce(const Mat& h, std::span<const Int> x) {
  require(h.ring().is_residue(), "howell_reduce requires a residue ring");
  require(x.size() == h.cols(), "vector length does not match the basis");
  const Int& m = h.ring().modulus();
  std::vector<Int> rem(x.begin(), x.end());
  for (auto& v : rem) v = mod_floor(v, m);
  std::vector<Int> coords(h.rows(), Int(0));
  for (std::size_t i = 0; i < h.rows(); ++i) {
    std::vector<Int> hrow = h.row(i);
    std::size_t j = leading_index(hrow);
    if (j == hrow.size()) continue;
    for (std::size_t k = 0; k < j; ++k)
      if (rem[k] != 0) return std::nullopt;
    if (!divides(hrow[j], rem[j])) return std::nullopt;
    Int q = rem[j] / hrow[j];
    coords[i] = q;
    if (q != 0) axpy_mod(rem, -q, hrow, m);
  }
  if (!all_zero(rem)) return std::nullopt;
  return coords;
}

std::optional<std::vector<Int>> membership(std::span<const Int> x, const Mat& basis) {
  require(x.size() == basis.cols(), "membership: dimension mismatch");
  const auto& ring = basis.ring();
  std::vector<Int> c;
  if (ring.is_integers()) {
    SmithForm f = snf(basis);
    std::vector<Int> y = row_times(x, f.V);
    std::vector<Int> z(basis.rows(), Int(0));
    for (std::size_t j = 0; j < basis.cols(); ++j) {
      Int d = j < basis.rows() ? f.S(j, j) : Int(0);
      if (d == 0) {
        if (y[j] != 0) return std::nullopt;
        continue;
      }
      if (!divides(d, y[j])) return std::nullopt;
      z[j] = y[j] / d;
    }
    c = row_times(z, f.U);
  } else {
    HowellForm f = howell_with_transform(basis);
    auto q = howell_reduce(f.H, x);
    if (!q) return std::nullopt;
    c = row_times(*q, f.T);
  }
  std::vector<Int> back = row_times(c, basis);
  for (std::size_t k = 0; k < back.size(); ++k)
    ensure(back[k] == ring.canonical(x[k]), "membership: coordinate check failed");
  return c;
}

std::size_t free_rank(const Mat& a) {
  const bool over_z = a.ring().is_integers();
  SmithForm f = snf(over_z ? a : a.lift_canonical());
  std::size_t n = 0;
  for (std::size_t i = 0; i < std::min(a.rows(), a.cols()); ++i) {
    const Int& d = f.S(i, i);
    if (over_z ? d != 0 : gcd(d, a.ring().modulus()) == 1) ++n;
  }
  return n;
}

}  // namespace qmot
