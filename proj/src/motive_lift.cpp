#include "qmot/motive_lift.hpp"

#include <algorithm>

#include "qmot/error.hpp"
#include "qmot/lifting.hpp"
#include "qmot/normal_form.hpp"

namespace qmot {

namespace {

Correspondence newton_blocks(const Correspondence& p) {
  std::vector<Mat> blocks;
  for (const auto& b : p.blocks()) blocks.push_back(lift_idempotent_newton(b));
  return Correspondence(p.source(), p.target(), p.ring(), std::move(blocks));
}

void check_mod2_input(const Correspondence& pi, const GaloisContext& galois) {
  require(pi.ring() == CoeffRing::pow2(1), "expected a correspondence mod 2");
  require(pi.is_endomorphism(), "expected an endomorphism");
  require(pi.is_idempotent(), "correspondence is not idempotent mod 2");
  require(is_gal_invariant(pi, galois), "correspondence is not Gal-invariant");
}

int rank_at(const std::vector<std::pair<int, int>>& ranks, int i) {
  for (const auto& [dim, r] : ranks)
    if (dim == i) return r;
  return 0;
}

bool is_middle(const SplitQuadric& x, int i) { return x.has_middle() && i == x.half(); }

Mat reduce_mat(const Mat& m, const CoeffRing& ring) { return m.reduce(ring); }

// Matrix of alpha_i in the reduced integral image bases.
std::vector<Mat> summand_matrices(const Correspondence& alpha, const std::vector<ImageBasis>& bx,
                                  const std::vector<ImageBasis>& by) {
  std::vector<Mat> out;
  const auto& ring = alpha.ring();
  for (int i = 0; i < alpha.block_count(); ++i) {
    const auto& ex = bx[static_cast<std::size_t>(i)];
    const auto& ey = by[static_cast<std::size_t>(i)];
    out.push_back(reduce_mat(ey.Phi, ring) * alpha.block(i) * reduce_mat(ex.E, ring));
  }
  return out;
}

// Blocks c_i = E^Y_i * M_i * Phi^X_i over Z.
Correspondence from_summands(const SplitQuadric& x, const SplitQuadric& y, const std::vector<ImageBasis>& bx,
                             const std::vector<ImageBasis>& by, const std::vector<Mat>& middle_override) {
  std::vector<Mat> blocks;
  const int top = std::min(x.dim(), y.dim());
  for (int i = 0; i <= top; ++i) {
    const auto& ex = bx[static_cast<std::size_t>(i)];
    const auto& ey = by[static_cast<std::size_t>(i)];
    const Mat& m = middle_override[static_cast<std::size_t>(i)];
    blocks.push_back(ey.E * m * ex.Phi);
  }
  return Correspondence(x, y, CoeffRing::integers(), std::move(blocks));
}

}  // namespace

Correspondence lift_mod2_to_mod2n(const Correspondence& pi, int n, const GaloisContext& galois) {
  check_mod2_input(pi, galois);
  require(n >= 1, "n must be at least 1");
  auto start = reduce(lift_canonical(pi), CoeffRing::pow2(n));
  auto out = newton_blocks(start);
  ensure(is_gal_invariant(out, galois), "Newton lift is not Gal-invariant");
  ensure(reduce(out, CoeffRing::pow2(1)) == pi, "Newton lift does not reduce to its input");
  return out;
}

Correspondence lift_mod2_to_mod2n(const Correspondence& pi, const RationalityContext& ctx) {
  check_mod2_input(pi, ctx.galois());
  auto start = ctx.rational_preimage(pi);
  require(start.has_value(), "idempotent is not rational mod 2 in the context");
  auto out = newton_blocks(*start);
  ensure(is_gal_invariant(out, ctx.galois()), "Newton lift is not Gal-invariant");
  ensure(reduce(out, CoeffRing::pow2(1)) == pi, "Newton lift does not reduce to its input");
  ensure(ctx.is_rational_mod(out), "Newton lift left the rational span");
  return out;
}

Correspondence lift_projector(const Correspondence& tau, const RationalityContext& ctx) {
  require(tau.ring() == ctx.ring(), "projector must have coefficients in " + ctx.ring().to_string());
  require(tau.is_endomorphism(), "projector must be an endomorphism");
  require(tau.is_idempotent(), "projector is not idempotent");
  require(is_gal_invariant(tau, ctx.galois()), "projector is not Gal-invariant");
  const auto& X = tau.source();
  const auto& ring = tau.ring();

  std::vector<Mat> blocks;
  for (int i = 0; i < tau.block_count(); ++i) {
    const Mat& b = tau.block(i);
    if (!is_middle(X, i)) {
      ensure(b(0, 0) == 0 || b(0, 0) == 1, "1x1 idempotent over Z/2^n is not 0 or 1");
      blocks.push_back(b.lift_canonical());
      continue;
    }
    std::size_t r = free_rank(b);
    if (r == 0 || r == 2) {
      ensure(b.is_zero() || b == Mat::identity(ring, 2), "middle idempotent of rank 0/2 is not 0 or 1");
      blocks.push_back(b.lift_canonical());
      continue;
    }
    if (!X.disc_trivial())
      internal_error("rank-1 Gal-invariant middle idempotent on a quadric with nontrivial discriminant");
    Mat g = lift_sl(rank1_decomposition_to_sl2(b));
    Mat e11 = Mat::from_rows(CoeffRing::integers(), {{1, 0}, {0, 0}});
    blocks.push_back(g * e11 * inverse(g));
  }
  Correspondence rho(X, X, CoeffRing::integers(), std::move(blocks));

  ensure(rho.is_idempotent(), "lifted projector is not idempotent over Z");
  ensure(is_gal_invariant(rho, ctx.galois()), "lifted projector is not Gal-invariant");
  ensure(reduce(rho, ring) == tau, "lifted projector does not reduce to its input");
  ensure(ctx.add_generators({tau}).is_rational_integral(rho), "lifted projector is not rational");
  return rho;
}

ImageBasis image_basis(const Mat& rho) {
  const auto Z = CoeffRing::integers();
  require(rho.ring().is_integers() && rho.is_square(), "image_basis expects a square integral block");
  const std::size_t n = rho.rows();
  std::size_t r = free_rank(rho);
  if (r == 0) return {Mat(Z, n, 0), Mat(Z, 0, n)};
  if (r == n) {
    ensure(rho.is_identity(), "full-rank idempotent is not the identity");
    return {Mat::identity(Z, n), Mat::identity(Z, n)};
  }
  require(r == 1, "image_basis handles blocks of size at most 2");
  std::vector<Int> v;
  for (std::size_t j = 0; j < n && v.empty(); ++j) {
    auto c = rho.col(j);
    if (std::any_of(c.begin(), c.end(), [](const Int& x) { return x != 0; })) v = c;
  }
  Int g = 0;
  for (const auto& x : v) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  for (auto& x : v) x /= g;
  auto lead = std::find_if(v.begin(), v.end(), [](const Int& x) { return x != 0; });
  if (*lead < 0)
    for (auto& x : v) x = -x;
  std::size_t k = static_cast<std::size_t>(lead - v.begin());
  Mat E(Z, n, 1, v);
  Mat Phi(Z, 1, n);
  for (std::size_t j = 0; j < n; ++j) {
    ensure(rho(k, j) % v[k] == 0, "image of a rank-1 idempotent is not spanned by its primitive generator");
    Phi.set(0, j, rho(k, j) / v[k]);
  }
  ensure(E * Phi == rho, "image basis does not factor the idempotent");
  ensure((Phi * E).is_identity(), "image basis is not dual to its coordinate rows");
  return {E, Phi};
}

IsoLift lift_isomorphism(const Correspondence& rho, const Correspondence& sigma, const Correspondence& alpha0,
                         const RationalityContext& ctx) {
  const auto& X = rho.source();
  const auto& Y = sigma.source();
  const auto& galois = ctx.galois();
  const CoeffRing ring = ctx.ring();
  require(rho.ring().is_integers() && sigma.ring().is_integers(), "rho and sigma must be integral");
  require(rho.is_endomorphism() && sigma.is_endomorphism(), "rho and sigma must be endomorphisms");
  require(rho.is_idempotent() && sigma.is_idempotent(), "rho and sigma must be idempotent");
  require(is_gal_invariant(rho, galois) && is_gal_invariant(sigma, galois), "rho and sigma must be Gal-invariant");
  require(alpha0.source() == X && alpha0.target() == Y, "alpha must map X to Y");
  require(alpha0.ring() == ring, "alpha must have coefficients in " + ring.to_string());
  require(ctx.has_object(X) && ctx.has_object(Y), "context does not contain both quadrics");

  IsoLift out;
  const int r = middle_rank(rho), rp = middle_rank(sigma);
  if ((r == 2) != (rp == 2)) {
    out.reason = "middle rank 2 on one side only";
    return out;
  }
  if (r == 2 && (X.dim() != Y.dim() || X.disc() != Y.disc())) {
    out.reason = "middle markers differ";
    return out;
  }
  auto rx = image_ranks(rho), ry = image_ranks(sigma);
  for (int i = 0; i <= std::max(X.dim(), Y.dim()); ++i)
    if (rank_at(rx, i) != rank_at(ry, i)) {
      out.reason = "graded ranks differ in dimension " + std::to_string(i);
      return out;
    }

  const auto rho_t = reduce(rho, ring), sigma_t = reduce(sigma, ring);
  const auto ctx2 = ctx.add_generators({rho_t, sigma_t});
  Correspondence alpha = compose(sigma_t, compose(alpha0, rho_t));
  require(is_gal_invariant(alpha, galois), "alpha is not Gal-invariant");
  require(ctx2.is_rational_mod(alpha), "alpha is not rational in the context");

  std::vector<ImageBasis> bx, by;
  for (int i = 0; i <= X.dim(); ++i) bx.push_back(image_basis(rho.block(i)));
  for (int i = 0; i <= Y.dim(); ++i) by.push_back(image_basis(sigma.block(i)));

  auto A = summand_matrices(alpha, bx, by);
  for (const auto& a : A)
    if (!a.empty()) require(ring.is_unit(a.det()), "alpha is not invertible on the summands");

  const int d = X.half();
  const bool r2 = (r == 2);
  if (r == 1 && X.has_middle()) {
    auto u = unit_decompose(A[static_cast<std::size_t>(d)](0, 0), ring);
    alpha = alpha.scaled(u.inverse);
  }
  if (r2 && !X.disc_trivial()) {
    const Mat& B = A[static_cast<std::size_t>(d)];
    ensure(B(0, 0) == B(1, 1) && B(0, 1) == B(1, 0), "invariant middle block is not of the form [[a,b],[b,a]]");
    Int diff = ring.canonical(B(0, 0) - B(0, 1));
    require(ring.is_unit(diff), "alpha is not invertible on the middle summand");
    alpha = alpha.scaled(ring.inverse(diff));
  }
  A = summand_matrices(alpha, bx, by);

  // gamma = Delta + 2 sum k_i (dual(e_i) x e_i) over full non-middle components.
  Correspondence gamma = diagonal(X, ring);
  for (int i = 0; i < static_cast<int>(A.size()); ++i) {
    if (is_middle(X, i) || A[static_cast<std::size_t>(i)].empty()) continue;
    auto k = unit_decompose(A[static_cast<std::size_t>(i)](0, 0), ring).k;
    Cell e = basis_cells(X, i).front();
    auto term = external_product(Cycle::cell(X, ring, dual_cell(X, e)), Cycle::cell(X, ring, e)).scaled(2);
    ensure(ctx.is_rational_mod(term), "gamma correction term is not rational");
    gamma = gamma + term.scaled(k);
  }
  alpha = compose(alpha, gamma);

  std::vector<Mat> core;
  for (int i = 0; i <= std::min(X.dim(), Y.dim()); ++i)
    core.push_back(Mat::identity(CoeffRing::integers(), bx[static_cast<std::size_t>(i)].E.cols()));
  std::optional<Mat> middle_inverse;

  if (r2) {
    ensure(ctx.is_rational_mod(external_product(Cycle::h_power(X, ring, d), Cycle::h_power(Y, ring, d))),
           "h^d x h^d is not rational");
    if (!X.disc_trivial()) {
      Int b = summand_matrices(alpha, bx, by)[static_cast<std::size_t>(d)](0, 1);
      alpha = alpha - external_product(Cycle::h_power(X, ring, d), Cycle::h_power(Y, ring, d)).scaled(b);
    } else {
      Int det = summand_matrices(alpha, bx, by)[static_cast<std::size_t>(d)].det();
      auto k = unit_decompose(det, ring).k;
      auto hh = external_product(Cycle::h_power(X, ring, d), Cycle::h_power(X, ring, d));
      alpha = compose(alpha, rho_t + hh.scaled(k));
      Mat M = summand_matrices(alpha, bx, by)[static_cast<std::size_t>(d)];
      ensure(M.det() == 1, "middle block after the determinant correction does not have determinant 1");
      Mat G = lift_sl(M);
      core[static_cast<std::size_t>(d)] = G;
      middle_inverse = inverse(G);
    }
  }

  A = summand_matrices(alpha, bx, by);
  for (int i = 0; i < static_cast<int>(A.size()); ++i)
    ensure(A[static_cast<std::size_t>(i)] == reduce_mat(core[static_cast<std::size_t>(i)], ring),
           "normalized alpha does not match the integral summand matrix in dimension " + std::to_string(i));

  auto c = from_summands(X, Y, bx, by, core);
  auto inv_core = core;
  if (middle_inverse) inv_core[static_cast<std::size_t>(d)] = *middle_inverse;
  auto cinv = from_summands(Y, X, by, bx, inv_core);

  ensure(reduce(c, ring) == compose(sigma_t, compose(alpha, rho_t)), "integral iso does not reduce to the normalized alpha");
  ensure(compose(sigma, compose(c, rho)) == c, "integral iso is not supported on the summands");
  ensure(compose(cinv, c) == rho, "inverse composite is not rho");
  ensure(compose(c, cinv) == sigma, "composite with the inverse is not sigma");
  ensure(is_gal_invariant(c, galois) && is_gal_invariant(cinv, galois), "integral iso is not Gal-invariant");
  ensure(ctx2.is_rational_integral(c), "integral iso is not rational");
  require(ctx2.is_rational_integral(cinv), "alpha has no rational inverse: the inverse on the summands is not rational");

  out.isomorphic = true;
  out.iso = std::move(c);
  out.inverse = std::move(cinv);
  return out;
}

std::string IsoClass::to_string() const {
  std::string s = "{";
  for (std::size_t k = 0; k < twists.size(); ++k) s += (k ? "," : "") + std::to_string(twists[k]);
  s += "}";
  if (middle_marker) {
    s += " marker(" + std::to_string(middle_marker->first) + ",disc=";
    for (auto b : middle_marker->second) s += b ? '1' : '0';
    s += ")";
  }
  return s;
}

IsoClass classify(const Motive& m) {
  const auto& X = m.quadric();
  IsoClass c;
  for (const auto& [i, r] : image_ranks(m.projector())) {
    if (is_middle(X, i) && r == 2 && !X.disc_trivial()) {
      c.middle_marker = std::make_pair(X.half(), X.disc());
      continue;
    }
    for (int k = 0; k < r; ++k) c.twists.push_back(i);
  }
  return c;
}

}  // namespace qmot
