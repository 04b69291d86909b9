#include <doctest.h>

#include "qmot/lifting.hpp"
#include "support.hpp"

using namespace qmot;
using namespace testing;

namespace {
const CoeffRing Z = CoeffRing::integers();
const CoeffRing R2 = CoeffRing::pow2(1);
const CoeffRing R4 = CoeffRing::pow2(2);
const CoeffRing R8 = CoeffRing::pow2(3);

Correspondence surface(const CoeffRing& r, Mat middle, long a = 1, long b = 1) {
  SplitQuadric x(2, {0});
  return corr(x, r, {mat(r, {{a}}), std::move(middle), mat(r, {{b}})});
}

Correspondence on(const SplitQuadric& x, const CoeffRing& r, Mat middle, long a = 1, long b = 1) {
  return corr(x, r, {mat(r, {{a}}), std::move(middle), mat(r, {{b}})});
}

void check_iso(const IsoLift& res, const Correspondence& rho, const Correspondence& sigma,
               const RationalityContext& ctx) {
  REQUIRE(res.isomorphic);
  REQUIRE(res.iso.has_value());
  REQUIRE(res.inverse.has_value());
  const auto& c = *res.iso;
  const auto& ci = *res.inverse;
  CHECK(c.ring().is_integers());
  CHECK(compose(ci, c) == rho);
  CHECK(compose(c, ci) == sigma);
  CHECK(compose(sigma, compose(c, rho)) == c);
  CHECK(is_gal_invariant(c, ctx.galois()));
  CHECK(ctx.is_rational_integral(c));
  CHECK(ctx.is_rational_integral(ci));
}
}  // namespace

TEST_CASE("lifting idempotents mod 2 to mod 2^n") {
  SplitQuadric x2(2, {0});
  GaloisContext gal(1, 2);
  CHECK(lift_mod2_to_mod2n(diagonal(x2, R2), 2, gal) == diagonal(x2, R4));
  CHECK(lift_mod2_to_mod2n(Correspondence::zero(x2, x2, R2), 2, gal).is_zero());

  auto pi = surface(R2, mat(R2, {{1, 1}, {0, 0}}), 0, 0);
  auto lifted = lift_mod2_to_mod2n(pi, 2, gal);
  CHECK(lifted.ring() == R4);
  CHECK(lifted.is_idempotent());
  CHECK(reduce(lifted, R2) == pi);

  auto ctx = witt_context(x2, 2, x2, 2, gal);
  auto in_ctx = lift_mod2_to_mod2n(pi, ctx);
  CHECK(in_ctx.is_idempotent());
  CHECK(reduce(in_ctx, R2) == pi);
  CHECK(ctx.is_rational_mod(in_ctx));

  CHECK_THROWS_AS(lift_mod2_to_mod2n(surface(R2, mat(R2, {{1, 1}, {1, 1}})), 2, gal), Error);
}

TEST_CASE("lift_projector examples") {
  SplitQuadric x3(3, {0});
  GaloisContext gal(1, 2);
  auto full3 = witt_context(x3, 2, x3, 2, gal);
  auto tau3 = corr(x3, R4, {mat(R4, {{1}}), mat(R4, {{0}}), mat(R4, {{1}}), mat(R4, {{0}})});
  auto rho3 = lift_projector(tau3, full3);
  CHECK(rho3 == corr(x3, Z, {mat(Z, {{1}}), mat(Z, {{0}}), mat(Z, {{1}}), mat(Z, {{0}})}));

  SplitQuadric d2(2, {1});
  RationalityContext dctx(d2, d2, gal);
  auto tau_d = on(d2, R4, Mat::identity(R4, 2), 0, 0);
  auto rho_d = lift_projector(tau_d, dctx);
  CHECK(rho_d.block(1) == Mat::identity(Z, 2));
  CHECK(rho_d.block(0).is_zero());

  SplitQuadric t2(2, {0});
  auto tctx = witt_context(t2, 2, t2, 2, gal);
  auto tau = on(t2, R4, mat(R4, {{3, 1}, {2, 2}}), 0, 0);
  auto rho = lift_projector(tau, tctx);
  CHECK(rho.block(1) == mat(Z, {{-1, 1}, {-2, 2}}));
  CHECK(rho.is_idempotent());
  CHECK(reduce(rho, R4) == tau);
  Mat g = mat(Z, {{1, -1}, {2, -1}});
  CHECK(g.det() == 1);
  CHECK(g * mat(Z, {{1, 0}, {0, 0}}) * inverse(g) == mat(Z, {{-1, 1}, {-2, 2}}));
  CHECK(tctx.add_generators({tau}).is_rational_integral(rho));

  CHECK_THROWS_AS(lift_projector(on(t2, R4, mat(R4, {{1, 1}, {1, 1}})), tctx), Error);
}

TEST_CASE("lift_isomorphism identity case") {
  SplitQuadric x2(2, {0});
  GaloisContext gal(1, 2);
  RationalityContext ctx(x2, x2, gal);
  auto d = diagonal(x2, Z);
  auto res = lift_isomorphism(d, d, diagonal(x2, R4), ctx);
  check_iso(res, d, d, ctx);
  CHECK(*res.iso == d);
}

TEST_CASE("lift_isomorphism with nontrivial discriminant") {
  SplitQuadric x2(2, {1, 0});
  GaloisContext gal(2, 2);
  RationalityContext ctx(x2, x2, gal);
  auto d = diagonal(x2, Z);
  Mat b = mat(R4, {{0, 1}, {1, 0}});
  // Hand trace mod 4: scale by (a - b)^{-1} = 3, then remove 3 (h x h).
  Plain scaled = mod(mul({{3}}, {{1}}), 4);
  CHECK(scaled == Plain{{3}});
  Plain step = mod(mul({{3, 0}, {0, 3}}, plain(b)), 4);
  CHECK(step == Plain{{0, 3}, {3, 0}});
  Plain fixed{{step[0][0] - 3, step[0][1] - 3}, {step[1][0] - 3, step[1][1] - 3}};
  CHECK(fixed == Plain{{-3, 0}, {0, -3}});
  CHECK(mod(fixed, 4) == Plain{{1, 0}, {0, 1}});

  auto alpha = on(x2, R4, b);
  auto res = lift_isomorphism(d, d, alpha, ctx);
  check_iso(res, d, d, ctx);
  CHECK(res.iso->block(1) == Mat::identity(Z, 2));
  CHECK(*res.iso == d);
}

TEST_CASE("lift_isomorphism with trivial discriminant") {
  SplitQuadric x2(2, {0, 0});
  GaloisContext gal(2, 3);
  RationalityContext ctx(x2, x2, gal);
  auto d = diagonal(x2, Z);
  Mat b = mat(R8, {{1, 2}, {2, 1}});
  // Hand trace mod 8: det B = -3 = 5, 5^{-1} = 5 = 2*2 + 1, so k = 2.
  CHECK(((det(plain(b)) % 8) + 8) % 8 == 5);
  CHECK((5 * 5) % 8 == 1);
  Plain corrected = mod(mul(plain(b), Plain{{3, 2}, {2, 3}}), 8);
  CHECK(corrected == Plain{{7, 0}, {0, 7}});
  CHECK(((det(corrected) % 8) + 8) % 8 == 1);

  auto alpha = on(x2, R8, b);
  auto res = lift_isomorphism(d, d, alpha, ctx);
  check_iso(res, d, d, ctx);
  CHECK(res.iso->block(1) == mat(Z, {{-1, 0}, {0, -1}}));
  CHECK(res.iso->block(1).det() == 1);
  CHECK(reduce(*res.iso, R8).block(1) == mat(R8, {{7, 0}, {0, 7}}));
}

TEST_CASE("lift_isomorphism reports non-isomorphic motives") {
  GaloisContext gal(1, 2);
  SplitQuadric x2(2, {1}), t2(2, {0});
  RationalityContext ctx(x2, t2, gal);
  auto a = diagonal(x2, Z), b = diagonal(t2, Z);
  auto res = lift_isomorphism(a, b, Correspondence::zero(x2, t2, R4), ctx);
  CHECK_FALSE(res.isomorphic);
  CHECK_FALSE(res.reason.empty());
  CHECK_FALSE(res.iso.has_value());

  SplitQuadric x4(4, {1});
  RationalityContext ctx24(x2, x4, gal);
  auto r2 = diagonal(x2, Z), r4 = diagonal(x4, Z);
  CHECK_FALSE(lift_isomorphism(r2, r4, Correspondence::zero(x2, x4, R4), ctx24).isomorphic);

  SplitQuadric x3(3, {0});
  RationalityContext ctx23(x2, x3, gal);
  auto proj3 = corr(x3, Z, {mat(Z, {{1}}), mat(Z, {{0}}), mat(Z, {{0}}), mat(Z, {{1}})});
  auto alpha = Correspondence::zero(x2, x3, R4)
                   .with_block(0, mat(R4, {{1}}))
                   .with_block(2, mat(R4, {{1}}));
  // Same graded ranks but one side carries the full middle.
  CHECK_FALSE(lift_isomorphism(r2, proj3, alpha, ctx23).isomorphic);
}

TEST_CASE("lift_isomorphism across different quadrics") {
  GaloisContext gal(1, 2);
  SplitQuadric x2(2, {1}), x4(4, {1});
  RationalityContext ctx(x2, x4, gal);
  // The point-and-top summands of the surface and of the fourfold twisted by 1.
  auto rho = on(x2, Z, Mat::zero(Z, 2, 2));
  auto sigma = corr(x4, Z, {mat(Z, {{0}}), mat(Z, {{1}}), Mat::zero(Z, 2, 2), mat(Z, {{1}}), mat(Z, {{0}})});
  auto alpha = Correspondence::zero(x2, x4, R4).with_block(0, mat(R4, {{0}}));
  auto res = lift_isomorphism(rho, sigma, alpha, ctx);
  CHECK_FALSE(res.isomorphic);
}

TEST_CASE("scaling by units does not change the verdict") {
  SplitQuadric x2(2, {1});
  GaloisContext gal(1, 3);
  RationalityContext ctx(x2, x2, gal);
  auto d = diagonal(x2, Z);
  auto alpha = on(x2, R8, mat(R8, {{3, 2}, {2, 3}}), 5, 7);
  for (long u : {1, 3, 5, 7}) {
    auto res = lift_isomorphism(d, d, alpha.scaled(u), ctx);
    check_iso(res, d, d, ctx);
  }
}

TEST_CASE("classify") {
  GaloisContext gal(1, 1);
  auto t = classify(Motive(diagonal(SplitQuadric(2, {0}), Z), gal));
  CHECK(t.twists == std::vector<int>{0, 1, 1, 2});
  CHECK_FALSE(t.middle_marker.has_value());

  auto n = classify(Motive(diagonal(SplitQuadric(2, {1}), Z), gal));
  CHECK(n.twists == std::vector<int>{0, 2});
  REQUIRE(n.middle_marker.has_value());
  CHECK(n.middle_marker->first == 1);
  CHECK(n.middle_marker->second == std::vector<std::uint8_t>{1});

  auto c = classify(Motive(diagonal(SplitQuadric(1, {0}), Z), gal));
  CHECK(c.twists == std::vector<int>{0, 1});
  CHECK_FALSE(c.middle_marker.has_value());

  CHECK(t != n);
  CHECK(classify(Motive(diagonal(SplitQuadric(2, {0}), R2), gal)) == t);
}

TEST_CASE("image bases") {
  Mat rho = mat(Z, {{-1, 1}, {-2, 2}});
  auto ib = image_basis(rho);
  CHECK(ib.E * ib.Phi == rho);
  CHECK((ib.Phi * ib.E).is_identity());
  auto full = image_basis(Mat::identity(Z, 2));
  CHECK(full.E.cols() == 2);
  auto none = image_basis(Mat::zero(Z, 2, 2));
  CHECK(none.E.cols() == 0);
}
