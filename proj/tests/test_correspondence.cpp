#include <doctest.h>

#include "support.hpp"

using namespace qmot;
using namespace testing;

namespace {
const CoeffRing Z = CoeffRing::integers();
const CoeffRing R2 = CoeffRing::pow2(1);
const CoeffRing R4 = CoeffRing::pow2(2);

// x |-> <x, u> v evaluated cell by cell.
Mat action_matrix(const Cycle& u, const Cycle& v, int i) {
  const auto& x = u.quadric();
  auto src = basis_cells(x, i), dst = basis_cells(v.quadric(), i);
  Mat m(u.ring(), dst.size(), src.size());
  for (std::size_t c = 0; c < src.size(); ++c) {
    Cycle b = Cycle::cell(x, u.ring(), src[c]);
    int dim_u = -1;
    for (int k = 0; k <= x.dim(); ++k)
      if (!u.is_zero() && u.concentrated_in(k)) dim_u = k;
    Int p = (dim_u == x.dim() - i) ? pairing(b, u) : Int(0);
    auto comp = v.component(i);
    for (std::size_t r = 0; r < dst.size(); ++r) m.set(r, c, p * comp[r]);
  }
  return m;
}
}  // namespace

TEST_CASE("external products") {
  SplitQuadric x2(2, {});
  auto hh = external_product(h(x2, Z, 1), h(x2, Z, 1));
  CHECK(hh.block(1) == mat(Z, {{1, 1}, {1, 1}}));
  CHECK(hh.block(0).is_zero());
  CHECK(hh.block(2).is_zero());

  SplitQuadric x3(3, {});
  auto pt = external_product(h(x3, Z, 0), L(x3, Z, 0));
  CHECK(pt.block(0) == mat(Z, {{1}}));
  for (int i = 1; i <= 3; ++i) CHECK(pt.block(i).is_zero());

  // L x L on the quadric surface sends L' to L and kills L.
  auto ll = external_product(L(x2, Z, 1), L(x2, Z, 1));
  CHECK(ll.block(1) == mat(Z, {{0, 1}, {0, 0}}));

  for (int D = 1; D <= 4; ++D) {
    SplitQuadric x(D, {});
    for (const auto& a : all_cells(x))
      for (const auto& b : all_cells(x)) {
        int da = cell_dimension(x, a), db = cell_dimension(x, b);
        if (da + db != D) continue;
        Cycle u = Cycle::cell(x, Z, a), v = Cycle::cell(x, Z, b);
        auto e = external_product(u, v);
        CHECK(e.block(db) == action_matrix(u, v, db));
      }
  }
  CHECK_THROWS_AS(external_product(L(x2, Z, 0), L(x2, Z, 0)), Error);
}

TEST_CASE("composition") {
  SplitQuadric x2(2, {});
  std::mt19937_64 rng(1);
  auto a = random_corr(rng, x2, x2, Z);
  auto d = diagonal(x2, Z);
  CHECK(compose(d, a) == a);
  CHECK(compose(a, d) == a);
  CHECK(compose(Correspondence::zero(x2, x2, Z), a).is_zero());

  auto hh = external_product(h(x2, Z, 1), h(x2, Z, 1));
  CHECK(compose(hh, hh).block(1) == mat(Z, {{2, 2}, {2, 2}}));
  CHECK(compose(hh, hh) == hh.scaled(2));

  // (g x k) o (e x f) = <f, g> (e x k)
  SplitQuadric x4(4, {});
  for (const auto& e : all_cells(x4))
    for (const auto& f : all_cells(x4))
      for (const auto& g : all_cells(x4))
        for (const auto& k : all_cells(x4)) {
          int de = cell_dimension(x4, e), df = cell_dimension(x4, f);
          int dg = cell_dimension(x4, g), dk = cell_dimension(x4, k);
          if (de + df != 4 || dg + dk != 4 || df + dg != 4) continue;
          Cycle E = Cycle::cell(x4, Z, e), F = Cycle::cell(x4, Z, f);
          Cycle G = Cycle::cell(x4, Z, g), K = Cycle::cell(x4, Z, k);
          CHECK(compose(external_product(G, K), external_product(E, F)) ==
                external_product(E, K).scaled(pairing(F, G)));
        }

  SplitQuadric x3(3, {});
  auto ax = random_corr(rng, x2, x3, Z), by = random_corr(rng, x3, x4, Z);
  CHECK(compose(by, ax).source() == x2);
  CHECK(compose(by, ax).target() == x4);
  CHECK_THROWS_AS(compose(ax, ax), Error);
  CHECK_THROWS_AS(compose(reduce(a, R2), a), Error);
}

TEST_CASE("associativity and identity on random triples") {
  std::mt19937_64 rng(99);
  const CoeffRing rings[] = {Z, R4, R2};
  for (int t = 0; t < 400; ++t) {
    const CoeffRing& r = rings[t % 3];
    SplitQuadric w(1 + static_cast<int>(rng() % 4), {}), x(1 + static_cast<int>(rng() % 4), {});
    SplitQuadric y(1 + static_cast<int>(rng() % 4), {}), z(1 + static_cast<int>(rng() % 4), {});
    auto a = random_corr(rng, w, x, r), b = random_corr(rng, x, y, r), c = random_corr(rng, y, z, r);
    CHECK(compose(c, compose(b, a)) == compose(compose(c, b), a));
    CHECK(compose(diagonal(x, r), a) == a);
    CHECK(compose(a, diagonal(w, r)) == a);
  }
}

TEST_CASE("diagonal") {
  SplitQuadric x1(1, {});
  auto d1 = diagonal(x1, Z);
  CHECK(d1.block(0) == mat(Z, {{1}}));
  CHECK(d1.block(1) == mat(Z, {{1}}));

  SplitQuadric x2(2, {});
  auto d2 = diagonal(x2, Z);
  CHECK(d2.block(1).is_identity());
  CHECK(compose(d2, d2) == d2);
  auto middle = external_product(L(x2, Z, 1), Lp(x2, Z, 1)) + external_product(Lp(x2, Z, 1), L(x2, Z, 1));
  CHECK(middle.block(1).is_identity());
  CHECK(middle.block(0).is_zero());

  for (int D = 1; D <= 5; ++D) {
    SplitQuadric x(D, {});
    auto form = to_cycle_form(diagonal(x, Z));
    auto sum = Correspondence::zero(x, x, Z);
    for (const auto& term : form)
      sum = sum + external_product(Cycle::cell(x, Z, term.source_cell), Cycle::cell(x, Z, term.target_cell))
                      .scaled(term.coeff);
    CHECK(sum == diagonal(x, Z));
  }
}

TEST_CASE("cycle form round-trip") {
  std::mt19937_64 rng(2);
  for (int t = 0; t < 50; ++t) {
    SplitQuadric x(1 + static_cast<int>(rng() % 4), {}), y(1 + static_cast<int>(rng() % 4), {});
    auto a = random_corr(rng, x, y, Z);
    CHECK(from_cycle_form(x, y, Z, to_cycle_form(a)) == a);
  }
}

TEST_CASE("transpose") {
  SplitQuadric x2(2, {}), x4(4, {});
  CHECK(transpose(diagonal(x2, Z)) == diagonal(x2, Z));
  for (const auto& e : all_cells(x4))
    for (const auto& f : all_cells(x4)) {
      if (cell_dimension(x4, e) + cell_dimension(x4, f) != 4) continue;
      Cycle E = Cycle::cell(x4, Z, e), F = Cycle::cell(x4, Z, f);
      CHECK(transpose(external_product(E, F)) == external_product(F, E));
    }
  std::mt19937_64 rng(8);
  for (int t = 0; t < 100; ++t) {
    SplitQuadric x(1 + static_cast<int>(rng() % 4), {});
    auto a = random_corr(rng, x, x, Z), b = random_corr(rng, x, x, Z);
    CHECK(transpose(transpose(a)) == a);
    CHECK(transpose(compose(b, a)) == compose(transpose(a), transpose(b)));
  }
  CHECK_THROWS_AS(transpose(Correspondence::zero(x2, x4, Z)), Error);
}

TEST_CASE("Galois action on correspondences") {
  SplitQuadric x2(2, {1, 0});
  GaloisContext gal(2, 2);
  std::mt19937_64 rng(4);
  auto a = random_corr(rng, x2, x2, Z).with_block(1, Mat::zero(Z, 2, 2));
  for (const auto& g : gal.elements()) CHECK(gal_act(g, a) == a);

  auto b = corr(x2, Z, {mat(Z, {{1}}), mat(Z, {{5, -2}, {-2, 5}}), mat(Z, {{3}})});
  CHECK(is_gal_invariant(b, gal));

  auto ll = external_product(L(x2, Z, 1), L(x2, Z, 1));
  auto swapped = gal_act(GroupElement{1, 0}, ll);
  CHECK(swapped == external_product(Lp(x2, Z, 1), Lp(x2, Z, 1)));
  CHECK(swapped != ll);
  CHECK_FALSE(is_gal_invariant(ll, gal));

  SplitQuadric x4(4, {1, 1});
  for (int t = 0; t < 50; ++t) {
    auto p = random_corr(rng, x2, x4, Z), q = random_corr(rng, x4, x2, Z);
    for (const auto& g : gal.elements()) {
      CHECK(gal_act(g, compose(q, p)) == compose(gal_act(g, q), gal_act(g, p)));
      CHECK(gal_act(g, gal_act(g, p)) == p);
    }
  }
}

TEST_CASE("reduction") {
  SplitQuadric x2(2, {});
  CHECK(reduce(diagonal(x2, Z), R2) == diagonal(x2, R2));
  CHECK(reduce(diagonal(x2, Z).scaled(2), R2).is_zero());
  auto t = corr(x2, R4, {mat(R4, {{0}}), mat(R4, {{3, 1}, {2, 2}}), mat(R4, {{0}})});
  CHECK(reduce(t, R2).block(1) == mat(R2, {{1, 1}, {0, 0}}));
  CHECK_THROWS_AS(reduce(reduce(t, R2), R4), Error);

  std::mt19937_64 rng(6);
  for (int k = 0; k < 50; ++k) {
    SplitQuadric x(1 + static_cast<int>(rng() % 4), {});
    auto a = random_corr(rng, x, x, Z), b = random_corr(rng, x, x, Z);
    CHECK(reduce(compose(b, a), R4) == compose(reduce(b, R4), reduce(a, R4)));
    CHECK(reduce(reduce(compose(b, a), R4), R2) == compose(reduce(b, R2), reduce(a, R2)));
  }
}

TEST_CASE("image ranks and middle rank") {
  SplitQuadric x2(2, {}), x3(3, {});
  using P = std::vector<std::pair<int, int>>;
  CHECK(image_ranks(diagonal(x2, Z)) == P{{0, 1}, {1, 2}, {2, 1}});
  CHECK(image_ranks(Correspondence::zero(x2, x2, Z)) == P{{0, 0}, {1, 0}, {2, 0}});
  auto e11 = corr(x2, Z, {mat(Z, {{0}}), mat(Z, {{1, 0}, {0, 0}}), mat(Z, {{0}})});
  CHECK(image_ranks(e11) == P{{0, 0}, {1, 1}, {2, 0}});
  CHECK(middle_rank(e11) == 1);
  CHECK(middle_rank(diagonal(x2, Z)) == 2);
  CHECK(middle_rank(diagonal(x3, Z)) == 0);
  auto t = corr(x2, R4, {mat(R4, {{1}}), mat(R4, {{3, 1}, {2, 2}}), mat(R4, {{0}})});
  CHECK(image_ranks(t) == P{{0, 1}, {1, 1}, {2, 0}});
  CHECK_THROWS_AS(image_ranks(diagonal(x2, Z).scaled(2)), Error);
}

TEST_CASE("dual cells") {
  SplitQuadric x2(2, {}), x4(4, {}), x3(3, {});
  CHECK(dual_cell(x2, {Cell::Kind::L, 1}) == Cell{Cell::Kind::LPrime, 1});
  CHECK(dual_cell(x4, {Cell::Kind::L, 2}) == Cell{Cell::Kind::L, 2});
  CHECK(dual_cell(x3, {Cell::Kind::L, 0}) == Cell{Cell::Kind::H, 0});
  CHECK(dual_cell(x3, {Cell::Kind::H, 1}) == Cell{Cell::Kind::L, 1});
  for (int D = 1; D <= 6; ++D) {
    SplitQuadric x(D, {});
    for (const auto& c : all_cells(x)) {
      CHECK(pairing(Cycle::cell(x, Z, c), Cycle::cell(x, Z, dual_cell(x, c))) == 1);
      CHECK(dual_cell(x, dual_cell(x, c)) == c);
    }
  }
}

TEST_CASE("motive construction validates the projector") {
  SplitQuadric x2(2, {1});
  GaloisContext gal(1, 1);
  CHECK_NOTHROW(Motive(diagonal(x2, Z), gal));
  CHECK_THROWS_AS(Motive(diagonal(x2, Z).scaled(2), gal), Error);
  auto e11 = corr(x2, Z, {mat(Z, {{0}}), mat(Z, {{1, 0}, {0, 0}}), mat(Z, {{0}})});
  CHECK_THROWS_AS(Motive(e11, gal), Error);
}
