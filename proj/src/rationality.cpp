#include "qmot/rationality.hpp"

#include <algorithm>

#include "qmot/error.hpp"
#include "qmot/normal_form.hpp"

namespace qmot {

namespace {

bool is_l_class(const SplitQuadric& x, const Cell& c) {
  return c.kind == Cell::Kind::L && !(x.has_middle() && c.index == x.half());
}

Mat stack_rows(const CoeffRing& ring, std::size_t cols, const Mat& top, const std::vector<std::vector<Int>>& extra) {
  std::vector<Int> e = top.entries();
  for (const auto& v : extra) e.insert(e.end(), v.begin(), v.end());
  return Mat(ring, top.rows() + extra.size(), cols, std::move(e));
}

int cycle_dimension(const Cycle& c) {
  for (int i = 0; i <= c.quadric().dim(); ++i) {
    auto comp = c.component(i);
    if (std::any_of(comp.begin(), comp.end(), [](const Int& v) { return v != 0; })) return i;
  }
  return -1;
}

}  // namespace

std::vector<Correspondence> standard_generators(const SplitQuadric& s, const SplitQuadric& t,
                                                const CoeffRing& ring) {
  std::vector<Correspondence> out;
  for (int a = 0; a <= s.dim(); ++a) {
    int b = t.dim() - a;
    if (b < 0 || b > t.dim()) continue;
    out.push_back(external_product(Cycle::h_power(s, ring, a), Cycle::h_power(t, ring, b)));
  }
  for (const auto& e : all_cells(s)) {
    int q = s.dim() - cell_dimension(s, e);
    if (q > t.dim()) continue;
    for (const auto& f : basis_cells(t, q)) {
      bool mixed = (is_l_class(s, e) && f.kind == Cell::Kind::H) || (e.kind == Cell::Kind::H && is_l_class(t, f));
      if (!mixed) continue;
      out.push_back(external_product(Cycle::cell(s, ring, e), Cycle::cell(t, ring, f)).scaled(2));
    }
  }
  if (s == t) out.push_back(diagonal(s, ring));
  return out;
}

int max_witt_index(const SplitQuadric& x) {
  return (!x.has_middle() || x.disc_trivial()) ? x.half() + 1 : x.half();
}

std::vector<Cycle> rational_cycles(const SplitQuadric& x, int witt, const CoeffRing& ring) {
  require(witt >= 0 && witt <= max_witt_index(x),
          "witt index " + std::to_string(witt) + " is not admissible for " + x.label());
  std::vector<Cycle> out;
  for (int j = 0; j <= x.dim(); ++j) out.push_back(Cycle::h_power(x, ring, j));
  for (int i = 0; i < witt; ++i)
    if (2 * i != x.dim()) out.push_back(Cycle::cell(x, ring, {Cell::Kind::L, i}));
  if (x.has_middle() && witt == x.half() + 1) {
    out.push_back(Cycle::cell(x, ring, {Cell::Kind::L, x.half()}));
    out.push_back(Cycle::cell(x, ring, {Cell::Kind::LPrime, x.half()}));
  }
  return out;
}

std::vector<Correspondence> witt_generators(const SplitQuadric& x, int witt_x, const SplitQuadric& y,
                                            int witt_y, const CoeffRing& ring) {
  std::vector<std::pair<SplitQuadric, int>> objs{{x, witt_x}};
  if (!(x == y)) objs.emplace_back(y, witt_y);
  else require(witt_x == witt_y, "one quadric cannot carry two witt indices");
  std::vector<Correspondence> out;
  for (const auto& [s, ws] : objs)
    for (const auto& [t, wt] : objs) {
      auto rs = rational_cycles(s, ws, ring);
      auto rt = rational_cycles(t, wt, ring);
      for (const auto& u : rs)
        for (const auto& v : rt) {
          int p = cycle_dimension(u), q = cycle_dimension(v);
          if (p < 0 || q < 0 || p + q != s.dim()) continue;
          out.push_back(external_product(u, v));
        }
    }
  return out;
}

RationalityContext witt_context(const SplitQuadric& x, int witt_x, const SplitQuadric& y, int witt_y,
                                const GaloisContext& galois) {
  return RationalityContext(x, y, galois, witt_generators(x, witt_x, y, witt_y, galois.coefficient_ring()));
}

RationalityContext::RationalityContext(SplitQuadric x, SplitQuadric y, GaloisContext galois,
                                       std::vector<Correspondence> extra)
    : galois_(std::move(galois)) {
  const int r = galois_.generators();
  require(static_cast<int>(x.disc().size()) == r && static_cast<int>(y.disc().size()) == r,
          "discriminant characters must have length r = " + std::to_string(r));
  objects_.push_back(x);
  if (!(x == y)) objects_.push_back(std::move(y));

  const CoeffRing ring = this->ring();
  for (auto& g : extra) {
    require(has_object(g.source()) && has_object(g.target()),
            "extra generator lives on a quadric outside the context pair");
    if (!(g.ring() == ring)) {
      require(g.ring().reduces_to(ring), "extra generator over " + g.ring().to_string() +
                                             " does not reduce to " + ring.to_string());
      g = reduce(g, ring);
    }
    require(is_gal_invariant(g, galois_), "extra generator is not Gal-invariant");
    extra_.push_back(std::move(g));
  }

  const std::size_t m = objects_.size();
  std::vector<std::vector<std::vector<Int>>> rows(m * m);
  for (const auto& s : objects_)
    for (const auto& t : objects_)
      for (const auto& g : standard_generators(s, t, ring)) {
        ensure(is_gal_invariant(g, galois_), "standard generator is not Gal-invariant");
        rows[hom_index(s, t)].push_back(g.flatten());
      }
  for (const auto& g : extra_) rows[hom_index(g.source(), g.target())].push_back(g.flatten());

  spans_.assign(m * m, {});
  for (const auto& s : objects_)
    for (const auto& t : objects_) {
      auto h = hom_index(s, t);
      Mat empty(ring, 0, Correspondence::flat_size(s, t));
      spans_[h].push_back(howell(stack_rows(ring, empty.cols(), empty, rows[h])));
    }
  close();

  const int n = galois_.degree_exponent();
  for (auto& per_k : spans_) {
    Mat top = per_k.front();
    per_k.clear();
    for (int k = 1; k < n; ++k) per_k.push_back(howell(top.reduce(CoeffRing::pow2(k))));
    per_k.push_back(std::move(top));
  }
}

bool RationalityContext::has_object(const SplitQuadric& q) const {
  return std::find(objects_.begin(), objects_.end(), q) != objects_.end();
}

std::size_t RationalityContext::object_index(const SplitQuadric& q) const {
  auto it = std::find(objects_.begin(), objects_.end(), q);
  require(it != objects_.end(), "quadric " + q.label() + " is not an object of the context");
  return static_cast<std::size_t>(it - objects_.begin());
}

std::size_t RationalityContext::hom_index(const SplitQuadric& s, const SplitQuadric& t) const {
  return object_index(s) * objects_.size() + object_index(t);
}

void RationalityContext::close() {
  const CoeffRing ring = this->ring();
  const std::size_t m = objects_.size();
  auto member = [&](std::size_t h, const std::vector<Int>& v) {
    return howell_reduce(spans_[h].front(), v).has_value();
  };
  for (;;) {
    std::vector<std::vector<std::vector<Int>>> pending(m * m);
    auto offer = [&](std::size_t h, std::vector<Int> v) {
      if (member(h, v)) return;
      for (const auto& p : pending[h])
        if (p == v) return;
      pending[h].push_back(std::move(v));
    };
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b)
        for (std::size_t c = 0; c < m; ++c) {
          const Mat& hab = spans_[a * m + b].front();
          const Mat& hbc = spans_[b * m + c].front();
          for (std::size_t i = 0; i < hab.rows(); ++i) {
            auto f = Correspondence::unflatten(objects_[a], objects_[b], ring, hab.row(i));
            for (std::size_t j = 0; j < hbc.rows(); ++j) {
              auto g = Correspondence::unflatten(objects_[b], objects_[c], ring, hbc.row(j));
              offer(a * m + c, compose(g, f).flatten());
            }
          }
        }
    for (std::size_t a = 0; a < m; ++a)
      for (std::size_t b = 0; b < m; ++b) {
        if (objects_[a].dim() != objects_[b].dim()) continue;
        const Mat& hab = spans_[a * m + b].front();
        for (std::size_t i = 0; i < hab.rows(); ++i)
          offer(b * m + a, transpose(Correspondence::unflatten(objects_[a], objects_[b], ring, hab.row(i))).flatten());
      }
    bool changed = false;
    for (std::size_t h = 0; h < m * m; ++h) {
      if (pending[h].empty()) continue;
      changed = true;
      Mat& top = spans_[h].front();
      top = howell(stack_rows(ring, top.cols(), top, pending[h]));
    }
    if (!changed) return;
  }
}

RationalityContext RationalityContext::add_generators(const std::vector<Correspondence>& extra) const {
  std::vector<Correspondence> fresh;
  for (auto g : extra) {
    require(has_object(g.source()) && has_object(g.target()),
            "generator lives on a quadric outside the context pair");
    if (!(g.ring() == ring())) {
      require(g.ring().reduces_to(ring()), "generator over " + g.ring().to_string() +
                                               " does not reduce to " + ring().to_string());
      g = reduce(g, ring());
    }
    require(is_gal_invariant(g, galois_), "generator is not Gal-invariant");
    if (!is_rational_mod(g)) fresh.push_back(std::move(g));
  }
  if (fresh.empty()) return *this;
  auto all = extra_;
  all.insert(all.end(), fresh.begin(), fresh.end());
  return RationalityContext(x(), y(), galois_, std::move(all));
}

const Mat& RationalityContext::span_basis(const SplitQuadric& s, const SplitQuadric& t, int k) const {
  require(k >= 1 && k <= galois_.degree_exponent(), "modulus 2^" + std::to_string(k) + " exceeds the context modulus");
  return spans_[hom_index(s, t)][static_cast<std::size_t>(k - 1)];
}

Mat RationalityContext::reduced_generators(const SplitQuadric& s, const SplitQuadric& t, int k) const {
  require(k >= 1 && k <= galois_.degree_exponent(), "modulus 2^" + std::to_string(k) + " exceeds the context modulus");
  return spans_[hom_index(s, t)].back().reduce(CoeffRing::pow2(k));
}

bool RationalityContext::is_rational_mod(const Correspondence& a) const {
  auto k = a.ring().two_exponent();
  require(k.has_value(), "is_rational_mod expects coefficients in Z/2^k");
  require(*k <= galois_.degree_exponent(), "modulus " + a.ring().to_string() + " exceeds the context modulus " +
                                               ring().to_string());
  auto v = a.flatten();
  return howell_reduce(span_basis(a.source(), a.target(), *k), v).has_value();
}

bool RationalityContext::is_rational_integral(const Correspondence& a) const {
  require(a.ring().is_integers(), "is_rational_integral expects an integral correspondence");
  if (!has_object(a.source()) || !has_object(a.target())) invalid("correspondence lives outside the context pair");
  return is_gal_invariant(a, galois_) && is_rational_mod(reduce(a, ring()));
}

std::optional<Correspondence> RationalityContext::rational_preimage(const Correspondence& a) const {
  auto k = a.ring().two_exponent();
  require(k.has_value() && *k <= galois_.degree_exponent(), "rational_preimage expects Z/2^k with k <= n");
  Mat gens = reduced_generators(a.source(), a.target(), *k);
  auto v = a.flatten();
  auto coords = membership(v, gens);
  if (!coords) return std::nullopt;
  const Mat& top = spans_[hom_index(a.source(), a.target())].back();
  auto flat = row_times(*coords, top.reduce(ring()));
  auto out = Correspondence::unflatten(a.source(), a.target(), ring(), flat);
  ensure(reduce(out, a.ring()) == a, "rational preimage does not reduce to its input");
  return out;
}

}  // namespace qmot
