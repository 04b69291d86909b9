#include "qmot/harness.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <numeric>
#include <random>

#include "qmot/error.hpp"

namespace qmot {

namespace f2 {

namespace {

constexpr Packed kBlockMask = 0xF;

Packed block_of(Packed p, int i) { return (p >> (4 * i)) & kBlockMask; }

// 2x2 product over F2 on the 4-bit encoding, bit 2r+c.
constexpr std::array<std::array<std::uint8_t, 16>, 16> make_mult() {
  std::array<std::array<std::uint8_t, 16>, 16> t{};
  for (unsigned b = 0; b < 16; ++b)
    for (unsigned a = 0; a < 16; ++a) {
      unsigned out = 0;
      for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c) {
          unsigned acc = 0;
          for (unsigned k = 0; k < 2; ++k) acc ^= ((b >> (2 * r + k)) & 1u) & ((a >> (2 * k + c)) & 1u);
          out |= acc << (2 * r + c);
        }
      t[b][a] = static_cast<std::uint8_t>(out);
    }
  return t;
}

constexpr auto kMult = make_mult();

}  // namespace

Packed pack(const Correspondence& a) {
  require(a.ring() == CoeffRing::pow2(1), "packing expects a correspondence mod 2");
  require(a.block_count() <= kMaxDim + 1, "dimension too large for the packed oracle");
  Packed p = 0;
  for (int i = 0; i < a.block_count(); ++i) {
    const Mat& b = a.block(i);
    for (std::size_t r = 0; r < b.rows(); ++r)
      for (std::size_t c = 0; c < b.cols(); ++c)
        if (b(r, c) != 0) p |= Packed(1) << (4 * i + 2 * static_cast<int>(r) + static_cast<int>(c));
  }
  return p;
}

Correspondence unpack(Packed p, const SplitQuadric& x, const SplitQuadric& y) {
  const auto ring = CoeffRing::pow2(1);
  std::vector<Mat> blocks;
  for (int i = 0; i <= std::min(x.dim(), y.dim()); ++i) {
    std::size_t rows = static_cast<std::size_t>(chow_rank(y, i)), cols = static_cast<std::size_t>(chow_rank(x, i));
    Mat m(ring, rows, cols);
    for (std::size_t r = 0; r < rows; ++r)
      for (std::size_t c = 0; c < cols; ++c) m.set(r, c, (p >> (4 * i + 2 * static_cast<int>(r) + static_cast<int>(c))) & 1u);
    blocks.push_back(std::move(m));
  }
  return Correspondence(x, y, ring, std::move(blocks));
}

Packed compose(Packed beta, Packed alpha, int dim_x, int dim_y, int dim_z) {
  Packed out = 0;
  const int top = std::min({dim_x, dim_y, dim_z});
  for (int i = 0; i <= top; ++i)
    out |= Packed(kMult[block_of(beta, i)][block_of(alpha, i)]) << (4 * i);
  return out;
}

int block_rank(Packed p, int i) {
  Packed b = block_of(p, i);
  if (b == 0) return 0;
  unsigned det = ((b & 1u) & ((b >> 3) & 1u)) ^ (((b >> 1) & 1u) & ((b >> 2) & 1u));
  return det ? 2 : 1;
}

std::vector<Packed> span(const std::vector<Packed>& rows) {
  if (rows.size() > 20)
    throw Error(ErrorCode::Resource, "rational span has 2^" + std::to_string(rows.size()) +
                                         " elements, above the 2^20 enumeration limit");
  std::vector<Packed> out{0};
  out.reserve(std::size_t(1) << rows.size());
  for (Packed r : rows) {
    const std::size_t n = out.size();
    for (std::size_t k = 0; k < n; ++k) out.push_back(out[k] ^ r);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace f2

namespace {

std::vector<f2::Packed> packed_rows(const RationalityContext& ctx, const SplitQuadric& s, const SplitQuadric& t) {
  const Mat& h = ctx.span_basis(s, t, 1);
  std::vector<f2::Packed> out;
  for (std::size_t i = 0; i < h.rows(); ++i)
    out.push_back(f2::pack(Correspondence::unflatten(s, t, h.ring(), h.row(i))));
  return out;
}

bool ranks_match(f2::Packed p, const std::vector<int>& ranks) {
  for (std::size_t i = 0; i < ranks.size(); ++i)
    if (f2::block_rank(p, static_cast<int>(i)) != ranks[i]) return false;
  return true;
}

class UnionFind {
 public:
  explicit UnionFind(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), std::size_t(0)); }
  std::size_t find(std::size_t a) {
    while (parent_[a] != a) a = parent_[a] = parent_[parent_[a]];
    return a;
  }
  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }
  std::size_t classes() {
    std::size_t n = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i)
      if (find(i) == i) ++n;
    return n;
  }

 private:
  std::vector<std::size_t> parent_;
};

struct MotiveEntry {
  Correspondence pi;
  Correspondence rho;
  IsoClass cls;
};

struct ShapeData {
  std::vector<MotiveEntry> motives;
};

std::string describe(const SplitQuadric& x, const Correspondence& p) {
  std::string s = x.label() + " [";
  for (int i = 0; i < p.block_count(); ++i) s += (i ? " " : "") + p.block(i).to_string();
  return s + "]";
}

bool markers_mismatch(const IsoClass& a, const IsoClass& b) {
  return a.middle_marker.has_value() != b.middle_marker.has_value() ||
         (a.middle_marker && *a.middle_marker != *b.middle_marker);
}

struct PairOutcome {
  bool mod2_iso = false;
  bool integral_iso = false;
};

PairOutcome check_pair(const MotiveEntry& a, const MotiveEntry& b, const RationalityContext& ctx,
                       std::vector<std::string>& failures) {
  PairOutcome out;
  const auto& X = a.rho.source();
  const auto& Y = b.rho.source();
  auto where = [&] { return describe(X, a.pi) + " vs " + describe(Y, b.pi); };
  auto found = search_mod2_isomorphism(a.pi, b.pi, ctx);
  out.mod2_iso = found.has_value();
  try {
    if (found) {
      auto alpha = ctx.rational_preimage(found->forward);
      ensure(alpha.has_value(), "oracle isomorphism has no rational preimage");
      auto lifted = lift_isomorphism(a.rho, b.rho, *alpha, ctx);
      if (!lifted.isomorphic) {
        failures.push_back("lift_isomorphism refused a mod-2 isomorphic pair (" + lifted.reason + "): " + where());
        return out;
      }
      const auto& c = *lifted.iso;
      const auto& ci = *lifted.inverse;
      bool ok = c.ring().is_integers() && is_gal_invariant(c, ctx.galois()) && ctx.is_rational_integral(c) &&
                ctx.is_rational_integral(ci) && compose(ci, c) == a.rho && compose(c, ci) == b.rho;
      if (!ok) {
        failures.push_back("lifted isomorphism failed verification: " + where());
        return out;
      }
      if (a.cls != b.cls) failures.push_back("isomorphic motives classified differently: " + where());
      if (markers_mismatch(a.cls, b.cls)) failures.push_back("isomorphism across mismatched middle markers: " + where());
      out.integral_iso = true;
    } else {
      auto zero = Correspondence::zero(X, Y, ctx.ring());
      auto lifted = lift_isomorphism(a.rho, b.rho, zero, ctx);
      if (lifted.isomorphic) failures.push_back("lift_isomorphism produced an isomorphism from zero: " + where());
      if (a.cls == b.cls) failures.push_back("classify does not distinguish non-isomorphic motives: " + where());
    }
  } catch (const Error& e) {
    if (e.code() == ErrorCode::Resource) throw;
    failures.push_back(std::string("error: ") + e.what() + ": " + where());
  }
  return out;
}

ShapeData build_shape(const SplitQuadric& X, const RationalityContext& ctx, ShapeReport& rep) {
  ShapeData data;
  auto idempotents = enumerate_idempotents_mod2(X, ctx);
  rep.idempotents = idempotents.size();
  for (const auto& pi : idempotents) {
    try {
      auto tau = lift_mod2_to_mod2n(pi, ctx);
      auto rho = lift_projector(tau, ctx);
      bool ok = rho.ring().is_integers() && rho.is_idempotent() && is_gal_invariant(rho, ctx.galois()) &&
                ctx.is_rational_integral(rho) &&
                search_mod2_isomorphism(pi, reduce(rho, CoeffRing::pow2(1)), ctx).has_value();
      if (!ok) {
        rep.surjectivity = false;
        rep.failures.push_back("lifted projector failed verification: " + describe(X, pi));
        continue;
      }
      auto cls = classify(Motive(rho, ctx.galois()));
      data.motives.push_back({pi, std::move(rho), std::move(cls)});
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Resource) throw;
      rep.surjectivity = false;
      rep.failures.push_back(std::string("error: ") + e.what() + ": " + describe(X, pi));
    }
  }
  return data;
}

}  // namespace

std::vector<Correspondence> enumerate_idempotents_mod2(const SplitQuadric& x, const RationalityContext& ctx) {
  require(x.dim() <= f2::kMaxDim, "dimension too large for enumeration");
  auto elements = f2::span(packed_rows(ctx, x, x));
  std::vector<Correspondence> out;
  for (auto p : elements) {
    if (f2::compose(p, p, x.dim(), x.dim(), x.dim()) != p) continue;
    auto c = f2::unpack(p, x, x);
    if (!is_gal_invariant(c, ctx.galois())) continue;
    out.push_back(std::move(c));
  }
  return out;
}

std::optional<Mod2Iso> search_mod2_isomorphism(const Correspondence& pi, const Correspondence& pi2,
                                               const RationalityContext& ctx) {
  const auto& X = pi.source();
  const auto& Y = pi2.source();
  const int dx = X.dim(), dy = Y.dim();
  const f2::Packed P = f2::pack(pi), Q = f2::pack(pi2);
  std::vector<int> ranks;
  for (int i = 0; i <= std::max(dx, dy); ++i) {
    int rx = i <= dx ? f2::block_rank(P, i) : 0;
    int ry = i <= dy ? f2::block_rank(Q, i) : 0;
    if (rx != ry) return std::nullopt;
    if (i <= std::min(dx, dy)) ranks.push_back(rx);
  }
  std::vector<f2::Packed> A, B;
  for (auto a : f2::span(packed_rows(ctx, X, Y))) {
    auto v = f2::compose(Q, f2::compose(a, P, dx, dx, dy), dx, dy, dy);
    if (ranks_match(v, ranks)) A.push_back(v);
  }
  for (auto b : f2::span(packed_rows(ctx, Y, X))) {
    auto v = f2::compose(P, f2::compose(b, Q, dy, dy, dx), dy, dx, dx);
    if (ranks_match(v, ranks)) B.push_back(v);
  }
  for (auto* v : {&A, &B}) {
    std::sort(v->begin(), v->end());
    v->erase(std::unique(v->begin(), v->end()), v->end());
  }
  for (auto a : A)
    for (auto b : B)
      if (f2::compose(b, a, dx, dy, dx) == P && f2::compose(a, b, dy, dx, dy) == Q)
        return Mod2Iso{f2::unpack(a, X, Y), f2::unpack(b, Y, X)};
  return std::nullopt;
}

std::vector<SplitQuadric> quadric_shapes(int dim_max, int r) {
  require(dim_max >= 1, "dim_max must be at least 1");
  require(r >= 0 && r <= 16, "galois_r out of range");
  std::vector<SplitQuadric> out;
  for (int D = 1; D <= dim_max; ++D) {
    if (D % 2 == 1) {
      out.emplace_back(D, std::vector<std::uint8_t>(static_cast<std::size_t>(r), 0));
      continue;
    }
    for (unsigned mask = 0; mask < (1u << r); ++mask) {
      std::vector<std::uint8_t> disc(static_cast<std::size_t>(r));
      for (int k = 0; k < r; ++k) disc[static_cast<std::size_t>(k)] = (mask >> k) & 1u;
      out.emplace_back(D, std::move(disc));
    }
  }
  return out;
}

BijectionReport reduction_bijection_check(const BijectionOptions& opt) {
  require(opt.dim_max >= 1 && opt.dim_max <= 4, "dim_max must lie in 1..4");
  require(opt.n >= 1 && opt.n <= 4, "n must lie in 1..4");
  GaloisContext galois(opt.galois_r, opt.n);
  BijectionReport report;
  report.dim_max = opt.dim_max;
  report.n = opt.n;
  report.galois_r = opt.galois_r;

  auto shapes = quadric_shapes(opt.dim_max, opt.galois_r);
  int top = 0;
  for (const auto& s : shapes) top = std::max(top, max_witt_index(s));
  std::vector<int> levels;
  if (opt.witt) {
    require(*opt.witt >= 0, "witt level must be nonnegative");
    levels.push_back(*opt.witt);
  } else {
    for (int w = 0; w <= top; ++w) levels.push_back(w);
  }

  std::map<std::pair<SplitQuadric, int>, ShapeData> cache;
  for (int level : levels) {
    std::vector<const ShapeData*> data;
    for (const auto& X : shapes) {
      const int w = std::min(level, max_witt_index(X));
      auto key = std::make_pair(X, w);
      auto it = cache.find(key);
      if (it == cache.end()) {
        ShapeReport rep{X, w, 0, 0, 0, 0, 0, true, true, {}, {}};
        auto ctx = witt_context(X, w, X, w, galois);
        ShapeData sd = build_shape(X, ctx, rep);
        const auto& ms = sd.motives;
        UnionFind mod2(ms.size()), integral(ms.size());
        for (std::size_t i = 0; i < ms.size(); ++i)
          for (std::size_t j = i + 1; j < ms.size(); ++j) {
            ++rep.pairs;
            auto o = check_pair(ms[i], ms[j], ctx, rep.failures);
            if (o.mod2_iso) {
              ++rep.isomorphic_pairs;
              mod2.unite(i, j);
            }
            if (o.integral_iso) integral.unite(i, j);
            if (o.mod2_iso != o.integral_iso) rep.injectivity = false;
          }
        rep.mod2_classes = mod2.classes();
        rep.integral_classes = integral.classes();
        for (std::size_t i = 0; i < ms.size(); ++i) {
          if (mod2.find(i) != i) continue;
          ClassWitness w_{ms[i].cls.to_string(), 0};
          for (std::size_t j = 0; j < ms.size(); ++j)
            if (mod2.find(j) == i) ++w_.members;
          rep.witnesses.push_back(std::move(w_));
        }
        if (rep.mod2_classes != rep.integral_classes) rep.injectivity = false;
        // Pair failures are injectivity failures unless the surjectivity side already failed.
        if (!rep.failures.empty() && rep.surjectivity) rep.injectivity = false;
        report.pass = report.pass && rep.surjectivity && rep.injectivity;
        report.shapes.push_back(std::move(rep));
        it = cache.emplace(key, std::move(sd)).first;
      }
      data.push_back(&it->second);
    }

    if (!opt.cross_shapes) continue;
    CrossReport cr;
    cr.level = level;
    for (std::size_t s = 0; s < shapes.size(); ++s)
      for (std::size_t t = s + 1; t < shapes.size(); ++t) {
        const int ws = std::min(level, max_witt_index(shapes[s]));
        const int wt = std::min(level, max_witt_index(shapes[t]));
        auto ctx = witt_context(shapes[s], ws, shapes[t], wt, galois);
        for (const auto& a : data[s]->motives)
          for (const auto& b : data[t]->motives) {
            ++cr.pairs;
            if (markers_mismatch(a.cls, b.cls)) ++cr.marker_mismatch_pairs;
            auto o = check_pair(a, b, ctx, cr.failures);
            if (o.mod2_iso) ++cr.isomorphic_pairs;
            if (o.mod2_iso != o.integral_iso) cr.agreement = false;
          }
      }
    if (!cr.failures.empty()) cr.agreement = false;
    report.pass = report.pass && cr.agreement;
    report.cross.push_back(std::move(cr));
  }
  return report;
}

namespace {

Correspondence random_correspondence(std::mt19937_64& rng, const SplitQuadric& x, const SplitQuadric& y,
                                     const CoeffRing& ring) {
  std::uniform_int_distribution<int> entry(-4, 4);
  std::vector<Int> flat(Correspondence::flat_size(x, y));
  for (auto& v : flat) v = entry(rng);
  return Correspondence::unflatten(x, y, ring, flat);
}

SplitQuadric random_quadric(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> dim(1, 4), bit(0, 1);
  int D = dim(rng);
  std::vector<std::uint8_t> disc(2, 0);
  if (D % 2 == 0)
    for (auto& b : disc) b = static_cast<std::uint8_t>(bit(rng));
  return SplitQuadric(D, disc);
}

}  // namespace

AlgebraSample random_algebra_sample(std::uint64_t seed, std::size_t triples) {
  std::mt19937_64 rng(seed);
  const std::array<CoeffRing, 3> rings{CoeffRing::integers(), CoeffRing::pow2(2), CoeffRing::pow2(1)};
  AlgebraSample out{seed, triples, 0};
  for (std::size_t t = 0; t < triples; ++t) {
    const auto& ring = rings[t % rings.size()];
    auto W = random_quadric(rng), X = random_quadric(rng), Y = random_quadric(rng), Z = random_quadric(rng);
    auto a = random_correspondence(rng, W, X, ring);
    auto b = random_correspondence(rng, X, Y, ring);
    auto c = random_correspondence(rng, Y, Z, ring);
    bool ok = compose(c, compose(b, a)) == compose(compose(c, b), a) && compose(diagonal(X, ring), a) == a &&
              compose(a, diagonal(W, ring)) == a;
    if (!ok) ++out.failures;
  }
  return out;
}

}  // namespace qmot
