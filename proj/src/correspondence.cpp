#include "qmot/correspondence.hpp"

#include <algorithm>

#include "qmot/error.hpp"
#include "qmot/normal_form.hpp"

namespace qmot {

namespace {

int block_limit(const SplitQuadric& x, const SplitQuadric& y) { return std::min(x.dim(), y.dim()); }

std::size_t rank_of(const SplitQuadric& x, int i) { return static_cast<std::size_t>(chow_rank(x, i)); }

// Dimension carrying the nonzero coordinates of a homogeneous cycle, -1 for zero.
int homogeneous_dimension(const Cycle& c) {
  for (int i = 0; i <= c.quadric().dim(); ++i) {
    auto comp = c.component(i);
    if (std::any_of(comp.begin(), comp.end(), [](const Int& v) { return v != 0; })) {
      require(c.concentrated_in(i), "cycle is not homogeneous");
      return i;
    }
  }
  return -1;
}

}  // namespace

Correspondence Correspondence::zero(const SplitQuadric& x, const SplitQuadric& y, const CoeffRing& ring) {
  std::vector<Mat> blocks;
  for (int i = 0; i <= block_limit(x, y); ++i) blocks.emplace_back(ring, rank_of(y, i), rank_of(x, i));
  return Correspondence(x, y, ring, std::move(blocks));
}

Correspondence::Correspondence(SplitQuadric x, SplitQuadric y, CoeffRing ring, std::vector<Mat> blocks)
    : source_(std::move(x)), target_(std::move(y)), ring_(std::move(ring)), blocks_(std::move(blocks)) {
  require(static_cast<int>(blocks_.size()) == block_limit(source_, target_) + 1,
          "correspondence has the wrong number of blocks");
  for (int i = 0; i < block_count(); ++i) {
    const Mat& b = blocks_[static_cast<std::size_t>(i)];
    require(b.ring() == ring_, "block ring mismatch");
    require(b.rows() == rank_of(target_, i) && b.cols() == rank_of(source_, i),
            "block " + std::to_string(i) + " has the wrong shape");
  }
}

Correspondence Correspondence::with_block(int i, Mat m) const {
  auto blocks = blocks_;
  blocks.at(static_cast<std::size_t>(i)) = std::move(m);
  return Correspondence(source_, target_, ring_, std::move(blocks));
}

bool Correspondence::is_zero() const {
  return std::all_of(blocks_.begin(), blocks_.end(), [](const Mat& b) { return b.is_zero(); });
}

bool Correspondence::is_idempotent() const {
  return is_endomorphism() && compose(*this, *this) == *this;
}

std::vector<Int> Correspondence::flatten() const {
  std::vector<Int> out;
  for (const auto& b : blocks_) out.insert(out.end(), b.entries().begin(), b.entries().end());
  return out;
}

std::size_t Correspondence::flat_size(const SplitQuadric& x, const SplitQuadric& y) {
  std::size_t n = 0;
  for (int i = 0; i <= block_limit(x, y); ++i) n += rank_of(x, i) * rank_of(y, i);
  return n;
}

Correspondence Correspondence::unflatten(const SplitQuadric& x, const SplitQuadric& y,
                                         const CoeffRing& ring, const std::vector<Int>& flat) {
  require(flat.size() == flat_size(x, y), "flat correspondence has the wrong length");
  std::vector<Mat> blocks;
  std::size_t pos = 0;
  for (int i = 0; i <= block_limit(x, y); ++i) {
    std::size_t r = rank_of(y, i), c = rank_of(x, i);
    std::vector<Int> e(flat.begin() + static_cast<std::ptrdiff_t>(pos),
                       flat.begin() + static_cast<std::ptrdiff_t>(pos + r * c));
    pos += r * c;
    blocks.emplace_back(ring, r, c, std::move(e));
  }
  return Correspondence(x, y, ring, std::move(blocks));
}

Correspondence Correspondence::operator+(const Correspondence& o) const {
  require(source_ == o.source_ && target_ == o.target_ && ring_ == o.ring_, "sum of incompatible correspondences");
  std::vector<Mat> blocks;
  for (std::size_t i = 0; i < blocks_.size(); ++i) blocks.push_back(blocks_[i] + o.blocks_[i]);
  return Correspondence(source_, target_, ring_, std::move(blocks));
}

Correspondence Correspondence::operator-(const Correspondence& o) const { return *this + o.scaled(-1); }

Correspondence Correspondence::scaled(const Int& c) const {
  std::vector<Mat> blocks;
  for (const auto& b : blocks_) blocks.push_back(b.scaled(c));
  return Correspondence(source_, target_, ring_, std::move(blocks));
}

Correspondence external_product(const Cycle& u, const Cycle& v) {
  require(u.ring() == v.ring(), "external product: ring mismatch");
  const auto& X = u.quadric();
  const auto& Y = v.quadric();
  auto out = Correspondence::zero(X, Y, u.ring());
  int p = homogeneous_dimension(u);
  int q = homogeneous_dimension(v);
  if (p < 0 || q < 0) return out;
  require(p + q == X.dim(), "external product is not of degree 0: dim u + dim v != dim X");
  Mat block(u.ring(), rank_of(Y, q), rank_of(X, q));
  auto target = v.component(q);
  auto cells = basis_cells(X, q);
  for (std::size_t c = 0; c < cells.size(); ++c) {
    Int w = pairing(Cycle::cell(X, u.ring(), cells[c]), u);
    for (std::size_t r = 0; r < target.size(); ++r) block.set(r, c, w * target[r]);
  }
  return out.with_block(q, std::move(block));
}

Correspondence compose(const Correspondence& beta, const Correspondence& alpha) {
  require(alpha.target() == beta.source(), "compose: middle quadrics differ");
  require(alpha.ring() == beta.ring(), "compose: ring mismatch");
  const auto& X = alpha.source();
  const auto& Z = beta.target();
  std::vector<Mat> blocks;
  for (int i = 0; i <= block_limit(X, Z); ++i) {
    if (i <= alpha.target().dim())
      blocks.push_back(beta.block(i) * alpha.block(i));
    else
      blocks.emplace_back(alpha.ring(), rank_of(Z, i), rank_of(X, i));
  }
  return Correspondence(X, Z, alpha.ring(), std::move(blocks));
}

Correspondence diagonal(const SplitQuadric& x, const CoeffRing& ring) {
  std::vector<Mat> blocks;
  for (int i = 0; i <= x.dim(); ++i) blocks.push_back(Mat::identity(ring, rank_of(x, i)));
  return Correspondence(x, x, ring, std::move(blocks));
}

Correspondence transpose(const Correspondence& a) {
  const auto& X = a.source();
  const auto& Y = a.target();
  require(X.dim() == Y.dim(), "transpose needs dim X = dim Y to stay of degree 0");
  const int D = X.dim();
  std::vector<Mat> blocks(static_cast<std::size_t>(D + 1), Mat(a.ring(), 0, 0));
  for (int q = 0; q <= D; ++q) {
    Mat n = inverse(gram(X, q, a.ring())) * a.block(q).transpose() * gram(Y, q, a.ring());
    blocks[static_cast<std::size_t>(D - q)] = std::move(n);
  }
  return Correspondence(Y, X, a.ring(), std::move(blocks));
}

Correspondence gal_act(const GroupElement& g, const Correspondence& a) {
  std::vector<Mat> blocks;
  for (int i = 0; i < a.block_count(); ++i) {
    Mat py = galois_matrix(a.target(), i, g, a.ring());
    Mat px = galois_matrix(a.source(), i, g, a.ring());
    blocks.push_back(py * a.block(i) * px);
  }
  return Correspondence(a.source(), a.target(), a.ring(), std::move(blocks));
}

bool is_gal_invariant(const Correspondence& a, const GaloisContext& galois) {
  for (const auto& g : galois.generator_elements())
    if (gal_act(g, a) != a) return false;
  return true;
}

Correspondence reduce(const Correspondence& a, const CoeffRing& target) {
  require(a.ring().reduces_to(target),
          "cannot reduce from " + a.ring().to_string() + " to " + target.to_string());
  std::vector<Mat> blocks;
  for (const auto& b : a.blocks()) blocks.push_back(b.reduce(target));
  return Correspondence(a.source(), a.target(), target, std::move(blocks));
}

Correspondence lift_canonical(const Correspondence& a) {
  std::vector<Mat> blocks;
  for (const auto& b : a.blocks()) blocks.push_back(b.lift_canonical());
  return Correspondence(a.source(), a.target(), CoeffRing::integers(), std::move(blocks));
}

std::vector<std::pair<int, int>> image_ranks(const Correspondence& rho) {
  require(rho.is_idempotent(), "image_ranks: correspondence is not idempotent");
  std::vector<std::pair<int, int>> out;
  for (int i = 0; i < rho.block_count(); ++i)
    out.emplace_back(i, static_cast<int>(free_rank(rho.block(i))));
  return out;
}

int middle_rank(const Correspondence& rho) {
  auto ranks = image_ranks(rho);
  const auto& X = rho.source();
  if (!X.has_middle()) return 0;
  return ranks.at(static_cast<std::size_t>(X.half())).second;
}

Cell dual_cell(const SplitQuadric& x, const Cell& c) {
  const int D = x.dim();
  int i = cell_dimension(x, c);
  if (!(x.has_middle() && 2 * i == D)) return basis_cells(x, D - i).front();
  if (x.half() % 2 == 0) return c;
  return {c.kind == Cell::Kind::L ? Cell::Kind::LPrime : Cell::Kind::L, c.index};
}

std::vector<CycleTerm> to_cycle_form(const Correspondence& a) {
  std::vector<CycleTerm> out;
  for (int i = 0; i < a.block_count(); ++i) {
    auto src = basis_cells(a.source(), i);
    auto dst = basis_cells(a.target(), i);
    const Mat& m = a.block(i);
    for (std::size_t r = 0; r < m.rows(); ++r)
      for (std::size_t c = 0; c < m.cols(); ++c)
        if (m(r, c) != 0) out.push_back({m(r, c), dual_cell(a.source(), src[c]), dst[r]});
  }
  return out;
}

Correspondence from_cycle_form(const SplitQuadric& x, const SplitQuadric& y, const CoeffRing& ring,
                               const std::vector<CycleTerm>& terms) {
  auto out = Correspondence::zero(x, y, ring);
  for (const auto& t : terms)
    out = out + external_product(Cycle::cell(x, ring, t.source_cell),
                                 Cycle::cell(y, ring, t.target_cell))
                    .scaled(t.coeff);
  return out;
}

Motive::Motive(Correspondence projector, const GaloisContext& galois) : projector_(std::move(projector)) {
  require(projector_.is_endomorphism(), "motive projector must be an endomorphism");
  require(projector_.is_idempotent(), "motive projector is not idempotent");
  require(is_gal_invariant(projector_, galois), "motive projector is not Galois-invariant");
}

}  // namespace qmot
