#pragma once

#include <utility>
#include <vector>

#include "qmot/split_chow.hpp"

namespace qmot {

/// Degree-0 correspondence X -> Y in graded block-matrix form. Block i is the
/// matrix of CH_i(X) -> CH_i(Y) (rows: target basis, columns: source basis)
/// for 0 <= i <= min(dim X, dim Y); CH_i(X) for larger i maps to zero.
class Correspondence {
 public:
  static Correspondence zero(const SplitQuadric& x, const SplitQuadric& y, const CoeffRing& ring);
  Correspondence(SplitQuadric x, SplitQuadric y, CoeffRing ring, std::vector<Mat> blocks);

  const SplitQuadric& source() const { return source_; }
  const SplitQuadric& target() const { return target_; }
  const CoeffRing& ring() const { return ring_; }
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const Mat& block(int i) const { return blocks_.at(static_cast<std::size_t>(i)); }
  const std::vector<Mat>& blocks() const { return blocks_; }
  Correspondence with_block(int i, Mat m) const;

  bool is_endomorphism() const { return source_ == target_; }
  bool is_zero() const;
  bool is_idempotent() const;

  /// Flat coordinate vector (blocks in order, each row-major).
  std::vector<Int> flatten() const;
  static Correspondence unflatten(const SplitQuadric& x, const SplitQuadric& y,
                                  const CoeffRing& ring, const std::vector<Int>& flat);
  static std::size_t flat_size(const SplitQuadric& x, const SplitQuadric& y);

  Correspondence operator+(const Correspondence& o) const;
  Correspondence operator-(const Correspondence& o) const;
  Correspondence scaled(const Int& c) const;

  friend bool operator==(const Correspondence&, const Correspondence&) = default;

 private:
  SplitQuadric source_;
  SplitQuadric target_;
  CoeffRing ring_;
  std::vector<Mat> blocks_;
};

/// The correspondence u x v acting by x |-> <x, u> v. Requires
/// dim u + dim v = dim X.
Correspondence external_product(const Cycle& u, const Cycle& v);

/// beta o alpha.
Correspondence compose(const Correspondence& beta, const Correspondence& alpha);
Correspondence diagonal(const SplitQuadric& x, const CoeffRing& ring);
/// Adjoint under the degree pairing; needs dim X = dim Y.
Correspondence transpose(const Correspondence& a);
Correspondence gal_act(const GroupElement& g, const Correspondence& a);
bool is_gal_invariant(const Correspondence& a, const GaloisContext& galois);
Correspondence reduce(const Correspondence& a, const CoeffRing& target);
/// Integer correspondence from canonical representatives.
Correspondence lift_canonical(const Correspondence& a);

/// (dimension, rank of the free image) for every dimension with a block.
std::vector<std::pair<int, int>> image_ranks(const Correspondence& rho);
/// Rank of the image inside the middle dimension; 0 for odd dimension.
int middle_rank(const Correspondence& rho);

/// One term c * (u x v) of the cycle form, u and v basis cells.
struct CycleTerm {
  Int coeff;
  Cell source_cell;
  Cell target_cell;
};

/// Cycle form in the basis {dual(b) x f}: dual(b) is the pairing dual of the
/// source basis cell b.
std::vector<CycleTerm> to_cycle_form(const Correspondence& a);
Correspondence from_cycle_form(const SplitQuadric& x, const SplitQuadric& y, const CoeffRing& ring,
                               const std::vector<CycleTerm>& terms);
/// Pairing dual of a basis cell: the cell of complementary dimension pairing to 1 with it.
Cell dual_cell(const SplitQuadric& x, const Cell& c);

/// A quadric with a Galois-invariant idempotent degree-0 endomorphism.
class Motive {
 public:
  Motive(Correspondence projector, const GaloisContext& galois);

  const SplitQuadric& quadric() const { return projector_.source(); }
  const Correspondence& projector() const { return projector_; }

 private:
  Correspondence projector_;
};

}  // namespace qmot
