#pragma once

#include <optional>
#include <vector>

#include "qmot/correspondence.hpp"

namespace qmot {

/// Correspondences declared rational on the objects {X, Y} (a single object
/// when X == Y), closed under sums, composition and transpose. Spans are kept
/// as Howell bases over Z/2^k for every k = 1..n, one per hom space.
class RationalityContext {
 public:
  RationalityContext(SplitQuadric x, SplitQuadric y, GaloisContext galois,
                     std::vector<Correspondence> extra = {});

  const SplitQuadric& x() const { return objects_.front(); }
  const SplitQuadric& y() const { return objects_.back(); }
  const std::vector<SplitQuadric>& objects() const { return objects_; }
  const GaloisContext& galois() const { return galois_; }
  CoeffRing ring() const { return galois_.coefficient_ring(); }
  const std::vector<Correspondence>& extra_generators() const { return extra_; }
  bool has_object(const SplitQuadric& q) const;

  /// Returns *this when every generator is already a member.
  RationalityContext add_generators(const std::vector<Correspondence>& extra) const;

  /// Howell basis (rows are flattened correspondences) of Hom(s, t) mod 2^k.
  const Mat& span_basis(const SplitQuadric& s, const SplitQuadric& t, int k) const;
  /// The basis of span_basis(s, t, n) reduced mod 2^k, in the same order; its
  /// rows generate the mod 2^k span and lift back into the mod 2^n span.
  Mat reduced_generators(const SplitQuadric& s, const SplitQuadric& t, int k) const;

  /// Membership of a correspondence over Z/2^k (k <= n).
  bool is_rational_mod(const Correspondence& a) const;
  /// Gal-invariant and rational after reduction mod 2^n.
  bool is_rational_integral(const Correspondence& a) const;
  /// A member of the mod 2^n span reducing to `a` (a over Z/2^k), if a is rational.
  std::optional<Correspondence> rational_preimage(const Correspondence& a) const;

 private:
  std::size_t object_index(const SplitQuadric& q) const;
  std::size_t hom_index(const SplitQuadric& s, const SplitQuadric& t) const;
  void close();

  std::vector<SplitQuadric> objects_;
  GaloisContext galois_;
  std::vector<Correspondence> extra_;
  // spans_[hom][k - 1]: Howell basis mod 2^k.
  std::vector<std::vector<Mat>> spans_;
};

/// Default rational set on Hom(s, t): h^a x h^b of degree 0, 2(e x f) for
/// degree-0 basis products pairing an l-class with an h-class, and the
/// diagonal when s == t.
std::vector<Correspondence> standard_generators(const SplitQuadric& s, const SplitQuadric& t,
                                                const CoeffRing& ring);

/// Largest admissible Witt index: d + 1 when the quadric can be split over
/// the base (odd dimension or trivial discriminant), d otherwise.
int max_witt_index(const SplitQuadric& x);
/// Cycles that are rational on a quadric of Witt index w: every h^j, l_i for
/// i < w, and both middle classes when w = d + 1.
std::vector<Cycle> rational_cycles(const SplitQuadric& x, int witt, const CoeffRing& ring);
/// Every degree-0 external product of rational cycles across the hom spaces
/// of {X, Y}.
std::vector<Correspondence> witt_generators(const SplitQuadric& x, int witt_x, const SplitQuadric& y,
                                            int witt_y, const CoeffRing& ring);
RationalityContext witt_context(const SplitQuadric& x, int witt_x, const SplitQuadric& y, int witt_y,
                                const GaloisContext& galois);

}  // namespace qmot
