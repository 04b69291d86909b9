#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmot/matrix.hpp"

namespace qmot {

/// Element of the acting group (Z/2)^r as a bit vector of length r.
using GroupElement = std::vector<std::uint8_t>;

/// Elementary abelian 2-group (Z/2)^r acting on every quadric in play, split
/// by an extension of degree 2^n (n >= max(r, 1)).
class GaloisContext {
 public:
  GaloisContext(int generators, int degree_exponent);

  int generators() const { return generators_; }
  int degree_exponent() const { return degree_exponent_; }
  /// Z/2^n with 2^n the degree of the splitting extension.
  CoeffRing coefficient_ring() const { return CoeffRing::pow2(degree_exponent_); }

  std::vector<GroupElement> generator_elements() const;
  std::vector<GroupElement> elements() const;

  friend bool operator==(const GaloisContext&, const GaloisContext&) = default;

 private:
  int generators_;
  int degree_exponent_;
};

/// Combinatorial split quadric of dimension D = 2d or 2d + 1. The discriminant
/// character decides which group elements exchange the two middle classes.
class SplitQuadric {
 public:
  SplitQuadric(int dim, std::vector<std::uint8_t> disc);

  int dim() const { return dim_; }
  int half() const { return dim_ / 2; }
  bool has_middle() const { return dim_ % 2 == 0; }
  const std::vector<std::uint8_t>& disc() const { return disc_; }
  bool disc_trivial() const;
  /// Whether g swaps L(d) and L'(d): <disc, g> = 1.
  bool swaps(const GroupElement& g) const;
  /// Total rank of CH over the splitting field.
  std::size_t basis_size() const { return static_cast<std::size_t>(dim_ + 1 + (has_middle() ? 1 : 0)); }

  std::string label() const;

  friend bool operator==(const SplitQuadric&, const SplitQuadric&) = default;
  friend auto operator<=>(const SplitQuadric&, const SplitQuadric&) = default;

 private:
  int dim_;
  std::vector<std::uint8_t> disc_;
};

/// Basis cell: L(i) the class of an i-dimensional linear subspace, L'(d) the
/// second middle class, H(j) the class h^j (used only where it generates).
struct Cell {
  enum class Kind { L, LPrime, H };
  Kind kind;
  int index;

  std::string name() const;
  static Cell parse(const std::string& name);

  friend bool operator==(const Cell&, const Cell&) = default;
};

int chow_rank(const SplitQuadric& x, int i);
int cell_dimension(const SplitQuadric& x, const Cell& c);
/// Generators of CH_i in canonical order (middle: L(d), L'(d)).
std::vector<Cell> basis_cells(const SplitQuadric& x, int i);
std::vector<Cell> all_cells(const SplitQuadric& x);
std::size_t cell_position(const SplitQuadric& x, const Cell& c);
/// Offset of CH_i inside the global coordinate vector.
std::size_t dimension_offset(const SplitQuadric& x, int i);

/// Graded element of CH(X_L) with coefficients in `ring`.
class Cycle {
 public:
  Cycle(SplitQuadric x, CoeffRing ring);
  Cycle(SplitQuadric x, CoeffRing ring, std::vector<Int> coords);

  static Cycle cell(const SplitQuadric& x, const CoeffRing& ring, const Cell& c, const Int& coef = 1);
  /// The class h^a, rewritten into the basis (h^{D-i} = 2 L(i) for 2i < D).
  static Cycle h_power(const SplitQuadric& x, const CoeffRing& ring, int a);

  const SplitQuadric& quadric() const { return quadric_; }
  const CoeffRing& ring() const { return ring_; }
  const std::vector<Int>& coords() const { return coords_; }
  const Int& coeff(const Cell& c) const { return coords_[cell_position(quadric_, c)]; }
  /// Coordinates of the CH_i component.
  std::vector<Int> component(int i) const;

  bool is_zero() const;
  /// True when all nonzero coordinates sit in dimension i.
  bool concentrated_in(int i) const;

  Cycle operator+(const Cycle& o) const;
  Cycle operator-(const Cycle& o) const;
  Cycle scaled(const Int& c) const;

  friend bool operator==(const Cycle&, const Cycle&) = default;

 private:
  SplitQuadric quadric_;
  CoeffRing ring_;
  std::vector<Int> coords_;
};

Cycle h_mult(const Cycle& x);
Int degree(const Cycle& x);
Int pairing(const Cycle& x, const Cycle& u);
Cycle gal_act(const GroupElement& g, const Cycle& x);

/// Gram matrix of the degree pairing: rows index the basis of CH_i, columns the
/// basis of CH_{D-i}.
Mat gram(const SplitQuadric& x, int i, const CoeffRing& ring);
/// Matrix of g acting on the basis of CH_i (a permutation).
Mat galois_matrix(const SplitQuadric& x, int i, const GroupElement& g, const CoeffRing& ring);

}  // namespace qmot
