#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qmot/motive_lift.hpp"

namespace qmot {

/// Bit-packed correspondences mod 2, used as an independent oracle. Block i
/// occupies bits 4i..4i+3 as a zero-padded 2x2 matrix, bit 2*row + col.
namespace f2 {

using Packed = std::uint32_t;
constexpr int kMaxDim = 7;

Packed pack(const Correspondence& a);
Correspondence unpack(Packed p, const SplitQuadric& x, const SplitQuadric& y);
/// beta o alpha for alpha: X -> Y, beta: Y -> Z.
Packed compose(Packed beta, Packed alpha, int dim_x, int dim_y, int dim_z);
int block_rank(Packed p, int i);
/// Every element of the F2-span of `rows` (linearly independent), sorted.
/// Throws a resource error beyond 2^20 elements.
std::vector<Packed> span(const std::vector<Packed>& rows);

}  // namespace f2

/// Every Gal-invariant idempotent X -> X mod 2 inside the rational span of ctx.
std::vector<Correspondence> enumerate_idempotents_mod2(const SplitQuadric& x, const RationalityContext& ctx);

/// Invertible rational correspondence (X, pi) -> (Y, pi2) mod 2 found by
/// exhaustive search of the rational spans, with its rational inverse.
struct Mod2Iso {
  Correspondence forward;
  Correspondence backward;
};
std::optional<Mod2Iso> search_mod2_isomorphism(const Correspondence& pi, const Correspondence& pi2,
                                               const RationalityContext& ctx);

/// All quadric shapes of dimension <= dim_max for r discriminant bits,
/// ordered by dimension then discriminant.
std::vector<SplitQuadric> quadric_shapes(int dim_max, int r);

struct ClassWitness {
  std::string iso_class;
  std::size_t members = 0;
};

struct ShapeReport {
  SplitQuadric quadric;
  int witt_index = 0;
  std::size_t idempotents = 0;
  std::size_t mod2_classes = 0;
  std::size_t integral_classes = 0;
  std::size_t pairs = 0;
  std::size_t isomorphic_pairs = 0;
  bool surjectivity = true;
  bool injectivity = true;
  std::vector<ClassWitness> witnesses;
  std::vector<std::string> failures;
};

struct CrossReport {
  int level = 0;
  std::size_t pairs = 0;
  std::size_t isomorphic_pairs = 0;
  std::size_t marker_mismatch_pairs = 0;
  bool agreement = true;
  std::vector<std::string> failures;
};

struct BijectionReport {
  int dim_max = 0;
  int n = 0;
  int galois_r = 0;
  std::vector<ShapeReport> shapes;
  std::vector<CrossReport> cross;
  bool pass = true;
};

struct BijectionOptions {
  int dim_max = 2;
  int n = 2;
  int galois_r = 1;
  std::optional<int> witt;  // a single isotropy level instead of all of them
  bool cross_shapes = true;
};

/// Exhaustive check that reduction mod 2 is a bijection on isomorphism
/// classes of motives, per quadric shape and isotropy level.
BijectionReport reduction_bijection_check(const BijectionOptions& opt);

struct AlgebraSample {
  std::uint64_t seed = 0;
  std::size_t triples = 0;
  std::size_t failures = 0;
};

/// Associativity and two-sided diagonal identity on random triples of
/// correspondences (dimensions 1..4, rings Z, Z/4, Z/2), entries in [-4, 4].
AlgebraSample random_algebra_sample(std::uint64_t seed, std::size_t triples);

}  // namespace qmot
