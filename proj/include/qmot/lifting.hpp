#pragma once

#include "qmot/matrix.hpp"

namespace qmot {

/// Lift M in SL_k(Z/m) to SL_k(Z). If the symmetric-residue lift already has
/// determinant 1 it is returned as is; otherwise M is reduced to the identity
/// by elementary row and column operations over Z/m and the inverse operations
/// are multiplied out over Z. The result L satisfies det L = 1 and L = M mod m.
Mat lift_sl(const Mat& m);

/// Lift an idempotent mod 2 to an idempotent mod 2^n by iterating
/// F <- 3F^2 - 2F^3, ceil(log2 n) times. `e` is any matrix over Z/2^n whose
/// reduction mod 2 is idempotent.
Mat lift_idempotent_newton(const Mat& e);

/// Number of Newton steps needed to reach precision 2^n from precision 2.
int newton_steps(int n);

struct UnitSplit {
  Int inverse;  // u^{-1}
  Int k;        // u^{-1} = 2k + 1
};

/// For an odd u in Z/2^n: its inverse and k with u^{-1} = 2k + 1 (canonical).
UnitSplit unit_decompose(const Int& u, const CoeffRing& ring);

/// For a rank-1 idempotent p in M_2(Z/2^n): g with det g = 1 and
/// g * E11 * g^{-1} = p. The first column is the image generator with leading
/// unit coordinate normalized to 1, the second a kernel generator scaled so
/// that det g = 1.
Mat rank1_decomposition_to_sl2(const Mat& p);

/// Generator of a free rank-1 column span over Z/m (columns of `a`), scaled so
/// that its first unit coordinate is 1.
std::vector<Int> normalized_column_generator(const Mat& a);

}  // namespace qmot
