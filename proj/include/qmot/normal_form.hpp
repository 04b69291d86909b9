#pragma once

#include <optional>
#include <span>
#include <vector>

#include "qmot/matrix.hpp"

namespace qmot {

struct SmithForm {
  Mat U;  // rows x rows, unimodular
  Mat S;  // diagonal, d_1 | d_2 | ... , all d_i >= 0
  Mat V;  // cols x cols, unimodular
};

/// Smith normal form over Z with U * A * V = S.
/// Pivot: smallest nonzero |entry| of the active block, ties in row-major order.
SmithForm snf(const Mat& a);

/// Howell form together with the transform T (H = T * A) over Z/m.
struct HowellForm {
  Mat H;
  Mat T;
};

/// Canonical Howell form of the row span of `a` over a residue ring.
/// Zero rows are dropped; pivots are divisors of m and entries above a pivot
/// are reduced into [0, pivot).
Mat howell(const Mat& a);
HowellForm howell_with_transform(const Mat& a);

/// Reduce `x` against a Howell basis. Returns the H-coordinates when x is in
/// the row span of H, nothing otherwise.
std::optional<std::vector<Int>> howell_reduce(const Mat& h, std::span<const Int> x);

/// Coordinates c with c * basis = x, or nothing when x is not in the row span.
/// Over Z the Smith form decides, over Z/m the Howell form.
std::optional<std::vector<Int>> membership(std::span<const Int> x, const Mat& basis);

/// Rank of the free part: number of nonzero Smith invariants over Z, number of
/// unit pivots of the Howell form over Z/m.
std::size_t free_rank(const Mat& a);

}  // namespace qmot
