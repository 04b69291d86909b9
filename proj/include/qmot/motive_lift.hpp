#pragma once

#include <optional>
#include <string>
#include <vector>

#include "qmot/rationality.hpp"

namespace qmot {

/// Newton lift of an idempotent mod 2 to an idempotent mod 2^n, started at
/// the canonical preimage.
Correspondence lift_mod2_to_mod2n(const Correspondence& pi, int n, const GaloisContext& galois);
/// Same, started at a preimage inside the rational span of `ctx` so that the
/// result stays rational mod 2^n.
Correspondence lift_mod2_to_mod2n(const Correspondence& pi, const RationalityContext& ctx);

/// Integral Gal-invariant idempotent reducing to the idempotent tau mod 2^n.
Correspondence lift_projector(const Correspondence& tau, const RationalityContext& ctx);

struct IsoLift {
  bool isomorphic = false;
  std::string reason;  // why the motives were declared not isomorphic
  std::optional<Correspondence> iso;      // (X, rho) -> (Y, sigma)
  std::optional<Correspondence> inverse;  // (Y, sigma) -> (X, rho)
};

/// Integral rational isomorphism (X, rho) -> (Y, sigma) built from an
/// invertible rational alpha mod 2^n, or "not isomorphic" when the ranks or
/// the middle markers differ.
IsoLift lift_isomorphism(const Correspondence& rho, const Correspondence& sigma, const Correspondence& alpha,
                         const RationalityContext& ctx);

struct IsoClass {
  std::vector<int> twists;  // sorted, with multiplicity
  std::optional<std::pair<int, std::vector<std::uint8_t>>> middle_marker;

  std::string to_string() const;
  friend bool operator==(const IsoClass&, const IsoClass&) = default;
  friend auto operator<=>(const IsoClass&, const IsoClass&) = default;
};

IsoClass classify(const Motive& m);

/// Integral bases of the image of an integral idempotent block: columns E
/// and rows Phi with rho_i = E * Phi and Phi * E = identity.
struct ImageBasis {
  Mat E;
  Mat Phi;
};
ImageBasis image_basis(const Mat& rho_block);

}  // namespace qmot
