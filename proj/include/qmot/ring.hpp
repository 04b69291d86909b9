#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace qmot {

using Int = mpz_class;

/// Floor-mod: result in [0, m) for m > 0.
Int mod_floor(const Int& a, const Int& m);

/// Representative of a mod m in (-m/2, m/2].
Int symmetric_mod(const Int& a, const Int& m);

struct Gcdex {
  Int g, s, t;  // s*a + t*b = g, g >= 0
};
Gcdex gcdex(const Int& a, const Int& b);

/// Coefficient ring: either Z or a residue ring Z/m with m >= 2.
class CoeffRing {
 public:
  static CoeffRing integers() { return CoeffRing(); }
  static CoeffRing residue(const Int& m);
  static CoeffRing pow2(int n);

  bool is_integers() const { return modulus_ == 0; }
  bool is_residue() const { return modulus_ != 0; }
  const Int& modulus() const { return modulus_; }

  /// n when the ring is Z/2^n, nothing otherwise.
  std::optional<int> two_exponent() const;

  Int canonical(const Int& x) const;
  bool is_zero(const Int& x) const { return canonical(x) == 0; }
  bool is_unit(const Int& x) const;
  Int inverse(const Int& x) const;

  /// True when reduction this -> target is a ring map.
  bool reduces_to(const CoeffRing& target) const;

  std::string to_string() const;
  static CoeffRing parse(const std::string& text);

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.modulus_ == b.modulus_;
  }

 private:
  CoeffRing() : modulus_(0) {}
  explicit CoeffRing(Int m) : modulus_(std::move(m)) {}

  Int modulus_;  // 0 encodes Z
};

}  // namespace qmot
