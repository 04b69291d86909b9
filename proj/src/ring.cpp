#include "qmot/ring.hpp"

#include <cctype>

#include "qmot/error.hpp"

namespace qmot {

Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

Int symmetric_mod(const Int& a, const Int& m) {
  Int r = mod_floor(a, m);
  if (2 * r > m) r -= m;
  return r;
}

Gcdex gcdex(const Int& a, const Int& b) {
  Gcdex out;
  mpz_gcdext(out.g.get_mpz_t(), out.s.get_mpz_t(), out.t.get_mpz_t(),
             a.get_mpz_t(), b.get_mpz_t());
  return out;
}

CoeffRing CoeffRing::residue(const Int& m) {
  require(m >= 2, "residue modulus must be at least 2, got " + m.get_str());
  return CoeffRing(m);
}

CoeffRing CoeffRing::pow2(int n) {
  require(n >= 1, "exponent of 2 must be positive");
  Int m;
  mpz_ui_pow_ui(m.get_mpz_t(), 2, static_cast<unsigned long>(n));
  return CoeffRing(m);
}

std::optional<int> CoeffRing::two_exponent() const {
  if (is_integers()) return std::nullopt;
  if (mpz_popcount(modulus_.get_mpz_t()) != 1) return std::nullopt;
  return static_cast<int>(mpz_scan1(modulus_.get_mpz_t(), 0));
}

Int CoeffRing::canonical(const Int& x) const {
  return is_integers() ? x : mod_floor(x, modulus_);
}

bool CoeffRing::is_unit(const Int& x) const {
  if (is_integers()) return x == 1 || x == -1;
  Int g;
  mpz_gcd(g.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return g == 1;
}

Int CoeffRing::inverse(const Int& x) const {
  require(is_unit(x), x.get_str() + " is not a unit in " + to_string());
  if (is_integers()) return x;
  Int inv;
  mpz_invert(inv.get_mpz_t(), x.get_mpz_t(), modulus_.get_mpz_t());
  return canonical(inv);
}

bool CoeffRing::reduces_to(const CoeffRing& target) const {
  if (target.is_integers()) return is_integers();
  if (is_integers()) return true;
  return mpz_divisible_p(modulus_.get_mpz_t(), target.modulus_.get_mpz_t()) != 0;
}

std::string CoeffRing::to_string() const {
  if (is_integers()) return "Z";
  if (auto n = two_exponent()) return "Z/2^" + std::to_string(*n);
  return "Z/" + modulus_.get_str();
}

CoeffRing CoeffRing::parse(const std::string& text) {
  if (text == "Z") return integers();
  auto digits = [&](const std::string& s) {
    require(!s.empty() && s.size() < 40, "bad ring: " + text);
    for (char c : s)
      require(std::isdigit(static_cast<unsigned char>(c)) != 0, "bad ring: " + text);
    return Int(s);
  };
  require(text.rfind("Z/", 0) == 0, "bad ring: " + text);
  std::string rest = text.substr(2);
  if (rest.rfind("2^", 0) == 0) {
    Int n = digits(rest.substr(2));
    require(n >= 1 && n <= 4096, "bad ring exponent: " + text);
    return pow2(static_cast<int>(n.get_si()));
  }
  return residue(digits(rest));
}

}  // namespace qmot
