#include "qmot/split_chow.hpp"

#include <algorithm>

#include "qmot/error.hpp"

namespace qmot {

GaloisContext::GaloisContext(int generators, int degree_exponent)
    : generators_(generators), degree_exponent_(degree_exponent) {
  require(generators >= 0 && generators <= 16, "galois generator count out of range");
  require(degree_exponent >= 1, "degree exponent n must be at least 1");
  require(degree_exponent >= generators, "degree exponent n must be at least r");
}

std::vector<GroupElement> GaloisContext::generator_elements() const {
  std::vector<GroupElement> out;
  for (int k = 0; k < generators_; ++k) {
    GroupElement g(static_cast<std::size_t>(generators_), 0);
    g[static_cast<std::size_t>(k)] = 1;
    out.push_back(std::move(g));
  }
  return out;
}

std::vector<GroupElement> GaloisContext::elements() const {
  std::vector<GroupElement> out;
  for (unsigned mask = 0; mask < (1u << generators_); ++mask) {
    GroupElement g(static_cast<std::size_t>(generators_), 0);
    for (int k = 0; k < generators_; ++k) g[static_cast<std::size_t>(k)] = (mask >> k) & 1u;
    out.push_back(std::move(g));
  }
  return out;
}

SplitQuadric::SplitQuadric(int dim, std::vector<std::uint8_t> disc)
    : dim_(dim), disc_(std::move(disc)) {
  require(dim >= 1, "quadric dimension must be at least 1");
  for (auto b : disc_) require(b <= 1, "discriminant character must be a bit vector");
  if (!has_middle()) require(disc_trivial(), "odd-dimensional quadric must have trivial discriminant");
}

bool SplitQuadric::disc_trivial() const {
  return std::all_of(disc_.begin(), disc_.end(), [](std::uint8_t b) { return b == 0; });
}

bool SplitQuadric::swaps(const GroupElement& g) const {
  if (!has_middle()) return false;
  require(g.size() == disc_.size(), "group element length does not match the discriminant character");
  unsigned parity = 0;
  for (std::size_t k = 0; k < g.size(); ++k) parity ^= (g[k] & disc_[k]) & 1u;
  return parity == 1;
}

std::string SplitQuadric::label() const {
  std::string s = "D" + std::to_string(dim_) + "/disc=";
  for (auto b : disc_) s += b ? '1' : '0';
  if (disc_.empty()) s += "-";
  return s;
}

std::string Cell::name() const {
  switch (kind) {
    case Kind::L: return "L" + std::to_string(index);
    case Kind::LPrime: return "L" + std::to_string(index) + "'";
    case Kind::H: return "H" + std::to_string(index);
  }
  return {};
}

Cell Cell::parse(const std::string& name) {
  require(name.size() >= 2 && (name[0] == 'L' || name[0] == 'H'), "bad cell name: " + name);
  bool prime = name.back() == '\'';
  std::string digits = name.substr(1, name.size() - 1 - (prime ? 1 : 0));
  require(!digits.empty() && digits.size() < 4 &&
              std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }),
          "bad cell name: " + name);
  int idx = std::stoi(digits);
  if (name[0] == 'H') {
    require(!prime, "bad cell name: " + name);
    return {Kind::H, idx};
  }
  return {prime ? Kind::LPrime : Kind::L, idx};
}

int chow_rank(const SplitQuadric& x, int i) {
  require(i >= 0 && i <= x.dim(), "dimension " + std::to_string(i) + " out of range for " + x.label());
  return (x.has_middle() && i == x.half()) ? 2 : 1;
}

int cell_dimension(const SplitQuadric& x, const Cell& c) {
  return c.kind == Cell::Kind::H ? x.dim() - c.index : c.index;
}

std::vector<Cell> basis_cells(const SplitQuadric& x, int i) {
  const int D = x.dim();
  require(i >= 0 && i <= D, "dimension out of range");
  if (2 * i < D) return {{Cell::Kind::L, i}};
  if (2 * i > D) return {{Cell::Kind::H, D - i}};
  return {{Cell::Kind::L, i}, {Cell::Kind::LPrime, i}};
}

std::vector<Cell> all_cells(const SplitQuadric& x) {
  std::vector<Cell> out;
  for (int i = 0; i <= x.dim(); ++i) {
    auto b = basis_cells(x, i);
    out.insert(out.end(), b.begin(), b.end());
  }
  return out;
}

std::size_t dimension_offset(const SplitQuadric& x, int i) {
  std::size_t off = static_cast<std::size_t>(i);
  if (x.has_middle() && i > x.half()) ++off;
  return off;
}

std::size_t cell_position(const SplitQuadric& x, const Cell& c) {
  int i = cell_dimension(x, c);
  auto b = basis_cells(x, i);
  for (std::size_t k = 0; k < b.size(); ++k)
    if (b[k] == c) return dimension_offset(x, i) + k;
  invalid("cell " + c.name() + " is not a basis cell of " + x.label());
}

Cycle::Cycle(SplitQuadric x, CoeffRing ring)
    : quadric_(std::move(x)), ring_(std::move(ring)), coords_(quadric_.basis_size(), Int(0)) {}

Cycle::Cycle(SplitQuadric x, CoeffRing ring, std::vector<Int> coords)
    : quadric_(std::move(x)), ring_(std::move(ring)), coords_(std::move(coords)) {
  require(coords_.size() == quadric_.basis_size(), "cycle coordinate count mismatch");
  for (auto& c : coords_) c = ring_.canonical(c);
}

Cycle Cycle::cell(const SplitQuadric& x, const CoeffRing& ring, const Cell& c, const Int& coef) {
  Cycle out(x, ring);
  out.coords_[cell_position(x, c)] = ring.canonical(coef);
  return out;
}

Cycle Cycle::h_power(const SplitQuadric& x, const CoeffRing& ring, int a) {
  const int D = x.dim();
  require(a >= 0 && a <= D, "h power out of range");
  const int i = D - a;  // dimension of h^a
  if (2 * i > D) return cell(x, ring, {Cell::Kind::H, a});
  if (2 * i < D) return cell(x, ring, {Cell::Kind::L, i}, 2);
  return cell(x, ring, {Cell::Kind::L, i}) + cell(x, ring, {Cell::Kind::LPrime, i});
}

std::vector<Int> Cycle::component(int i) const {
  auto off = dimension_offset(quadric_, i);
  auto n = static_cast<std::size_t>(chow_rank(quadric_, i));
  return {coords_.begin() + static_cast<std::ptrdiff_t>(off),
          coords_.begin() + static_cast<std::ptrdiff_t>(off + n)};
}

bool Cycle::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Int& c) { return c == 0; });
}

bool Cycle::concentrated_in(int i) const {
  auto off = dimension_offset(quadric_, i);
  auto n = static_cast<std::size_t>(chow_rank(quadric_, i));
  for (std::size_t k = 0; k < coords_.size(); ++k)
    if ((k < off || k >= off + n) && coords_[k] != 0) return false;
  return true;
}

Cycle Cycle::operator+(const Cycle& o) const {
  require(quadric_ == o.quadric_ && ring_ == o.ring_, "cycle sum: mismatched quadric or ring");
  std::vector<Int> c(coords_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coords_[k] + o.coords_[k];
  return Cycle(quadric_, ring_, std::move(c));
}

Cycle Cycle::operator-(const Cycle& o) const { return *this + o.scaled(-1); }

Cycle Cycle::scaled(const Int& s) const {
  std::vector<Int> c(coords_.size());
  for (std::size_t k = 0; k < c.size(); ++k) c[k] = coords_[k] * s;
  return Cycle(quadric_, ring_, std::move(c));
}

Cycle h_mult(const Cycle& x) {
  const auto& X = x.quadric();
  Cycle out(X, x.ring());
  for (const auto& c : all_cells(X)) {
    const Int& coef = x.coeff(c);
    if (coef == 0) continue;
    if (c.kind == Cell::Kind::H) {
      out = out + Cycle::h_power(X, x.ring(), c.index + 1).scaled(coef);
    } else if (c.index > 0) {
      out = out + Cycle::cell(X, x.ring(), {Cell::Kind::L, c.index - 1}, coef);
    }
  }
  return out;
}

Int degree(const Cycle& x) {
  require(x.concentrated_in(0), "degree is only defined on dimension-0 cycles");
  return x.coeff({Cell::Kind::L, 0});
}

Mat gram(const SplitQuadric& x, int i, const CoeffRing& ring) {
  const int D = x.dim();
  require(i >= 0 && i <= D, "dimension out of range");
  if (!(x.has_middle() && 2 * i == D)) return Mat::identity(ring, 1);
  // Middle: <L,L> = <L',L'> = 1 and <L,L'> = 0 when d is even; swapped when d is odd.
  if (x.half() % 2 == 0) return Mat::identity(ring, 2);
  return Mat(ring, 2, 2, {0, 1, 1, 0});
}

Int pairing(const Cycle& x, const Cycle& u) {
  require(x.quadric() == u.quadric() && x.ring() == u.ring(), "pairing: mismatched quadric or ring");
  const auto& X = x.quadric();
  const int D = X.dim();
  // locate the dimension of x; a zero cycle pairs to 0 with anything
  int i = -1;
  for (int k = 0; k <= D && i < 0; ++k) {
    auto comp = x.component(k);
    if (std::any_of(comp.begin(), comp.end(), [](const Int& c) { return c != 0; })) i = k;
  }
  if (i < 0) return 0;
  require(x.concentrated_in(i), "pairing: first argument is not homogeneous");
  require(u.concentrated_in(D - i), "pairing: dimensions are not complementary");
  Mat g = gram(X, i, x.ring());
  auto a = x.component(i);
  auto b = u.component(D - i);
  Int acc = 0;
  for (std::size_t r = 0; r < a.size(); ++r)
    for (std::size_t c = 0; c < b.size(); ++c) acc += a[r] * g(r, c) * b[c];
  return x.ring().canonical(acc);
}

Mat galois_matrix(const SplitQuadric& x, int i, const GroupElement& g, const CoeffRing& ring) {
  int n = chow_rank(x, i);
  if (n == 2 && x.swaps(g)) return Mat(ring, 2, 2, {0, 1, 1, 0});
  return Mat::identity(ring, static_cast<std::size_t>(n));
}

Cycle gal_act(const GroupElement& g, const Cycle& x) {
  const auto& X = x.quadric();
  if (!X.swaps(g)) return x;
  std::vector<Int> c = x.coords();
  auto off = dimension_offset(X, X.half());
  std::swap(c[off], c[off + 1]);
  return Cycle(X, x.ring(), std::move(c));
}

}  // namespace qmot
