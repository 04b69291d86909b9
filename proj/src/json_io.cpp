#include "qmot/json_io.hpp"

#include <algorithm>

#include "qmot/error.hpp"

namespace qmot::json_io {

namespace {

const json& field(const json& j, const char* key) {
  require(j.is_object(), std::string("expected a JSON object holding \"") + key + "\"");
  auto it = j.find(key);
  require(it != j.end(), std::string("missing field \"") + key + "\"");
  return *it;
}

int int_field(const json& j, const char* key) {
  const json& v = field(j, key);
  require(v.is_number_integer(), std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

json int_to_json(const Int& x) {
  if (x.fits_slong_p()) return json(static_cast<std::int64_t>(x.get_si()));
  return json(x.get_str());
}

Int int_from_json(const json& j) {
  if (j.is_number_unsigned()) return Int(std::to_string(j.get<std::uint64_t>()));
  if (j.is_number_integer()) return Int(std::to_string(j.get<std::int64_t>()));
  require(j.is_string(), "matrix entries must be integers or decimal strings");
  Int x;
  require(x.set_str(j.get<std::string>(), 10) == 0, "bad integer literal \"" + j.get<std::string>() + "\"");
  return x;
}

std::vector<std::uint8_t> bits_from_json(const json& j) {
  require(j.is_array(), "disc must be an array of bits");
  std::vector<std::uint8_t> out;
  for (const auto& b : j) {
    require(b.is_number_integer() && (b.get<int>() == 0 || b.get<int>() == 1), "disc entries must be 0 or 1");
    out.push_back(static_cast<std::uint8_t>(b.get<int>()));
  }
  return out;
}

json bits_to_json(const std::vector<std::uint8_t>& bits) {
  json a = json::array();
  for (auto b : bits) a.push_back(static_cast<int>(b));
  return a;
}

}  // namespace

json to_json(const CoeffRing& r) { return r.to_string(); }

CoeffRing ring_from_json(const json& j) {
  require(j.is_string(), "ring must be a string such as \"Z\" or \"Z/2^3\"");
  return CoeffRing::parse(j.get<std::string>());
}

json to_json(const Mat& m) {
  json e = json::array();
  for (const auto& x : m.entries()) e.push_back(int_to_json(x));
  return {{"ring", to_json(m.ring())}, {"rows", m.rows()}, {"cols", m.cols()}, {"entries", e}};
}

Mat mat_from_json(const json& j) {
  CoeffRing ring = ring_from_json(field(j, "ring"));
  int rows = int_field(j, "rows"), cols = int_field(j, "cols");
  require(rows >= 0 && cols >= 0, "matrix shape must be nonnegative");
  const json& e = field(j, "entries");
  require(e.is_array() && e.size() == static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols),
          "matrix entries must be a row-major array of rows*cols integers");
  std::vector<Int> v;
  for (const auto& x : e) v.push_back(int_from_json(x));
  return Mat(ring, static_cast<std::size_t>(rows), static_cast<std::size_t>(cols), std::move(v));
}

json to_json(const SplitQuadric& q) { return {{"dim", q.dim()}, {"disc", bits_to_json(q.disc())}}; }

SplitQuadric quadric_from_json(const json& j, std::optional<int> r) {
  int dim = int_field(j, "dim");
  std::vector<std::uint8_t> disc;
  if (j.contains("disc")) {
    disc = bits_from_json(j.at("disc"));
  } else if (r) {
    disc.assign(static_cast<std::size_t>(*r), 0);
  }
  if (r) require(static_cast<int>(disc.size()) == *r, "disc length must equal galois generators r");
  return SplitQuadric(dim, std::move(disc));
}

json to_json(const GaloisContext& g) {
  return {{"generators", g.generators()}, {"degree_exponent", g.degree_exponent()}};
}

GaloisContext galois_from_json(const json& j) {
  return GaloisContext(int_field(j, "generators"), int_field(j, "degree_exponent"));
}

json to_json(const Cycle& c) {
  json cells = json::object();
  for (const auto& cell : all_cells(c.quadric())) {
    const Int& v = c.coeff(cell);
    if (v != 0) cells[cell.name()] = int_to_json(v);
  }
  return {{"quadric", to_json(c.quadric())}, {"ring", to_json(c.ring())}, {"cells", cells}};
}

Cycle cycle_from_json(const json& j, const SplitQuadric& x, const CoeffRing& ring) {
  const json& cells = field(j, "cells");
  require(cells.is_object(), "cells must be an object");
  Cycle out(x, ring);
  for (const auto& [name, v] : cells.items()) out = out + Cycle::cell(x, ring, Cell::parse(name), int_from_json(v));
  return out;
}

json to_json(const Correspondence& c) {
  json blocks = json::object();
  for (int i = 0; i < c.block_count(); ++i) {
    const Mat& m = c.block(i);
    json rows = json::array();
    for (std::size_t r = 0; r < m.rows(); ++r) {
      json row = json::array();
      for (std::size_t k = 0; k < m.cols(); ++k) row.push_back(int_to_json(m(r, k)));
      rows.push_back(row);
    }
    blocks[std::to_string(i)] = rows;
  }
  return {{"source", to_json(c.source())}, {"target", to_json(c.target())}, {"ring", to_json(c.ring())},
          {"blocks", blocks}};
}

Correspondence correspondence_from_json(const json& j, std::optional<int> r) {
  SplitQuadric x = quadric_from_json(field(j, "source"), r);
  SplitQuadric y = quadric_from_json(field(j, "target"), r);
  CoeffRing ring = ring_from_json(field(j, "ring"));
  const json& blocks = field(j, "blocks");
  require(blocks.is_object(), "blocks must be an object keyed by dimension");
  auto out = Correspondence::zero(x, y, ring);
  for (const auto& [key, rows] : blocks.items()) {
    require(!key.empty() && key.size() < 4 && std::all_of(key.begin(), key.end(), [](char ch) { return ch >= '0' && ch <= '9'; }),
            "block key \"" + key + "\" is not a dimension");
    int i = std::stoi(key);
    require(i < out.block_count(), "block " + key + " is outside the degree-0 range");
    const Mat& shape = out.block(i);
    require(rows.is_array() && rows.size() == shape.rows(), "block " + key + " has the wrong number of rows");
    std::vector<Int> e;
    for (const auto& row : rows) {
      require(row.is_array() && row.size() == shape.cols(), "block " + key + " has the wrong number of columns");
      for (const auto& v : row) e.push_back(int_from_json(v));
    }
    out = out.with_block(i, Mat(ring, shape.rows(), shape.cols(), std::move(e)));
  }
  return out;
}

json to_json(const RationalityContext& ctx) {
  json extra = json::array();
  for (const auto& g : ctx.extra_generators()) extra.push_back(to_json(g));
  return {{"pair", json::array({to_json(ctx.x()), to_json(ctx.y())})},
          {"galois", to_json(ctx.galois())},
          {"extra_generators", extra}};
}

RationalityContext context_from_json(const json& j) {
  GaloisContext galois = galois_from_json(field(j, "galois"));
  const json& pair = field(j, "pair");
  require(pair.is_array() && pair.size() == 2, "pair must hold two quadrics");
  SplitQuadric x = quadric_from_json(pair[0], galois.generators());
  SplitQuadric y = quadric_from_json(pair[1], galois.generators());
  std::vector<Correspondence> extra;
  if (j.contains("extra_generators")) {
    const json& e = j.at("extra_generators");
    require(e.is_array(), "extra_generators must be an array");
    for (const auto& g : e) extra.push_back(correspondence_from_json(g, galois.generators()));
  }
  if (j.contains("witt")) {
    const json& w = j.at("witt");
    require(w.is_array() && w.size() == 2 && w[0].is_number_integer() && w[1].is_number_integer(),
            "witt must be [w_x, w_y]");
    auto wg = witt_generators(x, w[0].get<int>(), y, w[1].get<int>(), galois.coefficient_ring());
    extra.insert(extra.end(), wg.begin(), wg.end());
  }
  return RationalityContext(x, y, galois, std::move(extra));
}

json to_json(const IsoClass& c) {
  json marker = nullptr;
  if (c.middle_marker) marker = {{"dim", c.middle_marker->first}, {"disc", bits_to_json(c.middle_marker->second)}};
  return {{"twists", c.twists}, {"middle_marker", marker}};
}

json to_json(const IsoLift& r) {
  json out = {{"result", r.isomorphic ? "isomorphic" : "not isomorphic"}};
  if (!r.isomorphic) out["reason"] = r.reason;
  if (r.iso) out["iso"] = to_json(*r.iso);
  if (r.inverse) out["inverse"] = to_json(*r.inverse);
  return out;
}

json to_json(const BijectionReport& r) {
  auto verdict = [](bool ok) { return ok ? "pass" : "fail"; };
  json shapes = json::array();
  for (const auto& s : r.shapes) {
    json witnesses = json::array();
    for (const auto& w : s.witnesses) witnesses.push_back({{"class", w.iso_class}, {"members", w.members}});
    shapes.push_back({{"dim", s.quadric.dim()},
                      {"disc", bits_to_json(s.quadric.disc())},
                      {"witt_index", s.witt_index},
                      {"idempotents", s.idempotents},
                      {"mod2_classes", s.mod2_classes},
                      {"integral_classes", s.integral_classes},
                      {"pairs", s.pairs},
                      {"isomorphic_pairs", s.isomorphic_pairs},
                      {"surjectivity", verdict(s.surjectivity)},
                      {"injectivity", verdict(s.injectivity)},
                      {"witnesses", witnesses},
                      {"failures", s.failures}});
  }
  json cross = json::array();
  for (const auto& c : r.cross)
    cross.push_back({{"level", c.level},
                     {"pairs", c.pairs},
                     {"isomorphic_pairs", c.isomorphic_pairs},
                     {"marker_mismatch_pairs", c.marker_mismatch_pairs},
                     {"agreement", verdict(c.agreement)},
                     {"failures", c.failures}});
  return {{"dim_max", r.dim_max}, {"n", r.n},        {"galois_r", r.galois_r},
          {"shapes", shapes},     {"cross", cross}, {"verdict", verdict(r.pass)}};
}

}  // namespace qmot::json_io
