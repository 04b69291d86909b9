#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "qmot/qmot.h"

using nlohmann::json;

namespace {

struct CtxFree {
  void operator()(qmot_context* c) const { qmot_context_free(c); }
};
struct CorrFree {
  void operator()(qmot_correspondence* c) const { qmot_correspondence_free(c); }
};
using CtxPtr = std::unique_ptr<qmot_context, CtxFree>;
using CorrPtr = std::unique_ptr<qmot_correspondence, CorrFree>;

// Carries a status out of the command bodies.
struct Failure {
  int code;
  std::string message;
};

int exit_code(qmot_status s) { return static_cast<int>(s); }

void check(qmot_status s) {
  if (s != QMOT_OK) throw Failure{exit_code(s), qmot_last_error()};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  qmot_string_free(s);
  return out;
}

json read_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Failure{2, "cannot open input file " + path};
  std::stringstream buf;
  buf << in.rdbuf();
  try {
    return json::parse(buf.str());
  } catch (const json::exception& e) {
    throw Failure{2, std::string("input is not valid JSON: ") + e.what()};
  }
}

const json& member(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw Failure{2, std::string("input lacks \"") + key + "\""};
  return j.at(key);
}

CtxPtr make_context(const json& j) {
  qmot_context* c = nullptr;
  check(qmot_context_from_json(j.dump().c_str(), &c));
  return CtxPtr(c);
}

CorrPtr make_corr(const json& j) {
  qmot_correspondence* c = nullptr;
  check(qmot_correspondence_from_json(j.dump().c_str(), &c));
  return CorrPtr(c);
}

json corr_json(const qmot_correspondence* c) {
  char* s = nullptr;
  check(qmot_correspondence_to_json(c, &s));
  return json::parse(take(s));
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

// classify accepts either a full context or just the galois data.
CtxPtr context_for(const json& input, const json& projector) {
  if (input.contains("context")) return make_context(input.at("context"));
  const json& src = member(projector, "source");
  return make_context({{"pair", json::array({src, src})}, {"galois", member(input, "galois")}});
}

int run_verify(int dim_max, int n, int r, std::optional<int> witt, std::optional<unsigned long long> seed) {
  std::cerr << "verify: dim_max=" << dim_max << " n=" << n << " r=" << r << "\n";
  char* out = nullptr;
  qmot_status s = qmot_verify_json(dim_max, n, r, witt.value_or(-1), seed ? 1 : 0, seed.value_or(0), &out);
  if (s != QMOT_OK && s != QMOT_VERDICT_FAIL) throw Failure{exit_code(s), qmot_last_error()};
  json report = json::parse(take(out));
  emit(report);
  std::cerr << "verdict: " << report.at("verdict").get<std::string>() << "\n";
  return exit_code(s);
}

int run_lift_projector(const json& input) {
  auto ctx = make_context(member(input, "context"));
  auto p = make_corr(member(input, "projector"));
  json in_proj = member(input, "projector");
  CorrPtr tau;
  if (in_proj.at("ring") == "Z/2^1" || in_proj.at("ring") == "Z/2") {
    qmot_correspondence* t = nullptr;
    check(qmot_lift_mod2_to_mod2n(p.get(), ctx.get(), &t));
    tau.reset(t);
  } else {
    tau = std::move(p);
  }
  qmot_correspondence* rho = nullptr;
  check(qmot_lift_projector(tau.get(), ctx.get(), &rho));
  CorrPtr rho_ptr(rho);
  char* cls = nullptr;
  check(qmot_classify_json(rho, ctx.get(), &cls));
  emit({{"lifted_mod_2n", corr_json(tau.get())}, {"projector", corr_json(rho)}, {"iso_class", json::parse(take(cls))}});
  return 0;
}

int run_lift_iso(const json& input) {
  auto ctx = make_context(member(input, "context"));
  auto rho = make_corr(member(input, "rho"));
  auto sigma = make_corr(member(input, "sigma"));
  auto alpha = make_corr(member(input, "alpha"));
  int isomorphic = 0;
  qmot_correspondence* iso = nullptr;
  qmot_correspondence* inv = nullptr;
  char* reason = nullptr;
  check(qmot_lift_isomorphism(rho.get(), sigma.get(), alpha.get(), ctx.get(), &isomorphic, &iso, &inv, &reason));
  CorrPtr iso_ptr(iso), inv_ptr(inv);
  json out = {{"result", isomorphic ? "isomorphic" : "not isomorphic"}};
  std::string why = take(reason);
  if (!isomorphic) out["reason"] = why;
  if (iso) out["iso"] = corr_json(iso);
  if (inv) out["inverse"] = corr_json(inv);
  emit(out);
  return 0;
}

int run_classify(const json& input) {
  const json& pj = member(input, "projector");
  auto ctx = context_for(input, pj);
  auto p = make_corr(pj);
  char* cls = nullptr;
  check(qmot_classify_json(p.get(), ctx.get(), &cls));
  emit(json::parse(take(cls)));
  return 0;
}

std::vector<int> parse_bits(const std::string& text) {
  std::vector<int> out;
  for (char ch : text) {
    if (ch == ',' || ch == ' ') continue;
    if (ch != '0' && ch != '1') throw Failure{2, "--disc must be a bit string such as 01 or 0,1"};
    out.push_back(ch - '0');
  }
  return out;
}

int run_enumerate(int dim, const std::string& disc_text, std::optional<int> r_opt, std::optional<int> n_opt, int witt) {
  auto disc = parse_bits(disc_text);
  int r = r_opt.value_or(static_cast<int>(disc.size()));
  if (disc.empty()) disc.assign(static_cast<std::size_t>(r), 0);
  int n = n_opt.value_or(std::max(1, r));
  json q = {{"dim", dim}, {"disc", disc}};
  auto ctx = make_context({{"pair", {q, q}},
                           {"galois", {{"generators", r}, {"degree_exponent", n}}},
                           {"witt", {witt, witt}}});
  char* out = nullptr;
  check(qmot_enumerate_idempotents_json(ctx.get(), &out));
  json j = json::parse(take(out));
  j["witt_index"] = witt;
  emit(j);
  std::cerr << "enumerate: " << j.at("count").get<std::size_t>() << " idempotents\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Lifting motives of split quadrics between integral and mod-2 coefficients"};
  app.require_subcommand(1);

  int dim_max = 2, n = 2, galois_r = 1;
  std::optional<int> witt;
  std::optional<unsigned long long> seed;
  auto* verify = app.add_subcommand("verify", "exhaustive reduction-bijection check");
  verify->add_option("--dim-max", dim_max, "largest quadric dimension (1..4)");
  verify->add_option("--n", n, "coefficient exponent: Z/2^n (1..4)");
  verify->add_option("--galois-r", galois_r, "number of commuting involutions (r <= n)");
  verify->add_option("--witt", witt, "only this isotropy level");
  verify->add_option("--seed", seed, "also run a seeded random algebra sample");

  std::string input;
  auto* lift_proj = app.add_subcommand("lift-projector", "lift a rational idempotent to an integral one");
  lift_proj->add_option("--input", input, "JSON file {context, projector}")->required();
  auto* lift_iso = app.add_subcommand("lift-iso", "lift a mod 2^n isomorphism to an integral one");
  lift_iso->add_option("--input", input, "JSON file {context, rho, sigma, alpha}")->required();
  auto* classify = app.add_subcommand("classify", "isomorphism class of a motive");
  classify->add_option("--input", input, "JSON file {context | galois, projector}")->required();

  int dim = 2, enum_witt = 0;
  std::string disc;
  std::optional<int> enum_r, enum_n;
  auto* enumerate = app.add_subcommand("enumerate", "rational Gal-invariant idempotents mod 2");
  enumerate->add_option("--dim", dim, "quadric dimension")->required();
  enumerate->add_option("--disc", disc, "discriminant bits, e.g. 10");
  enumerate->add_option("--galois-r", enum_r, "number of involutions (default: length of --disc)");
  enumerate->add_option("--n", enum_n, "coefficient exponent (default: max(1, r))");
  enumerate->add_option("--witt", enum_witt, "isotropy level of the quadric");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*verify) return run_verify(dim_max, n, galois_r, witt, seed);
    if (*lift_proj) return run_lift_projector(read_input(input));
    if (*lift_iso) return run_lift_iso(read_input(input));
    if (*classify) return run_classify(read_input(input));
    if (*enumerate) return run_enumerate(dim, disc, enum_r, enum_n, enum_witt);
  } catch (const Failure& f) {
    std::cerr << "error: " << f.message << "\n";
    return f.code;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
