#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "qmot/qmot.h"

using nlohmann::json;

namespace {

json quadric(int dim, std::vector<int> disc) { return {{"dim", dim}, {"disc", disc}}; }

json context(int dim, std::vector<int> disc, int n) {
  return {{"pair", {quadric(dim, disc), quadric(dim, disc)}},
          {"galois", {{"generators", disc.size()}, {"degree_exponent", n}}}};
}

json surface_corr(const std::string& ring, std::vector<int> disc, json middle, int a = 1, int b = 1) {
  return {{"source", quadric(2, disc)},
          {"target", quadric(2, disc)},
          {"ring", ring},
          {"blocks", {{"0", {{a}}}, {"1", middle}, {"2", {{b}}}}}};
}

std::string take(char* s) {
  std::string out = s ? s : "";
  qmot_string_free(s);
  return out;
}

qmot_context* make_context(const json& j) {
  qmot_context* c = nullptr;
  REQUIRE(qmot_context_from_json(j.dump().c_str(), &c) == QMOT_OK);
  return c;
}

qmot_correspondence* make_corr(const json& j) {
  qmot_correspondence* c = nullptr;
  REQUIRE(qmot_correspondence_from_json(j.dump().c_str(), &c) == QMOT_OK);
  return c;
}

json corr_json(const qmot_correspondence* c) {
  char* s = nullptr;
  REQUIRE(qmot_correspondence_to_json(c, &s) == QMOT_OK);
  return json::parse(take(s));
}

struct Run {
  int code;
  json out;
};

std::string scratch(const std::string& name) {
  return std::string(QMOT_TEST_SCRATCH) + "/" + name;
}

Run cli(const std::string& args, const std::string& name) {
  std::string out_path = scratch(name + ".out");
  std::string cmd = std::string(QMOT_CLI_PATH) + " " + args + " > " + out_path + " 2> " + scratch(name + ".err");
  int status = std::system(cmd.c_str());
  Run r{WIFEXITED(status) ? WEXITSTATUS(status) : -1, nullptr};
  std::ifstream in(out_path);
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (!text.empty()) r.out = json::parse(text, nullptr, false);
  return r;
}

std::string write_input(const std::string& name, const std::string& text) {
  std::string path = scratch(name + ".json");
  std::ofstream(path) << text;
  return path;
}

}  // namespace

TEST_CASE("correspondence JSON round-trip") {
  json in = surface_corr("Z/2^2", {1}, {{3, 1}, {1, 3}}, 1, 3);
  auto* c = make_corr(in);
  json out = corr_json(c);
  CHECK(out == in);
  qmot_correspondence_free(c);

  json big = surface_corr("Z", {0}, {{"123456789012345678901234567890", 0}, {0, 1}});
  auto* b = make_corr(big);
  CHECK(corr_json(b)["blocks"]["1"][0][0] == "123456789012345678901234567890");
  qmot_correspondence_free(b);
}

TEST_CASE("context JSON round-trip") {
  auto* ctx = make_context(context(2, {1, 0}, 2));
  char* s = nullptr;
  REQUIRE(qmot_context_to_json(ctx, &s) == QMOT_OK);
  json j = json::parse(take(s));
  CHECK(j["pair"][0] == quadric(2, {1, 0}));
  CHECK(j["galois"]["degree_exponent"] == 2);
  auto* again = make_context(j);
  qmot_context_free(again);
  qmot_context_free(ctx);
}

TEST_CASE("invalid input is reported, not thrown") {
  qmot_correspondence* c = nullptr;
  CHECK(qmot_correspondence_from_json("{not json", &c) == QMOT_INVALID_INPUT);
  CHECK(std::string(qmot_last_error()).size() > 0);
  CHECK(c == nullptr);
  CHECK(qmot_correspondence_from_json(nullptr, &c) == QMOT_INVALID_INPUT);
  json bad = surface_corr("Z", {0}, {{1, 0, 0}, {0, 1, 0}});
  CHECK(qmot_correspondence_from_json(bad.dump().c_str(), &c) == QMOT_INVALID_INPUT);
  json ring = surface_corr("Z/3^2", {0}, {{1, 0}, {0, 1}});
  CHECK(qmot_correspondence_from_json(ring.dump().c_str(), &c) == QMOT_INVALID_INPUT);

  qmot_context* ctx = nullptr;
  json short_disc = context(2, {1}, 2);
  short_disc["galois"]["generators"] = 2;
  CHECK(qmot_context_from_json(short_disc.dump().c_str(), &ctx) == QMOT_INVALID_INPUT);

  char* out = nullptr;
  CHECK(qmot_classify_json(nullptr, nullptr, &out) == QMOT_INVALID_INPUT);
  CHECK(qmot_verify_json(9, 2, 1, -1, 0, 0, &out) == QMOT_INVALID_INPUT);
}

TEST_CASE("lifting through the C API") {
  auto* ctx = make_context(context(2, {1, 0}, 2));
  auto* alpha = make_corr(surface_corr("Z/2^2", {1, 0}, {{0, 1}, {1, 0}}));
  auto* rho = make_corr(surface_corr("Z", {1, 0}, {{1, 0}, {0, 1}}));
  int iso_flag = 0;
  qmot_correspondence* iso = nullptr;
  qmot_correspondence* inv = nullptr;
  char* reason = nullptr;
  REQUIRE(qmot_lift_isomorphism(rho, rho, alpha, ctx, &iso_flag, &iso, &inv, &reason) == QMOT_OK);
  CHECK(iso_flag == 1);
  REQUIRE(iso != nullptr);
  CHECK(corr_json(iso)["blocks"]["1"] == json({{1, 0}, {0, 1}}));
  take(reason);
  qmot_correspondence_free(iso);
  qmot_correspondence_free(inv);

  char* cls = nullptr;
  REQUIRE(qmot_classify_json(rho, ctx, &cls) == QMOT_OK);
  json c = json::parse(take(cls));
  CHECK(c["twists"] == json({0, 2}));
  CHECK(c["middle_marker"]["dim"] == 1);

  auto* split = make_context({{"pair", {quadric(2, {0}), quadric(2, {0})}},
                              {"galois", {{"generators", 1}, {"degree_exponent", 2}}},
                              {"witt", {2, 2}}});
  auto* tau = make_corr(surface_corr("Z/2^2", {0}, {{3, 1}, {2, 2}}, 0, 0));
  qmot_correspondence* lifted = nullptr;
  REQUIRE(qmot_lift_projector(tau, split, &lifted) == QMOT_OK);
  CHECK(corr_json(lifted)["blocks"]["1"] == json({{-1, 1}, {-2, 2}}));

  auto* pi = make_corr(surface_corr("Z/2", {0}, {{1, 1}, {0, 0}}, 0, 0));
  qmot_correspondence* up = nullptr;
  REQUIRE(qmot_lift_mod2_to_mod2n(pi, split, &up) == QMOT_OK);
  CHECK(corr_json(up)["ring"] == "Z/2^2");

  qmot_correspondence* none = nullptr;
  CHECK(qmot_lift_projector(alpha, ctx, &none) == QMOT_INVALID_INPUT);

  for (auto* p : {alpha, rho, tau, lifted, pi, up}) qmot_correspondence_free(p);
  qmot_context_free(ctx);
  qmot_context_free(split);
}

TEST_CASE("enumeration and verification through the C API") {
  auto* ctx = make_context(context(2, {1}, 1));
  char* out = nullptr;
  REQUIRE(qmot_enumerate_idempotents_json(ctx, &out) == QMOT_OK);
  json e = json::parse(take(out));
  CHECK(e["count"] == e["idempotents"].size());
  qmot_context_free(ctx);

  REQUIRE(qmot_verify_json(1, 1, 1, -1, 1, 7, &out) == QMOT_OK);
  json v = json::parse(take(out));
  CHECK(v["verdict"] == "pass");
  CHECK(v["algebra_sample"]["failures"] == 0);
}

TEST_CASE("command line exit codes") {
  auto ok = cli("verify --dim-max 1 --n 1 --galois-r 1", "verify");
  CHECK(ok.code == 0);
  CHECK(ok.out["verdict"] == "pass");

  auto three = cli("verify --dim-max 2 --n 3 --galois-r 1", "verify_n3");
  CHECK(three.code == 0);
  CHECK(three.out["verdict"] == "pass");

  auto first = cli("verify --dim-max 2 --n 2 --galois-r 2 --seed 5", "det_a");
  auto second = cli("verify --dim-max 2 --n 2 --galois-r 2 --seed 5", "det_b");
  CHECK(first.code == 0);
  CHECK(first.out.dump() == second.out.dump());

  CHECK(cli("verify --dim-max 7", "too_big").code == 2);
  CHECK(cli("frobnicate", "unknown").code == 2);
  CHECK(cli("classify --input " + scratch("missing.json"), "missing").code == 2);
  CHECK(cli("classify --input " + write_input("garbage", "{oops"), "garbage").code == 2);

  json not_idem = {{"galois", {{"generators", 1}, {"degree_exponent", 2}}},
                   {"projector", surface_corr("Z", {0}, {{1, 1}, {1, 1}})}};
  CHECK(cli("classify --input " + write_input("not_idem", not_idem.dump()), "not_idem").code == 2);

  json classify_in = {{"galois", {{"generators", 1}, {"degree_exponent", 2}}},
                      {"projector", surface_corr("Z", {1}, {{1, 0}, {0, 1}})}};
  auto cls = cli("classify --input " + write_input("classify", classify_in.dump()), "classify");
  CHECK(cls.code == 0);
  CHECK(cls.out["twists"] == json({0, 2}));

  json proj_in = {{"context", context(2, {0}, 2)}, {"projector", surface_corr("Z/2", {0}, {{1, 0}, {0, 1}})}};
  auto proj = cli("lift-projector --input " + write_input("lift_projector", proj_in.dump()), "lift_projector");
  CHECK(proj.code == 0);
  CHECK(proj.out["projector"]["ring"] == "Z");
  auto* back = make_corr(proj.out["projector"]);
  CHECK(corr_json(back) == proj.out["projector"]);
  qmot_correspondence_free(back);

  json iso_in = {{"context", context(2, {1}, 2)},
                 {"rho", surface_corr("Z", {1}, {{1, 0}, {0, 1}})},
                 {"sigma", surface_corr("Z", {1}, {{0, 0}, {0, 0}})},
                 {"alpha", surface_corr("Z/2^2", {1}, {{0, 0}, {0, 0}})}};
  auto iso = cli("lift-iso --input " + write_input("lift_iso", iso_in.dump()), "lift_iso");
  CHECK(iso.code == 0);
  CHECK(iso.out["result"] == "not isomorphic");

  auto en = cli("enumerate --dim 2 --disc 1 --witt 1", "enumerate");
  CHECK(en.code == 0);
  CHECK(en.out["count"].get<int>() >= 2);
  CHECK(cli("enumerate --dim 2 --disc 1 --witt 2", "enumerate_bad").code == 2);
}
