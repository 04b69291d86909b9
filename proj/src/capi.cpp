#include "qmot/qmot.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

#include "qmot/error.hpp"
#include "qmot/json_io.hpp"

struct qmot_context {
  qmot::RationalityContext value;
};

struct qmot_correspondence {
  qmot::Correspondence value;
};

namespace {

thread_local std::string last_error;

qmot_status status_of(qmot::ErrorCode code) {
  switch (code) {
    case qmot::ErrorCode::InvalidInput: return QMOT_INVALID_INPUT;
    case qmot::ErrorCode::Resource: return QMOT_RESOURCE;
    case qmot::ErrorCode::Internal: return QMOT_INTERNAL;
  }
  return QMOT_INTERNAL;
}

template <class F>
qmot_status guarded(F&& body) {
  last_error.clear();
  try {
    return body();
  } catch (const qmot::Error& e) {
    last_error = e.what();
    return status_of(e.code());
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed JSON: ") + e.what();
    return QMOT_INVALID_INPUT;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return QMOT_RESOURCE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return QMOT_INTERNAL;
  }
}

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) qmot::invalid(std::string(what) + " must not be NULL");
}

nlohmann::json parse(const char* text) {
  need(text, "json");
  return nlohmann::json::parse(text);
}

}  // namespace

extern "C" {

const char* qmot_version(void) { return "1.0.0"; }

const char* qmot_last_error(void) { return last_error.c_str(); }

void qmot_string_free(char* s) { std::free(s); }

qmot_status qmot_context_from_json(const char* json, qmot_context** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qmot_context{qmot::json_io::context_from_json(parse(json))};
    return QMOT_OK;
  });
}

qmot_status qmot_context_to_json(const qmot_context* ctx, char** out) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out, "out");
    *out = dup_string(qmot::json_io::to_json(ctx->value).dump());
    return QMOT_OK;
  });
}

void qmot_context_free(qmot_context* ctx) { delete ctx; }

qmot_status qmot_correspondence_from_json(const char* json, qmot_correspondence** out) {
  return guarded([&] {
    need(out, "out");
    *out = new qmot_correspondence{qmot::json_io::correspondence_from_json(parse(json))};
    return QMOT_OK;
  });
}

qmot_status qmot_correspondence_to_json(const qmot_correspondence* c, char** out) {
  return guarded([&] {
    need(c, "correspondence");
    need(out, "out");
    *out = dup_string(qmot::json_io::to_json(c->value).dump());
    return QMOT_OK;
  });
}

void qmot_correspondence_free(qmot_correspondence* c) { delete c; }

qmot_status qmot_lift_mod2_to_mod2n(const qmot_correspondence* pi, const qmot_context* ctx,
                                    qmot_correspondence** out) {
  return guarded([&] {
    need(pi, "pi");
    need(ctx, "ctx");
    need(out, "out");
    *out = new qmot_correspondence{qmot::lift_mod2_to_mod2n(pi->value, ctx->value)};
    return QMOT_OK;
  });
}

qmot_status qmot_lift_projector(const qmot_correspondence* tau, const qmot_context* ctx,
                                qmot_correspondence** out) {
  return guarded([&] {
    need(tau, "tau");
    need(ctx, "ctx");
    need(out, "out");
    *out = new qmot_correspondence{qmot::lift_projector(tau->value, ctx->value)};
    return QMOT_OK;
  });
}

qmot_status qmot_lift_isomorphism(const qmot_correspondence* rho, const qmot_correspondence* sigma,
                                  const qmot_correspondence* alpha, const qmot_context* ctx, int* isomorphic,
                                  qmot_correspondence** iso, qmot_correspondence** inverse, char** reason) {
  return guarded([&] {
    need(rho, "rho");
    need(sigma, "sigma");
    need(alpha, "alpha");
    need(ctx, "ctx");
    auto r = qmot::lift_isomorphism(rho->value, sigma->value, alpha->value, ctx->value);
    if (isomorphic) *isomorphic = r.isomorphic ? 1 : 0;
    if (iso) *iso = r.iso ? new qmot_correspondence{*r.iso} : nullptr;
    if (inverse) *inverse = r.inverse ? new qmot_correspondence{*r.inverse} : nullptr;
    if (reason) *reason = dup_string(r.reason);
    return QMOT_OK;
  });
}

qmot_status qmot_classify_json(const qmot_correspondence* projector, const qmot_context* ctx, char** out_json) {
  return guarded([&] {
    need(projector, "projector");
    need(ctx, "ctx");
    need(out_json, "out_json");
    qmot::Motive m(projector->value, ctx->value.galois());
    *out_json = dup_string(qmot::json_io::to_json(qmot::classify(m)).dump());
    return QMOT_OK;
  });
}

qmot_status qmot_enumerate_idempotents_json(const qmot_context* ctx, char** out_json) {
  return guarded([&] {
    need(ctx, "ctx");
    need(out_json, "out_json");
    const auto& x = ctx->value.x();
    auto list = qmot::enumerate_idempotents_mod2(x, ctx->value);
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& p : list) arr.push_back(qmot::json_io::to_json(p));
    nlohmann::json out = {{"quadric", qmot::json_io::to_json(x)}, {"count", list.size()}, {"idempotents", arr}};
    *out_json = dup_string(out.dump());
    return QMOT_OK;
  });
}

qmot_status qmot_verify_json(int dim_max, int n, int galois_r, int witt, int use_seed, unsigned long long seed,
                             char** out_json) {
  return guarded([&] {
    need(out_json, "out_json");
    qmot::BijectionOptions opt;
    opt.dim_max = dim_max;
    opt.n = n;
    opt.galois_r = galois_r;
    if (witt >= 0) opt.witt = witt;
    auto report = qmot::reduction_bijection_check(opt);
    auto j = qmot::json_io::to_json(report);
    bool pass = report.pass;
    if (use_seed) {
      auto s = qmot::random_algebra_sample(seed, 1000);
      j["algebra_sample"] = {{"seed", s.seed}, {"triples", s.triples}, {"failures", s.failures}};
      if (s.failures != 0) {
        pass = false;
        j["verdict"] = "fail";
      }
    }
    *out_json = dup_string(j.dump());
    return pass ? QMOT_OK : QMOT_VERDICT_FAIL;
  });
}

}  // extern "C"
