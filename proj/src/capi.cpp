#include "canext/canext.h"

#include <cmath>
#include <cstdlib>
#include <cstring>

#include "core/json_io.hpp"

using namespace canext;

struct canext_model {
  MonodromyModel model;
};

struct canext_sheet {
  SheetPresentation pres;
};

namespace {

thread_local std::string g_last_error;

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

canext_status fail(canext_status st, const std::string& msg) {
  g_last_error = msg;
  return st;
}

// Maps the core exception taxonomy onto status codes.
template <typename Fn>
canext_status guarded(Fn&& fn) {
  g_last_error.clear();
  try {
    fn();
    return CANEXT_OK;
  } catch (const parse_error& e) {
    return fail(CANEXT_ERROR_INPUT, e.what());
  } catch (const model_error& e) {
    return fail(CANEXT_ERROR_MODEL, e.what());
  } catch (const domain_error& e) {
    return fail(CANEXT_ERROR_INPUT, e.what());
  } catch (const std::exception& e) {
    return fail(CANEXT_ERROR_INTERNAL, e.what());
  }
}

IntVec vec_from_i64(const int64_t* data, size_t len) {
  if (len > 0 && data == nullptr) throw domain_error("null vector");
  IntVec v;
  for (size_t i = 0; i < len; ++i) v.push_back(int_from_i64(data[i]));
  return v;
}

std::vector<std::complex<double>> complex_vec(const double* re, const double* im, size_t len) {
  if (len > 0 && (re == nullptr || im == nullptr)) throw domain_error("null vector");
  std::vector<std::complex<double>> v;
  for (size_t i = 0; i < len; ++i) v.emplace_back(re[i], im[i]);
  return v;
}

canext_status emit(char** out, const ojson& j) {
  if (out == nullptr) return fail(CANEXT_ERROR_INPUT, "null output pointer");
  *out = dup_string(j.dump());
  if (*out == nullptr) return fail(CANEXT_ERROR_INTERNAL, "out of memory");
  return CANEXT_OK;
}

}  // namespace

extern "C" {

const char* canext_version(void) { return "1.0.0"; }

const char* canext_last_error(void) { return g_last_error.c_str(); }

void canext_string_free(char* s) { std::free(s); }

canext_status canext_model_parse(const char* json, canext_model** out) {
  if (json == nullptr || out == nullptr) return fail(CANEXT_ERROR_INPUT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto m = new canext_model{model_from_json(json)};
    *out = m;
  });
}

void canext_model_free(canext_model* m) { delete m; }

canext_status canext_model_info_json(const canext_model* m, char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] { st = emit(out, model_info_json(m->model)); });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_model_log_json(const canext_model* m, char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] { st = emit(out, model_log_json(m->model)); });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_sheet_compute(const canext_model* m, const int64_t* h, size_t hlen,
                                   canext_sheet** out) {
  if (m == nullptr || out == nullptr) return fail(CANEXT_ERROR_INPUT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = new canext_sheet{compute_sheet(m->model, vec_from_i64(h, hlen))};
    *out = s;
  });
}

canext_status canext_sheet_parse(const char* json, canext_sheet** out) {
  if (json == nullptr || out == nullptr) return fail(CANEXT_ERROR_INPUT, "null argument");
  *out = nullptr;
  return guarded([&] {
    auto s = new canext_sheet{presentation_from_json(json)};
    *out = s;
  });
}

void canext_sheet_free(canext_sheet* s) { delete s; }

canext_status canext_sheet_to_json(const canext_sheet* s, char** out) {
  if (s == nullptr) return fail(CANEXT_ERROR_INPUT, "null sheet");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] { st = emit(out, presentation_json(s->pres)); });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_stabilizer_json(const canext_model* m, const int64_t* h, size_t hlen,
                                     char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    IntVec hv = vec_from_i64(h, hlen);
    LatticeBasis stab = stabilizer_lattice(m->model, hv);
    auto contact = positive_lattice_point(stab);
    ojson j;
    j["h"] = intvec_json(hv);
    ojson rows = ojson::array();
    for (const auto& row : stab.basis) rows.push_back(intvec_json(row));
    j["S"] = std::move(rows);
    j["rank"] = stab.rank();
    j["k"] = m->model.n - stab.rank();
    if (contact)
      j["contact"] = intvec_json(*contact);
    else
      j["contact"] = nullptr;
    st = emit(out, j);
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_limits_json(const canext_model* m, const int64_t* h, size_t hlen, char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    IntVec hv = vec_from_i64(h, hlen);
    ojson j = limits_json(limit_set(m->model, hv));
    ojson full;
    full["h"] = intvec_json(hv);
    for (auto& [key, val] : j.items()) full[key] = std::move(val);
    st = emit(out, full);
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_verify_json(const canext_model* m, const canext_sheet* s, int samples,
                                 double tol, uint64_t seed, char** out) {
  if (m == nullptr || s == nullptr) return fail(CANEXT_ERROR_INPUT, "null argument");
  if (samples < 1) return fail(CANEXT_ERROR_INPUT, "samples must be positive");
  if (!(tol > 0)) return fail(CANEXT_ERROR_INPUT, "tolerance must be positive");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    SheetVerifyReport rep =
        verify_sheet(m->model, s->pres, static_cast<size_t>(samples), tol, tol, seed);
    ojson j = verify_sheet_json(rep, tol);
    j["seed"] = seed;
    st = emit(out, j);
    if (st == CANEXT_OK && !rep.pass) st = fail(CANEXT_ERROR_VERIFY, "verification failed");
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_verify_point_json(const canext_sheet* s, const double* t_re, const double* t_im,
                                       size_t tlen, const double* v_re, const double* v_im,
                                       size_t vlen, double tol, char** out) {
  if (s == nullptr) return fail(CANEXT_ERROR_INPUT, "null sheet");
  if (!(tol > 0)) return fail(CANEXT_ERROR_INPUT, "tolerance must be positive");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    NumericPoint pt;
    pt.t = complex_vec(t_re, t_im, tlen);
    pt.v = complex_vec(v_re, v_im, vlen);
    VerifyPointReport rep = verify_point(s->pres, pt, tol, tol);
    st = emit(out, verify_point_json(rep));
    if (st == CANEXT_OK && !rep.pass) st = fail(CANEXT_ERROR_VERIFY, "verification failed");
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_arc_json(const canext_model* m, const int64_t* h, size_t hlen, const int64_t* a,
                              size_t alen, const double* w_re, const double* w_im, size_t wlen,
                              int mmax, char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  if (mmax < 1) return fail(CANEXT_ERROR_INPUT, "mmax must be positive");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    IntVec hv = vec_from_i64(h, hlen);
    IntVec av;
    if (a == nullptr) {
      auto contact = boundary_contact(m->model, hv);
      if (!contact) throw model_error("NoBoundaryContact");
      av = *contact;
    } else {
      av = vec_from_i64(a, alen);
    }
    std::vector<std::complex<double>> w(m->model.n, 0.0);
    if (w_re != nullptr || w_im != nullptr) w = complex_vec(w_re, w_im, wlen);
    ojson j;
    j["h"] = intvec_json(hv);
    j["a"] = intvec_json(av);
    ojson warr = ojson::array();
    for (const auto& z : w) warr.push_back(ojson::array({z.real(), z.imag()}));
    j["w"] = std::move(warr);
    NumericPoint limit = arc_point(m->model, hv, av, w, 0.0);
    j["limit"] = point_json(limit);
    ojson rows = ojson::array();
    for (int mm = 1; mm <= mmax; ++mm) {
      double t = std::ldexp(1.0, -mm);
      NumericPoint pt = arc_point(m->model, hv, av, w, t);
      double dist = 0.0;
      for (size_t i = 0; i < pt.t.size(); ++i) dist = std::max(dist, std::abs(pt.t[i] - limit.t[i]));
      for (size_t i = 0; i < pt.v.size(); ++i) dist = std::max(dist, std::abs(pt.v[i] - limit.v[i]));
      ojson row;
      row["m"] = mm;
      row["t"] = t;
      row["point"] = point_json(pt);
      row["distance"] = dist;
      rows.push_back(std::move(row));
    }
    j["table"] = std::move(rows);
    st = emit(out, j);
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_orbit_json(const canext_model* m, const int64_t* h0, const int64_t* h1,
                                size_t hlen, long bound, char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    IntVec v0 = vec_from_i64(h0, hlen);
    IntVec v1 = vec_from_i64(h1, hlen);
    OrbitResult res = orbit_equal(m->model, v0, v1, bound);
    ojson j;
    j["h0"] = intvec_json(v0);
    j["h1"] = intvec_json(v1);
    j["bound"] = bound;
    j["equal"] = res.equal;
    if (res.witness) {
      ojson w = ojson::array();
      for (long x : *res.witness) w.push_back(x);
      j["witness"] = std::move(w);
    } else {
      j["witness"] = nullptr;
    }
    st = emit(out, j);
  });
  return g != CANEXT_OK ? g : st;
}

canext_status canext_components_json(const canext_model* m, const double* v_re, const double* v_im,
                                     size_t vlen, long h_bound, long orbit_bound, double tol,
                                     char** out) {
  if (m == nullptr) return fail(CANEXT_ERROR_INPUT, "null model");
  if (!(tol > 0)) return fail(CANEXT_ERROR_INPUT, "tolerance must be positive");
  canext_status st = CANEXT_OK;
  canext_status g = guarded([&] {
    auto v = complex_vec(v_re, v_im, vlen);
    std::vector<IntVec> reps = components_through_point(m->model, v, h_bound, orbit_bound, tol);
    ojson j;
    ojson varr = ojson::array();
    for (const auto& z : v) varr.push_back(ojson::array({z.real(), z.imag()}));
    j["v"] = std::move(varr);
    j["h_bound"] = h_bound;
    j["orbit_bound"] = orbit_bound;
    j["tol"] = tol;
    ojson rarr = ojson::array();
    for (const auto& rep : reps) rarr.push_back(intvec_json(rep));
    j["components"] = std::move(rarr);
    st = emit(out, j);
  });
  return g != CANEXT_OK ? g : st;
}

}  // extern "C"
