#include "core/json_io.hpp"

namespace canext {

namespace {

Int int_from_node(const ojson& j) {
  if (j.is_number_integer()) return int_from_i64(j.get<std::int64_t>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Rat r = rat_from_string(s);
    if (r.get_den() != 1) throw parse_error("expected integer, got '" + s + "'");
    return r.get_num();
  }
  throw parse_error("expected integer");
}

Rat rat_from_node(const ojson& j) {
  if (j.is_number_integer()) return Rat(int_from_i64(j.get<std::int64_t>()));
  if (j.is_string()) return rat_from_string(j.get<std::string>());
  throw parse_error("expected rational as string or integer");
}

size_t size_from_node(const ojson& j, const char* what) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw parse_error(std::string("expected nonnegative integer for ") + what);
  return static_cast<size_t>(j.get<std::int64_t>());
}

ojson complex_json(const std::complex<double>& z) { return ojson::array({z.real(), z.imag()}); }

}  // namespace

std::vector<std::string> fiber_var_names(size_t d) {
  std::vector<std::string> vars;
  for (size_t i = 0; i < d; ++i) vars.push_back("v" + std::to_string(i + 1));
  return vars;
}

IntMat intmat_from_json(const ojson& j) {
  if (!j.is_array()) throw parse_error("expected matrix as array of rows");
  size_t rows = j.size();
  size_t cols = rows == 0 ? 0 : j[0].size();
  IntMat m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw parse_error("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m.at(i, c) = int_from_node(j[i][c]);
  }
  return m;
}

RatMat ratmat_from_json(const ojson& j) {
  if (!j.is_array()) throw parse_error("expected matrix as array of rows");
  size_t rows = j.size();
  size_t cols = rows == 0 ? 0 : j[0].size();
  RatMat m(rows, cols);
  for (size_t i = 0; i < rows; ++i) {
    if (!j[i].is_array() || j[i].size() != cols) throw parse_error("ragged matrix rows");
    for (size_t c = 0; c < cols; ++c) m.at(i, c) = rat_from_node(j[i][c]);
  }
  return m;
}

ojson intmat_json(const IntMat& m) {
  ojson rows = ojson::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (size_t c = 0; c < m.cols(); ++c) {
      const Int& x = m.at(i, c);
      if (x.fits_slong_p())
        row.push_back(x.get_si());
      else
        row.push_back(x.get_str());
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson ratmat_json(const RatMat& m) {
  ojson rows = ojson::array();
  for (size_t i = 0; i < m.rows(); ++i) {
    ojson row = ojson::array();
    for (size_t c = 0; c < m.cols(); ++c) row.push_back(rat_to_string(m.at(i, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ojson intvec_json(const IntVec& v) {
  ojson arr = ojson::array();
  for (const auto& x : v) {
    if (x.fits_slong_p())
      arr.push_back(x.get_si());
    else
      arr.push_back(x.get_str());
  }
  return arr;
}

IntVec intvec_from_json(const ojson& j) {
  if (!j.is_array()) throw parse_error("expected integer vector");
  IntVec v;
  for (const auto& x : j) v.push_back(int_from_node(x));
  return v;
}

MonodromyModel model_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("model must be a JSON object");
  if (!j.contains("n") || !j.contains("d")) throw parse_error("model needs fields 'n' and 'd'");
  size_t n = size_from_node(j["n"], "'n'");
  size_t d = size_from_node(j["d"], "'d'");
  if (n == 0 || d == 0) throw model_error("DimensionMismatch");
  bool has_t = j.contains("T"), has_n = j.contains("N");
  if (!has_t && !has_n) throw parse_error("model needs 'T' or 'N'");
  auto read_list = [&](const char* key) {
    const ojson& arr = j[key];
    if (!arr.is_array() || arr.size() != n) throw model_error("DimensionMismatch");
    return arr;
  };
  MonodromyModel model;
  if (has_t) {
    std::vector<IntMat> t;
    for (const auto& mj : read_list("T")) {
      IntMat m = intmat_from_json(mj);
      if (m.rows() != d || m.cols() != d) throw model_error("DimensionMismatch");
      t.push_back(std::move(m));
    }
    model = validate_model(std::move(t));
    if (has_n) {
      size_t idx = 0;
      for (const auto& mj : read_list("N")) {
        RatMat given = ratmat_from_json(mj);
        if (given.rows() != d || given.cols() != d) throw model_error("DimensionMismatch");
        if (given != model.N[idx]) throw model_error("InconsistentLogs(" + std::to_string(idx + 1) + ")");
        ++idx;
      }
    }
  } else {
    std::vector<RatMat> logs;
    for (const auto& mj : read_list("N")) {
      RatMat m = ratmat_from_json(mj);
      if (m.rows() != d || m.cols() != d) throw model_error("DimensionMismatch");
      logs.push_back(std::move(m));
    }
    model = model_from_logs(std::move(logs));
  }
  if (j.contains("r")) model.boundary_components = j["r"].get<long>();
  return model;
}

ojson model_info_json(const MonodromyModel& model) {
  ojson out;
  out["n"] = model.n;
  out["d"] = model.d;
  out["unipotent"] = true;
  out["commuting"] = true;
  if (model.boundary_components) out["r"] = *model.boundary_components;
  ojson ts = ojson::array();
  for (const auto& t : model.T) ts.push_back(intmat_json(t));
  out["T"] = std::move(ts);
  return out;
}

ojson model_log_json(const MonodromyModel& model) {
  ojson out;
  out["n"] = model.n;
  out["d"] = model.d;
  ojson ns = ojson::array();
  for (const auto& m : model.N) ns.push_back(ratmat_json(m));
  out["N"] = std::move(ns);
  return out;
}

ojson poly_json(const MultiPoly& p) {
  ojson out;
  out["text"] = p.to_string();
  std::vector<const std::pair<const Expvec, Rat>*> ts;
  for (const auto& t : p.terms()) ts.push_back(&t);
  MonomialOrder ord = MonomialOrder::grevlex();
  std::sort(ts.begin(), ts.end(),
            [&](const auto* a, const auto* b) { return ord.less(b->first, a->first); });
  ojson terms = ojson::array();
  for (const auto* t : ts) {
    ojson term;
    term["coeff"] = rat_to_string(t->second);
    ojson exps = ojson::array();
    for (unsigned e : t->first) exps.push_back(e);
    term["exps"] = std::move(exps);
    terms.push_back(std::move(term));
  }
  out["terms"] = std::move(terms);
  return out;
}

MultiPoly poly_from_json(const std::vector<std::string>& vars, const ojson& j) {
  if (j.is_string()) return MultiPoly::parse(vars, j.get<std::string>());
  if (j.is_object()) {
    if (j.contains("terms")) {
      MultiPoly p(vars);
      for (const auto& term : j["terms"]) {
        Rat c = rat_from_node(term.at("coeff"));
        Expvec e;
        for (const auto& x : term.at("exps")) e.push_back(x.get<unsigned>());
        if (e.size() != vars.size()) throw parse_error("exponent vector has wrong length");
        p.add_term(e, c);
      }
      return p;
    }
    if (j.contains("text")) return MultiPoly::parse(vars, j["text"].get<std::string>());
  }
  throw parse_error("expected polynomial as text or {text, terms}");
}

namespace {

ojson expvec_json(const Expvec& e) {
  ojson arr = ojson::array();
  for (unsigned x : e) arr.push_back(x);
  return arr;
}

Expvec expvec_from_json(const ojson& j) {
  Expvec e;
  for (const auto& x : j) e.push_back(x.get<unsigned>());
  return e;
}

std::string binomial_text(const Binomial& b, size_t n) {
  std::vector<std::string> vars;
  for (size_t j = 0; j < n; ++j) vars.push_back("x" + std::to_string(j + 1));
  return binomial_to_poly(b, vars).to_string();
}

}  // namespace

ojson presentation_json(const SheetPresentation& pres) {
  ojson out;
  out["n"] = pres.n;
  out["d"] = pres.d;
  out["h"] = intvec_json(pres.h);
  ojson stab = ojson::array();
  for (const auto& row : pres.stab.basis) stab.push_back(intvec_json(row));
  out["S"] = std::move(stab);
  out["k"] = pres.k;
  out["A"] = intmat_json(pres.A);
  ojson ms = ojson::array();
  for (const auto& m : pres.M) ms.push_back(ratmat_json(m));
  out["M"] = std::move(ms);
  ojson ps = ojson::array();
  for (const auto& p : pres.p) ps.push_back(poly_json(p));
  out["p"] = std::move(ps);
  ojson eqa = ojson::array();
  for (size_t i = 0; i < pres.eqA.size(); ++i) {
    ojson e = poly_json(pres.eqA[i]);
    e["is_zero"] = static_cast<bool>(pres.eqA_zero[i]);
    eqa.push_back(std::move(e));
  }
  out["eqA"] = std::move(eqa);
  ojson toric = ojson::array();
  for (const auto& b : pres.toric) {
    ojson tj;
    tj["plus"] = expvec_json(b.plus);
    tj["minus"] = expvec_json(b.minus);
    tj["text"] = binomial_text(b, pres.n);
    toric.push_back(std::move(tj));
  }
  out["toric"] = std::move(toric);
  ojson eqb = ojson::array();
  for (const auto& tb : pres.eqB) {
    ojson e;
    e["t_plus"] = expvec_json(tb.beta_plus);
    e["t_minus"] = expvec_json(tb.beta_minus);
    e["lam_plus"] = poly_json(tb.lam_plus);
    e["lam_minus"] = poly_json(tb.lam_minus);
    eqb.push_back(std::move(e));
  }
  out["eqB"] = std::move(eqb);
  return out;
}

SheetPresentation presentation_from_json(const std::string& text) {
  ojson j;
  try {
    j = ojson::parse(text);
  } catch (const std::exception& e) {
    throw parse_error(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw parse_error("presentation must be a JSON object");
  SheetPresentation pres;
  pres.n = size_from_node(j.at("n"), "'n'");
  pres.d = size_from_node(j.at("d"), "'d'");
  pres.h = intvec_from_json(j.at("h"));
  pres.stab.ambient = pres.n;
  for (const auto& row : j.at("S")) pres.stab.basis.push_back(intvec_from_json(row));
  pres.k = size_from_node(j.at("k"), "'k'");
  pres.A = intmat_from_json(j.at("A"));
  for (const auto& mj : j.at("M")) pres.M.push_back(ratmat_from_json(mj));
  std::vector<std::string> vars = fiber_var_names(pres.d);
  for (const auto& pj : j.at("p")) pres.p.push_back(poly_from_json(vars, pj));
  for (const auto& ej : j.at("eqA")) {
    MultiPoly e = poly_from_json(vars, ej);
    pres.eqA_zero.push_back(e.is_zero());
    pres.eqA.push_back(std::move(e));
  }
  for (const auto& tj : j.at("toric")) {
    Binomial b;
    b.plus = expvec_from_json(tj.at("plus"));
    b.minus = expvec_from_json(tj.at("minus"));
    pres.toric.push_back(std::move(b));
  }
  for (const auto& ej : j.at("eqB")) {
    TwistedBinomial tb{expvec_from_json(ej.at("t_plus")), expvec_from_json(ej.at("t_minus")),
                       poly_from_json(vars, ej.at("lam_plus")), poly_from_json(vars, ej.at("lam_minus"))};
    pres.eqB.push_back(std::move(tb));
  }
  return pres;
}

ojson limits_json(const LimitSet& ls) {
  ojson out;
  ojson stab = ojson::array();
  for (const auto& row : ls.stab.basis) stab.push_back(intvec_json(row));
  out["S"] = std::move(stab);
  if (ls.contact) {
    out["contact"] = intvec_json(*ls.contact);
    out["dimension"] = ls.dim;
    ojson param = ojson::array();
    for (const auto& p : ls.param) param.push_back(poly_json(p));
    out["param"] = std::move(param);
  } else {
    out["contact"] = nullptr;
    out["dimension"] = nullptr;
    out["param"] = nullptr;
  }
  return out;
}

ojson point_json(const NumericPoint& pt) {
  ojson out;
  ojson t = ojson::array();
  for (const auto& z : pt.t) t.push_back(complex_json(z));
  out["t"] = std::move(t);
  ojson v = ojson::array();
  for (const auto& z : pt.v) v.push_back(complex_json(z));
  out["v"] = std::move(v);
  return out;
}

ojson verify_point_json(const VerifyPointReport& rep) {
  ojson out;
  out["residuals_eqA"] = rep.res_a;
  out["residuals_eqB"] = rep.res_b;
  out["max_residual_eqA"] = rep.max_res_a;
  out["max_residual_eqB"] = rep.max_res_b;
  out["pass"] = rep.pass;
  return out;
}

ojson verify_sheet_json(const SheetVerifyReport& rep, double tol) {
  ojson out;
  out["samples"] = rep.samples;
  out["tol"] = tol;
  out["max_residual_eqA"] = rep.max_res_a;
  out["max_residual_eqB"] = rep.max_res_b;
  out["pass"] = rep.pass;
  return out;
}

}  // namespace canext
