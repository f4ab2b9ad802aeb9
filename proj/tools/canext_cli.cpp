#include <complex>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "canext/canext.h"

namespace {

using ojson = nlohmann::ordered_json;

int exit_code(canext_status st) {
  switch (st) {
    case CANEXT_OK:
      return 0;
    case CANEXT_ERROR_INPUT:
      return 1;
    case CANEXT_ERROR_MODEL:
      return 2;
    case CANEXT_ERROR_VERIFY:
      return 3;
    default:
      return 4;
  }
}

[[noreturn]] void die(canext_status st) {
  std::cerr << "error: " << canext_last_error() << "\n";
  std::exit(exit_code(st));
}

[[noreturn]] void die_input(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  std::exit(1);
}

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream ss;
    ss << std::cin.rdbuf();
    return ss.str();
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) die_input("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int64_t> parse_int_list(const std::string& text) {
  std::vector<int64_t> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    try {
      size_t pos = 0;
      out.push_back(std::stoll(tok, &pos));
      while (pos < tok.size() && std::isspace(static_cast<unsigned char>(tok[pos]))) ++pos;
      if (pos != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      die_input("invalid integer '" + tok + "'");
    }
  }
  if (out.empty()) die_input("empty integer list");
  return out;
}

std::complex<double> parse_complex(const std::string& raw) {
  std::string s;
  for (char c : raw)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) die_input("empty complex number");
  auto to_d = [&](const std::string& t) {
    try {
      size_t pos = 0;
      double x = std::stod(t, &pos);
      if (pos != t.size()) throw std::invalid_argument(t);
      return x;
    } catch (const std::exception&) {
      die_input("invalid number '" + t + "' in '" + raw + "'");
    }
  };
  if (s.back() != 'i' && s.back() != 'I') return {to_d(s), 0.0};
  std::string body = s.substr(0, s.size() - 1);
  size_t split = std::string::npos;
  for (size_t idx = body.size(); idx-- > 1;) {
    char c = body[idx];
    if ((c == '+' || c == '-') && body[idx - 1] != 'e' && body[idx - 1] != 'E') {
      split = idx;
      break;
    }
  }
  std::string re_s, im_s;
  if (split == std::string::npos) {
    re_s = "0";
    im_s = body;
  } else {
    re_s = body.substr(0, split);
    im_s = body.substr(split);
  }
  double im;
  if (im_s.empty() || im_s == "+")
    im = 1.0;
  else if (im_s == "-")
    im = -1.0;
  else
    im = to_d(im_s);
  return {to_d(re_s), im};
}

std::vector<std::complex<double>> parse_complex_list(const std::string& text) {
  std::vector<std::complex<double>> out;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) out.push_back(parse_complex(tok));
  if (out.empty()) die_input("empty list");
  return out;
}

struct Managed {
  char* s = nullptr;
  ~Managed() { canext_string_free(s); }
};

struct ModelGuard {
  canext_model* m = nullptr;
  ~ModelGuard() { canext_model_free(m); }
};

struct SheetGuard {
  canext_sheet* s = nullptr;
  ~SheetGuard() { canext_sheet_free(s); }
};

canext_model* load_model(const std::string& path) {
  std::string text = read_file(path);
  canext_model* m = nullptr;
  canext_status st = canext_model_parse(text.c_str(), &m);
  if (st != CANEXT_OK) die(st);
  return m;
}

std::string fmt_ints(const ojson& arr) {
  std::string s = "(";
  for (size_t i = 0; i < arr.size(); ++i) {
    if (i) s += ", ";
    s += arr[i].dump();
  }
  return s + ")";
}

std::string monomial_t(const ojson& exps) {
  std::string s;
  for (size_t j = 0; j < exps.size(); ++j) {
    unsigned e = exps[j].get<unsigned>();
    if (e == 0) continue;
    if (!s.empty()) s += "*";
    s += "t" + std::to_string(j + 1);
    if (e > 1) s += "^" + std::to_string(e);
  }
  return s.empty() ? "1" : s;
}

std::string render_text(const std::string& cmd, const ojson& j) {
  std::ostringstream out;
  if (cmd == "validate") {
    out << "model: n=" << j["n"] << " d=" << j["d"] << " unipotent commuting\n";
  } else if (cmd == "log") {
    for (size_t i = 0; i < j["N"].size(); ++i) {
      out << "N" << (i + 1) << ":\n";
      for (const auto& row : j["N"][i]) {
        out << " ";
        for (const auto& x : row) out << " " << x.get<std::string>();
        out << "\n";
      }
    }
  } else if (cmd == "stabilizer") {
    out << "h = " << fmt_ints(j["h"]) << "\n";
    out << "S: rank " << j["rank"] << ", k = " << j["k"] << "\n";
    for (const auto& row : j["S"]) out << "  basis " << fmt_ints(row) << "\n";
    if (j["contact"].is_null())
      out << "contact: none\n";
    else
      out << "contact: " << fmt_ints(j["contact"]) << "\n";
  } else if (cmd == "equations") {
    out << "h = " << fmt_ints(j["h"]) << ", k = " << j["k"] << "\n";
    out << "A =\n";
    for (const auto& row : j["A"]) out << "  " << fmt_ints(row) << "\n";
    for (size_t s = 0; s < j["p"].size(); ++s)
      out << "p" << (s + 1) << " = " << j["p"][s]["text"].get<std::string>() << "\n";
    for (size_t i = 0; i < j["eqA"].size(); ++i)
      out << "eqA" << (i + 1) << " = " << j["eqA"][i]["text"].get<std::string>() << "\n";
    for (const auto& b : j["toric"]) out << "toric: " << b["text"].get<std::string>() << "\n";
    for (const auto& e : j["eqB"]) {
      out << "eqB: " << monomial_t(e["t_plus"]) << " * exp(-2*pi*i*(" << e["lam_plus"]["text"].get<std::string>()
          << ")) - " << monomial_t(e["t_minus"]) << " * exp(-2*pi*i*(" << e["lam_minus"]["text"].get<std::string>()
          << "))\n";
    }
  } else if (cmd == "limits") {
    out << "h = " << fmt_ints(j["h"]) << "\n";
    if (j["contact"].is_null()) {
      out << "no limit points over the origin\n";
    } else {
      out << "contact: " << fmt_ints(j["contact"]) << "\n";
      out << "dimension: " << j["dimension"] << "\n";
      for (size_t i = 0; i < j["param"].size(); ++i)
        out << "v" << (i + 1) << " = " << j["param"][i]["text"].get<std::string>() << "\n";
    }
  } else if (cmd == "verify") {
    out << "samples: " << j["samples"] << "\n";
    out << "max residual eqA: " << j["max_residual_eqA"].dump() << "\n";
    out << "max residual eqB: " << j["max_residual_eqB"].dump() << "\n";
    out << (j["pass"].get<bool>() ? "pass" : "FAIL") << "\n";
  } else if (cmd == "arc") {
    out << "h = " << fmt_ints(j["h"]) << ", a = " << fmt_ints(j["a"]) << "\n";
    for (const auto& row : j["table"])
      out << "m=" << row["m"] << " t=" << row["t"].dump() << " distance=" << row["distance"].dump() << "\n";
  } else if (cmd == "orbit") {
    if (j["equal"].get<bool>())
      out << "equal, a = " << fmt_ints(j["witness"]) << "\n";
    else
      out << "not equal within bound " << j["bound"] << "\n";
  } else if (cmd == "components") {
    if (j["components"].empty()) {
      out << "no components through the point\n";
    } else {
      for (const auto& rep : j["components"]) out << "component through h = " << fmt_ints(rep) << "\n";
    }
  } else {
    out << j.dump(2) << "\n";
  }
  return out.str();
}

void emit_payload(const std::string& cmd, const char* payload, const std::string& format,
                  const std::string& output) {
  ojson body = ojson::parse(payload);
  std::string text;
  if (format == "json") {
    ojson wrapped;
    wrapped["command"] = cmd;
    for (auto& [key, val] : body.items()) wrapped[key] = std::move(val);
    text = wrapped.dump() + "\n";
  } else {
    text = render_text(cmd, body);
  }
  if (output.empty()) {
    std::cout << text;
  } else {
    std::ofstream out(output, std::ios::binary | std::ios::trunc);
    if (!out) die_input("cannot write '" + output + "'");
    out << text;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"closure equations for sheets of local systems with unipotent monodromy"};
  app.require_subcommand(1);

  std::string input, output, format = "json";
  app.add_option("-i,--input", input, "model JSON file ('-' for stdin)");
  app.add_option("--output", output, "write result to file instead of stdout");
  app.add_option("--format", format, "output format: json or text")
      ->check(CLI::IsMember({"json", "text"}));

  std::string h_str, h2_str, a_str, w_str, v_str, pres_path;
  int samples = 100;
  double tol = 1e-9;
  std::uint64_t seed = 42;
  long bound = 10, h_bound = 5;
  int mmax = 20;

  auto add_sub = [&](const char* name, const char* desc) {
    auto* sub = app.add_subcommand(name, desc);
    sub->set_help_flag("--help", "print help");  // frees -h / --h for fiber vectors
    sub->fallthrough();  // -i/--output/--format may follow the subcommand
    return sub;
  };

  auto* c_validate = add_sub("validate", "check the model and echo its data");
  auto* c_log = add_sub("log", "nilpotent logarithms of the monodromy matrices");
  auto* c_stab = add_sub("stabilizer", "integer relations fixing the fiber vector");
  c_stab->add_option("--h", h_str, "fiber vector, comma separated")->required();
  auto* c_eq = add_sub("equations", "closure equations of the sheet through h");
  c_eq->add_option("--h", h_str, "fiber vector, comma separated")->required();
  auto* c_lim = add_sub("limits", "limit points of the sheet over the origin");
  c_lim->add_option("--h", h_str, "fiber vector, comma separated")->required();
  auto* c_ver = add_sub("verify", "sample the sheet and check the equations");
  c_ver->add_option("--h", h_str, "fiber vector, comma separated");
  c_ver->add_option("--pres", pres_path, "verify a saved presentation instead of recomputing");
  c_ver->add_option("--samples", samples, "number of sample points");
  c_ver->add_option("--tol", tol, "residual tolerance");
  c_ver->add_option("--seed", seed, "sampling seed");
  auto* c_arc = add_sub("arc", "arc table approaching the limit point");
  c_arc->add_option("--h", h_str, "fiber vector, comma separated")->required();
  c_arc->add_option("--a", a_str, "positive relation, comma separated (default: boundary contact)");
  c_arc->add_option("--w", w_str, "twist parameters, comma separated complex");
  c_arc->add_option("--mmax", mmax, "table depth: t = 2^-1 .. 2^-mmax");
  auto* c_orb = add_sub("orbit", "bounded monodromy orbit search");
  c_orb->add_option("--h", h_str, "first fiber vector")->required();
  c_orb->add_option("--h2", h2_str, "second fiber vector")->required();
  c_orb->add_option("--bound", bound, "max |a_j| in the search");
  auto* c_comp = add_sub("components", "sheets whose closure passes through (0, v)");
  c_comp->add_option("--v", v_str, "fiber point, comma separated complex")->required();
  c_comp->add_option("--hbound", h_bound, "scan |h_i| <= hbound");
  c_comp->add_option("--bound", bound, "orbit bound for deduplication");
  c_comp->add_option("--tol", tol, "membership tolerance");

  CLI11_PARSE(app, argc, argv);

  if (input.empty()) die_input("missing required --input");

  ModelGuard model;
  model.m = load_model(input);

  auto require_h = [&](const std::string& str) {
    if (str.empty()) die_input("missing required --h");
    return parse_int_list(str);
  };

  Managed out;
  canext_status st = CANEXT_OK;
  std::string cmd;

  if (c_validate->parsed()) {
    cmd = "validate";
    st = canext_model_info_json(model.m, &out.s);
  } else if (c_log->parsed()) {
    cmd = "log";
    st = canext_model_log_json(model.m, &out.s);
  } else if (c_stab->parsed()) {
    cmd = "stabilizer";
    auto h = require_h(h_str);
    st = canext_stabilizer_json(model.m, h.data(), h.size(), &out.s);
  } else if (c_eq->parsed()) {
    cmd = "equations";
    auto h = require_h(h_str);
    SheetGuard sheet;
    st = canext_sheet_compute(model.m, h.data(), h.size(), &sheet.s);
    if (st == CANEXT_OK) st = canext_sheet_to_json(sheet.s, &out.s);
  } else if (c_lim->parsed()) {
    cmd = "limits";
    auto h = require_h(h_str);
    st = canext_limits_json(model.m, h.data(), h.size(), &out.s);
  } else if (c_ver->parsed()) {
    cmd = "verify";
    SheetGuard sheet;
    if (!pres_path.empty()) {
      std::string text = read_file(pres_path);
      st = canext_sheet_parse(text.c_str(), &sheet.s);
    } else {
      auto h = require_h(h_str);
      st = canext_sheet_compute(model.m, h.data(), h.size(), &sheet.s);
    }
    if (st == CANEXT_OK) st = canext_verify_json(model.m, sheet.s, samples, tol, seed, &out.s);
  } else if (c_arc->parsed()) {
    cmd = "arc";
    auto h = require_h(h_str);
    std::vector<int64_t> a;
    const int64_t* a_ptr = nullptr;
    size_t a_len = 0;
    if (!a_str.empty()) {
      a = parse_int_list(a_str);
      a_ptr = a.data();
      a_len = a.size();
    }
    std::vector<double> wre, wim;
    const double *wre_ptr = nullptr, *wim_ptr = nullptr;
    size_t w_len = 0;
    if (!w_str.empty()) {
      for (const auto& z : parse_complex_list(w_str)) {
        wre.push_back(z.real());
        wim.push_back(z.imag());
      }
      wre_ptr = wre.data();
      wim_ptr = wim.data();
      w_len = wre.size();
    }
    st = canext_arc_json(model.m, h.data(), h.size(), a_ptr, a_len, wre_ptr, wim_ptr, w_len, mmax,
                         &out.s);
  } else if (c_orb->parsed()) {
    cmd = "orbit";
    auto h0 = require_h(h_str);
    auto h1 = parse_int_list(h2_str);
    if (h0.size() != h1.size()) die_input("--h and --h2 must have the same length");
    st = canext_orbit_json(model.m, h0.data(), h1.data(), h0.size(), bound, &out.s);
  } else if (c_comp->parsed()) {
    cmd = "components";
    std::vector<double> vre, vim;
    for (const auto& z : parse_complex_list(v_str)) {
      vre.push_back(z.real());
      vim.push_back(z.imag());
    }
    st = canext_components_json(model.m, vre.data(), vim.data(), vre.size(), h_bound, bound, tol,
                                &out.s);
  }

  if (out.s == nullptr) die(st);
  emit_payload(cmd, out.s, format, output);
  if (st != CANEXT_OK) {
    std::cerr << "error: " << canext_last_error() << "\n";
    return exit_code(st);
  }
  return 0;
}
