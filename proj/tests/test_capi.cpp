#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

#include "canext/canext.h"
#include "json.hpp"

using json = nlohmann::json;

namespace {

std::string read_file(const std::string& name) {
  std::ifstream in(std::string(CANEXT_DATA_DIR) + "/" + name);
  REQUIRE(in.good());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

struct Str {
  char* s = nullptr;
  ~Str() { canext_string_free(s); }
  std::string str() const { return s ? std::string(s) : std::string(); }
};

struct Model {
  canext_model* m = nullptr;
  ~Model() { canext_model_free(m); }
};

struct Sheet {
  canext_sheet* s = nullptr;
  ~Sheet() { canext_sheet_free(s); }
};

Model parse_model(const std::string& file) {
  Model m;
  REQUIRE(canext_model_parse(read_file(file).c_str(), &m.m) == CANEXT_OK);
  return m;
}

const int64_t H01[2] = {0, 1};

}  // namespace

TEST_CASE("version and error plumbing") {
  const char* v = canext_version();
  REQUIRE(v != nullptr);
  CHECK(std::strlen(v) > 0);
  canext_string_free(nullptr);  // must be a no-op

  CHECK(canext_model_parse(nullptr, nullptr) == CANEXT_ERROR_INPUT);
  CHECK(std::strlen(canext_last_error()) > 0);
}

TEST_CASE("model parse, info, logs") {
  Model m = parse_model("worked2x2.json");
  Str info;
  REQUIRE(canext_model_info_json(m.m, &info.s) == CANEXT_OK);
  json j = json::parse(info.str());
  CHECK(j["n"] == 2);
  CHECK(j["d"] == 2);
  CHECK(j["unipotent"] == true);
  CHECK(j["commuting"] == true);
  CHECK(j["T"][0][0][1] == -1);

  Str logs;
  REQUIRE(canext_model_log_json(m.m, &logs.s) == CANEXT_OK);
  json l = json::parse(logs.str());
  CHECK(l["N"][0][0][1] == "1");
  CHECK(l["N"][1][0][1] == "-1");

  // identical calls produce identical bytes
  Str again;
  REQUIRE(canext_model_info_json(m.m, &again.s) == CANEXT_OK);
  CHECK(info.str() == again.str());
}

TEST_CASE("model parse failures carry status and message") {
  canext_model* m = nullptr;
  CHECK(canext_model_parse(read_file("malformed.json").c_str(), &m) == CANEXT_ERROR_INPUT);
  CHECK(m == nullptr);
  CHECK(std::strlen(canext_last_error()) > 0);

  CHECK(canext_model_parse(read_file("notunipotent.json").c_str(), &m) == CANEXT_ERROR_MODEL);
  CHECK(std::string(canext_last_error()) == "NotUnipotent(1)");

  CHECK(canext_model_parse(read_file("notcommuting.json").c_str(), &m) == CANEXT_ERROR_MODEL);
  CHECK(std::string(canext_last_error()) == "NotCommuting(1,2)");
}

TEST_CASE("sheet compute, serialize, reparse round trip") {
  Model m = parse_model("worked2x2.json");
  Sheet s;
  REQUIRE(canext_sheet_compute(m.m, H01, 2, &s.s) == CANEXT_OK);
  Str out;
  REQUIRE(canext_sheet_to_json(s.s, &out.s) == CANEXT_OK);
  json j = json::parse(out.str());
  CHECK(j["S"] == json::parse("[[1,1]]"));
  CHECK(j["k"] == 1);
  CHECK(j["p"][0]["text"] == "-v1");
  CHECK(j["eqA"][1]["text"] == "v2 - 1");
  CHECK(j["toric"][0]["text"] == "x1 - x2");
  CHECK(j["eqB"][0]["lam_plus"]["text"] == "-v1");

  Sheet back;
  REQUIRE(canext_sheet_parse(out.str().c_str(), &back.s) == CANEXT_OK);
  Str second;
  REQUIRE(canext_sheet_to_json(back.s, &second.s) == CANEXT_OK);
  CHECK(out.str() == second.str());

  canext_sheet* bad = nullptr;
  CHECK(canext_sheet_parse("{", &bad) == CANEXT_ERROR_INPUT);
  CHECK(canext_sheet_compute(m.m, H01, 3, &bad) == CANEXT_ERROR_INPUT);
}

TEST_CASE("stabilizer and limits") {
  Model m = parse_model("worked2x2.json");
  Str st;
  REQUIRE(canext_stabilizer_json(m.m, H01, 2, &st.s) == CANEXT_OK);
  json j = json::parse(st.str());
  CHECK(j["S"] == json::parse("[[1,1]]"));
  CHECK(j["rank"] == 1);
  CHECK(j["k"] == 1);
  CHECK(j["contact"] == json::parse("[1,1]"));

  Str lim;
  REQUIRE(canext_limits_json(m.m, H01, 2, &lim.s) == CANEXT_OK);
  json l = json::parse(lim.str());
  CHECK(l["contact"] == json::parse("[1,1]"));
  CHECK(l["dimension"] == 1);
  CHECK(l["param"][0]["text"] == "-w1 + w2");
  CHECK(l["param"][1]["text"] == "1");

  Model nc = parse_model("nocontact2x2.json");
  Str lim2;
  REQUIRE(canext_limits_json(nc.m, H01, 2, &lim2.s) == CANEXT_OK);
  json l2 = json::parse(lim2.str());
  CHECK(l2["S"] == json::parse("[[2,-1]]"));
  CHECK(l2["contact"].is_null());
  CHECK(l2["dimension"].is_null());
  CHECK(l2["param"].is_null());
}

TEST_CASE("verify succeeds at sane tolerance and fails loudly at an absurd one") {
  Model m = parse_model("worked2x2.json");
  Sheet s;
  REQUIRE(canext_sheet_compute(m.m, H01, 2, &s.s) == CANEXT_OK);

  Str ok;
  REQUIRE(canext_verify_json(m.m, s.s, 100, 1e-9, 42, &ok.s) == CANEXT_OK);
  json j = json::parse(ok.str());
  CHECK(j["pass"] == true);
  CHECK(j["samples"] == 100);
  CHECK(j["seed"] == 42);
  CHECK(j["max_residual_eqA"] == 0.0);
  CHECK(j["max_residual_eqB"].get<double>() < 1e-9);

  Str bad;
  CHECK(canext_verify_json(m.m, s.s, 100, 1e-30, 42, &bad.s) == CANEXT_ERROR_VERIFY);
  REQUIRE(bad.s != nullptr);  // report still emitted on failure
  json jb = json::parse(bad.str());
  CHECK(jb["pass"] == false);
  CHECK(std::string(canext_last_error()) == "verification failed");

  CHECK(canext_verify_json(m.m, s.s, 0, 1e-9, 42, &bad.s) == CANEXT_ERROR_INPUT);
  CHECK(canext_verify_json(m.m, s.s, 10, -1.0, 42, &bad.s) == CANEXT_ERROR_INPUT);
}

TEST_CASE("verify_point accepts the limit point and rejects an offset one") {
  Model m = parse_model("worked2x2.json");
  Sheet s;
  REQUIRE(canext_sheet_compute(m.m, H01, 2, &s.s) == CANEXT_OK);

  double t_re[2] = {0, 0}, t_im[2] = {0, 0};
  double v_re[2] = {0, 1}, v_im[2] = {0, 0};
  Str ok;
  REQUIRE(canext_verify_point_json(s.s, t_re, t_im, 2, v_re, v_im, 2, 1e-9, &ok.s) == CANEXT_OK);
  CHECK(json::parse(ok.str())["pass"] == true);

  double off_re[2] = {0, 1.5};
  Str bad;
  CHECK(canext_verify_point_json(s.s, t_re, t_im, 2, off_re, v_im, 2, 1e-9, &bad.s) ==
        CANEXT_ERROR_VERIFY);
  json jb = json::parse(bad.str());
  CHECK(jb["pass"] == false);
  CHECK(jb["max_residual_eqA"].get<double>() > 0.4);
}

TEST_CASE("arc table converges along t = 2^-m") {
  Model m = parse_model("worked2x2.json");
  Str arc;
  // a = NULL: derive the boundary relation; w = NULL: zero twist
  REQUIRE(canext_arc_json(m.m, H01, 2, nullptr, 0, nullptr, nullptr, 0, 12, &arc.s) == CANEXT_OK);
  json j = json::parse(arc.str());
  CHECK(j["a"] == json::parse("[1,1]"));
  REQUIRE(j["table"].size() == 12);
  double prev = 1.0;
  for (const auto& row : j["table"]) {
    double d = row["distance"].get<double>();
    CHECK(d < prev);
    prev = d;
  }
  CHECK(prev < 1e-3);

  // relations that do not kill h are rejected
  int64_t abad[2] = {2, 1};
  Str err;
  CHECK(canext_arc_json(m.m, H01, 2, abad, 2, nullptr, nullptr, 0, 4, &err.s) == CANEXT_ERROR_MODEL);
  CHECK(std::string(canext_last_error()) == "InvalidRelation");

  // no boundary contact: no arc to build
  Model nc = parse_model("nocontact2x2.json");
  CHECK(canext_arc_json(nc.m, H01, 2, nullptr, 0, nullptr, nullptr, 0, 4, &err.s) ==
        CANEXT_ERROR_MODEL);
  CHECK(std::string(canext_last_error()) == "NoBoundaryContact");
}

TEST_CASE("orbit and components") {
  Model m = parse_model("worked2x2.json");
  int64_t h1[2] = {5, 1};
  Str orb;
  REQUIRE(canext_orbit_json(m.m, H01, h1, 2, 10, &orb.s) == CANEXT_OK);
  json j = json::parse(orb.str());
  CHECK(j["equal"] == true);
  CHECK(j["witness"] == json::parse("[0,5]"));

  int64_t h2[2] = {0, 2};
  Str orb2;
  REQUIRE(canext_orbit_json(m.m, H01, h2, 2, 10, &orb2.s) == CANEXT_OK);
  json j2 = json::parse(orb2.str());
  CHECK(j2["equal"] == false);
  CHECK(j2["witness"].is_null());

  double v_re[2] = {5, 1}, v_im[2] = {0, 0};
  Str comp;
  REQUIRE(canext_components_json(m.m, v_re, v_im, 2, 5, 10, 1e-7, &comp.s) == CANEXT_OK);
  json jc = json::parse(comp.str());
  CHECK(jc["components"] == json::parse("[[0,1]]"));
}
