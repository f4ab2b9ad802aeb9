#pragma once

#include <string>

#include "json.hpp"

#include "core/sheet.hpp"

namespace canext {

using ojson = nlohmann::ordered_json;

// Model files: {"n": 2, "d": 2, "T": [[[1,-1],[0,1]], ...]} and/or
// "N": [[["0","1"],["0","0"]], ...]; rationals are "p/q" strings, integers
// are accepted anywhere a rational is.  With both "T" and "N" present they
// must agree (N = -log T).  Optional "r" is carried through unchanged.
MonodromyModel model_from_json(const std::string& text);

ojson model_info_json(const MonodromyModel& model);
ojson model_log_json(const MonodromyModel& model);

ojson intmat_json(const IntMat& m);
ojson ratmat_json(const RatMat& m);
IntMat intmat_from_json(const ojson& j);
RatMat ratmat_from_json(const ojson& j);

ojson intvec_json(const IntVec& v);
IntVec intvec_from_json(const ojson& j);

// {"text": "-2/3*v1^2*v2 + 1", "terms": [{"coeff": "-2/3", "exps": [2,1]}, ...]},
// terms in descending grevlex order.
ojson poly_json(const MultiPoly& p);
// Accepts either the canonical text (a JSON string) or the structured form.
MultiPoly poly_from_json(const std::vector<std::string>& vars, const ojson& j);

ojson presentation_json(const SheetPresentation& pres);
SheetPresentation presentation_from_json(const std::string& text);

ojson limits_json(const LimitSet& ls);
ojson point_json(const NumericPoint& pt);
ojson verify_point_json(const VerifyPointReport& rep);
ojson verify_sheet_json(const SheetVerifyReport& rep, double tol);

std::vector<std::string> fiber_var_names(size_t d);

}  // namespace canext
