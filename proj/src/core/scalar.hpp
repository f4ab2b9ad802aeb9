#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace canext {

using Int = mpz_class;
using Rat = mpq_class;

struct domain_error : std::runtime_error {
  explicit domain_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Model fails a structural requirement (shape, unipotence, commutation, ...).
struct model_error : std::runtime_error {
  explicit model_error(const std::string& what) : std::runtime_error(what) {}
};

// mpq_class(num, den) does not canonicalize; this does.
inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw domain_error("rational with zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int rat_num(const Rat& r) { return r.get_num(); }
inline Int rat_den(const Rat& r) { return r.get_den(); }

// Canonical text form: "p" if the denominator is 1, else "p/q" with q > 0.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline std::string int_to_string(const Int& z) { return z.get_str(); }

// Accepts "p" or "p/q" with optional sign on p.
inline Rat rat_from_string(const std::string& s) {
  auto bad = [&]() { throw parse_error("invalid rational '" + s + "'"); };
  if (s.empty()) bad();
  std::string num, den = "1";
  auto slash = s.find('/');
  if (slash == std::string::npos) {
    num = s;
  } else {
    num = s.substr(0, slash);
    den = s.substr(slash + 1);
  }
  auto is_int = [](const std::string& t) {
    if (t.empty()) return false;
    size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
    if (i == t.size()) return false;
    for (; i < t.size(); ++i)
      if (t[i] < '0' || t[i] > '9') return false;
    return true;
  };
  if (!is_int(num) || !is_int(den)) bad();
  Int n(num), d(den);
  if (d == 0) bad();
  return make_rat(n, d);
}

inline double rat_to_double(const Rat& r) { return r.get_d(); }

inline Int int_from_i64(std::int64_t v) {
  // mpz_class has no int64 constructor on 32-bit long platforms; go via string
  // only when long is narrower.
  if constexpr (sizeof(long) >= sizeof(std::int64_t)) {
    return Int(static_cast<long>(v));
  } else {
    return Int(std::to_string(v));
  }
}

using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

inline Int lcm_int(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int gcd_int(const Int& a, const Int& b) {
  Int r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

// Floor division quotient, exact for any sign of a with b > 0.
inline Int fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

}  // namespace canext
