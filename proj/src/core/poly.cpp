#include "core/poly.hpp"

#include <algorithm>
#include <cctype>

namespace canext {

namespace {

unsigned range_degree(const Expvec& a, size_t lo, size_t hi) {
  unsigned d = 0;
  for (size_t j = lo; j < hi; ++j) d += a[j];
  return d;
}

// -1, 0, +1 for a <, =, > b under grevlex restricted to [lo, hi)
int grevlex_cmp(const Expvec& a, const Expvec& b, size_t lo, size_t hi) {
  unsigned da = range_degree(a, lo, hi), db = range_degree(b, lo, hi);
  if (da != db) return da < db ? -1 : 1;
  for (size_t j = hi; j-- > lo;)
    if (a[j] != b[j]) return a[j] > b[j] ? -1 : 1;
  return 0;
}

}  // namespace

bool MonomialOrder::less(const Expvec& a, const Expvec& b) const {
  if (a.size() != b.size()) throw domain_error("monomial order on mismatched exponent vectors");
  switch (kind_) {
    case Kind::grevlex:
      return grevlex_cmp(a, b, 0, a.size()) < 0;
    case Kind::lex:
      for (size_t j = 0; j < a.size(); ++j)
        if (a[j] != b[j]) return a[j] < b[j];
      return false;
    case Kind::block: {
      int c = grevlex_cmp(a, b, 0, std::min(block_, a.size()));
      if (c != 0) return c < 0;
      return grevlex_cmp(a, b, std::min(block_, a.size()), a.size()) < 0;
    }
  }
  return false;
}

MultiPoly MultiPoly::constant(std::vector<std::string> vars, const Rat& c) {
  MultiPoly p(std::move(vars));
  p.add_term(Expvec(p.vars_.size(), 0), c);
  return p;
}

MultiPoly MultiPoly::variable(std::vector<std::string> vars, size_t index) {
  MultiPoly p(std::move(vars));
  if (index >= p.vars_.size()) throw domain_error("variable index out of range");
  Expvec e(p.vars_.size(), 0);
  e[index] = 1;
  p.add_term(e, Rat(1));
  return p;
}

MultiPoly MultiPoly::monomial(std::vector<std::string> vars, const Rat& c, Expvec e) {
  MultiPoly p(std::move(vars));
  if (e.size() != p.vars_.size()) throw domain_error("exponent vector has wrong length");
  p.add_term(e, c);
  return p;
}

bool MultiPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const Expvec& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](unsigned x) { return x == 0; });
}

Rat MultiPoly::constant_value() const {
  auto it = terms_.find(Expvec(vars_.size(), 0));
  return it == terms_.end() ? Rat(0) : it->second;
}

unsigned MultiPoly::total_degree() const {
  unsigned d = 0;
  for (const auto& [e, c] : terms_) d = std::max(d, range_degree(e, 0, e.size()));
  return d;
}

void MultiPoly::add_term(const Expvec& e, const Rat& c) {
  if (c == 0) return;
  if (e.size() != vars_.size()) throw domain_error("exponent vector has wrong length");
  auto it = terms_.find(e);
  if (it == terms_.end()) {
    terms_.emplace(e, c);
  } else {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw domain_error("polynomial variable lists differ");
  MultiPoly r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, c);
  return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw domain_error("polynomial variable lists differ");
  MultiPoly r(*this);
  for (const auto& [e, c] : o.terms_) r.add_term(e, -c);
  return r;
}

MultiPoly MultiPoly::operator-() const {
  MultiPoly r(vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, -c);
  return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
  if (vars_ != o.vars_) throw domain_error("polynomial variable lists differ");
  MultiPoly r(vars_);
  for (const auto& [e1, c1] : terms_)
    for (const auto& [e2, c2] : o.terms_) {
      Expvec e(e1.size());
      for (size_t j = 0; j < e.size(); ++j) e[j] = e1[j] + e2[j];
      r.add_term(e, c1 * c2);
    }
  return r;
}

MultiPoly MultiPoly::scaled(const Rat& c) const {
  MultiPoly r(vars_);
  if (c == 0) return r;
  for (const auto& [e, k] : terms_) r.terms_.emplace(e, k * c);
  return r;
}

MultiPoly MultiPoly::pow(unsigned e) const {
  MultiPoly r = constant(vars_, Rat(1));
  for (unsigned i = 0; i < e; ++i) r = r * (*this);
  return r;
}

std::pair<Expvec, Rat> MultiPoly::leading_term(const MonomialOrder& ord) const {
  if (terms_.empty()) throw domain_error("leading term of zero polynomial");
  auto best = terms_.begin();
  for (auto it = std::next(terms_.begin()); it != terms_.end(); ++it)
    if (ord.less(best->first, it->first)) best = it;
  return {best->first, best->second};
}

MultiPoly MultiPoly::substitute(const std::vector<MultiPoly>& assignment) const {
  if (assignment.size() != vars_.size()) throw domain_error("substitution needs one polynomial per variable");
  std::vector<std::string> out_vars = assignment.empty() ? vars_ : assignment[0].vars_;
  for (const auto& a : assignment)
    if (a.vars() != out_vars) throw domain_error("substitution polynomials must share variables");
  std::vector<std::vector<MultiPoly>> powers(assignment.size());
  auto power = [&](size_t i, unsigned e) -> const MultiPoly& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MultiPoly::constant(out_vars, Rat(1)));
    while (cache.size() <= e) cache.push_back(cache.back() * assignment[i]);
    return cache[e];
  };
  MultiPoly r(out_vars);
  for (const auto& [e, c] : terms_) {
    MultiPoly term = MultiPoly::constant(out_vars, c);
    for (size_t i = 0; i < e.size(); ++i)
      if (e[i] > 0) term = term * power(i, e[i]);
    r = r + term;
  }
  return r;
}

std::complex<double> MultiPoly::eval(const std::vector<std::complex<double>>& point) const {
  if (point.size() != vars_.size()) throw domain_error("evaluation point has wrong dimension");
  std::complex<double> acc(0.0, 0.0);
  for (const auto& [e, c] : terms_) {
    std::complex<double> t(rat_to_double(c), 0.0);
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

Rat MultiPoly::eval_rat(const RatVec& point) const {
  if (point.size() != vars_.size()) throw domain_error("evaluation point has wrong dimension");
  Rat acc(0);
  for (const auto& [e, c] : terms_) {
    Rat t = c;
    for (size_t i = 0; i < e.size(); ++i)
      for (unsigned k = 0; k < e[i]; ++k) t *= point[i];
    acc += t;
  }
  return acc;
}

std::string MultiPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Expvec, Rat>*> ts;
  for (const auto& t : terms_) ts.push_back(&t);
  MonomialOrder ord = MonomialOrder::grevlex();
  std::sort(ts.begin(), ts.end(),
            [&](const auto* a, const auto* b) { return ord.less(b->first, a->first); });
  std::string out;
  bool first = true;
  for (const auto* t : ts) {
    const Rat& c = t->second;
    bool neg = c < 0;
    Rat ac = neg ? Rat(-c) : c;
    std::string mono;
    for (size_t i = 0; i < t->first.size(); ++i) {
      unsigned e = t->first[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    std::string body;
    if (mono.empty())
      body = rat_to_string(ac);
    else if (ac == 1)
      body = mono;
    else
      body = rat_to_string(ac) + "*" + mono;
    if (first) {
      out += (neg ? "-" : "") + body;
      first = false;
    } else {
      out += (neg ? " - " : " + ") + body;
    }
  }
  return out;
}

namespace {

struct Lexer {
  const std::string& s;
  size_t i = 0;
  void skip() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eof() {
    skip();
    return i >= s.size();
  }
  char peek() {
    skip();
    return s[i];
  }
  bool accept(char c) {
    skip();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  std::string number() {
    skip();
    size_t b = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (b == i) throw parse_error("expected number at offset " + std::to_string(b) + " in '" + s + "'");
    return s.substr(b, i - b);
  }
  std::string ident() {
    skip();
    size_t b = i;
    auto ok = [&](char c, bool head) {
      return c == '_' || std::isalpha(static_cast<unsigned char>(c)) ||
             (!head && std::isdigit(static_cast<unsigned char>(c)));
    };
    while (i < s.size() && ok(s[i], b == i)) ++i;
    if (b == i) throw parse_error("expected name at offset " + std::to_string(b) + " in '" + s + "'");
    return s.substr(b, i - b);
  }
};

}  // namespace

MultiPoly MultiPoly::parse(const std::vector<std::string>& vars, const std::string& text) {
  Lexer lx{text};
  MultiPoly out(vars);
  if (lx.eof()) throw parse_error("empty polynomial");
  bool neg = false;
  if (lx.accept('-'))
    neg = true;
  else
    lx.accept('+');
  while (true) {
    // one term: factors joined by '*'
    Rat coeff(neg ? -1 : 1);
    Expvec e(vars.size(), 0);
    while (true) {
      if (lx.eof()) throw parse_error("unexpected end of polynomial '" + text + "'");
      char c = lx.peek();
      if (std::isdigit(static_cast<unsigned char>(c))) {
        std::string num = lx.number();
        std::string den = "1";
        if (lx.accept('/')) den = lx.number();
        coeff *= rat_from_string(num + "/" + den);
      } else {
        std::string name = lx.ident();
        auto it = std::find(vars.begin(), vars.end(), name);
        if (it == vars.end()) throw parse_error("unknown variable '" + name + "' in '" + text + "'");
        unsigned exp = 1;
        if (lx.accept('^')) exp = static_cast<unsigned>(std::stoul(lx.number()));
        e[static_cast<size_t>(it - vars.begin())] += exp;
      }
      if (!lx.accept('*')) break;
    }
    out.add_term(e, coeff);
    if (lx.eof()) break;
    if (lx.accept('+'))
      neg = false;
    else if (lx.accept('-'))
      neg = true;
    else
      throw parse_error("expected '+' or '-' at offset " + std::to_string(lx.i) + " in '" + text + "'");
  }
  return out;
}

}  // namespace canext
