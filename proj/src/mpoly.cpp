#include "lineext/mpoly.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "lineext/error.hpp"

namespace lineext {

namespace {

bool grlex_less(const Monomial& a, const Monomial& b) {
  const int da = std::accumulate(a.begin(), a.end(), 0);
  const int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  return a < b;
}

}  // namespace

MPoly MPoly::constant(std::vector<std::string> vars, const mpz_class& c) {
  MPoly f(std::move(vars));
  f.add_term(Monomial(f.arity(), 0), c);
  return f;
}

MPoly MPoly::variable(std::vector<std::string> vars, std::size_t i) {
  MPoly f(std::move(vars));
  Monomial e(f.arity(), 0);
  e.at(i) = 1;
  f.add_term(e, 1);
  return f;
}

MPoly MPoly::monomial(std::vector<std::string> vars, Monomial e, const mpz_class& c) {
  MPoly f(std::move(vars));
  if (e.size() != f.arity()) throw DomainError("monomial arity mismatch");
  f.add_term(e, c);
  return f;
}

bool MPoly::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

mpz_class MPoly::constant_term() const {
  auto it = terms_.find(Monomial(arity(), 0));
  return it == terms_.end() ? mpz_class(0) : it->second;
}

int MPoly::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int MPoly::degree(std::size_t v) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[v]);
  return d;
}

std::size_t MPoly::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (vars_[i] == name) return i;
  }
  throw DomainError("unknown variable " + std::string(name));
}

void MPoly::add_term(const Monomial& e, const mpz_class& c) {
  if (c == 0) return;
  auto [it, fresh] = terms_.emplace(e, c);
  if (!fresh) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

void MPoly::check_same_ring(const MPoly& o) const {
  if (vars_ != o.vars_) throw DomainError("polynomials over different variable lists");
}

MPoly MPoly::operator-() const {
  MPoly r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

MPoly& MPoly::operator+=(const MPoly& o) {
  check_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

MPoly& MPoly::operator-=(const MPoly& o) {
  check_same_ring(o);
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

MPoly operator*(const MPoly& a, const MPoly& b) {
  a.check_same_ring(b);
  MPoly r(a.vars_);
  Monomial e(a.arity());
  mpz_class c;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      c = ca * cb;
      r.add_term(e, c);
    }
  }
  return r;
}

MPoly& MPoly::operator*=(const MPoly& o) { return *this = *this * o; }

MPoly& MPoly::operator*=(const mpz_class& c) {
  if (c == 0) {
    terms_.clear();
  } else {
    for (auto& [e, v] : terms_) v *= c;
  }
  return *this;
}

MPoly MPoly::pow(unsigned e) const {
  MPoly r = constant(vars_, 1);
  MPoly b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

mpz_class MPoly::content() const {
  mpz_class g = 0;
  for (const auto& [e, c] : terms_) {
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g == 1) break;
  }
  return g;
}

std::pair<Monomial, mpz_class> MPoly::leading_term() const {
  if (terms_.empty()) return {Monomial(arity(), 0), 0};
  auto best = terms_.begin();
  for (auto it = terms_.begin(); it != terms_.end(); ++it) {
    if (grlex_less(best->first, it->first)) best = it;
  }
  return *best;
}

MPoly MPoly::normalized() const {
  if (terms_.empty()) return *this;
  return leading_term().second < 0 ? -*this : *this;
}

MPoly MPoly::primitive() const {
  if (terms_.empty()) return *this;
  MPoly r = *this;
  const mpz_class g = content();
  if (g != 1) {
    for (auto& [e, c] : r.terms_) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  }
  return r.normalized();
}

std::vector<MPoly> MPoly::coefficients_in(std::size_t v) const {
  const int d = degree(v);
  std::vector<MPoly> out(static_cast<std::size_t>(std::max(d + 1, 0)), MPoly(vars_));
  for (const auto& [e, c] : terms_) {
    Monomial f = e;
    f[v] = 0;
    out[static_cast<std::size_t>(e[v])].terms_.emplace(std::move(f), c);
  }
  return out;
}

MPoly MPoly::from_coefficients(const std::vector<MPoly>& cs, std::size_t v) {
  if (cs.empty()) return MPoly();
  MPoly r(cs.front().vars_);
  for (std::size_t k = 0; k < cs.size(); ++k) {
    for (const auto& [e, c] : cs[k].terms_) {
      Monomial f = e;
      f[v] += static_cast<int>(k);
      r.add_term(f, c);
    }
  }
  return r;
}

MPoly MPoly::derivative(std::size_t v) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    if (e[v] == 0) continue;
    Monomial f = e;
    --f[v];
    r.add_term(f, c * e[v]);
  }
  return r;
}

MPoly MPoly::substitute(std::size_t v, const MPoly& value) const {
  check_same_ring(value);
  const auto cs = coefficients_in(v);
  // Horner in v.
  MPoly r(vars_);
  for (std::size_t k = cs.size(); k-- > 0;) {
    r = r * value;
    r += cs[k];
  }
  return r;
}

MPoly MPoly::evaluate(std::size_t v, const mpz_class& value) const {
  MPoly r(vars_);
  for (const auto& [e, c] : terms_) {
    Monomial f = e;
    f[v] = 0;
    mpz_class p;
    mpz_pow_ui(p.get_mpz_t(), value.get_mpz_t(), static_cast<unsigned long>(e[v]));
    r.add_term(f, c * p);
  }
  return r;
}

MPoly MPoly::substitute(const std::map<std::string, mpz_class>& assignment) const {
  MPoly r = *this;
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    auto it = assignment.find(vars_[i]);
    if (it == assignment.end()) {
      keep.push_back(vars_[i]);
    } else {
      r = r.evaluate(i, it->second);
    }
  }
  for (const auto& [name, value] : assignment) index_of(name);
  return r.with_vars(keep);
}

mpq_class MPoly::evaluate(const std::vector<mpq_class>& point) const {
  if (point.size() != arity()) throw DomainError("evaluation point has wrong arity");
  mpq_class s = 0;
  for (const auto& [e, c] : terms_) {
    mpq_class t = c;
    for (std::size_t i = 0; i < e.size(); ++i) {
      for (int k = 0; k < e[i]; ++k) t *= point[i];
    }
    s += t;
  }
  return s;
}

MPoly MPoly::with_vars(const std::vector<std::string>& vars) const {
  std::vector<int> map(vars_.size(), -1);
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    for (std::size_t j = 0; j < vars.size(); ++j) {
      if (vars[j] == vars_[i]) map[i] = static_cast<int>(j);
    }
  }
  MPoly r(vars);
  for (const auto& [e, c] : terms_) {
    Monomial f(vars.size(), 0);
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (map[i] < 0) throw DomainError("variable " + vars_[i] + " is used but not in the target ring");
      f[static_cast<std::size_t>(map[i])] = e[i];
    }
    r.add_term(f, c);
  }
  return r;
}

MPoly MPoly::drop_unused_vars() const {
  std::vector<std::string> keep;
  for (std::size_t i = 0; i < vars_.size(); ++i) {
    if (uses(i)) keep.push_back(vars_[i]);
  }
  return with_vars(keep);
}

std::string MPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<std::pair<Monomial, mpz_class>> ts(terms_.begin(), terms_.end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
  std::string out;
  bool first = true;
  for (const auto& [e, c] : ts) {
    mpz_class a = abs(c);
    if (first) {
      if (c < 0) out += "-";
    } else {
      out += c < 0 ? " - " : " + ";
    }
    first = false;
    std::string mono;
    for (std::size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += vars_[i];
      if (e[i] > 1) mono += "^" + std::to_string(e[i]);
    }
    if (mono.empty()) {
      out += a.get_str();
    } else if (a == 1) {
      out += mono;
    } else {
      out += a.get_str() + "*" + mono;
    }
  }
  return out;
}

// ---- parsing -----------------------------------------------------------------

namespace {

class Parser {
 public:
  Parser(std::string_view s, std::vector<std::string> vars) : s_(s), vars_(std::move(vars)) {}

  MPoly parse() {
    MPoly r = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected character");
    return r;
  }

 private:
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& what) const {
    throw DomainError("polynomial parse error at offset " + std::to_string(pos_) + ": " + what);
  }
  bool at(char c) {
    skip();
    return pos_ < s_.size() && s_[pos_] == c;
  }
  bool starts_factor() {
    skip();
    if (pos_ >= s_.size()) return false;
    const char c = s_[pos_];
    return c == '(' || std::isalnum(static_cast<unsigned char>(c)) || c == '_';
  }

  MPoly expr() {
    MPoly r = term();
    while (true) {
      if (at('+')) {
        ++pos_;
        r += term();
      } else if (at('-')) {
        ++pos_;
        r -= term();
      } else {
        return r;
      }
    }
  }

  MPoly term() {
    if (at('-')) {
      ++pos_;
      return -term();
    }
    if (at('+')) {
      ++pos_;
      return term();
    }
    MPoly r = power();
    while (true) {
      if (at('*')) {
        ++pos_;
        r *= power();
      } else if (starts_factor()) {
        r *= power();
      } else {
        return r;
      }
    }
  }

  MPoly power() {
    MPoly b = atom();
    if (at('^')) {
      ++pos_;
      skip();
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      if (start == pos_) fail("expected exponent");
      b = b.pow(static_cast<unsigned>(std::stoul(std::string(s_.substr(start, pos_ - start)))));
    }
    return b;
  }

  MPoly atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    const char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      MPoly r = expr();
      if (!at(')')) fail("expected ')'");
      ++pos_;
      return r;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      return MPoly::constant(vars_, mpz_class(std::string(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      const std::string name(s_.substr(start, pos_ - start));
      for (std::size_t i = 0; i < vars_.size(); ++i) {
        if (vars_[i] == name) return MPoly::variable(vars_, i);
      }
      fail("unknown variable " + name);
    }
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string_view s_;
  std::vector<std::string> vars_;
  std::size_t pos_ = 0;
};

std::vector<std::string> identifiers(std::string_view s) {
  std::vector<std::string> out;
  std::size_t i = 0;
  while (i < s.size()) {
    if (std::isalpha(static_cast<unsigned char>(s[i])) || s[i] == '_') {
      std::size_t j = i;
      while (j < s.size() && (std::isalnum(static_cast<unsigned char>(s[j])) || s[j] == '_')) ++j;
      std::string id(s.substr(i, j - i));
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
      i = j;
    } else if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    } else {
      ++i;
    }
  }
  return out;
}

}  // namespace

MPoly parse_mpoly(std::string_view text, std::vector<std::string> vars) {
  if (vars.empty()) vars = identifiers(text);
  return Parser(text, std::move(vars)).parse();
}

nlohmann::json to_json(const MPoly& f) {
  std::vector<std::pair<Monomial, mpz_class>> ts(f.terms().begin(), f.terms().end());
  std::sort(ts.begin(), ts.end(), [](const auto& a, const auto& b) { return grlex_less(b.first, a.first); });
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : ts) terms.push_back({e, c.get_str()});
  return {{"vars", f.vars()}, {"terms", terms}};
}

MPoly mpoly_from_json(const nlohmann::json& j) {
  try {
    MPoly f(j.at("vars").get<std::vector<std::string>>());
    for (const auto& t : j.at("terms")) {
      auto e = t.at(0).get<Monomial>();
      if (e.size() != f.arity()) throw DomainError("term arity mismatch in polynomial JSON");
      f.add_term(e, mpz_class(t.at(1).get<std::string>()));
    }
    return f;
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed polynomial JSON: ") + e.what());
  }
}

// ---- division, gcd, resultants ---------------------------------------------------

std::optional<MPoly> divide_exact(const MPoly& f, const MPoly& g) {
  if (g.is_zero()) throw DomainError("division by the zero polynomial");
  if (f.vars() != g.vars()) throw DomainError("polynomials over different variable lists");
  MPoly q(f.vars());
  MPoly r = f;
  const auto& [ge, gc] = *g.terms().rbegin();
  // Bound the degree of a quotient term in each variable.
  std::vector<int> fmax(f.arity()), gmax(f.arity());
  for (std::size_t i = 0; i < f.arity(); ++i) {
    fmax[i] = f.degree(i);
    gmax[i] = g.degree(i);
  }
  while (!r.is_zero()) {
    const auto& [re, rc] = *r.terms().rbegin();
    Monomial e(re.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      e[i] = re[i] - ge[i];
      if (e[i] < 0 || e[i] + gmax[i] > fmax[i]) return std::nullopt;
    }
    if (!mpz_divisible_p(rc.get_mpz_t(), gc.get_mpz_t())) return std::nullopt;
    mpz_class c;
    mpz_divexact(c.get_mpz_t(), rc.get_mpz_t(), gc.get_mpz_t());
    q.add_term(e, c);
    for (const auto& [te, tc] : g.terms()) {
      Monomial s(e.size());
      for (std::size_t i = 0; i < s.size(); ++i) s[i] = e[i] + te[i];
      r.add_term(s, -c * tc);
    }
  }
  return q;
}

namespace {

MPoly exact(const MPoly& f, const MPoly& g) {
  auto q = divide_exact(f, g);
  if (!q) throw DomainError("internal error: inexact polynomial division");
  return std::move(*q);
}

int lowest_used_var(const MPoly& f, const MPoly& g) {
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f.uses(i) || g.uses(i)) return static_cast<int>(i);
  }
  return -1;
}

MPoly integer_gcd(const MPoly& f, const MPoly& g) {
  mpz_class a = f.content();
  mpz_class b = g.content();
  mpz_class c;
  mpz_gcd(c.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return MPoly::constant(f.vars(), c);
}

}  // namespace

MPoly content_in(const MPoly& f, std::size_t v) {
  MPoly g(f.vars());
  for (const auto& c : f.coefficients_in(v)) {
    if (c.is_zero()) continue;
    g = gcd(g, c);
    if (g.is_constant() && g.constant_term() == 1) break;
  }
  return g;
}

MPoly pseudo_remainder(const MPoly& f, const MPoly& g, std::size_t v) {
  const int dg = g.degree(v);
  if (dg < 0) throw DomainError("pseudo-remainder by zero");
  const MPoly lc = g.coefficients_in(v).back();
  MPoly r = f;
  while (!r.is_zero() && r.degree(v) >= dg) {
    const int dr = r.degree(v);
    const MPoly lr = r.coefficients_in(v).back();
    Monomial e(f.arity(), 0);
    e[v] = dr - dg;
    r = lc * r - lr * MPoly::monomial(f.vars(), e, 1) * g;
  }
  return r;
}

MPoly gcd(const MPoly& f, const MPoly& g) {
  if (f.vars() != g.vars()) throw DomainError("polynomials over different variable lists");
  if (f.is_zero()) return g.normalized();
  if (g.is_zero()) return f.normalized();
  const int vi = lowest_used_var(f, g);
  if (vi < 0) return integer_gcd(f, g);
  const auto v = static_cast<std::size_t>(vi);
  if (!f.uses(v)) return gcd(f, content_in(g, v));
  if (!g.uses(v)) return gcd(content_in(f, v), g);

  const MPoly cf = content_in(f, v);
  const MPoly cg = content_in(g, v);
  const MPoly c = gcd(cf, cg);
  MPoly a = exact(f, cf);
  MPoly b = exact(g, cg);
  if (a.degree(v) < b.degree(v)) std::swap(a, b);
  while (true) {
    MPoly r = pseudo_remainder(a, b, v);
    if (r.is_zero()) break;
    if (r.degree(v) <= 0) return c.normalized();
    a = std::move(b);
    b = exact(r, content_in(r, v));
  }
  b = exact(b, content_in(b, v));
  return (c * b).normalized();
}

MPoly resultant(const MPoly& f, const MPoly& g, std::size_t v) {
  if (f.vars() != g.vars()) throw DomainError("polynomials over different variable lists");
  if (f.is_zero() || g.is_zero()) return MPoly(f.vars());
  const int m = f.degree(v);
  const int n = g.degree(v);
  if (m == 0) return f.pow(static_cast<unsigned>(n));
  if (n == 0) return g.pow(static_cast<unsigned>(m));
  const auto fc = f.coefficients_in(v);
  const auto gc = g.coefficients_in(v);
  const int size = m + n;
  std::vector<std::vector<MPoly>> a(size, std::vector<MPoly>(size, MPoly(f.vars())));
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k <= m; ++k) a[i][i + k] = fc[static_cast<std::size_t>(m - k)];
  }
  for (int i = 0; i < m; ++i) {
    for (int k = 0; k <= n; ++k) a[n + i][i + k] = gc[static_cast<std::size_t>(n - k)];
  }
  // Bareiss elimination.
  MPoly prev = MPoly::constant(f.vars(), 1);
  bool negate = false;
  for (int k = 0; k < size - 1; ++k) {
    if (a[k][k].is_zero()) {
      int swap = -1;
      for (int i = k + 1; i < size; ++i) {
        if (!a[i][k].is_zero()) {
          swap = i;
          break;
        }
      }
      if (swap < 0) return MPoly(f.vars());
      std::swap(a[k], a[swap]);
      negate = !negate;
    }
    for (int i = k + 1; i < size; ++i) {
      for (int j = k + 1; j < size; ++j) {
        MPoly t = a[k][k] * a[i][j] - a[i][k] * a[k][j];
        a[i][j] = exact(t, prev);
      }
      a[i][k] = MPoly(f.vars());
    }
    prev = a[k][k];
  }
  MPoly det = a[size - 1][size - 1];
  return negate ? -det : det;
}

MPoly squarefree_part(const MPoly& f) {
  if (f.is_zero() || f.is_constant()) return f.is_zero() ? f : MPoly::constant(f.vars(), 1);
  MPoly p = f.primitive();
  MPoly g = p;
  for (std::size_t v = 0; v < f.arity(); ++v) {
    if (p.uses(v)) g = gcd(g, p.derivative(v));
  }
  return exact(p, g).primitive();
}

bool associated(const MPoly& f, const MPoly& g) {
  if (f.vars() != g.vars()) return false;
  if (f.is_zero() || g.is_zero()) return f.is_zero() && g.is_zero();
  return f.primitive() == g.primitive();
}

}  // namespace lineext
