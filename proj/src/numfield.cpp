#include "lineext/numfield.hpp"

#include "lineext/error.hpp"

namespace lineext {

namespace {

using QPoly = std::vector<mpq_class>;

void trim_q(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// a mod b over Q.
QPoly qrem(QPoly a, const QPoly& b) {
  trim_q(a);
  while (a.size() >= b.size() && !a.empty()) {
    const mpq_class f = a.back() / b.back();
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] -= f * b[i];
    trim_q(a);
  }
  return a;
}

}  // namespace

NumberField::NumberField(UPoly q) : q_(std::move(q)) {
  if (q_.degree() < 1) throw DomainError("number field modulus must have positive degree");
}

NumberField::Elem NumberField::from(const mpq_class& c) const {
  Elem e = zero();
  e[0] = c;
  return e;
}

NumberField::Elem NumberField::generator() const {
  if (degree() == 1) {
    mpq_class root(-q_.c[0], q_.c[1]);
    root.canonicalize();
    return from(root);
  }
  Elem e = zero();
  e[1] = 1;
  return e;
}

bool NumberField::is_zero(const Elem& a) const {
  for (const auto& x : a) {
    if (x != 0) return false;
  }
  return true;
}

NumberField::Elem NumberField::add(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

NumberField::Elem NumberField::sub(const Elem& a, const Elem& b) const {
  Elem r = a;
  for (std::size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

NumberField::Elem NumberField::mul(const Elem& a, const Elem& b) const {
  const std::size_t n = static_cast<std::size_t>(degree());
  QPoly prod(2 * n - 1, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i] == 0) continue;
    for (std::size_t j = 0; j < n; ++j) prod[i + j] += a[i] * b[j];
  }
  QPoly r = qrem(std::move(prod), QPoly(q_.c.begin(), q_.c.end()));
  r.resize(n, 0);
  return r;
}

NumberField::Elem NumberField::inv(const Elem& a) const {
  if (is_zero(a)) throw DomainError("inverse of zero in a number field");
  // Extended Euclid on (q, a): track s with s*a = r (mod q).
  QPoly r0(q_.c.begin(), q_.c.end()), r1 = a;
  trim_q(r1);
  QPoly s0{0}, s1{1};
  while (r1.size() > 1) {
    QPoly quo(r0.size() - r1.size() + 1, 0);
    QPoly rem = r0;
    while (rem.size() >= r1.size() && !rem.empty()) {
      const mpq_class f = rem.back() / r1.back();
      const std::size_t s = rem.size() - r1.size();
      quo[s] = f;
      for (std::size_t i = 0; i < r1.size(); ++i) rem[s + i] -= f * r1[i];
      trim_q(rem);
    }
    QPoly s2(std::max(s0.size(), quo.size() + s1.size() - 1), 0);
    for (std::size_t i = 0; i < s0.size(); ++i) s2[i] += s0[i];
    for (std::size_t i = 0; i < quo.size(); ++i) {
      for (std::size_t j = 0; j < s1.size(); ++j) s2[i + j] -= quo[i] * s1[j];
    }
    trim_q(s2);
    r0 = std::move(r1);
    r1 = std::move(rem);
    s0 = std::move(s1);
    s1 = std::move(s2);
  }
  // r1 is a nonzero constant since q is irreducible.
  Elem out = qrem(s1, QPoly(q_.c.begin(), q_.c.end()));
  out.resize(static_cast<std::size_t>(degree()), 0);
  for (auto& x : out) x /= r1[0];
  return out;
}

NumberField::Elem NumberField::evaluate(const MPoly& f, const std::vector<Elem>& point) const {
  if (point.size() != f.arity()) throw DomainError("point dimension does not match polynomial arity");
  std::vector<std::vector<Elem>> powers(f.arity());
  for (std::size_t v = 0; v < f.arity(); ++v) {
    powers[v].push_back(from(1));
    for (int d = 1; d <= f.degree(v); ++d) powers[v].push_back(mul(powers[v].back(), point[v]));
  }
  Elem s = zero();
  for (const auto& [e, c] : f.terms()) {
    Elem t = from(mpq_class(c));
    for (std::size_t v = 0; v < e.size(); ++v) {
      if (e[v]) t = mul(t, powers[v][static_cast<std::size_t>(e[v])]);
    }
    s = add(s, t);
  }
  return s;
}

NumberField::Poly NumberField::evaluate_in(const MPoly& f, std::size_t v, const std::vector<Elem>& point) const {
  Poly out;
  const auto cs = f.coefficients_in(v);
  for (const auto& c : cs) out.push_back(evaluate(c, point));
  trim(out);
  return out;
}

void NumberField::trim(Poly& p) const {
  while (!p.empty() && is_zero(p.back())) p.pop_back();
}

NumberField::Poly NumberField::rem(Poly a, const Poly& b) const {
  trim(a);
  const Elem lead_inv = inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    const Elem f = mul(a.back(), lead_inv);
    const std::size_t s = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = sub(a[s + i], mul(f, b[i]));
    a.back() = zero();
    trim(a);
  }
  return a;
}

NumberField::Poly NumberField::gcd(Poly a, Poly b) const {
  trim(a);
  trim(b);
  while (!b.empty()) {
    Poly r = rem(std::move(a), b);
    a = std::move(b);
    b = std::move(r);
  }
  if (a.empty()) return a;
  const Elem li = inv(a.back());
  for (auto& c : a) c = mul(c, li);
  return a;
}

NumberField::Poly NumberField::quotient(Poly a, const Poly& b) const {
  trim(a);
  if (a.size() < b.size()) return {};
  Poly q(a.size() - b.size() + 1, zero());
  const Elem lead_inv = inv(b.back());
  while (a.size() >= b.size() && !a.empty()) {
    const Elem f = mul(a.back(), lead_inv);
    const std::size_t s = a.size() - b.size();
    q[s] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[s + i] = sub(a[s + i], mul(f, b[i]));
    a.back() = zero();
    trim(a);
  }
  trim(q);
  return q;
}

NumberField::Poly NumberField::derivative(const Poly& a) const {
  Poly d;
  for (std::size_t i = 1; i < a.size(); ++i) {
    Elem c = a[i];
    for (auto& x : c) x *= static_cast<unsigned long>(i);
    d.push_back(std::move(c));
  }
  trim(d);
  return d;
}

NumberField::Poly NumberField::squarefree(const Poly& a) const {
  if (a.size() <= 2) return gcd(a, {});
  Poly s = quotient(a, gcd(a, derivative(a)));
  return gcd(s, {});
}

std::string NumberField::to_string(const Elem& a, const std::string& t) const {
  std::string out;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] == 0) continue;
    std::string c = a[i].get_str();
    if (!out.empty()) out += a[i] < 0 ? " - " : " + ";
    else if (a[i] < 0) out += "-";
    if (a[i] < 0) c = mpq_class(-a[i]).get_str();
    if (i == 0) {
      out += c;
    } else {
      if (c != "1") out += c + "*";
      out += t;
      if (i > 1) out += "^" + std::to_string(i);
    }
  }
  return out.empty() ? "0" : out;
}

}  // namespace lineext
