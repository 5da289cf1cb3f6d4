#include "lineext/upoly.hpp"

#include <algorithm>
#include <functional>
#include <random>

#include "lineext/error.hpp"

namespace lineext {

// ---- Z[x] ----------------------------------------------------------------------

UPoly::UPoly(std::vector<mpz_class> coeffs) : c(std::move(coeffs)) {
  while (!c.empty() && c.back() == 0) c.pop_back();
}

mpz_class UPoly::content() const {
  mpz_class g = 0;
  for (const auto& x : c) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  return g;
}

UPoly UPoly::primitive() const {
  if (c.empty()) return *this;
  mpz_class g = content();
  if (lead() < 0) g = -g;
  UPoly r = *this;
  for (auto& x : r.c) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return r;
}

UPoly UPoly::derivative() const {
  std::vector<mpz_class> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(c[i] * static_cast<unsigned long>(i));
  return UPoly(std::move(d));
}

mpq_class UPoly::evaluate(const mpq_class& x) const {
  mpq_class s = 0;
  for (std::size_t i = c.size(); i-- > 0;) s = s * x + c[i];
  return s;
}

std::string UPoly::to_string(const std::string& var) const {
  return to_mpoly(*this, var).to_string();
}

UPoly operator*(const UPoly& a, const UPoly& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<mpz_class> r(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    for (std::size_t j = 0; j < b.c.size(); ++j) r[i + j] += a.c[i] * b.c[j];
  }
  return UPoly(std::move(r));
}

UPoly to_upoly(const MPoly& f) {
  int var = -1;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f.uses(i)) {
      if (var >= 0) throw DomainError("polynomial is not univariate: " + f.to_string());
      var = static_cast<int>(i);
    }
  }
  std::vector<mpz_class> c(static_cast<std::size_t>(std::max(0, var < 0 ? 1 : f.degree(var) + 1)), 0);
  for (const auto& [e, v] : f.terms()) c[var < 0 ? 0 : static_cast<std::size_t>(e[var])] = v;
  return UPoly(std::move(c));
}

MPoly to_mpoly(const UPoly& u, const std::string& var) {
  MPoly f({var});
  for (std::size_t i = 0; i < u.c.size(); ++i) f.add_term({static_cast<int>(i)}, u.c[i]);
  return f;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

// ---- Q[x] helpers ----------------------------------------------------------------

namespace {

using QPoly = std::vector<mpq_class>;

void trim(QPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

QPoly to_q(const UPoly& u) { return QPoly(u.c.begin(), u.c.end()); }

UPoly from_q(QPoly a) {
  trim(a);
  if (a.empty()) return {};
  mpz_class l = 1;
  for (const auto& x : a) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), x.get_den_mpz_t());
  std::vector<mpz_class> c;
  for (const auto& x : a) c.push_back(mpz_class(x * l));
  return UPoly(std::move(c)).primitive();
}

// a = q*b + r over Q.
void divmod(QPoly a, const QPoly& b, QPoly& q, QPoly& r) {
  trim(a);
  q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (!a.empty() && a.size() >= b.size()) {
    const std::size_t shift = a.size() - b.size();
    const mpq_class f = a.back() / b.back();
    q[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    trim(a);
  }
  r = std::move(a);
}

}  // namespace

UPoly gcd(const UPoly& a, const UPoly& b) {
  if (a.is_zero()) return b.primitive();
  if (b.is_zero()) return a.primitive();
  QPoly x = to_q(a.primitive());
  QPoly y = to_q(b.primitive());
  while (!y.empty()) {
    QPoly q, r;
    divmod(x, y, q, r);
    x = std::move(y);
    y = to_q(from_q(std::move(r)));
  }
  return from_q(std::move(x));
}

UPoly divide_exact(const UPoly& a, const UPoly& b) {
  if (b.is_zero()) throw DomainError("division by the zero polynomial");
  QPoly q, r;
  divmod(to_q(a), to_q(b), q, r);
  if (!r.empty()) throw DomainError("inexact univariate division");
  return from_q(std::move(q));
}

UPoly squarefree_part(const UPoly& u) {
  if (u.degree() <= 0) return u.is_zero() ? u : UPoly({1});
  return divide_exact(u, gcd(u, u.derivative()));
}

// ---- Sturm ---------------------------------------------------------------------------

int sturm_real_roots(const UPoly& u, const std::optional<mpq_class>& lo, const std::optional<mpq_class>& hi) {
  if (u.is_zero()) throw DomainError("Sturm sequence of the zero polynomial");
  const UPoly p = squarefree_part(u);
  if (p.degree() <= 0) return 0;
  std::vector<QPoly> seq{to_q(p), to_q(p.derivative())};
  while (true) {
    QPoly q, r;
    divmod(seq[seq.size() - 2], seq.back(), q, r);
    if (r.empty()) break;
    for (auto& x : r) x = -x;
    // Positive rescaling keeps the signs and the numbers small.
    mpq_class scale = abs(r.back());
    for (auto& x : r) x /= scale;
    seq.push_back(std::move(r));
  }
  auto sign_changes = [&](const std::optional<mpq_class>& x, int at_inf) {
    int changes = 0;
    int last = 0;
    for (const auto& s : seq) {
      int sg;
      if (x) {
        mpq_class v = 0;
        for (std::size_t i = s.size(); i-- > 0;) v = v * *x + s[i];
        sg = sgn(v);
      } else {
        sg = sgn(s.back());
        if (at_inf < 0 && (s.size() - 1) % 2 == 1) sg = -sg;
      }
      if (sg == 0) continue;
      if (last != 0 && sg != last) ++changes;
      last = sg;
    }
    return changes;
  };
  if (lo && hi && *hi <= *lo) return 0;
  return sign_changes(lo, -1) - sign_changes(hi, +1);
}

// ---- F_p[x] ---------------------------------------------------------------------------

namespace {

using Zp = std::vector<std::int64_t>;

struct Field {
  std::int64_t p;

  std::int64_t norm(std::int64_t x) const {
    x %= p;
    return x < 0 ? x + p : x;
  }
  std::int64_t mul(std::int64_t a, std::int64_t b) const {
    return static_cast<std::int64_t>((static_cast<__int128>(a) * b) % p);
  }
  std::int64_t inv(std::int64_t a) const {
    std::int64_t t = 0, nt = 1, r = p, nr = norm(a);
    while (nr) {
      const std::int64_t q = r / nr;
      std::tie(t, nt) = std::make_pair(nt, t - q * nt);
      std::tie(r, nr) = std::make_pair(nr, r - q * nr);
    }
    return norm(t);
  }

  static void trim(Zp& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
  }
  Zp reduce(const UPoly& u) const {
    Zp a;
    mpz_class m;
    for (const auto& x : u.c) {
      mpz_fdiv_r_ui(m.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(p));
      a.push_back(static_cast<std::int64_t>(m.get_ui()));
    }
    trim(a);
    return a;
  }
  Zp monic(Zp a) const {
    trim(a);
    if (a.empty()) return a;
    const auto l = inv(a.back());
    for (auto& x : a) x = mul(x, l);
    return a;
  }
  Zp sub(Zp a, const Zp& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] - b[i]);
    trim(a);
    return a;
  }
  Zp add(Zp a, const Zp& b) const {
    if (a.size() < b.size()) a.resize(b.size(), 0);
    for (std::size_t i = 0; i < b.size(); ++i) a[i] = norm(a[i] + b[i]);
    trim(a);
    return a;
  }
  Zp mulp(const Zp& a, const Zp& b) const {
    if (a.empty() || b.empty()) return {};
    Zp r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = (r[i + j] + mul(a[i], b[j])) % p;
    }
    trim(r);
    return r;
  }
  void divmod(Zp a, const Zp& b, Zp& q, Zp& r) const {
    trim(a);
    const auto li = inv(b.back());
    q.assign(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
    while (!a.empty() && a.size() >= b.size()) {
      const std::size_t shift = a.size() - b.size();
      const auto f = mul(a.back(), li);
      q[shift] = f;
      for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = norm(a[i + shift] - mul(f, b[i]));
      trim(a);
    }
    r = std::move(a);
  }
  Zp mod(const Zp& a, const Zp& b) const {
    Zp q, r;
    divmod(a, b, q, r);
    return r;
  }
  Zp gcd(Zp a, Zp b) const {
    trim(a);
    trim(b);
    while (!b.empty()) {
      Zp r = mod(a, b);
      a = std::move(b);
      b = std::move(r);
    }
    return monic(a);
  }
  // s*a + t*b = gcd(a, b) (monic).
  Zp ext_gcd(Zp a, Zp b, Zp& s, Zp& t) const {
    Zp s0{1}, s1, t0, t1{1};
    trim(a);
    trim(b);
    while (!b.empty()) {
      Zp q, r;
      divmod(a, b, q, r);
      a = std::move(b);
      b = std::move(r);
      Zp s2 = sub(s0, mulp(q, s1));
      Zp t2 = sub(t0, mulp(q, t1));
      s0 = std::move(s1);
      s1 = std::move(s2);
      t0 = std::move(t1);
      t1 = std::move(t2);
    }
    const auto li = inv(a.back());
    for (auto& x : s0) x = mul(x, li);
    for (auto& x : t0) x = mul(x, li);
    s = s0;
    t = t0;
    return monic(a);
  }
  Zp powmod(Zp base, mpz_class e, const Zp& m) const {
    Zp r{1};
    base = mod(base, m);
    while (e > 0) {
      if (mpz_odd_p(e.get_mpz_t())) r = mod(mulp(r, base), m);
      e >>= 1;
      if (e > 0) base = mod(mulp(base, base), m);
    }
    return r;
  }
  Zp derivative(const Zp& a) const {
    Zp d;
    for (std::size_t i = 1; i < a.size(); ++i) d.push_back(mul(a[i], static_cast<std::int64_t>(i % p)));
    trim(d);
    return d;
  }
};

std::vector<int> prime_divisors(int n) {
  std::vector<int> out;
  for (int d = 2; d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  return out;
}

// Distinct-degree factorization of a monic squarefree polynomial: pairs
// (product of the irreducible factors of degree d, d).
std::vector<std::pair<Zp, int>> distinct_degree(const Field& F, Zp f) {
  std::vector<std::pair<Zp, int>> out;
  const Zp x{0, 1};
  Zp h = x;
  int d = 0;
  while (static_cast<int>(f.size()) - 1 >= 2 * (d + 1)) {
    ++d;
    h = F.powmod(h, F.p, f);
    Zp g = F.gcd(f, F.sub(h, x));
    if (g.size() > 1) {
      out.emplace_back(g, d);
      Zp q, r;
      F.divmod(f, g, q, r);
      f = F.monic(q);
      h = F.mod(h, f);
    }
  }
  if (f.size() > 1) out.emplace_back(f, static_cast<int>(f.size()) - 1);
  return out;
}

// Cantor-Zassenhaus equal-degree splitting for odd p.
void equal_degree(const Field& F, const Zp& f, int d, std::mt19937_64& rng, std::vector<Zp>& out) {
  const int n = static_cast<int>(f.size()) - 1;
  if (n == d) {
    out.push_back(f);
    return;
  }
  mpz_class e;
  mpz_ui_pow_ui(e.get_mpz_t(), static_cast<unsigned long>(F.p), static_cast<unsigned long>(d));
  e = (e - 1) / 2;
  std::uniform_int_distribution<std::int64_t> dist(0, F.p - 1);
  while (true) {
    Zp a(static_cast<std::size_t>(n), 0);
    for (auto& x : a) x = dist(rng);
    Field::trim(a);
    if (a.size() < 2) continue;
    Zp g = F.gcd(f, a);
    if (g.size() == 1) {
      g = F.gcd(f, F.sub(F.powmod(a, e, f), Zp{1}));
    }
    if (g.size() > 1 && g.size() < f.size()) {
      Zp q, r;
      F.divmod(f, g, q, r);
      equal_degree(F, g, d, rng, out);
      equal_degree(F, F.monic(q), d, rng, out);
      return;
    }
  }
}

std::vector<Zp> factor_mod_p(const Field& F, const Zp& f) {
  std::mt19937_64 rng(0x5eed + static_cast<std::uint64_t>(F.p));
  std::vector<Zp> out;
  for (const auto& [g, d] : distinct_degree(F, F.monic(f))) equal_degree(F, g, d, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

bool fp_irreducible(const UPoly& h, std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const Field F{p};
  const Zp f = F.monic(F.reduce(h));
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n == 1) return true;
  const Zp x{0, 1};
  // x^(p^k) mod f for k = 1..n.
  std::vector<Zp> frob{x};
  for (int k = 1; k <= n; ++k) frob.push_back(F.powmod(frob.back(), p, f));
  if (F.sub(frob[static_cast<std::size_t>(n)], x).size() != 0) return false;
  for (int q : prime_divisors(n)) {
    if (F.gcd(f, F.sub(frob[static_cast<std::size_t>(n / q)], x)).size() != 1) return false;
  }
  return true;
}

bool fp_irreducible_bruteforce(const UPoly& h, std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  const Field F{p};
  const Zp f = F.monic(F.reduce(h));
  const int n = static_cast<int>(f.size()) - 1;
  if (n <= 0) return false;
  if (n <= 3) {
    for (std::int64_t r = 0; r < p; ++r) {
      std::int64_t v = 0;
      for (std::size_t i = f.size(); i-- > 0;) v = F.norm(F.mul(v, r) + f[i]);
      if (v == 0) return n == 1;
    }
    return true;
  }
  for (int d = 1; d <= n / 2; ++d) {
    Zp g(static_cast<std::size_t>(d) + 1, 0);
    g[static_cast<std::size_t>(d)] = 1;
    // Odometer over the d lower coefficients.
    while (true) {
      if (F.mod(f, g).empty()) return false;
      int i = 0;
      while (i < d && ++g[static_cast<std::size_t>(i)] == p) g[static_cast<std::size_t>(i++)] = 0;
      if (i == d) break;
    }
  }
  return true;
}

// ---- factorization over Q ----------------------------------------------------------------

namespace {

using ZPoly = std::vector<mpz_class>;

void mod_coeffs(ZPoly& a, const mpz_class& m) {
  for (auto& x : a) mpz_fdiv_r(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
  while (!a.empty() && a.back() == 0) a.pop_back();
}

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly r(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  }
  return r;
}

ZPoly from_zp(const Zp& a) { return ZPoly(a.begin(), a.end()); }

Zp to_zp(const ZPoly& a, const Field& F) {
  Zp r;
  mpz_class m;
  for (const auto& x : a) {
    mpz_fdiv_r_ui(m.get_mpz_t(), x.get_mpz_t(), static_cast<unsigned long>(F.p));
    r.push_back(static_cast<std::int64_t>(m.get_ui()));
  }
  Field::trim(r);
  return r;
}

// Lifts F = G*H (all monic, F given mod p^k) from mod p to mod p^k.
void hensel_pair(const Field& Fp, const ZPoly& target, const Zp& g0, const Zp& h0, int k, ZPoly& G, ZPoly& H) {
  Zp s, t;
  Fp.ext_gcd(g0, h0, s, t);
  G = from_zp(g0);
  H = from_zp(h0);
  mpz_class m = Fp.p;
  for (int j = 1; j < k; ++j) {
    ZPoly diff = target;
    const ZPoly gh = zmul(G, H);
    if (diff.size() < gh.size()) diff.resize(gh.size(), 0);
    for (std::size_t i = 0; i < gh.size(); ++i) diff[i] -= gh[i];
    for (auto& x : diff) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), m.get_mpz_t());
    const Zp e = to_zp(diff, Fp);
    Zp q, r;
    Fp.divmod(Fp.mulp(t, e), g0, q, r);
    const Zp dh = Fp.add(Fp.mulp(s, e), Fp.mulp(q, h0));
    ZPoly dG = from_zp(r);
    ZPoly dH = from_zp(dh);
    if (G.size() < dG.size()) G.resize(dG.size(), 0);
    if (H.size() < dH.size()) H.resize(dH.size(), 0);
    for (std::size_t i = 0; i < dG.size(); ++i) G[i] += m * dG[i];
    for (std::size_t i = 0; i < dH.size(); ++i) H[i] += m * dH[i];
    m *= Fp.p;
  }
}

void hensel_multi(const Field& Fp, const ZPoly& target, const std::vector<Zp>& factors, int k,
                  std::vector<ZPoly>& out) {
  if (factors.size() == 1) {
    out.push_back(target);
    return;
  }
  const std::size_t half = factors.size() / 2;
  Zp g0{1}, h0{1};
  for (std::size_t i = 0; i < half; ++i) g0 = Fp.mulp(g0, factors[i]);
  for (std::size_t i = half; i < factors.size(); ++i) h0 = Fp.mulp(h0, factors[i]);
  ZPoly G, H;
  hensel_pair(Fp, target, g0, h0, k, G, H);
  mpz_class pk;
  mpz_ui_pow_ui(pk.get_mpz_t(), static_cast<unsigned long>(Fp.p), static_cast<unsigned long>(k));
  mod_coeffs(G, pk);
  mod_coeffs(H, pk);
  hensel_multi(Fp, G, std::vector<Zp>(factors.begin(), factors.begin() + static_cast<long>(half)), k, out);
  hensel_multi(Fp, H, std::vector<Zp>(factors.begin() + static_cast<long>(half), factors.end()), k, out);
}

std::optional<UPoly> divide_z(const UPoly& a, const UPoly& b) {
  if (a.degree() < b.degree()) return std::nullopt;
  std::vector<mpz_class> r = a.c;
  std::vector<mpz_class> q(a.c.size() - b.c.size() + 1, 0);
  for (std::size_t s = q.size(); s-- > 0;) {
    const mpz_class& top = r[s + b.c.size() - 1];
    if (!mpz_divisible_p(top.get_mpz_t(), b.lead().get_mpz_t())) return std::nullopt;
    mpz_class f;
    mpz_divexact(f.get_mpz_t(), top.get_mpz_t(), b.lead().get_mpz_t());
    q[s] = f;
    for (std::size_t i = 0; i < b.c.size(); ++i) r[s + i] -= f * b.c[i];
  }
  for (const auto& x : r) {
    if (x != 0) return std::nullopt;
  }
  return UPoly(std::move(q));
}

// Factors a primitive squarefree polynomial of degree >= 1.
std::vector<UPoly> zassenhaus(const UPoly& u) {
  if (u.degree() <= 1) return {u.primitive()};
  const UPoly du = u.derivative();
  // Pick the prime (among a few good ones) giving the fewest modular factors.
  std::int64_t best_p = 0;
  std::vector<Zp> best;
  int tried = 0;
  for (std::int64_t p = 3; tried < 6 && p < 2000; p += 2) {
    if (!is_prime(p)) continue;
    const Field F{p};
    if (mpz_divisible_ui_p(u.lead().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    const Zp f = F.reduce(u);
    if (F.gcd(f, F.reduce(du)).size() != 1) continue;
    ++tried;
    auto fs = factor_mod_p(F, f);
    if (best_p == 0 || fs.size() < best.size()) {
      best_p = p;
      best = std::move(fs);
    }
    if (best.size() == 1) return {u.primitive()};
  }
  if (best_p == 0) throw DomainError("no suitable prime for factorization");
  const Field F{best_p};

  // Bound on coefficients of any factor times the leading coefficient.
  mpz_class norm2 = 0;
  for (const auto& x : u.c) norm2 += x * x;
  mpz_class bound = sqrt(norm2) + 1;
  bound <<= static_cast<unsigned long>(u.degree());
  bound *= abs(u.lead());
  bound *= 2;
  int k = 1;
  mpz_class pk = best_p;
  while (pk <= bound) {
    pk *= best_p;
    ++k;
  }

  ZPoly target = u.c;
  {
    mpz_class li;
    mpz_invert(li.get_mpz_t(), u.lead().get_mpz_t(), pk.get_mpz_t());
    for (auto& x : target) x *= li;
    mod_coeffs(target, pk);
  }
  std::vector<ZPoly> lifted;
  hensel_multi(F, target, best, k, lifted);

  std::vector<UPoly> result;
  UPoly rest = u;
  std::vector<ZPoly> pool = lifted;
  const mpz_class half = pk / 2;
  std::size_t s = 1;
  while (2 * s <= pool.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t i = 0; i < s; ++i) idx[i] = i;
    while (true) {
      ZPoly g{rest.lead()};
      for (auto i : idx) {
        g = zmul(g, pool[i]);
        mod_coeffs(g, pk);
      }
      for (auto& x : g) {
        if (x > half) x -= pk;
      }
      const UPoly cand = UPoly(g).primitive();
      if (cand.degree() >= 1) {
        if (auto q = divide_z(rest, cand)) {
          result.push_back(cand);
          rest = q->primitive();
          std::vector<ZPoly> next;
          for (std::size_t i = 0; i < pool.size(); ++i) {
            if (std::find(idx.begin(), idx.end(), i) == idx.end()) next.push_back(pool[i]);
          }
          pool = std::move(next);
          found = true;
          break;
        }
      }
      // Next combination.
      int j = static_cast<int>(s) - 1;
      while (j >= 0 && idx[static_cast<std::size_t>(j)] == pool.size() - s + static_cast<std::size_t>(j)) --j;
      if (j < 0) break;
      ++idx[static_cast<std::size_t>(j)];
      for (std::size_t i = static_cast<std::size_t>(j) + 1; i < s; ++i) idx[i] = idx[i - 1] + 1;
    }
    if (!found) ++s;
  }
  if (rest.degree() >= 1) result.push_back(rest.primitive());
  return result;
}

}  // namespace

std::vector<UPoly> rational_factors(const UPoly& u, int max_degree) {
  if (u.is_zero()) throw DomainError("cannot factor the zero polynomial");
  if (u.degree() > max_degree) {
    throw DomainError("degree " + std::to_string(u.degree()) + " exceeds the factorization bound " +
                      std::to_string(max_degree));
  }
  std::vector<UPoly> out;
  if (u.degree() == 0) return out;
  // Squarefree decomposition (Musser).
  UPoly a = u.primitive();
  UPoly c = gcd(a, a.derivative());
  UPoly w = divide_exact(a, c);
  int mult = 1;
  auto emit = [&](const UPoly& z, int m) {
    if (z.degree() < 1) return;
    for (const auto& f : zassenhaus(z.primitive())) {
      for (int i = 0; i < m; ++i) out.push_back(f);
    }
  };
  while (c.degree() > 0) {
    const UPoly y = gcd(w, c);
    emit(divide_exact(w, y), mult);
    ++mult;
    w = y;
    c = divide_exact(c, y);
  }
  emit(w, mult);
  std::sort(out.begin(), out.end(), [](const UPoly& x, const UPoly& y) {
    if (x.degree() != y.degree()) return x.degree() < y.degree();
    return std::lexicographical_compare(x.c.rbegin(), x.c.rend(), y.c.rbegin(), y.c.rend());
  });
  return out;
}

}  // namespace lineext
