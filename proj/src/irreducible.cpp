#include "lineext/irreducible.hpp"

#include <functional>
#include <numeric>

#include "lineext/error.hpp"

namespace lineext {

namespace {

// Content w.r.t. v is a unit if some coefficient in v is a nonzero constant;
// otherwise fall back to the gcd.
bool unit_content(const MPoly& f, std::size_t v) {
  for (const auto& c : f.coefficients_in(v)) {
    if (!c.is_zero() && c.is_constant() && abs(c.constant_term()) == 1) return true;
  }
  const MPoly g = content_in(f, v);
  return g.is_constant() && abs(g.constant_term()) == 1;
}

bool unit_content_mod(const MPoly& f, std::size_t v, std::int64_t p) {
  for (const auto& c : f.coefficients_in(v)) {
    if (!c.is_zero() && c.is_constant() && !mpz_divisible_ui_p(c.constant_term().get_mpz_t(), static_cast<unsigned long>(p))) {
      return true;
    }
  }
  return false;
}

MPoly reduce_mod(const MPoly& f, std::int64_t p) {
  MPoly r(f.vars());
  mpz_class m;
  for (const auto& [e, c] : f.terms()) {
    mpz_fdiv_r_ui(m.get_mpz_t(), c.get_mpz_t(), static_cast<unsigned long>(p));
    r.add_term(e, m);
  }
  return r;
}

std::vector<std::size_t> used_vars(const MPoly& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f.uses(i)) out.push_back(i);
  }
  return out;
}

// Values lo..hi ordered 0, 1, -1, 2, -2, ...
std::vector<long> grid_values(long lo, long hi) {
  std::vector<long> out;
  for (long m = 0; m <= std::max(std::abs(lo), std::abs(hi)); ++m) {
    if (m >= lo && m <= hi) out.push_back(m);
    if (m != 0 && -m >= lo && -m <= hi) out.push_back(-m);
  }
  return out;
}

// Calls visit(assignment) for each point of the grid over `others`; stops
// when visit returns true.
bool for_each_assignment(const std::vector<std::string>& others, const std::vector<long>& values,
                         const std::function<bool(const std::map<std::string, long>&)>& visit) {
  std::map<std::string, long> a;
  std::function<bool(std::size_t)> rec = [&](std::size_t i) {
    if (i == others.size()) return visit(a);
    for (long v : values) {
      a[others[i]] = v;
      if (rec(i + 1)) return true;
    }
    return false;
  };
  return rec(0);
}

std::map<std::string, mpz_class> to_mpz(const std::map<std::string, long>& a) {
  std::map<std::string, mpz_class> out;
  for (const auto& [k, v] : a) out[k] = v;
  return out;
}

}  // namespace

SpecializationResult z_irreducible_by_specialization(const MPoly& f0, const std::string& keep,
                                                     const std::map<std::string, mpz_class>& assignment,
                                                     std::int64_t p) {
  if (!is_prime(p)) throw DomainError(std::to_string(p) + " is not prime");
  if (f0.is_zero()) return SpecializationResult::Unknown;
  const MPoly f = f0.primitive();
  const std::size_t k = f.index_of(keep);
  const int deg = f.degree(k);
  if (deg < 1) return SpecializationResult::Unknown;
  for (std::size_t i : used_vars(f)) {
    if (i != k && !assignment.count(f.vars()[i])) return SpecializationResult::Unknown;
  }
  if (!unit_content(f, k)) return SpecializationResult::Unknown;
  std::map<std::string, mpz_class> a;
  for (const auto& [name, value] : assignment) {
    if (name != keep) a[name] = value;
  }
  const UPoly h = to_upoly(f.substitute(a));
  if (h.degree() != deg) return SpecializationResult::Unknown;
  if (mpz_divisible_ui_p(h.lead().get_mpz_t(), static_cast<unsigned long>(p))) return SpecializationResult::Unknown;
  return fp_irreducible(h, p) ? SpecializationResult::Certified : SpecializationResult::Unknown;
}

IrreducibilityCertificate q_irreducible(const MPoly& f0, const IrreducibilityOptions& opt) {
  IrreducibilityCertificate cert;
  cert.method = "no specialization certificate found";
  if (f0.is_zero() || f0.is_constant()) {
    cert.method = "constant polynomial";
    return cert;
  }
  const MPoly f = f0.primitive();
  const auto used = used_vars(f);
  const auto values = grid_values(opt.assign_lo, opt.assign_hi);
  for (std::size_t k : used) {
    if (!unit_content(f, k)) continue;
    const int deg = f.degree(k);
    std::vector<std::string> others;
    for (std::size_t i : used) {
      if (i != k) others.push_back(f.vars()[i]);
    }
    const bool found = for_each_assignment(others, values, [&](const std::map<std::string, long>& a) {
      const UPoly h = to_upoly(f.substitute(to_mpz(a)));
      if (h.degree() != deg) return false;
      for (auto p : opt.primes) {
        if (mpz_divisible_ui_p(h.lead().get_mpz_t(), static_cast<unsigned long>(p))) continue;
        if (fp_irreducible(h, p)) {
          cert.status = IrreducibilityStatus::Certified;
          cert.method = "specialization";
          cert.prime = p;
          cert.keep = f.vars()[k];
          cert.assignment = a;
          return true;
        }
      }
      return false;
    });
    if (found) return cert;
  }
  // Specializations irreducible over Q (prime 0 marks the rational case).
  for (std::size_t k : used) {
    if (!unit_content(f, k)) continue;
    const int deg = f.degree(k);
    std::vector<std::string> others;
    for (std::size_t i : used) {
      if (i != k) others.push_back(f.vars()[i]);
    }
    const bool found = for_each_assignment(others, values, [&](const std::map<std::string, long>& a) {
      const UPoly h = to_upoly(f.substitute(to_mpz(a)));
      if (h.degree() != deg || h.degree() > 64) return false;
      if (rational_factors(h, 64).size() != 1) return false;
      cert.status = IrreducibilityStatus::Certified;
      cert.method = "specialization over Q";
      cert.prime = 0;
      cert.keep = f.vars()[k];
      cert.assignment = a;
      return true;
    });
    if (found) return cert;
  }
  return cert;
}

namespace {

// f mod p irreducible over F_p by specialization, with a coprime polytope.
IrreducibilityCertificate modp_certificate(const MPoly& f, const IrreducibilityOptions& opt) {
  IrreducibilityCertificate cert;
  const int total = f.total_degree();
  const auto values = grid_values(opt.assign_lo, opt.assign_hi);
  for (auto p : opt.primes) {
    const MPoly fb = reduce_mod(f, p);
    if (fb.is_zero() || fb.total_degree() != total) continue;
    if (!gao_coprime_test(fb)) continue;
    const auto used = used_vars(fb);
    for (std::size_t k : used) {
      if (!unit_content_mod(fb, k, p)) continue;
      const int deg = fb.degree(k);
      std::vector<std::string> others;
      for (std::size_t i : used) {
        if (i != k) others.push_back(fb.vars()[i]);
      }
      const bool found = for_each_assignment(others, values, [&](const std::map<std::string, long>& a) {
        const UPoly h = to_upoly(fb.substitute(to_mpz(a)));
        if (h.degree() < 0 || mpz_divisible_ui_p(h.lead().get_mpz_t(), static_cast<unsigned long>(p))) return false;
        if (h.degree() != deg) return false;
        return fp_irreducible(h, p);
      });
      if (found) {
        cert.status = IrreducibilityStatus::CertifiedViaModP;
        cert.method = "modp";
        cert.prime = p;
        cert.keep = fb.vars()[k];
        cert.vertices = newton_polytope(fb).vertices;
        return cert;
      }
    }
  }
  return cert;
}

// Invertible substitutions x_i -> x_i + l*x_j + m with small l, m.
std::vector<std::pair<std::size_t, MPoly>> small_shears(const MPoly& f) {
  std::vector<std::pair<std::size_t, MPoly>> out;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    for (std::size_t j = 0; j < f.arity(); ++j) {
      if (i == j) continue;
      for (long lambda : {0L, 1L, -1L}) {
        if (lambda == 0 && j != (i == 0 ? 1 : 0)) continue;
        for (long mu : {0L, 1L, -1L, 2L}) {
          if (lambda == 0 && mu == 0) continue;
          out.emplace_back(i, MPoly::variable(f.vars(), i) + MPoly::variable(f.vars(), j) * mpz_class(lambda) +
                                  MPoly::constant(f.vars(), mu));
        }
      }
    }
  }
  return out;
}

}  // namespace

IrreducibilityCertificate absolutely_irreducible(const MPoly& f0, const IrreducibilityOptions& opt) {
  IrreducibilityCertificate cert;
  if (f0.is_zero() || f0.is_constant()) {
    cert.method = "constant polynomial";
    return cert;
  }
  const MPoly f = f0.primitive().drop_unused_vars();

  for (std::size_t v = 0; v < f.arity(); ++v) {
    if (f.degree(v) != 1) continue;
    const auto cs = f.coefficients_in(v);
    const MPoly g = gcd(cs[0], cs[1]);
    if (g.is_constant()) {
      cert.status = IrreducibilityStatus::Certified;
      cert.method = "linear";
      cert.keep = f.vars()[v];
      return cert;
    }
  }
  if (f.arity() > 3) {
    cert.method = "more than 3 variables";
    return cert;
  }

  const auto poly = newton_polytope(f);
  const auto q = q_irreducible(f, opt);
  if (q.certified() && gao_coprime_test(f)) {
    auto c = q;
    c.method += "+gao";
    c.vertices = poly.vertices;
    return c;
  }
  if (auto c = modp_certificate(f, opt); c.certified()) return c;

  // Absolute irreducibility and irreducibility over Q are invariant under
  // invertible affine changes of variables, which can move the Newton
  // polytope off a sublattice. Only worth trying once f is known to be
  // irreducible over Q, so that the polytope is the sole obstruction.
  if (q.certified()) {
    const auto shears = small_shears(f);
    for (const auto& [i, value] : shears) {
      const MPoly g = f.substitute(i, value);
      if (!gao_coprime_test(g)) continue;
      auto c = q;
      c.change = f.vars()[i] + " -> " + value.to_string();
      c.method += "+gao after " + c.change;
      c.vertices = newton_polytope(g).vertices;
      return c;
    }
    for (const auto& [i, value] : shears) {
      auto c = modp_certificate(f.substitute(i, value), opt);
      if (!c.certified()) continue;
      c.change = f.vars()[i] + " -> " + value.to_string();
      c.method += " after " + c.change;
      return c;
    }
  }
  cert.method = !q.certified()             ? "no irreducibility certificate over Q"
                : gao_coprime_test(f) ? "no certificate"
                                      : "Newton polytope vertices share a factor";
  cert.vertices = poly.vertices;
  return cert;
}

std::string to_string(IrreducibilityStatus s) {
  switch (s) {
    case IrreducibilityStatus::Certified:
      return "Certified";
    case IrreducibilityStatus::CertifiedViaModP:
      return "CertifiedViaModP";
    case IrreducibilityStatus::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

nlohmann::json to_json(const IrreducibilityCertificate& c) {
  nlohmann::json j{{"status", to_string(c.status)}, {"method", c.method}};
  if (c.prime) j["prime"] = c.prime;
  if (!c.keep.empty()) j["keep"] = c.keep;
  if (!c.assignment.empty()) j["assignment"] = c.assignment;
  if (!c.vertices.empty()) j["vertices"] = c.vertices;
  if (!c.change.empty()) j["change"] = c.change;
  return j;
}

}  // namespace lineext
