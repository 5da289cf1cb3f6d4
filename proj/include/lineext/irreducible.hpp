#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "lineext/mpoly.hpp"
#include "lineext/polytope.hpp"
#include "lineext/upoly.hpp"

namespace lineext {

/// Search grid for specialization and modular certificates.
struct IrreducibilityOptions {
  std::vector<std::int64_t> primes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41,
                                      43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};
  long assign_lo = -5;
  long assign_hi = 5;
};

enum class SpecializationResult { Certified, Unknown };

/// Specialization lemma: every variable except `keep` is assigned, and the
/// image h mod p keeps the degree of f in `keep` and is irreducible over F_p.
/// Also requires the content of f with respect to `keep` to be a unit, so
/// that no factor free of `keep` can hide.
SpecializationResult z_irreducible_by_specialization(const MPoly& f, const std::string& keep,
                                                     const std::map<std::string, mpz_class>& assignment,
                                                     std::int64_t p);

enum class IrreducibilityStatus { Certified, CertifiedViaModP, Unknown };

struct IrreducibilityCertificate {
  IrreducibilityStatus status = IrreducibilityStatus::Unknown;
  std::string method;  // "linear", "specialization+gao", "modp", or a reason
  std::int64_t prime = 0;
  std::string keep;
  std::map<std::string, long> assignment;
  std::vector<LatticePoint> vertices;
  std::string change;  // affine change of variables applied first, if any

  bool certified() const { return status != IrreducibilityStatus::Unknown; }
};

/// Searches the options grid for a specialization certificate of
/// irreducibility over Q. Returns the certificate (status Certified) or
/// Unknown.
IrreducibilityCertificate q_irreducible(const MPoly& f, const IrreducibilityOptions& opt = {});

/// Certificates of absolute irreducibility:
///  - Certified: f is linear in some variable with coprime coefficients, or
///    f is Q-irreducible by specialization and P_f has coprime vertex
///    coordinates;
///  - CertifiedViaModP(p): deg f is preserved mod p, f mod p is irreducible
///    over F_p (specialization over F_p) and P_{f mod p} has coprime vertex
///    coordinates.
/// Both are retried after small shears x -> x + l*y + m.
/// Never claims reducibility.
IrreducibilityCertificate absolutely_irreducible(const MPoly& f, const IrreducibilityOptions& opt = {});

nlohmann::json to_json(const IrreducibilityCertificate& c);
std::string to_string(IrreducibilityStatus s);

}  // namespace lineext
