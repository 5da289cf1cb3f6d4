#include "lineext/extend.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "lineext/error.hpp"

namespace lineext {

namespace {

void combinations(const std::vector<DoublePoint>& ds, int k, std::size_t start, std::uint64_t used,
                  ExtensionLine& cur, std::vector<ExtensionLine>& out) {
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  for (std::size_t i = start; i < ds.size(); ++i) {
    const auto bits = (std::uint64_t{1} << ds[i].first) | (std::uint64_t{1} << ds[i].second);
    if (used & bits) continue;
    cur.push_back(ds[i]);
    combinations(ds, k, i + 1, used | bits, cur, out);
    cur.pop_back();
  }
}

struct ConfigResult {
  std::vector<CensusMember> members;
};

ConfigResult census_config(int k, const CatalogEntry& entry, int index) {
  ConfigResult r;
  const auto aut = automorphism_group(entry.arrangement);
  const std::size_t n = entry.arrangement.line_count();
  for (const auto& line : ol_ext(k, entry.arrangement, aut)) {
    CensusMember m;
    m.name = name_arrangement(entry, line);
    m.config = index;
    m.line = line;
    m.arrangement = extend_entry(entry, line);
    m.flagged = exchange_flag(m.arrangement, n);
    r.members.push_back(std::move(m));
  }
  std::sort(r.members.begin(), r.members.end(),
            [](const CensusMember& a, const CensusMember& b) { return a.name < b.name; });
  return r;
}

}  // namespace

std::vector<ExtensionLine> valid_extensions(const Arrangement& a, int k) {
  if (a.line_count() > 64) throw DomainError("at most 64 lines are supported");
  std::vector<ExtensionLine> out;
  if (k < 0) return out;
  ExtensionLine cur;
  combinations(doubles(a), k, 0, 0, cur, out);
  return out;
}

std::vector<ExtensionLine> ol_ext(int k, const Arrangement& a) { return ol_ext(k, a, automorphism_group(a)); }

std::vector<ExtensionLine> ol_ext(int k, const Arrangement& a, const PermGroup& aut) {
  const auto all = valid_extensions(a, k);
  return orbit_representatives(aut, all);
}

bool exchange_flag(const Arrangement& extended, std::size_t original_lines) {
  for (std::size_t i = 0; i < original_lines && i < extended.line_count(); ++i) {
    if (is_n3_configuration(remove_line(extended, i))) return true;
  }
  return false;
}

CensusReport enumerate_census(int k, std::span<const CatalogEntry> catalog, Exec exec) {
  CensusReport rep;
  rep.k = k;
  const int nconf = static_cast<int>(catalog.size());
  std::vector<ConfigResult> per(catalog.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (int c = 0; c < nconf; ++c) per[c] = census_config(k, catalog[c], c);
  } else {
    for (int c = 0; c < nconf; ++c) per[c] = census_config(k, catalog[c], c);
  }

  std::vector<CensusMember> all;
  for (int c = 0; c < nconf; ++c) {
    rep.config_names.push_back(catalog[c].name);
    rep.per_config_raw.push_back(static_cast<int>(per[c].members.size()));
    rep.raw += static_cast<int>(per[c].members.size());
    for (auto& m : per[c].members) all.push_back(std::move(m));
  }

  std::vector<std::size_t> flagged;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (all[i].flagged) flagged.push_back(i);
  }
  rep.flagged = static_cast<int>(flagged.size());
  std::vector<CanonicalForm> forms(flagged.size());
  const int nflag = static_cast<int>(flagged.size());
  if (exec == Exec::Parallel) {
#pragma omp parallel for schedule(dynamic, 4)
    for (int f = 0; f < nflag; ++f) forms[f] = canonical_form(all[flagged[f]].arrangement);
  } else {
    for (int f = 0; f < nflag; ++f) forms[f] = canonical_form(all[flagged[f]].arrangement);
  }

  std::map<CanonicalForm, std::size_t> first;
  std::vector<bool> removed(all.size(), false);
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (int f = 0; f < nflag; ++f) {
    auto [it, fresh] = first.emplace(forms[f], flagged[f]);
    if (fresh) continue;
    removed[flagged[f]] = true;
    pairs.emplace_back(it->second, flagged[f]);
  }

  rep.identifications.resize(pairs.size());
  const int npairs = static_cast<int>(pairs.size());
  auto witness = [&](int p) {
    const auto& a = all[pairs[p].first];
    const auto& b = all[pairs[p].second];
    auto m = find_isomorphism(a.arrangement, b.arrangement);
    if (!m || !verify_isomorphism(a.arrangement, b.arrangement, *m)) {
      throw DomainError("canonical forms agree but no isomorphism found: " + a.name + ", " + b.name);
    }
    rep.identifications[p] = {a.name, b.name, a.config == b.config, std::move(*m)};
  };
  if (exec == Exec::Parallel) {
    std::vector<std::string> errors(pairs.size());
#pragma omp parallel for schedule(dynamic, 1)
    for (int p = 0; p < npairs; ++p) {
      try {
        witness(p);
      } catch (const std::exception& e) {
        errors[p] = e.what();
      }
    }
    for (const auto& e : errors) {
      if (!e.empty()) throw DomainError(e);
    }
  } else {
    for (int p = 0; p < npairs; ++p) witness(p);
  }

  rep.per_config_counts = rep.per_config_raw;
  for (std::size_t p = 0; p < pairs.size(); ++p) {
    if (rep.identifications[p].same_config) {
      ++rep.self_exchanges;
      --rep.per_config_counts[all[pairs[p].second].config];
    } else {
      ++rep.cross_identifications;
    }
  }
  rep.subtotal = rep.raw - rep.self_exchanges;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (!removed[i]) rep.members.push_back(std::move(all[i]));
  }
  rep.total = static_cast<int>(rep.members.size());
  return rep;
}

CensusReport nine3_census(Exec exec) { return enumerate_census(3, nine3_catalog(), exec); }

nlohmann::json to_json(const CensusReport& r) {
  nlohmann::json ids = nlohmann::json::array();
  for (const auto& id : r.identifications) {
    const auto a = named_arrangement(id.kept);
    const auto b = named_arrangement(id.removed);
    ids.push_back({{"kept", id.kept},
                   {"removed", id.removed},
                   {"same_configuration", id.same_config},
                   {"witness", to_json(id.witness, a, b)}});
  }
  nlohmann::json members = nlohmann::json::array();
  for (const auto& m : r.members) members.push_back(m.name);
  return {{"k", r.k},
          {"configurations", r.config_names},
          {"per_config_raw", r.per_config_raw},
          {"per_config_counts", r.per_config_counts},
          {"raw", r.raw},
          {"self_exchanges", r.self_exchanges},
          {"subtotal", r.subtotal},
          {"cross_identifications", r.cross_identifications},
          {"flagged", r.flagged},
          {"total", r.total},
          {"identifications", ids},
          {"members", members}};
}

std::string census_table(const CensusReport& r) {
  std::ostringstream out;
  out << "k = " << r.k << "\n";
  std::size_t w = 10;
  for (const auto& n : r.config_names) w = std::max(w, n.size() + 1);
  auto cell = [&](const std::string& s) {
    out << s << std::string(w > s.size() ? w - s.size() : 1, ' ');
  };
  cell("");
  for (const auto& n : r.config_names) cell(n);
  out << "\n";
  cell("raw");
  for (int c : r.per_config_raw) cell(std::to_string(c));
  out << "\n";
  cell("count");
  for (int c : r.per_config_counts) cell(std::to_string(c));
  out << "\n";
  out << "raw " << r.raw << ", self-exchanges " << r.self_exchanges << ", subtotal " << r.subtotal
      << ", cross identifications " << r.cross_identifications << ", total " << r.total << "\n";
  for (const auto& id : r.identifications) out << "  " << id.removed << " = " << id.kept << "\n";
  return out.str();
}

}  // namespace lineext
