// Command-line front end. Every subcommand prints plain text, or JSON with
// --json. Exit codes: 0 success, 1 domain error, 2 usage error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "lineext/arrangement.hpp"
#include "lineext/catalog.hpp"
#include "lineext/error.hpp"
#include "lineext/extend.hpp"
#include "lineext/irreducible.hpp"
#include "lineext/moduli.hpp"
#include "lineext/mpoly.hpp"
#include "lineext/symmetry.hpp"

using namespace lineext;
using nlohmann::json;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// A table file if one exists at that path, otherwise a catalog or extension name.
Arrangement load_arrangement(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return parse_table(read_file(spec));
  return named_arrangement(spec);
}

const CatalogEntry* entry_for(const std::string& spec) {
  if (std::filesystem::is_regular_file(spec)) return nullptr;
  try {
    return &catalog_entry(spec);
  } catch (const DomainError&) {
    return nullptr;
  }
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item.erase(0, item.find_first_not_of(" \t"));
    item.erase(item.find_last_not_of(" \t") + 1);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

// key=value lines; '#' starts a comment.
void apply_config(const std::string& path, ClassifyOptions& opt) {
  std::istringstream in(read_file(path));
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) throw DomainError(path + ":" + std::to_string(lineno) + ": expected key=value");
    auto trim = [](std::string s) {
      s.erase(0, s.find_first_not_of(" \t\r"));
      s.erase(s.find_last_not_of(" \t\r") + 1);
      return s;
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    try {
      if (key == "primes") {
        opt.irreducibility.primes.clear();
        for (const auto& p : split_list(value)) opt.irreducibility.primes.push_back(std::stoll(p));
      } else if (key == "assign_lo") {
        opt.irreducibility.assign_lo = std::stol(value);
      } else if (key == "assign_hi") {
        opt.irreducibility.assign_hi = std::stol(value);
      } else if (key == "quadratic_fields") {
        opt.quadratic_fields.clear();
        for (const auto& d : split_list(value)) opt.quadratic_fields.push_back(std::stol(d));
      } else if (key == "triple_points") {
        opt.triple_points = parse_triple_points(value);
      } else {
        throw DomainError(path + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
      }
    } catch (const std::logic_error&) {
      throw DomainError(path + ":" + std::to_string(lineno) + ": bad value for '" + key + "'");
    }
  }
}

std::string line_name(const Arrangement& a, std::size_t i) {
  return i < a.names().size() ? a.names()[i] : default_line_name(i);
}

std::string describe_map(const ArrangementMap& m, const Arrangement& from, const Arrangement& to) {
  std::ostringstream out;
  out << "points:";
  for (const auto& [p, q] : m.point_map) out << ' ' << p << "->" << q;
  out << "\nlines:";
  for (std::size_t i = 0; i < m.line_map.size(); ++i) {
    out << ' ' << line_name(from, i) << "->" << line_name(to, static_cast<std::size_t>(m.line_map[i]));
  }
  return out.str();
}

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"One-line extensions of line configurations and their moduli spaces"};
  app.require_subcommand(1);
  bool as_json = false;
  bool serial = false;
  std::string config_path;
  app.add_flag("--json", as_json, "JSON output");
  app.add_flag("--serial", serial, "Run the serial reference kernels");
  app.add_option("--config", config_path, "key=value file: primes, assign_lo, assign_hi, quadratic_fields, triple_points")
      ->check(CLI::ExistingFile);

  std::string name, name2, plan_path, triple_policy;
  int k = 3;
  bool nine3 = false;

  auto* catalog = app.add_subcommand("catalog", "List or show the built-in configurations");
  catalog->require_subcommand(1);
  auto* cat_list = catalog->add_subcommand("list", "Names of the built-in configurations");
  auto* cat_show = catalog->add_subcommand("show", "Arrangement table and double-point labels");
  cat_show->add_option("name", name)->required();

  auto* doubles_cmd = app.add_subcommand("doubles", "Double points of an arrangement");
  doubles_cmd->add_option("arrangement", name, "table file or name")->required();

  auto* aut = app.add_subcommand("aut", "Automorphism group");
  aut->add_option("arrangement", name, "table file or name")->required();

  auto* iso = app.add_subcommand("iso", "Isomorphism witness between two arrangements");
  iso->add_option("first", name, "table file or name")->required();
  iso->add_option("second", name2, "table file or name")->required();

  auto* extend = app.add_subcommand("extend", "Orbit representatives of extension lines");
  extend->add_option("name", name, "catalog name")->required();
  extend->add_option("--k", k, "double points on the new line")->check(CLI::Range(1, 8));

  auto* census = app.add_subcommand("census", "Extension census with cross-configuration identification");
  census->add_option("--k", k, "double points on the new line")->check(CLI::Range(3, 5));
  census->add_flag("--nine3", nine3, "Census over the (9_3) configurations (k = 3)");

  auto* irred = app.add_subcommand("irred", "Absolute irreducibility certificates, one polynomial per line");
  irred->add_option("polyfile", name)->required()->check(CLI::ExistingFile);

  auto* moduli = app.add_subcommand("moduli", "Moduli presentation");
  moduli->add_option("arrangement", name, "table file or name")->required();
  moduli->add_option("--plan", plan_path, "construction plan file")->check(CLI::ExistingFile);

  auto* classify_cmd = app.add_subcommand("classify", "Classify the moduli space");
  classify_cmd->add_option("arrangement", name, "table file or name")->required();
  classify_cmd->add_option("--plan", plan_path, "construction plan file")->check(CLI::ExistingFile);

  auto* report = app.add_subcommand("report", "Census table with moduli classification tallies");
  report->add_option("--table", k, "3, 4 or 5")->required()->check(CLI::IsMember({3, 4, 5}));

  for (auto* cmd : {classify_cmd, report}) {
    cmd->add_option("--triple-points", triple_policy, "allow, forbid or allow-forced")
        ->check(CLI::IsMember({"allow", "forbid", "allow-forced"}));
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const Exec exec = serial ? Exec::Serial : Exec::Parallel;
  try {
    ClassifyOptions opt;
    if (!config_path.empty()) apply_config(config_path, opt);
    if (!triple_policy.empty()) opt.triple_points = parse_triple_points(triple_policy);

    if (*cat_list) {
      const auto names = catalog_names();
      if (as_json) print(names);
      else for (const auto& n : names) std::cout << n << '\n';
    } else if (*cat_show) {
      const auto& e = catalog_entry(name);
      if (as_json) {
        json labels = json::object();
        for (std::size_t i = 0; i < e.labeled_doubles.size(); ++i) {
          const auto& d = e.labeled_doubles[i];
          labels[e.double_labels[i]] = {line_name(e.arrangement, static_cast<std::size_t>(d.first)),
                                        line_name(e.arrangement, static_cast<std::size_t>(d.second))};
        }
        print({{"name", e.name}, {"arrangement", to_json(e.arrangement)}, {"double_labels", labels}});
      } else {
        std::cout << e.name << '\n' << emit_table(e.arrangement);
        for (std::size_t i = 0; i < e.labeled_doubles.size(); ++i) {
          const auto& d = e.labeled_doubles[i];
          std::cout << e.double_labels[i] << " = " << line_name(e.arrangement, static_cast<std::size_t>(d.first))
                    << " ^ " << line_name(e.arrangement, static_cast<std::size_t>(d.second)) << '\n';
        }
      }
    } else if (*doubles_cmd) {
      const Arrangement a = load_arrangement(name);
      const CatalogEntry* e = entry_for(name);
      json out = json::array();
      for (const auto& d : doubles(a)) {
        std::string label;
        if (e) {
          try {
            label = e->label_of(d);
          } catch (const DomainError&) {
          }
        }
        const auto l1 = line_name(a, static_cast<std::size_t>(d.first));
        const auto l2 = line_name(a, static_cast<std::size_t>(d.second));
        if (as_json) {
          json j{{"lines", {l1, l2}}};
          if (!label.empty()) j["label"] = label;
          out.push_back(j);
        } else {
          std::cout << (label.empty() ? "" : label + " = ") << l1 << " ^ " << l2 << '\n';
        }
      }
      if (as_json) print(out);
    } else if (*aut) {
      const Arrangement a = load_arrangement(name);
      const PermGroup g = automorphism_group(a);
      if (as_json) {
        json gens = json::array();
        for (const auto& m : g.generators) gens.push_back(to_json(m, a, a));
        json hist = json::object();
        for (const auto& [o, c] : g.element_order_histogram) hist[std::to_string(o)] = c;
        print({{"order", g.order}, {"abelian", g.abelian}, {"element_order_histogram", hist}, {"generators", gens}});
      } else {
        std::cout << "order " << g.order << (g.abelian ? " (abelian)" : "") << "\nelement orders:";
        for (const auto& [o, c] : g.element_order_histogram) std::cout << ' ' << o << 'x' << c;
        std::cout << '\n';
        for (const auto& m : g.generators) {
          std::cout << "generator lines:";
          for (std::size_t i = 0; i < m.line_map.size(); ++i) {
            std::cout << ' ' << line_name(a, i) << "->" << line_name(a, static_cast<std::size_t>(m.line_map[i]));
          }
          std::cout << '\n';
        }
      }
    } else if (*iso) {
      const Arrangement a = load_arrangement(name);
      const Arrangement b = load_arrangement(name2);
      const auto m = find_isomorphism(a, b);
      if (as_json) {
        print(m ? json{{"isomorphic", true}, {"witness", to_json(*m, a, b)}} : json{{"isomorphic", false}});
      } else {
        std::cout << (m ? describe_map(*m, a, b) : std::string("none")) << '\n';
      }
    } else if (*extend) {
      const auto& e = catalog_entry(name);
      json out = json::array();
      for (const auto& line : ol_ext(k, e.arrangement)) {
        const auto n = name_arrangement(e, line);
        if (as_json) out.push_back(n);
        else std::cout << n << '\n';
      }
      if (as_json) print(out);
    } else if (*census) {
      if (nine3 && k != 3) throw DomainError("the (9_3) census is defined for k = 3 only");
      const CensusReport r = nine3 ? nine3_census(exec) : enumerate_census(k, ten3_catalog(), exec);
      if (as_json) print(to_json(r));
      else std::cout << census_table(r);
    } else if (*irred) {
      std::istringstream in(read_file(name));
      std::string line;
      json out = json::array();
      while (std::getline(in, line)) {
        if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const MPoly f = parse_mpoly(line);
        const auto cert = absolutely_irreducible(f, opt.irreducibility);
        if (as_json) {
          out.push_back({{"polynomial", f.to_string()}, {"gao_coprime", gao_coprime_test(f)}, {"certificate", to_json(cert)}});
        } else {
          std::cout << f.to_string() << "\n  " << to_string(cert.status) << " (" << cert.method << ")";
          if (cert.prime) std::cout << " p=" << cert.prime;
          if (!cert.keep.empty()) std::cout << " keep=" << cert.keep;
          for (const auto& [v, x] : cert.assignment) std::cout << ' ' << v << '=' << x;
          std::cout << '\n';
        }
      }
      if (as_json) print(out);
    } else if (*moduli || *classify_cmd) {
      const Arrangement a = load_arrangement(name);
      const ConstructionPlan plan = plan_path.empty() ? auto_plan(a) : parse_plan(read_file(plan_path));
      const ModuliPresentation m = reduce(build(a, plan), opt.triple_points == TriplePoints::Forbid);
      if (*moduli) {
        if (as_json) {
          print(to_json(m));
        } else {
          std::cout << to_text(plan) << "params:";
          for (const auto& p : m.params) std::cout << ' ' << p;
          std::cout << '\n';
          for (const auto& f : m.constraints) std::cout << "f: " << f.to_string() << '\n';
          for (const auto& g : m.nondegeneracy) std::cout << "g: " << g.to_string() << '\n';
          for (const auto& h : m.reduced) std::cout << "h: " << h.to_string() << '\n';
          if (m.degenerate) std::cout << "degenerate: " << *m.degenerate << '\n';
        }
      } else {
        const Classification c = classify(m, opt);
        if (as_json) {
          json j = to_json(c);
          j["triple_points"] = to_string(opt.triple_points);
          print(j);
        } else {
          std::cout << to_string(c) << '\n' << c.reason << '\n';
          for (const auto& o : c.orbits) std::cout << "  " << o.description << '\n';
          if (!c.allowed_triple_points.empty()) {
            std::cout << "new triple points on every realization:";
            for (const auto& t : c.allowed_triple_points) std::cout << " {" << t << '}';
            std::cout << '\n';
          }
          if (c.witness) std::cout << "witness " << (c.witness->valid ? "validated" : "NOT validated") << '\n';
        }
      }
    } else if (*report) {
      const CensusReport r = enumerate_census(k, ten3_catalog(), exec);
      const auto t = classify_census(r, ten3_catalog(), opt, exec);
      if (as_json) {
        json j = to_json(t);
        j["census"] = to_json(r);
        j["triple_points"] = to_string(opt.triple_points);
        print(j);
      } else {
        std::cout << tally_table(r, t);
      }
    }
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
