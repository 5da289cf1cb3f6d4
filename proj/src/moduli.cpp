#include "lineext/moduli.hpp"

#include <algorithm>
#include <cctype>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "lineext/error.hpp"
#include "lineext/upoly.hpp"

namespace lineext {

namespace {

// ---- element bookkeeping ------------------------------------------------------

// Points are ids 0..P-1 (Arrangement::points() order), lines P..P+L-1.
struct Incidence {
  std::vector<Label> points;
  std::vector<std::string> lines;
  std::vector<std::vector<bool>> on;  // on[p][l]

  explicit Incidence(const Arrangement& a) : points(a.points()) {
    for (std::size_t i = 0; i < a.line_count(); ++i) {
      lines.push_back(i < a.names().size() && !a.names()[i].empty() ? a.names()[i] : default_line_name(i));
    }
    on.assign(points.size(), std::vector<bool>(lines.size(), false));
    for (std::size_t p = 0; p < points.size(); ++p) {
      for (std::size_t l = 0; l < lines.size(); ++l) on[p][l] = a.incident(points[p], l);
    }
  }

  std::size_t size() const { return points.size() + lines.size(); }
  bool is_point(std::size_t e) const { return e < points.size(); }
  ElementKind kind(std::size_t e) const { return is_point(e) ? ElementKind::Point : ElementKind::Line; }
  const std::string& name(std::size_t e) const {
    return is_point(e) ? points[e] : lines[e - points.size()];
  }

  bool incident(std::size_t x, std::size_t y) const {
    if (is_point(x) == is_point(y)) return false;
    if (!is_point(x)) std::swap(x, y);
    return on[x][y - points.size()];
  }

  std::optional<std::size_t> resolve(const std::string& n) const {
    for (std::size_t l = 0; l < lines.size(); ++l) {
      if (lines[l] == n) return points.size() + l;
    }
    for (std::size_t p = 0; p < points.size(); ++p) {
      if (points[p] == n) return p;
    }
    if (n.size() > 1 && n[0] == 'P') {
      for (std::size_t p = 0; p < points.size(); ++p) {
        if (points[p] == n.substr(1)) return p;
      }
    }
    return std::nullopt;
  }

  std::size_t require(const std::string& n) const {
    auto e = resolve(n);
    if (!e) throw DomainError("unknown element '" + n + "' in plan");
    return *e;
  }

  // Name as written in plans: digit-led point labels get a "P" prefix.
  std::string plan_name(std::size_t e) const {
    const std::string& n = name(e);
    if (!is_point(e)) return n;
    bool clash = std::find(lines.begin(), lines.end(), n) != lines.end();
    if (clash || n.empty() || std::isdigit(static_cast<unsigned char>(n[0])) || n[0] == 'P') return "P" + n;
    return n;
  }

  // Three lines with no common point in the arrangement, no two of which
  // meet at a point of the arrangement.
  bool pairwise_double(std::size_t a, std::size_t b, std::size_t c) const {
    for (std::size_t p = 0; p < points.size(); ++p) {
      int k = on[p][a] + on[p][b] + on[p][c];
      if (k >= 2) return false;
    }
    return true;
  }
};

// ---- coordinate algebra -------------------------------------------------------

Coords cross(const Coords& u, const Coords& v) {
  return {u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]};
}

MPoly dot(const Coords& u, const Coords& v) { return u[0] * v[0] + u[1] * v[1] + u[2] * v[2]; }

bool is_zero(const Coords& c) { return c[0].is_zero() && c[1].is_zero() && c[2].is_zero(); }

// Divides out the polynomial content; returns it (normalized).
MPoly strip(Coords& c) {
  MPoly g = gcd(gcd(c[0], c[1]), c[2]);
  if (g.is_zero()) return g;
  if (!(g.is_constant() && g.constant_term() == 1)) {
    for (auto& x : c) {
      if (!x.is_zero()) x = *divide_exact(x, g);
    }
  }
  return g;
}

Coords unit_coords(const std::vector<std::string>& vars, std::size_t i) {
  Coords c{MPoly(vars), MPoly(vars), MPoly(vars)};
  c[i] = MPoly::constant(vars, 1);
  return c;
}

Coords combine(const std::vector<std::pair<MPoly, Coords>>& terms, const std::vector<std::string>& vars) {
  Coords out{MPoly(vars), MPoly(vars), MPoly(vars)};
  for (const auto& [s, c] : terms) {
    for (int i = 0; i < 3; ++i) out[i] += s * c[i];
  }
  return out;
}

std::string coords_string(const Coords& c) {
  return "[" + c[0].to_string() + ":" + c[1].to_string() + ":" + c[2].to_string() + "]";
}

std::string trim(std::string s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::array<std::string, 3> parse_coords(const std::string& text, const std::string& where) {
  const auto lb = text.find('['), rb = text.rfind(']');
  if (lb == std::string::npos || rb == std::string::npos || rb < lb) {
    throw DomainError("expected [x:y:z] coordinates in '" + where + "'");
  }
  std::array<std::string, 3> out;
  std::stringstream ss(text.substr(lb + 1, rb - lb - 1));
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ':')) {
    if (i == 3) throw DomainError("more than three coordinates in '" + where + "'");
    out[static_cast<std::size_t>(i++)] = trim(part);
  }
  if (i != 3) throw DomainError("expected three coordinates in '" + where + "'");
  for (const auto& s : out) {
    if (s.empty()) throw DomainError("empty coordinate in '" + where + "'");
  }
  return out;
}

}  // namespace

// ---- plan DSL -----------------------------------------------------------------

ConstructionPlan parse_plan(std::string_view text) {
  ConstructionPlan plan;
  std::stringstream in{std::string(text)};
  std::string raw;
  while (std::getline(in, raw)) {
    std::string line = raw.substr(0, raw.find('#'));
    line = trim(line);
    if (line.empty()) continue;
    std::stringstream ls(line);
    std::string kw, name;
    ls >> kw >> name;
    if (name.empty()) throw DomainError("missing element name in plan line '" + line + "'");
    PlanStep st;
    st.name = name;
    std::string rest;
    std::getline(ls, rest);
    rest = trim(rest);
    if (kw == "basis") {
      st.kind = StepKind::Basis;
      st.coords = parse_coords(rest, line);
    } else if (kw == "meet" || kw == "join") {
      st.kind = kw == "meet" ? StepKind::Meet : StepKind::Join;
      const char op = kw == "meet" ? '^' : '+';
      if (rest.empty() || rest[0] != '=') throw DomainError("expected '=' in plan line '" + line + "'");
      rest = rest.substr(1);
      const auto pos = rest.find(op);
      if (pos == std::string::npos) {
        throw DomainError(std::string("expected '") + op + "' in plan line '" + line + "'");
      }
      const std::string x = trim(rest.substr(0, pos)), y = trim(rest.substr(pos + 1));
      if (x.empty() || y.empty() || x.find(' ') != std::string::npos || y.find(' ') != std::string::npos) {
        throw DomainError("malformed operands in plan line '" + line + "'");
      }
      st.operands = {x, y};
    } else if (kw == "free") {
      st.kind = StepKind::Free;
      if (!rest.empty() && rest[0] == '[') {
        st.coords = parse_coords(rest, line);
      } else if (!rest.empty()) {
        try {
          std::size_t used = 0;
          st.params = std::stoi(rest, &used);
          if (used != rest.size() || st.params < 0 || st.params > 2) throw std::invalid_argument("range");
        } catch (const std::exception&) {
          throw DomainError("expected 0, 1 or 2 parameters in plan line '" + line + "'");
        }
      }
    } else {
      throw DomainError("unknown plan keyword '" + kw + "'");
    }
    plan.steps.push_back(std::move(st));
  }
  return plan;
}

std::string to_text(const ConstructionPlan& plan) {
  std::string out;
  for (const auto& s : plan.steps) {
    switch (s.kind) {
      case StepKind::Basis:
        out += "basis " + s.name + " [" + (*s.coords)[0] + ":" + (*s.coords)[1] + ":" + (*s.coords)[2] + "]";
        break;
      case StepKind::Meet:
        out += "meet " + s.name + " = " + s.operands[0] + " ^ " + s.operands[1];
        break;
      case StepKind::Join:
        out += "join " + s.name + " = " + s.operands[0] + " + " + s.operands[1];
        break;
      case StepKind::Free:
        out += "free " + s.name;
        if (s.coords) out += " [" + (*s.coords)[0] + ":" + (*s.coords)[1] + ":" + (*s.coords)[2] + "]";
        else if (s.params >= 0) out += " " + std::to_string(s.params);
        break;
    }
    out += "\n";
  }
  return out;
}

nlohmann::json to_json(const ConstructionPlan& plan) {
  nlohmann::json j = nlohmann::json::array();
  std::stringstream ss(to_text(plan));
  std::string line;
  while (std::getline(ss, line)) j.push_back(line);
  return j;
}

// ---- auto plan ----------------------------------------------------------------

namespace {

struct Simulation {
  std::vector<PlanStep> steps;
  int params = 0;
  int constraints = 0;
};

// Whether the general position of the basis elements is forced: every triple
// has two members incident to a common element that the third avoids.
bool forced_basis(const Incidence& I, const std::vector<std::size_t>& b) {
  for (std::size_t i = 0; i < b.size(); ++i) {
    for (std::size_t j = i + 1; j < b.size(); ++j) {
      for (std::size_t k = j + 1; k < b.size(); ++k) {
        const std::size_t t[3] = {b[i], b[j], b[k]};
        bool ok = false;
        for (int x = 0; x < 3 && !ok; ++x) {
          const std::size_t p = t[x], q = t[(x + 1) % 3], r = t[(x + 2) % 3];
          for (std::size_t e = 0; e < I.size() && !ok; ++e) {
            ok = I.incident(p, e) && I.incident(q, e) && !I.incident(r, e);
          }
        }
        if (!ok) return false;
      }
    }
  }
  return true;
}

Simulation simulate(const Incidence& I, const std::vector<std::size_t>& basis) {
  static const char* frame[4] = {"[1:0:0]", "[0:1:0]", "[0:0:1]", "[1:1:1]"};
  const std::size_t n = I.size();
  Simulation sim;
  std::vector<int> order(n, -1);
  std::vector<std::size_t> placed;
  auto place = [&](std::size_t e) {
    order[e] = static_cast<int>(placed.size());
    placed.push_back(e);
  };
  for (std::size_t i = 0; i < basis.size(); ++i) {
    PlanStep st;
    st.kind = StepKind::Basis;
    st.name = I.plan_name(basis[i]);
    std::string f = frame[i];
    st.coords = parse_coords(f, f);
    sim.steps.push_back(st);
    place(basis[i]);
  }
  auto placed_incident = [&](std::size_t e) {
    std::vector<std::size_t> out;
    for (std::size_t y : placed) {
      if (I.incident(e, y)) out.push_back(y);
    }
    return out;
  };
  // Places every determined element; returns how many.
  auto closure = [&](bool record) {
    int count = 0;
    bool progress = true;
    while (progress) {
      progress = false;
      for (std::size_t e = 0; e < n; ++e) {
        if (order[e] >= 0) continue;
        auto inc = placed_incident(e);
        if (inc.size() < 2) continue;
        if (record) {
          PlanStep st;
          st.kind = I.is_point(e) ? StepKind::Meet : StepKind::Join;
          st.name = I.plan_name(e);
          st.operands = {I.plan_name(inc[0]), I.plan_name(inc[1])};
          sim.steps.push_back(st);
          sim.constraints += static_cast<int>(inc.size()) - 2;
        }
        place(e);
        ++count;
        progress = true;
        break;
      }
    }
    return count;
  };
  while (true) {
    closure(true);
    if (placed.size() == n) break;
    std::size_t best = n;
    std::size_t best_inc = 0;
    int best_gain = -1;
    for (std::size_t e = 0; e < n; ++e) {
      if (order[e] >= 0) continue;
      const std::size_t inc = placed_incident(e).size();
      if (best < n && inc < best_inc) continue;
      // Lookahead: tentatively place e and count the determined cascade.
      const std::size_t mark = placed.size();
      place(e);
      const int gain = closure(false);
      while (placed.size() > mark) {
        order[placed.back()] = -1;
        placed.pop_back();
      }
      if (best == n || inc > best_inc || gain > best_gain) {
        best = e;
        best_inc = inc;
        best_gain = gain;
      }
    }
    PlanStep st;
    st.kind = StepKind::Free;
    st.name = I.plan_name(best);
    st.params = 2 - static_cast<int>(best_inc);
    sim.params += st.params;
    sim.steps.push_back(st);
    place(best);
  }
  return sim;
}

void for_each_subset(std::size_t lo, std::size_t hi, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& f) {
  std::vector<std::size_t> cur;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (cur.size() == k) {
      f(cur);
      return;
    }
    for (std::size_t i = start; i < hi; ++i) {
      cur.push_back(i);
      rec(i + 1);
      cur.pop_back();
    }
  };
  rec(lo);
}

}  // namespace

ConstructionPlan auto_plan(const Arrangement& a) {
  const Incidence I(a);
  std::optional<Simulation> best;
  auto consider = [&](const std::vector<std::size_t>& b) {
    if (!forced_basis(I, b)) return;
    Simulation s = simulate(I, b);
    if (!best || std::tie(s.params, s.constraints) < std::tie(best->params, best->constraints)) best = std::move(s);
  };
  const std::size_t P = I.points.size();
  if (P >= 4) for_each_subset(0, P, 4, consider);
  if (I.lines.size() >= 4) for_each_subset(P, I.size(), 4, consider);
  if (!best) {
    // Small arrangements: the largest forced partial frame.
    for (std::size_t k : {3u, 2u, 1u}) {
      if (P >= k) for_each_subset(0, P, k, consider);
      if (I.lines.size() >= k) for_each_subset(P, I.size(), k, consider);
      if (best) break;
    }
  }
  if (!best) throw DomainError("no projective basis with forced general position");
  return {best->steps};
}

// ---- build --------------------------------------------------------------------

ModuliPresentation build(const Arrangement& a, const ConstructionPlan& plan) {
  const Incidence I(a);
  const std::size_t n = I.size();
  ModuliPresentation m;
  m.arrangement = a;
  m.plan = plan;

  // Pass 1: resolve names, validate the step structure, name parameters.
  std::vector<std::size_t> ids;
  std::set<std::string> explicit_names;
  for (const auto& st : plan.steps) {
    if (st.kind == StepKind::Free && st.coords) {
      for (const auto& c : *st.coords) {
        const MPoly f = parse_mpoly(c);
        for (const auto& v : f.vars()) explicit_names.insert(v);
      }
    }
  }
  std::vector<std::vector<std::string>> step_params(plan.steps.size());
  {
    std::vector<bool> placed(n, false);
    char next = 'a';
    auto fresh = [&]() {
      while (next <= 'z' && explicit_names.count(std::string(1, next))) ++next;
      if (next > 'z') throw DomainError("too many parameters");
      return std::string(1, next++);
    };
    std::set<std::string> seen;
    for (std::size_t s = 0; s < plan.steps.size(); ++s) {
      const auto& st = plan.steps[s];
      const std::size_t e = I.require(st.name);
      if (placed[e]) throw DomainError("element " + st.name + " is placed twice");
      if (st.kind == StepKind::Meet || st.kind == StepKind::Join) {
        if (st.operands.size() != 2) throw DomainError("step " + st.name + " needs two operands");
        const bool want_point = st.kind == StepKind::Meet;
        if (I.is_point(e) != want_point) {
          throw DomainError(st.name + (want_point ? " is not a point" : " is not a line"));
        }
        for (const auto& o : st.operands) {
          const std::size_t x = I.require(o);
          if (!placed[x]) throw DomainError("step " + st.name + " references unplaced element " + o);
          if (!I.incident(e, x)) throw DomainError(st.name + " is not incident to " + o);
        }
        if (I.require(st.operands[0]) == I.require(st.operands[1])) {
          throw DomainError("step " + st.name + " uses the same element twice");
        }
      } else if (st.kind == StepKind::Free) {
        if (st.coords) {
          for (const auto& c : *st.coords) {
            const MPoly f = parse_mpoly(c);
            for (const auto& v : f.vars()) {
              if (seen.insert(v).second) step_params[s].push_back(v);
            }
          }
        } else {
          int inc = 0;
          for (std::size_t y = 0; y < n; ++y) inc += placed[y] && I.incident(e, y);
          if (inc >= 2) throw DomainError("element " + st.name + " is determined; use meet or join");
          const int k = 2 - inc;
          if (st.params >= 0 && st.params != k) {
            throw DomainError("element " + st.name + " has " + std::to_string(k) + " degrees of freedom, plan says " +
                              std::to_string(st.params));
          }
          for (int i = 0; i < k; ++i) {
            step_params[s].push_back(fresh());
            seen.insert(step_params[s].back());
          }
        }
      }
      placed[e] = true;
      ids.push_back(e);
    }
    for (std::size_t e = 0; e < n; ++e) {
      if (!placed[e]) throw DomainError("plan does not place " + I.name(e));
    }
    for (const auto& ps : step_params) m.params.insert(m.params.end(), ps.begin(), ps.end());
  }
  const auto& vars = m.params;

  // Basis checks.
  std::vector<std::size_t> basis;
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    if (plan.steps[s].kind == StepKind::Basis) basis.push_back(ids[s]);
  }
  if (basis.size() > 4) throw DomainError("basis has more than four elements");
  for (std::size_t e : basis) {
    if (I.is_point(e) != I.is_point(basis[0])) throw DomainError("basis mixes points and lines");
  }
  if (!forced_basis(I, basis)) throw DomainError("basis degenerate: general position is not forced by the incidences");

  // Pass 2: coordinates.
  std::vector<std::optional<Coords>> coords(n);
  std::vector<MPoly> contents;
  auto fail = [&](std::string why) {
    m.degenerate = std::move(why);
    return m;
  };
  for (std::size_t s = 0; s < plan.steps.size(); ++s) {
    const auto& st = plan.steps[s];
    const std::size_t e = ids[s];
    Coords c;
    if (st.kind == StepKind::Basis) {
      for (int i = 0; i < 3; ++i) {
        c[static_cast<std::size_t>(i)] = parse_mpoly((*st.coords)[static_cast<std::size_t>(i)], vars);
        if (!c[static_cast<std::size_t>(i)].is_constant()) throw DomainError("basis coordinates must be integers");
      }
      if (is_zero(c)) throw DomainError("basis degenerate: zero coordinates for " + st.name);
    } else if (st.kind == StepKind::Meet || st.kind == StepKind::Join) {
      c = cross(*coords[I.require(st.operands[0])], *coords[I.require(st.operands[1])]);
      const MPoly g = strip(c);
      if (g.is_zero()) return fail(st.operands[0] + " and " + st.operands[1] + " coincide");
      if (!g.is_constant()) contents.push_back(g);
    } else if (st.coords) {
      for (int i = 0; i < 3; ++i) c[static_cast<std::size_t>(i)] = parse_mpoly((*st.coords)[static_cast<std::size_t>(i)], vars);
      if (is_zero(c)) throw DomainError("zero coordinates for " + st.name);
    } else {
      // Pencil through anchors the element must differ from.
      std::vector<std::size_t> inc;
      for (std::size_t y = 0; y < n; ++y) {
        if (coords[y] && I.incident(e, y)) inc.push_back(y);
      }
      const auto& ps = step_params[s];
      auto pv = [&](std::size_t i) { return MPoly::variable(vars, static_cast<std::size_t>(std::find(vars.begin(), vars.end(), ps[i]) - vars.begin())); };
      const MPoly one = MPoly::constant(vars, 1);
      // Elements of e's kind incident to `pivot`, excluding anything e may equal.
      auto anchors_through = [&](std::size_t pivot) {
        std::vector<Coords> out;
        for (std::size_t z = 0; z < n; ++z) {
          if (coords[z] && I.kind(z) == I.kind(e) && I.incident(z, pivot)) out.push_back(*coords[z]);
        }
        for (std::size_t w = 0; w < n; ++w) {
          if (w == pivot || !coords[w] || I.kind(w) != I.kind(pivot) || I.incident(w, e)) continue;
          Coords j = cross(*coords[pivot], *coords[w]);
          if (is_zero(j)) continue;
          strip(j);
          out.push_back(j);
        }
        return out;
      };
      auto independent_pair = [&](const std::vector<Coords>& cand) -> std::optional<std::pair<Coords, Coords>> {
        for (std::size_t i = 0; i < cand.size(); ++i) {
          for (std::size_t j = i + 1; j < cand.size(); ++j) {
            if (!is_zero(cross(cand[i], cand[j]))) return std::make_pair(cand[i], cand[j]);
          }
        }
        return std::nullopt;
      };
      if (inc.size() == 1) {
        auto pair = independent_pair(anchors_through(inc[0]));
        if (!pair) {
          m.complete_chart = false;
          std::vector<Coords> cand;
          for (std::size_t i = 0; i < 3; ++i) {
            Coords j = cross(*coords[inc[0]], unit_coords(vars, i));
            if (!is_zero(j)) cand.push_back(j);
          }
          pair = independent_pair(cand);
          if (!pair) return fail("no pencil through " + I.name(inc[0]));
        }
        c = combine({{one, pair->first}, {pv(0), pair->second}}, vars);
      } else {
        std::optional<std::array<Coords, 3>> frame;
        for (std::size_t mline = 0; mline < n && !frame; ++mline) {
          if (!coords[mline] || I.kind(mline) == I.kind(e) || I.incident(mline, e)) continue;
          auto pair = independent_pair(anchors_through(mline));
          if (!pair) continue;
          std::vector<Coords> cand;
          for (std::size_t z = 0; z < n; ++z) {
            if (coords[z] && I.kind(z) == I.kind(e)) cand.push_back(*coords[z]);
          }
          for (std::size_t i = 0; i < 3; ++i) cand.push_back(unit_coords(vars, i));
          for (const auto& c1 : cand) {
            if (!dot(c1, cross(pair->first, pair->second)).is_zero()) {
              frame = std::array<Coords, 3>{c1, pair->first, pair->second};
              break;
            }
          }
        }
        if (!frame) {
          m.complete_chart = false;
          frame = std::array<Coords, 3>{unit_coords(vars, 2), unit_coords(vars, 0), unit_coords(vars, 1)};
        }
        c = combine({{one, (*frame)[0]}, {pv(0), (*frame)[1]}, {pv(1), (*frame)[2]}}, vars);
      }
      const MPoly g = strip(c);
      if (!g.is_constant()) contents.push_back(g);
    }
    // Incidences with already placed elements.
    for (std::size_t y = 0; y < n; ++y) {
      if (!coords[y] || !I.incident(e, y)) continue;
      MPoly f = dot(c, *coords[y]);
      if (f.is_zero()) continue;
      if (f.is_constant()) {
        m.constraints.push_back(f.primitive());
        continue;
      }
      m.constraints.push_back(f.primitive());
    }
    coords[e] = c;
    m.elements.push_back({I.kind(e), I.name(e), c});
  }

  // Nondegeneracy: required non-incidences and non-concurrencies.
  std::vector<MPoly> gs = contents;
  const std::size_t P = I.points.size(), L = I.lines.size();
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t l = 0; l < L; ++l) {
      if (I.on[p][l]) continue;
      MPoly d = dot(*coords[p], *coords[P + l]);
      if (d.is_zero()) return fail(I.points[p] + " lies on " + I.lines[l]);
      gs.push_back(d);
    }
  }
  std::set<std::string> seen;
  for (auto& g : gs) {
    if (g.is_constant()) continue;
    g = g.primitive();
    if (seen.insert(g.to_string()).second) m.nondegeneracy.push_back(g);
  }
  for (std::size_t x = 0; x < L; ++x) {
    for (std::size_t y = x + 1; y < L; ++y) {
      for (std::size_t z = y + 1; z < L; ++z) {
        if (!I.pairwise_double(x, y, z)) continue;
        const std::string names = I.lines[x] + ", " + I.lines[y] + ", " + I.lines[z];
        MPoly d = dot(*coords[P + x], cross(*coords[P + y], *coords[P + z]));
        if (d.is_zero()) {
          m.forced_concurrency.push_back(names);
        } else if (!d.is_constant()) {
          m.concurrency.push_back({names, d.primitive()});
        }
      }
    }
  }
  return m;
}

// ---- reduce -------------------------------------------------------------------

namespace {

// Proves gcd(f, g) constant by univariate specializations; false means
// "not proven".
bool coprime_by_specialization(const MPoly& f, const MPoly& g) {
  static const long values[] = {3, -2, 5, 7, -4, 11};
  for (std::size_t v = 0; v < f.arity(); ++v) {
    if (!f.uses(v) || !g.uses(v)) continue;
    bool ok = false;
    for (int attempt = 0; attempt < 3 && !ok; ++attempt) {
      std::map<std::string, mpz_class> a;
      for (std::size_t w = 0; w < f.arity(); ++w) {
        if (w != v) a[f.vars()[w]] = values[(w + static_cast<std::size_t>(attempt) * 2) % 6] + attempt;
      }
      const MPoly fs = f.substitute(a), gs = g.substitute(a);
      if (fs.degree(0) != f.degree(v) || gs.degree(0) != g.degree(v)) continue;
      ok = gcd(to_upoly(fs), to_upoly(gs)).degree() == 0;
    }
    if (!ok) return false;
  }
  return true;
}

}  // namespace

ModuliPresentation reduce(ModuliPresentation m, bool triples) {
  std::vector<MPoly> forbidden = m.nondegeneracy;
  if (triples) {
    for (const auto& t : m.concurrency) forbidden.push_back(t.det);
  }
  std::vector<MPoly> hs;
  for (const auto& f : m.constraints) {
    if (f.is_constant()) {
      hs = {MPoly::constant(f.vars(), 1)};
      break;
    }
    MPoly h = squarefree_part(f.primitive());
    for (const auto& g : forbidden) {
      if (h.is_constant()) break;
      if (coprime_by_specialization(h, g)) continue;
      const MPoly c = gcd(h, g);
      if (!c.is_constant()) h = divide_exact(h, c)->primitive();
    }
    if (h.is_constant()) {
      hs = {MPoly::constant(f.vars(), 1)};
      break;
    }
    hs.push_back(h.primitive());
  }
  std::vector<MPoly> out;
  for (std::size_t i = 0; i < hs.size(); ++i) {
    bool drop = false;
    for (std::size_t j = 0; j < hs.size() && !drop; ++j) {
      if (i == j) continue;
      if (associated(hs[i], hs[j])) drop = j < i;
      else if (!hs[j].is_constant() && hs[j].total_degree() <= hs[i].total_degree() && divide_exact(hs[i], hs[j])) drop = true;
    }
    if (!drop) out.push_back(hs[i]);
  }
  m.reduced = std::move(out);
  m.is_reduced = true;
  m.reduced_with_triples = triples;
  return m;
}

// ---- classification -------------------------------------------------------------

int conjugation_count(const std::vector<ComponentOrbit>& orbits,
                      const std::vector<std::pair<std::size_t, std::size_t>>& merges) {
  std::vector<std::size_t> parent(orbits.size());
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    return parent[x] == x ? x : parent[x] = find(parent[x]);
  };
  for (const auto& o : orbits) {
    if (o.size < 1 || o.real < 0 || o.real > o.size || (o.size - o.real) % 2 != 0) {
      throw DomainError("inconsistent component orbit data");
    }
  }
  std::vector<bool> merged(orbits.size(), false);
  for (const auto& [x, y] : merges) {
    if (x >= orbits.size() || y >= orbits.size()) throw DomainError("merge index out of range");
    const std::size_t a = find(x), b = find(y);
    if (a != b) {
      parent[a] = b;
      merged[b] = true;
    }
    merged[find(y)] = true;
  }
  std::map<std::size_t, std::vector<std::size_t>> classes;
  for (std::size_t i = 0; i < orbits.size(); ++i) classes[find(i)].push_back(i);
  int count = 0;
  for (const auto& [root, members] : classes) {
    bool joined = members.size() > 1;
    for (std::size_t i : members) joined = joined || orbits[i].self_connected;
    if (joined) {
      ++count;
    } else {
      const auto& o = orbits[members[0]];
      count += o.real + (o.size - o.real) / 2;
    }
  }
  return count;
}

std::optional<std::pair<int, int>> Classification::counts() const {
  switch (verdict) {
    case Verdict::Empty:
      return std::make_pair(0, 0);
    case Verdict::Irreducible:
      return std::make_pair(1, 1);
    case Verdict::Reducible:
      return std::make_pair(components_over_c, components_mod_conjugation);
    case Verdict::FinitePoints:
      return std::make_pair(count_over_c, count_mod_conjugation);
    case Verdict::Unknown:
      return std::nullopt;
  }
  return std::nullopt;
}

namespace {

struct PointOrbit {
  UPoly minpoly;
  std::vector<NumberField::Elem> values;
  int size = 0;
  int real = 0;
};

std::vector<long> grid(int count) {
  std::vector<long> out{0};
  for (long k = 1; static_cast<int>(out.size()) < count; ++k) {
    out.push_back(k);
    out.push_back(-k);
  }
  return out;
}

bool avoids_all(const NumberField& K, const std::vector<MPoly>& gs, const std::vector<NumberField::Elem>& pt) {
  for (const auto& g : gs) {
    if (K.is_zero(K.evaluate(g, pt))) return false;
  }
  return true;
}

std::vector<UPoly> distinct_factors(const UPoly& u, int max_degree) {
  std::vector<UPoly> out;
  for (const auto& f : rational_factors(squarefree_part(u), max_degree)) {
    if (std::find(out.begin(), out.end(), f) == out.end()) out.push_back(f);
  }
  return out;
}

// Points of V(polys) \ V(gs) in two variables. nullopt when the system is not
// zero-dimensional or no separating form was found.
std::optional<std::vector<PointOrbit>> solve_bivariate(const std::vector<MPoly>& polys, const std::vector<MPoly>& gs,
                                                        const ClassifyOptions& opt, std::string& why) {
  const auto& vars = polys.front().vars();
  const MPoly x = MPoly::variable(vars, 0), u = MPoly::variable(vars, 1);
  std::optional<std::pair<std::size_t, std::size_t>> pair;
  for (std::size_t i = 0; i < polys.size() && !pair; ++i) {
    for (std::size_t j = i + 1; j < polys.size() && !pair; ++j) {
      if (gcd(polys[i], polys[j]).is_constant()) pair = std::make_pair(i, j);
    }
  }
  if (!pair) {
    why = "constraints share a common curve";
    return std::nullopt;
  }
  for (long lambda : grid(opt.max_shifts)) {
    // y = u - lambda * x makes u separate the solutions for generic lambda.
    const MPoly y = u - x * mpz_class(lambda);
    std::vector<MPoly> shifted;
    for (const auto& p : polys) shifted.push_back(p.substitute(1, y));
    MPoly r = resultant(shifted[pair->first], shifted[pair->second], 0);
    if (r.is_zero()) continue;
    if (r.is_constant()) return std::vector<PointOrbit>{};
    std::vector<UPoly> qs;
    try {
      qs = distinct_factors(to_upoly(r), opt.max_factor_degree);
    } catch (const DomainError& e) {
      why = std::string("elimination: ") + e.what();
      return std::nullopt;
    }
    std::vector<PointOrbit> out;
    bool separated = true;
    for (const auto& q : qs) {
      const NumberField K(q);
      const std::vector<NumberField::Elem> at{K.zero(), K.generator()};
      NumberField::Poly G;
      for (const auto& p : shifted) G = K.gcd(G, K.evaluate_in(p, 0, at));
      if (G.empty()) {
        separated = false;
        break;
      }
      G = K.squarefree(G);
      if (G.size() == 1) continue;  // no affine solution over this factor
      if (G.size() > 2) {
        separated = false;
        break;
      }
      NumberField::Elem x0 = K.sub(K.zero(), G[0]);
      NumberField::Elem y0 = K.sub(K.generator(), K.mul(K.from(lambda), x0));
      const std::vector<NumberField::Elem> pt{x0, y0};
      if (!avoids_all(K, gs, pt)) continue;
      out.push_back({q, pt, q.degree(), sturm_real_roots(q)});
    }
    if (separated) return out;
  }
  why = "no separating linear form found";
  return std::nullopt;
}

std::optional<std::vector<PointOrbit>> solve_univariate(const std::vector<MPoly>& polys, const std::vector<MPoly>& gs,
                                                         const ClassifyOptions& opt, std::string& why) {
  UPoly g;
  for (const auto& p : polys) g = gcd(g, to_upoly(p));
  if (g.degree() < 1) return std::vector<PointOrbit>{};
  std::vector<PointOrbit> out;
  try {
    for (const auto& q : distinct_factors(g, opt.max_factor_degree)) {
      const NumberField K(q);
      const std::vector<NumberField::Elem> pt{K.generator()};
      if (!avoids_all(K, gs, pt)) continue;
      out.push_back({q, pt, q.degree(), sturm_real_roots(q)});
    }
  } catch (const DomainError& e) {
    why = e.what();
    return std::nullopt;
  }
  return out;
}

// Largest d in the trial set (or 1) with c = d * square.
std::optional<long> square_class(const mpz_class& c, const std::vector<long>& fields) {
  std::vector<long> ds{1};
  ds.insert(ds.end(), fields.begin(), fields.end());
  for (long d : ds) {
    if (!mpz_divisible_ui_p(c.get_mpz_t(), static_cast<unsigned long>(std::abs(d)))) continue;
    mpz_class q = c / d;
    if (q > 0 && mpz_perfect_square_p(q.get_mpz_t())) return d;
  }
  return std::nullopt;
}

// Square root in Z[vars] by lex-leading-term extraction.
std::optional<MPoly> poly_sqrt(const MPoly& p) {
  if (p.is_zero()) return p;
  const auto& [e0, c0] = *p.terms().rbegin();
  if (c0 < 0 || !mpz_perfect_square_p(c0.get_mpz_t())) return std::nullopt;
  Monomial h(e0.size());
  for (std::size_t i = 0; i < e0.size(); ++i) {
    if (e0[i] % 2) return std::nullopt;
    h[i] = e0[i] / 2;
  }
  mpz_class s0;
  mpz_sqrt(s0.get_mpz_t(), c0.get_mpz_t());
  MPoly s = MPoly::monomial(p.vars(), h, s0);
  const std::size_t limit = 4 * p.term_count() + 8;
  for (std::size_t it = 0; it < limit; ++it) {
    const MPoly r = p - s * s;
    if (r.is_zero()) return s;
    const auto& [e, c] = *r.terms().rbegin();
    Monomial d(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) {
      d[i] = e[i] - h[i];
      if (d[i] < 0) return std::nullopt;
    }
    const mpz_class den = 2 * s0;
    if (!mpz_divisible_p(c.get_mpz_t(), den.get_mpz_t())) return std::nullopt;
    if (d == h) return std::nullopt;
    s += MPoly::monomial(p.vars(), d, c / den);
  }
  return std::nullopt;
}

struct Quadratic {
  MPoly a, b, s;  // f = a v^2 + b v + c, discriminant = d * s^2
  long d = 0;
  bool square_disc = false;  // false: discriminant not a square times a constant
};

// Discriminant analysis of f as a quadratic in v (f primitive in v).
std::optional<Quadratic> quadratic_in(const MPoly& f, std::size_t v, const ClassifyOptions& opt) {
  if (f.degree(v) != 2) return std::nullopt;
  const auto cs = f.coefficients_in(v);
  Quadratic q;
  q.a = cs[2];
  q.b = cs[1];
  const MPoly disc = cs[1] * cs[1] - cs[0] * cs[2] * mpz_class(4);
  if (disc.is_zero()) return std::nullopt;
  const MPoly prim = disc.primitive();
  // disc = c * prim with c a signed integer.
  const mpz_class c = disc.terms().rbegin()->second / prim.terms().rbegin()->second;
  const auto root = poly_sqrt(prim);
  if (!root) return q;  // square_disc stays false
  const auto d = square_class(c, opt.quadratic_fields);
  if (!d) return std::nullopt;
  mpz_class k2 = c / *d, k;
  mpz_sqrt(k.get_mpz_t(), k2.get_mpz_t());
  q.s = *root * k;
  q.d = *d;
  q.square_disc = true;
  return q;
}

std::vector<std::size_t> used_vars(const MPoly& f) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < f.arity(); ++i) {
    if (f.uses(i)) out.push_back(i);
  }
  return out;
}

// Splits f into factors over Q as far as the cheap rules allow.
std::vector<MPoly> split_over_q(const MPoly& f0, const ClassifyOptions& opt) {
  const MPoly f = f0.primitive();
  if (f.is_constant()) return {};
  const auto used = used_vars(f);
  if (used.size() == 1) {
    std::vector<MPoly> out;
    for (const auto& q : distinct_factors(to_upoly(f), opt.max_factor_degree)) {
      out.push_back(to_mpoly(q, f.vars()[used[0]]).with_vars(f.vars()));
    }
    return out;
  }
  auto both = [&](const MPoly& g) {
    auto out = split_over_q(g, opt);
    auto rest = split_over_q(*divide_exact(f, g), opt);
    out.insert(out.end(), rest.begin(), rest.end());
    return out;
  };
  for (std::size_t v : used) {
    const MPoly c = content_in(f, v);
    if (!c.is_constant()) return both(c);
  }
  for (std::size_t v : used) {
    auto q = quadratic_in(f, v, opt);
    if (!q || !q->square_disc || q->d != 1) continue;
    const MPoly lin = q->a * MPoly::variable(f.vars(), v) * mpz_class(2) + q->b - q->s;
    const MPoly g = gcd(f, lin);
    if (!g.is_constant() && !associated(g, f)) return both(g);
  }
  return {f};
}

struct ComponentData {
  MPoly poly;  // the Q-factor
  ComponentOrbit orbit;
  std::optional<Quadratic> split;  // conjugate pair over Q(sqrt d)
  std::size_t split_var = 0;
};

std::optional<ComponentData> analyze_factor(const MPoly& f, const ClassifyOptions& opt, std::string& why) {
  ComponentData cd;
  cd.poly = f;
  const auto used = used_vars(f);
  if (used.size() == 1) {
    const UPoly q = to_upoly(f);
    cd.orbit.size = q.degree();
    cd.orbit.real = sturm_real_roots(q);
    cd.orbit.field = q.degree() == 1 ? "Q" : "Q[t]/(" + q.to_string("t") + ")";
    cd.orbit.description = f.vars()[used[0]] + " = root of " + q.to_string(f.vars()[used[0]]);
    return cd;
  }
  for (std::size_t v : used) {
    if (f.degree(v) != 2 || !content_in(f, v).is_constant()) continue;
    auto q = quadratic_in(f, v, opt);
    if (!q) continue;
    if (!q->square_disc) {
      cd.orbit.description = "quadratic in " + f.vars()[v] + " with non-square discriminant";
      return cd;
    }
    if (q->d == 1) continue;
    cd.orbit.size = 2;
    cd.orbit.real = q->d > 0 ? 2 : 0;
    cd.orbit.field = "Q(sqrt(" + std::to_string(q->d) + "))";
    cd.orbit.description = "conjugate pair over " + cd.orbit.field;
    cd.split = q;
    cd.split_var = v;
    return cd;
  }
  const auto cert = absolutely_irreducible(f, opt.irreducibility);
  if (cert.certified()) {
    cd.orbit.description = "absolutely irreducible (" + cert.method + ")";
    return cd;
  }
  why = "irreducibility of " + f.to_string() + " not decided";
  return std::nullopt;
}

std::optional<Witness> witness_on(const MPoly& h, const std::vector<MPoly>& gs, const ClassifyOptions& opt) {
  const auto used = used_vars(h);
  if (used.empty()) return std::nullopt;
  const std::size_t y = used.back();
  const std::size_t r = h.arity();
  const auto vals = grid(9);
  std::vector<std::size_t> idx(r, 0);
  for (int tries = 0; tries < 400; ++tries) {
    std::map<std::string, mpz_class> a;
    std::size_t k = static_cast<std::size_t>(tries);
    for (std::size_t v = 0; v < r; ++v) {
      if (v == y) continue;
      a[h.vars()[v]] = vals[k % vals.size()];
      k /= vals.size();
    }
    if (k > 0) break;
    const MPoly hs = h.substitute(a);
    if (hs.degree(0) < 1) continue;
    std::vector<UPoly> qs;
    try {
      qs = distinct_factors(to_upoly(hs), opt.max_factor_degree);
    } catch (const DomainError&) {
      continue;
    }
    for (const auto& q : qs) {
      const NumberField K(q);
      std::vector<NumberField::Elem> pt;
      for (std::size_t v = 0; v < r; ++v) pt.push_back(v == y ? K.generator() : K.from(mpq_class(a[h.vars()[v]])));
      if (avoids_all(K, gs, pt)) return Witness{q, pt, false};
    }
  }
  return std::nullopt;
}

std::optional<Witness> witness_free(const std::vector<std::string>& vars, const std::vector<MPoly>& gs) {
  const NumberField K(UPoly({0, 1}));
  const auto vals = grid(9);
  for (int tries = 0; tries < 2000; ++tries) {
    std::vector<NumberField::Elem> pt;
    std::size_t k = static_cast<std::size_t>(tries);
    for (std::size_t v = 0; v < vars.size(); ++v) {
      pt.push_back(K.from(mpq_class(vals[k % vals.size()])));
      k /= vals.size();
    }
    if (k > 0 && !vars.empty()) break;
    if (avoids_all(K, gs, pt)) return Witness{K.modulus(), pt, false};
    if (vars.empty()) break;
  }
  return std::nullopt;
}

Classification unknown(std::string why) {
  Classification c;
  c.verdict = Verdict::Unknown;
  c.reason = std::move(why);
  return c;
}

Classification finite_result(const std::vector<PointOrbit>& pts, bool complete) {
  Classification c;
  if (pts.empty()) {
    if (!complete) return unknown("no points found, but the parameter chart is not complete");
    c.verdict = Verdict::Empty;
    c.reason = "every solution of the constraints is degenerate";
    return c;
  }
  c.verdict = Verdict::FinitePoints;
  c.dim = 0;
  for (const auto& p : pts) {
    ComponentOrbit o;
    o.size = p.size;
    o.real = p.real;
    o.field = p.size == 1 ? "Q" : "Q[t]/(" + p.minpoly.to_string("t") + ")";
    o.description = std::to_string(p.size) + " point(s), " + std::to_string(p.real) + " real";
    c.orbits.push_back(o);
    c.count_over_c += p.size;
    c.real_count += p.real;
  }
  if (!complete) return unknown("point count is not certified: the parameter chart is not complete");
  c.count_mod_conjugation = conjugation_count(c.orbits);
  c.components_over_c = c.count_over_c;
  c.components_mod_conjugation = c.count_mod_conjugation;
  c.witness = Witness{pts[0].minpoly, pts[0].values, false};
  return c;
}

Classification classify_hypersurface(const ModuliPresentation& m, const MPoly& h, const ClassifyOptions& opt) {
  const std::size_t r = m.params.size();
  std::vector<ComponentData> comps;
  std::string why;
  std::vector<MPoly> factors;
  try {
    factors = split_over_q(h, opt);
  } catch (const DomainError& e) {
    return unknown(std::string("splitting: ") + e.what());
  }
  for (const auto& f : factors) {
    auto cd = analyze_factor(f, opt, why);
    if (!cd) return unknown(why);
    comps.push_back(std::move(*cd));
  }
  int over_c = 0;
  for (const auto& cd : comps) over_c += cd.orbit.size;

  std::vector<std::pair<std::size_t, std::size_t>> merges;
  if (over_c > 1) {
    if (r != 2) return unknown("component connectivity is only analyzed for two parameters");
    auto valid_points = [&](const std::vector<MPoly>& sys, std::optional<MPoly> lead) -> std::optional<bool> {
      std::string w;
      auto pts = solve_bivariate(sys, m.nondegeneracy, opt, w);
      if (!pts) return std::nullopt;
      for (const auto& p : *pts) {
        if (lead) {
          const NumberField K(p.minpoly);
          if (K.is_zero(K.evaluate(*lead, p.values))) return std::nullopt;
        }
      }
      return !pts->empty();
    };
    for (auto& cd : comps) {
      if (!cd.split || cd.split->s.is_constant()) continue;
      const MPoly v = MPoly::variable(cd.poly.vars(), cd.split_var);
      const MPoly lin = cd.split->a * v * mpz_class(2) + cd.split->b;
      auto meet = valid_points({cd.split->s, lin, cd.poly}, cd.split->a);
      if (!meet) return unknown("could not decide whether the conjugate components of " + cd.poly.to_string() + " meet");
      cd.orbit.self_connected = *meet;
    }
    for (std::size_t i = 0; i < comps.size(); ++i) {
      for (std::size_t j = i + 1; j < comps.size(); ++j) {
        auto meet = valid_points({comps[i].poly, comps[j].poly}, std::nullopt);
        if (!meet) return unknown("could not intersect components " + comps[i].poly.to_string() + " and " + comps[j].poly.to_string());
        if (*meet) merges.emplace_back(i, j);
      }
    }
  }
  Classification c;
  c.dim = static_cast<int>(r) - 1;
  for (const auto& cd : comps) c.orbits.push_back(cd.orbit);
  c.components_over_c = over_c;
  c.components_mod_conjugation = conjugation_count(c.orbits, merges);
  c.verdict = over_c == 1 ? Verdict::Irreducible : Verdict::Reducible;
  if (over_c == 1) c.components_mod_conjugation = 1;
  c.reason = comps.size() == 1 ? comps[0].orbit.description : std::to_string(comps.size()) + " factors over Q";
  c.witness = witness_on(comps[0].poly, m.nondegeneracy, opt);
  return c;
}

}  // namespace

namespace {

bool vanishes_on_all(const MPoly& g, const std::vector<PointOrbit>& pts) {
  for (const auto& p : pts) {
    const NumberField K(p.minpoly);
    if (!K.is_zero(K.evaluate(g, p.values))) return false;
  }
  return true;
}

}  // namespace

Classification classify(const ModuliPresentation& m0, const ClassifyOptions& opt) {
  const TriplePoints policy = opt.triple_points;
  const bool forbid_all = policy == TriplePoints::Forbid;
  ModuliPresentation m = (m0.is_reduced && m0.reduced_with_triples == forbid_all) ? m0 : reduce(m0, forbid_all);
  Classification c;
  if (m.degenerate) {
    c.verdict = Verdict::Empty;
    c.reason = "forced degeneracy: " + *m.degenerate;
    return c;
  }
  if (forbid_all && !m.forced_concurrency.empty()) {
    c.verdict = Verdict::Empty;
    c.reason = "forced new triple point: " + m.forced_concurrency.front();
    return c;
  }
  for (const auto& h : m.reduced) {
    if (h.is_constant()) {
      if (!m.complete_chart) return unknown("constraints are inconsistent on a chart that is not complete");
      c.verdict = Verdict::Empty;
      c.reason = "the constraints contradict the nondegeneracy conditions";
      return c;
    }
  }

  // Concurrency conditions still to enforce; the rest are allowed.
  std::vector<TripleCondition> pending;
  std::vector<std::string> allowed;
  if (policy == TriplePoints::Allow) {
    for (const auto& t : m.concurrency) allowed.push_back(t.lines);
  } else {
    pending = m.concurrency;
  }
  if (policy != TriplePoints::Forbid) {
    allowed.insert(allowed.end(), m.forced_concurrency.begin(), m.forced_concurrency.end());
  }
  // Moves the conditions that hold on the whole moduli space to `allowed`.
  auto settle = [&](const std::function<bool(const MPoly&)>& everywhere) {
    if (policy != TriplePoints::AllowForced) return;
    std::vector<TripleCondition> keep;
    for (auto& t : pending) {
      if (everywhere(t.det)) allowed.push_back(t.lines);
      else keep.push_back(std::move(t));
    }
    pending = std::move(keep);
  };
  auto enforce = [&]() {
    for (const auto& t : pending) m.nondegeneracy.push_back(t.det);
  };

  const std::size_t r = m.params.size();
  if (m.reduced.empty()) {
    enforce();
    c.verdict = Verdict::Irreducible;
    c.dim = static_cast<int>(r);
    c.components_over_c = c.components_mod_conjugation = 1;
    c.reason = "no constraints";
    c.witness = witness_free(m.params, m.nondegeneracy);
  } else if (r == 1 || (r == 2 && m.reduced.size() > 1)) {
    std::string why;
    auto pts = r == 1 ? solve_univariate(m.reduced, m.nondegeneracy, opt, why)
                      : solve_bivariate(m.reduced, m.nondegeneracy, opt, why);
    if (!pts) return unknown(why);
    settle([&](const MPoly& g) { return vanishes_on_all(g, *pts); });
    std::vector<PointOrbit> kept;
    for (const auto& p : *pts) {
      bool ok = true;
      const NumberField K(p.minpoly);
      for (const auto& t : pending) ok = ok && !K.is_zero(K.evaluate(t.det, p.values));
      if (ok) kept.push_back(p);
    }
    c = finite_result(kept, m.complete_chart);
  } else if (m.reduced.size() == 1) {
    MPoly h = m.reduced[0];
    settle([&](const MPoly& g) { return divide_exact(g, h).has_value(); });
    for (const auto& t : pending) {
      if (h.is_constant()) break;
      const MPoly d = gcd(h, t.det);
      if (!d.is_constant()) h = divide_exact(h, d)->primitive();
    }
    if (h.is_constant()) {
      if (!m.complete_chart) return unknown("constraints are inconsistent on a chart that is not complete");
      c.verdict = Verdict::Empty;
      c.reason = "every component has a new triple point";
      return c;
    }
    enforce();
    m.reduced = {h};
    c = classify_hypersurface(m, h, opt);
  } else {
    return unknown(std::to_string(m.reduced.size()) + " constraints in " + std::to_string(r) + " parameters");
  }
  std::sort(allowed.begin(), allowed.end());
  c.allowed_triple_points = allowed;
  if (c.witness) c.witness->valid = validate_realization(m0, *c.witness, policy != TriplePoints::Allow, allowed);
  return c;
}

namespace {

BatchResult classify_one(const std::string& name, const ClassifyOptions& opt) {
  BatchResult r;
  r.name = name;
  try {
    const Arrangement a = named_arrangement(name);
    const ModuliPresentation m = reduce(build(a, auto_plan(a)), opt.triple_points == TriplePoints::Forbid);
    r.params = static_cast<int>(m.params.size());
    r.classification = classify(m, opt);
  } catch (const std::exception& e) {  // must not escape an OpenMP region
    r.error = e.what();
  }
  return r;
}

}  // namespace

std::vector<BatchResult> classify_batch(const std::vector<std::string>& names, const ClassifyOptions& opt,
                                        Exec exec) {
  std::vector<BatchResult> out(names.size());
  const long n = static_cast<long>(names.size());
  if (exec == Exec::Serial) {
    for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = classify_one(names[static_cast<std::size_t>(i)], opt);
    return out;
  }
#pragma omp parallel for schedule(dynamic, 1)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = classify_one(names[static_cast<std::size_t>(i)], opt);
  return out;
}

bool validate_realization(const ModuliPresentation& m, const Witness& w, bool check_triples,
                          const std::vector<std::string>& exempt) {
  const Incidence I(m.arrangement);
  const NumberField K(w.minpoly);
  if (w.values.size() != m.params.size()) return false;
  std::map<std::string, std::array<NumberField::Elem, 3>> at;
  for (const auto& e : m.elements) {
    std::array<NumberField::Elem, 3> v;
    for (std::size_t i = 0; i < 3; ++i) v[i] = K.evaluate(e.coords[i], w.values);
    if (K.is_zero(v[0]) && K.is_zero(v[1]) && K.is_zero(v[2])) return false;
    at[e.name + (e.kind == ElementKind::Point ? "#p" : "#l")] = v;
  }
  auto get = [&](std::size_t e) { return at.at(I.name(e) + (I.is_point(e) ? "#p" : "#l")); };
  auto kdot = [&](const std::array<NumberField::Elem, 3>& a, const std::array<NumberField::Elem, 3>& b) {
    return K.add(K.add(K.mul(a[0], b[0]), K.mul(a[1], b[1])), K.mul(a[2], b[2]));
  };
  auto kcross = [&](const std::array<NumberField::Elem, 3>& a, const std::array<NumberField::Elem, 3>& b) {
    return std::array<NumberField::Elem, 3>{K.sub(K.mul(a[1], b[2]), K.mul(a[2], b[1])),
                                            K.sub(K.mul(a[2], b[0]), K.mul(a[0], b[2])),
                                            K.sub(K.mul(a[0], b[1]), K.mul(a[1], b[0]))};
  };
  const std::size_t P = I.points.size(), L = I.lines.size();
  for (std::size_t p = 0; p < P; ++p) {
    for (std::size_t l = 0; l < L; ++l) {
      if (K.is_zero(kdot(get(p), get(P + l))) != I.on[p][l]) return false;
    }
  }
  for (std::size_t x = 0; check_triples && x < L; ++x) {
    for (std::size_t y = x + 1; y < L; ++y) {
      for (std::size_t z = y + 1; z < L; ++z) {
        if (!I.pairwise_double(x, y, z)) continue;
        const std::string names = I.lines[x] + ", " + I.lines[y] + ", " + I.lines[z];
        if (std::find(exempt.begin(), exempt.end(), names) != exempt.end()) continue;
        if (K.is_zero(kdot(get(P + x), kcross(get(P + y), get(P + z))))) return false;
      }
    }
  }
  return true;
}

std::string to_string(TriplePoints p) {
  switch (p) {
    case TriplePoints::Allow:
      return "allow";
    case TriplePoints::Forbid:
      return "forbid";
    case TriplePoints::AllowForced:
      return "allow-forced";
  }
  return "allow-forced";
}

TriplePoints parse_triple_points(std::string_view s) {
  if (s == "allow") return TriplePoints::Allow;
  if (s == "forbid") return TriplePoints::Forbid;
  if (s == "allow-forced") return TriplePoints::AllowForced;
  throw DomainError("unknown triple point policy '" + std::string(s) + "'");
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Empty:
      return "Empty";
    case Verdict::Irreducible:
      return "Irreducible";
    case Verdict::Reducible:
      return "Reducible";
    case Verdict::FinitePoints:
      return "FinitePoints";
    case Verdict::Unknown:
      return "Unknown";
  }
  return "Unknown";
}

std::string to_string(const Classification& c) {
  switch (c.verdict) {
    case Verdict::Empty:
      return "Empty";
    case Verdict::Irreducible:
      return "Irreducible(dim " + std::to_string(c.dim) + ")";
    case Verdict::Reducible:
      return "Reducible(" + std::to_string(c.components_over_c) + ", " + std::to_string(c.components_mod_conjugation) +
             ", dim " + std::to_string(c.dim) + ")";
    case Verdict::FinitePoints:
      return "FinitePoints(" + std::to_string(c.count_over_c) + ", " + std::to_string(c.count_mod_conjugation) + ")";
    case Verdict::Unknown:
      return "Unknown(" + c.reason + ")";
  }
  return "Unknown";
}

nlohmann::json to_json(const ModuliPresentation& m) {
  auto strings = [](const std::vector<MPoly>& ps) {
    nlohmann::json j = nlohmann::json::array();
    for (const auto& p : ps) j.push_back(p.to_string());
    return j;
  };
  nlohmann::json elements = nlohmann::json::array();
  for (const auto& e : m.elements) {
    elements.push_back({{"name", e.name},
                        {"kind", e.kind == ElementKind::Point ? "point" : "line"},
                        {"coords", coords_string(e.coords)}});
  }
  nlohmann::json j{{"params", m.params},
                   {"constraints", strings(m.constraints)},
                   {"nondegeneracy", strings(m.nondegeneracy)},
                   {"reduced", strings(m.reduced)},
                   {"plan", to_json(m.plan)},
                   {"elements", elements},
                   {"complete_chart", m.complete_chart}};
  if (m.degenerate) j["degenerate"] = *m.degenerate;
  if (!m.forced_concurrency.empty()) j["forced_concurrency"] = m.forced_concurrency;
  nlohmann::json conc = nlohmann::json::array();
  for (const auto& t : m.concurrency) conc.push_back({{"lines", t.lines}, {"det", t.det.to_string()}});
  j["concurrency"] = conc;
  return j;
}

nlohmann::json to_json(const Classification& c) {
  nlohmann::json v{{"kind", to_string(c.verdict)}};
  switch (c.verdict) {
    case Verdict::Irreducible:
      v["dim"] = c.dim;
      break;
    case Verdict::Reducible:
      v["components_over_c"] = c.components_over_c;
      v["components_mod_conjugation"] = c.components_mod_conjugation;
      v["dim"] = c.dim;
      break;
    case Verdict::FinitePoints:
      v["count_over_c"] = c.count_over_c;
      v["count_mod_conjugation"] = c.count_mod_conjugation;
      v["real"] = c.real_count;
      break;
    default:
      break;
  }
  nlohmann::json orbits = nlohmann::json::array();
  for (const auto& o : c.orbits) {
    orbits.push_back({{"field", o.field},
                      {"size", o.size},
                      {"real", o.real},
                      {"self_connected", o.self_connected},
                      {"description", o.description}});
  }
  nlohmann::json j{{"verdict", v},
                   {"summary", to_string(c)},
                   {"reason", c.reason},
                   {"orbits", orbits},
                   {"allowed_triple_points", c.allowed_triple_points}};
  if (c.witness) {
    const NumberField K(c.witness->minpoly);
    nlohmann::json vals = nlohmann::json::array();
    for (const auto& x : c.witness->values) vals.push_back(K.to_string(x));
    j["witness"] = {{"minpoly", c.witness->minpoly.to_string("t")}, {"values", vals}, {"valid", c.witness->valid}};
  }
  return j;
}

TallyRow tally_row(const Classification& c) {
  switch (c.verdict) {
    case Verdict::Empty:
      return TallyRow::Empty;
    case Verdict::Irreducible:
      return TallyRow::Irreducible;
    case Verdict::Unknown:
      return TallyRow::Unknown;
    default:
      break;
  }
  const auto n = c.counts();
  if (!n) return TallyRow::Unknown;
  if (n->first == 1) return TallyRow::Irreducible;
  return n->second == 1 ? TallyRow::ReducibleIrreducibleModConjugation : TallyRow::ReducibleModConjugation;
}

std::string to_string(TallyRow r) {
  switch (r) {
    case TallyRow::Irreducible:
      return "irreducible";
    case TallyRow::Empty:
      return "empty";
    case TallyRow::ReducibleIrreducibleModConjugation:
      return "reducible, irreducible mod conjugation";
    case TallyRow::ReducibleModConjugation:
      return "reducible mod conjugation";
    case TallyRow::Unknown:
      return "unknown";
  }
  return "unknown";
}

CensusClassification classify_census(const CensusReport& census, std::span<const CatalogEntry> catalog,
                                     const ClassifyOptions& opt, Exec exec) {
  CensusClassification t;
  t.k = census.k;
  t.config_names = census.config_names;
  std::set<std::string> removed;
  for (const auto& id : census.identifications) {
    if (id.same_config) removed.insert(id.removed);
  }
  std::set<std::string> classes;
  for (const auto& m : census.members) classes.insert(m.name);

  std::vector<std::string> names;
  for (std::size_t j = 0; j < catalog.size(); ++j) {
    for (const auto& line : ol_ext(census.k, catalog[j].arrangement)) {
      std::string n = name_arrangement(catalog[j], line);
      if (removed.count(n)) continue;
      names.push_back(std::move(n));
      t.config_of.push_back(static_cast<int>(j));
    }
  }
  t.results = classify_batch(names, opt, exec);
  for (auto& row : t.per_config) row.assign(catalog.size(), 0);
  for (std::size_t i = 0; i < names.size(); ++i) {
    const auto& r = t.results[i];
    const auto row = static_cast<std::size_t>(r.classification ? tally_row(*r.classification) : TallyRow::Unknown);
    const bool cls = classes.count(names[i]) > 0;
    t.is_class.push_back(cls);
    ++t.per_config[row][static_cast<std::size_t>(t.config_of[i])];
    ++t.subtotal[row];
    if (cls) ++t.total[row];
  }
  return t;
}

std::string tally_table(const CensusReport& census, const CensusClassification& t) {
  static const char* labels[kTallyRows] = {"irreducible", "empty", "red. M, irr. M^C", "red. M^C", "unknown"};
  std::ostringstream out;
  std::size_t w = 9;
  for (const auto& n : census.config_names) w = std::max(w, n.size() + 1);
  auto cell = [&](const std::string& s, std::size_t width) {
    out << s << std::string(width > s.size() ? width - s.size() : 1, ' ');
  };
  auto row = [&](const std::string& label, const std::vector<int>& cells, int sub, int tot) {
    cell(label, 18);
    for (int c : cells) cell(std::to_string(c), w);
    cell(std::to_string(sub), w);
    out << tot << '\n';
  };
  out << "k = " << census.k << '\n';
  cell("", 18);
  for (const auto& n : census.config_names) cell(n, w);
  cell("subtotal", w);
  out << "total\n";
  row("constructed", census.per_config_counts, census.subtotal, census.total);
  for (std::size_t r = 0; r < kTallyRows; ++r) row(labels[r], t.per_config[r], t.subtotal[r], t.total[r]);
  return out.str();
}

nlohmann::json to_json(const CensusClassification& t) {
  nlohmann::json rows = nlohmann::json::object();
  for (std::size_t row = 0; row < kTallyRows; ++row) {
    rows[to_string(static_cast<TallyRow>(row))] = {
        {"per_config", t.per_config[row]}, {"subtotal", t.subtotal[row]}, {"total", t.total[row]}};
  }
  nlohmann::json members = nlohmann::json::array();
  for (std::size_t i = 0; i < t.results.size(); ++i) {
    const auto& r = t.results[i];
    nlohmann::json m{{"name", r.name},
                     {"config", t.config_names.at(static_cast<std::size_t>(t.config_of[i]))},
                     {"class_representative", static_cast<bool>(t.is_class[i])}};
    if (r.classification) {
      m["summary"] = to_string(*r.classification);
      m["row"] = to_string(tally_row(*r.classification));
    } else {
      m["error"] = r.error;
    }
    members.push_back(m);
  }
  return {{"k", t.k}, {"rows", rows}, {"members", members}};
}

}  // namespace lineext
