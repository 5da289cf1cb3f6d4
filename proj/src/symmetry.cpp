#include "lineext/symmetry.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <functional>
#include <set>
#include <unordered_map>

#include "lineext/error.hpp"

namespace lineext {

namespace {

// Dense view of an arrangement for the search kernels.
struct Structure {
  int n = 0;
  IncidenceMasks masks;
  std::vector<int> meet;                    // n*n, point index or -1
  std::vector<std::vector<int>> fingerprint;  // sorted multiplicities per line
  std::vector<std::vector<int>> line_points;

  explicit Structure(const Arrangement& a) : n(static_cast<int>(a.line_count())), masks(incidence_masks(a)) {
    meet.assign(static_cast<std::size_t>(n * n), -1);
    line_points.resize(n);
    fingerprint.resize(n);
    for (int p = 0; p < static_cast<int>(masks.point_masks.size()); ++p) {
      const auto m = masks.point_masks[p];
      const int mult = std::popcount(m);
      for (int i = 0; i < n; ++i) {
        if (!(m >> i & 1)) continue;
        line_points[i].push_back(p);
        fingerprint[i].push_back(mult);
        for (int j = 0; j < n; ++j) {
          if (j != i && (m >> j & 1)) meet[i * n + j] = p;
        }
      }
    }
    for (auto& f : fingerprint) std::sort(f.begin(), f.end());
  }

  int meet_of(int i, int j) const { return meet[i * n + j]; }
};

// Order lines so that each next line meets many already-ordered ones.
std::vector<int> search_order(const Structure& s) {
  std::vector<int> order;
  std::vector<bool> taken(s.n, false);
  for (int step = 0; step < s.n; ++step) {
    int best = -1;
    int best_score = -1;
    for (int i = 0; i < s.n; ++i) {
      if (taken[i]) continue;
      int score = 0;
      for (int j : order) score += s.meet_of(i, j) >= 0 ? 1 : 0;
      score = score * 64 + static_cast<int>(s.fingerprint[i].size());
      if (score > best_score) {
        best_score = score;
        best = i;
      }
    }
    taken[best] = true;
    order.push_back(best);
  }
  return order;
}

class IsoSearch {
 public:
  IsoSearch(const Structure& a, const Structure& b) : a_(a), b_(b) {}

  // Calls visit(line_map) for each isomorphism; stops when visit returns false.
  void run(const std::function<bool(const LinePerm&)>& visit) {
    if (a_.n != b_.n || a_.masks.point_masks.size() != b_.masks.point_masks.size()) return;
    auto fa = a_.fingerprint;
    auto fb = b_.fingerprint;
    std::sort(fa.begin(), fa.end());
    std::sort(fb.begin(), fb.end());
    if (fa != fb) return;
    order_ = search_order(a_);
    sigma_.assign(a_.n, -1);
    used_.assign(b_.n, false);
    map_ab_.assign(a_.masks.point_masks.size(), -1);
    map_ba_.assign(b_.masks.point_masks.size(), -1);
    visit_ = &visit;
    stop_ = false;
    extend(0);
  }

 private:
  void extend(int pos) {
    if (stop_) return;
    if (pos == a_.n) {
      if (!(*visit_)(sigma_)) stop_ = true;
      return;
    }
    const int i = order_[pos];
    for (int c = 0; c < b_.n && !stop_; ++c) {
      if (used_[c] || a_.fingerprint[i] != b_.fingerprint[c]) continue;
      std::vector<int> fresh;
      bool ok = true;
      for (int q = 0; q < pos && ok; ++q) {
        const int j = order_[q];
        const int pa = a_.meet_of(i, j);
        const int pb = b_.meet_of(c, sigma_[j]);
        if ((pa < 0) != (pb < 0)) {
          ok = false;
        } else if (pa >= 0) {
          if (map_ab_[pa] < 0 && map_ba_[pb] < 0) {
            map_ab_[pa] = pb;
            map_ba_[pb] = pa;
            fresh.push_back(pa);
          } else if (map_ab_[pa] != pb) {
            ok = false;
          }
        }
      }
      if (ok) {
        sigma_[i] = c;
        used_[c] = true;
        extend(pos + 1);
        used_[c] = false;
        sigma_[i] = -1;
      }
      for (int pa : fresh) {
        map_ba_[map_ab_[pa]] = -1;
        map_ab_[pa] = -1;
      }
    }
  }

  const Structure& a_;
  const Structure& b_;
  std::vector<int> order_;
  LinePerm sigma_;
  std::vector<bool> used_;
  std::vector<int> map_ab_;
  std::vector<int> map_ba_;
  const std::function<bool(const LinePerm&)>* visit_ = nullptr;
  bool stop_ = false;
};

std::optional<ArrangementMap> induced_from_structures(const Structure& a, const Structure& b,
                                                      const LinePerm& sigma) {
  if (static_cast<int>(sigma.size()) != a.n || a.n != b.n) return std::nullopt;
  std::unordered_map<std::uint64_t, int> b_index;
  // Points on one line only are matched in order along each line.
  std::vector<std::vector<int>> b_single(b.n);
  for (int q = 0; q < static_cast<int>(b.masks.point_masks.size()); ++q) {
    const auto m = b.masks.point_masks[q];
    if (std::popcount(m) >= 2) {
      b_index[m] = q;
    } else {
      b_single[std::countr_zero(m)].push_back(q);
    }
  }
  std::vector<std::size_t> single_used(b.n, 0);
  ArrangementMap out;
  out.line_map = sigma;
  std::set<int> hit;
  for (int p = 0; p < static_cast<int>(a.masks.point_masks.size()); ++p) {
    const auto m = a.masks.point_masks[p];
    std::uint64_t img = 0;
    for (int i = 0; i < a.n; ++i) {
      if (m >> i & 1) img |= std::uint64_t{1} << sigma[i];
    }
    int q = -1;
    if (std::popcount(m) >= 2) {
      auto it = b_index.find(img);
      if (it == b_index.end()) return std::nullopt;
      q = it->second;
    } else {
      const int line = std::countr_zero(img);
      auto& used = single_used[line];
      if (used >= b_single[line].size()) return std::nullopt;
      q = b_single[line][used++];
    }
    if (!hit.insert(q).second) return std::nullopt;
    out.point_map[a.masks.point_labels[p]] = b.masks.point_labels[q];
  }
  if (hit.size() != b.masks.point_masks.size()) return std::nullopt;
  return out;
}

}  // namespace

nlohmann::json to_json(const ArrangementMap& m, const Arrangement& from, const Arrangement& to) {
  nlohmann::json points = nlohmann::json::object();
  for (const auto& [p, q] : m.point_map) points[p] = q;
  nlohmann::json lines = nlohmann::json::object();
  for (std::size_t i = 0; i < m.line_map.size(); ++i) {
    lines[from.names().at(i)] = to.names().at(static_cast<std::size_t>(m.line_map[i]));
  }
  return {{"point_map", points}, {"line_map", lines}};
}

bool verify_isomorphism(const Arrangement& from, const Arrangement& to, const ArrangementMap& m) {
  const std::size_t n = from.line_count();
  if (to.line_count() != n || m.line_map.size() != n) return false;
  std::vector<bool> seen(n, false);
  for (int t : m.line_map) {
    if (t < 0 || static_cast<std::size_t>(t) >= n || seen[t]) return false;
    seen[t] = true;
  }
  const auto pf = from.points();
  const auto pt = to.points();
  if (pf.size() != pt.size() || m.point_map.size() != pf.size()) return false;
  std::set<Label> image;
  for (const auto& p : pf) {
    auto it = m.point_map.find(p);
    if (it == m.point_map.end()) return false;
    if (std::find(pt.begin(), pt.end(), it->second) == pt.end()) return false;
    image.insert(it->second);
  }
  if (image.size() != pt.size()) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (const auto& p : pf) {
      if (from.incident(p, i) != to.incident(m.point_map.at(p), static_cast<std::size_t>(m.line_map[i]))) {
        return false;
      }
    }
  }
  return true;
}

std::optional<ArrangementMap> induced_map(const Arrangement& from, const Arrangement& to,
                                          const LinePerm& line_map) {
  const Structure a(from);
  const Structure b(to);
  auto m = induced_from_structures(a, b, line_map);
  if (m && !verify_isomorphism(from, to, *m)) return std::nullopt;
  return m;
}

std::optional<ArrangementMap> find_isomorphism(const Arrangement& a, const Arrangement& b) {
  const Structure sa(a);
  const Structure sb(b);
  std::optional<ArrangementMap> found;
  IsoSearch(sa, sb).run([&](const LinePerm& sigma) {
    found = induced_from_structures(sa, sb, sigma);
    return !found.has_value();
  });
  return found;
}

std::vector<ArrangementMap> all_isomorphisms(const Arrangement& a, const Arrangement& b) {
  const Structure sa(a);
  const Structure sb(b);
  std::vector<ArrangementMap> out;
  IsoSearch(sa, sb).run([&](const LinePerm& sigma) {
    if (auto m = induced_from_structures(sa, sb, sigma)) out.push_back(std::move(*m));
    return true;
  });
  return out;
}

LinePerm compose(const LinePerm& outer, const LinePerm& inner) {
  LinePerm out(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) out[i] = outer[static_cast<std::size_t>(inner[i])];
  return out;
}

int permutation_order(const LinePerm& p) {
  LinePerm id(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) id[i] = static_cast<int>(i);
  LinePerm cur = p;
  int k = 1;
  while (cur != id) {
    cur = compose(p, cur);
    ++k;
  }
  return k;
}

namespace {

std::vector<LinePerm> closure(const std::vector<LinePerm>& gens, std::size_t n, std::uint64_t max_order) {
  LinePerm id(n);
  for (std::size_t i = 0; i < n; ++i) id[i] = static_cast<int>(i);
  std::set<LinePerm> seen{id};
  std::deque<LinePerm> queue{id};
  while (!queue.empty()) {
    auto g = std::move(queue.front());
    queue.pop_front();
    for (const auto& s : gens) {
      auto h = compose(s, g);
      if (seen.insert(h).second) {
        if (seen.size() > max_order) throw DomainError("group closure exceeds the order bound");
        queue.push_back(std::move(h));
      }
    }
  }
  return {seen.begin(), seen.end()};
}

void fill_statistics(PermGroup& g) {
  g.order = g.elements.size();
  g.element_order_histogram.clear();
  for (const auto& e : g.elements) ++g.element_order_histogram[permutation_order(e)];
  g.abelian = true;
  for (std::size_t i = 0; i < g.generators.size() && g.abelian; ++i) {
    for (std::size_t j = i + 1; j < g.generators.size(); ++j) {
      const auto& x = g.generators[i].line_map;
      const auto& y = g.generators[j].line_map;
      if (compose(x, y) != compose(y, x)) {
        g.abelian = false;
        break;
      }
    }
  }
}

}  // namespace

PermGroup automorphism_group(const Arrangement& a) {
  const auto autos = all_isomorphisms(a, a);
  std::vector<LinePerm> all;
  for (const auto& m : autos) all.push_back(m.line_map);
  std::sort(all.begin(), all.end());
  const std::size_t n = a.line_count();

  // Greedy generating set: take the first element outside the current closure.
  PermGroup g;
  std::vector<LinePerm> gens;
  std::set<LinePerm> span = {all.front()};
  for (std::size_t k = 0; k < all.size(); ++k) {
    if (span.count(all[k])) continue;
    gens.push_back(all[k]);
    const auto c = closure(gens, n, all.size());
    span = std::set<LinePerm>(c.begin(), c.end());
    auto it = std::find_if(autos.begin(), autos.end(), [&](const auto& m) { return m.line_map == all[k]; });
    g.generators.push_back(*it);
  }
  g.elements = closure(gens, n, all.size());
  if (g.elements != all) throw DomainError("automorphism closure mismatch");
  fill_statistics(g);
  return g;
}

PermGroup generated_group(const Arrangement& a, std::vector<ArrangementMap> generators,
                          std::uint64_t max_order) {
  std::vector<LinePerm> gens;
  for (const auto& m : generators) {
    if (!verify_isomorphism(a, a, m)) throw DomainError("generator is not an automorphism");
    gens.push_back(m.line_map);
  }
  PermGroup g;
  g.generators = std::move(generators);
  g.elements = closure(gens, a.line_count(), max_order);
  fill_statistics(g);
  return g;
}

// ---- canonical form --------------------------------------------------------

std::string CanonicalForm::hex() const {
  static constexpr char digits[] = "0123456789abcdef";
  std::string s;
  s.reserve(bytes.size() * 2);
  for (auto b : bytes) {
    s.push_back(digits[b >> 4]);
    s.push_back(digits[b & 15]);
  }
  return s;
}

namespace {

class Canonizer {
 public:
  explicit Canonizer(const Structure& s) : s_(s) {
    point_lines_.resize(s.masks.point_masks.size());
    for (std::size_t p = 0; p < point_lines_.size(); ++p) {
      for (int i = 0; i < s.n; ++i) {
        if (s.masks.point_masks[p] >> i & 1) point_lines_[p].push_back(i);
      }
    }
  }

  std::vector<std::uint64_t> run() {
    std::vector<int> lc(s_.n, 0);
    std::vector<int> pc(point_lines_.size(), 0);
    refine(lc, pc);
    descend(lc, pc);
    return best_;
  }

 private:
  // Iterated equitable refinement. New colors are ranks of
  // (old color, sorted neighbour colors), so cell order is invariant.
  void refine(std::vector<int>& lc, std::vector<int>& pc) const {
    int cells = -1;
    while (true) {
      using Key = std::pair<int, std::vector<int>>;
      std::vector<Key> lk(lc.size());
      std::vector<Key> pk(pc.size());
      for (int i = 0; i < s_.n; ++i) {
        std::vector<int> nb;
        for (int p : s_.line_points[i]) nb.push_back(pc[p]);
        std::sort(nb.begin(), nb.end());
        lk[i] = {lc[i], std::move(nb)};
      }
      for (std::size_t p = 0; p < pc.size(); ++p) {
        std::vector<int> nb;
        for (int i : point_lines_[p]) nb.push_back(lc[i]);
        std::sort(nb.begin(), nb.end());
        pk[p] = {pc[p], std::move(nb)};
      }
      const int nl = rerank(lk, lc);
      const int np = rerank(pk, pc);
      if (nl + np == cells) return;
      cells = nl + np;
    }
  }

  template <class Key>
  static int rerank(const std::vector<Key>& keys, std::vector<int>& colors) {
    std::vector<Key> sorted = keys;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    for (std::size_t v = 0; v < keys.size(); ++v) {
      colors[v] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), keys[v]) - sorted.begin());
    }
    return static_cast<int>(sorted.size());
  }

  void descend(const std::vector<int>& lc, const std::vector<int>& pc) {
    // Target cell: the first line color shared by several lines.
    std::vector<int> count(s_.n, 0);
    for (int c : lc) ++count[c];
    int target = -1;
    for (int c = 0; c < s_.n; ++c) {
      if (count[c] > 1) {
        target = c;
        break;
      }
    }
    if (target < 0) {
      leaf(lc);
      return;
    }
    for (int v = 0; v < s_.n; ++v) {
      if (lc[v] != target) continue;
      auto nlc = lc;
      for (int i = 0; i < s_.n; ++i) {
        if (nlc[i] > target || (nlc[i] == target && i != v)) ++nlc[i];
      }
      auto npc = pc;
      refine(nlc, npc);
      descend(nlc, npc);
    }
  }

  void leaf(const std::vector<int>& lc) {
    std::vector<std::uint64_t> cert;
    cert.reserve(s_.masks.point_masks.size());
    for (auto m : s_.masks.point_masks) {
      std::uint64_t r = 0;
      for (int i = 0; i < s_.n; ++i) {
        if (m >> i & 1) r |= std::uint64_t{1} << lc[i];
      }
      cert.push_back(r);
    }
    std::sort(cert.begin(), cert.end());
    if (best_.empty() || cert < best_) best_ = std::move(cert);
  }

  const Structure& s_;
  std::vector<std::vector<int>> point_lines_;
  std::vector<std::uint64_t> best_;
};

}  // namespace

CanonicalForm canonical_form(const Arrangement& a) {
  const Structure s(a);
  const auto cert = Canonizer(s).run();
  CanonicalForm out;
  const std::size_t m = cert.size();
  out.bytes.push_back(static_cast<std::uint8_t>(s.n));
  out.bytes.push_back(static_cast<std::uint8_t>(m >> 8));
  out.bytes.push_back(static_cast<std::uint8_t>(m & 0xff));
  const int width = std::max(1, (s.n + 7) / 8);
  for (auto mask : cert) {
    for (int b = width - 1; b >= 0; --b) out.bytes.push_back(static_cast<std::uint8_t>(mask >> (8 * b)));
  }
  return out;
}

// ---- orbits ------------------------------------------------------------------

ExtensionLine apply(const LinePerm& g, const ExtensionLine& line) {
  ExtensionLine out;
  out.reserve(line.size());
  for (const auto& d : line) out.emplace_back(g[static_cast<std::size_t>(d.first)], g[static_cast<std::size_t>(d.second)]);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<ExtensionLine> orbit_representatives(const PermGroup& group,
                                                 std::span<const ExtensionLine> lines) {
  const std::set<ExtensionLine> members(lines.begin(), lines.end());
  std::set<ExtensionLine> reps;
  for (const auto& s : lines) {
    ExtensionLine best = s;
    for (const auto& g : group.elements) {
      auto img = apply(g, s);
      if (!members.count(img)) throw DomainError("group element does not stabilize the extension set");
      if (img < best) best = std::move(img);
    }
    reps.insert(std::move(best));
  }
  return {reps.begin(), reps.end()};
}

}  // namespace lineext
