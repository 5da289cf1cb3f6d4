#include "lineext/arrangement.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include "lineext/error.hpp"

namespace lineext {

ExtensionLine make_extension_line(std::vector<DoublePoint> members) {
  std::sort(members.begin(), members.end());
  if (std::adjacent_find(members.begin(), members.end()) != members.end()) {
    throw DomainError("extension line lists the same double point twice");
  }
  return members;
}

std::string default_line_name(std::size_t i) { return "L" + std::to_string(i + 1); }

Arrangement::Arrangement(std::vector<std::vector<Label>> lines, std::vector<std::string> names)
    : lines_(std::move(lines)), names_(std::move(names)) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < lines_.size(); ++i) names_.push_back(default_line_name(i));
  }
  if (names_.size() != lines_.size()) {
    throw DomainError("arrangement has " + std::to_string(lines_.size()) + " lines but " +
                      std::to_string(names_.size()) + " names");
  }
  std::vector<std::set<Label>> sets(lines_.size());
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    for (const auto& p : lines_[i]) {
      if (p.empty()) throw DomainError("empty point label on line " + names_[i]);
      if (!sets[i].insert(p).second) {
        throw DomainError("point " + p + " listed twice on line " + names_[i]);
      }
    }
  }
  for (std::size_t i = 0; i < lines_.size(); ++i) {
    for (std::size_t j = i + 1; j < lines_.size(); ++j) {
      int shared = 0;
      for (const auto& p : sets[i]) shared += static_cast<int>(sets[j].count(p));
      if (shared > 1) {
        throw DomainError("lines " + names_[i] + " and " + names_[j] + " share " +
                          std::to_string(shared) + " points");
      }
    }
  }
}

std::vector<Label> Arrangement::points() const {
  std::vector<Label> out;
  std::unordered_set<Label> seen;
  for (const auto& l : lines_) {
    for (const auto& p : l) {
      if (seen.insert(p).second) out.push_back(p);
    }
  }
  return out;
}

int Arrangement::multiplicity(const Label& p) const {
  int m = 0;
  for (const auto& l : lines_) m += static_cast<int>(std::count(l.begin(), l.end(), p));
  return m;
}

bool Arrangement::incident(const Label& p, std::size_t line) const {
  const auto& l = lines_.at(line);
  return std::find(l.begin(), l.end(), p) != l.end();
}

std::optional<Label> Arrangement::meet(std::size_t i, std::size_t j) const {
  for (const auto& p : lines_.at(i)) {
    if (incident(p, j)) return p;
  }
  return std::nullopt;
}

void Arrangement::validate() const {
  for (const auto& p : points()) {
    const int m = multiplicity(p);
    if (m < 3) {
      throw DomainError("point " + p + " lies on only " + std::to_string(m) + " line(s)");
    }
  }
}

std::vector<DoublePoint> doubles(const Arrangement& a) {
  std::vector<DoublePoint> out;
  const int n = static_cast<int>(a.line_count());
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!a.meet(i, j)) out.emplace_back(i, j);
    }
  }
  return out;
}

namespace {

// A, B, ..., Z, AA, AB, ...
std::string letter_label(std::size_t k) {
  std::string s;
  ++k;
  while (k > 0) {
    --k;
    s.insert(s.begin(), static_cast<char>('A' + k % 26));
    k /= 26;
  }
  return s;
}

}  // namespace

std::vector<Label> default_double_labels(const Arrangement& a) {
  const auto ds = doubles(a);
  const auto pts = a.points();
  std::unordered_set<Label> used(pts.begin(), pts.end());
  std::vector<Label> out;
  std::size_t k = 0;
  while (out.size() < ds.size()) {
    auto l = letter_label(k++);
    if (!used.count(l)) out.push_back(std::move(l));
  }
  return out;
}

bool valid_extension(const Arrangement& a, const ExtensionLine& line) {
  std::set<int> touched;
  for (const auto& d : line) {
    if (d.first < 0 || d.second >= static_cast<int>(a.line_count()) || d.first == d.second) {
      return false;
    }
    if (a.meet(d.first, d.second)) return false;
    if (!touched.insert(d.first).second || !touched.insert(d.second).second) return false;
  }
  return true;
}

Arrangement add_line(const Arrangement& a, const ExtensionLine& line,
                     std::span<const Label> labels) {
  const auto ds = doubles(a);
  std::vector<Label> defaults;
  if (labels.empty()) {
    defaults = default_double_labels(a);
    labels = defaults;
  }
  if (labels.size() != ds.size()) {
    throw DomainError("expected " + std::to_string(ds.size()) + " double-point labels, got " +
                      std::to_string(labels.size()));
  }
  std::set<int> touched;
  auto lines = a.lines();
  std::vector<Label> fresh;
  for (const auto& d : line) {
    auto it = std::lower_bound(ds.begin(), ds.end(), d);
    if (it == ds.end() || *it != d) {
      throw DomainError("lines " + std::to_string(d.first + 1) + " and " +
                        std::to_string(d.second + 1) + " do not form a double point");
    }
    if (!touched.insert(d.first).second || !touched.insert(d.second).second) {
      throw DomainError("two members of the extension line share a line");
    }
    const Label& p = labels[static_cast<std::size_t>(it - ds.begin())];
    lines[d.first].push_back(p);
    lines[d.second].push_back(p);
    fresh.push_back(p);
  }
  lines.push_back(fresh);
  auto names = a.names();
  names.push_back(default_line_name(a.line_count()));
  return Arrangement(std::move(lines), std::move(names));
}

Arrangement remove_line(const Arrangement& a, std::size_t i) {
  if (i >= a.line_count()) {
    throw DomainError("line index " + std::to_string(i + 1) + " out of range");
  }
  std::vector<std::vector<Label>> lines;
  std::vector<std::string> names;
  for (std::size_t j = 0; j < a.line_count(); ++j) {
    if (j == i) continue;
    lines.push_back(a.line(j));
    names.push_back(a.names()[j]);
  }
  std::unordered_map<Label, int> mult;
  for (const auto& l : lines) {
    for (const auto& p : l) ++mult[p];
  }
  for (auto& l : lines) {
    std::erase_if(l, [&](const Label& p) { return mult[p] == 2; });
  }
  return Arrangement(std::move(lines), std::move(names));
}

bool is_reductive(const Arrangement& a) {
  return std::any_of(a.lines().begin(), a.lines().end(),
                     [](const auto& l) { return l.size() <= 2; });
}

bool is_n3_configuration(const Arrangement& a) {
  const auto pts = a.points();
  if (pts.size() != a.line_count()) return false;
  for (const auto& l : a.lines()) {
    if (l.size() != 3) return false;
  }
  return std::all_of(pts.begin(), pts.end(), [&](const Label& p) { return a.multiplicity(p) == 3; });
}

// ---- table format ----------------------------------------------------------

namespace {

struct Token {
  std::size_t column;  // character offset
  std::string text;
};

std::string expand_tabs(std::string_view row) {
  std::string out;
  for (char c : row) {
    if (c == '\t') {
      do out.push_back(' ');
      while (out.size() % 8 != 0);
    } else if (c != '\r') {
      out.push_back(c);
    }
  }
  return out;
}

std::vector<Token> tokenize(const std::string& row) {
  std::vector<Token> out;
  std::size_t i = 0;
  while (i < row.size()) {
    while (i < row.size() && row[i] == ' ') ++i;
    if (i >= row.size()) break;
    std::size_t j = i;
    while (j < row.size() && row[j] != ' ') ++j;
    out.push_back({i, row.substr(i, j - i)});
    i = j;
  }
  return out;
}

bool is_separator(const std::vector<Token>& toks) {
  bool long_dash = false;
  for (const auto& t : toks) {
    if (t.text.find_first_not_of("-=+|") != std::string::npos) return false;
    if (t.text.size() >= 2) long_dash = true;
  }
  return long_dash;
}

bool is_empty_marker(const std::string& s) { return s == "-" || s == "."; }

}  // namespace

Arrangement parse_table(std::string_view text) {
  std::vector<std::vector<Token>> rows;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    auto row = expand_tabs(text.substr(start, end - start));
    auto toks = tokenize(row);
    if (!toks.empty() && !(toks.front().text.starts_with("#")) && !is_separator(toks)) {
      rows.push_back(std::move(toks));
    }
    start = end + 1;
  }
  if (rows.empty()) throw DomainError("empty arrangement table");

  const auto& header = rows.front();
  const std::size_t ncols = header.size();
  std::vector<std::string> names;
  for (const auto& t : header) names.push_back(t.text);
  std::vector<std::vector<Label>> lines(ncols);

  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& toks = rows[r];
    if (toks.size() > ncols) {
      throw DomainError("table row " + std::to_string(r) + " has more cells than columns");
    }
    for (std::size_t t = 0; t < toks.size(); ++t) {
      std::size_t c = t;
      if (toks.size() != ncols) {
        c = 0;
        while (c + 1 < ncols && header[c + 1].column <= toks[t].column) ++c;
      }
      if (is_empty_marker(toks[t].text)) continue;
      auto& col = lines[c];
      if (std::find(col.begin(), col.end(), toks[t].text) != col.end()) {
        throw DomainError("point " + toks[t].text + " appears twice in column " + names[c]);
      }
      col.push_back(toks[t].text);
    }
  }
  return Arrangement(std::move(lines), std::move(names));
}

std::string emit_table(const Arrangement& a) {
  const std::size_t n = a.line_count();
  std::vector<std::size_t> width(n);
  std::size_t rows = 0;
  for (std::size_t i = 0; i < n; ++i) {
    width[i] = a.names()[i].size();
    for (const auto& p : a.line(i)) width[i] = std::max(width[i], p.size());
    rows = std::max(rows, a.line(i).size());
  }
  auto emit_row = [&](auto cell) {
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
      std::string c = cell(i);
      s += c;
      if (i + 1 < n) s.append(width[i] + 1 - c.size(), ' ');
    }
    while (!s.empty() && s.back() == ' ') s.pop_back();
    return s + "\n";
  };
  std::string out = emit_row([&](std::size_t i) { return a.names()[i]; });
  for (std::size_t r = 0; r < rows; ++r) {
    out += emit_row([&](std::size_t i) { return r < a.line(i).size() ? a.line(i)[r] : std::string(); });
  }
  return out;
}

nlohmann::json to_json(const Arrangement& a) {
  return nlohmann::json{{"names", a.names()}, {"lines", a.lines()}};
}

Arrangement arrangement_from_json(const nlohmann::json& j) {
  try {
    auto lines = j.at("lines").get<std::vector<std::vector<Label>>>();
    std::vector<std::string> names;
    if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
    return Arrangement(std::move(lines), std::move(names));
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed arrangement JSON: ") + e.what());
  }
}

IncidenceMasks incidence_masks(const Arrangement& a) {
  if (a.line_count() > 64) throw DomainError("at most 64 lines are supported");
  IncidenceMasks m;
  m.lines = static_cast<int>(a.line_count());
  m.point_labels = a.points();
  std::unordered_map<Label, std::size_t> index;
  for (std::size_t k = 0; k < m.point_labels.size(); ++k) index[m.point_labels[k]] = k;
  m.point_masks.assign(m.point_labels.size(), 0);
  for (std::size_t i = 0; i < a.line_count(); ++i) {
    for (const auto& p : a.line(i)) m.point_masks[index[p]] |= std::uint64_t{1} << i;
  }
  return m;
}

}  // namespace lineext
