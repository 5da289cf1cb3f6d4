#include "lineext/catalog.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

#include "lineext/error.hpp"

namespace lineext {

namespace {

struct RawEntry {
  const char* name;
  std::array<const char*, 10> columns;  // one string of point labels per line
  const char* doubles;                  // "A:1-4 B:1-9 ..." with 1-based lines
  int aut_order;
};

// The ten (10_3) configurations; each column lists the points of one line.
constexpr std::array<RawEntry, 10> kTen3 = {{
    {"(10_3)_1",
     {"123", "145", "167", "890", "248", "358", "269", "379", "460", "570"},
     "A:1-4 B:1-9 C:1-10 D:2-4 E:2-7 F:2-8 G:3-4 H:3-5 I:3-6 J:5-8 K:5-10 L:6-7 M:6-9 N:7-10 O:8-9",
     120},
    {"(10_3)_2",
     {"123", "145", "167", "890", "248", "378", "269", "359", "460", "570"},
     "A:1-4 B:1-9 C:1-10 D:2-4 E:2-6 F:2-7 G:3-4 H:3-5 I:3-8 J:5-8 K:5-10 L:6-7 M:6-9 N:7-10 O:8-9",
     12},
    {"(10_3)_3",
     {"123", "145", "167", "890", "248", "368", "279", "359", "460", "570"},
     "A:1-4 B:1-9 C:1-10 D:2-4 E:2-6 F:2-7 G:3-4 H:3-5 I:3-8 J:5-8 K:5-10 L:6-7 M:6-10 N:7-9 O:8-9",
     4},
    {"(10_3)_4",
     {"123", "145", "167", "890", "248", "368", "259", "379", "460", "570"},
     "A:1-4 B:1-9 C:1-10 D:2-4 E:2-6 F:2-8 G:3-4 H:3-5 I:3-7 J:5-8 K:5-10 L:6-7 M:6-10 N:7-9 O:8-9",
     24},
    {"(10_3)_5",
     {"123", "145", "167", "890", "248", "378", "259", "469", "360", "570"},
     "A:1-4 B:1-8 C:1-10 D:2-4 E:2-6 F:2-9 G:3-4 H:3-5 I:3-7 J:5-9 K:5-10 L:6-7 M:6-8 N:7-9 O:8-10",
     2},
    {"(10_3)_6",
     {"123", "145", "167", "890", "248", "378", "269", "579", "350", "460"},
     "A:1-4 B:1-8 C:1-10 D:2-4 E:2-6 F:2-7 G:3-4 H:3-5 I:3-9 J:5-8 K:5-9 L:6-7 M:6-10 N:7-9 O:8-10",
     6},
    {"(10_3)_7",
     {"123", "145", "167", "289", "480", "690", "578", "359", "730", "246"},
     "A:1-5 B:1-6 C:1-7 D:2-4 E:2-6 F:2-9 G:3-4 H:3-5 I:3-8 J:4-9 K:5-8 L:6-7 M:7-10 N:8-10 O:9-10",
     3},
    {"(10_3)_8",
     {"123", "145", "167", "389", "580", "790", "278", "659", "430", "246"},
     "A:1-5 B:1-6 C:1-8 D:2-4 E:2-6 F:2-7 G:3-4 H:3-5 I:3-9 J:4-10 K:5-10 L:6-10 M:7-8 N:7-9 O:8-9",
     3},
    {"(10_3)_9",
     {"123", "145", "167", "289", "480", "690", "578", "359", "270", "346"},
     "A:1-5 B:1-6 C:1-7 D:2-4 E:2-6 F:2-9 G:3-4 H:3-5 I:3-8 J:4-10 K:5-8 L:6-7 M:7-10 N:8-9 O:9-10",
     4},
    {"(10_3)_10",
     {"123", "145", "167", "389", "280", "790", "578", "659", "430", "246"},
     "A:1-6 B:1-7 C:1-8 D:2-4 E:2-5 F:2-6 G:3-4 H:3-5 I:3-9 J:4-10 K:5-8 L:6-10 M:7-9 N:7-10 O:8-9",
     10},
}};

struct RawNine {
  const char* name;
  std::array<const char*, 9> columns;
  const char* doubles;
  int aut_order;  // 0 where the source states no order
};

// Double labels of the (9_3) configurations as used in the reference
// extension names (e.g. (9_3)_1.CDI).
constexpr std::array<RawNine, 3> kNine3 = {{
    {"(9_3)_1",
     {"123", "145", "167", "248", "368", "578", "046", "027", "035"},
     "A:1-7 B:3-9 C:1-6 D:4-9 E:6-7 F:3-4 G:5-8 H:2-5 I:2-8",
     108},
    {"(9_3)_2",
     {"123", "145", "167", "846", "827", "839", "479", "356", "259"},
     "A:1-7 B:2-6 C:5-8 D:2-5 E:3-9 F:3-6 G:7-8 H:4-9 I:1-4",
     0},
    {"(9_3)_3",
     {"123", "145", "167", "824", "856", "837", "925", "947", "936"},
     "A:4-9 B:3-4 C:3-7 D:6-7 E:2-6 F:2-9 G:1-5 H:1-8 I:5-8",
     0},
}};

std::vector<std::vector<Label>> columns_to_lines(std::span<const char* const> cols) {
  std::vector<std::vector<Label>> lines;
  for (const char* c : cols) {
    std::vector<Label> line;
    for (const char* p = c; *p; ++p) line.emplace_back(1, *p);
    lines.push_back(std::move(line));
  }
  return lines;
}

void parse_labels(CatalogEntry& e, const char* spec) {
  std::istringstream in(spec);
  std::string tok;
  while (in >> tok) {
    const auto colon = tok.find(':');
    const auto dash = tok.find('-');
    const int a = std::stoi(tok.substr(colon + 1, dash - colon - 1)) - 1;
    const int b = std::stoi(tok.substr(dash + 1)) - 1;
    e.double_labels.push_back(tok.substr(0, colon));
    e.labeled_doubles.emplace_back(a, b);
  }
}

CatalogEntry make_entry(const char* name, std::span<const char* const> cols, const char* labels, int order) {
  CatalogEntry e;
  e.name = name;
  e.arrangement = Arrangement(columns_to_lines(cols));
  parse_labels(e, labels);
  e.expected_aut_order = order;
  return e;
}

std::string normalize_name(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '(' || c == ')' || c == '{' || c == '}' || c == '$') continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

const Label& CatalogEntry::label_of(const DoublePoint& d) const {
  for (std::size_t i = 0; i < labeled_doubles.size(); ++i) {
    if (labeled_doubles[i] == d) return double_labels[i];
  }
  throw DomainError("double point L" + std::to_string(d.first + 1) + "/L" + std::to_string(d.second + 1) +
                    " has no label in " + name);
}

const DoublePoint& CatalogEntry::double_of(std::string_view label) const {
  for (std::size_t i = 0; i < double_labels.size(); ++i) {
    if (double_labels[i] == label) return labeled_doubles[i];
  }
  throw DomainError("no double point labeled " + std::string(label) + " in " + name);
}

std::vector<Label> CatalogEntry::labels_in_doubles_order() const {
  std::vector<Label> out;
  for (const auto& d : doubles(arrangement)) out.push_back(label_of(d));
  return out;
}

const std::vector<CatalogEntry>& ten3_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    for (const auto& r : kTen3) v.push_back(make_entry(r.name, r.columns, r.doubles, r.aut_order));
    return v;
  }();
  return entries;
}

const std::vector<CatalogEntry>& nine3_catalog() {
  static const std::vector<CatalogEntry> entries = [] {
    std::vector<CatalogEntry> v;
    for (const auto& r : kNine3) v.push_back(make_entry(r.name, r.columns, r.doubles, r.aut_order));
    return v;
  }();
  return entries;
}

const CatalogEntry& fano_entry() {
  static const CatalogEntry entry = [] {
    CatalogEntry e;
    e.name = "fano";
    e.arrangement = Arrangement({{"P1", "P2", "P3"},
                                 {"P1", "P4", "P5"},
                                 {"P1", "P6", "P7"},
                                 {"P2", "P4", "P6"},
                                 {"P2", "P5", "P7"},
                                 {"P3", "P4", "P7"},
                                 {"P3", "P5", "P6"}});
    e.expected_aut_order = 168;
    return e;
  }();
  return entry;
}

const CatalogEntry& catalog_entry(std::string_view name) {
  const auto key = normalize_name(name);
  auto match = [&](const CatalogEntry& e) { return normalize_name(e.name) == key; };
  for (const auto& e : ten3_catalog()) {
    if (match(e)) return e;
  }
  for (const auto& e : nine3_catalog()) {
    if (match(e)) return e;
  }
  if (key == "fano" || key == "7_3" || key == "7_3_1") return fano_entry();
  throw DomainError("unknown catalog name: " + std::string(name));
}

std::vector<std::string> catalog_names() {
  std::vector<std::string> out;
  for (const auto& e : nine3_catalog()) out.push_back(e.name);
  for (const auto& e : ten3_catalog()) out.push_back(e.name);
  out.push_back(fano_entry().name);
  return out;
}

ExtensionLine extension_from_letters(const CatalogEntry& entry, std::string_view letters) {
  std::vector<DoublePoint> members;
  for (char c : letters) members.push_back(entry.double_of(std::string(1, c)));
  return make_extension_line(std::move(members));
}

Arrangement extend_entry(const CatalogEntry& entry, const ExtensionLine& line) {
  const auto labels = entry.labels_in_doubles_order();
  return add_line(entry.arrangement, line, labels);
}

Arrangement named_arrangement(std::string_view name) {
  const auto dot = name.rfind('.');
  if (dot == std::string_view::npos) return catalog_entry(name).arrangement;
  const auto& entry = catalog_entry(name.substr(0, dot));
  return extend_entry(entry, extension_from_letters(entry, name.substr(dot + 1)));
}

std::string name_arrangement(const CatalogEntry& entry, const ExtensionLine& line) {
  std::vector<Label> labels;
  for (const auto& d : line) labels.push_back(entry.label_of(d));
  std::sort(labels.begin(), labels.end());
  std::string out = entry.name + ".";
  for (const auto& l : labels) out += l;
  return out;
}

}  // namespace lineext
