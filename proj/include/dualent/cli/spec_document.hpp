// JSON experiment documents: one group, an optional automorphism, optional
// element sets and computation parameters.  See docs/format.md.

#ifndef DUALENT_CLI_SPEC_DOCUMENT_HPP_
#define DUALENT_CLI_SPEC_DOCUMENT_HPP_

#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "../abelian.hpp"
#include "../crystal.hpp"

namespace dualent::cli {

using Json = nlohmann::json;

// Schema violation or unreadable document; the message names the field.
struct SpecError : Error {
  using Error::Error;
};

enum class GroupKind { free_abelian, fg_abelian, crystal };

inline const char* kind_name(GroupKind k) {
  switch (k) {
  case GroupKind::free_abelian:
    return "free_abelian";
  case GroupKind::fg_abelian:
    return "fg_abelian";
  case GroupKind::crystal:
    return "crystal";
  }
  return "?";
}

// Abelian: coordinates are lattice then torsion (torsion may be omitted).
// Crystal: point is the point-group element name, coordinates the lattice part.
struct ElementSpec {
  std::string point;
  std::vector<std::int64_t> coords;
  friend bool operator==(const ElementSpec&, const ElementSpec&) = default;
};

using Matrix = std::vector<std::vector<std::int64_t>>;

struct GroupSpec {
  GroupKind kind = GroupKind::free_abelian;
  std::size_t rank = 0;
  std::vector<std::int64_t> torsion;
  std::vector<std::string> elements;
  std::vector<std::vector<std::size_t>> table;
  std::map<std::string, Matrix> action;
  std::map<std::string, std::vector<std::int64_t>> cocycle; // key "h,k"
  friend bool operator==(const GroupSpec&, const GroupSpec&) = default;
};

struct AutoSpec {
  Matrix lattice;
  std::map<std::string, std::vector<std::int64_t>> torsion_map; // generator index -> image
  Matrix mixing;
  std::map<std::string, std::string> quotient_map;
  std::map<std::string, std::vector<std::int64_t>> translation;
  friend bool operator==(const AutoSpec&, const AutoSpec&) = default;
};

struct Params {
  std::optional<double> delta;
  std::optional<std::int64_t> n;
  std::optional<std::int64_t> radius;
  std::optional<double> tol;
  std::optional<std::int64_t> cap;
  std::optional<std::uint64_t> seed;
  friend bool operator==(const Params&, const Params&) = default;
};

struct SpecDocument {
  std::string description;
  GroupSpec group;
  std::optional<AutoSpec> automorphism;
  std::optional<std::vector<ElementSpec>> omega;
  std::optional<std::vector<ElementSpec>> e;
  Params params;
  friend bool operator==(const SpecDocument&, const SpecDocument&) = default;

  bool is_crystal() const { return group.kind == GroupKind::crystal; }
};

namespace impl {

inline void need_object(const Json& obj, const std::string& where) {
  if (!obj.is_object())
    throw SpecError(where + ": expected an object");
}

inline void allow_keys(const Json& obj, const std::string& where, std::initializer_list<const char*> keys) {
  if (!obj.is_object())
    throw SpecError(where + ": expected an object");
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* k : keys)
      known = known || it.key() == k;
    if (!known)
      throw SpecError(where + ": unknown key '" + it.key() + "'");
  }
}

inline std::int64_t get_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer())
    throw SpecError(where + ": expected an exact integer");
  if (v.is_number_unsigned() && v.get<std::uint64_t>() > static_cast<std::uint64_t>(INT64_MAX))
    throw SpecError(where + ": integer out of range");
  return v.get<std::int64_t>();
}

inline std::size_t get_size(const Json& v, const std::string& where) {
  std::int64_t x = get_int(v, where);
  if (x < 0)
    throw SpecError(where + ": expected a non-negative integer");
  return static_cast<std::size_t>(x);
}

inline double get_number(const Json& v, const std::string& where) {
  if (!v.is_number())
    throw SpecError(where + ": expected a number");
  return v.get<double>();
}

inline std::string get_string(const Json& v, const std::string& where) {
  if (!v.is_string())
    throw SpecError(where + ": expected a string");
  return v.get<std::string>();
}

inline std::vector<std::int64_t> get_int_list(const Json& v, const std::string& where) {
  if (!v.is_array())
    throw SpecError(where + ": expected a list of integers");
  std::vector<std::int64_t> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(get_int(v[i], where + "[" + std::to_string(i) + "]"));
  return out;
}

inline Matrix get_matrix(const Json& v, const std::string& where, std::size_t rows, std::size_t cols) {
  if (!v.is_array() || v.size() != rows)
    throw SpecError(where + ": expected " + std::to_string(rows) + " rows");
  Matrix m;
  for (std::size_t i = 0; i < rows; ++i) {
    std::string w = where + "[" + std::to_string(i) + "]";
    m.push_back(get_int_list(v[i], w));
    if (m.back().size() != cols)
      throw SpecError(w + ": expected " + std::to_string(cols) + " entries");
  }
  return m;
}

inline IntMatrix to_int_matrix(const Matrix& m, std::size_t n) {
  IntMatrix out(m.size(), n);
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < n; ++j)
      out(i, j) = m[i][j];
  return out;
}

inline IntVector to_int_vector(const std::vector<std::int64_t>& v) {
  IntVector out;
  for (std::int64_t x : v)
    out.emplace_back(x);
  return out;
}

inline std::size_t index_of(const std::vector<std::string>& names, const std::string& n, const std::string& where) {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == n)
      return i;
  throw SpecError(where + ": unknown point-group element '" + n + "'");
}

inline GroupSpec parse_group(const Json& j) {
  const std::string w = "group";
  if (!j.is_object() || !j.contains("kind"))
    throw SpecError("group.kind: missing");
  std::string kind = get_string(j["kind"], "group.kind");
  GroupSpec g;
  if (kind == "free_abelian") {
    allow_keys(j, w, {"kind", "rank"});
    g.kind = GroupKind::free_abelian;
  } else if (kind == "fg_abelian") {
    allow_keys(j, w, {"kind", "rank", "torsion"});
    g.kind = GroupKind::fg_abelian;
    if (j.contains("torsion"))
      g.torsion = get_int_list(j["torsion"], "group.torsion");
    for (std::int64_t d : g.torsion)
      if (d < 2)
        throw SpecError("group.torsion: orders must be >= 2");
  } else if (kind == "crystal") {
    allow_keys(j, w, {"kind", "rank", "point_group", "action", "cocycle"});
    g.kind = GroupKind::crystal;
  } else {
    throw SpecError("group.kind: expected free_abelian, fg_abelian or crystal, got '" + kind + "'");
  }
  if (!j.contains("rank"))
    throw SpecError("group.rank: missing");
  g.rank = get_size(j["rank"], "group.rank");
  if (g.kind != GroupKind::crystal)
    return g;

  if (!j.contains("point_group"))
    throw SpecError("group.point_group: missing");
  const Json& pg = j["point_group"];
  allow_keys(pg, "group.point_group", {"elements", "table"});
  if (!pg.contains("elements") || !pg["elements"].is_array() || pg["elements"].empty())
    throw SpecError("group.point_group.elements: expected a non-empty list of names");
  for (std::size_t i = 0; i < pg["elements"].size(); ++i) {
    std::string n = get_string(pg["elements"][i], "group.point_group.elements[" + std::to_string(i) + "]");
    if (std::find(g.elements.begin(), g.elements.end(), n) != g.elements.end())
      throw SpecError("group.point_group.elements: duplicate name '" + n + "'");
    if (n.find(',') != std::string::npos)
      throw SpecError("group.point_group.elements: names may not contain ','");
    g.elements.push_back(n);
  }
  const std::size_t order = g.elements.size();
  if (!pg.contains("table"))
    throw SpecError("group.point_group.table: missing");
  Matrix t = get_matrix(pg["table"], "group.point_group.table", order, order);
  for (std::size_t a = 0; a < order; ++a) {
    g.table.emplace_back();
    for (std::size_t b = 0; b < order; ++b) {
      if (t[a][b] < 0 || static_cast<std::size_t>(t[a][b]) >= order)
        throw SpecError("group.point_group.table[" + std::to_string(a) + "][" + std::to_string(b) +
                        "]: index out of range");
      g.table.back().push_back(static_cast<std::size_t>(t[a][b]));
    }
  }
  if (j.contains("action")) {
    need_object(j["action"], "group.action");
    for (auto it = j["action"].begin(); it != j["action"].end(); ++it) {
      index_of(g.elements, it.key(), "group.action");
      g.action[it.key()] = get_matrix(it.value(), "group.action." + it.key(), g.rank, g.rank);
    }
  }
  if (j.contains("cocycle")) {
    const Json& c = j["cocycle"];
    if (!c.is_object())
      throw SpecError("group.cocycle: expected an object");
    for (auto it = c.begin(); it != c.end(); ++it) {
      std::string key = it.key(), where = "group.cocycle." + key;
      auto comma = key.find(',');
      if (comma == std::string::npos)
        throw SpecError(where + ": keys have the form \"h,k\"");
      index_of(g.elements, key.substr(0, comma), where);
      index_of(g.elements, key.substr(comma + 1), where);
      g.cocycle[key] = get_int_list(it.value(), where);
      if (g.cocycle[key].size() != g.rank)
        throw SpecError(where + ": expected " + std::to_string(g.rank) + " entries");
    }
  }
  return g;
}

inline ElementSpec parse_element(const Json& v, const GroupSpec& g, const std::string& where) {
  if (!v.is_array())
    throw SpecError(where + ": expected a list");
  ElementSpec e;
  std::size_t start = 0;
  if (g.kind == GroupKind::crystal) {
    if (v.empty() || !v[0].is_string())
      throw SpecError(where + ": crystal elements start with a point-group element name");
    e.point = v[0].get<std::string>();
    index_of(g.elements, e.point, where);
    start = 1;
  }
  for (std::size_t i = start; i < v.size(); ++i)
    e.coords.push_back(get_int(v[i], where + "[" + std::to_string(i) + "]"));
  const std::size_t p = g.rank, k = g.torsion.size();
  if (e.coords.size() != p && e.coords.size() != p + k)
    throw SpecError(where + ": expected " + std::to_string(p) + (k ? " or " + std::to_string(p + k) : "") +
                    " coordinates");
  if (e.coords.size() == p)
    e.coords.resize(p + k, 0);
  for (std::size_t i = 0; i < k; ++i)
    e.coords[p + i] = ((e.coords[p + i] % g.torsion[i]) + g.torsion[i]) % g.torsion[i];
  return e;
}

inline std::vector<ElementSpec> parse_set(const Json& v, const GroupSpec& g, const std::string& where) {
  if (!v.is_array())
    throw SpecError(where + ": expected a list of elements");
  std::vector<ElementSpec> out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out.push_back(parse_element(v[i], g, where + "[" + std::to_string(i) + "]"));
  return out;
}

inline AutoSpec parse_auto(const Json& j, const GroupSpec& g) {
  if (g.kind == GroupKind::crystal)
    allow_keys(j, "auto", {"lattice", "quotient_map", "translation"});
  else if (g.kind == GroupKind::fg_abelian)
    allow_keys(j, "auto", {"lattice", "torsion_map", "mixing"});
  else
    allow_keys(j, "auto", {"lattice"});
  AutoSpec a;
  if (!j.contains("lattice"))
    throw SpecError("auto.lattice: missing");
  a.lattice = get_matrix(j["lattice"], "auto.lattice", g.rank, g.rank);
  const std::size_t k = g.torsion.size();
  if (j.contains("torsion_map")) {
    need_object(j["torsion_map"], "auto.torsion_map");
    for (auto it = j["torsion_map"].begin(); it != j["torsion_map"].end(); ++it) {
      std::string where = "auto.torsion_map." + it.key();
      std::size_t idx = 0;
      try {
        std::size_t used = 0;
        idx = std::stoul(it.key(), &used);
        if (used != it.key().size())
          throw std::invalid_argument("");
      } catch (const std::exception&) {
        throw SpecError(where + ": keys are torsion generator indices");
      }
      if (idx >= k)
        throw SpecError(where + ": no torsion generator " + it.key());
      a.torsion_map[std::to_string(idx)] = get_int_list(it.value(), where);
      if (a.torsion_map[std::to_string(idx)].size() != k)
        throw SpecError(where + ": expected " + std::to_string(k) + " entries");
    }
  }
  if (j.contains("mixing"))
    a.mixing = get_matrix(j["mixing"], "auto.mixing", g.rank, k);
  if (j.contains("quotient_map")) {
    need_object(j["quotient_map"], "auto.quotient_map");
    for (auto it = j["quotient_map"].begin(); it != j["quotient_map"].end(); ++it) {
      std::string where = "auto.quotient_map." + it.key();
      index_of(g.elements, it.key(), where);
      a.quotient_map[it.key()] = get_string(it.value(), where);
      index_of(g.elements, a.quotient_map[it.key()], where);
    }
  }
  if (j.contains("translation")) {
    need_object(j["translation"], "auto.translation");
    for (auto it = j["translation"].begin(); it != j["translation"].end(); ++it) {
      std::string where = "auto.translation." + it.key();
      index_of(g.elements, it.key(), where);
      a.translation[it.key()] = get_int_list(it.value(), where);
      if (a.translation[it.key()].size() != g.rank)
        throw SpecError(where + ": expected " + std::to_string(g.rank) + " entries");
    }
  }
  return a;
}

inline Params parse_params(const Json& j) {
  allow_keys(j, "params", {"delta", "n", "radius", "tol", "cap", "seed"});
  Params p;
  if (j.contains("delta"))
    p.delta = get_number(j["delta"], "params.delta");
  if (j.contains("tol"))
    p.tol = get_number(j["tol"], "params.tol");
  if (j.contains("n"))
    p.n = get_int(j["n"], "params.n");
  if (j.contains("radius"))
    p.radius = get_int(j["radius"], "params.radius");
  if (j.contains("cap"))
    p.cap = get_int(j["cap"], "params.cap");
  if (j.contains("seed"))
    p.seed = static_cast<std::uint64_t>(get_int(j["seed"], "params.seed"));
  if (p.delta && !(*p.delta > 0))
    throw SpecError("params.delta: must be positive");
  if (p.tol && !(*p.tol > 0))
    throw SpecError("params.tol: must be positive");
  if (p.n && *p.n < 1)
    throw SpecError("params.n: must be >= 1");
  if (p.radius && *p.radius < 0)
    throw SpecError("params.radius: must be >= 0");
  if (p.cap && *p.cap < 1)
    throw SpecError("params.cap: must be >= 1");
  return p;
}

} // namespace impl

// Built objects for a validated document.
struct BuiltGroup {
  FgAbelianGroup abelian;
  CrystalGroup crystal;
};

inline FiniteGroupOps point_group(const GroupSpec& g) {
  FiniteGroupOps f;
  f.table = g.table;
  f.names = g.elements;
  const std::size_t n = g.table.size();
  bool found = false;
  for (std::size_t e = 0; e < n && !found; ++e) {
    bool left = true;
    for (std::size_t x = 0; x < n; ++x)
      left = left && g.table[e][x] == x && g.table[x][e] == x;
    if (left) {
      f.identity_index = e;
      found = true;
    }
  }
  if (!found)
    throw SpecError("group.point_group.table: no identity element");
  return f;
}

inline CrystalGroup build_crystal(const GroupSpec& g) {
  FiniteGroupOps f = point_group(g);
  const std::size_t n = g.elements.size();
  std::vector<IntMatrix> action(n, IntMatrix::identity(g.rank));
  for (const auto& [name, m] : g.action)
    action[impl::index_of(g.elements, name, "group.action")] = impl::to_int_matrix(m, g.rank);
  std::vector<std::vector<IntVector>> theta(n, std::vector<IntVector>(n, zero_vector(g.rank)));
  for (const auto& [key, v] : g.cocycle) {
    auto comma = key.find(',');
    theta[impl::index_of(g.elements, key.substr(0, comma), "group.cocycle")]
         [impl::index_of(g.elements, key.substr(comma + 1), "group.cocycle")] = impl::to_int_vector(v);
  }
  try {
    return CrystalGroup(g.rank, f, action, theta);
  } catch (const InvalidStructure& e) {
    throw SpecError(std::string("group: ") + e.what());
  }
}

inline FgAbelianGroup build_abelian(const GroupSpec& g) { return FgAbelianGroup(g.rank, g.torsion); }

inline AbelianElement build_abelian_element(const FgAbelianGroup& g, const ElementSpec& e) {
  IntVector lattice;
  for (std::size_t i = 0; i < g.rank(); ++i)
    lattice.emplace_back(e.coords[i]);
  return make_element(g, lattice, std::vector<std::int64_t>(e.coords.begin() + static_cast<std::ptrdiff_t>(g.rank()),
                                                            e.coords.end()));
}

inline CrystalElement build_crystal_element(const GroupSpec& spec, const CrystalGroup& g, const ElementSpec& e) {
  return g.element(impl::index_of(spec.elements, e.point, "element"), impl::to_int_vector(e.coords));
}

inline AbelianAutomorphism build_abelian_auto(const GroupSpec& spec, const AutoSpec& a) {
  FgAbelianGroup g = build_abelian(spec);
  const std::size_t k = g.torsion_count();
  std::vector<std::vector<std::int64_t>> torsion_images;
  for (std::size_t j = 0; j < k; ++j) {
    auto it = a.torsion_map.find(std::to_string(j));
    if (it != a.torsion_map.end()) {
      torsion_images.push_back(it->second);
    } else {
      std::vector<std::int64_t> unit(k, 0);
      unit[j] = 1;
      torsion_images.push_back(unit);
    }
  }
  std::vector<std::vector<std::int64_t>> mixing(a.mixing.begin(), a.mixing.end());
  try {
    return AbelianAutomorphism(g, impl::to_int_matrix(a.lattice, g.rank()), torsion_images, mixing);
  } catch (const InvalidStructure& e) {
    throw SpecError(std::string("auto: ") + e.what());
  }
}

inline CrystalAutomorphism build_crystal_auto(const GroupSpec& spec, const CrystalGroup& g, const AutoSpec& a) {
  const std::size_t n = g.order();
  std::vector<std::size_t> q(n);
  for (std::size_t h = 0; h < n; ++h)
    q[h] = h;
  for (const auto& [from, to] : a.quotient_map)
    q[impl::index_of(spec.elements, from, "auto.quotient_map")] = impl::index_of(spec.elements, to, "auto.quotient_map");
  std::vector<IntVector> t(n, zero_vector(g.rank()));
  for (const auto& [h, v] : a.translation)
    t[impl::index_of(spec.elements, h, "auto.translation")] = impl::to_int_vector(v);
  try {
    return CrystalAutomorphism(g, q, impl::to_int_matrix(a.lattice, g.rank()), t);
  } catch (const InvalidStructure& e) {
    throw SpecError(std::string("auto: ") + e.what());
  }
}

// Builds every object the document describes; throws SpecError on the first
// inconsistency.
inline void validate(const SpecDocument& doc) {
  if (doc.automorphism) {
    IntMatrix m = impl::to_int_matrix(doc.automorphism->lattice, doc.group.rank);
    Int det = determinant(m);
    if (doc.group.rank > 0 && det != 1 && det != -1)
      throw SpecError("auto.lattice: determinant " + det.str() + ", not unimodular");
  }
  if (doc.is_crystal()) {
    CrystalGroup g = build_crystal(doc.group);
    if (doc.automorphism)
      build_crystal_auto(doc.group, g, *doc.automorphism);
  } else if (doc.automorphism) {
    build_abelian_auto(doc.group, *doc.automorphism);
  }
}

inline SpecDocument parse_spec_json(const Json& j) {
  impl::allow_keys(j, "document", {"description", "group", "auto", "omega", "E", "params"});
  if (!j.contains("group"))
    throw SpecError("group: missing");
  SpecDocument doc;
  if (j.contains("description"))
    doc.description = impl::get_string(j["description"], "description");
  doc.group = impl::parse_group(j["group"]);
  if (j.contains("auto"))
    doc.automorphism = impl::parse_auto(j["auto"], doc.group);
  if (j.contains("omega"))
    doc.omega = impl::parse_set(j["omega"], doc.group, "omega");
  if (j.contains("E"))
    doc.e = impl::parse_set(j["E"], doc.group, "E");
  if (j.contains("params"))
    doc.params = impl::parse_params(j["params"]);
  validate(doc);
  return doc;
}

inline SpecDocument parse_spec_text(const std::string& text, const std::string& origin = "<input>") {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SpecError(origin + ": malformed JSON: " + e.what());
  }
  try {
    return parse_spec_json(j);
  } catch (const SpecError& e) {
    throw SpecError(origin + ": " + e.what());
  }
}

struct IoError : Error {
  using Error::Error;
};

inline SpecDocument parse_spec(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in)
    throw IoError("cannot open '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_spec_text(buf.str(), path);
}

// Canonical form: every optional block written only when present, torsion
// coordinates reduced and always spelled out.
inline Json to_json(const SpecDocument& doc) {
  Json j;
  if (!doc.description.empty())
    j["description"] = doc.description;
  Json g;
  g["kind"] = kind_name(doc.group.kind);
  g["rank"] = doc.group.rank;
  if (doc.group.kind == GroupKind::fg_abelian)
    g["torsion"] = doc.group.torsion;
  if (doc.is_crystal()) {
    g["point_group"] = {{"elements", doc.group.elements}, {"table", doc.group.table}};
    g["action"] = Json::object();
    for (const auto& [h, m] : doc.group.action)
      g["action"][h] = m;
    g["cocycle"] = Json::object();
    for (const auto& [key, v] : doc.group.cocycle)
      g["cocycle"][key] = v;
  }
  j["group"] = g;
  if (doc.automorphism) {
    const AutoSpec& a = *doc.automorphism;
    Json aj;
    aj["lattice"] = a.lattice;
    if (doc.group.kind == GroupKind::fg_abelian) {
      aj["torsion_map"] = Json::object();
      for (const auto& [k, v] : a.torsion_map)
        aj["torsion_map"][k] = v;
      if (!a.mixing.empty())
        aj["mixing"] = a.mixing;
    }
    if (doc.is_crystal()) {
      aj["quotient_map"] = Json::object();
      for (const auto& [k, v] : a.quotient_map)
        aj["quotient_map"][k] = v;
      aj["translation"] = Json::object();
      for (const auto& [k, v] : a.translation)
        aj["translation"][k] = v;
    }
    j["auto"] = aj;
  }
  auto set_json = [&](const std::vector<ElementSpec>& s) {
    Json out = Json::array();
    for (const ElementSpec& e : s) {
      Json el = Json::array();
      if (doc.is_crystal())
        el.push_back(e.point);
      for (std::int64_t c : e.coords)
        el.push_back(c);
      out.push_back(el);
    }
    return out;
  };
  if (doc.omega)
    j["omega"] = set_json(*doc.omega);
  if (doc.e)
    j["E"] = set_json(*doc.e);
  Json p = Json::object();
  if (doc.params.delta)
    p["delta"] = *doc.params.delta;
  if (doc.params.n)
    p["n"] = *doc.params.n;
  if (doc.params.radius)
    p["radius"] = *doc.params.radius;
  if (doc.params.tol)
    p["tol"] = *doc.params.tol;
  if (doc.params.cap)
    p["cap"] = *doc.params.cap;
  if (doc.params.seed)
    p["seed"] = *doc.params.seed;
  if (!p.empty())
    j["params"] = p;
  return j;
}

inline std::string emit_spec(const SpecDocument& doc) { return to_json(doc).dump(2) + "\n"; }

} // namespace dualent::cli

#endif // DUALENT_CLI_SPEC_DOCUMENT_HPP_
