#pragma once

// JSON documents and DOT rendering.

#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "json.hpp"

#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/free.hpp"
#include "intercat/graphcat.hpp"

namespace intercat::io {

using json = nlohmann::json;

struct PairDoc {
  Functor first;
  Functor second;
};

struct SpanDoc {
  Functor left;
  Functor right;
};

using Payload = std::variant<InternalCat, Functor, NatTrans, Graph, PairDoc, SpanDoc, FinObj, FinFn>;

struct Document {
  std::string kind;
  Payload payload;
};

// ---------------------------------------------------------------------------
// Serialisation

inline json to_json(const FinObj& x) { return x.labels(); }

inline json to_json(const FinFn& f) {
  json m = json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) m[f.dom().label(i)] = f.cod().label(f(i));
  return json{{"kind", "function"}, {"dom", to_json(f.dom())}, {"cod", to_json(f.cod())}, {"map", m}};
}

inline json to_json(const Graph& g) {
  json edges = json::array();
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    edges.push_back({{"name", g.edges.label(e)}, {"src", g.vertices.label(g.src(e))}, {"tgt", g.vertices.label(g.tgt(e))}});
  return json{{"kind", "graph"}, {"vertices", to_json(g.vertices)}, {"edges", edges}};
}

inline json to_json(const InternalCat& c) {
  json morphisms = json::array(), identities = json::object(), composition = json::array();
  for (std::size_t f = 0; f < c.n_morphisms(); ++f)
    morphisms.push_back({{"name", c.mor_label(f)}, {"src", c.obj_label(c.src(f))}, {"tgt", c.obj_label(c.tgt(f))}});
  for (std::size_t x = 0; x < c.n_objects(); ++x) identities[c.obj_label(x)] = c.mor_label(c.id(x));
  for (std::size_t g = 0; g < c.n_morphisms(); ++g)
    for (std::size_t f = 0; f < c.n_morphisms(); ++f)
      if (auto gf = c.compose(g, f); gf != npos) composition.push_back({c.mor_label(g), c.mor_label(f), c.mor_label(gf)});
  return json{{"kind", "category"},     {"objects", to_json(c.objects())}, {"morphisms", morphisms},
              {"identities", identities}, {"composition", composition}};
}

inline json label_map(const FinFn& f) {
  json m = json::object();
  for (std::size_t i = 0; i < f.dom().size(); ++i) m[f.dom().label(i)] = f.cod().label(f(i));
  return m;
}

inline json to_json(const Functor& F) {
  auto d = to_json(F.dom()), c = to_json(F.cod());
  d.erase("kind");
  c.erase("kind");
  return json{{"kind", "functor"}, {"dom", d}, {"cod", c}, {"on_objects", label_map(F.on_objects())},
              {"on_morphisms", label_map(F.on_morphisms())}};
}

inline json to_json(const NatTrans& a) {
  auto s = to_json(a.src()), t = to_json(a.tgt());
  s.erase("kind");
  t.erase("kind");
  return json{{"kind", "nattrans"}, {"src", s}, {"tgt", t}, {"components", label_map(a.components())}};
}

inline json to_json(const PairDoc& p) {
  auto a = to_json(p.first), b = to_json(p.second);
  a.erase("kind");
  b.erase("kind");
  return json{{"kind", "pair"}, {"first", a}, {"second", b}};
}

inline json to_json(const SpanDoc& p) {
  auto a = to_json(p.left), b = to_json(p.right);
  a.erase("kind");
  b.erase("kind");
  return json{{"kind", "span"}, {"left", a}, {"right", b}};
}

inline json set_json(const FinObj& x) { return json{{"kind", "set"}, {"elements", to_json(x)}}; }

inline json to_json(const Document& d) {
  return std::visit(
      [](const auto& p) -> json {
        if constexpr (std::is_same_v<std::decay_t<decltype(p)>, FinObj>)
          return set_json(p);
        else
          return to_json(p);
      },
      d.payload);
}

inline json path_json(const Graph& g, const Path& p) { return path_label(g, p); }

inline json to_json(const Presentation& p, const MaterializedCat* m = nullptr) {
  auto gens = to_json(p.gens);
  gens.erase("kind");
  std::vector<std::pair<std::string, std::string>> rels;
  for (const auto& [l, r] : p.rels) rels.emplace_back(path_label(p.gens, l), path_label(p.gens, r));
  std::sort(rels.begin(), rels.end());
  json out{{"kind", "presentation"}, {"generators", gens}, {"relations", rels}};
  if (m) {
    auto cat = to_json(m->cat);
    cat.erase("kind");
    out["materialization"] = json{{"category", cat}, {"exact", m->exact}, {"bound", m->bound}};
  }
  return out;
}

/// Canonical text: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

// ---------------------------------------------------------------------------
// Parsing

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw Error(ErrorKind::ParseError, where + ": missing field '" + key + "'");
  return j.at(key);
}

inline std::vector<std::string> strings(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array of labels");
  std::vector<std::string> out;
  for (const auto& e : j) {
    if (!e.is_string()) throw Error(ErrorKind::ParseError, where + ": labels must be strings");
    out.push_back(e.get<std::string>());
  }
  return out;
}

inline std::map<std::string, std::string> string_map(const json& j, const std::string& where) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, where + ": expected an object of labels");
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : j.items()) {
    if (!v.is_string()) throw Error(ErrorKind::ParseError, where + ": values must be strings");
    out[k] = v.get<std::string>();
  }
  return out;
}

inline std::vector<MorphismSpec> arrows(const json& j, const std::string& where) {
  if (!j.is_array()) throw Error(ErrorKind::ParseError, where + ": expected an array of arrows");
  std::vector<MorphismSpec> out;
  for (const auto& e : j) {
    try {
      out.push_back({e.at("name").get<std::string>(), e.at("src").get<std::string>(), e.at("tgt").get<std::string>()});
    } catch (const json::exception&) {
      throw Error(ErrorKind::ParseError, where + ": arrows need string fields name, src, tgt");
    }
  }
  return out;
}

/// Rethrows construction failures as validation errors.
template <class Fn>
auto validated(const std::string& where, Fn&& fn) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::ParseError || e.kind() == ErrorKind::ValidationError) throw;
    throw Error(ErrorKind::ValidationError, where + ": " + e.what());
  }
}

}  // namespace detail

inline json load_json(const std::filesystem::path& path);

inline InternalCat category_from_json(const json& j, const std::string& where = "category") {
  auto objects = detail::strings(detail::field(j, "objects", where), where + ".objects");
  auto morphisms = detail::arrows(detail::field(j, "morphisms", where), where + ".morphisms");
  auto identities = detail::string_map(detail::field(j, "identities", where), where + ".identities");
  std::vector<std::array<std::string, 3>> comp;
  if (j.contains("composition")) {
    const auto& c = j.at("composition");
    if (!c.is_array()) throw Error(ErrorKind::ParseError, where + ".composition: expected an array");
    for (const auto& t : c) {
      auto v = detail::strings(t, where + ".composition");
      if (v.size() != 3) throw Error(ErrorKind::ParseError, where + ".composition: entries are [g, f, g.f]");
      comp.push_back({v[0], v[1], v[2]});
    }
  }
  return detail::validated(where, [&] { return make_category(objects, morphisms, identities, comp, true); });
}

inline Graph graph_from_json(const json& j, const std::string& where = "graph") {
  FinObj V(detail::strings(detail::field(j, "vertices", where), where + ".vertices"));
  auto edges = detail::arrows(detail::field(j, "edges", where), where + ".edges");
  return detail::validated(where, [&] {
    std::vector<std::string> names;
    for (const auto& e : edges) names.push_back(e.name);
    FinObj E(names);
    std::map<std::string, std::string> s, t;
    for (const auto& e : edges) {
      s[e.name] = e.src;
      t[e.name] = e.tgt;
    }
    return Graph(V, E, FinFn::from_labels(E, V, s), FinFn::from_labels(E, V, t));
  });
}

/// A nested document given inline or as a path relative to `base`.
inline json resolve(const json& j, const std::filesystem::path& base) {
  if (j.is_string()) return load_json(base / j.get<std::string>());
  return j;
}

inline FinObj set_from_json(const json& j, const std::filesystem::path& base, const std::string& where) {
  auto r = resolve(j, base);
  if (r.is_object()) return detail::validated(where, [&] { return FinObj(detail::strings(detail::field(r, "elements", where), where)); });
  return detail::validated(where, [&] { return FinObj(detail::strings(r, where)); });
}

inline FinFn function_from_json(const json& j, const std::filesystem::path& base, const std::string& where = "function") {
  auto dom = set_from_json(detail::field(j, "dom", where), base, where + ".dom");
  auto cod = set_from_json(detail::field(j, "cod", where), base, where + ".cod");
  auto m = detail::string_map(detail::field(j, "map", where), where + ".map");
  return detail::validated(where, [&] {
    for (const auto& [k, v] : m) {
      if (!dom.contains(k)) throw Error(ErrorKind::InvalidLabel, "'" + k + "' is not in the domain");
      if (!cod.contains(v)) throw Error(ErrorKind::InvalidLabel, "'" + v + "' is not in the codomain");
    }
    return FinFn::from_labels(dom, cod, m);
  });
}

inline InternalCat category_ref(const json& j, const std::filesystem::path& base, const std::string& where) {
  return category_from_json(resolve(j, base), where);
}

inline Functor functor_from_json(const json& jin, const std::filesystem::path& base, const std::string& where = "functor") {
  auto j = resolve(jin, base);
  auto dom = category_ref(detail::field(j, "dom", where), base, where + ".dom");
  auto cod = category_ref(detail::field(j, "cod", where), base, where + ".cod");
  auto f0 = detail::string_map(detail::field(j, "on_objects", where), where + ".on_objects");
  auto f1 = detail::string_map(detail::field(j, "on_morphisms", where), where + ".on_morphisms");
  return detail::validated(where, [&] {
    return Functor(dom, cod, FinFn::from_labels(dom.objects(), cod.objects(), f0),
                   FinFn::from_labels(dom.morphisms(), cod.morphisms(), f1));
  });
}

inline NatTrans nattrans_from_json(const json& j, const std::filesystem::path& base, const std::string& where = "nattrans") {
  auto s = functor_from_json(detail::field(j, "src", where), base, where + ".src");
  auto t = functor_from_json(detail::field(j, "tgt", where), base, where + ".tgt");
  auto c = detail::string_map(detail::field(j, "components", where), where + ".components");
  return detail::validated(where, [&] {
    return NatTrans(s, t, FinFn::from_labels(s.dom().objects(), s.cod().morphisms(), c));
  });
}

inline std::string infer_kind(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "document must be a JSON object");
  if (j.contains("kind")) {
    if (!j.at("kind").is_string()) throw Error(ErrorKind::ParseError, "'kind' must be a string");
    return j.at("kind").get<std::string>();
  }
  static const std::pair<const char*, const char*> keys[] = {
      {"objects", "category"}, {"on_objects", "functor"}, {"components", "nattrans"}, {"vertices", "graph"},
      {"first", "pair"},       {"left", "span"},          {"elements", "set"},      {"map", "function"}};
  for (const auto& [k, kind] : keys)
    if (j.contains(k)) return kind;
  throw Error(ErrorKind::ParseError, "cannot tell what kind of document this is");
}

inline Document document_from_json(const json& j, const std::filesystem::path& base = ".") {
  auto kind = infer_kind(j);
  if (kind == "category") return {kind, category_from_json(j)};
  if (kind == "functor") return {kind, functor_from_json(j, base)};
  if (kind == "nattrans") return {kind, nattrans_from_json(j, base)};
  if (kind == "graph") return {kind, graph_from_json(j)};
  if (kind == "pair")
    return {kind, PairDoc{functor_from_json(detail::field(j, "first", kind), base, "pair.first"),
                          functor_from_json(detail::field(j, "second", kind), base, "pair.second")}};
  if (kind == "span")
    return {kind, SpanDoc{functor_from_json(detail::field(j, "left", kind), base, "span.left"),
                          functor_from_json(detail::field(j, "right", kind), base, "span.right")}};
  if (kind == "set") return {kind, set_from_json(j, base, "set")};
  if (kind == "function") return {kind, function_from_json(j, base)};
  throw Error(ErrorKind::ParseError, "unknown document kind '" + kind + "'");
}

inline json parse_text(const std::string& text, const std::string& name) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, name + " at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline json load_json(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, path.string() + ": cannot open file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_text(ss.str(), path.string());
}

inline Document parse(const std::filesystem::path& path) { return document_from_json(load_json(path), path.parent_path()); }

template <class T>
const T& expect(const Document& d, const std::string& what) {
  if (auto p = std::get_if<T>(&d.payload)) return *p;
  throw Error(ErrorKind::ParseError, "expected a " + what + " document, got " + d.kind);
}

// ---------------------------------------------------------------------------
// DOT

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

/// Objects as nodes, non-identity morphisms as edges. `members`, when given,
/// lists for each morphism the labels it identifies.
inline std::string to_dot(const InternalCat& c, const std::vector<std::vector<std::string>>* members = nullptr) {
  std::ostringstream os;
  os << "digraph C {\n";
  for (std::size_t x = 0; x < c.n_objects(); ++x) os << "  " << dot_quote(c.obj_label(x)) << ";\n";
  for (std::size_t f = 0; f < c.n_morphisms(); ++f) {
    if (c.is_identity(f)) continue;
    std::string label = c.mor_label(f);
    if (members && (*members)[f].size() > 1) {
      label += " {";
      for (std::size_t k = 0; k < (*members)[f].size(); ++k) label += (k ? ", " : "") + (*members)[f][k];
      label += "}";
    }
    os << "  " << dot_quote(c.obj_label(c.src(f))) << " -> " << dot_quote(c.obj_label(c.tgt(f))) << " [label=" << dot_quote(label)
       << "];\n";
  }
  os << "}\n";
  return os.str();
}

inline std::string to_dot(const Graph& g) {
  std::ostringstream os;
  os << "digraph G {\n";
  for (const auto& v : g.vertices.labels()) os << "  " << dot_quote(v) << ";\n";
  for (std::size_t e = 0; e < g.edges.size(); ++e)
    os << "  " << dot_quote(g.vertices.label(g.src(e))) << " -> " << dot_quote(g.vertices.label(g.tgt(e)))
       << " [label=" << dot_quote(g.edges.label(e)) << "];\n";
  os << "}\n";
  return os.str();
}

/// Members of each class of the quotient Q, as labels of its domain.
inline std::vector<std::vector<std::string>> class_members(const Functor& Q) {
  std::vector<std::vector<std::string>> out(Q.cod().n_morphisms());
  for (std::size_t f = 0; f < Q.dom().n_morphisms(); ++f) out[Q.mor(f)].push_back(Q.dom().mor_label(f));
  return out;
}

}  // namespace intercat::io
