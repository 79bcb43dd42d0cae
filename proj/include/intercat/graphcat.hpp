#pragma once

// Internal graphs, categories, functors and natural transformations over
// finite sets. Constructors validate eagerly: a value of type InternalCat,
// Functor or NatTrans always satisfies its laws.

#include <array>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "intercat/error.hpp"
#include "intercat/finset.hpp"

namespace intercat {

// ---------------------------------------------------------------------------
// Graphs

struct Graph {
  FinObj vertices;
  FinObj edges;
  FinFn src;
  FinFn tgt;

  Graph() : src(FinFn::identity(FinObj())), tgt(FinFn::identity(FinObj())) {}

  Graph(FinObj v, FinObj e, FinFn s, FinFn t)
      : vertices(std::move(v)), edges(std::move(e)), src(std::move(s)), tgt(std::move(t)) {
    if (!(src.dom() == edges) || !(tgt.dom() == edges) || !(src.cod() == vertices) || !(tgt.cod() == vertices))
      throw Error(ErrorKind::ValidationError, "graph: source and target must map edges to vertices");
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertices == b.vertices && a.edges == b.edges && a.src == b.src && a.tgt == b.tgt;
  }
};

struct GraphMorphism {
  Graph dom;
  Graph cod;
  FinFn on_vertices;
  FinFn on_edges;

  GraphMorphism() = default;

  GraphMorphism(Graph d, Graph c, FinFn h0, FinFn h1)
      : dom(std::move(d)), cod(std::move(c)), on_vertices(std::move(h0)), on_edges(std::move(h1)) {
    if (!(on_vertices.dom() == dom.vertices) || !(on_vertices.cod() == cod.vertices) ||
        !(on_edges.dom() == dom.edges) || !(on_edges.cod() == cod.edges))
      throw Error(ErrorKind::ValidationError, "graph morphism: component maps have the wrong shape");
    for (std::size_t e = 0; e < dom.edges.size(); ++e) {
      if (cod.src(on_edges(e)) != on_vertices(dom.src(e)))
        throw Error(ErrorKind::ValidationError, "graph morphism: source of edge '" + dom.edges.label(e) + "' not preserved");
      if (cod.tgt(on_edges(e)) != on_vertices(dom.tgt(e)))
        throw Error(ErrorKind::ValidationError, "graph morphism: target of edge '" + dom.edges.label(e) + "' not preserved");
    }
  }
};

// ---------------------------------------------------------------------------
// Categories

/// Raw category data. `comp[g * |C1| + f]` is the composite g.f, or npos
/// when the pair is not composable (d0 g != d1 f).
struct CatData {
  FinObj objects;
  FinObj morphisms;
  FinFn source;
  FinFn target;
  FinFn identity;
  std::vector<std::size_t> comp;

  std::size_t at(std::size_t g, std::size_t f) const { return comp[g * morphisms.size() + f]; }
};

namespace detail {

inline std::string comp_witness(const CatData& c, std::size_t g, std::size_t f) {
  return "(" + c.morphisms.label(g) + ", " + c.morphisms.label(f) + ")";
}

}  // namespace detail

/// Checks the category laws in order and reports the first violation.
/// The associativity sweep is cubic in |C1| for a one-object category.
inline Verdict validate_category(const CatData& c, bool associativity = true) {
  const auto n0 = c.objects.size();
  const auto n1 = c.morphisms.size();
  auto shaped = [&](const FinFn& fn, const FinObj& d, const FinObj& cd) { return fn.dom() == d && fn.cod() == cd; };
  if (!shaped(c.source, c.morphisms, c.objects)) return Verdict::fail("shape", "source map must go from morphisms to objects");
  if (!shaped(c.target, c.morphisms, c.objects)) return Verdict::fail("shape", "target map must go from morphisms to objects");
  if (!shaped(c.identity, c.objects, c.morphisms)) return Verdict::fail("shape", "identity map must go from objects to morphisms");
  if (c.comp.size() != n1 * n1) return Verdict::fail("shape", "composition table has the wrong size");

  for (std::size_t x = 0; x < n0; ++x) {
    if (c.source(c.identity(x)) != x) return Verdict::fail("source of identity", c.objects.label(x));
    if (c.target(c.identity(x)) != x) return Verdict::fail("target of identity", c.objects.label(x));
  }
  for (std::size_t g = 0; g < n1; ++g)
    for (std::size_t f = 0; f < n1; ++f) {
      const bool composable = c.source(g) == c.target(f);
      const auto gf = c.at(g, f);
      if (composable && gf == npos) return Verdict::fail("composite missing", detail::comp_witness(c, g, f));
      if (!composable && gf != npos) return Verdict::fail("composite of non-composable pair", detail::comp_witness(c, g, f));
      if (gf != npos && gf >= n1) return Verdict::fail("shape", "composite out of range at " + detail::comp_witness(c, g, f));
    }
  for (std::size_t g = 0; g < n1; ++g)
    for (std::size_t f = 0; f < n1; ++f) {
      auto gf = c.at(g, f);
      if (gf == npos) continue;
      if (c.source(gf) != c.source(f)) return Verdict::fail("source of composite", detail::comp_witness(c, g, f));
      if (c.target(gf) != c.target(g)) return Verdict::fail("target of composite", detail::comp_witness(c, g, f));
    }
  for (std::size_t f = 0; f < n1; ++f) {
    if (c.at(c.identity(c.target(f)), f) != f) return Verdict::fail("left unit", c.morphisms.label(f));
    if (c.at(f, c.identity(c.source(f))) != f) return Verdict::fail("right unit", c.morphisms.label(f));
  }
  if (!associativity) return Verdict::pass();
  // Associativity over every composable triple (h, g, f).
  std::vector<std::vector<std::size_t>> out_of(n0);
  for (std::size_t f = 0; f < n1; ++f) out_of[c.source(f)].push_back(f);
  for (std::size_t f = 0; f < n1; ++f)
    for (auto g : out_of[c.target(f)])
      for (auto h : out_of[c.target(g)]) {
        if (c.at(h, c.at(g, f)) != c.at(c.at(h, g), f))
          return Verdict::fail("associativity", "(" + c.morphisms.label(h) + ", " + c.morphisms.label(g) + ", " +
                                                    c.morphisms.label(f) + ")");
      }
  return Verdict::pass();
}

/// A validated internal category in finite sets. Copies share storage.
class InternalCat {
 public:
  InternalCat() : InternalCat(empty_data()) {}

  explicit InternalCat(CatData d) : InternalCat(std::move(d), true) {}

  /// For tables that are associative by construction, such as quotients of
  /// path categories. All other laws are still checked.
  struct AssociativeByConstruction {};
  InternalCat(CatData d, AssociativeByConstruction) : InternalCat(std::move(d), false) {}

 private:
  InternalCat(CatData d, bool check_associativity) {
    if (auto v = validate_category(d, check_associativity); !v)
      throw Error(ErrorKind::ValidationError, "category: " + v.describe());
    auto impl = std::make_shared<Impl>();
    impl->data = std::move(d);
    const auto n0 = impl->data.objects.size();
    impl->homs.resize(n0 * n0);
    for (std::size_t f = 0; f < impl->data.morphisms.size(); ++f)
      impl->homs[impl->data.source(f) * n0 + impl->data.target(f)].push_back(f);
    impl_ = std::move(impl);
  }

 public:
  const CatData& data() const noexcept { return impl_->data; }
  const FinObj& objects() const noexcept { return impl_->data.objects; }
  const FinObj& morphisms() const noexcept { return impl_->data.morphisms; }
  const FinFn& source() const noexcept { return impl_->data.source; }
  const FinFn& target() const noexcept { return impl_->data.target; }
  const FinFn& identity() const noexcept { return impl_->data.identity; }

  std::size_t n_objects() const noexcept { return objects().size(); }
  std::size_t n_morphisms() const noexcept { return morphisms().size(); }
  std::size_t src(std::size_t f) const { return source()(f); }
  std::size_t tgt(std::size_t f) const { return target()(f); }
  std::size_t id(std::size_t x) const { return identity()(x); }
  bool is_identity(std::size_t f) const { return id(src(f)) == f; }
  bool composable(std::size_t g, std::size_t f) const { return src(g) == tgt(f); }
  /// g.f, or npos when not composable.
  std::size_t compose(std::size_t g, std::size_t f) const { return impl_->data.at(g, f); }

  /// Morphisms x -> y in index order.
  const std::vector<std::size_t>& hom(std::size_t x, std::size_t y) const { return impl_->homs[x * n_objects() + y]; }

  bool is_discrete() const { return n_morphisms() == n_objects(); }

  const std::string& obj_label(std::size_t x) const { return objects().label(x); }
  const std::string& mor_label(std::size_t f) const { return morphisms().label(f); }

  friend bool operator==(const InternalCat& a, const InternalCat& b) {
    if (a.impl_ == b.impl_) return true;
    const auto& x = a.data();
    const auto& y = b.data();
    return x.objects == y.objects && x.morphisms == y.morphisms && x.source == y.source && x.target == y.target &&
           x.identity == y.identity && x.comp == y.comp;
  }

 private:
  struct Impl {
    CatData data;
    std::vector<std::vector<std::size_t>> homs;
  };

  static CatData empty_data() {
    FinObj none;
    return {none, none, FinFn::identity(none), FinFn::identity(none), FinFn::identity(none), {}};
  }

  std::shared_ptr<const Impl> impl_;
};

inline Verdict validate_category(const InternalCat& c) { return validate_category(c.data()); }

struct MorphismSpec {
  std::string name;
  std::string src;
  std::string tgt;
};

/// Assemble a category from labels. With fill_units, composites with
/// identities are supplied automatically. Conflicting entries are rejected.
inline InternalCat make_category(const std::vector<std::string>& objects, const std::vector<MorphismSpec>& morphisms,
                                 const std::map<std::string, std::string>& identities,
                                 const std::vector<std::array<std::string, 3>>& composition, bool fill_units = false) {
  FinObj C0(objects);
  std::vector<std::string> names;
  for (const auto& m : morphisms) names.push_back(m.name);
  FinObj C1(names);
  std::map<std::string, std::string> s, t;
  for (const auto& m : morphisms) {
    if (!C0.contains(m.src)) throw Error(ErrorKind::ValidationError, "morphism '" + m.name + "' has unknown source '" + m.src + "'");
    if (!C0.contains(m.tgt)) throw Error(ErrorKind::ValidationError, "morphism '" + m.name + "' has unknown target '" + m.tgt + "'");
    s[m.name] = m.src;
    t[m.name] = m.tgt;
  }
  auto src = FinFn::from_labels(C1, C0, s);
  auto tgt = FinFn::from_labels(C1, C0, t);
  FinFn ident;
  try {
    ident = FinFn::from_labels(C0, C1, identities);
  } catch (const Error& e) {
    throw Error(ErrorKind::ValidationError, std::string("identities: ") + e.what());
  }
  const auto n = C1.size();
  std::vector<std::size_t> comp(n * n, npos);
  auto set = [&](std::size_t g, std::size_t f, std::size_t gf) {
    auto& slot = comp[g * n + f];
    if (slot != npos && slot != gf)
      throw Error(ErrorKind::ValidationError, "conflicting composites for (" + C1.label(g) + ", " + C1.label(f) + ")");
    slot = gf;
  };
  for (const auto& [g, f, gf] : composition) {
    auto gi = C1.find(g), fi = C1.find(f), gfi = C1.find(gf);
    if (!gi || !fi || !gfi) throw Error(ErrorKind::ValidationError, "composition entry names an unknown morphism: [" + g + ", " + f + ", " + gf + "]");
    set(*gi, *fi, *gfi);
  }
  if (fill_units) {
    for (std::size_t f = 0; f < n; ++f) {
      set(ident(tgt(f)), f, f);
      set(f, ident(src(f)), f);
    }
  }
  return InternalCat(CatData{C0, C1, src, tgt, ident, std::move(comp)});
}

// ---------------------------------------------------------------------------
// Functors

struct FunctorData {
  InternalCat dom;
  InternalCat cod;
  FinFn on_objects;
  FinFn on_morphisms;
};

inline Verdict validate_functor(const FunctorData& F) {
  const auto& A = F.dom;
  const auto& B = F.cod;
  if (!(F.on_objects.dom() == A.objects()) || !(F.on_objects.cod() == B.objects()))
    return Verdict::fail("shape", "object map has the wrong domain or codomain");
  if (!(F.on_morphisms.dom() == A.morphisms()) || !(F.on_morphisms.cod() == B.morphisms()))
    return Verdict::fail("shape", "morphism map has the wrong domain or codomain");
  for (std::size_t f = 0; f < A.n_morphisms(); ++f) {
    if (B.src(F.on_morphisms(f)) != F.on_objects(A.src(f))) return Verdict::fail("source preservation", A.mor_label(f));
    if (B.tgt(F.on_morphisms(f)) != F.on_objects(A.tgt(f))) return Verdict::fail("target preservation", A.mor_label(f));
  }
  for (std::size_t x = 0; x < A.n_objects(); ++x)
    if (F.on_morphisms(A.id(x)) != B.id(F.on_objects(x))) return Verdict::fail("identity preservation", A.obj_label(x));
  for (std::size_t g = 0; g < A.n_morphisms(); ++g)
    for (std::size_t f = 0; f < A.n_morphisms(); ++f) {
      auto gf = A.compose(g, f);
      if (gf == npos) continue;
      if (F.on_morphisms(gf) != B.compose(F.on_morphisms(g), F.on_morphisms(f)))
        return Verdict::fail("composition preservation", "(" + A.mor_label(g) + ", " + A.mor_label(f) + ")");
    }
  return Verdict::pass();
}

class Functor {
 public:
  Functor(InternalCat dom, InternalCat cod, FinFn on_objects, FinFn on_morphisms)
      : d_{std::move(dom), std::move(cod), std::move(on_objects), std::move(on_morphisms)} {
    if (auto v = validate_functor(d_); !v) throw Error(ErrorKind::ValidationError, "functor: " + v.describe());
  }

  const InternalCat& dom() const noexcept { return d_.dom; }
  const InternalCat& cod() const noexcept { return d_.cod; }
  const FinFn& on_objects() const noexcept { return d_.on_objects; }
  const FinFn& on_morphisms() const noexcept { return d_.on_morphisms; }
  std::size_t obj(std::size_t x) const { return d_.on_objects(x); }
  std::size_t mor(std::size_t f) const { return d_.on_morphisms(f); }
  const FunctorData& data() const noexcept { return d_; }

  friend bool operator==(const Functor& a, const Functor& b) {
    return a.d_.on_objects == b.d_.on_objects && a.d_.on_morphisms == b.d_.on_morphisms && a.d_.dom == b.d_.dom &&
           a.d_.cod == b.d_.cod;
  }

 private:
  FunctorData d_;
};

inline Verdict validate_functor(const Functor& F) { return validate_functor(F.data()); }

inline Functor identity_functor(const InternalCat& c) {
  return Functor(c, c, FinFn::identity(c.objects()), FinFn::identity(c.morphisms()));
}

/// G after F.
inline Functor compose(const Functor& G, const Functor& F) {
  if (!(F.cod() == G.dom())) throw Error(ErrorKind::DomainMismatch, "functor composition: codomain of F differs from domain of G");
  return Functor(F.dom(), G.cod(), compose_fn(G.on_objects(), F.on_objects()), compose_fn(G.on_morphisms(), F.on_morphisms()));
}

inline bool parallel(const Functor& F, const Functor& G) { return F.dom() == G.dom() && F.cod() == G.cod(); }

// ---------------------------------------------------------------------------
// Natural transformations

struct NatTransData {
  Functor src;
  Functor tgt;
  FinFn components;
};

inline Verdict validate_nattrans(const NatTransData& a) {
  const auto& F = a.src;
  const auto& G = a.tgt;
  if (!parallel(F, G)) return Verdict::fail("parallel functors", "source and target functors are not parallel");
  const auto& A = F.dom();
  const auto& B = F.cod();
  if (!(a.components.dom() == A.objects()) || !(a.components.cod() == B.morphisms()))
    return Verdict::fail("shape", "components must map objects of the domain to morphisms of the codomain");
  for (std::size_t x = 0; x < A.n_objects(); ++x) {
    if (B.src(a.components(x)) != F.obj(x)) return Verdict::fail("source condition", A.obj_label(x));
    if (B.tgt(a.components(x)) != G.obj(x)) return Verdict::fail("target condition", A.obj_label(x));
  }
  for (std::size_t f = 0; f < A.n_morphisms(); ++f) {
    auto lhs = B.compose(a.components(A.tgt(f)), F.mor(f));
    auto rhs = B.compose(G.mor(f), a.components(A.src(f)));
    if (lhs != rhs) return Verdict::fail("naturality", A.mor_label(f));
  }
  return Verdict::pass();
}

class NatTrans {
 public:
  NatTrans(Functor src, Functor tgt, FinFn components) : d_{std::move(src), std::move(tgt), std::move(components)} {
    if (auto v = validate_nattrans(d_); !v) throw Error(ErrorKind::ValidationError, "natural transformation: " + v.describe());
  }

  const Functor& src() const noexcept { return d_.src; }
  const Functor& tgt() const noexcept { return d_.tgt; }
  const FinFn& components() const noexcept { return d_.components; }
  std::size_t at(std::size_t x) const { return d_.components(x); }
  const NatTransData& data() const noexcept { return d_; }

  friend bool operator==(const NatTrans& a, const NatTrans& b) {
    return a.d_.components == b.d_.components && a.d_.src == b.d_.src && a.d_.tgt == b.d_.tgt;
  }

 private:
  NatTransData d_;
};

inline Verdict validate_nattrans(const NatTrans& a) { return validate_nattrans(a.data()); }

inline NatTrans identity_nattrans(const Functor& F) {
  return NatTrans(F, F, compose_fn(F.cod().identity(), F.on_objects()));
}

/// H . a
inline NatTrans whisker(const Functor& H, const NatTrans& a) {
  return NatTrans(compose(H, a.src()), compose(H, a.tgt()), compose_fn(H.on_morphisms(), a.components()));
}

/// a . K
inline NatTrans whisker(const NatTrans& a, const Functor& K) {
  return NatTrans(compose(a.src(), K), compose(a.tgt(), K), compose_fn(a.components(), K.on_objects()));
}

// ---------------------------------------------------------------------------
// Discrete, indiscrete, terminal

inline InternalCat disc(const FinObj& x) {
  const auto n = x.size();
  std::vector<std::size_t> comp(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) comp[i * n + i] = i;
  auto id = FinFn::identity(x);
  return InternalCat(CatData{x, x, id, id, id, std::move(comp)});
}

inline InternalCat indisc(const FinObj& x) {
  auto sq = product(x, x);  // (a|b) is the unique morphism a -> b
  const auto n = sq.object.size();
  std::vector<std::size_t> ident(x.size());
  for (std::size_t a = 0; a < x.size(); ++a) ident[a] = sq.index(a, a);
  std::vector<std::size_t> comp(n * n, npos);
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (sq.p1(g) == sq.p2(f)) comp[g * n + f] = sq.index(sq.p1(f), sq.p2(g));
  return InternalCat(CatData{x, sq.object, sq.p1, sq.p2, FinFn(x, sq.object, std::move(ident)), std::move(comp)});
}

inline const FinObj& objects_of(const InternalCat& c) { return c.objects(); }

inline InternalCat terminal_cat() { return disc(FinObj::terminal()); }

/// The counit disc(A0) -> A.
inline Functor counit(const InternalCat& a) { return Functor(disc(a.objects()), a, FinFn::identity(a.objects()), a.identity()); }

/// The unique functor into the terminal category.
inline Functor to_terminal(const InternalCat& a) {
  auto t = terminal_cat();
  return Functor(a, t, intercat::to_terminal(a.objects()), intercat::to_terminal(a.morphisms()));
}

// ---------------------------------------------------------------------------
// Nerve

/// The n-th level of the nerve: composable n-tuples (h|g|f), written with the
/// last-applied morphism first. Level 0 is the objects, level 1 the morphisms.
struct NerveLevel {
  std::size_t n = 0;
  FinObj object;
  std::vector<FinFn> projections;  ///< legs to C1, leftmost component first (n >= 1)
  FinFn composite;                 ///< C_n -> C1; for n = 0 the identity assigner
  std::map<std::vector<std::size_t>, std::size_t> index;

  std::size_t index_of(const std::vector<std::size_t>& tuple) const {
    auto it = index.find(tuple);
    return it == index.end() ? npos : it->second;
  }
};

inline std::string tuple_label(const FinObj& mor, const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t k = 0; k < t.size(); ++k) {
    if (k) s += "|";
    s += mor.label(t[k]);
  }
  return s + ")";
}

inline NerveLevel nerve_level(const InternalCat& c, std::size_t n) {
  NerveLevel out;
  out.n = n;
  if (n == 0) {
    out.object = c.objects();
    out.composite = c.identity();
    for (std::size_t x = 0; x < c.n_objects(); ++x) out.index[{x}] = x;
    return out;
  }
  // Enumerate tuples (t_0, ..., t_{n-1}) with src(t_k) == tgt(t_{k+1}).
  std::vector<std::vector<std::size_t>> tuples;
  std::vector<std::size_t> cur;
  auto extend = [&](auto&& self) -> void {
    if (cur.size() == n) {
      tuples.push_back(cur);
      return;
    }
    for (std::size_t f = 0; f < c.n_morphisms(); ++f) {
      if (!cur.empty() && c.src(cur.back()) != c.tgt(f)) continue;
      cur.push_back(f);
      self(self);
      cur.pop_back();
    }
  };
  extend(extend);
  std::vector<std::string> labels;
  labels.reserve(tuples.size());
  if (n == 1) {
    out.object = c.morphisms();
  } else {
    for (const auto& t : tuples) labels.push_back(tuple_label(c.morphisms(), t));
    out.object = FinObj(labels);
  }
  std::vector<std::vector<std::size_t>> legs(n, std::vector<std::size_t>(tuples.size()));
  std::vector<std::size_t> comp(tuples.size());
  for (std::size_t k = 0; k < tuples.size(); ++k) {
    auto idx = n == 1 ? tuples[k][0] : out.object.index_of(labels[k]);
    out.index[tuples[k]] = idx;
    std::size_t acc = tuples[k].back();
    for (std::size_t j = 0; j < n; ++j) legs[j][idx] = tuples[k][j];
    for (std::size_t j = n - 1; j-- > 0;) acc = c.compose(tuples[k][j], acc);
    comp[idx] = acc;
  }
  for (auto& l : legs) out.projections.emplace_back(out.object, c.morphisms(), std::move(l));
  out.composite = FinFn(out.object, c.morphisms(), std::move(comp));
  return out;
}

// ---------------------------------------------------------------------------
// Products

struct CatProduct {
  InternalCat object;
  Functor p1;
  Functor p2;
  Pullback objects;    ///< carrier of objects, for pairing
  Pullback morphisms;  ///< carrier of morphisms, for pairing

  /// The functor (F, G): X -> A x B.
  Functor pair(const Functor& F, const Functor& G) const {
    if (!(F.dom() == G.dom())) throw Error(ErrorKind::ShapeMismatch, "pairing functors with different domains");
    return Functor(F.dom(), object, objects.mediate(F.on_objects(), G.on_objects()),
                   morphisms.mediate(F.on_morphisms(), G.on_morphisms()));
  }
};

inline CatProduct product_cat(const InternalCat& a, const InternalCat& b) {
  auto P0 = product(a.objects(), b.objects());
  auto P1 = product(a.morphisms(), b.morphisms());
  const auto n = P1.object.size();
  std::vector<std::size_t> s(n), t(n), ident(P0.object.size()), comp(n * n, npos);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = P0.index(a.src(P1.p1(k)), b.src(P1.p2(k)));
    t[k] = P0.index(a.tgt(P1.p1(k)), b.tgt(P1.p2(k)));
  }
  for (std::size_t x = 0; x < ident.size(); ++x) ident[x] = P1.index(a.id(P0.p1(x)), b.id(P0.p2(x)));
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f) {
      auto ga = a.compose(P1.p1(g), P1.p1(f));
      auto gb = b.compose(P1.p2(g), P1.p2(f));
      if (ga != npos && gb != npos) comp[g * n + f] = P1.index(ga, gb);
    }
  InternalCat prod(CatData{P0.object, P1.object, FinFn(P1.object, P0.object, std::move(s)),
                           FinFn(P1.object, P0.object, std::move(t)), FinFn(P0.object, P1.object, std::move(ident)),
                           std::move(comp)});
  Functor p1(prod, a, P0.p1, P1.p1);
  Functor p2(prod, b, P0.p2, P1.p2);
  return CatProduct{prod, p1, p2, P0, P1};
}

// ---------------------------------------------------------------------------
// Arrow category (power by 2)

struct ArrowCat {
  InternalCat base;
  InternalCat object;
  Functor dom_proj;  ///< square (u, v) : f -> g  |->  u
  Functor cod_proj;  ///< |->  v
  /// square index by (f, g, u, v)
  std::map<std::array<std::size_t, 4>, std::size_t> squares;
};

inline ArrowCat arrow_category(const InternalCat& b) {
  std::vector<std::array<std::size_t, 4>> sq;
  for (std::size_t f = 0; f < b.n_morphisms(); ++f)
    for (std::size_t g = 0; g < b.n_morphisms(); ++g)
      for (auto u : b.hom(b.src(f), b.src(g)))
        for (auto v : b.hom(b.tgt(f), b.tgt(g)))
          if (b.compose(v, f) == b.compose(g, u)) sq.push_back({f, g, u, v});
  std::vector<std::string> labels;
  for (const auto& [f, g, u, v] : sq)
    labels.push_back("(" + b.mor_label(f) + "|" + b.mor_label(g) + "|" + b.mor_label(u) + "|" + b.mor_label(v) + ")");
  FinObj M(labels);
  const auto n = M.size();
  std::map<std::array<std::size_t, 4>, std::size_t> index;
  std::vector<std::array<std::size_t, 4>> at(n);
  for (std::size_t k = 0; k < sq.size(); ++k) {
    auto i = M.index_of(labels[k]);
    index[sq[k]] = i;
    at[i] = sq[k];
  }
  const auto& O = b.morphisms();
  std::vector<std::size_t> s(n), t(n), du(n), dv(n), ident(O.size()), comp(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = at[i][0];
    t[i] = at[i][1];
    du[i] = at[i][2];
    dv[i] = at[i][3];
  }
  for (std::size_t f = 0; f < O.size(); ++f) ident[f] = index.at({f, f, b.id(b.src(f)), b.id(b.tgt(f))});
  for (std::size_t j = 0; j < n; ++j)
    for (std::size_t i = 0; i < n; ++i)
      if (at[j][0] == at[i][1])
        comp[j * n + i] = index.at({at[i][0], at[j][1], b.compose(at[j][2], at[i][2]), b.compose(at[j][3], at[i][3])});
  InternalCat arrows(CatData{O, M, FinFn(M, O, s), FinFn(M, O, t), FinFn(O, M, std::move(ident)), std::move(comp)});
  Functor dom_proj(arrows, b, b.source(), FinFn(M, b.morphisms(), std::move(du)));
  Functor cod_proj(arrows, b, b.target(), FinFn(M, b.morphisms(), std::move(dv)));
  return ArrowCat{b, arrows, dom_proj, cod_proj, std::move(index)};
}

/// The functor A -> B^2 corresponding to a natural transformation a: F => G.
inline Functor transpose(const NatTrans& a, const ArrowCat& arr) {
  const auto& A = a.src().dom();
  if (!(a.src().cod() == arr.base)) throw Error(ErrorKind::ShapeMismatch, "arrow category built over a different base");
  std::vector<std::size_t> m(A.n_morphisms());
  for (std::size_t f = 0; f < m.size(); ++f)
    m[f] = arr.squares.at({a.at(A.src(f)), a.at(A.tgt(f)), a.src().mor(f), a.tgt().mor(f)});
  return Functor(A, arr.object, a.components(), FinFn(A.morphisms(), arr.object.morphisms(), std::move(m)));
}

/// The natural transformation dom.H => cod.H corresponding to H: A -> B^2.
inline NatTrans untranspose(const Functor& H, const ArrowCat& arr) {
  if (!(H.cod() == arr.object)) throw Error(ErrorKind::ShapeMismatch, "functor does not land in the arrow category");
  return NatTrans(compose(arr.dom_proj, H), compose(arr.cod_proj, H), H.on_objects());
}

// ---------------------------------------------------------------------------
// Paths

struct Path {
  std::size_t src = 0;
  std::size_t tgt = 0;
  std::vector<std::size_t> edges;  ///< in traversal order

  std::size_t length() const noexcept { return edges.size(); }

  friend bool operator==(const Path& a, const Path& b) {
    return a.src == b.src && a.tgt == b.tgt && a.edges == b.edges;
  }
  /// Canonical order: by length, then source, then edge sequence.
  friend bool operator<(const Path& a, const Path& b) {
    return std::forward_as_tuple(a.edges.size(), a.src, a.edges, a.tgt) <
           std::forward_as_tuple(b.edges.size(), b.src, b.edges, b.tgt);
  }
};

inline Path empty_path(std::size_t v) { return Path{v, v, {}}; }

/// "[v]" for the empty path at v, otherwise edge labels joined by ';' in
/// traversal order.
inline std::string path_label(const Graph& g, const Path& p) {
  if (p.edges.empty()) return "[" + g.vertices.label(p.src) + "]";
  std::string s;
  for (std::size_t k = 0; k < p.edges.size(); ++k) {
    if (k) s += ";";
    s += g.edges.label(p.edges[k]);
  }
  return s;
}

inline bool is_path(const Graph& g, const Path& p) {
  std::size_t at = p.src;
  for (auto e : p.edges) {
    if (e >= g.edges.size() || g.src(e) != at) return false;
    at = g.tgt(e);
  }
  return at == p.tgt;
}

/// Every path of length <= n, in canonical order.
inline std::vector<Path> paths_up_to(const Graph& g, std::size_t n) {
  std::vector<Path> out;
  std::vector<Path> layer;
  for (std::size_t v = 0; v < g.vertices.size(); ++v) layer.push_back(empty_path(v));
  for (std::size_t len = 0;; ++len) {
    std::sort(layer.begin(), layer.end());
    out.insert(out.end(), layer.begin(), layer.end());
    if (len == n) break;
    std::vector<Path> next;
    for (const auto& p : layer)
      for (std::size_t e = 0; e < g.edges.size(); ++e)
        if (g.src(e) == p.tgt) {
          Path q = p;
          q.edges.push_back(e);
          q.tgt = g.tgt(e);
          next.push_back(std::move(q));
        }
    if (next.empty()) break;
    layer = std::move(next);
  }
  return out;
}

/// The underlying graph of a category.
inline Graph underlying_graph(const InternalCat& c) { return Graph(c.objects(), c.morphisms(), c.source(), c.target()); }

inline bool is_acyclic(const Graph& g) {
  // Kahn's algorithm; loops count as cycles.
  std::vector<std::size_t> indeg(g.vertices.size(), 0);
  for (std::size_t e = 0; e < g.edges.size(); ++e) ++indeg[g.tgt(e)];
  std::vector<std::size_t> ready;
  for (std::size_t v = 0; v < indeg.size(); ++v)
    if (indeg[v] == 0) ready.push_back(v);
  std::size_t seen = 0;
  while (!ready.empty()) {
    auto v = ready.back();
    ready.pop_back();
    ++seen;
    for (std::size_t e = 0; e < g.edges.size(); ++e)
      if (g.src(e) == v && --indeg[g.tgt(e)] == 0) ready.push_back(g.tgt(e));
  }
  return seen == g.vertices.size();
}

}  // namespace intercat
