#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <map>
#include <random>
#include <string>
#include <vector>

#include "intercat/intercat.hpp"

namespace fixtures {

using namespace intercat;

inline Functor functor(const InternalCat& a, const InternalCat& b, const std::map<std::string, std::string>& f0,
                       const std::map<std::string, std::string>& f1) {
  return Functor(a, b, FinFn::from_labels(a.objects(), b.objects(), f0), FinFn::from_labels(a.morphisms(), b.morphisms(), f1));
}

/// Picks the object x of b as a functor from the terminal category.
inline Functor point(const InternalCat& b, const std::string& x) {
  auto t = terminal_cat();
  return functor(t, b, {{"*", x}}, {{"*", b.mor_label(b.id(b.objects().index_of(x)))}});
}

/// Picks the morphism f of b as a functor from 2_E.
inline Functor arrow(const InternalCat& b, const std::string& f) {
  auto e = two_E();
  auto m = b.morphisms().index_of(f);
  return functor(e, b, {{"s", b.obj_label(b.src(m))}, {"t", b.obj_label(b.tgt(m))}},
                 {{"id_s", b.mor_label(b.id(b.src(m)))}, {"id_t", b.mor_label(b.id(b.tgt(m)))}, {"u", f}});
}

/// Objects x, y with parallel p, q: x -> y.
inline InternalCat parallel_pq() {
  return make_category({"x", "y"}, {{"1x", "x", "x"}, {"1y", "y", "y"}, {"p", "x", "y"}, {"q", "x", "y"}},
                       {{"x", "1x"}, {"y", "1y"}}, {}, true);
}

/// Objects x, y with parallel p, q, r: x -> y.
inline InternalCat parallel_pqr() {
  return make_category({"x", "y"}, {{"1x", "x", "x"}, {"1y", "y", "y"}, {"p", "x", "y"}, {"q", "x", "y"}, {"r", "x", "y"}},
                       {{"x", "1x"}, {"y", "1y"}}, {}, true);
}

/// The chain a -> b -> c.
inline InternalCat chain3() {
  return make_category({"a", "b", "c"},
                       {{"1a", "a", "a"}, {"1b", "b", "b"}, {"1c", "c", "c"}, {"f", "a", "b"}, {"g", "b", "c"}, {"gf", "a", "c"}},
                       {{"a", "1a"}, {"b", "1b"}, {"c", "1c"}}, {{"g", "f", "gf"}}, true);
}

/// One object with a single extra morphism e, e.e = e (idempotent) or 1 (involution).
inline InternalCat monoid2(bool idempotent) {
  return make_category({"*"}, {{"1", "*", "*"}, {"e", "*", "*"}}, {{"*", "1"}}, {{"e", "e", idempotent ? "e" : "1"}}, true);
}

inline Graph graph(const std::vector<std::string>& vertices, const std::vector<MorphismSpec>& edges) {
  FinObj V(vertices);
  std::vector<std::string> names;
  std::map<std::string, std::string> s, t;
  for (const auto& e : edges) {
    names.push_back(e.name);
    s[e.name] = e.src;
    t[e.name] = e.tgt;
  }
  FinObj E(names);
  return Graph(V, E, FinFn::from_labels(E, V, s), FinFn::from_labels(E, V, t));
}

inline FinObj set_of(std::size_t n, const std::string& prefix = "x") {
  std::vector<std::string> l;
  for (std::size_t i = 0; i < n; ++i) l.push_back(prefix + std::to_string(i));
  return FinObj(l);
}

template <class Rng>
FinFn random_fn(Rng& rng, const FinObj& dom, const FinObj& cod) {
  std::vector<std::size_t> t(dom.size());
  std::uniform_int_distribution<std::size_t> d(0, cod.size() - 1);
  for (auto& x : t) x = d(rng);
  return FinFn(dom, cod, std::move(t));
}

/// The family at caps (3 objects, 5 morphisms), generated once.
inline const TestFamily& family35() {
  static const TestFamily fam = TestFamily::generate(3, 5);
  return fam;
}

/// Parallel pairs agreeing on objects, F != G, with codomain in family35 and
/// domain among a fixed list of small shapes. Listed in a fixed order.
inline std::vector<std::pair<Functor, Functor>> agree_suite() {
  std::vector<InternalCat> domains{two_E(), disc(set_of(2)), monoid2(true), monoid2(false), parallel_pq()};
  std::vector<std::pair<Functor, Functor>> out;
  for (const auto& A : domains)
    for (const auto& B : family35().categories) {
      if (B.n_objects() == 0) continue;
      auto fs = enumerate_functors(A, B);
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
          if (fs[i].on_objects() == fs[j].on_objects()) out.emplace_back(fs[i], fs[j]);
    }
  return out;
}

/// Parallel pairs that disagree on objects, in a fixed order.
inline std::vector<std::pair<Functor, Functor>> disagree_suite(std::size_t limit) {
  std::vector<InternalCat> domains{terminal_cat(), two_E(), disc(set_of(2)), monoid2(true)};
  std::vector<std::pair<Functor, Functor>> out;
  for (const auto& A : domains)
    for (const auto& B : default_family().categories) {
      if (B.n_objects() < 2) continue;
      auto fs = enumerate_functors(A, B);
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i + 1; j < fs.size(); ++j)
          if (!(fs[i].on_objects() == fs[j].on_objects())) out.emplace_back(fs[i], fs[j]);
    }
  // Evenly spaced selection keeps every domain shape represented.
  if (out.size() <= limit) return out;
  std::vector<std::pair<Functor, Functor>> picked;
  for (std::size_t k = 0; k < limit; ++k) picked.push_back(out[k * out.size() / limit]);
  return picked;
}

/// Every acyclic graph on vertices v0.. with at most the given numbers of
/// vertices and edges; edges are a multiset of (src, tgt) pairs.
inline std::vector<Graph> acyclic_graphs(std::size_t max_v, std::size_t max_e) {
  std::vector<Graph> out;
  for (std::size_t nv = 0; nv <= max_v; ++nv) {
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t s = 0; s < nv; ++s)
      for (std::size_t t = 0; t < nv; ++t)
        if (s != t) slots.push_back({s, t});
    std::vector<std::size_t> pick;
    auto emit = [&] {
      std::vector<std::string> vs;
      for (std::size_t v = 0; v < nv; ++v) vs.push_back("v" + std::to_string(v));
      std::vector<MorphismSpec> es;
      for (std::size_t k = 0; k < pick.size(); ++k)
        es.push_back({"e" + std::to_string(k), vs[slots[pick[k]].first], vs[slots[pick[k]].second]});
      auto g = graph(vs, es);
      if (is_acyclic(g)) out.push_back(g);
    };
    // Non-decreasing slot sequences enumerate multisets.
    auto rec = [&](auto&& self, std::size_t from) -> void {
      emit();
      if (pick.size() == max_e) return;
      for (std::size_t s = from; s < slots.size(); ++s) {
        pick.push_back(s);
        self(self, s);
        pick.pop_back();
      }
    };
    rec(rec, 0);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Mutations for negative controls

/// Identifies two distinct parallel morphisms m1, m2 in the codomain of Q
/// (m1 absorbed into m2). Requires the identification to be a congruence,
/// which holds when the resulting composition table is well defined.
inline std::optional<Functor> over_collapse(const Functor& Q) {
  const auto& C = Q.cod();
  for (std::size_t m1 = 0; m1 < C.n_morphisms(); ++m1)
    for (std::size_t m2 = 0; m2 < C.n_morphisms(); ++m2) {
      if (m1 == m2 || C.src(m1) != C.src(m2) || C.tgt(m1) != C.tgt(m2)) continue;
      // Congruence closure of m1 ~ m2 by union-find over composites.
      DisjointSets ds(C.n_morphisms());
      ds.unite(m1, m2);
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t a = 0; a < C.n_morphisms(); ++a)
          for (std::size_t b = 0; b < C.n_morphisms(); ++b) {
            if (ds.find(a) != ds.find(b) || a == b) continue;
            for (std::size_t h = 0; h < C.n_morphisms(); ++h) {
              auto ha = C.compose(h, a), hb = C.compose(h, b);
              if (ha != npos && ds.find(ha) != ds.find(hb)) changed |= ds.unite(ha, hb);
              auto ah = C.compose(a, h), bh = C.compose(b, h);
              if (ah != npos && ds.find(ah) != ds.find(bh)) changed |= ds.unite(ah, bh);
            }
          }
      }
      std::vector<std::string> labels;
      std::vector<std::size_t> cls(C.n_morphisms());
      std::map<std::size_t, std::size_t> root_index;
      for (std::size_t a = 0; a < C.n_morphisms(); ++a) {
        auto r = ds.find(a);
        if (!root_index.count(r)) {
          root_index[r] = labels.size();
          labels.push_back(C.mor_label(a));
        }
      }
      FinObj M(labels);
      for (std::size_t a = 0; a < C.n_morphisms(); ++a) cls[a] = M.index_of(labels[root_index[ds.find(a)]]);
      FinFn q(C.morphisms(), M, cls);
      std::vector<std::size_t> s(M.size()), t(M.size()), comp(M.size() * M.size(), npos);
      for (std::size_t a = 0; a < C.n_morphisms(); ++a) {
        s[q(a)] = C.src(a);
        t[q(a)] = C.tgt(a);
      }
      for (std::size_t g = 0; g < C.n_morphisms(); ++g)
        for (std::size_t f = 0; f < C.n_morphisms(); ++f)
          if (auto gf = C.compose(g, f); gf != npos) comp[q(g) * M.size() + q(f)] = q(gf);
      try {
        InternalCat D(CatData{C.objects(), M, FinFn(M, C.objects(), s), FinFn(M, C.objects(), t),
                              compose_fn(q, C.identity()), comp});
        Functor collapse(C, D, FinFn::identity(C.objects()), q);
        return compose(collapse, Q);
      } catch (const Error&) {
        continue;
      }
    }
  return std::nullopt;
}

/// Adds a morphism parallel to the composite g.f of a length-2 path and makes
/// it the composite instead, leaving the old composite in place. In a free
/// category this breaks the uniqueness of extensions; the new morphism is
/// labelled "<g.f>'".
inline std::optional<InternalCat> missing_composite(const InternalCat& C) {
  for (std::size_t g = 0; g < C.n_morphisms(); ++g)
    for (std::size_t f = 0; f < C.n_morphisms(); ++f) {
      if (C.is_identity(g) || C.is_identity(f)) continue;
      auto gf = C.compose(g, f);
      if (gf == npos) continue;
      // The old composite stays as a free-standing parallel morphism.
      std::vector<std::string> objects = C.objects().labels();
      std::vector<MorphismSpec> ms;
      std::map<std::string, std::string> ids;
      for (std::size_t m = 0; m < C.n_morphisms(); ++m) ms.push_back({C.mor_label(m), C.obj_label(C.src(m)), C.obj_label(C.tgt(m))});
      for (std::size_t x = 0; x < C.n_objects(); ++x) ids[C.obj_label(x)] = C.mor_label(C.id(x));
      auto fresh = C.mor_label(gf) + "'";
      ms.push_back({fresh, C.obj_label(C.src(gf)), C.obj_label(C.tgt(gf))});
      std::vector<std::array<std::string, 3>> table;
      for (std::size_t a = 0; a < C.n_morphisms(); ++a)
        for (std::size_t b = 0; b < C.n_morphisms(); ++b) {
          if (C.is_identity(a) || C.is_identity(b)) continue;
          auto ab = C.compose(a, b);
          if (ab == npos) continue;
          table.push_back({C.mor_label(a), C.mor_label(b), a == g && b == f ? fresh : C.mor_label(ab)});
        }
      try {
        return make_category(objects, ms, ids, table, true);
      } catch (const Error&) {
        continue;
      }
    }
  return std::nullopt;
}

}  // namespace fixtures
