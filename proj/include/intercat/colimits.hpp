#pragma once

// Coproducts, the free arrow, copowers by the free arrow, coequalisers of
// functors that agree on objects, and coequifiers.

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

// ---------------------------------------------------------------------------
// Coproducts

struct CatCoproduct {
  InternalCat object;
  std::vector<InternalCat> summands;
  std::vector<Functor> injections;
  Coproduct objects;
  Coproduct morphisms;

  /// The functor out of the coproduct restricting to fs[i] on summand i.
  Functor copair(std::span<const Functor> fs, const InternalCat& target) const {
    if (fs.size() != summands.size()) throw Error(ErrorKind::ShapeMismatch, "copairing needs one functor per summand");
    std::vector<FinFn> f0, f1;
    for (std::size_t i = 0; i < fs.size(); ++i) {
      if (!(fs[i].dom() == summands[i]) || !(fs[i].cod() == target))
        throw Error(ErrorKind::ShapeMismatch, "copairing functor " + std::to_string(i) + " has the wrong domain or codomain");
      f0.push_back(fs[i].on_objects());
      f1.push_back(fs[i].on_morphisms());
    }
    return Functor(object, target, objects.copair(f0, target.objects()), morphisms.copair(f1, target.morphisms()));
  }
  Functor copair(std::initializer_list<Functor> fs, const InternalCat& target) const {
    return copair(std::span<const Functor>(fs.begin(), fs.size()), target);
  }
};

inline CatCoproduct coproduct_cat(std::span<const InternalCat> xs) {
  std::vector<FinObj> obs, mors;
  for (const auto& x : xs) {
    obs.push_back(x.objects());
    mors.push_back(x.morphisms());
  }
  auto C0 = coproduct(obs);
  auto C1 = coproduct(mors);
  const auto n = C1.object.size();
  std::vector<std::size_t> s(n), t(n), ident(C0.object.size()), comp(n * n, npos);
  for (std::size_t k = 0; k < n; ++k) {
    auto [i, f] = C1.origin[k];
    s[k] = C0.injections[i](xs[i].src(f));
    t[k] = C0.injections[i](xs[i].tgt(f));
  }
  for (std::size_t k = 0; k < ident.size(); ++k) {
    auto [i, x] = C0.origin[k];
    ident[k] = C1.injections[i](xs[i].id(x));
  }
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto [i, g] = C1.origin[a];
      auto [j, f] = C1.origin[b];
      if (i != j) continue;
      auto gf = xs[i].compose(g, f);
      if (gf != npos) comp[a * n + b] = C1.injections[i](gf);
    }
  InternalCat sum(CatData{C0.object, C1.object, FinFn(C1.object, C0.object, std::move(s)),
                          FinFn(C1.object, C0.object, std::move(t)), FinFn(C0.object, C1.object, std::move(ident)),
                          std::move(comp)});
  CatCoproduct out{sum, std::vector<InternalCat>(xs.begin(), xs.end()), {}, C0, C1};
  for (std::size_t i = 0; i < xs.size(); ++i) out.injections.emplace_back(xs[i], sum, C0.injections[i], C1.injections[i]);
  return out;
}

inline CatCoproduct coproduct_cat(std::initializer_list<InternalCat> xs) {
  return coproduct_cat(std::span<const InternalCat>(xs.begin(), xs.size()));
}

// ---------------------------------------------------------------------------
// The free arrow and copowers by it

/// Objects s, t; morphisms id_s, id_t and u: s -> t.
inline InternalCat two_E() {
  return make_category({"s", "t"}, {{"id_s", "s", "s"}, {"id_t", "t", "t"}, {"u", "s", "t"}},
                       {{"s", "id_s"}, {"t", "id_t"}}, {}, true);
}

struct Copower2 {
  InternalCat base;
  CatProduct product;  ///< two_E() x base

  const InternalCat& object() const noexcept { return product.object; }

  std::size_t obj(std::string_view end, std::size_t x) const {
    return product.objects.index(product.p1.cod().objects().index_of(end), x);
  }
  std::size_t mor(std::string_view arrow, std::size_t f) const {
    return product.morphisms.index(product.p1.cod().morphisms().index_of(arrow), f);
  }

  /// The functor 2_E x A -> B classifying a: F => G.
  Functor transpose(const NatTrans& a) const {
    const auto& F = a.src();
    const auto& G = a.tgt();
    if (!(F.dom() == base)) throw Error(ErrorKind::ShapeMismatch, "transformation is not defined on the copowered category");
    const auto& B = F.cod();
    const auto& P = object();
    std::vector<std::size_t> h0(P.n_objects()), h1(P.n_morphisms());
    for (std::size_t x = 0; x < base.n_objects(); ++x) {
      h0[obj("s", x)] = F.obj(x);
      h0[obj("t", x)] = G.obj(x);
    }
    for (std::size_t f = 0; f < base.n_morphisms(); ++f) {
      h1[mor("id_s", f)] = F.mor(f);
      h1[mor("id_t", f)] = G.mor(f);
      h1[mor("u", f)] = B.compose(a.at(base.tgt(f)), F.mor(f));
    }
    return Functor(P, B, FinFn(P.objects(), B.objects(), std::move(h0)), FinFn(P.morphisms(), B.morphisms(), std::move(h1)));
  }

  /// The transformation corresponding to H: 2_E x A -> B.
  NatTrans untranspose(const Functor& H) const {
    if (!(H.dom() == object())) throw Error(ErrorKind::ShapeMismatch, "functor is not defined on the copower");
    const auto& B = H.cod();
    std::vector<std::size_t> f0(base.n_objects()), g0(base.n_objects()), comp(base.n_objects());
    std::vector<std::size_t> f1(base.n_morphisms()), g1(base.n_morphisms());
    for (std::size_t x = 0; x < base.n_objects(); ++x) {
      f0[x] = H.obj(obj("s", x));
      g0[x] = H.obj(obj("t", x));
      comp[x] = H.mor(mor("u", base.id(x)));
    }
    for (std::size_t f = 0; f < base.n_morphisms(); ++f) {
      f1[f] = H.mor(mor("id_s", f));
      g1[f] = H.mor(mor("id_t", f));
    }
    Functor F(base, B, FinFn(base.objects(), B.objects(), std::move(f0)), FinFn(base.morphisms(), B.morphisms(), std::move(f1)));
    Functor G(base, B, FinFn(base.objects(), B.objects(), std::move(g0)), FinFn(base.morphisms(), B.morphisms(), std::move(g1)));
    return NatTrans(F, G, FinFn(base.objects(), B.morphisms(), std::move(comp)));
  }
};

inline Copower2 copower2(const InternalCat& a) { return Copower2{a, product_cat(two_E(), a)}; }

// ---------------------------------------------------------------------------
// Coequalisers of functors that agree on objects

/// Intermediate data of the agree-on-objects construction. L holds the
/// whiskered triples (x|a|y) standing for x . F(a) . y.
struct CoequaliserTrace {
  FinObj L;
  FinFn Ftilde;  ///< L -> B3, (x|a|y) |-> (x|F a|y)
  FinFn Gtilde;  ///< L -> B3, (x|a|y) |-> (x|G a|y)
  FinFn m2;      ///< B3 -> B1, triple composite
  FinFn Q1;      ///< B1 -> C1
  FinObj C1;
  FinFn Q2;  ///< B2 -> C2
  FinObj C2;
  FinFn Q3;  ///< B3 -> C3
  FinObj C3;
  FinFn u;  ///< B3 x_{B0} C1 -> C1, (h|g|f) acting on the left of a class
  FinObj B3xC1;
};

struct AgreeCoeq {
  Functor Q;
  CoequaliserTrace trace;

  const InternalCat& object() const noexcept { return Q.cod(); }
};

namespace detail {

/// Composition B2 -> B1 together with the carrier B2 = B1 x_{B0} B1.
inline std::pair<Pullback, FinFn> composable_pairs(const InternalCat& c) {
  auto pb = pullback(c.source(), c.target());
  std::vector<std::size_t> m(pb.object.size());
  for (std::size_t k = 0; k < m.size(); ++k) m[k] = c.compose(pb.p1(k), pb.p2(k));
  FinFn mf(pb.object, c.morphisms(), std::move(m));
  return {std::move(pb), std::move(mf)};
}

}  // namespace detail

/// With `literal_trace` unset the level-3 trace fields (Ftilde, Gtilde, m2,
/// Q3, C3, u, B3xC1) stay empty; they grow with the fourth power of |B1|.
inline AgreeCoeq coequalize_on_objects(const Functor& F, const Functor& G, bool literal_trace = true) {
  if (!parallel(F, G)) throw Error(ErrorKind::NotParallel, "functors do not share domain and codomain");
  if (!(F.on_objects() == G.on_objects())) throw Error(ErrorKind::ObjectsDisagree, "functors differ on objects");
  const auto& A = F.dom();
  const auto& B = F.cod();
  CoequaliserTrace tr;

  std::vector<std::string> labels;
  std::vector<std::array<std::size_t, 3>> triples;
  for (std::size_t a = 0; a < A.n_morphisms(); ++a) {
    auto top = F.obj(A.tgt(a));
    auto bottom = F.obj(A.src(a));
    for (std::size_t w = 0; w < B.n_objects(); ++w)
      for (auto x : B.hom(top, w))
        for (std::size_t v = 0; v < B.n_objects(); ++v)
          for (auto y : B.hom(v, bottom)) {
            triples.push_back({x, a, y});
            labels.push_back("(" + B.mor_label(x) + "|" + A.mor_label(a) + "|" + B.mor_label(y) + ")");
          }
  }
  tr.L = FinObj(labels);
  std::optional<NerveLevel> B3;
  if (literal_trace) {
    B3 = nerve_level(B, 3);
    tr.m2 = B3->composite;
  }
  std::vector<std::size_t> ft(tr.L.size()), gt(tr.L.size());
  for (std::size_t k = 0; k < triples.size(); ++k) {
    auto idx = tr.L.index_of(labels[k]);
    auto [x, a, y] = triples[k];
    if (literal_trace) {
      ft[idx] = B3->index_of({x, F.mor(a), y});
      gt[idx] = B3->index_of({x, G.mor(a), y});
    } else {
      ft[idx] = B.compose(x, B.compose(F.mor(a), y));
      gt[idx] = B.compose(x, B.compose(G.mor(a), y));
    }
  }
  FinFn fl, gl;
  if (literal_trace) {
    tr.Ftilde = FinFn(tr.L, B3->object, std::move(ft));
    tr.Gtilde = FinFn(tr.L, B3->object, std::move(gt));
    fl = compose_fn(tr.m2, tr.Ftilde);
    gl = compose_fn(tr.m2, tr.Gtilde);
  } else {
    fl = FinFn(tr.L, B.morphisms(), std::move(ft));
    gl = FinFn(tr.L, B.morphisms(), std::move(gt));
  }

  auto coeq = coequalizer(fl, gl);
  tr.Q1 = coeq.quotient;
  tr.C1 = coeq.object;

  // Structure maps induced on the quotient.
  auto d0 = factor_through_surjection(tr.Q1, B.source());
  auto d1 = factor_through_surjection(tr.Q1, B.target());
  auto ident = compose_fn(tr.Q1, B.identity());
  auto C2pb = pullback(d0, d1);
  tr.C2 = C2pb.object;
  auto [B2pb, mB] = detail::composable_pairs(B);
  tr.Q2 = C2pb.mediate(compose_fn(tr.Q1, B2pb.p1), compose_fn(tr.Q1, B2pb.p2));
  auto mC = factor_through_surjection(tr.Q2, compose_fn(tr.Q1, mB));

  const auto n = tr.C1.size();
  std::vector<std::size_t> comp(n * n, npos);
  for (std::size_t k = 0; k < tr.C2.size(); ++k) comp[C2pb.p1(k) * n + C2pb.p2(k)] = mC(k);
  InternalCat C(CatData{B.objects(), tr.C1, d0, d1, ident, std::move(comp)});
  Functor Q(B, C, FinFn::identity(B.objects()), tr.Q1);
  if (!literal_trace) return AgreeCoeq{std::move(Q), std::move(tr)};

  auto C3 = nerve_level(C, 3);
  tr.C3 = C3.object;
  std::vector<std::size_t> q3(B3->object.size());
  for (const auto& [t, idx] : B3->index) q3[idx] = C3.index_of({tr.Q1(t[0]), tr.Q1(t[1]), tr.Q1(t[2])});
  tr.Q3 = FinFn(B3->object, C3.object, std::move(q3));

  // u is induced from Q1 . m3 on B3 x_{B0} B1 along B3 x_{B0} Q1.
  auto d0B3 = compose_fn(B.source(), B3->projections[2]);
  auto BB = pullback(d0B3, B.target());
  auto BC = pullback(d0B3, C.target());
  tr.B3xC1 = BC.object;
  auto along = BC.mediate(BB.p1, compose_fn(tr.Q1, BB.p2));
  std::vector<std::size_t> m3(BB.object.size());
  for (std::size_t k = 0; k < m3.size(); ++k) m3[k] = tr.Q1(B.compose(tr.m2(BB.p1(k)), BB.p2(k)));
  tr.u = factor_through_surjection(along, FinFn(BB.object, tr.C1, std::move(m3)));
  return AgreeCoeq{std::move(Q), std::move(tr)};
}

// ---------------------------------------------------------------------------
// Coequifiers

struct CoequifierResult {
  Functor Q;
  Functor alpha_hat;
  Functor beta_hat;
  CoequaliserTrace trace;

  const InternalCat& object() const noexcept { return Q.cod(); }
};

inline CoequifierResult coequifier(const NatTrans& a, const NatTrans& b) {
  if (!(a.src() == b.src()) || !(a.tgt() == b.tgt()))
    throw Error(ErrorKind::NotParallel2Cells, "transformations do not share source and target functors");
  auto cp = copower2(a.src().dom());
  auto ah = cp.transpose(a);
  auto bh = cp.transpose(b);
  auto r = coequalize_on_objects(ah, bh);
  return CoequifierResult{std::move(r.Q), std::move(ah), std::move(bh), std::move(r.trace)};
}

}  // namespace intercat
