#pragma once

// Discrete Conduché fibrations, pullbacks of categories, the two-point
// suspension and pullback-stability experiments.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intercat/colimits.hpp"
#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

// ---------------------------------------------------------------------------
// Discrete Conduché fibrations

/// The comparison X2 -> X1 x_{Y1} Y2, (g|f) |-> (g.f, (Fg|Ff)), is a bijection.
inline Verdict is_discrete_conduche(const Functor& F) {
  const auto& X = F.dom();
  const auto& Y = F.cod();
  auto X2 = nerve_level(X, 2);
  auto Y2 = nerve_level(Y, 2);
  auto target = pullback(F.on_morphisms(), Y2.composite);
  std::vector<std::size_t> hits(target.object.size(), npos);
  for (const auto& [t, idx] : X2.index) {
    auto y = Y2.index_of({F.mor(t[0]), F.mor(t[1])});
    auto k = target.index(X2.composite(idx), y);
    if (hits[k] != npos)
      return Verdict::fail("unique lifting", "two lifts of " + target.object.label(k) + ": " + X2.object.label(hits[k]) +
                                                 " and " + X2.object.label(idx));
    hits[k] = idx;
  }
  for (std::size_t k = 0; k < hits.size(); ++k)
    if (hits[k] == npos) return Verdict::fail("lifting", "no lift of the factorisation " + target.object.label(k));
  return Verdict::pass();
}

/// The level-3 square X3 -> X1 x_{Y1} Y3 is a bijection. Requires F to be a
/// discrete Conduché fibration.
inline Verdict conduche_cube_check(const Functor& F) {
  if (!is_discrete_conduche(F)) throw Error(ErrorKind::PreconditionViolated, "functor is not a discrete Conduché fibration");
  const auto& X = F.dom();
  const auto& Y = F.cod();
  auto X3 = nerve_level(X, 3);
  auto Y3 = nerve_level(Y, 3);
  auto target = pullback(F.on_morphisms(), Y3.composite);
  std::vector<std::size_t> hits(target.object.size(), npos);
  for (const auto& [t, idx] : X3.index) {
    auto y = Y3.index_of({F.mor(t[0]), F.mor(t[1]), F.mor(t[2])});
    auto k = target.index(X3.composite(idx), y);
    if (hits[k] != npos) return Verdict::fail("unique lifting of triples", target.object.label(k));
    hits[k] = idx;
  }
  for (std::size_t k = 0; k < hits.size(); ++k)
    if (hits[k] == npos) return Verdict::fail("lifting of triples", target.object.label(k));
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Pullbacks

struct CatPullback {
  InternalCat object;
  Functor p1;
  Functor p2;
  Pullback objects;
  Pullback morphisms;

  /// The functor W -> object with projections a and b.
  Functor mediate(const Functor& a, const Functor& b) const {
    if (!(a.dom() == b.dom())) throw Error(ErrorKind::ShapeMismatch, "cone legs have different domains");
    return Functor(a.dom(), object, objects.mediate(a.on_objects(), b.on_objects()),
                   morphisms.mediate(a.on_morphisms(), b.on_morphisms()));
  }
};

inline CatPullback pullback_cat(const Functor& F, const Functor& P) {
  if (!(F.cod() == P.cod())) throw Error(ErrorKind::ShapeMismatch, "functors do not share a codomain");
  const auto& X = F.dom();
  const auto& Y = P.dom();
  auto P0 = pullback(F.on_objects(), P.on_objects());
  auto P1 = pullback(F.on_morphisms(), P.on_morphisms());
  const auto n = P1.object.size();
  std::vector<std::size_t> s(n), t(n), ident(P0.object.size()), comp(n * n, npos);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = P0.index(X.src(P1.p1(k)), Y.src(P1.p2(k)));
    t[k] = P0.index(X.tgt(P1.p1(k)), Y.tgt(P1.p2(k)));
  }
  for (std::size_t k = 0; k < ident.size(); ++k) ident[k] = P1.index(X.id(P0.p1(k)), Y.id(P0.p2(k)));
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto x = X.compose(P1.p1(a), P1.p1(b));
      auto y = Y.compose(P1.p2(a), P1.p2(b));
      if (x != npos && y != npos) comp[a * n + b] = P1.index(x, y);
    }
  InternalCat pb(CatData{P0.object, P1.object, FinFn(P1.object, P0.object, std::move(s)), FinFn(P1.object, P0.object, std::move(t)),
                         FinFn(P0.object, P1.object, std::move(ident)), std::move(comp)});
  Functor p1(pb, X, P0.p1, P1.p1);
  Functor p2(pb, Y, P0.p2, P1.p2);
  return CatPullback{pb, p1, p2, P0, P1};
}

// ---------------------------------------------------------------------------
// Two-point suspension

/// Objects 0.* and 1.*; morphisms 0.* and 2.* (the identities) and 1.x : 0.* -> 1.* for x in X.
inline InternalCat suspend(const FinObj& X) {
  auto one = FinObj::terminal();
  auto O = coproduct({one, one});
  auto M = coproduct({one, X, one});
  const auto n = M.object.size();
  std::vector<std::size_t> s(n), t(n), comp(n * n, npos);
  for (std::size_t k = 0; k < n; ++k) {
    auto part = M.origin[k].first;
    s[k] = part == 2 ? 1 : 0;
    t[k] = part == 0 ? 0 : 1;
  }
  std::vector<std::size_t> ident{M.injections[0](0), M.injections[2](0)};
  for (std::size_t k = 0; k < n; ++k) {
    comp[ident[t[k]] * n + k] = k;
    comp[k * n + ident[s[k]]] = k;
  }
  return InternalCat(CatData{O.object, M.object, FinFn(M.object, O.object, std::move(s)), FinFn(M.object, O.object, std::move(t)),
                             FinFn(O.object, M.object, std::move(ident)), std::move(comp)});
}

inline Functor suspend_fn(const FinFn& f) {
  auto X = suspend(f.dom());
  auto Y = suspend(f.cod());
  std::vector<std::size_t> m(X.n_morphisms());
  for (std::size_t k = 0; k < m.size(); ++k) {
    const auto& l = X.mor_label(k);
    if (l[0] == '1')
      m[k] = Y.morphisms().index_of(tag_label(1, f.apply(l.substr(2))));
    else
      m[k] = Y.morphisms().index_of(l);
  }
  return Functor(X, Y, FinFn::identity(X.objects()), FinFn(X.morphisms(), Y.morphisms(), std::move(m)));
}

/// The suspension of the coequaliser of f, g agrees with the coequaliser of
/// the suspended pair, through the comparison induced by the quotient.
inline Verdict suspension_coequalizer_check(const FinFn& f, const FinFn& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(ErrorKind::DomainMismatch, "maps are not parallel");
  auto q = coequalizer(f, g);
  auto Sq = suspend_fn(q.quotient);
  auto r = coequalize_on_objects(suspend_fn(f), suspend_fn(g));
  FinFn phi;
  try {
    phi = factor_through_surjection(r.trace.Q1, Sq.on_morphisms());
  } catch (const Error& e) {
    return Verdict::fail("comparison exists", e.what());
  }
  if (!phi.is_bijective()) return Verdict::fail("comparison is bijective", "morphism counts " + std::to_string(phi.dom().size()) +
                                                                               " vs " + std::to_string(phi.cod().size()));
  Functor iso(r.object(), Sq.cod(), FinFn::identity(r.object().objects()), phi);
  if (!(compose(iso, r.Q) == Sq)) return Verdict::fail("comparison commutes", "iso . Q differs from 2[q]");
  return Verdict::pass();
}

/// 2[X x_Z Y] -> 2[X] x_{2[Z]} 2[Y], induced by the suspended projections, is an isomorphism.
inline Verdict suspension_pullback_check(const FinFn& f, const FinFn& g) {
  auto pb = pullback(f, g);
  auto cat_pb = pullback_cat(suspend_fn(f), suspend_fn(g));
  auto cmp = cat_pb.mediate(suspend_fn(pb.p1), suspend_fn(pb.p2));
  if (!cmp.on_objects().is_bijective()) return Verdict::fail("comparison is bijective on objects", "");
  if (!cmp.on_morphisms().is_bijective())
    return Verdict::fail("comparison is bijective on morphisms", std::to_string(cmp.dom().n_morphisms()) + " vs " +
                                                                     std::to_string(cmp.cod().n_morphisms()));
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Stability of agree-on-objects coequalisers under pullback

struct StabilityReport {
  InternalCat lhs;  ///< pullback of the coequaliser
  InternalCat rhs;  ///< coequaliser of the pulled-back pair
  std::optional<Functor> iso;  ///< rhs -> lhs
  bool stable = false;
  std::string witness;
};

/// F, G: A -> B live over Y via `over`: B -> Y; `along`: X -> Y.
inline StabilityReport stability_experiment(const Functor& F, const Functor& G, const Functor& over, const Functor& along) {
  if (!parallel(F, G)) throw Error(ErrorKind::ShapeMismatch, "functors are not parallel");
  if (!(F.on_objects() == G.on_objects())) throw Error(ErrorKind::ShapeMismatch, "functors do not agree on objects");
  if (!(over.dom() == F.cod())) throw Error(ErrorKind::ShapeMismatch, "structure functor does not start at the codomain");
  if (!(along.cod() == over.cod())) throw Error(ErrorKind::ShapeMismatch, "pulled-back functor does not land in the base");
  if (!(compose(over, F) == compose(over, G))) throw Error(ErrorKind::ShapeMismatch, "pair does not live over the base");

  auto coeq = coequalize_on_objects(F, G);
  const auto& C = coeq.object();
  Functor c(C, over.cod(), over.on_objects(), factor_through_surjection(coeq.Q.on_morphisms(), over.on_morphisms()));
  auto lhs = pullback_cat(along, c);

  auto pbB = pullback_cat(along, over);
  auto pbA = pullback_cat(along, compose(over, F));
  auto Fs = pbB.mediate(pbA.p1, compose(F, pbA.p2));
  auto Gs = pbB.mediate(pbA.p1, compose(G, pbA.p2));
  auto rhs = coequalize_on_objects(Fs, Gs);
  auto Qs = lhs.mediate(pbB.p1, compose(coeq.Q, pbB.p2));

  StabilityReport out{lhs.object, rhs.object(), std::nullopt, false, {}};
  FinFn phi1;
  try {
    phi1 = factor_through_surjection(rhs.Q.on_morphisms(), Qs.on_morphisms());
  } catch (const Error& e) {
    out.witness = e.what();
    return out;
  }
  if (!phi1.is_bijective()) {
    std::vector<std::size_t> seen(phi1.cod().size(), npos);
    for (std::size_t k = 0; k < phi1.dom().size(); ++k) {
      auto y = phi1(k);
      if (seen[y] != npos) {
        out.witness = "classes " + phi1.dom().label(seen[y]) + " and " + phi1.dom().label(k) + " both map to " + phi1.cod().label(y);
        return out;
      }
      seen[y] = k;
    }
    out.witness = "comparison is not surjective";
    return out;
  }
  out.iso = Functor(rhs.object(), lhs.object, Qs.on_objects(), phi1);
  out.stable = true;
  return out;
}

}  // namespace intercat
