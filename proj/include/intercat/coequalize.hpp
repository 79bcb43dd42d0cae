#pragma once

// Coequalisers of arbitrary parallel pairs, via coequalisers out of discrete
// categories, and the colimits derived from them.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "intercat/colimits.hpp"
#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/free.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

// ---------------------------------------------------------------------------
// Coequalisers out of a discrete category

/// Path-valued data of the construction. Paths live in the graph G, whose
/// edges are the morphisms of B; the unit sends b to the one-edge path [b].
struct DiscreteCoeqTrace {
  FinFn k0;
  Graph G;
  GraphMorphism k;  ///< U(B) -> G, followed by the unit
  std::vector<Path> alpha;  ///< per object x of B: [i x]
  std::vector<Path> beta;   ///< per object x of B: the empty path at k0 x
  FinObj B2;
  std::vector<Path> gamma;  ///< per (g|f) in B2: [g.f]
  std::vector<Path> delta;  ///< per (g|f) in B2: [f ; g]
  /// Present when G has no cycles apart from identity loops, so that the
  /// first coequifier I is finite and the remaining steps run literally.
  std::optional<MaterializedCat> I;
  std::optional<CoequifierResult> t;
  std::optional<Functor> Q_literal;  ///< t . p . k

  /// The first coequifier p on paths: identity edges are dropped.
  Path p(const Path& path, const InternalCat& B) const {
    Path out{path.src, path.tgt, {}};
    for (auto e : path.edges)
      if (!B.is_identity(e)) out.edges.push_back(e);
    return out;
  }
};

struct DiscreteCoeq {
  Functor Q;
  Presentation presentation;
  MaterializedCat materialized;
  DiscreteCoeqTrace trace;
  /// Maps each morphism of B to its generator, or npos for identities.
  std::vector<std::size_t> generator_of;

  bool exact() const noexcept { return materialized.exact; }
  const InternalCat& object() const noexcept { return Q.cod(); }
};

namespace detail {

inline RewriteGraph category_rewrite(const InternalCat& B, const Graph& G) {
  const auto n = B.n_morphisms();
  RewriteGraph rg{G, std::vector<bool>(n), std::vector<std::size_t>(n * n, npos)};
  for (std::size_t f = 0; f < n; ++f) {
    rg.erasable[f] = B.is_identity(f);
    for (std::size_t g = 0; g < n; ++g) rg.fuse[f * n + g] = B.compose(g, f);
  }
  return rg;
}

/// The generating graph without identity edges, with the index translation.
inline std::pair<Graph, std::vector<std::size_t>> reduced_generators(const InternalCat& B, const FinFn& k0) {
  std::vector<std::string> names;
  for (std::size_t f = 0; f < B.n_morphisms(); ++f)
    if (!B.is_identity(f)) names.push_back(B.mor_label(f));
  FinObj E(names);
  std::vector<std::size_t> s(E.size()), t(E.size()), gen(B.n_morphisms(), npos);
  for (std::size_t f = 0; f < B.n_morphisms(); ++f) {
    if (B.is_identity(f)) continue;
    auto e = E.index_of(B.mor_label(f));
    gen[f] = e;
    s[e] = k0(B.src(f));
    t[e] = k0(B.tgt(f));
  }
  Graph g(k0.cod(), E, FinFn(E, k0.cod(), std::move(s)), FinFn(E, k0.cod(), std::move(t)));
  return {std::move(g), std::move(gen)};
}

/// A morphism of B as a path of generators.
inline Path generator_path(const InternalCat& B, const FinFn& k0, const std::vector<std::size_t>& gen, std::size_t f) {
  if (gen[f] == npos) return empty_path(k0(B.src(f)));
  return Path{k0(B.src(f)), k0(B.tgt(f)), {gen[f]}};
}

}  // namespace detail

inline DiscreteCoeq coequalize_from_discrete(const Functor& F, const Functor& G, std::size_t bound, bool literal_trace = true) {
  if (!parallel(F, G)) throw Error(ErrorKind::NotParallel, "functors do not share domain and codomain");
  const auto& A = F.dom();
  if (!A.is_discrete()) throw Error(ErrorKind::DomainNotDiscrete, "domain has non-identity morphisms");
  const auto& B = F.cod();

  DiscreteCoeqTrace tr;
  tr.k0 = coequalizer(F.on_objects(), G.on_objects()).quotient;
  const auto& C0 = tr.k0.cod();
  tr.G = Graph(C0, B.morphisms(), compose_fn(tr.k0, B.source()), compose_fn(tr.k0, B.target()));
  tr.k = GraphMorphism(underlying_graph(B), tr.G, tr.k0, FinFn::identity(B.morphisms()));
  for (std::size_t x = 0; x < B.n_objects(); ++x) {
    auto v = tr.k0(x);
    tr.alpha.push_back(Path{v, v, {B.id(x)}});
    tr.beta.push_back(empty_path(v));
  }
  auto [B2pb, mB] = detail::composable_pairs(B);
  tr.B2 = B2pb.object;
  for (std::size_t k = 0; k < tr.B2.size(); ++k) {
    auto g = B2pb.p1(k), f = B2pb.p2(k);
    auto src = tr.k0(B.src(f)), tgt = tr.k0(B.tgt(g));
    tr.gamma.push_back(Path{src, tgt, {mB(k)}});
    tr.delta.push_back(Path{src, tgt, {f, g}});
  }

  // Normal forms of the congruence generated by [i x] ~ [] and [f ; g] ~ [g.f].
  Materializer mat(detail::category_rewrite(B, tr.G), bound);
  const auto& M = mat.result();
  std::vector<std::size_t> q1(B.n_morphisms());
  for (std::size_t b = 0; b < q1.size(); ++b) q1[b] = mat.class_of_path(tr.k0(B.src(b)), {b});
  Functor Q(B, M.cat, tr.k0, FinFn(B.morphisms(), M.cat.morphisms(), std::move(q1)));

  auto [gens, gen] = detail::reduced_generators(B, tr.k0);
  Presentation pres{gens, {}};
  for (std::size_t k = 0; k < tr.B2.size(); ++k) {
    auto g = B2pb.p1(k), f = B2pb.p2(k);
    if (gen[g] == npos || gen[f] == npos) continue;
    Path lhs{tr.k0(B.src(f)), tr.k0(B.tgt(g)), {gen[f], gen[g]}};
    pres.rels.emplace_back(std::move(lhs), detail::generator_path(B, tr.k0, gen, mB(k)));
  }

  if (literal_trace && is_acyclic(gens)) {
    // I is the free category on the identity-free graph; it is finite here.
    Materializer imat(RewriteGraph::free(gens), gens.vertices.size() + 1);
    tr.I = imat.result();
    const auto& I = tr.I->cat;
    auto in_I = [&](const Path& path) {
      std::vector<std::size_t> edges;
      for (auto e : tr.p(path, B).edges) edges.push_back(gen[e]);
      return imat.class_of(Path{path.src, path.tgt, std::move(edges)});
    };
    auto D = disc(tr.B2);
    std::vector<std::size_t> s0(tr.B2.size()), t0(tr.B2.size()), gc(tr.B2.size()), dc(tr.B2.size());
    for (std::size_t k = 0; k < tr.B2.size(); ++k) {
      s0[k] = tr.gamma[k].src;
      t0[k] = tr.gamma[k].tgt;
      gc[k] = in_I(tr.gamma[k]);
      dc[k] = in_I(tr.delta[k]);
    }
    auto S0 = FinFn(tr.B2, C0, std::move(s0));
    auto T0 = FinFn(tr.B2, C0, std::move(t0));
    Functor S(D, I, S0, compose_fn(I.identity(), S0));
    Functor T(D, I, T0, compose_fn(I.identity(), T0));
    NatTrans gamma(S, T, FinFn(tr.B2, I.morphisms(), std::move(gc)));
    NatTrans delta(S, T, FinFn(tr.B2, I.morphisms(), std::move(dc)));
    tr.t = coequifier(gamma, delta);
    const auto& t = tr.t->Q;
    std::vector<std::size_t> ql(B.n_morphisms());
    for (std::size_t b = 0; b < ql.size(); ++b) ql[b] = t.mor(in_I(Path{tr.k0(B.src(b)), tr.k0(B.tgt(b)), {b}}));
    tr.Q_literal = Functor(B, t.cod(), compose_fn(t.on_objects(), tr.k0), FinFn(B.morphisms(), t.cod().morphisms(), std::move(ql)));
  }

  return DiscreteCoeq{std::move(Q), std::move(pres), M, std::move(tr), std::move(gen)};
}

// ---------------------------------------------------------------------------
// General coequalisers

struct Coeq {
  Functor Q;
  Presentation presentation;
  MaterializedCat materialized;  ///< cat is the codomain of Q
  DiscreteCoeq step1;            ///< K: B -> D
  AgreeCoeq step2;               ///< P: D -> C

  bool exact() const noexcept { return materialized.exact; }
  const InternalCat& object() const noexcept { return Q.cod(); }
  const Functor& K() const noexcept { return step1.Q; }
  const Functor& P() const noexcept { return step2.Q; }
};

inline Coeq coequalize(const Functor& F, const Functor& G, std::size_t bound, bool literal_trace = true) {
  if (!parallel(F, G)) throw Error(ErrorKind::NotParallel, "functors do not share domain and codomain");
  const auto& A = F.dom();
  const auto& B = F.cod();
  auto eps = counit(A);
  auto step1 = coequalize_from_discrete(compose(F, eps), compose(G, eps), bound, literal_trace);
  const auto& K = step1.Q;
  auto step2 = coequalize_on_objects(compose(K, F), compose(K, G), literal_trace);
  auto Q = compose(step2.Q, K);

  const auto& D = step1.materialized;
  const auto& C = step2.Q.cod();
  MaterializedCat M{C, D.exact, D.bound, std::vector<Path>(C.n_morphisms()), std::vector<bool>(C.n_morphisms(), false)};
  for (std::size_t d = D.cat.n_morphisms(); d-- > 0;) {
    auto c = step2.Q.mor(d);
    M.representatives[c] = D.representatives[d];
    M.collapsed[c] = M.collapsed[c] || D.collapsed[d];
  }

  Presentation pres = step1.presentation;
  const auto& k0 = step1.trace.k0;
  for (std::size_t a = 0; a < A.n_morphisms(); ++a) {
    auto l = detail::generator_path(B, k0, step1.generator_of, F.mor(a));
    auto r = detail::generator_path(B, k0, step1.generator_of, G.mor(a));
    if (!(l == r)) pres.rels.emplace_back(std::move(l), std::move(r));
  }
  return Coeq{std::move(Q), std::move(pres), std::move(M), std::move(step1), std::move(step2)};
}

// ---------------------------------------------------------------------------
// Pushouts

struct Pushout {
  Coeq coeq;
  CatCoproduct sum;
  Functor inl;
  Functor inr;

  const InternalCat& object() const noexcept { return coeq.object(); }
  bool exact() const noexcept { return coeq.exact(); }
};

inline Pushout pushout(const Functor& F, const Functor& G, std::size_t bound = 8) {
  if (!(F.dom() == G.dom())) throw Error(ErrorKind::ShapeMismatch, "functors do not share a domain");
  auto sum = coproduct_cat({F.cod(), G.cod()});
  auto coeq = coequalize(compose(sum.injections[0], F), compose(sum.injections[1], G), bound);
  auto inl = compose(coeq.Q, sum.injections[0]);
  auto inr = compose(coeq.Q, sum.injections[1]);
  return Pushout{std::move(coeq), std::move(sum), std::move(inl), std::move(inr)};
}

// ---------------------------------------------------------------------------
// Coinserters of parallel maps of sets

struct Coinserter {
  Pushout po;
  Functor inj;     ///< disc(V) -> object
  NatTrans lambda;  ///< inj . disc(f) => inj . disc(g)

  const InternalCat& object() const noexcept { return po.object(); }
  bool exact() const noexcept { return po.exact(); }
};

inline Functor disc_fn(const FinFn& f) { return Functor(disc(f.dom()), disc(f.cod()), f, f); }

inline Coinserter coinserter(const FinFn& f, const FinFn& g, std::size_t bound = 8) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(ErrorKind::DomainMismatch, "maps are not parallel");
  auto X = disc(f.dom());
  auto two = copower2(X);
  auto pair = coproduct_cat({X, X});
  auto to_V = pair.copair({disc_fn(f), disc_fn(g)}, disc(f.cod()));
  std::vector<std::size_t> s0(f.dom().size()), t0(f.dom().size()), s1(f.dom().size()), t1(f.dom().size());
  for (std::size_t x = 0; x < s0.size(); ++x) {
    s0[x] = two.obj("s", x);
    t0[x] = two.obj("t", x);
    s1[x] = two.mor("id_s", x);
    t1[x] = two.mor("id_t", x);
  }
  const auto& P = two.object();
  Functor at_s(X, P, FinFn(X.objects(), P.objects(), std::move(s0)), FinFn(X.morphisms(), P.morphisms(), std::move(s1)));
  Functor at_t(X, P, FinFn(X.objects(), P.objects(), std::move(t0)), FinFn(X.morphisms(), P.morphisms(), std::move(t1)));
  auto ends = pair.copair({at_s, at_t}, P);
  auto po = pushout(to_V, ends, bound);
  const auto& cc = po.object();
  std::vector<std::size_t> lam(f.dom().size());
  for (std::size_t x = 0; x < lam.size(); ++x) lam[x] = po.inr.mor(two.mor("u", x));
  auto inj = po.inl;
  NatTrans lambda(compose(inj, disc_fn(f)), compose(inj, disc_fn(g)), FinFn(f.dom(), cc.morphisms(), std::move(lam)));
  return Coinserter{std::move(po), std::move(inj), std::move(lambda)};
}

// ---------------------------------------------------------------------------
// Cocommas

/// Cocomma of B <-F- A -G-> C: objects B0 + C0, and besides the morphisms of
/// B and C, heteromorphisms f . lambda_x . g from C-objects to B-objects.
struct Cocomma {
  InternalCat object;
  Functor J;        ///< B -> object
  Functor K;        ///< C -> object
  NatTrans lambda;  ///< K . G => J . F
  FinObj L;         ///< triples (f|x|g)
  FinFn hetero;     ///< L -> heteromorphism classes
};

inline Cocomma cocomma(const Functor& F, const Functor& G) {
  if (!(F.dom() == G.dom())) throw Error(ErrorKind::ShapeMismatch, "functors do not share a domain");
  const auto& A = F.dom();
  const auto& B = F.cod();
  const auto& C = G.cod();

  std::vector<std::string> labels;
  std::vector<std::array<std::size_t, 3>> trip;
  for (std::size_t x = 0; x < A.n_objects(); ++x)
    for (std::size_t w = 0; w < B.n_objects(); ++w)
      for (auto f : B.hom(F.obj(x), w))
        for (std::size_t v = 0; v < C.n_objects(); ++v)
          for (auto g : C.hom(v, G.obj(x))) {
            trip.push_back({f, x, g});
            labels.push_back("(" + B.mor_label(f) + "|" + A.obj_label(x) + "|" + C.mor_label(g) + ")");
          }
  FinObj L(labels);
  std::map<std::array<std::size_t, 3>, std::size_t> lidx;
  for (std::size_t k = 0; k < trip.size(); ++k) lidx[trip[k]] = L.index_of(labels[k]);

  // Naturality, whiskered: (f.Fa | d0 a | g) ~ (f | d1 a | Ga.g).
  std::vector<std::string> wl;
  std::vector<std::size_t> lw, rw;
  for (std::size_t a = 0; a < A.n_morphisms(); ++a)
    for (std::size_t w = 0; w < B.n_objects(); ++w)
      for (auto f : B.hom(F.obj(A.tgt(a)), w))
        for (std::size_t v = 0; v < C.n_objects(); ++v)
          for (auto g : C.hom(v, G.obj(A.src(a)))) {
            wl.push_back("(" + B.mor_label(f) + "|" + A.mor_label(a) + "|" + C.mor_label(g) + ")");
            lw.push_back(lidx.at({B.compose(f, F.mor(a)), A.src(a), g}));
            rw.push_back(lidx.at({f, A.tgt(a), C.compose(G.mor(a), g)}));
          }
  FinObj W(wl);
  std::vector<std::size_t> lws(W.size()), rws(W.size());
  for (std::size_t k = 0; k < wl.size(); ++k) {
    auto i = W.index_of(wl[k]);
    lws[i] = lw[k];
    rws[i] = rw[k];
  }
  auto H = coequalizer(FinFn(W, L, std::move(lws)), FinFn(W, L, std::move(rws)));

  auto O = coproduct({B.objects(), C.objects()});
  auto M = coproduct({B.morphisms(), C.morphisms(), H.object});
  const auto n = M.object.size();
  std::vector<std::size_t> s(n), t(n), ident(O.object.size()), comp(n * n, npos);
  std::vector<std::array<std::size_t, 3>> at(L.size());
  for (const auto& [tr, i] : lidx) at[i] = tr;
  std::vector<std::size_t> hrep(H.object.size(), npos);
  for (std::size_t l = 0; l < L.size(); ++l)
    if (hrep[H.quotient(l)] == npos) hrep[H.quotient(l)] = l;
  for (std::size_t k = 0; k < n; ++k) {
    auto [i, m] = M.origin[k];
    if (i == 0) {
      s[k] = O.injections[0](B.src(m));
      t[k] = O.injections[0](B.tgt(m));
    } else if (i == 1) {
      s[k] = O.injections[1](C.src(m));
      t[k] = O.injections[1](C.tgt(m));
    } else {
      auto [f, x, g] = at[hrep[m]];
      s[k] = O.injections[1](C.src(g));
      t[k] = O.injections[0](B.tgt(f));
    }
  }
  for (std::size_t k = 0; k < ident.size(); ++k) {
    auto [i, x] = O.origin[k];
    ident[k] = i == 0 ? M.injections[0](B.id(x)) : M.injections[1](C.id(x));
  }
  auto set = [&](std::size_t g, std::size_t f, std::size_t gf) {
    auto& slot = comp[g * n + f];
    if (slot != npos && slot != gf) throw Error(ErrorKind::ValidationError, "cocomma composition is not well defined");
    slot = gf;
  };
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      auto [i, g] = M.origin[a];
      auto [j, f] = M.origin[b];
      if (i == j && i < 2) {
        auto gf = i == 0 ? B.compose(g, f) : C.compose(g, f);
        if (gf != npos) set(a, b, M.injections[i](gf));
      }
    }
  // Whiskering heteromorphisms, computed on every member of each class.
  for (std::size_t l = 0; l < L.size(); ++l) {
    auto [f, x, g] = at[l];
    auto h = M.injections[2](H.quotient(l));
    for (std::size_t w = 0; w < B.n_objects(); ++w)
      for (auto b : B.hom(B.tgt(f), w)) set(M.injections[0](b), h, M.injections[2](H.quotient(lidx.at({B.compose(b, f), x, g}))));
    for (std::size_t v = 0; v < C.n_objects(); ++v)
      for (auto c : C.hom(v, C.src(g))) set(h, M.injections[1](c), M.injections[2](H.quotient(lidx.at({f, x, C.compose(g, c)}))));
  }
  InternalCat cc(CatData{O.object, M.object, FinFn(M.object, O.object, std::move(s)), FinFn(M.object, O.object, std::move(t)),
                         FinFn(O.object, M.object, std::move(ident)), std::move(comp)});
  Functor J(B, cc, O.injections[0], M.injections[0]);
  Functor K(C, cc, O.injections[1], M.injections[1]);
  std::vector<std::size_t> lam(A.n_objects());
  for (std::size_t x = 0; x < lam.size(); ++x)
    lam[x] = M.injections[2](H.quotient(lidx.at({B.id(F.obj(x)), x, C.id(G.obj(x))})));
  NatTrans lambda(compose(K, G), compose(J, F), FinFn(A.objects(), cc.morphisms(), std::move(lam)));
  return Cocomma{std::move(cc), std::move(J), std::move(K), std::move(lambda), std::move(L), H.quotient};
}

// ---------------------------------------------------------------------------
// Cycle lifting

/// Every cycle of non-identity morphisms in the quotient graph of B along q0
/// must already be a cycle in B. Reports the shortest offending cycle.
inline Verdict cycles_lift_check(const InternalCat& B, const FinFn& q0) {
  if (!(q0.dom() == B.objects())) throw Error(ErrorKind::DomainMismatch, "object quotient does not start at the objects");
  if (!q0.is_surjective()) throw Error(ErrorKind::NotSurjective, "object quotient is not surjective");
  std::vector<std::size_t> edges;
  for (std::size_t f = 0; f < B.n_morphisms(); ++f)
    if (!B.is_identity(f)) edges.push_back(f);
  const auto nv = q0.cod().size();
  // Shortest quotient path between quotient vertices, as an edge list.
  auto shortest = [&](std::size_t from, std::size_t to) -> std::optional<std::vector<std::size_t>> {
    std::vector<std::size_t> via(nv, npos), prev(nv, npos);
    std::vector<bool> seen(nv, false);
    std::deque<std::size_t> q{from};
    seen[from] = true;
    while (!q.empty()) {
      auto v = q.front();
      q.pop_front();
      if (v == to) break;
      for (auto e : edges)
        if (q0(B.src(e)) == v && !seen[q0(B.tgt(e))]) {
          auto w = q0(B.tgt(e));
          seen[w] = true;
          via[w] = e;
          prev[w] = v;
          q.push_back(w);
        }
    }
    if (!seen[to]) return std::nullopt;
    std::vector<std::size_t> path;
    for (auto v = to; v != from; v = prev[v]) path.push_back(via[v]);
    std::reverse(path.begin(), path.end());
    return path;
  };
  std::optional<std::vector<std::size_t>> best;
  for (auto e : edges)
    for (auto e2 : edges) {
      if (q0(B.tgt(e)) != q0(B.src(e2)) || B.tgt(e) == B.src(e2)) continue;
      // e then e2 meet only in the quotient; close the cycle from e2 back to e.
      std::optional<std::vector<std::size_t>> cyc;
      if (e == e2) {
        cyc = std::vector<std::size_t>{e};
      } else if (auto back = shortest(q0(B.tgt(e2)), q0(B.src(e)))) {
        std::vector<std::size_t> c{e, e2};
        c.insert(c.end(), back->begin(), back->end());
        cyc = c;
      }
      if (cyc && (!best || cyc->size() < best->size())) best = cyc;
    }
  if (!best) return Verdict::pass();
  std::string w;
  for (std::size_t i = 0; i < best->size(); ++i) w += (i ? ";" : "") + B.mor_label((*best)[i]);
  return Verdict::fail("cycle does not lift", w);
}

}  // namespace intercat
