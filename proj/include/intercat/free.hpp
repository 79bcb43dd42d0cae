#pragma once

// Free categories on graphs, finitely presented categories, and bounded
// materialisation of possibly infinite ones.
//
// A quotient of a free category is described by a RewriteGraph: some edges
// act as identities (erasable) and some consecutive pairs fuse into a single
// edge. When erasure and fusion come from a category, the rewriting is
// length-reducing and confluent, so every path has a unique normal form and
// the normal forms are closed under prefixes. Materialising at bound N keeps
// the normal forms shorter than N and collapses the ideal generated by the
// longer ones into one absorbing morphism per hom-set.

#include <algorithm>
#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

struct RewriteGraph {
  Graph graph;
  std::vector<bool> erasable;     ///< per edge
  std::vector<std::size_t> fuse;  ///< fuse[a * |E| + b]: a then b, or npos

  static RewriteGraph free(const Graph& g) {
    const auto n = g.edges.size();
    return RewriteGraph{g, std::vector<bool>(n, false), std::vector<std::size_t>(n * n, npos)};
  }

  std::size_t fused(std::size_t a, std::size_t b) const { return fuse[a * graph.edges.size() + b]; }

  /// Normal form of a path, by stack reduction.
  Path normalize(std::size_t src, const std::vector<std::size_t>& edges) const {
    std::vector<std::size_t> st;
    for (auto e : edges) {
      if (erasable[e]) continue;
      bool dropped = false;
      while (!st.empty()) {
        auto r = fused(st.back(), e);
        if (r == npos) break;
        st.pop_back();
        if (erasable[r]) {
          dropped = true;
          break;
        }
        e = r;
      }
      if (!dropped) st.push_back(e);
    }
    std::size_t tgt = st.empty() ? src : graph.tgt(st.back());
    return Path{src, tgt, std::move(st)};
  }

  Path concat(const Path& p, const Path& q) const {
    if (p.tgt != q.src) throw Error(ErrorKind::DomainMismatch, "paths do not meet");
    auto e = p.edges;
    e.insert(e.end(), q.edges.begin(), q.edges.end());
    return normalize(p.src, e);
  }

  /// Normal-form successor: b may follow a in a normal form.
  bool follows(std::size_t a, std::size_t b) const {
    return !erasable[b] && graph.tgt(a) == graph.src(b) && fused(a, b) == npos;
  }
};

struct MaterializedCat {
  InternalCat cat;
  bool exact = false;
  std::size_t bound = 0;
  std::vector<Path> representatives;  ///< per morphism: its normal form, or least member of a collapsed class
  std::vector<bool> collapsed;        ///< per morphism: absorbs every long normal form of its hom-set
};

namespace detail {

using PathKey = std::pair<std::size_t, std::vector<std::size_t>>;

inline PathKey key_of(const Path& p) { return {p.src, p.edges}; }

}  // namespace detail

/// Materialise the quotient described by rg, keeping normal forms shorter
/// than bound. `exact` holds when no two distinct morphisms were collapsed.
class Materializer {
 public:
  Materializer(RewriteGraph rg, std::size_t bound) : rg_(std::move(rg)), bound_(bound) {
    if (bound_ < 1) throw Error(ErrorKind::PreconditionViolated, "materialisation bound must be at least 1");
    build();
  }

  const RewriteGraph& rewrite() const noexcept { return rg_; }
  const MaterializedCat& result() const noexcept { return out_; }

  /// Morphism index of the class of a normal form.
  std::size_t class_of(const Path& nf) const {
    if (nf.length() < bound_) {
      auto it = short_index_.find(detail::key_of(nf));
      if (it != short_index_.end()) return it->second;
    }
    return top_.at({nf.src, nf.tgt});
  }

  /// Morphism index of the class of an arbitrary path.
  std::size_t class_of_path(std::size_t src, const std::vector<std::size_t>& edges) const {
    return class_of(rg_.normalize(src, edges));
  }

 private:
  void build();

  RewriteGraph rg_;
  std::size_t bound_;
  std::map<detail::PathKey, std::size_t> short_index_;
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> top_;
  MaterializedCat out_;
};

inline void Materializer::build() {
  const auto& g = rg_.graph;
  const auto nv = g.vertices.size();
  const auto ne = g.edges.size();
  std::vector<std::size_t> gens;
  for (std::size_t e = 0; e < ne; ++e)
    if (!rg_.erasable[e]) gens.push_back(e);

  // Normal forms by length, up to length bound_.
  std::vector<std::vector<Path>> layers(1);
  for (std::size_t v = 0; v < nv; ++v) layers[0].push_back(empty_path(v));
  for (std::size_t len = 1; len <= bound_; ++len) {
    std::vector<Path> next;
    for (const auto& p : layers.back())
      for (auto e : gens) {
        bool ok = p.edges.empty() ? g.src(e) == p.src : rg_.follows(p.edges.back(), e);
        if (!ok) continue;
        Path q = p;
        q.edges.push_back(e);
        q.tgt = g.tgt(e);
        next.push_back(std::move(q));
      }
    std::sort(next.begin(), next.end());
    layers.push_back(std::move(next));
  }
  const auto& longest = layers[bound_];

  // Short members of the ideal generated by the long normal forms. One-edge
  // products change length by at most one, so only length-bound_ forms can
  // drop below the bound.
  std::set<detail::PathKey> jshort;
  std::deque<Path> work;
  auto consider = [&](const Path& r) {
    if (r.length() < bound_ && jshort.insert(detail::key_of(r)).second) work.push_back(r);
  };
  auto multiply_all = [&](const Path& p) {
    for (auto e : gens) {
      if (g.src(e) == p.tgt) consider(rg_.concat(p, Path{g.src(e), g.tgt(e), {e}}));
      if (g.tgt(e) == p.src) consider(rg_.concat(Path{g.src(e), g.tgt(e), {e}}, p));
    }
  };
  for (const auto& p : longest) multiply_all(p);
  while (!work.empty()) {
    auto p = work.front();
    work.pop_front();
    multiply_all(p);
  }

  // Long normal forms continue from the last edge through the follow relation.
  // cnt[e][w]: number of continuations of a form ending in e that end at w,
  // saturating at 2. dist[e][w]: fewest extra edges to end at w.
  std::vector<std::vector<unsigned>> cnt(ne, std::vector<unsigned>(nv, 0));
  std::vector<std::vector<std::size_t>> dist(ne, std::vector<std::size_t>(nv, npos));
  std::vector<std::vector<std::size_t>> succ(ne);
  for (auto a : gens)
    for (auto b : gens)
      if (rg_.follows(a, b)) succ[a].push_back(b);
  for (bool changed = true; changed;) {
    changed = false;
    for (auto e : gens)
      for (std::size_t w = 0; w < nv; ++w) {
        unsigned c = g.tgt(e) == w ? 1u : 0u;
        std::size_t d = g.tgt(e) == w ? 0 : npos;
        for (auto f : succ[e]) {
          c = std::min(2u, c + cnt[f][w]);
          if (dist[f][w] != npos) d = std::min(d, dist[f][w] + 1);
        }
        if (c != cnt[e][w] || d != dist[e][w]) {
          cnt[e][w] = c;
          dist[e][w] = d;
          changed = true;
        }
      }
  }

  // Collapsed classes and their least members.
  std::map<std::pair<std::size_t, std::size_t>, Path> least;
  std::map<std::pair<std::size_t, std::size_t>, unsigned> members;
  for (const auto& k : jshort) {
    auto p = rg_.normalize(k.first, k.second);
    auto vw = std::make_pair(p.src, p.tgt);
    members[vw] = std::min(2u, members[vw] + 1);
    auto it = least.find(vw);
    if (it == least.end() || p < it->second) least[vw] = p;
  }
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> long_len;
  for (const auto& p : longest)
    for (std::size_t w = 0; w < nv; ++w) {
      auto e = p.edges.back();
      if (cnt[e][w] == 0) continue;
      auto vw = std::make_pair(p.src, w);
      members[vw] = std::min(2u, members[vw] + cnt[e][w]);
      auto len = bound_ + dist[e][w];
      auto it = long_len.find(vw);
      if (it == long_len.end() || len < it->second) long_len[vw] = len;
    }
  for (const auto& [vw, len] : long_len) {
    if (least.count(vw)) continue;
    auto [v, w] = vw;
    // Least prefix of length bound_ that can still reach w in len edges, then
    // greedy extension.
    const Path* best = nullptr;
    for (const auto& p : longest)
      if (p.src == v && dist[p.edges.back()][w] == len - bound_ && (!best || p < *best)) best = &p;
    Path q = *best;
    while (q.length() < len) {
      auto rest = len - q.length();
      for (auto f : succ[q.edges.back()])
        if (dist[f][w] == rest - 1) {
          q.edges.push_back(f);
          q.tgt = g.tgt(f);
          break;
        }
    }
    least[vw] = q;
  }

  bool exact = true;
  for (const auto& [vw, c] : members)
    if (c > 1) exact = false;

  // Morphisms: short normal forms outside the ideal, then collapsed classes.
  std::vector<Path> reps;
  std::vector<bool> coll;
  for (std::size_t len = 0; len < bound_; ++len)
    for (const auto& p : layers[len])
      if (!jshort.count(detail::key_of(p))) {
        reps.push_back(p);
        coll.push_back(false);
      }
  for (const auto& [vw, p] : least) {
    reps.push_back(p);
    coll.push_back(true);
  }
  std::vector<std::string> labels;
  for (const auto& p : reps) labels.push_back(path_label(g, p));
  FinObj M(labels);
  const auto n = M.size();
  std::vector<Path> ordered(n);
  std::vector<bool> ordered_coll(n);
  for (std::size_t k = 0; k < reps.size(); ++k) {
    auto idx = M.index_of(labels[k]);
    ordered[idx] = reps[k];
    ordered_coll[idx] = coll[k];
    if (coll[k])
      top_[{reps[k].src, reps[k].tgt}] = idx;
    else
      short_index_[detail::key_of(reps[k])] = idx;
  }

  std::vector<std::size_t> s(n), t(n), ident(nv), comp(n * n, npos);
  for (std::size_t k = 0; k < n; ++k) {
    s[k] = ordered[k].src;
    t[k] = ordered[k].tgt;
  }
  for (std::size_t v = 0; v < nv; ++v) ident[v] = class_of(empty_path(v));
  // act[a * ne + e]: class of a followed by the generator e. Stack reduction
  // reads left to right, so a composite is a fold of act over b's edges.
  std::vector<std::size_t> act(n * ne, npos);
  for (std::size_t a = 0; a < n; ++a)
    for (auto e : gens)
      if (g.src(e) == t[a])
        act[a * ne + e] = ordered_coll[a] ? top_.at({s[a], g.tgt(e)}) : class_of(rg_.concat(ordered[a], Path{g.src(e), g.tgt(e), {e}}));
  std::vector<std::vector<std::size_t>> out_of(nv);
  for (std::size_t k = 0; k < n; ++k) out_of[s[k]].push_back(k);
  for (std::size_t a = 0; a < n; ++a)
    for (auto b : out_of[t[a]]) {
      std::size_t r = a;
      if (ordered_coll[a] || ordered_coll[b])
        r = top_.at({s[a], t[b]});
      else
        for (auto e : ordered[b].edges) r = act[r * ne + e];
      comp[b * n + a] = r;
    }
  out_.cat = InternalCat(CatData{g.vertices, M, FinFn(M, g.vertices, std::move(s)), FinFn(M, g.vertices, std::move(t)),
                                 FinFn(g.vertices, M, std::move(ident)), std::move(comp)},
                         InternalCat::AssociativeByConstruction{});
  out_.exact = exact;
  out_.bound = bound_;
  out_.representatives = std::move(ordered);
  out_.collapsed = std::move(ordered_coll);
}

// ---------------------------------------------------------------------------
// Presentations

struct Presentation {
  Graph gens;
  std::vector<std::pair<Path, Path>> rels;
};

inline Verdict validate_presentation(const Presentation& p) {
  for (std::size_t k = 0; k < p.rels.size(); ++k) {
    const auto& [l, r] = p.rels[k];
    if (!is_path(p.gens, l) || !is_path(p.gens, r))
      return Verdict::fail("relation paths", "relation " + std::to_string(k) + " uses a non-path");
    if (l.src != r.src || l.tgt != r.tgt)
      return Verdict::fail("relation endpoints", "relation " + std::to_string(k) + " relates non-parallel paths");
  }
  return Verdict::pass();
}

enum class WordVerdict { Equal, Distinct, Unknown };

inline const char* to_string(WordVerdict v) {
  switch (v) {
    case WordVerdict::Equal: return "Equal";
    case WordVerdict::Distinct: return "Distinct";
    case WordVerdict::Unknown: return "Unknown";
  }
  return "Unknown";
}

/// Decide p = q by breadth-first rewriting with the relations in both
/// directions. Distinct means the whole class of p was exhausted.
inline WordVerdict words_equal(const Presentation& pres, const Path& p, const Path& q, std::size_t budget = 10000) {
  if (p.src != q.src || p.tgt != q.tgt) return WordVerdict::Distinct;
  if (p == q) return WordVerdict::Equal;
  const auto& g = pres.gens;
  std::set<std::vector<std::size_t>> seen{p.edges};
  std::deque<std::vector<std::size_t>> queue{p.edges};
  auto vertex_at = [&](const std::vector<std::size_t>& w, std::size_t i) { return i == 0 ? p.src : g.tgt(w[i - 1]); };
  while (!queue.empty()) {
    auto w = std::move(queue.front());
    queue.pop_front();
    for (const auto& [l0, r0] : pres.rels)
      for (int dir = 0; dir < 2; ++dir) {
        const auto& l = dir ? r0 : l0;
        const auto& r = dir ? l0 : r0;
        for (std::size_t i = 0; i + l.edges.size() <= w.size(); ++i) {
          if (vertex_at(w, i) != l.src) continue;
          if (!std::equal(l.edges.begin(), l.edges.end(), w.begin() + static_cast<std::ptrdiff_t>(i))) continue;
          std::vector<std::size_t> next(w.begin(), w.begin() + static_cast<std::ptrdiff_t>(i));
          next.insert(next.end(), r.edges.begin(), r.edges.end());
          next.insert(next.end(), w.begin() + static_cast<std::ptrdiff_t>(i + l.edges.size()), w.end());
          if (next == q.edges) return WordVerdict::Equal;
          if (seen.insert(next).second) {
            if (seen.size() > budget) return WordVerdict::Unknown;
            queue.push_back(std::move(next));
          }
        }
      }
  }
  return WordVerdict::Distinct;
}

// ---------------------------------------------------------------------------
// Free categories

struct FreeCategory {
  Presentation presentation;
  MaterializedCat materialized;
  GraphMorphism eta;  ///< the unit, into the underlying graph of the materialisation
};

inline FreeCategory free_category(const Graph& g, std::size_t bound) {
  Materializer mat(RewriteGraph::free(g), bound);
  const auto& M = mat.result();
  std::vector<std::size_t> e1(g.edges.size());
  for (std::size_t e = 0; e < e1.size(); ++e) e1[e] = mat.class_of(Path{g.src(e), g.tgt(e), {e}});
  GraphMorphism eta(g, underlying_graph(M.cat), FinFn::identity(g.vertices), FinFn(g.edges, M.cat.morphisms(), std::move(e1)));
  return FreeCategory{Presentation{g, {}}, M, std::move(eta)};
}

}  // namespace intercat
