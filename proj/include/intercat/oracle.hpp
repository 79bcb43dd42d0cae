#pragma once

// Brute-force verifiers. Everything here is built from the public value
// types of finset and graphcat only; no colimit construction is consulted.

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

// ---------------------------------------------------------------------------
// Functor enumeration

using Table = std::vector<std::size_t>;

/// Calls fn(F0, F1) for every functor a -> b, in lexicographic order of
/// (F0, F1). Returning false from fn stops the enumeration.
class FunctorEnumerator {
 public:
  FunctorEnumerator(const InternalCat& a, const InternalCat& b) : a_(a), b_(b) {
    const auto n = a_.n_morphisms();
    for (std::size_t f = 0; f < n; ++f)
      if (!a_.is_identity(f)) order_.push_back(f);
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k + 1;
    checks_.assign(order_.size() + 1, {});
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        auto gf = a_.compose(g, f);
        if (gf != npos) checks_[std::max({pos[g], pos[f], pos[gf]})].push_back({g, f, gf});
      }
  }

  template <class Fn>
  void run(Fn&& fn) {
    f0_.assign(a_.n_objects(), 0);
    f1_.assign(a_.n_morphisms(), npos);
    stop_ = false;
    if (a_.n_objects() > 0 && b_.n_objects() == 0) return;
    objects(0, fn);
  }

 private:
  template <class Fn>
  void objects(std::size_t x, Fn& fn) {
    if (stop_) return;
    if (x == a_.n_objects()) {
      for (std::size_t y = 0; y < a_.n_objects(); ++y) f1_[a_.id(y)] = b_.id(f0_[y]);
      for (const auto& c : checks_[0])
        if (b_.compose(f1_[c[0]], f1_[c[1]]) != f1_[c[2]]) return;
      morphisms(0, fn);
      return;
    }
    for (std::size_t y = 0; y < b_.n_objects(); ++y) {
      f0_[x] = y;
      objects(x + 1, fn);
    }
  }

  template <class Fn>
  void morphisms(std::size_t k, Fn& fn) {
    if (stop_) return;
    if (k == order_.size()) {
      if (!fn(static_cast<const Table&>(f0_), static_cast<const Table&>(f1_))) stop_ = true;
      return;
    }
    auto f = order_[k];
    for (auto m : b_.hom(f0_[a_.src(f)], f0_[a_.tgt(f)])) {
      f1_[f] = m;
      bool ok = true;
      for (const auto& c : checks_[k + 1])
        if (b_.compose(f1_[c[0]], f1_[c[1]]) != f1_[c[2]]) {
          ok = false;
          break;
        }
      if (ok) morphisms(k + 1, fn);
      if (stop_) return;
    }
  }

  const InternalCat& a_;
  const InternalCat& b_;
  std::vector<std::size_t> order_;
  std::vector<std::vector<std::array<std::size_t, 3>>> checks_;
  Table f0_, f1_;
  bool stop_ = false;
};

template <class Fn>
void for_each_functor(const InternalCat& a, const InternalCat& b, Fn&& fn) {
  FunctorEnumerator(a, b).run([&](const Table& f0, const Table& f1) {
    if constexpr (std::is_same_v<std::invoke_result_t<Fn&, const Table&, const Table&>, bool>)
      return fn(f0, f1);
    else {
      fn(f0, f1);
      return true;
    }
  });
}

inline std::vector<Functor> enumerate_functors(const InternalCat& a, const InternalCat& b) {
  std::vector<Functor> out;
  for_each_functor(a, b, [&](const Table& f0, const Table& f1) {
    out.emplace_back(a, b, FinFn(a.objects(), b.objects(), f0), FinFn(a.morphisms(), b.morphisms(), f1));
  });
  return out;
}

inline std::size_t count_functors(const InternalCat& a, const InternalCat& b) {
  std::size_t n = 0;
  for_each_functor(a, b, [&](const Table&, const Table&) { ++n; });
  return n;
}

// ---------------------------------------------------------------------------
// Test family: all small categories up to isomorphism

struct TestFamily {
  std::vector<InternalCat> categories;
  std::size_t max_objects = 0;
  std::size_t max_morphisms = 0;

  std::string caps() const { return "(" + std::to_string(max_objects) + " objects, " + std::to_string(max_morphisms) + " morphisms)"; }

  static TestFamily generate(std::size_t max_objects, std::size_t max_morphisms);
};

namespace detail {

struct Shape {
  std::size_t nobj = 0;
  std::vector<std::pair<std::size_t, std::size_t>> ends;  ///< per morphism; identities first
};

constexpr std::size_t kUnknown = npos - 1;

inline bool associative_so_far(const Shape& sh, const std::vector<std::size_t>& comp) {
  const auto n = sh.ends.size();
  for (std::size_t f = 0; f < n; ++f)
    for (std::size_t g = 0; g < n; ++g) {
      if (sh.ends[g].first != sh.ends[f].second) continue;
      auto gf = comp[g * n + f];
      for (std::size_t h = 0; h < n; ++h) {
        if (sh.ends[h].first != sh.ends[g].second) continue;
        auto hg = comp[h * n + g];
        if (gf == kUnknown || hg == kUnknown) continue;
        auto l = comp[h * n + gf];
        auto r = comp[hg * n + f];
        if (l != kUnknown && r != kUnknown && l != r) return false;
      }
    }
  return true;
}

/// Smallest relabelled encoding over object permutations and per-hom-set
/// morphism permutations.
inline std::vector<std::size_t> canonical_code(const Shape& sh, const std::vector<std::size_t>& comp) {
  const auto n = sh.ends.size();
  const auto k = sh.nobj;
  std::vector<std::size_t> sigma(k);
  std::iota(sigma.begin(), sigma.end(), std::size_t{0});
  std::vector<std::size_t> best;
  do {
    // Hom-sets of non-identity morphisms under sigma, in slot order.
    std::vector<std::vector<std::size_t>> slots(k * k);
    for (std::size_t f = k; f < n; ++f) slots[sigma[sh.ends[f].first] * k + sigma[sh.ends[f].second]].push_back(f);
    std::vector<std::size_t> prefix;
    for (const auto& s : slots) prefix.push_back(s.size());
    std::function<void(std::size_t)> rec = [&](std::size_t si) {
      if (si == slots.size()) {
        std::vector<std::size_t> label(n);
        for (std::size_t x = 0; x < k; ++x) label[x] = sigma[x];
        std::size_t next = k;
        for (const auto& s : slots)
          for (auto f : s) label[f] = next++;
        std::vector<std::size_t> code = prefix;
        std::vector<std::size_t> table(n * n, npos);
        for (std::size_t g = 0; g < n; ++g)
          for (std::size_t f = 0; f < n; ++f)
            if (comp[g * n + f] != npos) table[label[g] * n + label[f]] = label[comp[g * n + f]];
        code.insert(code.end(), table.begin(), table.end());
        if (best.empty() || code < best) best = std::move(code);
        return;
      }
      auto& s = slots[si];
      std::sort(s.begin(), s.end());
      do rec(si + 1);
      while (std::next_permutation(s.begin(), s.end()));
    };
    rec(0);
  } while (std::next_permutation(sigma.begin(), sigma.end()));
  return best;
}

inline InternalCat build_family_member(const Shape& sh, const std::vector<std::size_t>& comp) {
  static const char* obj_names[] = {"a", "b", "c", "d"};
  const auto n = sh.ends.size();
  std::vector<std::string> objects, mnames(n);
  for (std::size_t x = 0; x < sh.nobj; ++x) objects.push_back(obj_names[x]);
  for (std::size_t f = 0; f < n; ++f) mnames[f] = f < sh.nobj ? std::string("1") + obj_names[f] : "f" + std::to_string(f - sh.nobj);
  std::vector<MorphismSpec> ms;
  for (std::size_t f = 0; f < n; ++f) ms.push_back({mnames[f], objects[sh.ends[f].first], objects[sh.ends[f].second]});
  std::map<std::string, std::string> ids;
  for (std::size_t x = 0; x < sh.nobj; ++x) ids[objects[x]] = mnames[x];
  std::vector<std::array<std::string, 3>> table;
  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t f = 0; f < n; ++f)
      if (comp[g * n + f] != npos) table.push_back({mnames[g], mnames[f], mnames[comp[g * n + f]]});
  return make_category(objects, ms, ids, table);
}

}  // namespace detail

inline TestFamily TestFamily::generate(std::size_t max_objects, std::size_t max_morphisms) {
  TestFamily fam;
  fam.max_objects = max_objects;
  fam.max_morphisms = max_morphisms;
  fam.categories.push_back(InternalCat());
  for (std::size_t k = 1; k <= max_objects && k <= 4; ++k) {
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t nmor = k; nmor <= max_morphisms; ++nmor) {
      const auto extra = nmor - k;
      // Distribute the non-identity morphisms over the k*k hom-sets.
      std::vector<std::size_t> counts(k * k, 0);
      std::function<void(std::size_t, std::size_t)> distribute = [&](std::size_t slot, std::size_t left) {
        if (slot + 1 == counts.size()) {
          counts[slot] = left;
        } else {
          for (std::size_t c = 0; c <= left; ++c) {
            counts[slot] = c;
            distribute(slot + 1, left - c);
          }
          return;
        }
        detail::Shape sh;
        sh.nobj = k;
        for (std::size_t x = 0; x < k; ++x) sh.ends.push_back({x, x});
        for (std::size_t s = 0; s < counts.size(); ++s)
          for (std::size_t c = 0; c < counts[s]; ++c) sh.ends.push_back({s / k, s % k});
        const auto n = sh.ends.size();
        std::vector<std::size_t> comp(n * n, npos);
        std::vector<std::size_t> cells;
        for (std::size_t g = 0; g < n; ++g)
          for (std::size_t f = 0; f < n; ++f) {
            if (sh.ends[g].first != sh.ends[f].second) continue;
            if (g < k) comp[g * n + f] = f;
            else if (f < k) comp[g * n + f] = g;
            else {
              comp[g * n + f] = detail::kUnknown;
              cells.push_back(g * n + f);
            }
          }
        std::function<void(std::size_t)> fill = [&](std::size_t ci) {
          if (ci == cells.size()) {
            auto code = detail::canonical_code(sh, comp);
            if (seen.insert(code).second) fam.categories.push_back(detail::build_family_member(sh, comp));
            return;
          }
          auto cell = cells[ci];
          auto g = cell / n, f = cell % n;
          for (std::size_t r = 0; r < n; ++r) {
            if (sh.ends[r].first != sh.ends[f].first || sh.ends[r].second != sh.ends[g].second) continue;
            comp[cell] = r;
            if (detail::associative_so_far(sh, comp)) fill(ci + 1);
          }
          comp[cell] = detail::kUnknown;
        };
        fill(0);
      };
      distribute(0, extra);
    }
  }
  return fam;
}

/// The family at caps (2 objects, 5 morphisms), generated once.
inline const TestFamily& default_family() {
  static const TestFamily fam = TestFamily::generate(2, 5);
  return fam;
}

// ---------------------------------------------------------------------------
// Universal-property verifiers

namespace detail {

inline Table compose_tables(const Table& outer, const Table& inner) {
  Table r(inner.size());
  for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
  return r;
}

inline Table concat(Table a, const Table& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

}  // namespace detail

/// Every R: B -> D in the family with R.F = R.G factors uniquely through Q.
inline Verdict verify_coequaliser(const Functor& F, const Functor& G, const Functor& Q, const TestFamily& fam) {
  if (!parallel(F, G) || !(Q.dom() == F.cod())) throw Error(ErrorKind::ShapeMismatch, "quotient does not start at the codomain of the pair");
  if (!(compose(Q, F) == compose(Q, G))) throw Error(ErrorKind::NotCoequalising, "Q.F differs from Q.G");
  const auto& B = F.cod();
  const auto& C = Q.cod();
  const auto& q0 = Q.on_objects().table();
  const auto& q1 = Q.on_morphisms().table();
  for (std::size_t d = 0; d < fam.categories.size(); ++d) {
    const auto& D = fam.categories[d];
    std::map<Table, std::size_t> factored;
    for_each_functor(C, D, [&](const Table& s0, const Table& s1) {
      ++factored[detail::concat(detail::compose_tables(s0, q0), detail::compose_tables(s1, q1))];
    });
    Verdict v;
    for_each_functor(B, D, [&](const Table& r0, const Table& r1) {
      for (std::size_t x = 0; x < F.dom().n_objects(); ++x)
        if (r0[F.obj(x)] != r0[G.obj(x)]) return true;
      for (std::size_t f = 0; f < F.dom().n_morphisms(); ++f)
        if (r1[F.mor(f)] != r1[G.mor(f)]) return true;
      auto it = factored.find(detail::concat(r0, r1));
      auto count = it == factored.end() ? 0 : it->second;
      if (count != 1) {
        v = Verdict::fail(count == 0 ? "existence of factorisation" : "uniqueness of factorisation",
                          "family member " + std::to_string(d) + ", " + std::to_string(count) + " factorisations");
        return false;
      }
      return true;
    });
    if (!v) return v;
  }
  return Verdict::pass();
}

/// Every graph morphism h: g -> U(D) extends uniquely along eta.
inline Verdict verify_free_unit(const Graph& g, const InternalCat& fc, const GraphMorphism& eta, const TestFamily& fam,
                                bool exact = true) {
  if (!exact) throw Error(ErrorKind::InexactInput, "free category is a truncation");
  if (!(eta.dom == g) || !(eta.cod == underlying_graph(fc))) throw Error(ErrorKind::ShapeMismatch, "unit has the wrong shape");
  const auto& e0 = eta.on_vertices.table();
  const auto& e1 = eta.on_edges.table();
  const auto nv = g.vertices.size();
  const auto ne = g.edges.size();
  for (std::size_t d = 0; d < fam.categories.size(); ++d) {
    const auto& D = fam.categories[d];
    std::map<Table, std::size_t> ext;
    for_each_functor(fc, D, [&](const Table& s0, const Table& s1) {
      ++ext[detail::concat(detail::compose_tables(s0, e0), detail::compose_tables(s1, e1))];
    });
    // Enumerate graph morphisms g -> U(D).
    Table h0(nv, 0), h1(ne, 0);
    Verdict v;
    std::function<bool(std::size_t)> edges = [&](std::size_t e) -> bool {
      if (e == ne) {
        auto it = ext.find(detail::concat(h0, h1));
        auto count = it == ext.end() ? 0 : it->second;
        if (count != 1) {
          v = Verdict::fail(count == 0 ? "existence of extension" : "uniqueness of extension",
                            "family member " + std::to_string(d) + ", " + std::to_string(count) + " extensions");
          return false;
        }
        return true;
      }
      for (auto m : D.hom(h0[g.src(e)], h0[g.tgt(e)])) {
        h1[e] = m;
        if (!edges(e + 1)) return false;
      }
      return true;
    };
    std::function<bool(std::size_t)> vertices = [&](std::size_t x) -> bool {
      if (x == nv) return edges(0);
      for (std::size_t y = 0; y < D.n_objects(); ++y) {
        h0[x] = y;
        if (!vertices(x + 1)) return false;
      }
      return true;
    };
    vertices(0);
    if (!v) return v;
  }
  return Verdict::pass();
}

/// Every H with H.a = H.b factors uniquely through E.
inline Verdict verify_coequifier(const NatTrans& a, const NatTrans& b, const Functor& E, const TestFamily& fam) {
  if (!(a.src() == b.src()) || !(a.tgt() == b.tgt())) throw Error(ErrorKind::NotParallel2Cells, "transformations are not parallel");
  const auto& B = a.src().cod();
  if (!(E.dom() == B)) throw Error(ErrorKind::ShapeMismatch, "quotient does not start at the codomain");
  for (std::size_t x = 0; x < a.src().dom().n_objects(); ++x)
    if (E.mor(a.at(x)) != E.mor(b.at(x))) throw Error(ErrorKind::NotCoequifying, "E.a differs from E.b");
  const auto& C = E.cod();
  const auto& q0 = E.on_objects().table();
  const auto& q1 = E.on_morphisms().table();
  for (std::size_t d = 0; d < fam.categories.size(); ++d) {
    const auto& D = fam.categories[d];
    std::map<Table, std::size_t> factored;
    for_each_functor(C, D, [&](const Table& s0, const Table& s1) {
      ++factored[detail::concat(detail::compose_tables(s0, q0), detail::compose_tables(s1, q1))];
    });
    Verdict v;
    for_each_functor(B, D, [&](const Table& h0, const Table& h1) {
      for (std::size_t x = 0; x < a.src().dom().n_objects(); ++x)
        if (h1[a.at(x)] != h1[b.at(x)]) return true;
      auto it = factored.find(detail::concat(h0, h1));
      auto count = it == factored.end() ? 0 : it->second;
      if (count != 1) {
        v = Verdict::fail(count == 0 ? "existence of factorisation" : "uniqueness of factorisation",
                          "family member " + std::to_string(d) + ", " + std::to_string(count) + " factorisations");
        return false;
      }
      return true;
    });
    if (!v) return v;
  }
  return Verdict::pass();
}

/// Every cocone (J', K', lambda') under the span factors uniquely through
/// (J, K, lambda). Cocones are counted rather than listed: the map from
/// functors S to cocones must be injective with as many values as there are
/// cocones.
inline Verdict verify_cocomma(const Functor& F, const Functor& G, const InternalCat& cc, const Functor& J, const Functor& K,
                              const NatTrans& lambda, const TestFamily& fam) {
  const auto& A = F.dom();
  const auto& B = F.cod();
  const auto& C = G.cod();
  if (!(G.dom() == A) || !(J.dom() == B) || !(K.dom() == C) || !(J.cod() == cc) || !(K.cod() == cc) ||
      !(lambda.src() == compose(K, G)) || !(lambda.tgt() == compose(J, F)))
    throw Error(ErrorKind::InvalidCocone, "cocone does not sit under the span");
  for (std::size_t d = 0; d < fam.categories.size(); ++d) {
    const auto& D = fam.categories[d];
    std::map<Table, std::size_t> induced;
    std::size_t n_functors = 0;
    bool duplicate = false;
    for_each_functor(cc, D, [&](const Table& s0, const Table& s1) {
      ++n_functors;
      auto key = detail::concat(detail::concat(detail::compose_tables(s0, J.on_objects().table()),
                                               detail::compose_tables(s1, J.on_morphisms().table())),
                                detail::concat(detail::compose_tables(s0, K.on_objects().table()),
                                               detail::compose_tables(s1, K.on_morphisms().table())));
      key = detail::concat(key, detail::compose_tables(s1, lambda.components().table()));
      if (++induced[key] > 1) {
        duplicate = true;
        return false;
      }
      return true;
    });
    if (duplicate) return Verdict::fail("uniqueness of factorisation", "family member " + std::to_string(d));

    // Count cocones, grouping legs by their restriction along the span.
    std::map<Table, std::size_t> jf, kg;
    for_each_functor(B, D, [&](const Table& j0, const Table& j1) {
      ++jf[detail::concat(detail::compose_tables(j0, F.on_objects().table()), detail::compose_tables(j1, F.on_morphisms().table()))];
    });
    for_each_functor(C, D, [&](const Table& k0, const Table& k1) {
      ++kg[detail::concat(detail::compose_tables(k0, G.on_objects().table()), detail::compose_tables(k1, G.on_morphisms().table()))];
    });
    const auto na = A.n_objects();
    std::size_t cocones = 0;
    for (const auto& [jt, jm] : jf)
      for (const auto& [kt, km] : kg) {
        // jt, kt: object images then morphism images of A.
        Table lam(na, npos);
        std::size_t count = 0;
        std::function<void(std::size_t)> rec = [&](std::size_t x) {
          if (x == na) {
            ++count;
            return;
          }
          for (auto m : D.hom(kt[x], jt[x])) {
            lam[x] = m;
            bool ok = true;
            for (std::size_t a = 0; a < A.n_morphisms() && ok; ++a) {
              auto s = A.src(a), t = A.tgt(a);
              if (s > x || t > x) continue;
              ok = D.compose(lam[t], kt[na + a]) == D.compose(jt[na + a], lam[s]);
            }
            if (ok) rec(x + 1);
          }
        };
        rec(0);
        cocones += count * jm * km;
      }
    if (cocones != n_functors)
      return Verdict::fail("existence of factorisation", "family member " + std::to_string(d) + ": " + std::to_string(cocones) +
                                                             " cocones but " + std::to_string(n_functors) + " factorisations");
  }
  return Verdict::pass();
}

// ---------------------------------------------------------------------------
// Random instances

/// A random parallel pair A -> B agreeing on objects, with A and B drawn from
/// the first `pool` members of the family. Retries until such a pair exists.
template <class Rng>
std::pair<Functor, Functor> random_agree_pair(Rng& rng, const TestFamily& fam, std::size_t pool) {
  pool = std::min(pool, fam.categories.size());
  std::uniform_int_distribution<std::size_t> pick(0, pool - 1);
  for (;;) {
    const auto& A = fam.categories[pick(rng)];
    const auto& B = fam.categories[pick(rng)];
    auto fs = enumerate_functors(A, B);
    if (fs.empty()) continue;
    const auto& F = fs[std::uniform_int_distribution<std::size_t>(0, fs.size() - 1)(rng)];
    std::vector<const Functor*> same;
    for (const auto& G : fs)
      if (G.on_objects() == F.on_objects()) same.push_back(&G);
    const auto& G = *same[std::uniform_int_distribution<std::size_t>(0, same.size() - 1)(rng)];
    return {F, G};
  }
}

// ---------------------------------------------------------------------------
// Free categories by direct path enumeration

inline InternalCat free_category_paths_oracle(const Graph& g) {
  // Depth-first enumeration of all paths; a path longer than |V| edges
  // revisits a vertex, which signals a cycle.
  const auto nv = g.vertices.size();
  std::vector<Path> paths;
  bool cyclic = false;
  std::function<void(Path&)> dfs = [&](Path& p) {
    paths.push_back(p);
    if (p.edges.size() > nv) {
      cyclic = true;
      return;
    }
    for (std::size_t e = 0; e < g.edges.size() && !cyclic; ++e)
      if (g.src(e) == p.tgt) {
        p.edges.push_back(e);
        auto old = p.tgt;
        p.tgt = g.tgt(e);
        dfs(p);
        p.tgt = old;
        p.edges.pop_back();
      }
  };
  for (std::size_t v = 0; v < nv && !cyclic; ++v) {
    Path p{v, v, {}};
    dfs(p);
  }
  if (cyclic) throw Error(ErrorKind::CyclicGraph, "graph has a directed cycle");
  std::vector<std::string> labels;
  for (const auto& p : paths) labels.push_back(path_label(g, p));
  FinObj M(labels);
  const auto n = M.size();
  std::map<std::pair<std::size_t, std::vector<std::size_t>>, std::size_t> idx;
  std::vector<Path> at(n);
  for (std::size_t k = 0; k < paths.size(); ++k) {
    auto i = M.index_of(labels[k]);
    idx[{paths[k].src, paths[k].edges}] = i;
    at[i] = paths[k];
  }
  std::vector<std::size_t> s(n), t(n), ident(nv), comp(n * n, npos);
  for (std::size_t i = 0; i < n; ++i) {
    s[i] = at[i].src;
    t[i] = at[i].tgt;
  }
  for (std::size_t v = 0; v < nv; ++v) ident[v] = idx.at({v, {}});
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (at[a].tgt == at[b].src) {
        auto e = at[a].edges;
        e.insert(e.end(), at[b].edges.begin(), at[b].edges.end());
        comp[b * n + a] = idx.at({at[a].src, e});
      }
  return InternalCat(CatData{g.vertices, M, FinFn(M, g.vertices, std::move(s)), FinFn(M, g.vertices, std::move(t)),
                             FinFn(g.vertices, M, std::move(ident)), std::move(comp)});
}

}  // namespace intercat
