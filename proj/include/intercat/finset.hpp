#pragma once

// The base category: labelled finite sets and total functions between them,
// with the finite limits and colimits the internal constructions rely on.

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "intercat/error.hpp"

namespace intercat {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

/// A finite set of distinct string labels, kept in sorted order so that two
/// objects are equal exactly when their label sets are. Copies share storage.
class FinObj {
 public:
  FinObj() : labels_(empty_storage()) {}

  explicit FinObj(std::vector<std::string> labels) {
    std::sort(labels.begin(), labels.end());
    auto dup = std::adjacent_find(labels.begin(), labels.end());
    if (dup != labels.end()) throw Error(ErrorKind::InvalidLabel, "duplicate element label '" + *dup + "'");
    labels_ = std::make_shared<const std::vector<std::string>>(std::move(labels));
  }

  FinObj(std::initializer_list<std::string> labels) : FinObj(std::vector<std::string>(labels)) {}

  static FinObj terminal() { return FinObj({"*"}); }

  std::size_t size() const noexcept { return labels_->size(); }
  bool empty() const noexcept { return labels_->empty(); }
  const std::string& label(std::size_t i) const { return (*labels_)[i]; }
  const std::vector<std::string>& labels() const noexcept { return *labels_; }

  std::optional<std::size_t> find(std::string_view label) const {
    auto it = std::lower_bound(labels_->begin(), labels_->end(), label,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == labels_->end() || *it != label) return std::nullopt;
    return static_cast<std::size_t>(it - labels_->begin());
  }

  std::size_t index_of(std::string_view label) const {
    if (auto i = find(label)) return *i;
    throw Error(ErrorKind::InvalidLabel, "no element '" + std::string(label) + "'");
  }

  bool contains(std::string_view label) const { return find(label).has_value(); }

  friend bool operator==(const FinObj& a, const FinObj& b) {
    return a.labels_ == b.labels_ || *a.labels_ == *b.labels_;
  }

 private:
  static std::shared_ptr<const std::vector<std::string>> empty_storage() {
    static const auto empty = std::make_shared<const std::vector<std::string>>();
    return empty;
  }

  std::shared_ptr<const std::vector<std::string>> labels_;
};

/// A total function between finite sets, stored as an index table.
class FinFn {
 public:
  FinFn() = default;

  FinFn(FinObj dom, FinObj cod, std::vector<std::size_t> map)
      : dom_(std::move(dom)), cod_(std::move(cod)), map_(std::move(map)) {
    if (map_.size() != dom_.size())
      throw Error(ErrorKind::DomainMismatch, "function table has " + std::to_string(map_.size()) +
                                                 " entries for a domain of size " + std::to_string(dom_.size()));
    for (std::size_t i = 0; i < map_.size(); ++i)
      if (map_[i] >= cod_.size())
        throw Error(ErrorKind::DomainMismatch, "image of '" + dom_.label(i) + "' lies outside the codomain");
  }

  static FinFn identity(const FinObj& x) {
    std::vector<std::size_t> m(x.size());
    std::iota(m.begin(), m.end(), std::size_t{0});
    return FinFn(x, x, std::move(m));
  }

  /// Build from a label-level mapping; every domain label must be present.
  static FinFn from_labels(const FinObj& dom, const FinObj& cod, const std::map<std::string, std::string>& m) {
    std::vector<std::size_t> table(dom.size());
    for (std::size_t i = 0; i < dom.size(); ++i) {
      auto it = m.find(dom.label(i));
      if (it == m.end()) throw Error(ErrorKind::DomainMismatch, "no image given for '" + dom.label(i) + "'");
      auto j = cod.find(it->second);
      if (!j) throw Error(ErrorKind::DomainMismatch, "image '" + it->second + "' of '" + it->first + "' is not in the codomain");
      table[i] = *j;
    }
    if (m.size() != dom.size()) {
      for (const auto& [k, v] : m)
        if (!dom.contains(k)) throw Error(ErrorKind::DomainMismatch, "'" + k + "' is not in the domain");
    }
    return FinFn(dom, cod, std::move(table));
  }

  const FinObj& dom() const noexcept { return dom_; }
  const FinObj& cod() const noexcept { return cod_; }
  const std::vector<std::size_t>& table() const noexcept { return map_; }

  std::size_t operator()(std::size_t i) const { return map_[i]; }
  const std::string& apply(std::string_view label) const { return cod_.label(map_[dom_.index_of(label)]); }

  bool is_injective() const {
    std::vector<bool> hit(cod_.size(), false);
    for (auto y : map_) {
      if (hit[y]) return false;
      hit[y] = true;
    }
    return true;
  }

  bool is_surjective() const {
    std::vector<bool> hit(cod_.size(), false);
    for (auto y : map_) hit[y] = true;
    return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
  }

  bool is_bijective() const { return dom_.size() == cod_.size() && is_injective(); }

  friend bool operator==(const FinFn& a, const FinFn& b) {
    return a.map_ == b.map_ && a.dom_ == b.dom_ && a.cod_ == b.cod_;
  }

 private:
  FinObj dom_;
  FinObj cod_;
  std::vector<std::size_t> map_;
};

/// g after f.
inline FinFn compose_fn(const FinFn& g, const FinFn& f) {
  if (!(f.cod() == g.dom())) throw Error(ErrorKind::DomainMismatch, "codomain of f differs from domain of g");
  std::vector<std::size_t> m(f.dom().size());
  for (std::size_t i = 0; i < m.size(); ++i) m[i] = g(f(i));
  return FinFn(f.dom(), g.cod(), std::move(m));
}

// ---------------------------------------------------------------------------
// Union-find

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n), rank_(n, 0) {
    std::iota(parent_.begin(), parent_.end(), std::size_t{0});
  }

  std::size_t find(std::size_t x) {
    std::size_t root = x;
    while (parent_[root] != root) root = parent_[root];
    while (parent_[x] != root) {
      auto next = parent_[x];
      parent_[x] = root;
      x = next;
    }
    return root;
  }

  bool unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (rank_[a] < rank_[b]) std::swap(a, b);
    parent_[b] = a;
    if (rank_[a] == rank_[b]) ++rank_[a];
    return true;
  }

 private:
  std::vector<std::size_t> parent_;
  std::vector<unsigned> rank_;
};

// ---------------------------------------------------------------------------
// Coproducts

struct Coproduct {
  FinObj object;
  std::vector<FinFn> injections;
  /// origin[k] = (summand, element) of the k-th element of `object`.
  std::vector<std::pair<std::size_t, std::size_t>> origin;

  /// The unique map out of the coproduct restricting to maps[i] on summand i.
  FinFn copair(std::span<const FinFn> maps, const FinObj& target) const {
    if (maps.size() != injections.size())
      throw Error(ErrorKind::ShapeMismatch, "copairing needs one map per summand");
    for (std::size_t i = 0; i < maps.size(); ++i) {
      if (!(maps[i].dom() == injections[i].dom()) || !(maps[i].cod() == target))
        throw Error(ErrorKind::DomainMismatch, "copairing map " + std::to_string(i) + " has the wrong shape");
    }
    std::vector<std::size_t> m(object.size());
    for (std::size_t k = 0; k < m.size(); ++k) m[k] = maps[origin[k].first](origin[k].second);
    return FinFn(object, target, std::move(m));
  }
};

inline std::string tag_label(std::size_t i, const std::string& x) { return std::to_string(i) + "." + x; }

inline Coproduct coproduct(std::span<const FinObj> xs) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (const auto& l : xs[i].labels()) labels.push_back(tag_label(i, l));
  Coproduct out;
  out.object = FinObj(std::move(labels));
  out.origin.resize(out.object.size());
  for (std::size_t i = 0; i < xs.size(); ++i) {
    std::vector<std::size_t> m(xs[i].size());
    for (std::size_t j = 0; j < xs[i].size(); ++j) {
      m[j] = out.object.index_of(tag_label(i, xs[i].label(j)));
      out.origin[m[j]] = {i, j};
    }
    out.injections.emplace_back(xs[i], out.object, std::move(m));
  }
  return out;
}

inline Coproduct coproduct(std::initializer_list<FinObj> xs) {
  return coproduct(std::span<const FinObj>(xs.begin(), xs.size()));
}

// ---------------------------------------------------------------------------
// Pullbacks and products

inline std::string pair_label(const std::string& x, const std::string& y) { return "(" + x + "|" + y + ")"; }

struct Pullback {
  FinObj object;
  FinFn p1;
  FinFn p2;

  /// Index of (x, y) in the carrier, or npos when f(x) != g(y).
  std::size_t index(std::size_t x, std::size_t y) const { return table_[x * width_ + y]; }

  /// The unique map W -> P with p1 m = a and p2 m = b, given f a = g b.
  FinFn mediate(const FinFn& a, const FinFn& b) const {
    if (!(a.dom() == b.dom()) || !(a.cod() == p1.cod()) || !(b.cod() == p2.cod()))
      throw Error(ErrorKind::DomainMismatch, "cone legs do not match the pullback");
    std::vector<std::size_t> m(a.dom().size());
    for (std::size_t w = 0; w < m.size(); ++w) {
      m[w] = index(a(w), b(w));
      if (m[w] == npos) throw Error(ErrorKind::ShapeMismatch, "cone does not commute at '" + a.dom().label(w) + "'");
    }
    return FinFn(a.dom(), object, std::move(m));
  }

  std::vector<std::size_t> table_;
  std::size_t width_ = 0;
};

inline Pullback pullback(const FinFn& f, const FinFn& g) {
  if (!(f.cod() == g.cod())) throw Error(ErrorKind::DomainMismatch, "pullback of maps with different codomains");
  const auto& X = f.dom();
  const auto& Y = g.dom();
  std::vector<std::string> labels;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t x = 0; x < X.size(); ++x)
    for (std::size_t y = 0; y < Y.size(); ++y)
      if (f(x) == g(y)) {
        labels.push_back(pair_label(X.label(x), Y.label(y)));
        pairs.emplace_back(x, y);
      }
  Pullback out;
  out.object = FinObj(labels);
  out.width_ = Y.size();
  out.table_.assign(X.size() * Y.size(), npos);
  std::vector<std::size_t> m1(out.object.size()), m2(out.object.size());
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    auto idx = out.object.index_of(labels[k]);
    out.table_[pairs[k].first * out.width_ + pairs[k].second] = idx;
    m1[idx] = pairs[k].first;
    m2[idx] = pairs[k].second;
  }
  out.p1 = FinFn(out.object, X, std::move(m1));
  out.p2 = FinFn(out.object, Y, std::move(m2));
  return out;
}

inline FinFn to_terminal(const FinObj& x) {
  return FinFn(x, FinObj::terminal(), std::vector<std::size_t>(x.size(), 0));
}

/// Binary product, as the pullback over the terminal set.
inline Pullback product(const FinObj& x, const FinObj& y) { return pullback(to_terminal(x), to_terminal(y)); }

// ---------------------------------------------------------------------------
// Equalisers and coequalisers

struct Equalizer {
  FinObj object;
  FinFn inclusion;

  FinFn mediate(const FinFn& h) const {
    if (!(h.cod() == inclusion.cod())) throw Error(ErrorKind::DomainMismatch, "map does not land in the equaliser's ambient set");
    std::vector<std::size_t> pos(inclusion.cod().size(), npos);
    for (std::size_t i = 0; i < object.size(); ++i) pos[inclusion(i)] = i;
    std::vector<std::size_t> m(h.dom().size());
    for (std::size_t w = 0; w < m.size(); ++w) {
      m[w] = pos[h(w)];
      if (m[w] == npos) throw Error(ErrorKind::ShapeMismatch, "map does not equalise the pair");
    }
    return FinFn(h.dom(), object, std::move(m));
  }
};

inline Equalizer equalizer(const FinFn& f, const FinFn& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(ErrorKind::DomainMismatch, "equaliser of a non-parallel pair");
  std::vector<std::string> labels;
  for (std::size_t x = 0; x < f.dom().size(); ++x)
    if (f(x) == g(x)) labels.push_back(f.dom().label(x));
  FinObj sub(labels);
  std::vector<std::size_t> m(sub.size());
  for (std::size_t i = 0; i < sub.size(); ++i) m[i] = f.dom().index_of(sub.label(i));
  return {sub, FinFn(sub, f.dom(), std::move(m))};
}

/// s with s q = r for a surjection q; throws unless r is constant on the fibres of q.
inline FinFn factor_through_surjection(const FinFn& q, const FinFn& r) {
  if (!(q.dom() == r.dom())) throw Error(ErrorKind::DomainMismatch, "factorisation of maps with different domains");
  std::vector<std::size_t> s(q.cod().size(), npos);
  for (std::size_t y = 0; y < q.dom().size(); ++y) {
    auto c = q(y);
    if (s[c] == npos) {
      s[c] = r(y);
    } else if (s[c] != r(y)) {
      throw Error(ErrorKind::NotCoequalising,
                  "map is not constant on the class of '" + q.cod().label(c) + "' (at '" + q.dom().label(y) + "')");
    }
  }
  for (std::size_t c = 0; c < s.size(); ++c)
    if (s[c] == npos) throw Error(ErrorKind::NotSurjective, "'" + q.cod().label(c) + "' has no preimage");
  return FinFn(q.cod(), r.cod(), std::move(s));
}

struct Coequalizer {
  FinObj object;
  FinFn quotient;

  /// The unique map out of the quotient through which r factors.
  FinFn mediate(const FinFn& r) const { return factor_through_surjection(quotient, r); }
};

/// Quotient of the codomain by the equivalence generated by f(x) ~ g(x);
/// each class is labelled by its least member.
inline Coequalizer coequalizer(const FinFn& f, const FinFn& g) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(ErrorKind::DomainMismatch, "coequaliser of a non-parallel pair");
  const auto& Y = f.cod();
  DisjointSets ds(Y.size());
  for (std::size_t x = 0; x < f.dom().size(); ++x) ds.unite(f(x), g(x));
  std::vector<std::size_t> least(Y.size(), npos);
  for (std::size_t y = 0; y < Y.size(); ++y) {
    auto r = ds.find(y);
    if (least[r] == npos) least[r] = y;  // labels are sorted, so the first hit is the least
  }
  std::vector<std::string> labels;
  for (std::size_t y = 0; y < Y.size(); ++y)
    if (least[ds.find(y)] == y) labels.push_back(Y.label(y));
  FinObj C(labels);
  std::vector<std::size_t> q(Y.size());
  for (std::size_t y = 0; y < Y.size(); ++y) q[y] = C.index_of(Y.label(least[ds.find(y)]));
  return {C, FinFn(Y, C, std::move(q))};
}

// ---------------------------------------------------------------------------
// Pullback stability of coequalisers

struct StabilityCheck {
  bool equal = false;
  std::optional<FinFn> iso;  ///< coequaliser-of-pullbacks -> pullback-of-coequaliser
  std::string mismatch;
};

/// Given f, g: X -> Y over a base via h: Y -> B (h f = h g) and a map base: A -> B,
/// compare base^*(coeq(f, g)) with coeq(base^* f, base^* g).
inline StabilityCheck pullback_stability_check(const FinFn& f, const FinFn& g, const FinFn& h, const FinFn& base) {
  if (!(f.dom() == g.dom()) || !(f.cod() == g.cod())) throw Error(ErrorKind::ShapeMismatch, "f and g are not parallel");
  if (!(h.dom() == f.cod())) throw Error(ErrorKind::ShapeMismatch, "structure map does not start at the codomain of f");
  if (!(base.cod() == h.cod())) throw Error(ErrorKind::ShapeMismatch, "base map does not land in the base");
  if (!(compose_fn(h, f) == compose_fn(h, g))) throw Error(ErrorKind::ShapeMismatch, "f and g do not live over the base");

  // Coequalise, then pull back.
  auto coeq = coequalizer(f, g);
  auto c = coeq.mediate(h);
  auto lhs = pullback(base, c);

  // Pull back, then coequalise.
  auto pbY = pullback(base, h);
  auto pbX = pullback(base, compose_fn(h, f));
  auto fstar = pbY.mediate(pbX.p1, compose_fn(f, pbX.p2));
  auto gstar = pbY.mediate(pbX.p1, compose_fn(g, pbX.p2));
  auto rhs = coequalizer(fstar, gstar);

  // Comparison map induced by base^*(q).
  auto qstar = lhs.mediate(pbY.p1, compose_fn(coeq.quotient, pbY.p2));
  StabilityCheck out;
  FinFn cmp;
  try {
    cmp = rhs.mediate(qstar);
  } catch (const Error& e) {
    out.mismatch = e.what();
    return out;
  }
  if (!cmp.is_bijective()) {
    out.mismatch = "comparison map is not bijective (" + std::to_string(rhs.object.size()) + " vs " +
                   std::to_string(lhs.object.size()) + " elements)";
    return out;
  }
  out.equal = true;
  out.iso = std::move(cmp);
  return out;
}

}  // namespace intercat
