#pragma once

// Isomorphism search between small categories.

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"

namespace intercat {

namespace detail {

class IsoSearch {
 public:
  IsoSearch(const InternalCat& a, const InternalCat& b) : a_(a), b_(b) {}

  std::optional<Functor> run(const std::optional<FinFn>& fixed) {
    if (a_.n_objects() != b_.n_objects() || a_.n_morphisms() != b_.n_morphisms()) return std::nullopt;
    obj_.assign(a_.n_objects(), npos);
    used_obj_.assign(b_.n_objects(), false);
    if (fixed) {
      if (!(fixed->dom() == a_.objects()) || !(fixed->cod() == b_.objects()) || !fixed->is_bijective()) return std::nullopt;
      obj_ = fixed->table();
      if (!homs_match()) return std::nullopt;
      return morphisms();
    }
    return objects(0);
  }

 private:
  bool homs_match() const {
    for (std::size_t x = 0; x < obj_.size(); ++x)
      for (std::size_t y = 0; y < obj_.size(); ++y)
        if (a_.hom(x, y).size() != b_.hom(obj_[x], obj_[y]).size()) return false;
    return true;
  }

  std::optional<Functor> objects(std::size_t x) {
    if (x == obj_.size()) return morphisms();
    for (std::size_t y = 0; y < b_.n_objects(); ++y) {
      if (used_obj_[y]) continue;
      obj_[x] = y;
      bool ok = true;
      for (std::size_t z = 0; z <= x && ok; ++z)
        ok = a_.hom(x, z).size() == b_.hom(y, obj_[z]).size() && a_.hom(z, x).size() == b_.hom(obj_[z], y).size();
      if (!ok) continue;
      used_obj_[y] = true;
      auto r = objects(x + 1);
      used_obj_[y] = false;
      if (r) return r;
    }
    obj_[x] = npos;
    return std::nullopt;
  }

  std::optional<Functor> morphisms() {
    const auto n = a_.n_morphisms();
    mor_.assign(n, npos);
    used_mor_.assign(n, false);
    order_.clear();
    for (std::size_t x = 0; x < a_.n_objects(); ++x) {
      mor_[a_.id(x)] = b_.id(obj_[x]);
      used_mor_[b_.id(obj_[x])] = true;
    }
    for (std::size_t f = 0; f < n; ++f)
      if (!a_.is_identity(f)) order_.push_back(f);
    std::vector<std::size_t> pos(n, 0);
    for (std::size_t k = 0; k < order_.size(); ++k) pos[order_[k]] = k + 1;
    checks_.assign(order_.size() + 1, {});
    for (std::size_t g = 0; g < n; ++g)
      for (std::size_t f = 0; f < n; ++f) {
        auto gf = a_.compose(g, f);
        if (gf == npos) continue;
        checks_[std::max({pos[g], pos[f], pos[gf]})].push_back({g, f, gf});
      }
    for (const auto& c : checks_[0])
      if (b_.compose(mor_[c[0]], mor_[c[1]]) != mor_[c[2]]) return std::nullopt;
    if (!assign(0)) return std::nullopt;
    return Functor(a_, b_, FinFn(a_.objects(), b_.objects(), obj_), FinFn(a_.morphisms(), b_.morphisms(), mor_));
  }

  bool assign(std::size_t k) {
    if (k == order_.size()) return true;
    auto f = order_[k];
    for (auto m : b_.hom(obj_[a_.src(f)], obj_[a_.tgt(f)])) {
      if (used_mor_[m]) continue;
      mor_[f] = m;
      bool ok = true;
      for (const auto& c : checks_[k + 1])
        if (b_.compose(mor_[c[0]], mor_[c[1]]) != mor_[c[2]]) {
          ok = false;
          break;
        }
      if (!ok) continue;
      used_mor_[m] = true;
      if (assign(k + 1)) return true;
      used_mor_[m] = false;
    }
    mor_[f] = npos;
    return false;
  }

  const InternalCat& a_;
  const InternalCat& b_;
  std::vector<std::size_t> obj_, mor_, order_;
  std::vector<bool> used_obj_, used_mor_;
  std::vector<std::vector<std::array<std::size_t, 3>>> checks_;
};

}  // namespace detail

/// An isomorphism a -> b, optionally with a prescribed object bijection.
inline std::optional<Functor> find_isomorphism(const InternalCat& a, const InternalCat& b,
                                               const std::optional<FinFn>& objects = std::nullopt) {
  return detail::IsoSearch(a, b).run(objects);
}

/// An identity-on-objects isomorphism, for categories on the same object set.
inline std::optional<Functor> find_identity_on_objects_iso(const InternalCat& a, const InternalCat& b) {
  if (!(a.objects() == b.objects())) return std::nullopt;
  return find_isomorphism(a, b, FinFn::identity(a.objects()));
}

}  // namespace intercat
