#include "catch2/catch_amalgamated.hpp"
#include "support.hpp"

using namespace intercat;
using namespace fixtures;

namespace {

bool is_iso(const Functor& Q) {
  return Q.on_objects().is_bijective() && Q.on_morphisms().is_bijective();
}

/// 2_E with its endpoints as a pair out of the terminal category.
std::pair<Functor, Functor> endpoints() {
  auto e = two_E();
  return {point(e, "s"), point(e, "t")};
}

}  // namespace

TEST_CASE("coproducts of categories") {
  auto t = terminal_cat();
  auto tt = coproduct_cat({t, t});
  CHECK(tt.object.is_discrete());
  CHECK(tt.object.n_objects() == 2);
  CHECK(coproduct_cat(std::span<const InternalCat>{}).object.n_objects() == 0);
  auto ee = coproduct_cat({two_E(), two_E()});
  CHECK(ee.object.n_objects() == 4);
  CHECK(ee.object.n_morphisms() == 6);
}

TEST_CASE("the free arrow") {
  auto e = two_E();
  CHECK(objects_of(e).size() == 2);
  CHECK(nerve_level(e, 1).object.size() == 3);
  CHECK(nerve_level(e, 2).object.size() == 4);
}

TEST_CASE("copowers by the free arrow") {
  CHECK(find_isomorphism(copower2(terminal_cat()).object(), two_E()));
  FinObj X{"a", "b", "c"};
  CHECK(copower2(disc(X)).object().n_morphisms() == 9);

  // transpose then untranspose on every transformation between functors
  // out of small categories.
  for (const auto& A : {terminal_cat(), two_E(), monoid2(false)})
    for (const auto& B : {two_E(), parallel_pq(), monoid2(true)}) {
      auto cp = copower2(A);
      auto fs = enumerate_functors(A, B);
      for (const auto& F : fs)
        for (const auto& G : fs) {
          std::vector<std::size_t> comp(A.n_objects());
          auto rec = [&](auto&& self, std::size_t x) -> void {
            if (x == A.n_objects()) {
              NatTransData d{F, G, FinFn(A.objects(), B.morphisms(), comp)};
              if (!validate_nattrans(d)) return;
              NatTrans a(F, G, d.components);
              auto back = cp.untranspose(cp.transpose(a));
              CHECK(back.components() == a.components());
              CHECK(back.src() == F);
              CHECK(back.tgt() == G);
              return;
            }
            for (auto m : B.hom(F.obj(x), G.obj(x))) {
              comp[x] = m;
              self(self, x + 1);
            }
          };
          rec(rec, 0);
        }
    }
}

TEST_CASE("coequalisers of functors agreeing on objects") {
  SECTION("equal functors give an isomorphism") {
    auto F = arrow(chain3(), "gf");
    auto r = coequalize_on_objects(F, F);
    CHECK(is_iso(r.Q));
  }
  SECTION("identifying parallel p and q") {
    auto B = parallel_pq();
    auto F = arrow(B, "p"), G = arrow(B, "q");
    auto r = coequalize_on_objects(F, G);
    CHECK(r.object().n_morphisms() == 3);
    CHECK(r.Q.mor(B.morphisms().index_of("p")) == r.Q.mor(B.morphisms().index_of("q")));
    CHECK(validate_category(r.object()));
    CHECK(verify_coequaliser(F, G, r.Q, default_family()));
  }
  SECTION("empty domain") {
    auto B = chain3();
    Functor F(disc(FinObj()), B, FinFn(FinObj(), B.objects(), {}), FinFn(FinObj(), B.morphisms(), {}));
    CHECK(is_iso(coequalize_on_objects(F, F).Q));
  }
  SECTION("errors") {
    auto B = parallel_pq();
    auto [s, t] = endpoints();
    CHECK_THROWS_AS(coequalize_on_objects(s, t), Error);
    try {
      coequalize_on_objects(s, t);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::ObjectsDisagree);
    }
    try {
      coequalize_on_objects(arrow(B, "p"), s);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotParallel);
    }
  }
}

TEST_CASE("identifications propagate through composites") {
  // Two idempotents with e.f = f and f.e = e; identifying them must also
  // identify their composites.
  auto M = make_category({"*"}, {{"1", "*", "*"}, {"e", "*", "*"}, {"f", "*", "*"}}, {{"*", "1"}},
                         {{"e", "e", "e"}, {"f", "f", "f"}, {"e", "f", "f"}, {"f", "e", "e"}}, true);
  REQUIRE(validate_category(M));
  auto F = arrow(M, "e");
  auto G = arrow(M, "f");
  auto r = coequalize_on_objects(F, G);
  CHECK(validate_category(r.object()));
  CHECK(verify_coequaliser(F, G, r.Q, default_family()));
}

TEST_CASE("the level-3 trace does not change the quotient") {
  const auto& suite = agree_suite();
  for (std::size_t k = 0; k < suite.size(); k += 97) {
    const auto& [F, G] = suite[k];
    auto full = coequalize_on_objects(F, G);
    auto lean = coequalize_on_objects(F, G, false);
    REQUIRE(full.Q == lean.Q);
    CHECK(lean.trace.C3.size() == 0);
    CHECK(full.trace.u.dom() == full.trace.B3xC1);
  }
}

TEST_CASE("coequifiers") {
  auto B = parallel_pq();
  auto px = point(B, "x"), py = point(B, "y");
  NatTrans a(px, py, FinFn::from_labels(FinObj{"*"}, B.morphisms(), {{"*", "p"}}));
  NatTrans b(px, py, FinFn::from_labels(FinObj{"*"}, B.morphisms(), {{"*", "q"}}));
  auto r = coequifier(a, b);
  CHECK(r.object().n_morphisms() == 3);
  CHECK(verify_coequifier(a, b, r.Q, default_family()));
  CHECK(is_iso(coequifier(a, a).Q));

  auto id = identity_nattrans(px);
  CHECK(is_iso(coequifier(id, id).Q));
  try {
    coequifier(a, id);
    FAIL("expected NotParallel2Cells");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotParallel2Cells);
  }
}

TEST_CASE("free categories") {
  auto edgeless = graph({"a", "b"}, {});
  auto fe = free_category(edgeless, 8);
  CHECK(fe.materialized.exact);
  CHECK(fe.materialized.cat.is_discrete());

  auto chain = graph({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}});
  auto fc = free_category(chain, 8);
  CHECK(fc.materialized.exact);
  CHECK(fc.materialized.cat.n_morphisms() == 6);
  CHECK(verify_free_unit(chain, fc.materialized.cat, fc.eta, default_family()));

  auto two = graph({"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}});
  CHECK(free_category(two, 8).materialized.cat.n_morphisms() == 4);

  auto loop = graph({"v"}, {{"e", "v", "v"}});
  auto fl = free_category(loop, 3);
  CHECK_FALSE(fl.materialized.exact);
  CHECK(fl.materialized.cat.n_morphisms() == 4);
  CHECK(fl.presentation.gens.edges.size() == 1);
  CHECK(fl.presentation.rels.empty());
  CHECK_THROWS_AS(verify_free_unit(loop, fl.materialized.cat, fl.eta, default_family(), fl.materialized.exact), Error);
  for (std::size_t n = 1; n <= 10; ++n) CHECK(free_category(loop, n).materialized.cat.n_morphisms() == n + 1);
}

TEST_CASE("free category agrees with the path oracle") {
  for (const auto& g : acyclic_graphs(3, 3)) {
    auto fc = free_category(g, 8);
    auto oracle = free_category_paths_oracle(g);
    REQUIRE(fc.materialized.exact);
    CHECK(fc.materialized.cat == oracle);
  }
  CHECK_THROWS_AS(free_category_paths_oracle(graph({"v"}, {{"e", "v", "v"}})), Error);
}

TEST_CASE("coequalisers out of discrete categories") {
  SECTION("Example: the endpoints of the free arrow") {
    auto [s, t] = endpoints();
    auto r = coequalize_from_discrete(s, t, 3);
    CHECK(r.presentation.gens.vertices.size() == 1);
    CHECK(r.presentation.gens.edges.size() == 1);
    CHECK(r.presentation.rels.empty());
    CHECK(r.materialized.cat.n_morphisms() == 4);
    CHECK_FALSE(r.exact());
    // The trace records every generating 2-cell.
    CHECK(r.trace.alpha.size() == 2);
    CHECK(r.trace.gamma.size() == 4);
    CHECK_FALSE(r.trace.Q_literal);
  }
  SECTION("equal functors") {
    auto x = point(chain3(), "b");
    auto r = coequalize_from_discrete(x, x, 8);
    CHECK(r.exact());
    CHECK(is_iso(r.Q));
  }
  SECTION("gluing nothing across an arrow") {
    auto B = make_category({"x", "y"}, {{"1x", "x", "x"}, {"1y", "y", "y"}, {"m", "x", "y"}}, {{"x", "1x"}, {"y", "1y"}}, {}, true);
    auto x = point(B, "x");
    auto r = coequalize_from_discrete(x, x, 8);
    CHECK(is_iso(r.Q));
    CHECK(verify_coequaliser(x, x, r.Q, default_family()));
    REQUIRE(r.trace.Q_literal);
    CHECK(find_isomorphism(r.trace.Q_literal->cod(), r.object()));
  }
  SECTION("gluing the ends of a chain keeps it finite only without cycles") {
    auto B = chain3();
    auto r = coequalize_from_discrete(point(B, "a"), point(B, "c"), 4);
    CHECK_FALSE(r.exact());
    auto r2 = coequalize_from_discrete(point(B, "a"), point(B, "a"), 4);
    CHECK(r2.exact());
  }
  SECTION("preconditions") {
    auto e = two_E();
    auto F = identity_functor(e);
    try {
      coequalize_from_discrete(F, F, 4);
      FAIL("expected DomainNotDiscrete");
    } catch (const Error& err) {
      CHECK(err.kind() == ErrorKind::DomainNotDiscrete);
    }
  }
}

TEST_CASE("literal trace matches the rewriting quotient") {
  // Pairs out of discrete categories into acyclic quotients.
  int checked = 0;
  for (const auto& B : default_family().categories) {
    if (B.n_objects() < 2) continue;
    for (const auto& X : {terminal_cat(), disc(FinObj{"0", "1"})}) {
      auto fs = enumerate_functors(X, B);
      for (std::size_t i = 0; i < fs.size(); ++i)
        for (std::size_t j = i; j < fs.size(); ++j) {
          auto r = coequalize_from_discrete(fs[i], fs[j], 6);
          if (!r.trace.Q_literal) continue;
          ++checked;
          CHECK(r.exact());
          auto iso = find_isomorphism(r.object(), r.trace.Q_literal->cod(), FinFn::identity(r.object().objects()));
          REQUIRE(iso);
          CHECK(compose(*iso, r.Q) == *r.trace.Q_literal);
          CHECK(verify_coequaliser(fs[i], fs[j], r.Q, default_family()));
        }
    }
  }
  CHECK(checked > 20);
}

TEST_CASE("general coequalisers") {
  SECTION("equal functors") {
    auto F = identity_functor(parallel_pq());
    CHECK(is_iso(coequalize(F, F, 8).Q));
  }
  SECTION("the endpoints of the free arrow give the natural numbers") {
    auto [s, t] = endpoints();
    auto r = coequalize(s, t, 3);
    CHECK(r.presentation.gens.vertices.size() == 1);
    CHECK(r.presentation.gens.edges.size() == 1);
    CHECK(r.materialized.cat.n_morphisms() == 4);
    CHECK_FALSE(r.exact());
    CHECK(r.K().on_objects()(0) == r.K().on_objects()(1));
  }
  SECTION("agreeing pairs match the agree-on-objects construction") {
    auto B = parallel_pq();
    auto F = arrow(B, "p"), G = arrow(B, "q");
    auto r = coequalize(F, G, 8);
    auto direct = coequalize_on_objects(F, G);
    REQUIRE(r.exact());
    auto iso = find_isomorphism(direct.object(), r.object());
    REQUIRE(iso);
    CHECK(verify_coequaliser(F, G, r.Q, default_family()));
  }
}

TEST_CASE("words in a presentation") {
  auto [s, t] = endpoints();
  auto r = coequalize(s, t, 3);
  const auto& P = r.presentation;
  Path e1{0, 0, {0}}, e2{0, 0, {0, 0}};
  CHECK(words_equal(P, e1, e1) == WordVerdict::Equal);
  CHECK(words_equal(P, e1, e2) == WordVerdict::Distinct);

  // A presentation whose class explodes hits the budget.
  auto loop2 = graph({"v"}, {{"a", "v", "v"}, {"b", "v", "v"}});
  Presentation comm{loop2, {{Path{0, 0, {0, 1}}, Path{0, 0, {1, 0}}}}};
  CHECK(validate_presentation(comm));
  CHECK(words_equal(comm, Path{0, 0, {0, 1}}, Path{0, 0, {1, 0}}) == WordVerdict::Equal);
  CHECK(words_equal(comm, Path{0, 0, {0, 0, 1, 1, 0, 1}}, Path{0, 0, {0, 0, 0, 1, 1, 1}}) == WordVerdict::Equal);
  CHECK(words_equal(comm, Path{0, 0, {0, 0, 1}}, Path{0, 0, {0, 1, 1}}) == WordVerdict::Distinct);
  std::vector<std::size_t> w(24);
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = i % 2;
  CHECK(words_equal(comm, Path{0, 0, w}, Path{0, 0, std::vector<std::size_t>(w.size(), 0)}, 100) == WordVerdict::Unknown);
}

TEST_CASE("pushouts") {
  SECTION("of identities") {
    auto c = chain3();
    auto I = identity_functor(c);
    auto po = pushout(I, I);
    CHECK(find_isomorphism(po.object(), c));
  }
  SECTION("of points") {
    auto t = terminal_cat();
    auto I = identity_functor(t);
    CHECK(pushout(I, I).object().n_morphisms() == 1);
  }
  SECTION("two free arrows glued end to start") {
    auto e = two_E();
    auto po = pushout(point(e, "t"), point(e, "s"));
    REQUIRE(po.exact());
    CHECK(po.object().n_objects() == 3);
    CHECK(po.object().n_morphisms() == 6);
    CHECK(find_isomorphism(po.object(), chain3()));
  }
}

TEST_CASE("coinserters") {
  // One point with f = g: a free endomorphism, so the natural numbers.
  FinObj one{"*"};
  auto id = FinFn::identity(one);
  auto c = coinserter(id, id, 8);
  CHECK_FALSE(c.exact());
  CHECK(c.object().n_morphisms() == 9);
  CHECK(validate_nattrans(c.lambda));

  FinObj two{"a", "b"};
  auto f = FinFn::from_labels(one, two, {{"*", "a"}});
  auto g = FinFn::from_labels(one, two, {{"*", "b"}});
  auto ab = coinserter(f, g);
  CHECK(ab.exact());
  CHECK(find_isomorphism(ab.object(), two_E()));
}

TEST_CASE("cocommas") {
  auto t = terminal_cat();
  auto I = identity_functor(t);
  SECTION("of the point span is the free arrow") {
    auto c = cocomma(I, I);
    CHECK(find_isomorphism(c.object, two_E()));
    CHECK(verify_cocomma(I, I, c.object, c.J, c.K, c.lambda, default_family()));
  }
  SECTION("empty apex gives the coproduct") {
    auto e = disc(FinObj());
    auto B = two_E(), C = parallel_pq();
    Functor F(e, B, FinFn(FinObj(), B.objects(), {}), FinFn(FinObj(), B.morphisms(), {}));
    Functor G(e, C, FinFn(FinObj(), C.objects(), {}), FinFn(FinObj(), C.morphisms(), {}));
    auto c = cocomma(F, G);
    CHECK(find_isomorphism(c.object, coproduct_cat({B, C}).object));
    CHECK(verify_cocomma(F, G, c.object, c.J, c.K, c.lambda, default_family()));
  }
  SECTION("discrete point span") {
    auto d = disc(FinObj{"*"});
    auto D = identity_functor(d);
    auto c = cocomma(D, D);
    CHECK(find_isomorphism(c.object, two_E()));
  }
  SECTION("a span into a monoid") {
    auto M = monoid2(false);
    auto F = point(M, "*");
    auto G = point(two_E(), "t");
    auto c = cocomma(F, G);
    CHECK(validate_category(c.object));
    CHECK(verify_cocomma(F, G, c.object, c.J, c.K, c.lambda, default_family()));
  }
}

TEST_CASE("cycles that do not lift") {
  auto c = chain3();
  CHECK(cycles_lift_check(c, FinFn::identity(c.objects())));

  auto e = two_E();
  auto glue = FinFn::from_labels(e.objects(), FinObj{"*"}, {{"s", "*"}, {"t", "*"}});
  auto v = cycles_lift_check(e, glue);
  REQUIRE_FALSE(v);
  CHECK(v.law == "cycle does not lift");
  CHECK(v.witness == "u");

  auto m = monoid2(true);
  CHECK(cycles_lift_check(m, FinFn::identity(m.objects())));
}
