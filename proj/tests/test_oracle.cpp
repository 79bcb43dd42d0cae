#include "catch2/catch_amalgamated.hpp"
#include "support.hpp"

using namespace intercat;
using namespace fixtures;

TEST_CASE("the test family") {
  const auto& fam = default_family();
  std::map<std::pair<std::size_t, std::size_t>, int> sizes;
  for (const auto& c : fam.categories) {
    CHECK(validate_category(c));
    ++sizes[{c.n_objects(), c.n_morphisms()}];
  }
  // Monoids of order 1..5 up to isomorphism.
  CHECK(sizes[{1, 1}] == 1);
  CHECK(sizes[{1, 2}] == 2);
  CHECK(sizes[{1, 3}] == 7);
  CHECK(sizes[{1, 4}] == 35);
  CHECK(sizes[{1, 5}] == 228);
  CHECK(sizes[{0, 0}] == 1);
  CHECK(sizes[{2, 3}] == 3);

  // No two members are isomorphic.
  for (std::size_t i = 0; i < fam.categories.size(); ++i)
    for (std::size_t j = i + 1; j < fam.categories.size(); ++j) {
      const auto& a = fam.categories[i];
      const auto& b = fam.categories[j];
      if (a.n_objects() == b.n_objects() && a.n_morphisms() == b.n_morphisms() && a.n_morphisms() <= 4)
        CHECK_FALSE(find_isomorphism(a, b));
    }
}

TEST_CASE("functor enumeration") {
  for (const auto& b : {chain3(), parallel_pq(), monoid2(true), two_E()}) {
    CHECK(enumerate_functors(terminal_cat(), b).size() == b.n_objects());
    CHECK(enumerate_functors(two_E(), b).size() == b.n_morphisms());
  }
  CHECK(enumerate_functors(disc(set_of(2)), disc(set_of(3))).size() == 9);
  for (const auto& F : enumerate_functors(chain3(), parallel_pq())) CHECK(validate_functor(F));
  // Endomorphisms of Z/2 as a monoid: the identity and the trivial map.
  CHECK(enumerate_functors(monoid2(false), monoid2(false)).size() == 2);
}

TEST_CASE("coequaliser oracle") {
  auto B = parallel_pq();
  auto I = identity_functor(B);
  auto F = arrow(B, "p");
  CHECK(verify_coequaliser(F, F, I, default_family()));

  auto G = arrow(B, "q");
  auto r = coequalize_on_objects(F, G);
  CHECK(verify_coequaliser(F, G, r.Q, default_family()));

  // With a third parallel arrow there is room to identify too much.
  auto B3 = parallel_pqr();
  auto F3 = arrow(B3, "p"), G3 = arrow(B3, "q");
  auto over = over_collapse(coequalize_on_objects(F3, G3).Q);
  REQUIRE(over);
  auto v = verify_coequaliser(F3, G3, *over, default_family());
  CHECK_FALSE(v);
  CHECK(v.law == "existence of factorisation");

  try {
    verify_coequaliser(F, G, I, default_family());
    FAIL("expected NotCoequalising");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotCoequalising);
  }
}

TEST_CASE("free unit oracle") {
  auto edgeless = graph({"a", "b"}, {});
  auto fe = free_category(edgeless, 4);
  CHECK(verify_free_unit(edgeless, fe.materialized.cat, fe.eta, default_family()));

  auto chain = graph({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}});
  auto fc = free_category(chain, 4);
  CHECK(verify_free_unit(chain, fc.materialized.cat, fc.eta, default_family()));

  auto broken = missing_composite(fc.materialized.cat);
  REQUIRE(broken);
  GraphMorphism eta(chain, underlying_graph(*broken), fc.eta.on_vertices,
                    FinFn(chain.edges, broken->morphisms(), {broken->morphisms().index_of("f"), broken->morphisms().index_of("g")}));
  CHECK_FALSE(verify_free_unit(chain, *broken, eta, default_family()));

  try {
    verify_free_unit(chain, fc.materialized.cat, fc.eta, default_family(), false);
    FAIL("expected InexactInput");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InexactInput);
  }
}

TEST_CASE("coequifier oracle") {
  auto B = parallel_pq();
  auto px = point(B, "x"), py = point(B, "y");
  NatTrans a(px, py, FinFn::from_labels(FinObj{"*"}, B.morphisms(), {{"*", "p"}}));
  NatTrans b(px, py, FinFn::from_labels(FinObj{"*"}, B.morphisms(), {{"*", "q"}}));
  CHECK(verify_coequifier(a, a, identity_functor(B), default_family()));
  auto r = coequifier(a, b);
  CHECK(verify_coequifier(a, b, r.Q, default_family()));
  auto B3 = parallel_pqr();
  auto qx = point(B3, "x"), qy = point(B3, "y");
  NatTrans a3(qx, qy, FinFn::from_labels(FinObj{"*"}, B3.morphisms(), {{"*", "p"}}));
  NatTrans b3(qx, qy, FinFn::from_labels(FinObj{"*"}, B3.morphisms(), {{"*", "q"}}));
  auto over = over_collapse(coequifier(a3, b3).Q);
  REQUIRE(over);
  CHECK_FALSE(verify_coequifier(a3, b3, *over, default_family()));
  CHECK_THROWS_AS(verify_coequifier(a, b, identity_functor(B), default_family()), Error);
}

TEST_CASE("cocomma oracle") {
  auto t = terminal_cat();
  auto I = identity_functor(t);
  auto c = cocomma(I, I);
  CHECK(verify_cocomma(I, I, c.object, c.J, c.K, c.lambda, default_family()));

  // Replacing the cocomma by the terminal category with trivial legs
  // breaks uniqueness of the cocone.
  auto bang_J = to_terminal(t);
  NatTrans triv(compose(bang_J, I), compose(bang_J, I), t.identity());
  CHECK_FALSE(verify_cocomma(I, I, t, bang_J, bang_J, triv, default_family()));

  // A span of two points into the free arrow.
  auto e = two_E();
  auto F = point(e, "s");
  auto cc = cocomma(F, F);
  CHECK(verify_cocomma(F, F, cc.object, cc.J, cc.K, cc.lambda, default_family()));
}

TEST_CASE("path oracle") {
  auto chain = graph({"a", "b", "c"}, {{"f", "a", "b"}, {"g", "b", "c"}});
  CHECK(free_category_paths_oracle(chain).n_morphisms() == 6);
  CHECK(free_category_paths_oracle(graph({"a", "b"}, {})).is_discrete());
  CHECK(free_category_paths_oracle(graph({"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}})).n_morphisms() == 4);
  try {
    free_category_paths_oracle(graph({"v"}, {{"e", "v", "v"}}));
    FAIL("expected CyclicGraph");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::CyclicGraph);
  }
}
