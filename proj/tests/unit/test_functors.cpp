#include "doctest.h"
#include "qsheaf/functors.hpp"
#include "qsheaf/sheaf_check.hpp"
#include "support/generators.hpp"

using namespace qsheaf;
using qsheaf::testing::make_quiver;
using qsheaf::testing::Rng;

namespace {

Presheaf one_dim(const PathCategory& cat, std::vector<Scalar> edge_values) {
  Presheaf F;
  F.dims.assign(cat.vertex_count(), 1);
  for (const auto& x : edge_values) F.maps.push_back(Matrix{{x}});
  return F;
}

// Restriction from v back to the first vertex of a linear quiver.
Matrix restriction_to_start(const PathCategory& cat, const Presheaf& F, VertexId v) {
  const auto& homs = cat.morphisms_into(v);
  return eval_presheaf(cat, F, homs.back());
}

}  // namespace

TEST_CASE("inclusion of discrete sheaves") {
  const PathCategory cat(make_quiver(2, {{0, 1}}));
  const auto iso = one_dim(cat, {3});
  CHECK(include_discrete(cat, iso) == iso);
  CHECK_THROWS_AS(include_discrete(cat, one_dim(cat, {0})), Error);
}

TEST_CASE("fully faithful evidence on random discrete sheaves") {
  Rng rng(61);
  for (int trial = 0; trial < 30; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng));
    const auto F = qsheaf::testing::random_invertible_presheaf(cat, rng, qsheaf::testing::uniform(rng, 0, 2));
    const auto G = qsheaf::testing::random_invertible_presheaf(cat, rng, qsheaf::testing::uniform(rng, 0, 2));
    const auto ev = fully_faithful_evidence(cat, F, G);
    CHECK(ev.equal);
    CHECK(ev.dim_discrete == ev.dim_coarse);
  }
}

TEST_CASE("literal slice colimit") {
  SUBCASE("isolated vertex") {
    const PathCategory cat(make_quiver(1, {}));
    const auto l = left_adjoint_literal(cat, constant_presheaf(cat, 2), 0);
    CHECK(l.dim == 2);
    CHECK(l.comparison_is_iso);
  }
  SUBCASE("chain with constant presheaf") {
    const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
    const auto l = left_adjoint_literal(cat, constant_presheaf(cat, 1), 2);
    CHECK(l.dim == 1);
    CHECK(l.comparison_is_iso);
  }
  SUBCASE("a zero restriction is not collapsed") {
    // the restriction arrows point away from id_b, so the colimit is F(a)
    const PathCategory cat(make_quiver(2, {{0, 1}}));
    const auto F = one_dim(cat, {0});
    const auto l = left_adjoint_literal(cat, F, 1);
    CHECK(l.dim == 1);
    CHECK(l.comparison.is_zero());
    CHECK_FALSE(l.comparison_is_iso);
    CHECK(left_adjoint_literal(cat, F, 0).comparison_is_iso);
  }
}

TEST_CASE("literal comparison on linear quivers is the restriction to the start") {
  for (std::size_t n = 1; n <= 3; ++n) {
    const PathCategory cat(qsheaf::testing::linear_quiver(n));
    qsheaf::testing::for_each_01_presheaf(cat, 2, [&](const Presheaf& F) {
      for (VertexId v = 0; v < n; ++v) {
        const auto l = left_adjoint_literal(cat, F, v);
        const Matrix r = restriction_to_start(cat, F, v);
        CHECK(l.dim == F.dims[0]);
        CHECK(l.comparison_is_iso == is_isomorphism(r));
      }
    });
  }
}

TEST_CASE("component colimit") {
  SUBCASE("constant presheaf is its own reflection") {
    const PathCategory cat(make_quiver(3, {{0, 1}, {0, 2}}));
    const auto C = constant_presheaf(cat, 2);
    const auto r = left_adjoint_component(cat, C);
    CHECK(r.reflected.dims == C.dims);
    for (const auto& u : r.unit.components) CHECK(is_isomorphism(u));
  }
  SUBCASE("invertible edge") {
    const PathCategory cat(make_quiver(2, {{0, 1}}));
    const Presheaf F{{2, 2}, {Matrix{{1, 1}, {0, 1}}}};
    const auto r = left_adjoint_component(cat, F);
    CHECK(r.reflected.dims == std::vector<std::size_t>{2, 2});
    CHECK(is_isomorphism(r.unit.components[0]));
    CHECK(is_isomorphism(r.unit.components[1]));
  }
  SUBCASE("zero edge, dims (1, 1)") {
    const PathCategory cat(make_quiver(2, {{0, 1}}));
    const auto r = left_adjoint_component(cat, one_dim(cat, {0}));
    CHECK(r.reflected.dims == std::vector<std::size_t>{1, 1});
    CHECK(r.unit.components[1].is_zero());
  }
}

TEST_CASE("component colimit lands in discrete sheaves with a natural unit") {
  Rng rng(62);
  for (int trial = 0; trial < 60; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng));
    auto F = qsheaf::testing::random_presheaf(cat, rng, 2);
    for (auto& m : F.maps)
      if (rng() % 3 == 0) m = Matrix::zero(m.rows(), m.cols());
    const auto r = left_adjoint_component(cat, F);
    CHECK(is_discrete_sheaf_criterion(cat, r.reflected));
    for (const auto& m : r.reflected.maps) CHECK(m.is_identity());
    CHECK(is_natural(cat, F, r.reflected, r.unit));
    // cocones into k on a component are Hom(F, k) restricted there
    const auto comps = cat.connected_components();
    if (comps.size() == 1) {
      const auto k = constant_presheaf(cat, 1);
      CHECK(r.reflected.dims[0] == nat_trans_space(cat, F, k).dim);
    }
  }
}

TEST_CASE("adjunction checks") {
  const PathCategory two(make_quiver(4, {{0, 1}, {2, 3}}));
  const auto C = constant_presheaf(two, 1);
  const auto r = check_adjunction(two, C, C);
  CHECK(r.left_dim == 2);
  CHECK(r.right_dim == 2);
  CHECK(r.match);
  CHECK(r.unit_bijection);

  const auto z = check_adjunction(two, C, zero_presheaf(two));
  CHECK(z.left_dim == 0);
  CHECK(z.right_dim == 0);
  CHECK(z.match);

  const PathCategory edge(make_quiver(2, {{0, 1}}));
  const auto F = one_dim(edge, {0});
  const auto k = constant_presheaf(edge, 1);
  const auto w = check_adjunction(edge, F, k);
  CHECK(w.right_dim == nat_trans_space(edge, F, k).dim);
  CHECK(w.match);
  CHECK(w.unit_bijection);
  CHECK_THROWS_AS(check_adjunction(edge, k, F), Error);
}

TEST_CASE("transport") {
  const PathCategory cat(make_quiver(2, {{0, 1}, {0, 1}}));
  const auto F = one_dim(cat, {1, 2});
  CHECK(transport(cat, F, Walk{0, {}}).is_identity());
  const Walk there_and_back{0, {{0, true}, {0, false}}};
  CHECK(transport(cat, F, there_and_back).is_identity());
  // forward along e1 applies F(e1)^-1, back along e2 applies F(e2)
  const Walk loop{0, {{0, true}, {1, false}}};
  CHECK(transport(cat, F, loop) == Matrix{{2}});
  CHECK(transport(cat, F, reverse(cat, loop)) == Matrix{{Scalar(1, 2)}});
  CHECK_THROWS_AS(transport(cat, F, Walk{1, {{0, true}}}), Error);
  CHECK_THROWS_AS(transport(cat, one_dim(cat, {0, 1}), Walk{0, {{0, true}}}), Error);
}

TEST_CASE("transport then reverse is the identity") {
  Rng rng(63);
  for (int trial = 0; trial < 40; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng, 4, 5));
    if (cat.edge_count() == 0) continue;
    const auto F = qsheaf::testing::random_invertible_presheaf(cat, rng, 2);
    // random walk of up to 6 steps
    Walk w{qsheaf::testing::uniform(rng, 0, cat.vertex_count() - 1), {}};
    VertexId at = w.start;
    for (int step = 0; step < 6; ++step) {
      std::vector<WalkStep> options;
      for (EdgeId e = 0; e < cat.edge_count(); ++e) {
        if (cat.edge_source(e) == at) options.push_back({e, true});
        if (cat.edge_target(e) == at) options.push_back({e, false});
      }
      if (options.empty()) break;
      const auto s = options[qsheaf::testing::uniform(rng, 0, options.size() - 1)];
      w.steps.push_back(s);
      at = s.forward ? cat.edge_target(s.edge) : cat.edge_source(s.edge);
    }
    const Matrix there = transport(cat, F, w);
    const Matrix back = transport(cat, F, reverse(cat, w));
    CHECK((back * there).is_identity());
    CHECK((there * back).is_identity());
  }
}

TEST_CASE("monodromy") {
  const PathCategory cat(make_quiver(2, {{0, 1}, {0, 1}}));
  const auto twisted = monodromy_report(cat, one_dim(cat, {1, 2}));
  REQUIRE(twisted.cycles.size() == 1);
  CHECK(twisted.cycles[0].edge == 1);
  CHECK(twisted.cycles[0].monodromy == Matrix{{Scalar(1, 2)}});
  CHECK_FALSE(twisted.all_identity());

  const auto flat = monodromy_report(cat, constant_presheaf(cat, 1));
  REQUIRE(flat.cycles.size() == 1);
  CHECK(flat.all_identity());

  const PathCategory tree(make_quiver(4, {{0, 1}, {0, 2}, {2, 3}}));
  const auto t = monodromy_report(tree, constant_presheaf(tree, 2));
  CHECK(t.cycles.empty());
  CHECK(t.components.size() == 1);
  CHECK_THROWS_AS(monodromy_report(cat, one_dim(cat, {0, 1})), Error);
}

TEST_CASE("monodromy of random discrete sheaves") {
  Rng rng(64);
  for (int trial = 0; trial < 40; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng, 4, 5));
    const auto F = qsheaf::testing::random_invertible_presheaf(cat, rng, 2);
    const auto r = monodromy_report(cat, F);
    std::size_t tree_edges = 0;
    for (const auto& c : r.components) {
      tree_edges += c.vertices.size() - 1;
      for (std::size_t i = 0; i < c.vertices.size(); ++i)
        CHECK(transport(cat, F, c.tree_walks[i]) == c.tree_transports[i]);
    }
    CHECK(r.cycles.size() == cat.edge_count() - tree_edges);
    for (const auto& c : r.cycles) {
      CHECK(transport(cat, F, c.walk) == c.monodromy);
      CHECK(c.is_identity == c.monodromy.is_identity());
    }
    CHECK(monodromy_report(cat, constant_presheaf(cat, 2)).all_identity());
  }
}
