#include <algorithm>
#include <set>

#include "doctest.h"
#include "qsheaf/sieve.hpp"
#include "support/generators.hpp"

using namespace qsheaf;
using qsheaf::testing::make_quiver;

namespace {

// Subset filter: keep subsets closed under precomposition with single edges.
std::vector<std::vector<PathMorphism>> brute_force_sieves(const PathCategory& cat, VertexId v) {
  const auto& homs = cat.morphisms_into(v);
  std::vector<std::vector<PathMorphism>> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << homs.size()); ++mask) {
    std::vector<PathMorphism> members;
    for (std::size_t i = 0; i < homs.size(); ++i)
      if (mask >> i & 1U) members.push_back(homs[i]);
    bool closed = true;
    for (const auto& f : members) {
      for (EdgeId e : cat.incoming(f.source)) {
        const auto g = compose(cat.edge_morphism(e), f);
        closed = closed && std::find(members.begin(), members.end(), g) != members.end();
      }
    }
    if (closed) out.push_back(members);
  }
  return out;
}

std::set<std::vector<std::string>> describe_all(const PathCategory& cat,
                                                const std::vector<std::vector<PathMorphism>>& sieves) {
  std::set<std::vector<std::string>> out;
  for (const auto& s : sieves) {
    std::vector<std::string> names;
    for (const auto& f : s) names.push_back(cat.describe(f));
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

std::vector<std::string> names(const PathCategory& cat, const Sieve& s) {
  std::vector<std::string> out;
  for (const auto& f : s.members()) out.push_back(cat.describe(f));
  return out;
}

}  // namespace

TEST_CASE("sieve construction checks closure and codomain") {
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
  const VertexId c = 2;
  const auto e2 = cat.path({"e2"});
  const auto e21 = cat.path({"e1", "e2"});
  CHECK_NOTHROW(Sieve(cat, c, {e21}));
  CHECK_NOTHROW(Sieve(cat, c, {e2, e21}));
  CHECK_THROWS_AS(Sieve(cat, c, {e2}), Error);
  CHECK_THROWS_AS(Sieve(cat, 1, {e2}), Error);
  CHECK(maximal_sieve(cat, c).size() == 3);
  const std::vector<PathMorphism> gens{e2};
  CHECK(names(cat, generate_sieve(cat, c, gens)) == std::vector<std::string>{"e2", "e2.e1"});
}

TEST_CASE("enumeration agrees with the subset filter") {
  for (const auto& q : qsheaf::testing::small_dag_family(4, 3)) {
    const PathCategory cat(q);
    for (VertexId v = 0; v < cat.vertex_count(); ++v) {
      const auto sieves = enumerate_sieves(cat, v);
      std::vector<std::vector<PathMorphism>> as_lists;
      for (const auto& s : sieves) as_lists.push_back(s.members());
      const auto oracle = brute_force_sieves(cat, v);
      CHECK(sieves.size() == oracle.size());
      CHECK(describe_all(cat, as_lists) == describe_all(cat, oracle));
      CHECK(std::is_sorted(sieves.begin(), sieves.end(), sieve_less));
    }
  }
}

TEST_CASE("sieves on the chain's last vertex") {
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
  const auto sieves = enumerate_sieves(cat, 2);
  REQUIRE(sieves.size() == 4);
  CHECK(sieves[0].empty());
  CHECK(names(cat, sieves[1]) == std::vector<std::string>{"e2.e1"});
  CHECK(names(cat, sieves[2]) == std::vector<std::string>{"e2", "e2.e1"});
  CHECK(names(cat, sieves[3]) == std::vector<std::string>{"id_c", "e2", "e2.e1"});
}

TEST_CASE("pullback agrees with its definition") {
  qsheaf::testing::Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng, 4, 4));
    for (VertexId v = 0; v < cat.vertex_count(); ++v) {
      for (const auto& s : enumerate_sieves(cat, v)) {
        for (const auto& f : cat.morphisms_into(v)) {
          const auto pb = pullback_sieve(cat, f, s);
          CHECK(pb.codomain() == f.source);
          for (const auto& g : cat.morphisms_into(f.source))
            CHECK(pb.contains(g) == s.contains(compose(g, f)));
          if (s.contains(f)) CHECK(pb == maximal_sieve(cat, f.source));
        }
      }
    }
  }
  const PathCategory cat(make_quiver(2, {{0, 1}}));
  CHECK_THROWS_AS(pullback_sieve(cat, cat.identity(0), maximal_sieve(cat, 1)), Error);
}

TEST_CASE("enumeration refuses large hom-sets") {
  // 3 parallel edges a->b and 4 parallel edges b->c: 1 + 4 + 12 morphisms into c
  const PathCategory cat(make_quiver(3, {{0, 1}, {0, 1}, {0, 1}, {1, 2}, {1, 2}, {1, 2}, {1, 2}}));
  CHECK(cat.morphisms_into(2).size() == 17);
  CHECK_THROWS_AS(enumerate_sieves(cat, 2), Error);
  CHECK_THROWS_AS(covering_sieves(cat, Topology::discrete(), 2), Error);
  CHECK_NOTHROW(covering_sieves(cat, Topology::coarse(), 2));
}

TEST_CASE("topology parsing") {
  CHECK(Topology::parse("coarse") == Topology::coarse());
  CHECK(Topology::parse("discrete") == Topology::discrete(false));
  CHECK(Topology::parse("discrete+empty") == Topology::discrete(true));
  CHECK(Topology::parse("edge") == Topology::edge_generated());
  CHECK(Topology::parse("graded:2") == Topology::length_graded(2));
  CHECK(Topology::parse("graded:2").to_string() == "graded:2");
  CHECK_THROWS_AS(Topology::parse("graded:"), Error);
  CHECK_THROWS_AS(Topology::parse("fine"), Error);
}

TEST_CASE("covering sieves per topology") {
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
  CHECK(covering_sieves(cat, Topology::coarse(), 2).size() == 1);
  CHECK(covering_sieves(cat, Topology::discrete(false), 2).size() == 3);
  CHECK(covering_sieves(cat, Topology::discrete(true), 2).size() == 4);
  // edge-generated: sieves containing some incoming edge
  const auto edge = covering_sieves(cat, Topology::edge_generated(), 2);
  CHECK(edge.size() == 2);
  // a source vertex is covered by its maximal sieve only
  CHECK(covering_sieves(cat, Topology::edge_generated(), 0).size() == 1);
  CHECK(covering_sieves(cat, Topology::length_graded(1), 2).size() == 1);
}

TEST_CASE("coarse and discrete+empty satisfy the axioms on every small DAG") {
  for (const auto& q : qsheaf::testing::small_dag_family()) {
    const PathCategory cat(q);
    CHECK(audit_axioms(cat, Topology::coarse()).all_pass());
    CHECK(audit_axioms(cat, Topology::discrete(true)).all_pass());
  }
}

TEST_CASE("discrete without the empty sieve fails GT2 exactly at in-degree two") {
  for (const auto& q : qsheaf::testing::small_dag_family()) {
    const PathCategory cat(q);
    bool fan_in = false;
    for (VertexId v = 0; v < cat.vertex_count(); ++v) fan_in = fan_in || cat.incoming(v).size() >= 2;
    const auto r = audit_axioms(cat, Topology::discrete(false));
    CHECK(r.gt1());
    CHECK(r.gt3());
    CHECK(r.gt2() == !fan_in);
    if (r.gt2_counterexample) CHECK(r.gt2_counterexample->pulled_back.empty());
  }
}

TEST_CASE("edge-generated topology on the chain fails GT3") {
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
  const auto r = audit_axioms(cat, Topology::edge_generated());
  CHECK(r.gt1());
  CHECK(r.gt2());
  REQUIRE(r.gt3_counterexample);
  CHECK(names(cat, r.gt3_counterexample->covering) == std::vector<std::string>{"e2", "e2.e1"});
  CHECK(names(cat, r.gt3_counterexample->candidate) == std::vector<std::string>{"e2.e1"});
}

TEST_CASE("length-graded covers contain the identity and so behave like coarse") {
  for (const auto& q : qsheaf::testing::small_dag_family(4, 3)) {
    const PathCategory cat(q);
    for (std::size_t n = 0; n <= 2; ++n) {
      const auto r = audit_axioms(cat, Topology::length_graded(n));
      CHECK(r.all_pass());
      for (VertexId v = 0; v < cat.vertex_count(); ++v)
        CHECK(covering_sieves(cat, Topology::length_graded(n), v) ==
              std::vector<Sieve>{maximal_sieve(cat, v)});
    }
  }
}

TEST_CASE("coarse covers are discrete covers") {
  for (const auto& q : qsheaf::testing::small_dag_family()) {
    const PathCategory cat(q);
    for (VertexId v = 0; v < cat.vertex_count(); ++v)
      for (const auto& s : covering_sieves(cat, Topology::coarse(), v))
        CHECK(is_covering(cat, Topology::discrete(false), s));
  }
}
