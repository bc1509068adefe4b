#include "doctest.h"
#include "qsheaf/presheaf.hpp"
#include "support/generators.hpp"

using namespace qsheaf;
using qsheaf::testing::make_quiver;
using qsheaf::testing::Rng;

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// Hom(F, G) dimension from the Kronecker form of the naturality equations,
// with column-major vectorisation: vec(A X B) = (B^T kron A) vec X.
std::size_t hom_dim_oracle(const PathCategory& cat, const Presheaf& F, const Presheaf& G) {
  std::vector<std::size_t> offset{0};
  for (VertexId v = 0; v < cat.vertex_count(); ++v) offset.push_back(offset.back() + F.dims[v] * G.dims[v]);
  const std::size_t unknowns = offset.back();
  std::vector<Matrix> rows;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    const VertexId s = cat.edge_source(e);
    const VertexId t = cat.edge_target(e);
    // G(e) eta_t - eta_s F(e) = 0, both F(t) -> G(s)
    Matrix block(G.dims[s] * F.dims[t], unknowns);
    const Matrix lhs = kron(Matrix::identity(F.dims[t]), G.maps[e]);
    const Matrix rhs = kron(F.maps[e].transpose(), Matrix::identity(G.dims[s]));
    for (std::size_t i = 0; i < block.rows(); ++i) {
      for (std::size_t j = 0; j < lhs.cols(); ++j) block(i, offset[t] + j) += lhs(i, j);
      for (std::size_t j = 0; j < rhs.cols(); ++j) block(i, offset[s] + j) -= rhs(i, j);
    }
    rows.push_back(block);
  }
  if (rows.empty()) return unknowns;
  return unknowns - rank(vstack(rows, unknowns));
}

Vector flatten(const NatTrans& eta) {
  Vector out;
  for (const auto& c : eta.components) out.insert(out.end(), c.entries().begin(), c.entries().end());
  return out;
}

}  // namespace

TEST_CASE("evaluation along paths") {
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}}));
  Presheaf F{{1, 2, 2}, {Matrix{{1, 2}}, Matrix{{0, 1}, {1, 0}}}};
  F.check(cat);
  const auto p = cat.path({"e1", "e2"});
  CHECK(eval_presheaf(cat, F, p) == (F.maps[0] * F.maps[1]));
  CHECK(eval_presheaf(cat, F, p) == Matrix{{2, 1}});
  CHECK(eval_presheaf(cat, F, cat.identity(1)).is_identity());

  Representation V{{2, 1, 1}, {Matrix{{1, 1}}, Matrix{{3}}}};
  V.check(cat);
  CHECK(eval_representation(cat, V, p) == Matrix{{3, 3}});
}

TEST_CASE("functoriality of evaluation on random presheaves") {
  Rng rng(41);
  for (int trial = 0; trial < 60; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng));
    const auto F = qsheaf::testing::random_presheaf(cat, rng, 2);
    const auto V = qsheaf::testing::random_representation(cat, rng, 2);
    for (VertexId v = 0; v < cat.vertex_count(); ++v) {
      for (const auto& g : cat.morphisms_into(v)) {
        for (const auto& f : cat.morphisms_into(g.source)) {
          // F(g∘f) = F(f) F(g), V(g∘f) = V(g) V(f)
          CHECK(eval_presheaf(cat, F, compose(f, g)) == eval_presheaf(cat, F, f) * eval_presheaf(cat, F, g));
          CHECK(eval_representation(cat, V, compose(f, g)) ==
                eval_representation(cat, V, g) * eval_representation(cat, V, f));
        }
      }
    }
  }
}

TEST_CASE("shape checks") {
  const PathCategory cat(make_quiver(2, {{0, 1}}));
  Presheaf bad{{1, 2}, {Matrix(2, 1)}};
  CHECK_THROWS_AS(bad.check(cat), Error);
  Presheaf missing{{1, 1}, {}};
  CHECK_THROWS_AS(missing.check(cat), Error);
  Representation rep{{1, 2}, {Matrix(2, 1)}};
  CHECK_NOTHROW(rep.check(cat));
}

TEST_CASE("dualization transposes and is an involution on matrices") {
  Rng rng(42);
  for (int trial = 0; trial < 40; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng));
    const auto V = qsheaf::testing::random_representation(cat, rng);
    const auto F = dualize(cat, V);
    F.check(cat);
    CHECK(F.dims == V.dims);
    for (EdgeId e = 0; e < cat.edge_count(); ++e) CHECK(F.maps[e] == V.maps[e].transpose());
    const Representation twice = dualize(cat, F);
    CHECK(twice.dims == V.dims);
    CHECK(twice.maps == V.maps);
  }
  const PathCategory one(make_quiver(2, {{0, 1}}));
  const Representation id{{1, 1}, {Matrix::identity(1)}};
  CHECK(dualize(one, id).maps[0].is_identity());
}

TEST_CASE("dualizing a morphism reverses it") {
  Rng rng(43);
  const PathCategory cat(make_quiver(3, {{0, 1}, {1, 2}, {0, 2}}));
  for (int trial = 0; trial < 20; ++trial) {
    const auto V = qsheaf::testing::random_representation(cat, rng, 2);
    const auto W = qsheaf::testing::random_representation(cat, rng, 2);
    const auto space = nat_trans_space(cat, V, W);
    for (const auto& eta : space.basis) {
      CHECK(is_natural(cat, V, W, eta));
      const auto dual = dualize_morphism(cat, V, W, eta);
      CHECK(is_natural(cat, dualize(cat, W), dualize(cat, V), dual));
    }
  }
  const PathCategory edge(make_quiver(2, {{0, 1}}));
  const Representation V{{1, 1}, {Matrix{{1}}}};
  const Representation W{{1, 1}, {Matrix{{0}}}};
  const NatTrans not_natural{{Matrix{{1}}, Matrix{{1}}}};
  CHECK_FALSE(is_natural(edge, V, W, not_natural));
  CHECK_THROWS_AS(dualize_morphism(edge, V, W, not_natural), Error);
}

TEST_CASE("nat trans dimensions match the Kronecker oracle") {
  Rng rng(44);
  for (int trial = 0; trial < 80; ++trial) {
    const PathCategory cat(qsheaf::testing::random_dag(rng));
    auto F = qsheaf::testing::random_presheaf(cat, rng, 2);
    auto G = qsheaf::testing::random_presheaf(cat, rng, 2);
    // make degenerate maps common
    for (auto& m : F.maps)
      if (rng() % 3 == 0) m = Matrix::zero(m.rows(), m.cols());
    const auto space = nat_trans_space(cat, F, G);
    CAPTURE(trial);
    CHECK(space.dim == hom_dim_oracle(cat, F, G));
    CHECK(space.basis.size() == space.dim);
    std::vector<Vector> flat;
    for (const auto& eta : space.basis) {
      CHECK(is_natural(cat, F, G, eta));
      flat.push_back(flatten(eta));
    }
    if (!flat.empty() && !flat[0].empty()) CHECK(rank(Matrix::from_columns(flat[0].size(), flat)) == space.dim);
  }
}

TEST_CASE("hand-counted hom spaces") {
  const PathCategory connected(make_quiver(3, {{0, 1}, {1, 2}}));
  for (std::size_t n = 0; n <= 3; ++n) {
    const auto C = constant_presheaf(connected, n);
    CHECK(nat_trans_space(connected, C, C).dim == n * n);
  }
  const PathCategory two_parts(make_quiver(4, {{0, 1}, {2, 3}}));
  const auto C1 = constant_presheaf(two_parts, 1);
  CHECK(nat_trans_space(two_parts, C1, C1).dim == 2);
  CHECK(nat_trans_space(two_parts, C1, zero_presheaf(two_parts)).dim == 0);
}

TEST_CASE("composition of natural transformations") {
  const PathCategory cat(make_quiver(2, {{0, 1}}));
  const auto C = constant_presheaf(cat, 2);
  const auto id = identity_nat_trans(C.dims);
  CHECK(is_natural(cat, C, C, id));
  const NatTrans twice{{Scalar(2) * Matrix::identity(2), Scalar(2) * Matrix::identity(2)}};
  const auto both = compose(twice, twice);
  CHECK(both.components[0] == Scalar(4) * Matrix::identity(2));
  CHECK(compose(id, twice) == twice);
}
