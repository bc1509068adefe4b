#include "qsheaf/presheaf.hpp"

#include <numeric>
#include <string>

#include "qsheaf/error.hpp"

namespace qsheaf {

namespace {

// Shared storage check: maps[e] must run dims[from(e)] -> dims[to(e)].
template <class FromFn, class ToFn>
void check_edge_data(const PathCategory& cat, const std::vector<std::size_t>& dims,
                     const std::vector<LinearMap>& maps, FromFn from, ToFn to) {
  if (dims.size() != cat.vertex_count())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(cat.vertex_count()) +
                                                  " vertex dimensions, got " + std::to_string(dims.size()));
  if (maps.size() != cat.edge_count())
    throw Error(ErrorCode::DimensionMismatch, "expected " + std::to_string(cat.edge_count()) +
                                                  " edge maps, got " + std::to_string(maps.size()));
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    const auto& m = maps[e];
    if (m.cols() != dims[from(e)] || m.rows() != dims[to(e)])
      throw Error(ErrorCode::DimensionMismatch,
                  "map on edge '" + cat.edge_name(e) + "' is " + std::to_string(m.rows()) + "x" +
                      std::to_string(m.cols()) + ", expected " + std::to_string(dims[to(e)]) + "x" +
                      std::to_string(dims[from(e)]));
  }
}

// Solves  target_map[e] * eta_{a(e)} = eta_{b(e)} * source_map[e]  for all edges,
// where source_map[e] : src_dims[a] -> src_dims[b], target_map[e] : tgt_dims[a] -> tgt_dims[b].
NatTransSpace solve_naturality(const PathCategory& cat, const std::vector<std::size_t>& src_dims,
                               const std::vector<std::size_t>& tgt_dims,
                               const std::vector<LinearMap>& source_maps,
                               const std::vector<LinearMap>& target_maps,
                               const std::vector<VertexId>& from_vertex,
                               const std::vector<VertexId>& to_vertex) {
  const std::size_t nv = cat.vertex_count();
  // Unknowns: entries of eta_v (tgt_dims[v] x src_dims[v]) row-major, vertex by vertex.
  std::vector<std::size_t> off(nv + 1, 0);
  for (VertexId v = 0; v < nv; ++v) off[v + 1] = off[v] + tgt_dims[v] * src_dims[v];
  const std::size_t unknowns = off[nv];

  std::vector<Vector> rows;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    const VertexId a = from_vertex[e];
    const VertexId b = to_vertex[e];
    const auto& S = source_maps[e];  // src_dims[b] x src_dims[a]
    const auto& T = target_maps[e];  // tgt_dims[b] x tgt_dims[a]
    // Entry (i, j) of  T * eta_a - eta_b * S,  i < tgt_dims[b], j < src_dims[a].
    for (std::size_t i = 0; i < tgt_dims[b]; ++i) {
      for (std::size_t j = 0; j < src_dims[a]; ++j) {
        Vector row(unknowns);
        for (std::size_t k = 0; k < tgt_dims[a]; ++k) row[off[a] + k * src_dims[a] + j] += T(i, k);
        for (std::size_t k = 0; k < src_dims[b]; ++k) row[off[b] + i * src_dims[b] + k] -= S(k, j);
        rows.push_back(std::move(row));
      }
    }
  }
  Matrix system(rows.size(), unknowns);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (std::size_t c = 0; c < unknowns; ++c) system(r, c) = rows[r][c];

  NatTransSpace out;
  for (const auto& x : kernel_basis(system)) {
    NatTrans eta;
    for (VertexId v = 0; v < nv; ++v) {
      Matrix m(tgt_dims[v], src_dims[v]);
      for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j) m(i, j) = x[off[v] + i * m.cols() + j];
      eta.components.push_back(std::move(m));
    }
    out.basis.push_back(std::move(eta));
  }
  out.dim = out.basis.size();
  return out;
}

std::vector<VertexId> sources(const PathCategory& cat) {
  std::vector<VertexId> out;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) out.push_back(cat.edge_source(e));
  return out;
}

std::vector<VertexId> targets(const PathCategory& cat) {
  std::vector<VertexId> out;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) out.push_back(cat.edge_target(e));
  return out;
}

bool components_fit(const NatTrans& eta, const std::vector<std::size_t>& from,
                    const std::vector<std::size_t>& to) {
  if (eta.components.size() != from.size()) return false;
  for (std::size_t v = 0; v < from.size(); ++v)
    if (eta.components[v].cols() != from[v] || eta.components[v].rows() != to[v]) return false;
  return true;
}

}  // namespace

void Representation::check(const PathCategory& cat) const {
  check_edge_data(
      cat, dims, maps, [&](EdgeId e) { return cat.edge_source(e); }, [&](EdgeId e) { return cat.edge_target(e); });
}

void Presheaf::check(const PathCategory& cat) const {
  check_edge_data(
      cat, dims, maps, [&](EdgeId e) { return cat.edge_target(e); }, [&](EdgeId e) { return cat.edge_source(e); });
}

LinearMap eval_presheaf([[maybe_unused]] const PathCategory& cat, const Presheaf& F, const PathMorphism& p) {
  for (auto e : p.edges)
    if (e >= F.maps.size()) throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  if (p.edges.empty()) return Matrix::identity(F.dims.at(p.target));
  Matrix out = F.maps[p.edges.back()];
  for (auto it = p.edges.rbegin() + 1; it != p.edges.rend(); ++it) out = F.maps[*it] * out;
  return out;
}

LinearMap eval_representation([[maybe_unused]] const PathCategory& cat, const Representation& V, const PathMorphism& p) {
  for (auto e : p.edges)
    if (e >= V.maps.size()) throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e));
  if (p.edges.empty()) return Matrix::identity(V.dims.at(p.source));
  Matrix out = V.maps[p.edges.front()];
  for (auto it = p.edges.begin() + 1; it != p.edges.end(); ++it) out = V.maps[*it] * out;
  return out;
}

Presheaf dualize(const PathCategory& cat, const Representation& V) {
  V.check(cat);
  Presheaf F{V.dims, {}};
  for (const auto& m : V.maps) F.maps.push_back(transpose_map(m));
  return F;
}

Representation dualize(const PathCategory& cat, const Presheaf& F) {
  F.check(cat);
  Representation V{F.dims, {}};
  for (const auto& m : F.maps) V.maps.push_back(transpose_map(m));
  return V;
}

NatTrans dualize_morphism(const PathCategory& cat, const Representation& V, const Representation& W,
                          const NatTrans& eta) {
  if (!is_natural(cat, V, W, eta))
    throw Error(ErrorCode::NotNatural, "input transformation fails a naturality square");
  NatTrans out;
  for (const auto& c : eta.components) out.components.push_back(transpose_map(c));
  return out;
}

Presheaf constant_presheaf(const PathCategory& cat, std::size_t dim) {
  Presheaf F{std::vector<std::size_t>(cat.vertex_count(), dim), {}};
  F.maps.assign(cat.edge_count(), Matrix::identity(dim));
  return F;
}

Presheaf zero_presheaf(const PathCategory& cat) { return constant_presheaf(cat, 0); }

bool is_natural(const PathCategory& cat, const Presheaf& F, const Presheaf& G, const NatTrans& eta) {
  F.check(cat);
  G.check(cat);
  if (!components_fit(eta, F.dims, G.dims)) return false;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    const auto s = cat.edge_source(e);
    const auto t = cat.edge_target(e);
    if (!(G.maps[e] * eta.components[t] == eta.components[s] * F.maps[e])) return false;
  }
  return true;
}

bool is_natural(const PathCategory& cat, const Representation& V, const Representation& W,
                const NatTrans& eta) {
  V.check(cat);
  W.check(cat);
  if (!components_fit(eta, V.dims, W.dims)) return false;
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    const auto s = cat.edge_source(e);
    const auto t = cat.edge_target(e);
    if (!(W.maps[e] * eta.components[s] == eta.components[t] * V.maps[e])) return false;
  }
  return true;
}

NatTransSpace nat_trans_space(const PathCategory& cat, const Presheaf& F, const Presheaf& G) {
  F.check(cat);
  G.check(cat);
  // Presheaf maps run t(e) -> s(e).
  return solve_naturality(cat, F.dims, G.dims, F.maps, G.maps, targets(cat), sources(cat));
}

NatTransSpace nat_trans_space(const PathCategory& cat, const Representation& V, const Representation& W) {
  V.check(cat);
  W.check(cat);
  return solve_naturality(cat, V.dims, W.dims, V.maps, W.maps, sources(cat), targets(cat));
}

NatTrans compose(const NatTrans& first, const NatTrans& second) {
  if (first.components.size() != second.components.size())
    throw Error(ErrorCode::DimensionMismatch, "natural transformations over different vertex sets");
  NatTrans out;
  for (std::size_t v = 0; v < first.components.size(); ++v)
    out.components.push_back(second.components[v] * first.components[v]);
  return out;
}

NatTrans identity_nat_trans(const std::vector<std::size_t>& dims) {
  NatTrans out;
  for (auto d : dims) out.components.push_back(Matrix::identity(d));
  return out;
}

}  // namespace qsheaf
