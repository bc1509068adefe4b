#include "qsheaf/functors.hpp"

#include <algorithm>
#include <deque>

#include "qsheaf/error.hpp"
#include "qsheaf/sheaf_check.hpp"

namespace qsheaf {

namespace {

void require_discrete(const PathCategory& cat, const Presheaf& F, const char* which) {
  if (auto e = first_non_iso_edge(cat, F))
    throw Error(ErrorCode::NotDiscreteSheaf, std::string(which) + " restricts non-invertibly along edge '" +
                                                 cat.edge_name(*e) + "'");
}

Vector flatten(const NatTrans& eta) {
  Vector out;
  for (const auto& c : eta.components) out.insert(out.end(), c.entries().begin(), c.entries().end());
  return out;
}

}  // namespace

Presheaf include_discrete(const PathCategory& cat, const Presheaf& F) {
  require_discrete(cat, F, "presheaf");
  return F;
}

FullyFaithfulEvidence fully_faithful_evidence(const PathCategory& cat, const Presheaf& F, const Presheaf& G) {
  require_discrete(cat, F, "source");
  require_discrete(cat, G, "target");
  const auto discrete = nat_trans_space(cat, F, G);
  const auto coarse = nat_trans_space(cat, include_discrete(cat, F), include_discrete(cat, G));
  FullyFaithfulEvidence out{discrete.dim, coarse.dim, false};
  out.equal = discrete.dim == coarse.dim && discrete.basis == coarse.basis;
  return out;
}

LiteralAdjoint left_adjoint_literal(const PathCategory& cat, const Presheaf& F, VertexId v) {
  F.check(cat);
  const SliceCategory slice = cat.slice(v);
  Diagram d;
  for (const auto& f : slice.objects) d.nodes.push_back(F.dims.at(f.source));
  for (const auto& a : slice.arrows)
    d.arrows.push_back({a.to, a.from, eval_presheaf(cat, F, a.via)});

  const auto colim = colimit(d);
  const auto id_pos = static_cast<std::size_t>(
      std::find(slice.objects.begin(), slice.objects.end(), cat.identity(v)) - slice.objects.begin());
  LiteralAdjoint out;
  out.vertex = v;
  out.dim = colim.dim;
  out.comparison = colim.legs[id_pos];
  out.comparison_is_iso = is_isomorphism(out.comparison);
  return out;
}

ComponentAdjoint left_adjoint_component(const PathCategory& cat, const Presheaf& F) {
  F.check(cat);
  ComponentAdjoint out;
  out.reflected.dims.assign(cat.vertex_count(), 0);
  out.unit.components.assign(cat.vertex_count(), Matrix());

  for (const auto& comp : cat.connected_components()) {
    std::vector<std::size_t> local(cat.vertex_count(), SIZE_MAX);
    Diagram d;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      local[comp[i]] = i;
      d.nodes.push_back(F.dims[comp[i]]);
    }
    for (EdgeId e = 0; e < cat.edge_count(); ++e) {
      const auto t = local[cat.edge_target(e)];
      if (t == SIZE_MAX) continue;
      d.arrows.push_back({t, local[cat.edge_source(e)], F.maps[e]});
    }
    const auto colim = colimit(d);
    for (std::size_t i = 0; i < comp.size(); ++i) {
      out.reflected.dims[comp[i]] = colim.dim;
      out.unit.components[comp[i]] = colim.legs[i];
    }
  }
  for (EdgeId e = 0; e < cat.edge_count(); ++e)
    out.reflected.maps.push_back(Matrix::identity(out.reflected.dims[cat.edge_source(e)]));
  return out;
}

AdjunctionReport check_adjunction(const PathCategory& cat, const Presheaf& F, const Presheaf& G) {
  F.check(cat);
  require_discrete(cat, G, "target");
  const auto L = left_adjoint_component(cat, F);
  const auto left = nat_trans_space(cat, L.reflected, G);
  const auto right = nat_trans_space(cat, F, G);

  AdjunctionReport out;
  out.left_dim = left.dim;
  out.right_dim = right.dim;
  out.match = left.dim == right.dim;

  // phi -> phi ∘ unit must land in Hom(F, G) and be injective with full image.
  std::vector<Vector> images;
  bool natural = true;
  for (const auto& phi : left.basis) {
    const NatTrans composite = compose(L.unit, phi);
    natural = natural && is_natural(cat, F, G, composite);
    images.push_back(flatten(composite));
  }
  std::size_t flat_len = 0;
  for (VertexId v = 0; v < cat.vertex_count(); ++v) flat_len += F.dims[v] * G.dims[v];
  const std::size_t image_rank = rank(Matrix::from_columns(flat_len, images));
  out.unit_bijection = natural && image_rank == left.dim && image_rank == right.dim;
  return out;
}

Walk reverse(const PathCategory& cat, const Walk& w) {
  VertexId end = w.start;
  for (const auto& s : w.steps) end = s.forward ? cat.edge_target(s.edge) : cat.edge_source(s.edge);
  Walk out{end, {}};
  for (auto it = w.steps.rbegin(); it != w.steps.rend(); ++it) out.steps.push_back({it->edge, !it->forward});
  return out;
}

LinearMap transport(const PathCategory& cat, const Presheaf& F, const Walk& w) {
  F.check(cat);
  VertexId at = w.start;
  Matrix acc = Matrix::identity(F.dims.at(at));
  for (const auto& step : w.steps) {
    if (step.edge >= cat.edge_count()) throw Error(ErrorCode::UnknownEdge, "edge index out of range");
    const VertexId s = cat.edge_source(step.edge);
    const VertexId t = cat.edge_target(step.edge);
    if (at != (step.forward ? s : t))
      throw Error(ErrorCode::NonComposable, "walk leaves vertex '" + cat.vertex_name(at) + "' along edge '" +
                                                cat.edge_name(step.edge) + "' which is not incident there");
    const auto inv = inverse(F.maps[step.edge]);
    if (!inv) throw Error(ErrorCode::NonInvertibleEdge, "edge '" + cat.edge_name(step.edge) + "'");
    if (step.forward) {
      acc = *inv * acc;
      at = t;
    } else {
      acc = F.maps[step.edge] * acc;
      at = s;
    }
  }
  return acc;
}

bool TransportReport::all_identity() const {
  return std::all_of(cycles.begin(), cycles.end(), [](const Cycle& c) { return c.is_identity; });
}

TransportReport monodromy_report(const PathCategory& cat, const Presheaf& F) {
  require_discrete(cat, F, "presheaf");
  std::vector<std::vector<EdgeId>> incident(cat.vertex_count());
  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    incident[cat.edge_source(e)].push_back(e);
    incident[cat.edge_target(e)].push_back(e);
  }
  for (auto& list : incident) std::sort(list.begin(), list.end());

  TransportReport report;
  std::vector<Walk> tree_walk(cat.vertex_count());
  std::vector<bool> seen(cat.vertex_count(), false);
  std::vector<bool> tree_edge(cat.edge_count(), false);

  for (const auto& comp : cat.connected_components()) {
    TransportReport::Component c;
    c.root = comp.front();
    tree_walk[c.root] = Walk{c.root, {}};
    seen[c.root] = true;
    std::deque<VertexId> queue{c.root};
    while (!queue.empty()) {
      const VertexId v = queue.front();
      queue.pop_front();
      c.vertices.push_back(v);
      for (auto e : incident[v]) {
        const bool forward = cat.edge_source(e) == v;
        const VertexId w = forward ? cat.edge_target(e) : cat.edge_source(e);
        if (seen[w]) continue;
        seen[w] = true;
        tree_edge[e] = true;
        tree_walk[w] = tree_walk[v];
        tree_walk[w].steps.push_back({e, forward});
        queue.push_back(w);
      }
    }
    std::sort(c.vertices.begin(), c.vertices.end());
    for (auto v : c.vertices) {
      c.tree_walks.push_back(tree_walk[v]);
      c.tree_transports.push_back(transport(cat, F, tree_walk[v]));
    }
    report.components.push_back(std::move(c));
  }

  std::vector<VertexId> root_of(cat.vertex_count());
  for (const auto& c : report.components)
    for (auto v : c.vertices) root_of[v] = c.root;

  for (EdgeId e = 0; e < cat.edge_count(); ++e) {
    if (tree_edge[e]) continue;
    TransportReport::Cycle cyc;
    cyc.edge = e;
    cyc.base = root_of[cat.edge_source(e)];
    cyc.walk = tree_walk[cat.edge_source(e)];
    cyc.walk.steps.push_back({e, true});
    const Walk back = reverse(cat, tree_walk[cat.edge_target(e)]);
    cyc.walk.steps.insert(cyc.walk.steps.end(), back.steps.begin(), back.steps.end());
    cyc.monodromy = transport(cat, F, cyc.walk);
    cyc.is_identity = cyc.monodromy.is_identity();
    report.cycles.push_back(std::move(cyc));
  }
  return report;
}

}  // namespace qsheaf
