#pragma once

#include <cstddef>
#include <vector>

#include "qsheaf/linalg.hpp"
#include "qsheaf/presheaf.hpp"
#include "qsheaf/quiver.hpp"

namespace qsheaf {

/// The inclusion of discrete sheaves into coarse sheaves: identity on data.
/// Throws NotDiscreteSheaf when some edge restriction is not invertible.
Presheaf include_discrete(const PathCategory& cat, const Presheaf& F);

struct FullyFaithfulEvidence {
  std::size_t dim_discrete = 0;
  std::size_t dim_coarse = 0;
  bool equal = false;
};

/// Hom(F, G) among discrete sheaves against Hom(iota F, iota G) among coarse
/// sheaves; dimension and basis must agree.
FullyFaithfulEvidence fully_faithful_evidence(const PathCategory& cat, const Presheaf& F, const Presheaf& G);

/// Colimit of F over the slice of morphisms into v, and the leg at id_v.
struct LiteralAdjoint {
  VertexId vertex = 0;
  std::size_t dim = 0;
  /// F(v) -> colimit, the cocone leg at the object id_v.
  LinearMap comparison;
  bool comparison_is_iso = false;
};

/// The diagram has a node F(u) per f: u -> v and, per slice arrow g: f' -> f
/// (f∘g = f'), an arrow F(u) -> F(u') carrying F(g).
LiteralAdjoint left_adjoint_literal(const PathCategory& cat, const Presheaf& F, VertexId v);

struct ComponentAdjoint {
  /// Constant on each connected component, identity restrictions.
  Presheaf reflected;
  /// F -> iota(reflected), built from the colimit cocone.
  NatTrans unit;
};

/// Colimit of F over the whole of each connected component.
ComponentAdjoint left_adjoint_component(const PathCategory& cat, const Presheaf& F);

struct AdjunctionReport {
  /// dim Hom(LF, G) in discrete sheaves.
  std::size_t left_dim = 0;
  /// dim Hom(F, iota G) in presheaves.
  std::size_t right_dim = 0;
  bool match = false;
  /// Precomposing a basis of Hom(LF, G) with the unit gives a basis of Hom(F, G).
  bool unit_bijection = false;
};

/// Uses left_adjoint_component. Throws NotDiscreteSheaf unless G is one.
AdjunctionReport check_adjunction(const PathCategory& cat, const Presheaf& F, const Presheaf& G);

struct WalkStep {
  EdgeId edge = 0;
  /// Forward runs s(e) -> t(e).
  bool forward = true;
};

/// Undirected walk in the underlying graph.
struct Walk {
  VertexId start = 0;
  std::vector<WalkStep> steps;
};

/// Walk in the opposite direction, ending where `w` starts.
Walk reverse(const PathCategory& cat, const Walk& w);

/// Map F(start) -> F(end): a backward step applies F(e), a forward step F(e)^-1.
/// Throws NonInvertibleEdge, or NonComposable for a disconnected walk.
LinearMap transport(const PathCategory& cat, const Presheaf& F, const Walk& w);

struct TransportReport {
  struct Component {
    VertexId root = 0;
    std::vector<VertexId> vertices;
    /// Per vertex of the component (same order): tree walk from root and its transport.
    std::vector<Walk> tree_walks;
    std::vector<LinearMap> tree_transports;
  };
  struct Cycle {
    EdgeId edge = 0;
    VertexId base = 0;
    /// Root to s(e) along the tree, across e, back to root along the tree.
    Walk walk;
    LinearMap monodromy;
    bool is_identity = false;
  };
  std::vector<Component> components;
  std::vector<Cycle> cycles;

  bool all_identity() const;
};

/// Breadth-first spanning tree per component from its least vertex, edges
/// visited in edge order; one fundamental cycle per non-tree edge.
/// Throws NotDiscreteSheaf.
TransportReport monodromy_report(const PathCategory& cat, const Presheaf& F);

}  // namespace qsheaf
