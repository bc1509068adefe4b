#pragma once

#include <cstddef>
#include <vector>

#include "qsheaf/linalg.hpp"
#include "qsheaf/quiver.hpp"

namespace qsheaf {

/// Covariant functor on the path category, stored on edges:
/// maps[e] : k^{dims[s(e)]} -> k^{dims[t(e)]}.
struct Representation {
  std::vector<std::size_t> dims;
  std::vector<LinearMap> maps;

  /// Throws DimensionMismatch unless there is one correctly shaped map per edge.
  void check(const PathCategory& cat) const;
};

/// Contravariant functor on the path category, stored on edges:
/// maps[e] : k^{dims[t(e)]} -> k^{dims[s(e)]} is the restriction along e.
/// Identities restrict by the identity and are never stored.
struct Presheaf {
  std::vector<std::size_t> dims;
  std::vector<LinearMap> maps;

  void check(const PathCategory& cat) const;
  friend bool operator==(const Presheaf&, const Presheaf&) = default;
};

/// One component per vertex, component v : (source space at v) -> (target space at v).
struct NatTrans {
  std::vector<LinearMap> components;
  friend bool operator==(const NatTrans&, const NatTrans&) = default;
};

struct NatTransSpace {
  std::size_t dim = 0;
  std::vector<NatTrans> basis;
};

/// Restriction along a path: F(e1 then ... then en) = F(e1) * ... * F(en).
LinearMap eval_presheaf(const PathCategory& cat, const Presheaf& F, const PathMorphism& p);
/// V(e1 then ... then en) = V(en) * ... * V(e1).
LinearMap eval_representation(const PathCategory& cat, const Representation& V, const PathMorphism& p);

/// Vertexwise dual with transposed maps; dual spaces use the dual basis.
Presheaf dualize(const PathCategory& cat, const Representation& V);
/// The other direction; dualize(dualize(V)) has the same matrices as V.
Representation dualize(const PathCategory& cat, const Presheaf& F);
/// Components transposed; the result runs W* -> V*. Throws NotNatural.
NatTrans dualize_morphism(const PathCategory& cat, const Representation& V, const Representation& W,
                          const NatTrans& eta);

Presheaf constant_presheaf(const PathCategory& cat, std::size_t dim);
Presheaf zero_presheaf(const PathCategory& cat);

/// Edgewise naturality: G(e) eta_{t(e)} = eta_{s(e)} F(e).
bool is_natural(const PathCategory& cat, const Presheaf& F, const Presheaf& G, const NatTrans& eta);
/// Edgewise naturality: W(e) eta_{s(e)} = eta_{t(e)} V(e).
bool is_natural(const PathCategory& cat, const Representation& V, const Representation& W,
                const NatTrans& eta);

/// Solution space of the naturality equations for F -> G; edges suffice because
/// the category is free.
NatTransSpace nat_trans_space(const PathCategory& cat, const Presheaf& F, const Presheaf& G);
NatTransSpace nat_trans_space(const PathCategory& cat, const Representation& V, const Representation& W);

/// Vertexwise composite: (second ∘ first)_v = second_v * first_v.
NatTrans compose(const NatTrans& first, const NatTrans& second);
NatTrans identity_nat_trans(const std::vector<std::size_t>& dims);

}  // namespace qsheaf
