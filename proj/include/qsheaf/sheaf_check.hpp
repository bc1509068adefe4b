#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qsheaf/linalg.hpp"
#include "qsheaf/presheaf.hpp"
#include "qsheaf/sieve.hpp"

namespace qsheaf {

struct Subspace {
  std::size_t ambient_dim = 0;
  std::vector<Vector> basis;
  std::size_t dim() const noexcept { return basis.size(); }
};

/// Vectors s_f in F(dom f), one per sieve member, in the sieve's canonical order.
struct SectionFamily {
  Sieve sieve;
  std::vector<Vector> sections;
};

enum class Diagnosis { None, EpsilonNotInjective, CompatibleFamilyNotGlued };

std::string_view to_string(Diagnosis d);

/// Outcome of the equalizer test for one list of morphisms into a vertex.
struct EqualizerCheck {
  bool holds = true;
  Diagnosis diagnosis = Diagnosis::None;
  std::size_t section_dim = 0;   // dim F(v)
  std::size_t epsilon_rank = 0;  // rank of the section map
  std::size_t compatible_dim = 0;
  /// EpsilonNotInjective: a nonzero s in F(v) with eps(s) = 0.
  /// CompatibleFamilyNotGlued: a compatible family (flattened) outside image(eps).
  std::optional<Vector> witness;
};

struct SheafVerdict {
  bool holds = true;
  std::optional<VertexId> vertex;
  std::optional<Sieve> failing_sieve;
  Diagnosis diagnosis = Diagnosis::None;
  std::optional<Vector> witness;
  std::size_t sieves_checked = 0;
};

/// Block offsets of the product over `members`; offsets.back() is its dimension.
std::vector<std::size_t> product_offsets(const Presheaf& F, std::span<const PathMorphism> members);

/// eps : F(v) -> prod_{f in members} F(dom f), block f = F(f).
LinearMap section_map(const PathCategory& cat, const Presheaf& F, VertexId v,
                      std::span<const PathMorphism> members);
LinearMap section_map(const PathCategory& cat, const Presheaf& F, const Sieve& s);

/// Matrix C with C x = 0 exactly when x = (s_f) satisfies F(g)(s_f) = s_{f∘g}
/// for every member f and every g composable into f. Members must be closed
/// under precomposition.
Matrix compatibility_equations(const PathCategory& cat, const Presheaf& F,
                               std::span<const PathMorphism> members);
Subspace compatibility_space(const PathCategory& cat, const Presheaf& F,
                             std::span<const PathMorphism> members);
Subspace compatibility_space(const PathCategory& cat, const Presheaf& F, const Sieve& s);

/// The unique s in F(v) with F(f)(s) = s_f for all f, or nothing when the
/// family is incompatible or does not glue. When eps is not injective some
/// preimage is returned. Throws DimensionMismatch.
std::optional<Vector> glue(const PathCategory& cat, const Presheaf& F, const SectionFamily& family);

/// Equalizer test by rank: holds iff eps is injective and rank(eps) equals the
/// dimension of the compatible families. Asserts image(eps) lies in them.
EqualizerCheck check_equalizer(const PathCategory& cat, const Presheaf& F, VertexId v,
                               std::span<const PathMorphism> members);

SheafVerdict is_sheaf_for_sieve(const PathCategory& cat, const Presheaf& F, const Sieve& s);
/// Checks every covering sieve of `t` vertex by vertex; reports the first failure.
SheafVerdict is_sheaf(const PathCategory& cat, const Presheaf& F, const Topology& t,
                      std::size_t limit = kDefaultSieveLimit);

/// First edge whose restriction map is not invertible.
std::optional<EdgeId> first_non_iso_edge(const PathCategory& cat, const Presheaf& F);
/// True iff every edge restriction is an isomorphism.
bool is_discrete_sheaf_criterion(const PathCategory& cat, const Presheaf& F);

struct DiscreteCrossCheck {
  bool criterion = false;
  SheafVerdict definitional;
  bool agree = false;
  std::optional<EdgeId> non_iso_edge;
};

/// Compares the edgewise isomorphism criterion with the equalizer test over
/// every nonempty sieve.
DiscreteCrossCheck cross_validate_discrete(const PathCategory& cat, const Presheaf& F,
                                           std::size_t limit = kDefaultSieveLimit);

}  // namespace qsheaf
