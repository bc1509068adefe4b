#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qsheaf/quiver.hpp"

namespace qsheaf {

inline constexpr std::size_t kDefaultSieveLimit = 14;

/// A set of morphisms into `codomain`, closed under precomposition. Members are
/// kept sorted in canonical order so equal sieves compare equal.
class Sieve {
 public:
  /// Throws WrongCodomain or InvalidArgument when `members` is not a sieve on `codomain`.
  Sieve(const PathCategory& cat, VertexId codomain, std::vector<PathMorphism> members);

  VertexId codomain() const noexcept { return codomain_; }
  const std::vector<PathMorphism>& members() const noexcept { return members_; }
  std::size_t size() const noexcept { return members_.size(); }
  bool empty() const noexcept { return members_.empty(); }
  bool contains(const PathMorphism& f) const;

  friend bool operator==(const Sieve&, const Sieve&) = default;

 private:
  Sieve() = default;
  friend Sieve make_sieve_unchecked(VertexId, std::vector<PathMorphism>);

  VertexId codomain_ = 0;
  std::vector<PathMorphism> members_;
};

/// Canonical sieve order: fewer members first, then members compared canonically.
bool sieve_less(const Sieve& a, const Sieve& b);

/// True when `members` all target v and are closed under precomposition.
bool is_sieve(const PathCategory& cat, VertexId v, std::span<const PathMorphism> members);

Sieve maximal_sieve(const PathCategory& cat, VertexId v);
/// Smallest sieve containing the generators. Throws WrongCodomain.
Sieve generate_sieve(const PathCategory& cat, VertexId v, std::span<const PathMorphism> generators);
/// { g into source(f) : f∘g ∈ s }. Throws CodomainMismatch.
Sieve pullback_sieve(const PathCategory& cat, const PathMorphism& f, const Sieve& s);
/// All sieves on v in canonical order. Throws TooManyMorphisms when
/// |morphisms_into(v)| exceeds `limit`.
std::vector<Sieve> enumerate_sieves(const PathCategory& cat, VertexId v,
                                    std::size_t limit = kDefaultSieveLimit);

struct Topology {
  enum class Kind { Coarse, Discrete, EdgeGenerated, LengthGraded };

  Kind kind = Kind::Coarse;
  /// Discrete only: whether the empty sieve covers.
  bool include_empty = false;
  /// LengthGraded only.
  std::size_t max_length = 0;

  static Topology coarse() { return {Kind::Coarse, false, 0}; }
  static Topology discrete(bool include_empty = false) { return {Kind::Discrete, include_empty, 0}; }
  static Topology edge_generated() { return {Kind::EdgeGenerated, false, 0}; }
  static Topology length_graded(std::size_t n) { return {Kind::LengthGraded, false, n}; }

  /// Accepts "coarse" | "discrete" | "discrete+empty" | "edge" | "graded:n".
  static Topology parse(std::string_view text);
  std::string to_string() const;

  friend bool operator==(const Topology&, const Topology&) = default;
};

/// Edge-generated covering at a vertex without incoming edges is the maximal
/// sieve alone, so that the maximal sieve always covers.
bool is_covering(const PathCategory& cat, const Topology& t, const Sieve& s);

/// Covering sieves on v in canonical order. Coarse and length-graded covers
/// that are forced to be maximal are produced without enumeration.
std::vector<Sieve> covering_sieves(const PathCategory& cat, const Topology& t, VertexId v,
                                   std::size_t limit = kDefaultSieveLimit);

struct Gt2Counterexample {
  Sieve covering;
  PathMorphism along;
  Sieve pulled_back;
};

struct Gt3Counterexample {
  Sieve covering;
  /// Not covering, yet its pullback along every member of `covering` covers.
  Sieve candidate;
};

struct AxiomReport {
  Topology topology;
  /// Vertices whose maximal sieve is not covering.
  std::vector<VertexId> gt1_failures;
  std::optional<Gt2Counterexample> gt2_counterexample;
  std::optional<Gt3Counterexample> gt3_counterexample;

  bool gt1() const noexcept { return gt1_failures.empty(); }
  bool gt2() const noexcept { return !gt2_counterexample; }
  bool gt3() const noexcept { return !gt3_counterexample; }
  bool all_pass() const noexcept { return gt1() && gt2() && gt3(); }
};

/// Exhaustive check of GT1-GT3; each failure carries the first witness in
/// canonical (vertex, sieve, morphism) order.
AxiomReport audit_axioms(const PathCategory& cat, const Topology& t,
                         std::size_t limit = kDefaultSieveLimit);

}  // namespace qsheaf
