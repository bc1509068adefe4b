#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "qsheaf/error.hpp"

namespace qsheaf {

using VertexId = std::size_t;
using EdgeId = std::size_t;

struct Edge {
  std::string name;
  std::string source;
  std::string target;
};

/// Raw quiver as read from input. Order of vertices and edges is the
/// canonical order used everywhere downstream.
struct Quiver {
  std::vector<std::string> vertices;
  std::vector<Edge> edges;
};

struct ValidationIssue {
  ErrorCode code;
  std::string message;
  /// Offending ids: the loop edge, the duplicate id, or the cycle's vertices in order.
  std::vector<std::string> witness;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool valid() const noexcept { return issues.empty(); }
};

/// Reports duplicate ids, unknown endpoints, loops and directed cycles.
ValidationReport validate(const Quiver& q);

/// A morphism of the path category: a composable run of edges, listed in
/// traversal order. The empty run is the identity at `source` (= `target`).
struct PathMorphism {
  VertexId source = 0;
  VertexId target = 0;
  std::vector<EdgeId> edges;

  std::size_t length() const noexcept { return edges.size(); }
  bool is_identity() const noexcept { return edges.empty(); }

  friend bool operator==(const PathMorphism&, const PathMorphism&) = default;
};

/// Canonical order: length, then edge indices lexicographically, then endpoints.
std::strong_ordering canonical_compare(const PathMorphism& a, const PathMorphism& b);

struct CanonicalLess {
  bool operator()(const PathMorphism& a, const PathMorphism& b) const {
    return canonical_compare(a, b) < 0;
  }
};

/// `second` after `first`, i.e. second∘first. Requires first.target == second.source.
PathMorphism compose(const PathMorphism& first, const PathMorphism& second);

/// Index category of morphisms into a vertex. An arrow from objects[from]
/// (f': u' -> v) to objects[to] (f: u -> v) is a morphism g: u' -> u with
/// f∘g = f'. Identity arrows are included.
struct SliceCategory {
  struct Arrow {
    std::size_t from;
    std::size_t to;
    PathMorphism via;
  };
  VertexId apex = 0;
  std::vector<PathMorphism> objects;
  std::vector<Arrow> arrows;
};

/// The free category on a validated quiver. All hom-sets are materialised at
/// construction; the object is immutable afterwards.
class PathCategory {
 public:
  /// Throws the first validation issue when the quiver is not loop-free and acyclic.
  explicit PathCategory(Quiver q);

  const Quiver& quiver() const noexcept { return quiver_; }
  std::size_t vertex_count() const noexcept { return quiver_.vertices.size(); }
  std::size_t edge_count() const noexcept { return quiver_.edges.size(); }

  VertexId vertex(std::string_view name) const;
  EdgeId edge(std::string_view name) const;
  const std::string& vertex_name(VertexId v) const { return quiver_.vertices.at(v); }
  const std::string& edge_name(EdgeId e) const { return quiver_.edges.at(e).name; }
  VertexId edge_source(EdgeId e) const { return edge_src_.at(e); }
  VertexId edge_target(EdgeId e) const { return edge_dst_.at(e); }
  /// Edges with the given target, in edge order.
  const std::vector<EdgeId>& incoming(VertexId v) const { return incoming_.at(v); }

  PathMorphism identity(VertexId v) const;
  PathMorphism edge_morphism(EdgeId e) const;
  /// Builds a path from edge names in traversal order; throws NonComposable or UnknownEdge.
  PathMorphism path(const std::vector<std::string>& edge_names) const;
  /// Path with `start` given explicitly so the empty path is expressible.
  PathMorphism path_from(VertexId start, const std::vector<EdgeId>& edges) const;

  /// Every morphism with target v, including id_v, in canonical order.
  const std::vector<PathMorphism>& morphisms_into(VertexId v) const;
  /// Position of f inside morphisms_into(f.target).
  std::optional<std::size_t> index_in_hom(const PathMorphism& f) const;

  /// Undirected connected components, each sorted, ordered by least member.
  std::vector<std::vector<VertexId>> connected_components() const;
  SliceCategory slice(VertexId v) const;

  /// "id_v" for identities, otherwise edge names in composition order: "e2.e1".
  std::string describe(const PathMorphism& f) const;

 private:
  void check_vertex(VertexId v) const;

  Quiver quiver_;
  std::unordered_map<std::string, VertexId> vertex_index_;
  std::unordered_map<std::string, EdgeId> edge_index_;
  std::vector<VertexId> edge_src_;
  std::vector<VertexId> edge_dst_;
  std::vector<std::vector<EdgeId>> incoming_;
  std::vector<std::vector<PathMorphism>> homs_;
};

/// Index category of morphisms into v; same as cat.slice(v).
inline SliceCategory slice_objects(const PathCategory& cat, VertexId v) { return cat.slice(v); }

}  // namespace qsheaf
