#include "qsheaf/quiver.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_set>

namespace qsheaf {

ValidationReport validate(const Quiver& q) {
  ValidationReport report;
  auto add = [&](ErrorCode code, std::string msg, std::vector<std::string> witness) {
    report.issues.push_back({code, std::move(msg), std::move(witness)});
  };

  std::unordered_map<std::string, std::size_t> index;
  for (const auto& v : q.vertices) {
    if (!index.emplace(v, index.size()).second)
      add(ErrorCode::DuplicateId, "vertex id '" + v + "' appears twice", {v});
  }
  std::unordered_set<std::string> edge_ids;
  bool endpoints_ok = true;
  for (const auto& e : q.edges) {
    if (!edge_ids.insert(e.name).second)
      add(ErrorCode::DuplicateId, "edge id '" + e.name + "' appears twice", {e.name});
    if (index.count(e.name))
      add(ErrorCode::DuplicateId, "id '" + e.name + "' names both a vertex and an edge", {e.name});
    for (const auto* end : {&e.source, &e.target}) {
      if (!index.count(*end)) {
        add(ErrorCode::UnknownVertex, "edge '" + e.name + "' references unknown vertex '" + *end + "'",
            {e.name, *end});
        endpoints_ok = false;
      }
    }
    if (e.source == e.target) add(ErrorCode::LoopEdge, "edge '" + e.name + "' is a loop", {e.name});
  }
  if (!endpoints_ok) return report;

  // Cycle search by colored DFS; loops were reported above and are skipped here.
  const std::size_t n = index.size();
  std::vector<std::string> names(n);
  for (const auto& [name, i] : index) names[i] = name;
  std::vector<std::vector<std::size_t>> out(n);
  for (const auto& e : q.edges)
    if (e.source != e.target) out[index.at(e.source)].push_back(index.at(e.target));

  enum class Color { White, Grey, Black };
  std::vector<Color> color(n, Color::White);
  std::vector<std::size_t> stack;
  bool found = false;
  auto dfs = [&](auto&& self, std::size_t v) -> void {
    color[v] = Color::Grey;
    stack.push_back(v);
    for (auto w : out[v]) {
      if (found) return;
      if (color[w] == Color::Grey) {
        auto it = std::find(stack.begin(), stack.end(), w);
        std::vector<std::string> cycle;
        for (; it != stack.end(); ++it) cycle.push_back(names[*it]);
        cycle.push_back(names[w]);
        add(ErrorCode::DirectedCycle, "directed cycle through '" + names[w] + "'", std::move(cycle));
        found = true;
        return;
      }
      if (color[w] == Color::White) self(self, w);
    }
    stack.pop_back();
    color[v] = Color::Black;
  };
  for (std::size_t v = 0; v < n && !found; ++v)
    if (color[v] == Color::White) dfs(dfs, v);
  return report;
}

std::strong_ordering canonical_compare(const PathMorphism& a, const PathMorphism& b) {
  if (auto c = a.length() <=> b.length(); c != 0) return c;
  if (auto c = a.edges <=> b.edges; c != 0) return c;
  if (auto c = a.source <=> b.source; c != 0) return c;
  return a.target <=> b.target;
}

PathMorphism compose(const PathMorphism& first, const PathMorphism& second) {
  if (first.target != second.source)
    throw Error(ErrorCode::NonComposable, "target of the first path is not the source of the second");
  PathMorphism out{first.source, second.target, first.edges};
  out.edges.insert(out.edges.end(), second.edges.begin(), second.edges.end());
  return out;
}

PathCategory::PathCategory(Quiver q) : quiver_(std::move(q)) {
  const auto report = validate(quiver_);
  if (!report.valid()) {
    const auto& first = report.issues.front();
    throw Error(first.code, first.message);
  }
  for (VertexId v = 0; v < quiver_.vertices.size(); ++v) vertex_index_.emplace(quiver_.vertices[v], v);
  incoming_.resize(quiver_.vertices.size());
  for (EdgeId e = 0; e < quiver_.edges.size(); ++e) {
    edge_index_.emplace(quiver_.edges[e].name, e);
    edge_src_.push_back(vertex_index_.at(quiver_.edges[e].source));
    edge_dst_.push_back(vertex_index_.at(quiver_.edges[e].target));
    incoming_[edge_dst_.back()].push_back(e);
  }

  // Memoised recurrence into(v) = {id_v} ∪ { p·e : t(e) = v, p ∈ into(s(e)) },
  // finite because the quiver is acyclic.
  homs_.resize(vertex_count());
  std::vector<bool> done(vertex_count(), false);
  auto build = [&](auto&& self, VertexId v) -> void {
    if (done[v]) return;
    std::vector<PathMorphism> into{identity(v)};
    for (auto e : incoming_[v]) {
      const VertexId s = edge_src_[e];
      self(self, s);
      for (const auto& p : homs_[s]) {
        PathMorphism f{p.source, v, p.edges};
        f.edges.push_back(e);
        into.push_back(std::move(f));
      }
    }
    std::sort(into.begin(), into.end(), CanonicalLess{});
    homs_[v] = std::move(into);
    done[v] = true;
  };
  for (VertexId v = 0; v < vertex_count(); ++v) build(build, v);
}

void PathCategory::check_vertex(VertexId v) const {
  if (v >= vertex_count())
    throw Error(ErrorCode::UnknownVertex, "vertex index " + std::to_string(v) + " out of range");
}

VertexId PathCategory::vertex(std::string_view name) const {
  auto it = vertex_index_.find(std::string(name));
  if (it == vertex_index_.end()) throw Error(ErrorCode::UnknownVertex, "no vertex '" + std::string(name) + "'");
  return it->second;
}

EdgeId PathCategory::edge(std::string_view name) const {
  auto it = edge_index_.find(std::string(name));
  if (it == edge_index_.end()) throw Error(ErrorCode::UnknownEdge, "no edge '" + std::string(name) + "'");
  return it->second;
}

PathMorphism PathCategory::identity(VertexId v) const {
  check_vertex(v);
  return {v, v, {}};
}

PathMorphism PathCategory::edge_morphism(EdgeId e) const {
  if (e >= edge_count()) throw Error(ErrorCode::UnknownEdge, "edge index " + std::to_string(e) + " out of range");
  return {edge_src_[e], edge_dst_[e], {e}};
}

PathMorphism PathCategory::path(const std::vector<std::string>& edge_names) const {
  if (edge_names.empty()) throw Error(ErrorCode::InvalidArgument, "empty path needs an explicit vertex");
  std::vector<EdgeId> ids;
  for (const auto& n : edge_names) ids.push_back(edge(n));
  return path_from(edge_src_[ids.front()], ids);
}

PathMorphism PathCategory::path_from(VertexId start, const std::vector<EdgeId>& edges) const {
  PathMorphism p = identity(start);
  for (auto e : edges) p = compose(p, edge_morphism(e));
  return p;
}

const std::vector<PathMorphism>& PathCategory::morphisms_into(VertexId v) const {
  check_vertex(v);
  return homs_[v];
}

std::optional<std::size_t> PathCategory::index_in_hom(const PathMorphism& f) const {
  if (f.target >= vertex_count()) return std::nullopt;
  const auto& hom = homs_[f.target];
  auto it = std::lower_bound(hom.begin(), hom.end(), f, CanonicalLess{});
  if (it == hom.end() || !(*it == f)) return std::nullopt;
  return static_cast<std::size_t>(it - hom.begin());
}

std::vector<std::vector<VertexId>> PathCategory::connected_components() const {
  std::vector<VertexId> parent(vertex_count());
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](VertexId x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId e = 0; e < edge_count(); ++e) {
    auto a = find(edge_src_[e]);
    auto b = find(edge_dst_[e]);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::vector<std::vector<VertexId>> comps;
  std::vector<std::size_t> slot(vertex_count(), SIZE_MAX);
  for (VertexId v = 0; v < vertex_count(); ++v) {
    const auto r = find(v);
    if (slot[r] == SIZE_MAX) {
      slot[r] = comps.size();
      comps.emplace_back();
    }
    comps[slot[r]].push_back(v);
  }
  return comps;
}

SliceCategory PathCategory::slice(VertexId v) const {
  SliceCategory s;
  s.apex = v;
  s.objects = morphisms_into(v);
  // f' factors as f∘g exactly when f's edges are a suffix of f''s; g is the prefix.
  for (std::size_t i = 0; i < s.objects.size(); ++i) {
    const auto& fp = s.objects[i];
    for (std::size_t j = 0; j < s.objects.size(); ++j) {
      const auto& f = s.objects[j];
      if (f.length() > fp.length()) continue;
      const std::size_t cut = fp.length() - f.length();
      if (!std::equal(f.edges.begin(), f.edges.end(), fp.edges.begin() + static_cast<std::ptrdiff_t>(cut)))
        continue;
      std::vector<EdgeId> prefix(fp.edges.begin(), fp.edges.begin() + static_cast<std::ptrdiff_t>(cut));
      s.arrows.push_back({i, j, path_from(fp.source, prefix)});
    }
  }
  return s;
}

std::string PathCategory::describe(const PathMorphism& f) const {
  if (f.is_identity()) return "id_" + vertex_name(f.source);
  std::string out;
  for (auto it = f.edges.rbegin(); it != f.edges.rend(); ++it) {
    if (!out.empty()) out += '.';
    out += edge_name(*it);
  }
  return out;
}

}  // namespace qsheaf
