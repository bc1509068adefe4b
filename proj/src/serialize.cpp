#include "qsheaf/serialize.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "qsheaf/error.hpp"

namespace qsheaf {

namespace {

[[noreturn]] void parse_error(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

const Json& member(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::string string_field(const Json& j, const char* key) {
  const auto& v = member(j, key);
  if (!v.is_string()) parse_error(std::string("field '") + key + "' must be a string");
  return v.get<std::string>();
}

std::string_view kind_name(FunctorKind k) {
  return k == FunctorKind::Presheaf ? "presheaf" : "representation";
}

Json sieve_members(const PathCategory& cat, const std::vector<PathMorphism>& members) {
  Json out = Json::array();
  for (const auto& f : members) out.push_back(cat.describe(f));
  return out;
}

}  // namespace

std::string format_scalar(const Scalar& x) {
  Scalar c = x;
  c.canonicalize();
  return c.get_str();
}

Scalar parse_scalar(std::string_view text) {
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view("1") : body.substr(slash + 1);
  if (!all_digits(num) || !all_digits(den)) parse_error("malformed rational '" + std::string(text) + "'");
  if (den.find_first_not_of('0') == std::string_view::npos) parse_error("zero denominator in '" + std::string(text) + "'");
  Scalar x(std::string(text), 10);
  x.canonicalize();
  return x;
}

Scalar parse_scalar(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get_ref<const std::string&>());
  if (j.is_number_integer()) return Scalar(std::to_string(j.get<long long>()), 10);
  parse_error("scalar must be a string \"p/q\" or an integer, got " + j.dump());
}

Json vector_to_json(const Vector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_scalar(x));
  return out;
}

Json matrix_to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(format_scalar(m(i, j)));
    out.push_back(std::move(row));
  }
  return out;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  const std::size_t rows = j.size();
  const std::size_t cols = rows == 0 ? 0 : (j[0].is_array() ? j[0].size() : 0);
  return matrix_from_json(j, rows, cols);
}

Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols) {
  if (!j.is_array()) parse_error("matrix must be an array of rows");
  if (j.size() != rows)
    throw Error(ErrorCode::DimensionMismatch,
                "matrix has " + std::to_string(j.size()) + " rows, expected " + std::to_string(rows));
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const auto& row = j[i];
    if (!row.is_array()) parse_error("matrix row must be an array");
    if (row.size() != cols)
      throw Error(ErrorCode::DimensionMismatch, "matrix row " + std::to_string(i) + " has " +
                                                    std::to_string(row.size()) + " entries, expected " +
                                                    std::to_string(cols));
    for (std::size_t c = 0; c < cols; ++c) m(i, c) = parse_scalar(row[c]);
  }
  return m;
}

Json parse_json_text(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    parse_error(e.what());
  }
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path.string() + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_json_text(buf.str());
}

Quiver quiver_from_json(const Json& j) {
  Quiver q;
  const auto& vs = member(j, "vertices");
  if (!vs.is_array()) parse_error("'vertices' must be an array");
  for (const auto& v : vs) {
    if (!v.is_string()) parse_error("vertex ids must be strings");
    q.vertices.push_back(v.get<std::string>());
  }
  const auto& es = member(j, "edges");
  if (!es.is_array()) parse_error("'edges' must be an array");
  for (const auto& e : es) q.edges.push_back({string_field(e, "id"), string_field(e, "src"), string_field(e, "dst")});
  return q;
}

Json quiver_to_json(const Quiver& q) {
  Json edges = Json::array();
  for (const auto& e : q.edges) edges.push_back(Json{{"id", e.name}, {"src", e.source}, {"dst", e.target}});
  return Json{{"vertices", q.vertices}, {"edges", std::move(edges)}};
}

Quiver load_quiver(const std::filesystem::path& path) { return quiver_from_json(read_json_file(path)); }

Presheaf FunctorFile::as_presheaf() const {
  if (kind != FunctorKind::Presheaf) throw Error(ErrorCode::KindMismatch, "expected a presheaf file");
  return {dims, maps};
}

Representation FunctorFile::as_representation() const {
  if (kind != FunctorKind::Representation) throw Error(ErrorCode::KindMismatch, "expected a representation file");
  return {dims, maps};
}

FunctorFile functor_from_json(const Json& j, const PathCategory& cat) {
  FunctorFile f;
  const std::string kind = string_field(j, "kind");
  if (kind == "presheaf") {
    f.kind = FunctorKind::Presheaf;
  } else if (kind == "representation") {
    f.kind = FunctorKind::Representation;
  } else {
    parse_error("unknown kind '" + kind + "'");
  }

  const auto& dims = member(j, "dims");
  if (!dims.is_object()) parse_error("'dims' must be an object");
  f.dims.assign(cat.vertex_count(), 0);
  std::vector<bool> seen(cat.vertex_count(), false);
  for (const auto& [name, value] : dims.items()) {
    const VertexId v = cat.vertex(name);
    if (!value.is_number_unsigned()) parse_error("dimension of '" + name + "' must be a non-negative integer");
    f.dims[v] = value.get<std::size_t>();
    seen[v] = true;
  }
  for (VertexId v = 0; v < cat.vertex_count(); ++v)
    if (!seen[v]) parse_error("no dimension given for vertex '" + cat.vertex_name(v) + "'");

  const auto& maps = member(j, "maps");
  if (!maps.is_object()) parse_error("'maps' must be an object");
  f.maps.assign(cat.edge_count(), Matrix());
  std::vector<bool> have(cat.edge_count(), false);
  for (const auto& [name, value] : maps.items()) {
    const EdgeId e = cat.edge(name);
    const auto from = f.kind == FunctorKind::Presheaf ? cat.edge_target(e) : cat.edge_source(e);
    const auto to = f.kind == FunctorKind::Presheaf ? cat.edge_source(e) : cat.edge_target(e);
    f.maps[e] = matrix_from_json(value, f.dims[to], f.dims[from]);
    have[e] = true;
  }
  for (EdgeId e = 0; e < cat.edge_count(); ++e)
    if (!have[e]) parse_error("no map given for edge '" + cat.edge_name(e) + "'");
  return f;
}

Json functor_to_json(const FunctorFile& f, const PathCategory& cat) {
  Json dims = Json::object();
  for (VertexId v = 0; v < cat.vertex_count(); ++v) dims[cat.vertex_name(v)] = f.dims.at(v);
  Json maps = Json::object();
  for (EdgeId e = 0; e < cat.edge_count(); ++e) maps[cat.edge_name(e)] = matrix_to_json(f.maps.at(e));
  return Json{{"kind", kind_name(f.kind)}, {"dims", std::move(dims)}, {"maps", std::move(maps)}};
}

Json presheaf_to_json(const Presheaf& F, const PathCategory& cat) {
  return functor_to_json({FunctorKind::Presheaf, F.dims, F.maps}, cat);
}

Json representation_to_json(const Representation& V, const PathCategory& cat) {
  return functor_to_json({FunctorKind::Representation, V.dims, V.maps}, cat);
}

FunctorFile load_functor(const std::filesystem::path& path, const PathCategory& cat) {
  return functor_from_json(read_json_file(path), cat);
}

Json morphism_to_json(const PathCategory& cat, const PathMorphism& f) { return cat.describe(f); }

Json sieve_to_json(const PathCategory& cat, const Sieve& s) { return sieve_members(cat, s.members()); }

Json walk_to_json(const PathCategory& cat, const Walk& w) {
  Json steps = Json::array();
  for (const auto& s : w.steps)
    steps.push_back(Json{{"edge", cat.edge_name(s.edge)}, {"direction", s.forward ? "forward" : "backward"}});
  return Json{{"start", cat.vertex_name(w.start)}, {"steps", std::move(steps)}};
}

Json to_json(const ValidationReport& r) {
  Json issues = Json::array();
  for (const auto& i : r.issues)
    issues.push_back(Json{{"code", to_string(i.code)}, {"message", i.message}, {"witness", i.witness}});
  return Json{{"valid", r.valid()}, {"issues", std::move(issues)}};
}

Json to_json(const PathCategory& cat, const AxiomReport& r) {
  Json gt1_failures = Json::array();
  for (auto v : r.gt1_failures) gt1_failures.push_back(cat.vertex_name(v));

  Json gt2{{"pass", r.gt2()}};
  if (const auto& c = r.gt2_counterexample) {
    gt2["counterexample"] = Json{{"vertex", cat.vertex_name(c->covering.codomain())},
                                 {"covering", sieve_to_json(cat, c->covering)},
                                 {"along", cat.describe(c->along)},
                                 {"pullback", sieve_to_json(cat, c->pulled_back)}};
  }
  Json gt3{{"pass", r.gt3()}};
  if (const auto& c = r.gt3_counterexample) {
    gt3["counterexample"] = Json{{"vertex", cat.vertex_name(c->covering.codomain())},
                                 {"covering", sieve_to_json(cat, c->covering)},
                                 {"candidate", sieve_to_json(cat, c->candidate)}};
  }
  return Json{{"topology", r.topology.to_string()},
              {"gt1", Json{{"pass", r.gt1()}, {"failures", std::move(gt1_failures)}}},
              {"gt2", std::move(gt2)},
              {"gt3", std::move(gt3)},
              {"all_pass", r.all_pass()}};
}

Json to_json(const PathCategory& cat, const SheafVerdict& v) {
  Json out{{"holds", v.holds}};
  out["vertex"] = v.vertex ? Json(cat.vertex_name(*v.vertex)) : Json(nullptr);
  out["sieve"] = v.failing_sieve ? sieve_to_json(cat, *v.failing_sieve) : Json(nullptr);
  out["diagnosis"] = to_string(v.diagnosis);
  if (v.witness) out["witness"] = vector_to_json(*v.witness);
  out["sieves_checked"] = v.sieves_checked;
  return out;
}

Json to_json(const PathCategory& cat, const DiscreteCrossCheck& c) {
  return Json{{"criterion", c.criterion},
              {"definitional", to_json(cat, c.definitional)},
              {"agree", c.agree},
              {"non_iso_edge", c.non_iso_edge ? Json(cat.edge_name(*c.non_iso_edge)) : Json(nullptr)}};
}

Json to_json(const AdjunctionReport& r) {
  return Json{{"adjoint", "component"},
              {"left_dim", r.left_dim},
              {"right_dim", r.right_dim},
              {"match", r.match},
              {"unit_bijection", r.unit_bijection}};
}

Json to_json(const PathCategory& cat, const LiteralAdjoint& l) {
  return Json{{"vertex", cat.vertex_name(l.vertex)},
              {"colimit_dim", l.dim},
              {"comparison", matrix_to_json(l.comparison)},
              {"comparison_is_iso", l.comparison_is_iso}};
}

Json to_json(const PathCategory& cat, const TransportReport& r) {
  Json comps = Json::array();
  for (const auto& c : r.components) {
    Json transports = Json::array();
    for (std::size_t i = 0; i < c.vertices.size(); ++i) {
      transports.push_back(Json{{"vertex", cat.vertex_name(c.vertices[i])},
                                {"walk", walk_to_json(cat, c.tree_walks[i])},
                                {"map", matrix_to_json(c.tree_transports[i])}});
    }
    comps.push_back(Json{{"root", cat.vertex_name(c.root)}, {"tree_transports", std::move(transports)}});
  }
  Json cycles = Json::array();
  for (const auto& cyc : r.cycles) {
    cycles.push_back(Json{{"edge", cat.edge_name(cyc.edge)},
                          {"base", cat.vertex_name(cyc.base)},
                          {"walk", walk_to_json(cat, cyc.walk)},
                          {"monodromy", matrix_to_json(cyc.monodromy)},
                          {"is_identity", cyc.is_identity}});
  }
  return Json{{"components", std::move(comps)}, {"cycles", std::move(cycles)}, {"all_identity", r.all_identity()}};
}

}  // namespace qsheaf
