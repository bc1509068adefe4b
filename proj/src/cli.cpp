#include "qsheaf/cli.hpp"

#include <cstdint>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>

#include "CLI11.hpp"
#include "qsheaf/error.hpp"
#include "qsheaf/functors.hpp"
#include "qsheaf/serialize.hpp"
#include "qsheaf/sheaf_check.hpp"
#include "qsheaf/sieve.hpp"

namespace qsheaf {

namespace {

struct RunConfig {
  std::string quiver_path;
  std::vector<std::string> presheaf_paths;
  std::string topology = "coarse";
  std::string format = "text";
  std::size_t sieve_limit = kDefaultSieveLimit;
  std::uint64_t seed = 0;
  std::string output_path;
  std::string adjoint = "component";
};

struct Output {
  bool json;
  std::ostream& out;

  void emit(const Json& j, const std::string& text) const {
    if (json) {
      out << j.dump(2) << '\n';
    } else {
      out << text;
    }
  }
};

std::string join(const Json& list, const char* sep = ", ") {
  std::string s;
  for (const auto& x : list) {
    if (!s.empty()) s += sep;
    s += x.is_string() ? x.get<std::string>() : x.dump();
  }
  return s;
}

std::string sieve_text(const Json& sieve) { return "{" + join(sieve) + "}"; }

std::string matrix_text(const Json& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.size(); ++i) s += (i ? "; " : "") + join(m[i], " ");
  return s + "]";
}

PathCategory load_category(const RunConfig& cfg) { return PathCategory(load_quiver(cfg.quiver_path)); }

int cmd_validate(const RunConfig& cfg, const Output& o) {
  const auto report = validate(load_quiver(cfg.quiver_path));
  std::ostringstream text;
  if (report.valid()) {
    text << "quiver is valid\n";
  } else {
    for (const auto& i : report.issues) {
      text << to_string(i.code) << ": " << i.message;
      if (!i.witness.empty()) text << " [" << join(Json(i.witness), " -> ") << "]";
      text << '\n';
    }
  }
  o.emit(to_json(report), text.str());
  return report.valid() ? kHolds : kFails;
}

int cmd_audit(const RunConfig& cfg, const Output& o) {
  const auto cat = load_category(cfg);
  const auto topology = Topology::parse(cfg.topology);
  const auto report = audit_axioms(cat, topology, cfg.sieve_limit);
  const Json j = to_json(cat, report);

  std::ostringstream text;
  text << "topology " << topology.to_string() << '\n';
  text << "GT1 " << (report.gt1() ? "pass" : "FAIL");
  if (!report.gt1()) text << " at " << join(j["gt1"]["failures"]);
  text << '\n';
  text << "GT2 " << (report.gt2() ? "pass" : "FAIL");
  if (report.gt2_counterexample) {
    const auto& c = j["gt2"]["counterexample"];
    text << ": pulling back " << sieve_text(c["covering"]) << " along " << c["along"].get<std::string>() << " gives "
         << sieve_text(c["pullback"]) << ", not covering";
  }
  text << '\n';
  text << "GT3 " << (report.gt3() ? "pass" : "FAIL");
  if (report.gt3_counterexample) {
    const auto& c = j["gt3"]["counterexample"];
    text << ": " << sieve_text(c["candidate"]) << " is locally covering over " << sieve_text(c["covering"])
         << " but not covering";
  }
  text << '\n';
  o.emit(j, text.str());
  return report.all_pass() ? kHolds : kFails;
}

struct RoundTrip {
  std::size_t trials = 0;
  bool ok = true;
};

// glue(eps(s)) = s on random integer sections of every covering sieve.
RoundTrip gluing_roundtrip(const PathCategory& cat, const Presheaf& F, const Topology& t, std::size_t limit,
                           std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  RoundTrip rt;
  for (VertexId v = 0; v < cat.vertex_count(); ++v) {
    for (const auto& sieve : covering_sieves(cat, t, v, limit)) {
      const Matrix eps = section_map(cat, F, sieve);
      const auto off = product_offsets(F, sieve.members());
      for (int trial = 0; trial < 4; ++trial) {
        Vector s(F.dims[v]);
        for (auto& x : s) x = static_cast<long>(rng() % 11) - 5;
        const Vector image = eps * s;
        SectionFamily family{sieve, {}};
        for (std::size_t i = 0; i + 1 < off.size(); ++i)
          family.sections.emplace_back(image.begin() + static_cast<std::ptrdiff_t>(off[i]),
                                       image.begin() + static_cast<std::ptrdiff_t>(off[i + 1]));
        const auto glued = glue(cat, F, family);
        rt.ok = rt.ok && glued && *glued == s;
        ++rt.trials;
      }
    }
  }
  return rt;
}

int cmd_check_sheaf(const RunConfig& cfg, const Output& o) {
  if (cfg.presheaf_paths.size() != 1)
    throw Error(ErrorCode::InvalidArgument, "check-sheaf takes exactly one --presheaf");
  const auto cat = load_category(cfg);
  const auto topology = Topology::parse(cfg.topology);
  const Presheaf F = load_functor(cfg.presheaf_paths[0], cat).as_presheaf();
  F.check(cat);

  const auto verdict = is_sheaf(cat, F, topology, cfg.sieve_limit);
  Json j{{"topology", topology.to_string()}};
  const Json verdict_json = to_json(cat, verdict);
  for (const auto& [k, v] : verdict_json.items()) j[k] = v;

  std::ostringstream text;
  text << "topology " << topology.to_string() << ": " << (verdict.holds ? "sheaf" : "NOT a sheaf") << '\n';
  if (!verdict.holds) {
    text << "failing sieve on " << j["vertex"].get<std::string>() << ": " << sieve_text(j["sieve"]) << " ("
         << j["diagnosis"].get<std::string>() << ")\n";
    if (j.contains("witness")) text << "witness: (" << join(j["witness"]) << ")\n";
  } else {
    const auto rt = gluing_roundtrip(cat, F, topology, cfg.sieve_limit, cfg.seed);
    j["roundtrip"] = Json{{"seed", cfg.seed}, {"trials", rt.trials}, {"ok", rt.ok}};
    text << "gluing round trip: " << rt.trials << " trials, " << (rt.ok ? "ok" : "MISMATCH") << " (seed "
         << cfg.seed << ")\n";
  }
  if (topology.kind == Topology::Kind::Discrete) {
    const bool criterion = is_discrete_sheaf_criterion(cat, F);
    j["discrete_criterion"] = criterion;
    text << "edgewise isomorphism criterion: " << (criterion ? "true" : "false") << '\n';
  }
  o.emit(j, text.str());
  return verdict.holds ? kHolds : kFails;
}

int cmd_dualize(const RunConfig& cfg, const Output& o) {
  if (cfg.presheaf_paths.size() != 1) throw Error(ErrorCode::InvalidArgument, "dualize takes exactly one --presheaf");
  const auto cat = load_category(cfg);
  const Representation V = load_functor(cfg.presheaf_paths[0], cat).as_representation();
  const Json j = presheaf_to_json(dualize(cat, V), cat);
  if (cfg.output_path.empty()) {
    o.out << j.dump(2) << '\n';
    return kHolds;
  }
  std::ofstream file(cfg.output_path);
  if (!file) throw Error(ErrorCode::IoError, "cannot write '" + cfg.output_path + "'");
  file << j.dump(2) << '\n';
  if (!file) throw Error(ErrorCode::IoError, "write to '" + cfg.output_path + "' failed");
  o.emit(Json{{"written", cfg.output_path}}, "wrote " + cfg.output_path + "\n");
  return kHolds;
}

int cmd_functors(const RunConfig& cfg, const Output& o) {
  if (cfg.presheaf_paths.empty() || cfg.presheaf_paths.size() > 2)
    throw Error(ErrorCode::InvalidArgument, "functors takes one or two --presheaf files (F [G])");
  const auto cat = load_category(cfg);
  std::vector<Presheaf> inputs;
  for (const auto& p : cfg.presheaf_paths) {
    inputs.push_back(load_functor(p, cat).as_presheaf());
    inputs.back().check(cat);
  }
  const Presheaf& F = inputs[0];
  const bool literal = cfg.adjoint == "literal";

  Json j{{"adjoint", cfg.adjoint}};
  std::ostringstream text;
  int status = kHolds;

  if (literal) {
    Json rows = Json::array();
    for (VertexId v = 0; v < cat.vertex_count(); ++v) {
      const auto l = left_adjoint_literal(cat, F, v);
      rows.push_back(to_json(cat, l));
      text << "literal colimit at " << cat.vertex_name(v) << ": dim " << l.dim << ", comparison "
           << (l.comparison_is_iso ? "iso" : "NOT iso") << '\n';
      if (!l.comparison_is_iso) status = kFails;
    }
    j["literal"] = std::move(rows);
  } else if (inputs.size() == 2) {
    const Presheaf& G = inputs[1];
    if (auto e = first_non_iso_edge(cat, G)) {
      j["adjunction"] = Json{{"error", "NotDiscreteSheaf"}, {"non_iso_edge", cat.edge_name(*e)}};
      text << "adjunction: G is not a discrete sheaf (edge " << cat.edge_name(*e) << ")\n";
      status = kFails;
    } else {
      const auto r = check_adjunction(cat, F, G);
      j["adjunction"] = to_json(r);
      text << "adjunction (component colimit): Hom(LF, G) dim " << r.left_dim << ", Hom(F, G) dim " << r.right_dim
           << ", " << (r.match ? "match" : "MISMATCH") << ", unit bijection "
           << (r.unit_bijection ? "ok" : "FAILED") << '\n';
      if (!r.match || !r.unit_bijection) status = kFails;
    }
  }

  Json mono = Json::array();
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const char* label = i == 0 ? "F" : "G";
    Json entry{{"presheaf", label}};
    if (auto e = first_non_iso_edge(cat, inputs[i])) {
      entry["discrete"] = false;
      entry["non_iso_edge"] = cat.edge_name(*e);
      text << "monodromy of " << label << ": not a discrete sheaf (edge " << cat.edge_name(*e) << ")\n";
      if (i == 0 && !literal && inputs.size() == 1) status = kFails;
    } else {
      const auto report = monodromy_report(cat, inputs[i]);
      entry["discrete"] = true;
      entry["report"] = to_json(cat, report);
      text << "monodromy of " << label << ": " << report.cycles.size() << " fundamental cycle(s)\n";
      for (const auto& c : report.cycles) {
        text << "  edge " << cat.edge_name(c.edge) << " at " << cat.vertex_name(c.base) << ": "
             << matrix_text(matrix_to_json(c.monodromy)) << (c.is_identity ? " (identity)" : "") << '\n';
      }
    }
    mono.push_back(std::move(entry));
  }
  j["monodromy"] = std::move(mono);
  o.emit(j, text.str());
  return status;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Grothendieck topologies and sheaf conditions on path categories of acyclic quivers", "qsheaf"};
  app.require_subcommand(1);
  RunConfig cfg;

  auto add_common = [&](CLI::App* sub, bool needs_presheaf) {
    sub->add_option("--quiver", cfg.quiver_path, "quiver JSON file")->required();
    auto* p = sub->add_option("--presheaf", cfg.presheaf_paths, "presheaf or representation JSON file (repeatable)");
    if (needs_presheaf) p->required();
    sub->add_option("--topology", cfg.topology, "coarse | discrete | discrete+empty | edge | graded:n");
    sub->add_option("--format", cfg.format, "text | json")->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--sieve-limit", cfg.sieve_limit, "max morphisms into a vertex for sieve enumeration")
        ->check(CLI::PositiveNumber);
    sub->add_option("--seed", cfg.seed, "seed for randomized checks");
  };

  auto* validate_cmd = app.add_subcommand("validate", "check that the quiver is loop-free and acyclic");
  add_common(validate_cmd, false);
  auto* audit_cmd = app.add_subcommand("audit", "check GT1-GT3 for a topology");
  add_common(audit_cmd, false);
  auto* check_cmd = app.add_subcommand("check-sheaf", "decide the sheaf condition for a presheaf");
  add_common(check_cmd, true);
  auto* dualize_cmd = app.add_subcommand("dualize", "dualize a representation into a presheaf");
  add_common(dualize_cmd, true);
  dualize_cmd->add_option("--output", cfg.output_path, "write the presheaf file here instead of stdout");
  auto* functors_cmd = app.add_subcommand("functors", "adjunction and monodromy reports");
  add_common(functors_cmd, true);
  functors_cmd->add_option("--adjoint", cfg.adjoint, "component | literal")
      ->check(CLI::IsMember({"component", "literal"}));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kHolds : kUsageError;
  }

  const Output o{cfg.format == "json", out};
  try {
    if (*validate_cmd) return cmd_validate(cfg, o);
    if (*audit_cmd) return cmd_audit(cfg, o);
    if (*check_cmd) return cmd_check_sheaf(cfg, o);
    if (*dualize_cmd) return cmd_dualize(cfg, o);
    if (*functors_cmd) return cmd_functors(cfg, o);
  } catch (const Error& e) {
    if (o.json) out << Json{{"error", std::string(to_string(e.code()))}, {"message", e.what()}}.dump(2) << '\n';
    err << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}

}  // namespace qsheaf
