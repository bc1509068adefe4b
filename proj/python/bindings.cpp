#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "qsheaf/cli.hpp"
#include "qsheaf/functors.hpp"
#include "qsheaf/serialize.hpp"
#include "qsheaf/sheaf_check.hpp"

namespace py = pybind11;
using namespace qsheaf;

// Everything crosses the boundary as JSON text; the Python side wraps it
// with the json module. Rationals are "p/q" strings.

namespace {

PathCategory category(const std::string& quiver) { return PathCategory(quiver_from_json(parse_json_text(quiver))); }

Presheaf presheaf(const PathCategory& cat, const std::string& text) {
  Presheaf F = functor_from_json(parse_json_text(text), cat).as_presheaf();
  F.check(cat);
  return F;
}

Matrix matrix(const std::string& text) { return matrix_from_json(parse_json_text(text)); }

std::string validate_json(const std::string& quiver) {
  return to_json(validate(quiver_from_json(parse_json_text(quiver)))).dump();
}

std::string audit_json(const std::string& quiver, const std::string& topology, std::size_t limit) {
  const auto cat = category(quiver);
  return to_json(cat, audit_axioms(cat, Topology::parse(topology), limit)).dump();
}

std::string check_sheaf_json(const std::string& quiver, const std::string& F, const std::string& topology,
                             std::size_t limit) {
  const auto cat = category(quiver);
  return to_json(cat, is_sheaf(cat, presheaf(cat, F), Topology::parse(topology), limit)).dump();
}

std::string cross_validate_json(const std::string& quiver, const std::string& F, std::size_t limit) {
  const auto cat = category(quiver);
  return to_json(cat, cross_validate_discrete(cat, presheaf(cat, F), limit)).dump();
}

std::string dualize_json(const std::string& quiver, const std::string& V) {
  const auto cat = category(quiver);
  const Representation rep = functor_from_json(parse_json_text(V), cat).as_representation();
  return presheaf_to_json(dualize(cat, rep), cat).dump();
}

std::string adjunction_json(const std::string& quiver, const std::string& F, const std::string& G) {
  const auto cat = category(quiver);
  return to_json(check_adjunction(cat, presheaf(cat, F), presheaf(cat, G))).dump();
}

std::string literal_adjoint_json(const std::string& quiver, const std::string& F, const std::string& vertex) {
  const auto cat = category(quiver);
  return to_json(cat, left_adjoint_literal(cat, presheaf(cat, F), cat.vertex(vertex))).dump();
}

std::string monodromy_json(const std::string& quiver, const std::string& F) {
  const auto cat = category(quiver);
  return to_json(cat, monodromy_report(cat, presheaf(cat, F))).dump();
}

std::vector<std::string> morphisms_into(const std::string& quiver, const std::string& vertex) {
  const auto cat = category(quiver);
  std::vector<std::string> out;
  for (const auto& f : cat.morphisms_into(cat.vertex(vertex))) out.push_back(cat.describe(f));
  return out;
}

std::vector<std::vector<std::string>> sieves(const std::string& quiver, const std::string& vertex,
                                             std::size_t limit) {
  const auto cat = category(quiver);
  std::vector<std::vector<std::string>> out;
  for (const auto& s : enumerate_sieves(cat, cat.vertex(vertex), limit)) {
    auto& names = out.emplace_back();
    for (const auto& f : s.members()) names.push_back(cat.describe(f));
  }
  return out;
}

std::string kernel_json(const std::string& m) {
  Json out = Json::array();
  for (const auto& v : kernel_basis(matrix(m))) out.push_back(vector_to_json(v));
  return out.dump();
}

std::tuple<int, std::string, std::string> run(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_cli(args, out, err);
  return {status, out.str(), err.str()};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact sheaf checks on path categories of acyclic quivers";

  py::register_exception<Error>(m, "QsheafError", PyExc_ValueError);

  m.def("validate", &validate_json, py::arg("quiver"));
  m.def("audit", &audit_json, py::arg("quiver"), py::arg("topology") = "coarse",
        py::arg("sieve_limit") = kDefaultSieveLimit);
  m.def("check_sheaf", &check_sheaf_json, py::arg("quiver"), py::arg("presheaf"), py::arg("topology") = "coarse",
        py::arg("sieve_limit") = kDefaultSieveLimit);
  m.def("cross_validate_discrete", &cross_validate_json, py::arg("quiver"), py::arg("presheaf"),
        py::arg("sieve_limit") = kDefaultSieveLimit);
  m.def("dualize", &dualize_json, py::arg("quiver"), py::arg("representation"));
  m.def("check_adjunction", &adjunction_json, py::arg("quiver"), py::arg("F"), py::arg("G"));
  m.def("left_adjoint_literal", &literal_adjoint_json, py::arg("quiver"), py::arg("presheaf"), py::arg("vertex"));
  m.def("monodromy", &monodromy_json, py::arg("quiver"), py::arg("presheaf"));
  m.def("morphisms_into", &morphisms_into, py::arg("quiver"), py::arg("vertex"));
  m.def("sieves", &sieves, py::arg("quiver"), py::arg("vertex"), py::arg("sieve_limit") = kDefaultSieveLimit);
  m.def("rank", [](const std::string& m) { return rank(matrix(m)); }, py::arg("matrix"));
  m.def("kernel_basis", &kernel_json, py::arg("matrix"));
  m.def("run_cli", &run, py::arg("args"));
}
