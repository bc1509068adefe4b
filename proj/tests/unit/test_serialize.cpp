#include <filesystem>
#include <fstream>

#include "doctest.h"
#include "qsheaf/serialize.hpp"
#include "support/generators.hpp"

using namespace qsheaf;

namespace {
const std::filesystem::path kData = QSHEAF_TEST_DATA_DIR;

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}
}  // namespace

TEST_CASE("scalar text") {
  CHECK(format_scalar(Scalar(3, 6)) == "1/2");
  CHECK(format_scalar(Scalar(-4, 2)) == "-2");
  CHECK(format_scalar(Scalar(0)) == "0");
  CHECK(parse_scalar("6/4") == Scalar(3, 2));
  CHECK(parse_scalar("-7") == -7);
  CHECK(parse_scalar(Json(5)) == 5);
  CHECK(parse_scalar(Json("0/3")) == 0);
  for (const char* bad : {"", "1/0", "1.5", "a", "1/-2", "--1", "1/", "/2"}) {
    CAPTURE(bad);
    CHECK(code_of([&] { parse_scalar(bad); }) == ErrorCode::ParseError);
  }
  CHECK(code_of([] { parse_scalar(Json(1.5)); }) == ErrorCode::ParseError);
}

TEST_CASE("scalar round trip") {
  qsheaf::testing::Rng rng(71);
  for (int i = 0; i < 200; ++i) {
    const Scalar x = qsheaf::testing::random_rational(rng, 1000);
    CHECK(parse_scalar(format_scalar(x)) == x);
  }
}

TEST_CASE("matrix json") {
  const Matrix m{{1, Scalar(-1, 2)}, {0, 3}};
  const Json j = matrix_to_json(m);
  CHECK(j.dump() == R"([["1","-1/2"],["0","3"]])");
  CHECK(matrix_from_json(j) == m);
  CHECK(matrix_from_json(Json::array(), 0, 3) == Matrix(0, 3));
  CHECK(code_of([&] { matrix_from_json(j, 3, 2); }) == ErrorCode::DimensionMismatch);
  CHECK(code_of([] { matrix_from_json(Json::parse(R"([["1"],["1","2"]])")); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("quiver files") {
  const Quiver q = load_quiver(kData / "chain_abc.json");
  CHECK(q.vertices == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(q.edges.size() == 2);
  CHECK(q.edges[1].name == "e2");
  CHECK(q.edges[1].source == "b");
  CHECK(quiver_from_json(quiver_to_json(q)).edges[0].target == "b");
  CHECK(code_of([] { load_quiver(kData / "malformed.json"); }) == ErrorCode::ParseError);
  CHECK(code_of([] { load_quiver(kData / "does_not_exist.json"); }) == ErrorCode::IoError);
  CHECK(code_of([] { quiver_from_json(Json::parse(R"({"vertices": ["a"]})")); }) == ErrorCode::ParseError);
}

TEST_CASE("functor files") {
  const PathCategory cat(load_quiver(kData / "single_edge.json"));
  const auto file = load_functor(kData / "projection.json", cat);
  CHECK(file.kind == FunctorKind::Presheaf);
  const Presheaf F = file.as_presheaf();
  CHECK(F.dims == std::vector<std::size_t>{1, 2});
  CHECK(F.maps[0] == Matrix{{1, 0}});
  CHECK(code_of([&] { file.as_representation(); }) == ErrorCode::KindMismatch);
  CHECK(functor_from_json(presheaf_to_json(F, cat), cat).as_presheaf() == F);

  const Json missing = Json::parse(R"({"kind": "presheaf", "dims": {"a": 1}, "maps": {}})");
  CHECK(code_of([&] { functor_from_json(missing, cat); }) == ErrorCode::ParseError);
  const Json misshapen = Json::parse(R"({"kind": "presheaf", "dims": {"a": 1, "b": 1}, "maps": {"e": [["1", "2"]]}})");
  CHECK(code_of([&] { functor_from_json(misshapen, cat); }) == ErrorCode::DimensionMismatch);
}

TEST_CASE("representation round trip through dualize") {
  const PathCategory cat(load_quiver(kData / "chain_abc.json"));
  const Representation V = load_functor(kData / "chain_rep.json", cat).as_representation();
  const Json once = presheaf_to_json(dualize(cat, V), cat);
  CHECK(once["kind"] == "presheaf");
  const Presheaf F = functor_from_json(once, cat).as_presheaf();
  const Json twice = representation_to_json(dualize(cat, F), cat);
  CHECK(twice["maps"] == read_json_file(kData / "chain_rep.json")["maps"]);
}

TEST_CASE("report json is stable") {
  const PathCategory cat(load_quiver(kData / "chain_abc.json"));
  const auto a = to_json(cat, audit_axioms(cat, Topology::edge_generated())).dump();
  const auto b = to_json(cat, audit_axioms(cat, Topology::edge_generated())).dump();
  CHECK(a == b);
  const Json j = Json::parse(a);
  CHECK(j["gt3"]["pass"] == false);
  CHECK(j["gt3"]["counterexample"]["candidate"] == Json::parse(R"(["e2.e1"])"));
}
