#pragma once

// JSON formats: quiver files, presheaf/representation files and the report
// objects emitted by the CLI. Scalars are written as "p/q" or "p" strings.
// Objects keep insertion order so output is byte-stable.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "qsheaf/functors.hpp"
#include "qsheaf/linalg.hpp"
#include "qsheaf/presheaf.hpp"
#include "qsheaf/quiver.hpp"
#include "qsheaf/sheaf_check.hpp"
#include "qsheaf/sieve.hpp"

namespace qsheaf {

using Json = nlohmann::ordered_json;

std::string format_scalar(const Scalar& x);
/// Accepts "p", "-p", "p/q" with q > 0 (or a JSON integer); result is canonical.
Scalar parse_scalar(std::string_view text);
Scalar parse_scalar(const Json& j);
inline Scalar parse_scalar(const char* text) { return parse_scalar(std::string_view(text)); }
inline Scalar parse_scalar(const std::string& text) { return parse_scalar(std::string_view(text)); }

Json vector_to_json(const Vector& v);
Json matrix_to_json(const Matrix& m);
/// Shape taken from the argument; a 0-row matrix is written as [] and needs
/// the expected shape to come back, see the overload below.
Matrix matrix_from_json(const Json& j);
Matrix matrix_from_json(const Json& j, std::size_t rows, std::size_t cols);

Json read_json_file(const std::filesystem::path& path);
Json parse_json_text(std::string_view text);

Quiver quiver_from_json(const Json& j);
Json quiver_to_json(const Quiver& q);
Quiver load_quiver(const std::filesystem::path& path);

enum class FunctorKind { Presheaf, Representation };

/// Contents of a presheaf/representation file, indexed like the category.
struct FunctorFile {
  FunctorKind kind = FunctorKind::Presheaf;
  std::vector<std::size_t> dims;
  std::vector<Matrix> maps;

  /// Throws KindMismatch unless kind matches.
  Presheaf as_presheaf() const;
  Representation as_representation() const;
};

FunctorFile functor_from_json(const Json& j, const PathCategory& cat);
Json functor_to_json(const FunctorFile& f, const PathCategory& cat);
Json presheaf_to_json(const Presheaf& F, const PathCategory& cat);
Json representation_to_json(const Representation& V, const PathCategory& cat);
FunctorFile load_functor(const std::filesystem::path& path, const PathCategory& cat);

Json morphism_to_json(const PathCategory& cat, const PathMorphism& f);
Json sieve_to_json(const PathCategory& cat, const Sieve& s);
Json walk_to_json(const PathCategory& cat, const Walk& w);

Json to_json(const ValidationReport& r);
Json to_json(const PathCategory& cat, const AxiomReport& r);
Json to_json(const PathCategory& cat, const SheafVerdict& v);
Json to_json(const PathCategory& cat, const DiscreteCrossCheck& c);
Json to_json(const AdjunctionReport& r);
Json to_json(const PathCategory& cat, const LiteralAdjoint& l);
Json to_json(const PathCategory& cat, const TransportReport& r);

}  // namespace qsheaf
