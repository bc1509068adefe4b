#include "qsheaf/sieve.hpp"

#include <algorithm>
#include <charconv>

namespace qsheaf {

Sieve make_sieve_unchecked(VertexId codomain, std::vector<PathMorphism> members) {
  Sieve s;
  s.codomain_ = codomain;
  std::sort(members.begin(), members.end(), CanonicalLess{});
  members.erase(std::unique(members.begin(), members.end()), members.end());
  s.members_ = std::move(members);
  return s;
}

Sieve::Sieve(const PathCategory& cat, VertexId codomain, std::vector<PathMorphism> members) {
  for (const auto& f : members)
    if (f.target != codomain)
      throw Error(ErrorCode::WrongCodomain, cat.describe(f) + " does not target " + cat.vertex_name(codomain));
  *this = make_sieve_unchecked(codomain, std::move(members));
  if (!is_sieve(cat, codomain, members_))
    throw Error(ErrorCode::InvalidArgument, "member set is not closed under precomposition");
}

bool Sieve::contains(const PathMorphism& f) const {
  return std::binary_search(members_.begin(), members_.end(), f, CanonicalLess{});
}

bool sieve_less(const Sieve& a, const Sieve& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  if (a.codomain() != b.codomain()) return a.codomain() < b.codomain();
  return std::lexicographical_compare(a.members().begin(), a.members().end(), b.members().begin(),
                                      b.members().end(), CanonicalLess{});
}

bool is_sieve(const PathCategory& cat, VertexId v, std::span<const PathMorphism> members) {
  std::vector<PathMorphism> sorted(members.begin(), members.end());
  std::sort(sorted.begin(), sorted.end(), CanonicalLess{});
  auto has = [&](const PathMorphism& f) {
    return std::binary_search(sorted.begin(), sorted.end(), f, CanonicalLess{});
  };
  // Closure under one-edge precomposition implies closure under all paths.
  for (const auto& f : sorted) {
    if (f.target != v || !cat.index_in_hom(f)) return false;
    for (auto e : cat.incoming(f.source))
      if (!has(compose(cat.edge_morphism(e), f))) return false;
  }
  return true;
}

Sieve maximal_sieve(const PathCategory& cat, VertexId v) {
  return make_sieve_unchecked(v, cat.morphisms_into(v));
}

Sieve generate_sieve(const PathCategory& cat, VertexId v, std::span<const PathMorphism> generators) {
  std::vector<PathMorphism> members;
  for (const auto& f : generators) {
    if (f.target != v || !cat.index_in_hom(f))
      throw Error(ErrorCode::WrongCodomain, cat.describe(f) + " is not a morphism into " + cat.vertex_name(v));
    for (const auto& g : cat.morphisms_into(f.source)) members.push_back(compose(g, f));
  }
  return make_sieve_unchecked(v, std::move(members));
}

Sieve pullback_sieve(const PathCategory& cat, const PathMorphism& f, const Sieve& s) {
  if (f.target != s.codomain())
    throw Error(ErrorCode::CodomainMismatch,
                cat.describe(f) + " does not target the sieve's codomain " + cat.vertex_name(s.codomain()));
  std::vector<PathMorphism> members;
  for (const auto& g : cat.morphisms_into(f.source))
    if (s.contains(compose(g, f))) members.push_back(g);
  return make_sieve_unchecked(f.source, std::move(members));
}

std::vector<Sieve> enumerate_sieves(const PathCategory& cat, VertexId v, std::size_t limit) {
  const auto& hom = cat.morphisms_into(v);
  const std::size_t n = hom.size();
  if (n > limit)
    throw Error(ErrorCode::TooManyMorphisms, std::to_string(n) + " morphisms into " + cat.vertex_name(v) +
                                                 " exceed the limit " + std::to_string(limit));

  // extensions[i]: indices of the one-edge precompositions of hom[i]; they are
  // longer, hence later in canonical order.
  std::vector<std::vector<std::size_t>> extensions(n);
  for (std::size_t i = 0; i < n; ++i)
    for (auto e : cat.incoming(hom[i].source))
      extensions[i].push_back(*cat.index_in_hom(compose(cat.edge_morphism(e), hom[i])));

  // Decide membership from the longest morphism down: hom[i] may join only if
  // all its extensions already have. Every up-closed set arises exactly once.
  std::vector<bool> in(n, false);
  std::vector<Sieve> out;
  auto walk = [&](auto&& self, std::size_t remaining) -> void {
    if (remaining == 0) {
      std::vector<PathMorphism> members;
      for (std::size_t i = 0; i < n; ++i)
        if (in[i]) members.push_back(hom[i]);
      out.push_back(make_sieve_unchecked(v, std::move(members)));
      return;
    }
    const std::size_t i = remaining - 1;
    self(self, i);
    if (std::all_of(extensions[i].begin(), extensions[i].end(), [&](std::size_t j) { return in[j]; })) {
      in[i] = true;
      self(self, i);
      in[i] = false;
    }
  };
  walk(walk, n);
  std::sort(out.begin(), out.end(), sieve_less);
  return out;
}

Topology Topology::parse(std::string_view text) {
  if (text == "coarse") return coarse();
  if (text == "discrete") return discrete(false);
  if (text == "discrete+empty") return discrete(true);
  if (text == "edge") return edge_generated();
  if (text.starts_with("graded:")) {
    const auto digits = text.substr(7);
    std::size_t n = 0;
    auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (ec == std::errc() && ptr == digits.data() + digits.size() && !digits.empty()) return length_graded(n);
  }
  throw Error(ErrorCode::ParseError, "unknown topology '" + std::string(text) + "'");
}

std::string Topology::to_string() const {
  switch (kind) {
    case Kind::Coarse: return "coarse";
    case Kind::Discrete: return include_empty ? "discrete+empty" : "discrete";
    case Kind::EdgeGenerated: return "edge";
    case Kind::LengthGraded: return "graded:" + std::to_string(max_length);
  }
  return "?";
}

bool is_covering(const PathCategory& cat, const Topology& t, const Sieve& s) {
  const VertexId v = s.codomain();
  const auto& hom = cat.morphisms_into(v);
  switch (t.kind) {
    case Topology::Kind::Coarse:
      return s.size() == hom.size();
    case Topology::Kind::Discrete:
      return !s.empty() || t.include_empty;
    case Topology::Kind::EdgeGenerated:
      if (cat.incoming(v).empty()) return s.size() == hom.size();
      return std::any_of(s.members().begin(), s.members().end(),
                         [](const PathMorphism& f) { return f.length() == 1; });
    case Topology::Kind::LengthGraded:
      return std::all_of(hom.begin(), hom.end(), [&](const PathMorphism& f) {
        return f.length() > t.max_length || s.contains(f);
      });
  }
  return false;
}

std::vector<Sieve> covering_sieves(const PathCategory& cat, const Topology& t, VertexId v,
                                   std::size_t limit) {
  // A sieve holding id_v is maximal, and length-graded covers always hold id_v.
  if (t.kind == Topology::Kind::Coarse || t.kind == Topology::Kind::LengthGraded)
    return {maximal_sieve(cat, v)};
  std::vector<Sieve> out;
  for (auto& s : enumerate_sieves(cat, v, limit))
    if (is_covering(cat, t, s)) out.push_back(std::move(s));
  return out;
}

AxiomReport audit_axioms(const PathCategory& cat, const Topology& t, std::size_t limit) {
  for (VertexId v = 0; v < cat.vertex_count(); ++v)
    if (cat.morphisms_into(v).size() > limit)
      throw Error(ErrorCode::TooManyMorphisms, std::to_string(cat.morphisms_into(v).size()) +
                                                   " morphisms into " + cat.vertex_name(v) +
                                                   " exceed the limit " + std::to_string(limit));

  AxiomReport report{t, {}, std::nullopt, std::nullopt};
  for (VertexId v = 0; v < cat.vertex_count(); ++v)
    if (!is_covering(cat, t, maximal_sieve(cat, v))) report.gt1_failures.push_back(v);

  for (VertexId v = 0; v < cat.vertex_count(); ++v) {
    if (report.gt2_counterexample && report.gt3_counterexample) break;
    const auto all = enumerate_sieves(cat, v, limit);
    std::vector<const Sieve*> covers;
    for (const auto& s : all)
      if (is_covering(cat, t, s)) covers.push_back(&s);

    if (!report.gt2_counterexample) {
      for (const Sieve* s : covers) {
        for (const auto& f : cat.morphisms_into(v)) {
          auto pulled = pullback_sieve(cat, f, *s);
          if (!is_covering(cat, t, pulled)) {
            report.gt2_counterexample = Gt2Counterexample{*s, f, std::move(pulled)};
            break;
          }
        }
        if (report.gt2_counterexample) break;
      }
    }

    if (!report.gt3_counterexample) {
      for (const Sieve* s : covers) {
        for (const auto& r : all) {
          if (is_covering(cat, t, r)) continue;
          const bool locally_covered = std::all_of(
              s->members().begin(), s->members().end(),
              [&](const PathMorphism& f) { return is_covering(cat, t, pullback_sieve(cat, f, r)); });
          if (locally_covered) {
            report.gt3_counterexample = Gt3Counterexample{*s, r};
            break;
          }
        }
        if (report.gt3_counterexample) break;
      }
    }
  }
  return report;
}

}  // namespace qsheaf
