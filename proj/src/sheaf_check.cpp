#include "qsheaf/sheaf_check.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "qsheaf/error.hpp"

namespace qsheaf {

std::string_view to_string(Diagnosis d) {
  switch (d) {
    case Diagnosis::None: return "none";
    case Diagnosis::EpsilonNotInjective: return "epsilon_not_injective";
    case Diagnosis::CompatibleFamilyNotGlued: return "compatible_family_not_glued";
  }
  return "?";
}

std::vector<std::size_t> product_offsets(const Presheaf& F, std::span<const PathMorphism> members) {
  std::vector<std::size_t> off{0};
  for (const auto& f : members) off.push_back(off.back() + F.dims.at(f.source));
  return off;
}

LinearMap section_map(const PathCategory& cat, const Presheaf& F, VertexId v,
                      std::span<const PathMorphism> members) {
  std::vector<Matrix> blocks;
  for (const auto& f : members) {
    if (f.target != v) throw Error(ErrorCode::WrongCodomain, cat.describe(f) + " does not target " + cat.vertex_name(v));
    blocks.push_back(eval_presheaf(cat, F, f));
  }
  return vstack(blocks, F.dims.at(v));
}

LinearMap section_map(const PathCategory& cat, const Presheaf& F, const Sieve& s) {
  return section_map(cat, F, s.codomain(), s.members());
}

Matrix compatibility_equations(const PathCategory& cat, const Presheaf& F,
                               std::span<const PathMorphism> members) {
  const auto off = product_offsets(F, members);
  auto position = [&](const PathMorphism& h) -> std::size_t {
    auto it = std::find(members.begin(), members.end(), h);
    if (it == members.end()) throw Error(ErrorCode::InvalidArgument, "members are not closed under precomposition");
    return static_cast<std::size_t>(it - members.begin());
  };

  // One block row per (f, g): F(g) s_f - s_{f∘g} = 0, living in F(dom g).
  std::vector<std::tuple<std::size_t, std::size_t, Matrix>> blocks;
  std::size_t rows = 0;
  for (std::size_t i = 0; i < members.size(); ++i) {
    for (const auto& g : cat.morphisms_into(members[i].source)) {
      const std::size_t j = position(compose(g, members[i]));
      blocks.emplace_back(i, j, eval_presheaf(cat, F, g));
      rows += F.dims.at(g.source);
    }
  }
  Matrix eqs(rows, off.back());
  std::size_t r = 0;
  for (const auto& [i, j, Fg] : blocks) {
    for (std::size_t a = 0; a < Fg.rows(); ++a) {
      for (std::size_t b = 0; b < Fg.cols(); ++b) eqs(r + a, off[i] + b) += Fg(a, b);
      eqs(r + a, off[j] + a) -= 1;
    }
    r += Fg.rows();
  }
  return eqs;
}

Subspace compatibility_space(const PathCategory& cat, const Presheaf& F,
                             std::span<const PathMorphism> members) {
  const Matrix eqs = compatibility_equations(cat, F, members);
  return {eqs.cols(), kernel_basis(eqs)};
}

Subspace compatibility_space(const PathCategory& cat, const Presheaf& F, const Sieve& s) {
  return compatibility_space(cat, F, s.members());
}

std::optional<Vector> glue(const PathCategory& cat, const Presheaf& F, const SectionFamily& family) {
  const auto& members = family.sieve.members();
  if (family.sections.size() != members.size())
    throw Error(ErrorCode::DimensionMismatch, "one section per sieve member expected");
  Vector flat;
  for (std::size_t i = 0; i < members.size(); ++i) {
    if (family.sections[i].size() != F.dims.at(members[i].source))
      throw Error(ErrorCode::DimensionMismatch, "section for " + cat.describe(members[i]) + " has wrong length");
    flat.insert(flat.end(), family.sections[i].begin(), family.sections[i].end());
  }

  const Matrix eqs = compatibility_equations(cat, F, members);
  if (!(eqs * flat == Vector(eqs.rows()))) return std::nullopt;

  const Matrix eps = section_map(cat, F, family.sieve);
  const VertexId v = family.sieve.codomain();
  if (family.sieve.contains(cat.identity(v))) {
    // eps has an identity block, so the only candidate is s_{id_v}.
    const auto idx = static_cast<std::size_t>(
        std::find(members.begin(), members.end(), cat.identity(v)) - members.begin());
    Vector s = family.sections[idx];
    if (eps * s == flat) return s;
    return std::nullopt;
  }
  return solve(eps, flat);
}

EqualizerCheck check_equalizer(const PathCategory& cat, const Presheaf& F, VertexId v,
                               std::span<const PathMorphism> members) {
  const Matrix eps = section_map(cat, F, v, members);
  const Matrix eqs = compatibility_equations(cat, F, members);
  if (!(eqs * eps).is_zero())
    throw std::logic_error("section map leaves the compatible families; presheaf data is inconsistent");

  EqualizerCheck out;
  out.section_dim = F.dims.at(v);
  out.epsilon_rank = rank(eps);
  const auto compatible = kernel_basis(eqs);
  out.compatible_dim = compatible.size();

  if (out.epsilon_rank < out.section_dim) {
    out.holds = false;
    out.diagnosis = Diagnosis::EpsilonNotInjective;
    out.witness = kernel_basis(eps).front();
  } else if (out.compatible_dim > out.epsilon_rank) {
    out.holds = false;
    out.diagnosis = Diagnosis::CompatibleFamilyNotGlued;
    for (const auto& b : compatible) {
      if (!solve(eps, b)) {
        out.witness = b;
        break;
      }
    }
  }
  return out;
}

SheafVerdict is_sheaf_for_sieve(const PathCategory& cat, const Presheaf& F, const Sieve& s) {
  F.check(cat);
  const auto eq = check_equalizer(cat, F, s.codomain(), s.members());
  SheafVerdict v;
  v.sieves_checked = 1;
  v.holds = eq.holds;
  if (!eq.holds) {
    v.vertex = s.codomain();
    v.failing_sieve = s;
    v.diagnosis = eq.diagnosis;
    v.witness = eq.witness;
  }
  return v;
}

SheafVerdict is_sheaf(const PathCategory& cat, const Presheaf& F, const Topology& t, std::size_t limit) {
  F.check(cat);
  SheafVerdict out;
  for (VertexId v = 0; v < cat.vertex_count(); ++v) {
    for (const auto& s : covering_sieves(cat, t, v, limit)) {
      auto verdict = is_sheaf_for_sieve(cat, F, s);
      ++out.sieves_checked;
      if (!verdict.holds) {
        verdict.sieves_checked = out.sieves_checked;
        return verdict;
      }
    }
  }
  return out;
}

std::optional<EdgeId> first_non_iso_edge(const PathCategory& cat, const Presheaf& F) {
  F.check(cat);
  for (EdgeId e = 0; e < cat.edge_count(); ++e)
    if (!is_isomorphism(F.maps[e])) return e;
  return std::nullopt;
}

bool is_discrete_sheaf_criterion(const PathCategory& cat, const Presheaf& F) {
  return !first_non_iso_edge(cat, F);
}

DiscreteCrossCheck cross_validate_discrete(const PathCategory& cat, const Presheaf& F, std::size_t limit) {
  DiscreteCrossCheck out;
  out.non_iso_edge = first_non_iso_edge(cat, F);
  out.criterion = !out.non_iso_edge;
  out.definitional = is_sheaf(cat, F, Topology::discrete(false), limit);
  out.agree = out.criterion == out.definitional.holds;
  return out;
}

}  // namespace qsheaf
