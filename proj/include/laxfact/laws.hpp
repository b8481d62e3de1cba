#pragma once

#include <filesystem>
#include <map>
#include <mutex>
#include <optional>

#include <json.hpp>

#include "laxfact/factsys.hpp"

namespace laxfact {

// Θ_f: K(Rf) → Kf fills ε_{Rf} = (id, RRf): LRf → Rf, giving μ_f = (Θ_f, id): RRf → Rf.
// Ω_f: Kf → K(Lf) fills η_{Lf} = (LLf, id): Lf → RLf, giving δ_f = (id, Ω_f): Lf → LLf.
// Both are first fillers in scan order unless overridden; computed on demand.
class LaxStructure {
 public:
  explicit LaxStructure(SchemePtr scheme) : scheme_(std::move(scheme)) {}

  const FactorisationScheme& scheme() const noexcept { return *scheme_; }

  void override_theta(const PartialMap& f, PartialMap value);
  void override_omega(const PartialMap& f, PartialMap value);
  std::size_t override_count() const noexcept { return theta_fixed_.size() + omega_fixed_.size(); }

  std::optional<PartialMap> theta(const PartialMap& f) const;
  std::optional<PartialMap> omega(const PartialMap& f) const;
  // Number of fillers available for the Θ_f / Ω_f squares.
  std::size_t theta_choices(const PartialMap& f) const;
  std::size_t omega_choices(const PartialMap& f) const;

  MapSquare mu(const PartialMap& f) const;     // (Θ_f, id): RRf → Rf
  MapSquare delta(const PartialMap& f) const;  // (id, Ω_f): Lf → LLf
  MapSquare dist(const PartialMap& f) const;   // (Ω_f, Θ_f): LRf → RLf

 private:
  SchemePtr scheme_;
  std::map<PartialMap, PartialMap> theta_fixed_, omega_fixed_;
  mutable std::mutex mu_;
  mutable std::map<PartialMap, std::optional<PartialMap>> theta_cache_, omega_cache_;
};

// Reads {"theta": [{"f": M, "value": M}], "omega": [...]} with
// M = {"dom": m, "cod": n, "map": [t0, null, ...]}. FormatError on bad input.
void load_structure(LaxStructure& s, const std::filesystem::path& path);
nlohmann::json map_json(const PartialMap& f);
PartialMap map_from_json(const nlohmann::json& j);

// Θ_f (resp. Ω_f) exists at every universe map; detail counts the unique ones.
Verdict build_monad_data(const LaxStructure& s, const SchemeWorkbench& w);
Verdict build_comonad_data(const LaxStructure& s, const SchemeWorkbench& w);

// Unit laws id ≤ Θ_f∘K(η_f), id ≤ Θ_f∘LRf; associativity Θ_f∘K(μ_f) ≤ Θ_f∘Θ_{Rf};
// μ a square and oplax natural. ≥ throughout for oplax schemes.
Verdict check_lax_monad_laws(const LaxStructure& s, const SchemeWorkbench& w);
// Counit laws K(ε_f)∘Ω_f ≤ id, RLf∘Ω_f ≤ id; coassociativity
// Ω_{Lf}∘Ω_f ≤ K(δ_f)∘Ω_f; δ a square. Reversed for oplax schemes.
Verdict check_lax_comonad_laws(const LaxStructure& s, const SchemeWorkbench& w);
// Both hexagons for Δ_f = (Ω_f, Θ_f), compared componentwise for equality.
Verdict check_distributivity_law(const LaxStructure& s, const SchemeWorkbench& w);
// θ/ω as designated fillers, and θ_{Lf}∘K(u,v)∘ω_f (θ_f∘K(u,v)∘ω_{Rf}) filling
// every square Lf → RLf (LRf → Rf).
Verdict check_lawfs_implies_lfwfs(const LaxStructure& s, const SchemeWorkbench& w);

// Fillers of ε_f coincide with the λ making (λ, id): Rf → f a lax algebra.
Verdict check_algebra_structures(const SchemeWorkbench& w);
// For f ∈ L_F ∩ R_F, λ_f∘ρ_f is an adjoint partner of f.
Verdict check_adjoint_composite(const SchemeWorkbench& w, const DerivedClasses& classes);

nlohmann::json monad_report(const LaxStructure& s, const SchemeWorkbench& w, bool& ok);

}  // namespace laxfact
