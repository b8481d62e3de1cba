#pragma once

#include <map>
#include <string>

#include <json.hpp>

#include "laxfact/factsys.hpp"

namespace laxfact {

// Total maps between sets of size ≤ ambient as a discrete category; the
// universe keeps sizes ≤ n. Morphism names match the Par skeleton.
class TotalCategory {
 public:
  TotalCategory(std::uint32_t ambient, std::uint32_t n);
  TotalCategory(const TotalCategory&) = delete;
  TotalCategory& operator=(const TotalCategory&) = delete;

  const FinOrdCategory& category() const noexcept { return cat_; }
  const Universe& universe() const noexcept { return universe_; }
  const PartialMap& map(MorId f) const noexcept { return maps_[f.index]; }
  std::optional<MorId> find(const PartialMap& f) const;

 private:
  FinOrdCategory build(std::uint32_t ambient);

  std::vector<PartialMap> maps_;
  std::map<PartialMap, MorId> index_;
  FinOrdCategory cat_;
  Universe universe_;
};

// With f = r∘l and f total: l̄ = ν∘l, r̄ = r∘μ through D_r, μ the inclusion of
// D_r and ν its partial inverse. ContractViolation when r∘l ≠ f or f is partial.
Factorisation totalise_factorisation(const PartialMap& f, const PartialMap& l, const PartialMap& r);

struct RestrictedClasses {
  ClassReport left;   // L ∩ Tot
  ClassReport right;  // R ∩ Tot
  std::string left_match, right_match;
};

// "not-applicable" for a lax scheme with some D_{Lf} ≠ D_f.
bool restriction_applies(const SchemeWorkbench& w, std::string* why = nullptr);

RestrictedClasses total_classes(const TotalCategory& t, const SchemeWorkbench& w, const DerivedClasses& classes);

// Every filler of the scheme's kind for a commutative total square from L ∩ Tot
// to R ∩ Tot is total with both triangles commuting, and one exists.
Verdict check_total_fillers(const TotalCategory& t, const SchemeWorkbench& w, const RestrictedClasses& rc);

// r̄∘l̄ = f with total parts, idempotent on total input, for every total universe f.
Verdict check_totalise(const SchemeWorkbench& w);

// Strict WFS among total maps, factorisations via totalise_factorisation.
Verdict check_restricted_wfs(const TotalCategory& t, const SchemeWorkbench& w, const RestrictedClasses& rc);

nlohmann::json restrict_report(const SchemeWorkbench& w, bool& ok);

}  // namespace laxfact
