#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "laxfact/ortho.hpp"
#include "laxfact/parmap.hpp"
#include "laxfact/verdict.hpp"

namespace laxfact {

// The least element of every universe hom-set. ContractViolation starting with
// "not pointed-capable" when some hom-set has none.
ClassReport zero_class(const FinOrdCategory& c, const Universe& u);
// Zeros are minimal and absorbent on both sides.
Verdict check_zero_class(const FinOrdCategory& c, const Universe& u, const ClassReport& zero);

// {f | ∃f′: f∘f′ = id}
ClassReport split_epi_class(const FinOrdCategory& c, const Universe& u);

struct PointedClassReport {
  std::string name;
  ClassReport complement;
  ClassReport predicate;
  std::optional<ClassReport> expected;  // Par identification
  Verdict verdict;

  nlohmann::json to_json() const;
};

struct PointedClasses {
  ClassReport zero;
  std::vector<PointedClassReport> classes;  // U, DD, DI, V, LI
  Verdict checks;

  const PointedClassReport& get(std::string_view name) const;
  bool ok() const;
  nlohmann::json to_json() const;
};

// With par set, the universe must be its whole category and the Par
// identifications (total injective, total, surjective φ) are compared too.
PointedClasses compute_pointed_classes(const FinOrdCategory& c, const Universe& u, const ParCategory* par = nullptr);

enum class Conjecture { URightComplement, VLeftComplement, LiLeftComplement };

std::string_view conjecture_name(Conjecture id) noexcept;
std::optional<Conjecture> parse_conjecture(std::string_view s) noexcept;
std::vector<Conjecture> all_conjectures();

struct ConjectureResult {
  std::string verdict;  // "match", "degenerate-match", "counterexample"
  bool revalidated = true;  // every emitted counterexample re-checked
  nlohmann::json report;
};

// Both sides computed within the universe; never a claim beyond it.
ConjectureResult run_conjecture(const FinOrdCategory& c, const Universe& u, Conjecture id);

}  // namespace laxfact
