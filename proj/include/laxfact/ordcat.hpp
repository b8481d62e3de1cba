#pragma once

#include <compare>
#include <functional>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "laxfact/bits.hpp"

namespace laxfact {

struct ObjId {
  std::uint32_t index = 0;
  friend auto operator<=>(ObjId, ObjId) = default;
};

// Morphisms are interned: equality is index equality.
struct MorId {
  std::uint32_t index = 0;
  friend auto operator<=>(MorId, MorId) = default;
};

// Raw, unchecked description of a finite Ord-enriched category. Indices refer
// into `objects` / `morphisms`; `line` fields carry source positions for diagnostics.
struct CategoryData {
  struct Morphism {
    std::string name;
    std::uint32_t dom = 0;
    std::uint32_t cod = 0;
  };
  struct Composite {
    std::uint32_t g = 0;
    std::uint32_t f = 0;
    std::uint32_t gf = 0;
    std::size_t line = 0;
  };
  struct OrderPair {
    std::uint32_t lower = 0;
    std::uint32_t upper = 0;
    std::size_t line = 0;
  };

  std::vector<std::string> objects;
  std::vector<Morphism> morphisms;
  std::vector<std::optional<std::uint32_t>> identities;  // one slot per object
  std::vector<Composite> compose;
  std::vector<OrderPair> leq;
};

enum class OrderMode {
  Closure,  // take the reflexive-transitive closure; reject antisymmetry violations
  AsGiven,  // keep the relation verbatim (validation then reports poset-law violations)
};

// Morphism cap: LAXFACT_CAP when set, 10000 otherwise.
std::size_t morphism_cap();

class FinOrdCategory {
 public:
  static FinOrdCategory build(const CategoryData& data, OrderMode mode = OrderMode::Closure);

  // Builds from the objects/morphisms/identities of `shape` (its compose and leq
  // lists are ignored) with composition and order supplied as functions. The
  // order predicate is only queried on parallel pairs and is stored verbatim.
  using ComposeFn = std::function<MorId(MorId g, MorId f)>;
  using LeqFn = std::function<bool(MorId f, MorId g)>;
  static FinOrdCategory from_functions(const CategoryData& shape, const ComposeFn& compose,
                                       const LeqFn& leq);

  std::size_t object_count() const noexcept { return object_names_.size(); }
  std::size_t morphism_count() const noexcept { return mor_dom_.size(); }

  const std::string& object_name(ObjId a) const { return object_names_[a.index]; }
  const std::string& name(MorId f) const { return mor_names_[f.index]; }
  std::optional<MorId> find(std::string_view name) const;
  std::optional<ObjId> find_object(std::string_view name) const;

  ObjId dom(MorId f) const noexcept { return mor_dom_[f.index]; }
  ObjId cod(MorId f) const noexcept { return mor_cod_[f.index]; }
  bool parallel(MorId f, MorId g) const noexcept { return dom(f) == dom(g) && cod(f) == cod(g); }

  bool has_identity(ObjId a) const noexcept { return identities_[a.index].has_value(); }
  MorId identity(ObjId a) const;

  // Morphisms a -> b in canonical (index) order.
  std::span<const MorId> hom(ObjId a, ObjId b) const noexcept {
    return homs_[a.index * object_count() + b.index];
  }
  // Morphisms with domain a.
  std::span<const MorId> out(ObjId a) const noexcept { return out_[a.index]; }
  // Position of f inside hom(dom f, cod f).
  std::size_t local_index(MorId f) const noexcept { return local_[f.index]; }

  // g∘f; throws ContractViolation if cod(f) != dom(g) or the table has no entry.
  MorId compose(MorId g, MorId f) const;
  std::optional<MorId> try_compose(MorId g, MorId f) const noexcept;

  // f ≤ g in the hom-order; throws ContractViolation for non-parallel pairs.
  bool leq(MorId f, MorId g) const;
  // Unchecked variant for hot loops: caller guarantees f, g parallel.
  bool leq_unchecked(MorId f, MorId g) const noexcept { return up_[f.index].test(local_[g.index]); }

  // Up-set / down-set of f as local indices of its hom-set.
  const Bits& up_set(MorId f) const noexcept { return up_[f.index]; }
  const Bits& down_set(MorId f) const noexcept { return down_[f.index]; }

  bool is_discrete() const noexcept { return discrete_; }

  // The same category with every hom-order reversed.
  FinOrdCategory reversed_order() const;

  // Structural problems found while building (wrong composite types, missing entries...).
  const std::vector<std::string>& structural_issues() const noexcept { return structural_; }
  // Order relation as stored, before any validation (for AsGiven mode checks).
  OrderMode order_mode() const noexcept { return order_mode_; }

  // Round-trips back to raw data: composites for every composable pair, order as
  // the full stored relation.
  CategoryData to_data() const;

 private:
  FinOrdCategory() = default;
  static FinOrdCategory skeleton(const CategoryData& shape);
  void finish_order();

  static constexpr std::uint32_t kNone = 0xffffffffU;

  std::vector<std::string> object_names_;
  std::vector<std::string> mor_names_;
  std::vector<ObjId> mor_dom_;
  std::vector<ObjId> mor_cod_;
  std::vector<std::optional<MorId>> identities_;
  std::vector<std::vector<MorId>> homs_;
  std::vector<std::vector<MorId>> out_;
  std::vector<std::size_t> local_;
  std::vector<std::size_t> out_index_;
  std::vector<std::size_t> row_start_;
  std::vector<std::uint32_t> composition_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
  std::unordered_map<std::string, MorId> by_name_;
  std::unordered_map<std::string, ObjId> obj_by_name_;
  std::vector<std::string> structural_;
  OrderMode order_mode_ = OrderMode::Closure;
  bool discrete_ = true;
};

struct Violation {
  std::string law;  // "structural", "identity", "associativity", "order-reflexive", ...
  std::string message;
  std::vector<std::string> witnesses;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const noexcept { return violations.empty(); }
  std::size_t structural_count() const noexcept;
};

// Lists every violated instance of the identity, associativity, poset and
// monotonicity laws, plus structural table errors.
ValidationReport validate_category(const FinOrdCategory& cat);

// Reflexive-transitive closure of a relation on n points, rows as bitsets.
std::vector<Bits> reflexive_transitive_closure(std::vector<Bits> rows);

}  // namespace laxfact
