#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "laxfact/ordcat.hpp"

namespace laxfact {

// A partial function {0..m-1} ⇀ {0..n-1}: an entry per source element, either
// undefined or a target index. The defined entries form the partial domain D_f;
// the assignment restricted to D_f is the total component φ_f.
class PartialMap {
 public:
  static constexpr std::int32_t kUndefined = -1;

  PartialMap() = default;
  // Throws ContractViolation when an entry is out of range.
  PartialMap(std::uint32_t dom_size, std::uint32_t cod_size, std::vector<std::int32_t> values);

  static PartialMap identity(std::uint32_t size);
  static PartialMap zero(std::uint32_t dom_size, std::uint32_t cod_size);

  std::uint32_t dom_size() const noexcept { return dom_size_; }
  std::uint32_t cod_size() const noexcept { return cod_size_; }
  const std::vector<std::int32_t>& values() const noexcept { return values_; }

  bool defined(std::uint32_t i) const noexcept { return values_[i] != kUndefined; }
  std::int32_t operator()(std::uint32_t i) const noexcept { return values_[i]; }

  // D_f in increasing order.
  std::vector<std::uint32_t> domain() const;
  std::uint32_t domain_size() const noexcept;

  bool is_total() const noexcept;
  bool is_zero() const noexcept;
  bool is_injective_component() const noexcept;   // φ_f injective
  bool is_surjective_component() const noexcept;  // φ_f onto the codomain

  // Rank in the lexicographic enumeration of all m⇀n maps (⊥ < 0 < 1 < ...).
  std::uint64_t lex_rank() const noexcept;

  // "m⇀n [t0,...]" with ⊥ for undefined entries.
  std::string to_string() const;

  friend bool operator==(const PartialMap&, const PartialMap&) = default;
  friend auto operator<=>(const PartialMap&, const PartialMap&) = default;

 private:
  std::uint32_t dom_size_ = 0;
  std::uint32_t cod_size_ = 0;
  std::vector<std::int32_t> values_;
};

// g∘f by preimage: D_{g∘f} = {i ∈ D_f | f(i) ∈ D_g}.
PartialMap compose_partial(const PartialMap& g, const PartialMap& f);

// f ⪯ g: f is a domain restriction of g.
bool restriction_leq(const PartialMap& f, const PartialMap& g);

// All (n+1)^m maps m⇀n in lexicographic order; ResourceError past the morphism cap.
std::vector<PartialMap> enumerate_partial_maps(std::uint32_t m, std::uint32_t n);

inline bool is_total(const PartialMap& f) { return f.is_total(); }
inline bool is_zero(const PartialMap& f) { return f.is_zero(); }
inline PartialMap zero_map(std::uint32_t m, std::uint32_t n) { return PartialMap::zero(m, n); }

// f ⊣ g: id ⪯ g∘f and f∘g ⪯ id.
bool is_adjoint_pair(const PartialMap& f, const PartialMap& g);

// The right adjoint of f when one exists: the partial inverse (σ, id) of a total
// injective f = (id, σ). None otherwise.
std::optional<PartialMap> adjunction_partner(const PartialMap& f);

// For an adjoint pair f ⊣ g returns the total pair ((id, φ̃_f), (id, φ_g)) with
// φ_f = σ_g∘φ̃_f. Both are total maps through D_g.
std::pair<PartialMap, PartialMap> reflect_adjunction(const PartialMap& f, const PartialMap& g);

// Skeleton of Par(FinSet) on the sets of sizes 0..N, ordered by ⪯.
class ParCategory {
 public:
  static constexpr std::uint32_t kDefaultMaxSize = 3;
  static constexpr std::uint32_t kHardCap = 4;

  // Builds and, for N ≤ 3, validates every category law (failure is an internal
  // error). N > 4 throws ResourceError.
  static ParCategory build(std::uint32_t max_size);

  const FinOrdCategory& category() const noexcept { return cat_; }
  std::uint32_t max_size() const noexcept { return max_size_; }

  ObjId object(std::uint32_t size) const;
  std::uint32_t size_of(ObjId a) const noexcept { return a.index; }

  const PartialMap& map(MorId f) const noexcept { return maps_[f.index]; }
  // Throws ContractViolation when the map's sets exceed max_size.
  MorId id_of(const PartialMap& f) const;
  std::optional<MorId> find(const PartialMap& f) const noexcept;

 private:
  ParCategory(FinOrdCategory cat, std::uint32_t max_size, std::vector<PartialMap> maps,
              std::vector<std::uint32_t> offsets)
      : cat_(std::move(cat)), max_size_(max_size), maps_(std::move(maps)), offsets_(std::move(offsets)) {}

  FinOrdCategory cat_;
  std::uint32_t max_size_;
  std::vector<PartialMap> maps_;
  std::vector<std::uint32_t> offsets_;  // first MorId of hom(m, n) at m * (N+1) + n
};

// Process-wide cache of built universes, one per size.
std::shared_ptr<const ParCategory> shared_par(std::uint32_t max_size);

// Morphism name used by the exporter: p{m}_{n}_{k}, k the lexicographic rank.
std::string par_morphism_name(const PartialMap& f);

}  // namespace laxfact
