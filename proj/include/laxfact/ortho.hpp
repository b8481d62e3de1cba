#pragma once

#include <functional>
#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "laxfact/bits.hpp"
#include "laxfact/ordcat.hpp"
#include "laxfact/verdict.hpp"

namespace laxfact {

enum class Kind { Strict, Lax, Oplax };

std::string_view kind_name(Kind k) noexcept;
// "strict" (or "commutative"), "lax", "oplax"; nullopt otherwise.
std::optional<Kind> parse_kind(std::string_view s) noexcept;
Kind dual(Kind k) noexcept;

// (u, v): f → g with u: dom f → dom g and v: cod f → cod g.
struct Square {
  MorId f, g, u, v;
  Kind kind = Kind::Lax;
  friend bool operator==(const Square&, const Square&) = default;
};

// a R b in the kind's sense: lax ≤, oplax ≥, strict =. a, b parallel.
bool kind_leq(const FinOrdCategory& c, Kind kind, MorId a, MorId b);

// Throws ContractViolation on a shape mismatch.
bool is_square(const FinOrdCategory& c, const Square& s);
// lax: u ≤ d∘f and g∘d ≤ v; oplax: d∘f ≤ u and v ≤ g∘d; strict: equalities.
bool is_filler(const FinOrdCategory& c, const Square& s, MorId d);

// First filler in hom(cod f, dom g) order.
std::optional<MorId> find_diagonal(const FinOrdCategory& c, const Square& s);
std::vector<MorId> all_diagonals(const FinOrdCategory& c, const Square& s);

// Every square of the kind from f to g, u outer, v inner.
std::vector<Square> all_squares(const FinOrdCategory& c, MorId f, MorId g, Kind kind);

// First square from f to g without a filler, or none when f ⫪ g.
std::optional<Square> first_unfillable(const FinOrdCategory& c, MorId f, MorId g, Kind kind);

nlohmann::json square_json(const FinOrdCategory& c, const Square& s);
std::string square_text(const FinOrdCategory& c, const Square& s);

// Memoised orthogonality relation for one category and kind; safe to share
// between worker threads.
class Orthogonality {
 public:
  Orthogonality(const FinOrdCategory& c, Kind kind) : cat_(&c), kind_(kind) {}

  const FinOrdCategory& category() const noexcept { return *cat_; }
  Kind kind() const noexcept { return kind_; }

  bool operator()(MorId f, MorId g) const { return !failure(f, g).has_value(); }
  std::optional<Square> failure(MorId f, MorId g) const;

 private:
  const FinOrdCategory* cat_;
  Kind kind_;
  mutable std::mutex mu_;
  mutable std::unordered_map<std::uint64_t, std::optional<Square>> memo_;
};

// Morphisms between chosen objects of an ambient category. Classes and
// complements are always relative to one of these.
struct Universe {
  const FinOrdCategory* cat = nullptr;
  std::string label;
  std::vector<bool> objects;
  std::vector<MorId> morphisms;  // ambient order

  bool contains(MorId f) const noexcept {
    return objects[cat->dom(f).index] && objects[cat->cod(f).index];
  }
  bool contains(ObjId a) const noexcept { return objects[a.index]; }
};

Universe whole_universe(const FinOrdCategory& c, std::string label);
Universe object_universe(const FinOrdCategory& c, const std::function<bool(ObjId)>& keep, std::string label);

// A class of universe morphisms. Excluded members may carry a witness: the
// square that kept them out.
struct ClassReport {
  std::string name;
  const Universe* universe = nullptr;
  Bits members;  // indexed by ambient MorId, universe morphisms only
  std::map<std::uint32_t, Square> witnesses;
  // Membership test for ambient morphisms outside the universe (factorisation
  // middles); empty means none belong.
  std::function<bool(MorId)> outside;

  bool contains(MorId f) const noexcept { return members.test(f.index); }
  bool admits(MorId f) const;
  std::size_t size() const noexcept { return members.count(); }
  std::vector<MorId> list() const;
  std::vector<std::string> names() const;
  nlohmann::json to_json() const;
};

ClassReport make_class(const Universe& u, std::string name, const std::function<bool(MorId)>& pred);
ClassReport empty_class(const Universe& u, std::string name);
ClassReport all_class(const Universe& u, std::string name = "All");

bool same_members(const ClassReport& a, const ClassReport& b) noexcept;
bool is_subclass(const ClassReport& a, const ClassReport& b) noexcept;
// Members of a not in b, names.
std::vector<std::string> difference(const ClassReport& a, const ClassReport& b);

// {f ∈ U | ∀h ∈ H: f ⫪ h} and {g ∈ U | ∀h ∈ H: h ⫪ g}.
ClassReport left_complement(const Orthogonality& orth, const ClassReport& h, const Universe& u);
ClassReport right_complement(const Orthogonality& orth, const ClassReport& h, const Universe& u);

enum class Side { Left, Right };

Verdict check_prefactorisation(const Orthogonality& orth, const ClassReport& l, const ClassReport& r,
                               const Universe& u);
// From H on the left: (^⫪(H^⫪), H^⫪); on the right: (^⫪H, (^⫪H)^⫪).
std::pair<ClassReport, ClassReport> build_prefactorisation(const Orthogonality& orth, const ClassReport& h, Side side,
                                                           const Universe& u);

// Suggested (l, r) for f, tried before the exhaustive search.
using FactorHint = std::function<std::optional<std::pair<MorId, MorId>>(MorId)>;

// Prefactorisation plus a factorisation r∘l = f with l ∈ L, r ∈ R for every
// universe f. Middle objects range over the whole ambient category.
Verdict check_lwfs(const Orthogonality& orth, const ClassReport& l, const ClassReport& r, const Universe& u,
                   const FactorHint& hint = {});

// g with id R g∘f and f∘g R id for the kind's relation R: a right adjoint for
// lax, a left adjoint for oplax, an inverse for strict.
std::optional<MorId> find_adjoint_partner(const FinOrdCategory& c, MorId f, Kind kind = Kind::Lax);

struct SelfOrthogonalClasses {
  ClassReport self;       // f ⫪ f
  ClassReport adjoint;    // f has a partner
  ClassReport left_all;   // f ⫪ every g
  ClassReport right_all;  // every g ⫪ f
};

SelfOrthogonalClasses self_orthogonal_classes(const Orthogonality& orth, const Universe& u);
Verdict check_self_orthogonal_classes(const SelfOrthogonalClasses& s);

}  // namespace laxfact
