#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "laxfact/ortho.hpp"
#include "laxfact/parmap.hpp"
#include "laxfact/verdict.hpp"

namespace laxfact {

// Kind relation on parallel partial maps: lax ⪯, oplax ⪰, strict =.
bool map_rel(Kind kind, const PartialMap& a, const PartialMap& b);

// A square (u, v): f → g of partial maps.
struct MapSquare {
  PartialMap f, g, u, v;
};

bool map_is_square(Kind kind, const MapSquare& s);
bool map_is_filler(Kind kind, const MapSquare& s, const PartialMap& d);
std::optional<PartialMap> map_find_filler(Kind kind, const MapSquare& s);
std::vector<PartialMap> map_all_fillers(Kind kind, const MapSquare& s);
// (u', v')∘(u, v)
MapSquare compose_squares(const MapSquare& second, const MapSquare& first);

struct Factorisation {
  PartialMap l, r;  // f = r∘l through a middle set of size l.cod_size()
  std::uint32_t mid() const noexcept { return l.cod_size(); }
};

// f ↦ (Lf, Kf, Rf) with an action K on squares of the scheme's kind.
class FactorisationScheme {
 public:
  virtual ~FactorisationScheme() = default;

  virtual std::string name() const = 0;
  virtual Kind kind() const = 0;
  virtual Factorisation factor(const PartialMap& f) const = 0;
  // K(u, v): Kf → Kg for a square (u, v): f → g.
  virtual PartialMap kmap(const MapSquare& s) const = 0;
  // Upper bound on Kf for f: m ⇀ n.
  virtual std::uint32_t mid_bound(std::uint32_t m, std::uint32_t n) const = 0;

  // (Lf, id): f → Rf and (id, Rf): Lf → f.
  MapSquare eta(const PartialMap& f) const;
  MapSquare epsilon(const PartialMap& f) const;
  // L(u, v) = (u, K): Lf → Lg and R(u, v) = (K, v): Rf → Rg.
  MapSquare lmap(const MapSquare& s) const;
  MapSquare rmap(const MapSquare& s) const;
};

using SchemePtr = std::shared_ptr<const FactorisationScheme>;

// Lf partial identity onto D_f, Rf = φ_f total. Lax.
SchemePtr domain_total_scheme();
// Lf = f, Rf = id, K(u, v) = v.
SchemePtr trivial_left_scheme(Kind kind = Kind::Lax);
// Lf = id, Rf = f, K(u, v) = u.
SchemePtr trivial_right_scheme(Kind kind = Kind::Lax);

// (E, M) factorisation of total maps of finite sets.
struct BaseFactoriser {
  std::string name;
  std::string e_name, m_name;
  std::function<bool(const PartialMap&)> in_e;  // on total maps
  std::function<bool(const PartialMap&)> in_m;
  std::function<Factorisation(const PartialMap&)> factor;  // total φ ↦ (e, m)
};

BaseFactoriser image_factoriser();      // (surjections, injections)
BaseFactoriser coproduct_factoriser();  // (injections, surjections) through D ⊔ B

// Pullbacks of E-maps along injections between sets of size ≤ n stay in E.
Verdict check_stability(const BaseFactoriser& base, std::uint32_t n);

enum class TransferBase { EpiMono, MonoEpi };
// ē_f = (σ_f, e_φ), m̄_f = (id, m_φ). Oplax. Throws ContractViolation when the
// stability pre-check fails within size n.
SchemePtr transfer_scheme(TransferBase base, std::uint32_t n);
BaseFactoriser transfer_base(TransferBase base);

// Ē = {f | φ_f ∈ E}, M̄ = {f | f total, φ_f ∈ M}.
bool in_transfer_left(TransferBase base, const PartialMap& f);
bool in_transfer_right(TransferBase base, const PartialMap& f);

// Replaces the factorisation of one map by (zero, r) so the section law breaks there.
SchemePtr corrupted_scheme(SchemePtr base, PartialMap target);

// Looks up the scheme by its CLI name.
SchemePtr scheme_by_name(const std::string& name, std::uint32_t n);
std::vector<std::string> scheme_names();

// Ambient size needed so that `depth` iterated factorisations of universe maps
// stay inside the skeleton.
std::uint32_t ambient_size(const FactorisationScheme& s, std::uint32_t n, int depth);

// A scheme with its universe Par≤n inside an ambient Par large enough for the
// requested depth. ResourceError when the ambient would pass the hard cap.
class SchemeWorkbench {
 public:
  SchemeWorkbench(SchemePtr scheme, std::uint32_t n, int depth);

  const FactorisationScheme& scheme() const noexcept { return *scheme_; }
  SchemePtr scheme_ptr() const noexcept { return scheme_; }
  Kind kind() const noexcept { return scheme_->kind(); }
  const ParCategory& par() const noexcept { return *par_; }
  const FinOrdCategory& category() const noexcept { return par_->category(); }
  const Universe& universe() const noexcept { return universe_; }
  const Orthogonality& orth() const noexcept { return *orth_; }
  std::uint32_t size() const noexcept { return n_; }
  int depth() const noexcept { return depth_; }

  // Universe maps in ambient order.
  const std::vector<PartialMap>& maps() const noexcept { return maps_; }
  // Throws ResourceError when the map lies past the ambient.
  MorId id(const PartialMap& f) const;
  bool orthogonal(const PartialMap& f, const PartialMap& g) const;
  std::optional<Square> failure(const PartialMap& f, const PartialMap& g) const;
  // Every square of the scheme's kind between universe maps, u outer, v inner.
  std::vector<MapSquare> squares(const PartialMap& f, const PartialMap& g) const;
  void require_depth(int d, const char* what) const;

 private:
  SchemePtr scheme_;
  std::uint32_t n_;
  int depth_;
  std::shared_ptr<const ParCategory> par_;
  Universe universe_;
  std::unique_ptr<Orthogonality> orth_;
  std::vector<PartialMap> maps_;
};

Verdict check_section(const SchemeWorkbench& w);
Verdict check_klaws(const SchemeWorkbench& w);

std::optional<PartialMap> find_rho(const FactorisationScheme& s, const PartialMap& f);
std::optional<PartialMap> find_lambda(const FactorisationScheme& s, const PartialMap& f);
std::vector<PartialMap> all_rho(const FactorisationScheme& s, const PartialMap& f);
std::vector<PartialMap> all_lambda(const FactorisationScheme& s, const PartialMap& f);

// Lf ⫪ RLf and LRf ⫪ Rf, compared with existence of ρ_{Lf} and λ_{Rf}.
Verdict check_predistributive(const SchemeWorkbench& w);

struct DerivedClasses {
  ClassReport left;   // L_F = {f | f ⫪ Rf}
  ClassReport right;  // R_F = {f | Lf ⫪ f}
};
DerivedClasses derive_classes(const SchemeWorkbench& w);

// Derived classes form an LWFS, and Δ = λ_g∘K(u,v)∘ρ_f fills every square
// from L_F to R_F. With all_fillers every choice of ρ_f and λ_g is tried.
Verdict check_underlying_lwfs(const SchemeWorkbench& w, const DerivedClasses& classes, bool all_fillers = false);

struct FactorisationPair {
  Factorisation product;    // through D_f × B
  Factorisation coproduct;  // through D_f ⊔ B
};
// ContractViolation for the zero map.
FactorisationPair non_uniqueness_witness(const PartialMap& f);
Verdict check_non_uniqueness(std::uint32_t n);

// section, klaws, predistributive, classes, lwfs in one JSON object.
nlohmann::json scheme_report(const SchemeWorkbench& w, bool all_fillers, bool& ok);

}  // namespace laxfact
