#include "laxfact/pointed.hpp"

#include <algorithm>

#include "laxfact/errors.hpp"
#include "laxfact/parallel.hpp"

namespace laxfact {

namespace {

using nlohmann::json;

std::vector<ObjId> objects_of(const Universe& u) {
  std::vector<ObjId> out;
  for (std::uint32_t a = 0; a < u.objects.size(); ++a) {
    if (u.objects[a]) out.push_back(ObjId{a});
  }
  return out;
}

// Least element per (a, b), indexed a * count + b.
class Zeros {
 public:
  Zeros(const FinOrdCategory& c, const Universe& u) : c_(&c), n_(c.object_count()), zero_(n_ * n_) {
    for (ObjId a : objects_of(u)) {
      for (ObjId b : objects_of(u)) {
        const auto hom = c.hom(a, b);
        std::optional<MorId> least;
        for (MorId z : hom) {
          if (std::all_of(hom.begin(), hom.end(), [&](MorId f) { return c.leq_unchecked(z, f); })) {
            least = z;
            break;
          }
        }
        if (!least) {
          throw ContractViolation("not pointed-capable: hom(" + c.object_name(a) + ", " + c.object_name(b) +
                                  ") has no least element");
        }
        zero_[a.index * n_ + b.index] = least;
      }
    }
  }

  MorId at(ObjId a, ObjId b) const { return *zero_[a.index * n_ + b.index]; }
  bool is_zero(MorId f) const { return at(c_->dom(f), c_->cod(f)) == f; }

 private:
  const FinOrdCategory* c_;
  std::size_t n_;
  std::vector<std::optional<MorId>> zero_;
};

bool has_identities(const FinOrdCategory& c, MorId f) { return c.has_identity(c.dom(f)) && c.has_identity(c.cod(f)); }

// ∃g: id_A ≤ g∘f
bool paired_left(const FinOrdCategory& c, MorId f) {
  if (!has_identities(c, f)) return false;
  const MorId id = c.identity(c.dom(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.leq_unchecked(id, c.compose(g, f))) return true;
  }
  return false;
}

// ∃g: id_B ≤ f∘g
bool paired_right(const FinOrdCategory& c, MorId f) {
  if (!has_identities(c, f)) return false;
  const MorId id = c.identity(c.cod(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.leq_unchecked(id, c.compose(f, g))) return true;
  }
  return false;
}

// ∃g: f∘g ≤ id_B
bool below_right(const FinOrdCategory& c, MorId f) {
  if (!has_identities(c, f)) return false;
  const MorId id = c.identity(c.cod(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.leq_unchecked(c.compose(f, g), id)) return true;
  }
  return false;
}

// ∃g: g∘f ≤ id_A
bool below_left(const FinOrdCategory& c, MorId f) {
  if (!has_identities(c, f)) return false;
  const MorId id = c.identity(c.dom(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.leq_unchecked(c.compose(g, f), id)) return true;
  }
  return false;
}

// ∃g: g∘f ≤ id_A and f∘g∘f = f
bool restricted_inverse(const FinOrdCategory& c, MorId f) {
  if (!has_identities(c, f)) return false;
  const MorId id = c.identity(c.dom(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    const MorId gf = c.compose(g, f);
    if (c.leq_unchecked(gf, id) && c.compose(f, gf) == f) return true;
  }
  return false;
}

bool split_epi(const FinOrdCategory& c, MorId f) {
  if (!c.has_identity(c.cod(f))) return false;
  const MorId id = c.identity(c.cod(f));
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (c.compose(f, g) == id) return true;
  }
  return false;
}

bool dense_domain(const FinOrdCategory& c, const Universe& u, const Zeros& z, MorId f) {
  for (ObjId x : objects_of(u)) {
    for (MorId a : c.hom(x, c.dom(f))) {
      if (z.is_zero(c.compose(f, a)) && !z.is_zero(a)) return false;
    }
  }
  return true;
}

bool dense_image(const FinOrdCategory& c, const Universe& u, const Zeros& z, MorId f) {
  for (ObjId y : objects_of(u)) {
    for (MorId b : c.hom(c.cod(f), y)) {
      if (z.is_zero(c.compose(b, f)) && !z.is_zero(b)) return false;
    }
  }
  return true;
}

ClassReport parallel_class(const Universe& u, std::string name, const std::function<bool(MorId)>& pred) {
  std::vector<char> in(u.morphisms.size(), 0);
  parallel_for(u.morphisms.size(), [&](std::size_t i) { in[i] = pred(u.morphisms[i]) ? 1 : 0; });
  ClassReport r = empty_class(u, std::move(name));
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (in[i]) r.members.set(u.morphisms[i].index);
  }
  return r;
}

void compare(Verdict& v, const ClassReport& a, const ClassReport& b) {
  v.count();
  for (const auto& n : difference(a, b)) v.fail(n + " in " + a.name + " but not in " + b.name);
  for (const auto& n : difference(b, a)) v.fail(n + " in " + b.name + " but not in " + a.name);
}

void include(Verdict& v, const ClassReport& a, const ClassReport& b) {
  v.count();
  for (const auto& n : difference(a, b)) v.fail(n + " in " + a.name + " but not in " + b.name);
}

PointedClassReport pointed(std::string name, ClassReport complement, ClassReport predicate,
                           std::optional<ClassReport> expected) {
  PointedClassReport r{name, std::move(complement), std::move(predicate), std::move(expected), Verdict(name)};
  compare(r.verdict, r.complement, r.predicate);
  if (r.expected) compare(r.verdict, r.complement, *r.expected);
  r.verdict.finish();
  return r;
}

}  // namespace

ClassReport zero_class(const FinOrdCategory& c, const Universe& u) {
  const Zeros z(c, u);
  return make_class(u, "O", [&](MorId f) { return z.is_zero(f); });
}

Verdict check_zero_class(const FinOrdCategory& c, const Universe& u, const ClassReport& zero) {
  const Zeros z(c, u);
  Verdict v("zero maps");
  const auto objs = objects_of(u);
  for (MorId f : u.morphisms) {
    const MorId zf = z.at(c.dom(f), c.cod(f));
    v.count();
    if (!zero.contains(zf) || !c.leq_unchecked(zf, f)) v.fail(c.name(zf) + " is not below " + c.name(f));
    for (ObjId y : objs) {
      v.count();
      const MorId after = c.compose(z.at(c.cod(f), y), f);
      if (!z.is_zero(after)) v.fail("zero after " + c.name(f) + " gives " + c.name(after));
    }
    for (ObjId x : objs) {
      v.count();
      const MorId before = c.compose(f, z.at(x, c.dom(f)));
      if (!z.is_zero(before)) v.fail("zero before " + c.name(f) + " gives " + c.name(before));
    }
  }
  v.detail["zero_maps"] = zero.size();
  return std::move(v.finish());
}

ClassReport split_epi_class(const FinOrdCategory& c, const Universe& u) {
  return make_class(u, "LI", [&](MorId f) { return split_epi(c, f); });
}

json PointedClassReport::to_json() const {
  json j = verdict.to_json();
  j["complement"] = complement.to_json();
  j["predicate"] = predicate.to_json();
  if (expected) j["expected"] = expected->to_json();
  return j;
}

const PointedClassReport& PointedClasses::get(std::string_view name) const {
  for (const auto& c : classes) {
    if (c.name == name) return c;
  }
  throw ContractViolation("no pointed class " + std::string(name));
}

bool PointedClasses::ok() const {
  return checks.ok() && std::all_of(classes.begin(), classes.end(), [](const auto& c) { return c.verdict.ok(); });
}

json PointedClasses::to_json() const {
  json j;
  j["universe"] = zero.universe->label;
  j["zero"] = zero.to_json();
  j["checks"] = checks.to_json();
  json cls = json::object();
  for (const auto& c : classes) cls[c.name] = c.to_json();
  j["classes"] = std::move(cls);
  j["verdict"] = ok() ? "pass" : "fail";
  return j;
}

PointedClasses compute_pointed_classes(const FinOrdCategory& c, const Universe& u, const ParCategory* par) {
  const Zeros z(c, u);
  PointedClasses out{zero_class(c, u), {}, Verdict("pointed checks")};
  const Orthogonality lax(c, Kind::Lax);
  const Orthogonality oplax(c, Kind::Oplax);

  auto par_class = [&](const char* name, bool (*pred)(const PartialMap&)) -> std::optional<ClassReport> {
    if (!par) return std::nullopt;
    return make_class(u, name, [&, pred](MorId f) { return pred(par->map(f)); });
  };
  auto total_injective = [](const PartialMap& f) { return f.is_total() && f.is_injective_component(); };
  auto total = [](const PartialMap& f) { return f.is_total(); };
  auto onto = [](const PartialMap& f) { return f.is_surjective_component(); };

  ClassReport u_cls = left_complement(lax, out.zero, u);
  u_cls.name = "^⫪O";
  out.classes.push_back(pointed("U", std::move(u_cls),
                                parallel_class(u, "id ≤ f*∘f", [&](MorId f) { return paired_left(c, f); }),
                                par_class("total injective", total_injective)));
  ClassReport dd = right_complement(lax, out.zero, u);
  dd.name = "O^⫪";
  out.classes.push_back(pointed("DD", std::move(dd),
                                parallel_class(u, "f∘a = 0 ⇒ a = 0", [&](MorId f) { return dense_domain(c, u, z, f); }),
                                par_class("total", total)));
  ClassReport di = left_complement(oplax, out.zero, u);
  di.name = "^⊻O";
  out.classes.push_back(pointed("DI", std::move(di),
                                parallel_class(u, "b∘f = 0 ⇒ b = 0", [&](MorId f) { return dense_image(c, u, z, f); }),
                                par_class("surjective φ", onto)));
  ClassReport v = right_complement(oplax, out.zero, u);
  v.name = "O^⊻";
  out.classes.push_back(pointed("V", v,
                                parallel_class(u, "id ≤ f∘f_*", [&](MorId f) { return paired_right(c, f); }),
                                par_class("surjective φ", onto)));
  out.classes.push_back(pointed("LI", std::move(v), split_epi_class(c, u), par_class("surjective φ", onto)));

  out.checks.absorb(check_zero_class(c, u, out.zero));
  Verdict inc("inclusions");
  const ClassReport la =
      make_class(u, "left adjoints", [&](MorId f) { return find_adjoint_partner(c, f, Kind::Lax).has_value(); });
  const ClassReport ra =
      make_class(u, "right adjoints", [&](MorId f) { return find_adjoint_partner(c, f, Kind::Oplax).has_value(); });
  include(inc, la, out.get("U").complement);
  include(inc, ra, out.get("DI").complement);
  if (par) include(inc, *par_class("total", total), out.get("DD").complement);
  out.checks.absorb(inc.finish());
  out.checks.finish();
  return out;
}

std::string_view conjecture_name(Conjecture id) noexcept {
  switch (id) {
    case Conjecture::URightComplement:
      return "u-right-complement";
    case Conjecture::VLeftComplement:
      return "v-left-complement";
    case Conjecture::LiLeftComplement:
      return "li-left-complement";
  }
  return "";
}

std::optional<Conjecture> parse_conjecture(std::string_view s) noexcept {
  for (Conjecture id : all_conjectures()) {
    if (conjecture_name(id) == s) return id;
  }
  return std::nullopt;
}

std::vector<Conjecture> all_conjectures() {
  return {Conjecture::URightComplement, Conjecture::VLeftComplement, Conjecture::LiLeftComplement};
}

namespace {

struct Part {
  std::string verdict;
  json report;
  bool revalidated = true;
};

// Fresh check that f stays out of the complement: the witness is a square of
// the kind from or to a base member, with no filler at all.
bool recheck_witness(const FinOrdCategory& c, Kind kind, const ClassReport& base, Side side, MorId f,
                     const Square& sq) {
  if (sq.kind != kind || !is_square(c, sq) || !all_diagonals(c, sq).empty()) return false;
  return side == Side::Left ? (sq.f == f && base.contains(sq.g)) : (sq.g == f && base.contains(sq.f));
}

bool recheck_member(const FinOrdCategory& c, Kind kind, const ClassReport& base, Side side, MorId f) {
  for (MorId h : base.list()) {
    const auto bad = side == Side::Left ? first_unfillable(c, f, h, kind) : first_unfillable(c, h, f, kind);
    if (bad) return false;
  }
  return true;
}

Part compare_sides(const FinOrdCategory& c, const Universe& u, const ClassReport& lhs, const ClassReport& rhs,
                   const std::function<bool(MorId)>& recheck_lhs, const std::function<bool(MorId, json&)>& recheck_out,
                   const std::function<bool(MorId)>& rhs_pred) {
  Part p;
  p.report["lhs"] = lhs.to_json();
  p.report["rhs"] = rhs.to_json();
  p.report["lhs"].erase("excluded_witnesses");
  const bool equal = same_members(lhs, rhs);
  if (equal) {
    const bool trivial = lhs.size() == 0 || lhs.size() == u.morphisms.size();
    p.verdict = trivial ? "degenerate-match" : "match";
    p.report["verdict"] = p.verdict;
    return p;
  }
  p.verdict = "counterexample";
  json cx = json::array();
  for (const auto& n : difference(rhs, lhs)) {
    const MorId f = *c.find(n);
    json e{{"morphism", n}, {"in", rhs.name}, {"not_in", lhs.name}};
    const bool ok = !recheck_lhs(f) && recheck_out(f, e) && rhs_pred(f);
    e["revalidated"] = ok;
    p.revalidated = p.revalidated && ok;
    cx.push_back(std::move(e));
  }
  for (const auto& n : difference(lhs, rhs)) {
    const MorId f = *c.find(n);
    json e{{"morphism", n}, {"in", lhs.name}, {"not_in", rhs.name}};
    const bool ok = recheck_lhs(f) && !rhs_pred(f);
    e["revalidated"] = ok;
    p.revalidated = p.revalidated && ok;
    cx.push_back(std::move(e));
  }
  p.report["verdict"] = p.verdict;
  p.report["counterexamples"] = std::move(cx);
  return p;
}

}  // namespace

ConjectureResult run_conjecture(const FinOrdCategory& c, const Universe& u, Conjecture id) {
  const ClassReport zero = zero_class(c, u);
  const Kind kind = id == Conjecture::URightComplement ? Kind::Lax : Kind::Oplax;
  const Orthogonality orth(c, kind);

  ClassReport base;
  ClassReport lhs;
  ClassReport rhs;
  std::function<bool(MorId)> rhs_pred;
  std::string statement;
  const Side side = id == Conjecture::URightComplement ? Side::Right : Side::Left;
  switch (id) {
    case Conjecture::URightComplement:
      base = left_complement(orth, zero, u);
      base.name = "U";
      lhs = right_complement(orth, base, u);
      lhs.name = "U^⫪";
      rhs_pred = [&](MorId f) { return below_right(c, f); };
      rhs = make_class(u, "f∘f* ≤ id", rhs_pred);
      statement = "U^⫪ = {f | f∘f* ≤ id for some f*}, U^⫪ ∩ U = left adjoints";
      break;
    case Conjecture::VLeftComplement:
      base = right_complement(orth, zero, u);
      base.name = "V";
      lhs = left_complement(orth, base, u);
      lhs.name = "^⊻V";
      rhs_pred = [&](MorId f) { return below_left(c, f); };
      rhs = make_class(u, "f_*∘f ≤ id", rhs_pred);
      statement = "^⊻V = {f | f_*∘f ≤ id for some f_*}, ^⊻V ∩ V = right adjoints";
      break;
    case Conjecture::LiLeftComplement:
      base = split_epi_class(c, u);
      lhs = left_complement(orth, base, u);
      lhs.name = "^⊻LI";
      rhs_pred = [&](MorId f) { return restricted_inverse(c, f); };
      rhs = make_class(u, "S̄", rhs_pred);
      statement = "^⊻LI = S̄ = {f | g∘f ≤ id and f∘g∘f = f for some g}, ^⊻LI ∩ LI = right adjoints";
      break;
  }

  auto recheck_lhs = [&](MorId f) { return recheck_member(c, kind, base, side, f); };
  auto recheck_out = [&](MorId f, json& e) {
    const auto it = lhs.witnesses.find(f.index);
    if (it == lhs.witnesses.end()) return false;
    e["square"] = square_json(c, it->second);
    return recheck_witness(c, kind, base, side, f, it->second);
  };
  Part main = compare_sides(c, u, lhs, rhs, recheck_lhs, recheck_out, rhs_pred);

  const Kind adj_kind = id == Conjecture::URightComplement ? Kind::Lax : Kind::Oplax;
  auto adjoint = [&](MorId f) { return find_adjoint_partner(c, f, adj_kind).has_value(); };
  ClassReport meet = empty_class(u, lhs.name + " ∩ " + base.name);
  for (MorId f : u.morphisms) {
    if (lhs.contains(f) && base.contains(f)) meet.members.set(f.index);
  }
  const ClassReport adjoints = make_class(u, adj_kind == Kind::Lax ? "left adjoints" : "right adjoints", adjoint);
  auto recheck_meet = [&](MorId f) { return base.contains(f) && recheck_lhs(f); };
  auto recheck_not_meet = [&](MorId f, json& e) {
    if (!base.contains(f)) {
      e["reason"] = "not in " + base.name;
      return true;
    }
    const auto it = lhs.witnesses.find(f.index);
    if (it == lhs.witnesses.end()) return false;
    e["square"] = square_json(c, it->second);
    return recheck_witness(c, kind, base, side, f, it->second);
  };
  Part meet_part = compare_sides(c, u, meet, adjoints, recheck_meet, recheck_not_meet, adjoint);

  ConjectureResult r;
  if (main.verdict == "counterexample" || meet_part.verdict == "counterexample") {
    r.verdict = "counterexample";
  } else {
    r.verdict = main.verdict;
  }
  r.revalidated = main.revalidated && meet_part.revalidated;
  r.report["conjecture"] = std::string(conjecture_name(id));
  r.report["statement"] = statement;
  r.report["universe"] = u.label;
  r.report["discrete"] = c.is_discrete();
  r.report["base"] = base.to_json();
  r.report["base"].erase("excluded_witnesses");
  r.report["complement"] = std::move(main.report);
  r.report["intersection"] = std::move(meet_part.report);
  r.report["verdict"] = r.verdict;
  r.report["revalidated"] = r.revalidated;
  return r;
}

}  // namespace laxfact
