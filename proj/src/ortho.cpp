#include "laxfact/ortho.hpp"

#include <algorithm>

#include "laxfact/errors.hpp"
#include "laxfact/parallel.hpp"

namespace laxfact {

std::string_view kind_name(Kind k) noexcept {
  switch (k) {
    case Kind::Strict:
      return "strict";
    case Kind::Lax:
      return "lax";
    case Kind::Oplax:
      return "oplax";
  }
  return "?";
}

std::optional<Kind> parse_kind(std::string_view s) noexcept {
  if (s == "strict" || s == "commutative") return Kind::Strict;
  if (s == "lax") return Kind::Lax;
  if (s == "oplax") return Kind::Oplax;
  return std::nullopt;
}

Kind dual(Kind k) noexcept {
  switch (k) {
    case Kind::Lax:
      return Kind::Oplax;
    case Kind::Oplax:
      return Kind::Lax;
    default:
      return k;
  }
}

namespace {

// kind relation between two members of one hom-set, by local index
bool rel_local(const FinOrdCategory& c, Kind kind, std::span<const MorId> hom, std::size_t a, std::size_t b) {
  switch (kind) {
    case Kind::Lax:
      return c.leq_unchecked(hom[a], hom[b]);
    case Kind::Oplax:
      return c.leq_unchecked(hom[b], hom[a]);
    case Kind::Strict:
      return a == b;
  }
  return false;
}

void require_square_shape(const FinOrdCategory& c, const Square& s) {
  if (c.dom(s.u) != c.dom(s.f) || c.cod(s.u) != c.dom(s.g) || c.dom(s.v) != c.cod(s.f) ||
      c.cod(s.v) != c.cod(s.g)) {
    throw ContractViolation("square shape mismatch: " + square_text(c, s));
  }
}

}  // namespace

bool kind_leq(const FinOrdCategory& c, Kind kind, MorId a, MorId b) {
  switch (kind) {
    case Kind::Lax:
      return c.leq(a, b);
    case Kind::Oplax:
      return c.leq(b, a);
    case Kind::Strict:
      if (!c.parallel(a, b)) throw ContractViolation("comparing non-parallel morphisms");
      return a == b;
  }
  return false;
}

bool is_square(const FinOrdCategory& c, const Square& s) {
  require_square_shape(c, s);
  return kind_leq(c, s.kind, c.compose(s.g, s.u), c.compose(s.v, s.f));
}

bool is_filler(const FinOrdCategory& c, const Square& s, MorId d) {
  require_square_shape(c, s);
  if (c.dom(d) != c.cod(s.f) || c.cod(d) != c.dom(s.g)) {
    throw ContractViolation("diagonal " + c.name(d) + " has the wrong type");
  }
  return kind_leq(c, s.kind, s.u, c.compose(d, s.f)) && kind_leq(c, s.kind, c.compose(s.g, d), s.v);
}

std::optional<MorId> find_diagonal(const FinOrdCategory& c, const Square& s) {
  for (MorId d : c.hom(c.cod(s.f), c.dom(s.g))) {
    if (is_filler(c, s, d)) return d;
  }
  return std::nullopt;
}

std::vector<MorId> all_diagonals(const FinOrdCategory& c, const Square& s) {
  std::vector<MorId> out;
  for (MorId d : c.hom(c.cod(s.f), c.dom(s.g))) {
    if (is_filler(c, s, d)) out.push_back(d);
  }
  return out;
}

std::vector<Square> all_squares(const FinOrdCategory& c, MorId f, MorId g, Kind kind) {
  std::vector<Square> out;
  for (MorId u : c.hom(c.dom(f), c.dom(g))) {
    const MorId gu = c.compose(g, u);
    for (MorId v : c.hom(c.cod(f), c.cod(g))) {
      if (kind_leq(c, kind, gu, c.compose(v, f))) out.push_back(Square{f, g, u, v, kind});
    }
  }
  return out;
}

std::optional<Square> first_unfillable(const FinOrdCategory& c, MorId f, MorId g, Kind kind) {
  const ObjId a = c.dom(f), b = c.cod(f), x = c.dom(g), y = c.cod(g);
  const auto hom_u = c.hom(a, x);
  const auto hom_v = c.hom(b, y);
  const auto hom_d = c.hom(b, x);
  const auto hom_ay = c.hom(a, y);
  if (hom_u.empty() || hom_v.empty()) return std::nullopt;

  std::vector<std::size_t> gu(hom_u.size()), vf(hom_v.size());
  for (std::size_t i = 0; i < hom_u.size(); ++i) gu[i] = c.local_index(c.compose(g, hom_u[i]));
  for (std::size_t j = 0; j < hom_v.size(); ++j) vf[j] = c.local_index(c.compose(hom_v[j], f));

  std::vector<std::size_t> df(hom_d.size()), gd(hom_d.size());
  for (std::size_t k = 0; k < hom_d.size(); ++k) {
    df[k] = c.local_index(c.compose(hom_d[k], f));
    gd[k] = c.local_index(c.compose(g, hom_d[k]));
  }
  // mask_u[i]: diagonals meeting the upper triangle for u_i; mask_v[j]: the lower one for v_j
  std::vector<Bits> mask_u(hom_u.size(), Bits(hom_d.size()));
  std::vector<Bits> mask_v(hom_v.size(), Bits(hom_d.size()));
  for (std::size_t k = 0; k < hom_d.size(); ++k) {
    for (std::size_t i = 0; i < hom_u.size(); ++i) {
      if (rel_local(c, kind, hom_u, i, df[k])) mask_u[i].set(k);
    }
    for (std::size_t j = 0; j < hom_v.size(); ++j) {
      if (rel_local(c, kind, hom_v, gd[k], j)) mask_v[j].set(k);
    }
  }
  for (std::size_t i = 0; i < hom_u.size(); ++i) {
    for (std::size_t j = 0; j < hom_v.size(); ++j) {
      if (!rel_local(c, kind, hom_ay, gu[i], vf[j])) continue;
      if (!mask_u[i].intersects(mask_v[j])) return Square{f, g, hom_u[i], hom_v[j], kind};
    }
  }
  return std::nullopt;
}

nlohmann::json square_json(const FinOrdCategory& c, const Square& s) {
  return {{"f", c.name(s.f)}, {"g", c.name(s.g)}, {"u", c.name(s.u)}, {"v", c.name(s.v)},
          {"kind", std::string(kind_name(s.kind))}};
}

std::string square_text(const FinOrdCategory& c, const Square& s) {
  return std::string(kind_name(s.kind)) + " square (" + c.name(s.u) + ", " + c.name(s.v) + "): " + c.name(s.f) +
         " -> " + c.name(s.g);
}

std::optional<Square> Orthogonality::failure(MorId f, MorId g) const {
  const std::uint64_t key = (std::uint64_t{f.index} << 32) | g.index;
  {
    std::lock_guard lock(mu_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  auto result = first_unfillable(*cat_, f, g, kind_);
  std::lock_guard lock(mu_);
  memo_.emplace(key, result);
  return result;
}

Universe whole_universe(const FinOrdCategory& c, std::string label) {
  return object_universe(c, [](ObjId) { return true; }, std::move(label));
}

Universe object_universe(const FinOrdCategory& c, const std::function<bool(ObjId)>& keep, std::string label) {
  Universe u;
  u.cat = &c;
  u.label = std::move(label);
  u.objects.resize(c.object_count());
  for (std::uint32_t a = 0; a < c.object_count(); ++a) u.objects[a] = keep(ObjId{a});
  for (std::uint32_t i = 0; i < c.morphism_count(); ++i) {
    if (u.contains(MorId{i})) u.morphisms.push_back(MorId{i});
  }
  return u;
}

bool ClassReport::admits(MorId f) const {
  if (universe->contains(f)) return contains(f);
  return outside ? outside(f) : false;
}

std::vector<MorId> ClassReport::list() const {
  std::vector<MorId> out;
  members.for_each([&](std::size_t i) { out.push_back(MorId{static_cast<std::uint32_t>(i)}); });
  return out;
}

std::vector<std::string> ClassReport::names() const {
  std::vector<std::string> out;
  for (MorId f : list()) out.push_back(universe->cat->name(f));
  return out;
}

nlohmann::json ClassReport::to_json() const {
  nlohmann::json j;
  j["name"] = name;
  j["universe"] = universe->label;
  j["size"] = size();
  j["members"] = names();
  if (!witnesses.empty()) {
    nlohmann::json w = nlohmann::json::object();
    for (const auto& [idx, sq] : witnesses) w[universe->cat->name(MorId{idx})] = square_json(*universe->cat, sq);
    j["excluded_witnesses"] = std::move(w);
  }
  return j;
}

ClassReport make_class(const Universe& u, std::string name, const std::function<bool(MorId)>& pred) {
  ClassReport r = empty_class(u, std::move(name));
  for (MorId f : u.morphisms) {
    if (pred(f)) r.members.set(f.index);
  }
  r.outside = pred;
  return r;
}

ClassReport empty_class(const Universe& u, std::string name) {
  ClassReport r;
  r.name = std::move(name);
  r.universe = &u;
  r.members = Bits(u.cat->morphism_count());
  return r;
}

ClassReport all_class(const Universe& u, std::string name) {
  return make_class(u, std::move(name), [](MorId) { return true; });
}

bool same_members(const ClassReport& a, const ClassReport& b) noexcept { return a.members == b.members; }

bool is_subclass(const ClassReport& a, const ClassReport& b) noexcept { return a.members.is_subset_of(b.members); }

std::vector<std::string> difference(const ClassReport& a, const ClassReport& b) {
  std::vector<std::string> out;
  for (MorId f : a.list()) {
    if (!b.contains(f)) out.push_back(a.universe->cat->name(f));
  }
  return out;
}

namespace {

ClassReport complement(const Orthogonality& orth, const ClassReport& h, const Universe& u, Side side) {
  const FinOrdCategory& c = orth.category();
  for (MorId x : h.list()) {
    if (!u.contains(x)) throw ContractViolation("class member " + c.name(x) + " lies outside " + u.label);
  }
  const std::vector<MorId> hs = h.list();
  std::vector<std::optional<Square>> slot(u.morphisms.size());
  parallel_for(u.morphisms.size(), [&](std::size_t i) {
    const MorId f = u.morphisms[i];
    for (MorId x : hs) {
      auto w = side == Side::Left ? orth.failure(f, x) : orth.failure(x, f);
      if (w) {
        slot[i] = w;
        return;
      }
    }
  });
  const std::string arrow = orth.kind() == Kind::Lax ? "⫪" : orth.kind() == Kind::Oplax ? "⊻" : "⧄";
  ClassReport r = empty_class(u, side == Side::Left ? "^" + arrow + "(" + h.name + ")" : "(" + h.name + ")^" + arrow);
  for (std::size_t i = 0; i < u.morphisms.size(); ++i) {
    if (slot[i]) {
      r.witnesses.emplace(u.morphisms[i].index, *slot[i]);
    } else {
      r.members.set(u.morphisms[i].index);
    }
  }
  return r;
}

}  // namespace

ClassReport left_complement(const Orthogonality& orth, const ClassReport& h, const Universe& u) {
  return complement(orth, h, u, Side::Left);
}

ClassReport right_complement(const Orthogonality& orth, const ClassReport& h, const Universe& u) {
  return complement(orth, h, u, Side::Right);
}

Verdict check_prefactorisation(const Orthogonality& orth, const ClassReport& l, const ClassReport& r,
                               const Universe& u) {
  Verdict v("prefactorisation");
  const ClassReport r_of_l = right_complement(orth, l, u);
  const ClassReport l_of_r = left_complement(orth, r, u);
  v.count(2);
  for (const auto& n : difference(r_of_l, r)) v.fail(n + " is in " + r_of_l.name + " but not in " + r.name);
  for (const auto& n : difference(r, r_of_l)) {
    const MorId f = *orth.category().find(n);
    v.fail(n + " is in " + r.name + " but fails " + square_text(orth.category(), r_of_l.witnesses.at(f.index)));
  }
  for (const auto& n : difference(l_of_r, l)) v.fail(n + " is in " + l_of_r.name + " but not in " + l.name);
  for (const auto& n : difference(l, l_of_r)) {
    const MorId f = *orth.category().find(n);
    v.fail(n + " is in " + l.name + " but fails " + square_text(orth.category(), l_of_r.witnesses.at(f.index)));
  }
  v.detail["universe"] = u.label;
  v.detail["kind"] = std::string(kind_name(orth.kind()));
  return std::move(v.finish());
}

std::pair<ClassReport, ClassReport> build_prefactorisation(const Orthogonality& orth, const ClassReport& h, Side side,
                                                           const Universe& u) {
  if (side == Side::Left) {
    ClassReport r = right_complement(orth, h, u);
    ClassReport l = left_complement(orth, r, u);
    return {std::move(l), std::move(r)};
  }
  ClassReport l = left_complement(orth, h, u);
  ClassReport r = right_complement(orth, l, u);
  return {std::move(l), std::move(r)};
}

Verdict check_lwfs(const Orthogonality& orth, const ClassReport& l, const ClassReport& r, const Universe& u,
                   const FactorHint& hint) {
  const FinOrdCategory& c = orth.category();
  Verdict v("lwfs");
  v.absorb(check_prefactorisation(orth, l, r, u));

  struct Found {
    MorId l, r;
  };
  std::vector<std::optional<Found>> slot(u.morphisms.size());
  parallel_for(u.morphisms.size(), [&](std::size_t i) {
    const MorId f = u.morphisms[i];
    if (hint) {
      if (auto p = hint(f)) {
        if (c.cod(p->first) == c.dom(p->second) && c.compose(p->second, p->first) == f && l.admits(p->first) &&
            r.admits(p->second)) {
          slot[i] = Found{p->first, p->second};
          return;
        }
      }
    }
    for (std::uint32_t xi = 0; xi < c.object_count(); ++xi) {
      const ObjId x{xi};
      for (MorId left : c.hom(c.dom(f), x)) {
        if (!l.admits(left)) continue;
        for (MorId right : c.hom(x, c.cod(f))) {
          if (r.admits(right) && c.compose(right, left) == f) {
            slot[i] = Found{left, right};
            return;
          }
        }
      }
    }
  });
  nlohmann::json witnesses = nlohmann::json::object();
  for (std::size_t i = 0; i < slot.size(); ++i) {
    v.count();
    const MorId f = u.morphisms[i];
    if (slot[i]) {
      witnesses[c.name(f)] = {{"l", c.name(slot[i]->l)}, {"r", c.name(slot[i]->r)},
                              {"mid", c.object_name(c.cod(slot[i]->l))}};
    } else {
      v.fail("no factorisation of " + c.name(f) + " through " + l.name + " then " + r.name);
    }
  }
  v.detail["universe"] = u.label;
  v.detail["factorisations"] = std::move(witnesses);
  return std::move(v.finish());
}

std::optional<MorId> find_adjoint_partner(const FinOrdCategory& c, MorId f, Kind kind) {
  const ObjId a = c.dom(f), b = c.cod(f);
  if (!c.has_identity(a) || !c.has_identity(b)) return std::nullopt;
  for (MorId g : c.hom(b, a)) {
    if (kind_leq(c, kind, c.identity(a), c.compose(g, f)) && kind_leq(c, kind, c.compose(f, g), c.identity(b))) {
      return g;
    }
  }
  return std::nullopt;
}

SelfOrthogonalClasses self_orthogonal_classes(const Orthogonality& orth, const Universe& u) {
  const FinOrdCategory& c = orth.category();
  const std::string k(kind_name(orth.kind()));
  ClassReport all = all_class(u);
  ClassReport self = make_class(u, "self-orthogonal (" + k + ")", [&](MorId f) { return orth(f, f); });
  ClassReport adjoint = make_class(u, "adjoint partner (" + k + ")",
                                   [&](MorId f) { return find_adjoint_partner(c, f, orth.kind()).has_value(); });
  ClassReport left_all = left_complement(orth, all, u);
  ClassReport right_all = right_complement(orth, all, u);
  left_all.name = "orthogonal to all (" + k + ")";
  right_all.name = "all orthogonal to (" + k + ")";
  self.outside = nullptr;
  adjoint.outside = nullptr;
  return {std::move(self), std::move(adjoint), std::move(left_all), std::move(right_all)};
}

Verdict check_self_orthogonal_classes(const SelfOrthogonalClasses& s) {
  Verdict v("self-orthogonal classes agree");
  const ClassReport* others[] = {&s.adjoint, &s.left_all, &s.right_all};
  for (const ClassReport* o : others) {
    v.count();
    for (const auto& n : difference(s.self, *o)) v.fail(n + " in " + s.self.name + ", not in " + o->name);
    for (const auto& n : difference(*o, s.self)) v.fail(n + " in " + o->name + ", not in " + s.self.name);
  }
  v.detail["size"] = s.self.size();
  v.detail["members"] = s.self.names();
  return std::move(v.finish());
}

}  // namespace laxfact
