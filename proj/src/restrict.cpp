#include "laxfact/restrict.hpp"

#include "laxfact/errors.hpp"
#include "laxfact/parallel.hpp"
#include "slotlog.hpp"

namespace laxfact {

namespace {

using detail::SlotLog;
using detail::fold;
using nlohmann::json;

bool injective_total(const PartialMap& f) { return f.is_total() && f.is_injective_component(); }
bool surjective_total(const PartialMap& f) { return f.is_total() && f.is_surjective_component(); }
bool bijective_total(const PartialMap& f) { return injective_total(f) && surjective_total(f); }
bool any_total(const PartialMap& f) { return f.is_total(); }

std::string match_name(const TotalCategory& t, const ClassReport& c) {
  static const std::pair<const char*, bool (*)(const PartialMap&)> kNamed[] = {
      {"bijective totals", bijective_total},
      {"injective totals", injective_total},
      {"surjective totals", surjective_total},
      {"all totals", any_total},
  };
  for (const auto& [name, pred] : kNamed) {
    bool same = true;
    for (MorId f : t.universe().morphisms) {
      if (c.contains(f) != pred(t.map(f))) {
        same = false;
        break;
      }
    }
    if (same) return name;
  }
  return c.size() == 0 ? "empty" : "other";
}

}  // namespace

TotalCategory::TotalCategory(std::uint32_t ambient, std::uint32_t n) : cat_(build(ambient)) {
  universe_ = object_universe(
      cat_, [n](ObjId a) { return a.index <= n; }, "Tot≤" + std::to_string(n));
}

FinOrdCategory TotalCategory::build(std::uint32_t ambient) {
  if (ambient > ParCategory::kHardCap) {
    throw ResourceError("total category past Par≤" + std::to_string(ParCategory::kHardCap));
  }
  CategoryData shape;
  for (std::uint32_t a = 0; a <= ambient; ++a) {
    shape.objects.push_back(std::to_string(a));
    shape.identities.emplace_back();
  }
  for (std::uint32_t m = 0; m <= ambient; ++m) {
    for (std::uint32_t k = 0; k <= ambient; ++k) {
      for (auto& f : enumerate_partial_maps(m, k)) {
        if (!f.is_total()) continue;
        const auto id = static_cast<std::uint32_t>(maps_.size());
        if (m == k && f == PartialMap::identity(m)) shape.identities[m] = id;
        shape.morphisms.push_back({par_morphism_name(f), m, k});
        index_.emplace(f, MorId{id});
        maps_.push_back(std::move(f));
      }
    }
  }
  return FinOrdCategory::from_functions(
      shape, [&](MorId g, MorId f) { return index_.at(compose_partial(maps_[g.index], maps_[f.index])); },
      [](MorId f, MorId g) { return f == g; });
}

std::optional<MorId> TotalCategory::find(const PartialMap& f) const {
  if (auto it = index_.find(f); it != index_.end()) return it->second;
  return std::nullopt;
}

Factorisation totalise_factorisation(const PartialMap& f, const PartialMap& l, const PartialMap& r) {
  if (!f.is_total()) throw ContractViolation(f.to_string() + " is not total");
  if (l.cod_size() != r.dom_size() || !(compose_partial(r, l) == f)) {
    throw ContractViolation("r∘l differs from " + f.to_string());
  }
  const auto dr = r.domain();
  const auto k = static_cast<std::uint32_t>(dr.size());
  std::vector<std::int32_t> nu(r.dom_size(), PartialMap::kUndefined);
  std::vector<std::int32_t> mu(k);
  for (std::uint32_t i = 0; i < k; ++i) {
    nu[dr[i]] = static_cast<std::int32_t>(i);
    mu[i] = static_cast<std::int32_t>(dr[i]);
  }
  const PartialMap nu_map(r.dom_size(), k, std::move(nu));
  const PartialMap mu_map(k, r.dom_size(), std::move(mu));
  return {compose_partial(nu_map, l), compose_partial(r, mu_map)};
}

bool restriction_applies(const SchemeWorkbench& w, std::string* why) {
  if (w.kind() != Kind::Lax) return true;
  for (const auto& f : w.maps()) {
    if (w.scheme().factor(f).l.domain() != f.domain()) {
      if (why) *why = "not applicable (lax case): D_{Lf} differs from D_f at " + f.to_string();
      return false;
    }
  }
  return true;
}

RestrictedClasses total_classes(const TotalCategory& t, const SchemeWorkbench& w, const DerivedClasses& classes) {
  const Universe& u = t.universe();
  auto pick = [&](const ClassReport& c, std::string name) {
    return make_class(u, std::move(name), [&](MorId f) {
      const auto m = w.par().find(t.map(f));
      return m && c.contains(*m);
    });
  };
  RestrictedClasses rc{pick(classes.left, "L_F ∩ Tot"), pick(classes.right, "R_F ∩ Tot"), {}, {}};
  rc.left.outside = nullptr;
  rc.right.outside = nullptr;
  rc.left_match = match_name(t, rc.left);
  rc.right_match = match_name(t, rc.right);
  return rc;
}

Verdict check_total_fillers(const TotalCategory& t, const SchemeWorkbench& w, const RestrictedClasses& rc) {
  const Kind k = w.kind();
  const auto ls = rc.left.list();
  const auto rs = rc.right.list();
  std::vector<SlotLog> logs(ls.size() * rs.size());
  std::vector<std::size_t> fillers(logs.size(), 0);
  parallel_for(logs.size(), [&](std::size_t p) {
    const PartialMap& f = t.map(ls[p / rs.size()]);
    const PartialMap& g = t.map(rs[p % rs.size()]);
    auto& log = logs[p];
    for (const auto& u : enumerate_partial_maps(f.dom_size(), g.dom_size())) {
      if (!u.is_total()) continue;
      const PartialMap gu = compose_partial(g, u);
      for (const auto& v : enumerate_partial_maps(f.cod_size(), g.cod_size())) {
        if (!v.is_total() || !(compose_partial(v, f) == gu)) continue;
        const MapSquare sq{f, g, u, v};
        const auto ds = map_all_fillers(k, sq);
        ++log.checked;
        fillers[p] += ds.size();
        const std::string at = "(" + u.to_string() + ", " + v.to_string() + "): " + f.to_string() + " -> " +
                               g.to_string();
        if (ds.empty()) log.fail("no filler for " + at);
        for (const auto& d : ds) {
          if (!d.is_total()) log.fail("partial filler " + d.to_string() + " for " + at);
          if (!(compose_partial(g, d) == v)) log.fail("lower triangle of " + d.to_string() + " fails for " + at);
          if (!(compose_partial(d, f) == u)) log.fail("upper triangle of " + d.to_string() + " fails for " + at);
        }
      }
    }
  });
  Verdict v("total fillers");
  fold(v, logs);
  std::size_t n = 0;
  for (auto x : fillers) n += x;
  v.detail["fillers"] = n;
  v.detail["kind"] = std::string(kind_name(k));
  return std::move(v.finish());
}

Verdict check_totalise(const SchemeWorkbench& w) {
  const auto& maps = w.maps();
  std::vector<SlotLog> logs(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) {
    const PartialMap& f = maps[i];
    if (!f.is_total()) return;
    auto& log = logs[i];
    const Factorisation fz = w.scheme().factor(f);
    const Factorisation tz = totalise_factorisation(f, fz.l, fz.r);
    ++log.checked;
    if (!tz.l.is_total() || !tz.r.is_total()) log.fail(f.to_string() + ": totalised parts are not total");
    if (!(compose_partial(tz.r, tz.l) == f)) log.fail(f.to_string() + ": r̄∘l̄ differs");
    const Factorisation again = totalise_factorisation(f, tz.l, tz.r);
    if (!(again.l == tz.l) || !(again.r == tz.r)) log.fail(f.to_string() + ": not idempotent");
  });
  Verdict v("totalise");
  fold(v, logs);
  return std::move(v.finish());
}

Verdict check_restricted_wfs(const TotalCategory& t, const SchemeWorkbench& w, const RestrictedClasses& rc) {
  const Orthogonality strict(t.category(), Kind::Strict);
  ClassReport left = rc.left;
  ClassReport right = rc.right;
  const auto ls = rc.left.list();
  const auto rs = rc.right.list();
  left.outside = [&](MorId m) {
    for (MorId r : rs) {
      if (!strict(m, r)) return false;
    }
    return true;
  };
  right.outside = [&](MorId m) {
    for (MorId l : ls) {
      if (!strict(l, m)) return false;
    }
    return true;
  };
  FactorHint hint = [&](MorId f) -> std::optional<std::pair<MorId, MorId>> {
    const PartialMap& m = t.map(f);
    const Factorisation fz = w.scheme().factor(m);
    const Factorisation tz = totalise_factorisation(m, fz.l, fz.r);
    const auto l = t.find(tz.l);
    const auto r = t.find(tz.r);
    if (!l || !r) return std::nullopt;
    return std::make_pair(*l, *r);
  };
  Verdict v = check_lwfs(strict, left, right, t.universe(), hint);
  v.name = "restricted wfs";
  return v;
}

json restrict_report(const SchemeWorkbench& w, bool& ok) {
  json j;
  j["scheme"] = w.scheme().name();
  j["kind"] = std::string(kind_name(w.kind()));
  j["universe"] = w.universe().label;
  ok = true;
  std::string why;
  if (!restriction_applies(w, &why)) {
    j["verdict"] = "not-applicable";
    j["reason"] = why;
    return j;
  }
  try {
    const DerivedClasses classes = derive_classes(w);
    const TotalCategory t(w.par().max_size(), w.size());
    const RestrictedClasses rc = total_classes(t, w, classes);
    j["classes"] = {{"left", {{"match", rc.left_match}, {"members", rc.left.names()}}},
                    {"right", {{"match", rc.right_match}, {"members", rc.right.names()}}}};
    for (const Verdict& v : {check_total_fillers(t, w, rc), check_totalise(w), check_restricted_wfs(t, w, rc)}) {
      ok = ok && v.ok();
      j[v.name] = v.to_json();
    }
  } catch (const ResourceError& e) {
    ok = false;
    j["verdict"] = "resource-error";
    j["message"] = e.what();
  }
  return j;
}

}  // namespace laxfact
