#include "laxfact/laws.hpp"

#include <fstream>

#include "laxfact/errors.hpp"
#include "laxfact/parallel.hpp"
#include "slotlog.hpp"

namespace laxfact {

namespace {

using detail::SlotLog;
using detail::fold;
using nlohmann::json;

struct Missing {
  std::string what;
};

PartialMap need(std::optional<PartialMap> m, const char* sym, const PartialMap& f) {
  if (!m) throw Missing{std::string(sym) + " has no filler at " + f.to_string()};
  return *m;
}

PartialMap cmp(const PartialMap& g, const PartialMap& f) { return compose_partial(g, f); }

void expect(SlotLog& log, Kind k, const PartialMap& a, const PartialMap& b, const std::string& law,
            const PartialMap& f) {
  ++log.checked;
  if (a.dom_size() != b.dom_size() || a.cod_size() != b.cod_size()) {
    log.fail(law + " at " + f.to_string() + ": sides have different types");
  } else if (!map_rel(k, a, b)) {
    log.fail(law + " at " + f.to_string() + ": " + a.to_string() + " vs " + b.to_string());
  }
}

// Runs body per universe map; missing fillers and ill-typed overrides become failures.
Verdict per_map(const char* name, const SchemeWorkbench& w,
                const std::function<void(const PartialMap&, SlotLog&)>& body) {
  const auto& maps = w.maps();
  std::vector<SlotLog> logs(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) {
    try {
      body(maps[i], logs[i]);
    } catch (const Missing& m) {
      ++logs[i].checked;
      logs[i].fail(m.what);
    } catch (const ContractViolation& e) {
      ++logs[i].checked;
      logs[i].fail(maps[i].to_string() + ": " + e.what());
    }
  });
  Verdict v(name);
  fold(v, logs);
  return std::move(v.finish());
}

std::optional<PartialMap> cached(std::mutex& mu, std::map<PartialMap, std::optional<PartialMap>>& cache,
                                 const std::map<PartialMap, PartialMap>& fixed, const PartialMap& f,
                                 const std::function<std::optional<PartialMap>()>& compute) {
  if (auto it = fixed.find(f); it != fixed.end()) return it->second;
  {
    std::lock_guard lock(mu);
    if (auto it = cache.find(f); it != cache.end()) return it->second;
  }
  auto value = compute();
  std::lock_guard lock(mu);
  cache.emplace(f, value);
  return value;
}

}  // namespace

void LaxStructure::override_theta(const PartialMap& f, PartialMap value) {
  std::lock_guard lock(mu_);
  theta_cache_.clear();
  theta_fixed_[f] = std::move(value);
}

void LaxStructure::override_omega(const PartialMap& f, PartialMap value) {
  std::lock_guard lock(mu_);
  omega_cache_.clear();
  omega_fixed_[f] = std::move(value);
}

std::optional<PartialMap> LaxStructure::theta(const PartialMap& f) const {
  return cached(mu_, theta_cache_, theta_fixed_, f, [&] { return find_lambda(*scheme_, scheme_->factor(f).r); });
}

std::optional<PartialMap> LaxStructure::omega(const PartialMap& f) const {
  return cached(mu_, omega_cache_, omega_fixed_, f, [&] { return find_rho(*scheme_, scheme_->factor(f).l); });
}

std::size_t LaxStructure::theta_choices(const PartialMap& f) const {
  return all_lambda(*scheme_, scheme_->factor(f).r).size();
}

std::size_t LaxStructure::omega_choices(const PartialMap& f) const {
  return all_rho(*scheme_, scheme_->factor(f).l).size();
}

MapSquare LaxStructure::mu(const PartialMap& f) const {
  const PartialMap rf = scheme_->factor(f).r;
  const PartialMap th = need(theta(f), "Θ", f);
  return {scheme_->factor(rf).r, rf, th, PartialMap::identity(f.cod_size())};
}

MapSquare LaxStructure::delta(const PartialMap& f) const {
  const PartialMap lf = scheme_->factor(f).l;
  const PartialMap om = need(omega(f), "Ω", f);
  return {lf, scheme_->factor(lf).l, PartialMap::identity(f.dom_size()), om};
}

MapSquare LaxStructure::dist(const PartialMap& f) const {
  const Factorisation fz = scheme_->factor(f);
  return {scheme_->factor(fz.r).l, scheme_->factor(fz.l).r, need(omega(f), "Ω", f), need(theta(f), "Θ", f)};
}

json map_json(const PartialMap& f) {
  json vals = json::array();
  for (auto x : f.values()) {
    if (x == PartialMap::kUndefined) {
      vals.push_back(nullptr);
    } else {
      vals.push_back(x);
    }
  }
  return {{"dom", f.dom_size()}, {"cod", f.cod_size()}, {"map", vals}};
}

PartialMap map_from_json(const json& j) {
  if (!j.is_object() || !j.contains("dom") || !j.contains("cod") || !j.contains("map")) {
    throw FormatError("a map needs dom, cod and map", 0);
  }
  if (!j["dom"].is_number_unsigned() || !j["cod"].is_number_unsigned() || !j["map"].is_array()) {
    throw FormatError("bad map fields in " + j.dump(), 0);
  }
  const auto dom = j["dom"].get<std::uint32_t>();
  const auto cod = j["cod"].get<std::uint32_t>();
  std::vector<std::int32_t> vals;
  for (const auto& x : j["map"]) {
    if (x.is_null()) {
      vals.push_back(PartialMap::kUndefined);
    } else if (x.is_number_integer()) {
      vals.push_back(x.get<std::int32_t>());
    } else {
      throw FormatError("map entries are integers or null: " + j.dump(), 0);
    }
  }
  if (vals.size() != dom) throw FormatError("map length differs from dom: " + j.dump(), 0);
  try {
    return PartialMap(dom, cod, std::move(vals));
  } catch (const ContractViolation& e) {
    throw FormatError(e.what(), 0);
  }
}

void load_structure(LaxStructure& s, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open " + path.string(), 0);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(e.what(), 0);
  }
  if (!j.is_object()) throw FormatError("structure file must hold an object", 0);
  for (const auto& [key, entries] : j.items()) {
    if (key != "theta" && key != "omega") throw FormatError("unknown key " + key, 0);
    if (!entries.is_array()) throw FormatError(key + " must be an array", 0);
    for (const auto& e : entries) {
      if (!e.is_object() || !e.contains("f") || !e.contains("value")) {
        throw FormatError(key + " entries need f and value", 0);
      }
      const PartialMap f = map_from_json(e["f"]);
      PartialMap v = map_from_json(e["value"]);
      if (key == "theta") {
        s.override_theta(f, std::move(v));
      } else {
        s.override_omega(f, std::move(v));
      }
    }
  }
}

Verdict build_monad_data(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(2, "Θ");
  const auto& maps = w.maps();
  std::vector<std::size_t> unique(maps.size(), 0);
  const FactorisationScheme& sc = s.scheme();
  Verdict v = per_map("Θ fills ε_{Rf}", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap rf = sc.factor(f).r;
    const PartialMap th = need(s.theta(f), "Θ", f);
    ++log.checked;
    if (!map_is_filler(sc.kind(), sc.epsilon(rf), th)) log.fail("Θ = " + th.to_string() + " does not fill ε_{Rf} at " + f.to_string());
    if (s.theta_choices(f) == 1) unique[&f - maps.data()] = 1;
  });
  std::size_t n = 0;
  for (auto u : unique) n += u;
  v.detail["unique"] = n;
  v.detail["maps"] = maps.size();
  return v;
}

Verdict build_comonad_data(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(2, "Ω");
  const auto& maps = w.maps();
  std::vector<std::size_t> unique(maps.size(), 0);
  const FactorisationScheme& sc = s.scheme();
  Verdict v = per_map("Ω fills η_{Lf}", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap lf = sc.factor(f).l;
    const PartialMap om = need(s.omega(f), "Ω", f);
    ++log.checked;
    if (!map_is_filler(sc.kind(), sc.eta(lf), om)) log.fail("Ω = " + om.to_string() + " does not fill η_{Lf} at " + f.to_string());
    if (s.omega_choices(f) == 1) unique[&f - maps.data()] = 1;
  });
  std::size_t n = 0;
  for (auto u : unique) n += u;
  v.detail["unique"] = n;
  v.detail["maps"] = maps.size();
  return v;
}

Verdict check_lax_monad_laws(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(3, "monad laws");
  const FactorisationScheme& sc = s.scheme();
  const Kind k = sc.kind();
  Verdict v("monad laws");
  v.absorb(per_map("unit", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap id = PartialMap::identity(fz.mid());
    const PartialMap keta = sc.kmap(sc.eta(f));
    expect(log, k, id, cmp(th, keta), "id ≤ Θ∘K(η)", f);
    expect(log, k, id, cmp(th, sc.factor(fz.r).l), "id ≤ Θ∘LR", f);
  }));
  v.absorb(per_map("associativity", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap rf = sc.factor(f).r;
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap th_r = need(s.theta(rf), "Θ", rf);
    const PartialMap kmu = sc.kmap(s.mu(f));
    expect(log, k, cmp(th, kmu), cmp(th, th_r), "Θ∘K(μ) ≤ Θ∘Θ_R", f);
  }));
  v.absorb(per_map("μ square", w, [&](const PartialMap& f, SlotLog& log) {
    ++log.checked;
    if (!map_is_square(k, s.mu(f))) log.fail("μ is not a square at " + f.to_string());
  }));
  const auto& maps = w.maps();
  v.absorb(per_map("μ naturality", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap th_f = need(s.theta(f), "Θ", f);
    for (const auto& g : maps) {
      const PartialMap th_g = need(s.theta(g), "Θ", g);
      for (const auto& sq : w.squares(f, g)) {
        const PartialMap kuv = sc.kmap(sq);
        const PartialMap krr = sc.kmap(sc.rmap(sq));
        ++log.checked;
        if (!map_rel(k, cmp(th_g, krr), cmp(kuv, th_f))) {
          log.fail("μ naturality at (" + sq.u.to_string() + ", " + sq.v.to_string() + "): " + f.to_string() +
                   " -> " + g.to_string());
        }
      }
    }
  }));
  return std::move(v.finish());
}

Verdict check_lax_comonad_laws(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(3, "comonad laws");
  const FactorisationScheme& sc = s.scheme();
  const Kind k = sc.kind();
  Verdict v("comonad laws");
  v.absorb(per_map("counit", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap om = need(s.omega(f), "Ω", f);
    const PartialMap id = PartialMap::identity(fz.mid());
    const PartialMap keps = sc.kmap(sc.epsilon(f));
    expect(log, k, cmp(keps, om), id, "K(ε)∘Ω ≤ id", f);
    expect(log, k, cmp(sc.factor(fz.l).r, om), id, "RL∘Ω ≤ id", f);
  }));
  v.absorb(per_map("coassociativity", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap lf = sc.factor(f).l;
    const PartialMap om = need(s.omega(f), "Ω", f);
    const PartialMap om_l = need(s.omega(lf), "Ω", lf);
    const PartialMap kdelta = sc.kmap(s.delta(f));
    expect(log, k, cmp(om_l, om), cmp(kdelta, om), "Ω_L∘Ω ≤ K(δ)∘Ω", f);
  }));
  v.absorb(per_map("δ square", w, [&](const PartialMap& f, SlotLog& log) {
    ++log.checked;
    if (!map_is_square(k, s.delta(f))) log.fail("δ is not a square at " + f.to_string());
  }));
  const auto& maps = w.maps();
  v.absorb(per_map("δ naturality", w, [&](const PartialMap& f, SlotLog& log) {
    const PartialMap om_f = need(s.omega(f), "Ω", f);
    for (const auto& g : maps) {
      const PartialMap om_g = need(s.omega(g), "Ω", g);
      for (const auto& sq : w.squares(f, g)) {
        const PartialMap kuv = sc.kmap(sq);
        const PartialMap kll = sc.kmap(sc.lmap(sq));
        ++log.checked;
        if (!map_rel(k, cmp(om_g, kuv), cmp(kll, om_f))) {
          log.fail("δ naturality at (" + sq.u.to_string() + ", " + sq.v.to_string() + "): " + f.to_string() +
                   " -> " + g.to_string());
        }
      }
    }
  }));
  return std::move(v.finish());
}

Verdict check_distributivity_law(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(3, "distributivity");
  const FactorisationScheme& sc = s.scheme();
  Verdict v("distributivity");
  auto same = [](SlotLog& log, const PartialMap& a, const PartialMap& b, const std::string& law,
                 const PartialMap& f) {
    ++log.checked;
    if (!(a == b)) log.fail(law + " at " + f.to_string() + ": " + a.to_string() + " vs " + b.to_string());
  };
  v.absorb(per_map("Δ square", w, [&](const PartialMap& f, SlotLog& log) {
    ++log.checked;
    if (!map_is_square(sc.kind(), s.dist(f))) log.fail("Δ is not a square at " + f.to_string());
  }));
  v.absorb(per_map("hexagon μ", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap om = need(s.omega(f), "Ω", f);
    const PartialMap th_r = need(s.theta(fz.r), "Θ", fz.r);
    const PartialMap th_l = need(s.theta(fz.l), "Θ", fz.l);
    const PartialMap om_r = need(s.omega(fz.r), "Ω", fz.r);
    const PartialMap kdist = sc.kmap(s.dist(f));
    const PartialMap kmu = sc.kmap(s.mu(f));
    same(log, cmp(th_l, cmp(kdist, om_r)), cmp(om, th), "hexagon μ, first component", f);
    same(log, cmp(th, th_r), cmp(th, kmu), "hexagon μ, second component", f);
  }));
  v.absorb(per_map("hexagon δ", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap om = need(s.omega(f), "Ω", f);
    const PartialMap th_l = need(s.theta(fz.l), "Θ", fz.l);
    const PartialMap om_l = need(s.omega(fz.l), "Ω", fz.l);
    const PartialMap om_r = need(s.omega(fz.r), "Ω", fz.r);
    const PartialMap kdist = sc.kmap(s.dist(f));
    const PartialMap kdelta = sc.kmap(s.delta(f));
    same(log, cmp(kdelta, om), cmp(om_l, om), "hexagon δ, first component", f);
    same(log, cmp(om, th), cmp(th_l, cmp(kdist, om_r)), "hexagon δ, second component", f);
  }));
  return std::move(v.finish());
}

Verdict check_lawfs_implies_lfwfs(const LaxStructure& s, const SchemeWorkbench& w) {
  w.require_depth(3, "lifting from the distributive structure");
  const FactorisationScheme& sc = s.scheme();
  const Kind k = sc.kind();
  Verdict v("lifting");
  v.absorb(per_map("designated fillers", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap om = need(s.omega(f), "Ω", f);
    log.checked += 2;
    if (!map_is_filler(k, sc.epsilon(fz.r), th)) log.fail("θ does not fill ε_{Rf} at " + f.to_string());
    if (!map_is_filler(k, sc.eta(fz.l), om)) log.fail("ω does not fill η_{Lf} at " + f.to_string());
    expect(log, k, PartialMap::identity(fz.mid()), cmp(th, sc.factor(fz.r).l), "id ≤ θ∘LR", f);
  }));
  v.absorb(per_map("left lifting", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap rl = sc.factor(fz.l).r;
    const PartialMap om = need(s.omega(f), "Ω", f);
    const PartialMap th_l = need(s.theta(fz.l), "Θ", fz.l);
    for (const auto& sq : w.squares(fz.l, rl)) {
      const PartialMap d = cmp(th_l, cmp(sc.kmap(sq), om));
      ++log.checked;
      if (!map_is_filler(k, sq, d)) {
        log.fail("θ_L∘K∘ω = " + d.to_string() + " misses (" + sq.u.to_string() + ", " + sq.v.to_string() +
                 ") at " + f.to_string());
      }
    }
  }));
  v.absorb(per_map("right lifting", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const PartialMap lr = sc.factor(fz.r).l;
    const PartialMap th = need(s.theta(f), "Θ", f);
    const PartialMap om_r = need(s.omega(fz.r), "Ω", fz.r);
    for (const auto& sq : w.squares(lr, fz.r)) {
      const PartialMap d = cmp(th, cmp(sc.kmap(sq), om_r));
      ++log.checked;
      if (!map_is_filler(k, sq, d)) {
        log.fail("θ∘K∘ω_R = " + d.to_string() + " misses (" + sq.u.to_string() + ", " + sq.v.to_string() +
                 ") at " + f.to_string());
      }
    }
  }));
  return std::move(v.finish());
}

Verdict check_algebra_structures(const SchemeWorkbench& w) {
  const FactorisationScheme& sc = w.scheme();
  const Kind k = sc.kind();
  return per_map("algebra structures", w, [&](const PartialMap& f, SlotLog& log) {
    const Factorisation fz = sc.factor(f);
    const auto fillers = map_all_fillers(k, sc.epsilon(f));
    std::vector<PartialMap> algebras;
    const PartialMap id_a = PartialMap::identity(f.dom_size());
    const PartialMap id_b = PartialMap::identity(f.cod_size());
    for (const auto& l : enumerate_partial_maps(fz.mid(), f.dom_size())) {
      if (map_is_square(k, {fz.r, f, l, id_b}) && map_rel(k, id_a, cmp(l, fz.l))) algebras.push_back(l);
    }
    ++log.checked;
    if (fillers != algebras) {
      log.fail(f.to_string() + ": " + std::to_string(fillers.size()) + " fillers of ε, " +
               std::to_string(algebras.size()) + " algebra structures");
    }
  });
}

Verdict check_adjoint_composite(const SchemeWorkbench& w, const DerivedClasses& classes) {
  const FactorisationScheme& sc = w.scheme();
  const Kind k = sc.kind();
  const auto& morphisms = w.universe().morphisms;
  const auto& maps = w.maps();
  return per_map("λ∘ρ adjoint", w, [&](const PartialMap& f, SlotLog& log) {
    const MorId m = morphisms[&f - maps.data()];
    if (!classes.left.contains(m) || !classes.right.contains(m)) return;
    const PartialMap rho = need(find_rho(sc, f), "ρ", f);
    const PartialMap lambda = need(find_lambda(sc, f), "λ", f);
    const PartialMap g = cmp(lambda, rho);
    ++log.checked;
    const bool unit = map_rel(k, PartialMap::identity(f.dom_size()), cmp(g, f));
    const bool counit = map_rel(k, cmp(f, g), PartialMap::identity(f.cod_size()));
    if (!unit || !counit) log.fail(f.to_string() + ": λ∘ρ = " + g.to_string() + " is not a partner");
  });
}

json monad_report(const LaxStructure& s, const SchemeWorkbench& w, bool& ok) {
  json j;
  j["scheme"] = s.scheme().name();
  j["kind"] = std::string(kind_name(s.scheme().kind()));
  j["universe"] = w.universe().label;
  j["overrides"] = s.override_count();
  ok = true;
  auto run = [&](const char* key, auto&& fn) {
    try {
      Verdict v = fn();
      ok = ok && v.ok();
      j[key] = v.to_json();
    } catch (const ResourceError& e) {
      ok = false;
      j[key] = {{"name", key}, {"verdict", "resource-error"}, {"message", e.what()}};
    }
  };
  run("theta", [&] { return build_monad_data(s, w); });
  run("omega", [&] { return build_comonad_data(s, w); });
  run("monad", [&] { return check_lax_monad_laws(s, w); });
  run("comonad", [&] { return check_lax_comonad_laws(s, w); });
  run("distributivity", [&] { return check_distributivity_law(s, w); });
  run("lifting", [&] { return check_lawfs_implies_lfwfs(s, w); });
  run("algebras", [&] { return check_algebra_structures(w); });
  try {
    const DerivedClasses c = derive_classes(w);
    run("adjoint_composite", [&] { return check_adjoint_composite(w, c); });
  } catch (const ResourceError& e) {
    ok = false;
    j["adjoint_composite"] = {{"verdict", "resource-error"}, {"message", e.what()}};
  }
  return j;
}

}  // namespace laxfact
