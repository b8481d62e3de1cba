#include "laxfact/factsys.hpp"

#include <algorithm>

#include "laxfact/errors.hpp"
#include "laxfact/parallel.hpp"
#include "slotlog.hpp"

namespace laxfact {

namespace {

using detail::SlotLog;
using detail::fold;

std::string sq_text(const MapSquare& s) {
  return "(" + s.u.to_string() + ", " + s.v.to_string() + "): " + s.f.to_string() + " -> " + s.g.to_string();
}

}  // namespace

bool map_rel(Kind kind, const PartialMap& a, const PartialMap& b) {
  switch (kind) {
    case Kind::Lax:
      return restriction_leq(a, b);
    case Kind::Oplax:
      return restriction_leq(b, a);
    case Kind::Strict:
      if (a.dom_size() != b.dom_size() || a.cod_size() != b.cod_size()) {
        throw ContractViolation("comparing non-parallel maps");
      }
      return a == b;
  }
  return false;
}

bool map_is_square(Kind kind, const MapSquare& s) {
  return map_rel(kind, compose_partial(s.g, s.u), compose_partial(s.v, s.f));
}

bool map_is_filler(Kind kind, const MapSquare& s, const PartialMap& d) {
  return map_rel(kind, s.u, compose_partial(d, s.f)) && map_rel(kind, compose_partial(s.g, d), s.v);
}

std::optional<PartialMap> map_find_filler(Kind kind, const MapSquare& s) {
  for (const auto& d : enumerate_partial_maps(s.f.cod_size(), s.g.dom_size())) {
    if (map_is_filler(kind, s, d)) return d;
  }
  return std::nullopt;
}

std::vector<PartialMap> map_all_fillers(Kind kind, const MapSquare& s) {
  std::vector<PartialMap> out;
  for (const auto& d : enumerate_partial_maps(s.f.cod_size(), s.g.dom_size())) {
    if (map_is_filler(kind, s, d)) out.push_back(d);
  }
  return out;
}

MapSquare compose_squares(const MapSquare& second, const MapSquare& first) {
  if (!(first.g == second.f)) throw ContractViolation("squares do not compose");
  return {first.f, second.g, compose_partial(second.u, first.u), compose_partial(second.v, first.v)};
}

std::uint32_t ambient_size(const FactorisationScheme& s, std::uint32_t n, int depth) {
  std::uint32_t size = n;
  for (int i = 0; i < depth; ++i) {
    std::uint32_t next = size;
    for (std::uint32_t a = 0; a <= size; ++a) {
      for (std::uint32_t b = 0; b <= size; ++b) next = std::max(next, s.mid_bound(a, b));
    }
    size = next;
  }
  return size;
}

SchemeWorkbench::SchemeWorkbench(SchemePtr scheme, std::uint32_t n, int depth) : scheme_(std::move(scheme)), n_(n) {
  if (n > ParCategory::kHardCap) {
    throw ResourceError("universe size " + std::to_string(n) + " exceeds the hard cap " +
                        std::to_string(ParCategory::kHardCap));
  }
  // deepest level whose ambient still fits
  depth_ = 0;
  for (int d = 1; d <= depth; ++d) {
    if (ambient_size(*scheme_, n, d) > ParCategory::kHardCap) break;
    depth_ = d;
  }
  par_ = shared_par(ambient_size(*scheme_, n, depth_));
  universe_ = object_universe(
      par_->category(), [n](ObjId a) { return a.index <= n; }, "Par≤" + std::to_string(n));
  orth_ = std::make_unique<Orthogonality>(par_->category(), scheme_->kind());
  for (MorId f : universe_.morphisms) maps_.push_back(par_->map(f));
}

MorId SchemeWorkbench::id(const PartialMap& f) const {
  if (auto m = par_->find(f)) return *m;
  throw ResourceError("map " + f.to_string() + " lies past the ambient Par≤" + std::to_string(par_->max_size()));
}

bool SchemeWorkbench::orthogonal(const PartialMap& f, const PartialMap& g) const { return !failure(f, g); }

std::optional<Square> SchemeWorkbench::failure(const PartialMap& f, const PartialMap& g) const {
  return orth_->failure(id(f), id(g));
}

std::vector<MapSquare> SchemeWorkbench::squares(const PartialMap& f, const PartialMap& g) const {
  std::vector<MapSquare> out;
  const Kind k = kind();
  const auto vs = enumerate_partial_maps(f.cod_size(), g.cod_size());
  std::vector<PartialMap> vf;
  vf.reserve(vs.size());
  for (const auto& v : vs) vf.push_back(compose_partial(v, f));
  for (const auto& u : enumerate_partial_maps(f.dom_size(), g.dom_size())) {
    const PartialMap gu = compose_partial(g, u);
    for (std::size_t j = 0; j < vs.size(); ++j) {
      if (map_rel(k, gu, vf[j])) out.push_back({f, g, u, vs[j]});
    }
  }
  return out;
}

void SchemeWorkbench::require_depth(int d, const char* what) const {
  if (d > depth_) {
    throw ResourceError(std::string(what) + " for " + scheme_->name() + " on Par≤" + std::to_string(n_) +
                        " needs Par≤" + std::to_string(ambient_size(*scheme_, n_, d)) + ", hard cap is " +
                        std::to_string(ParCategory::kHardCap));
  }
}

Verdict check_section(const SchemeWorkbench& w) {
  Verdict v("section");
  const auto& maps = w.maps();
  std::vector<SlotLog> logs(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) {
    const PartialMap& f = maps[i];
    const Factorisation fz = w.scheme().factor(f);
    logs[i].checked = 1;
    if (fz.l.dom_size() != f.dom_size() || fz.r.cod_size() != f.cod_size() || fz.l.cod_size() != fz.r.dom_size()) {
      logs[i].fail(f.to_string() + ": factors have the wrong types");
    } else if (!(compose_partial(fz.r, fz.l) == f)) {
      logs[i].fail(f.to_string() + ": R∘L = " + compose_partial(fz.r, fz.l).to_string());
    }
  });
  fold(v, logs);
  return std::move(v.finish());
}

Verdict check_klaws(const SchemeWorkbench& w) {
  const FactorisationScheme& s = w.scheme();
  const Kind k = s.kind();
  const auto& maps = w.maps();
  const std::size_t n = maps.size();
  std::vector<Factorisation> fz(n);
  for (std::size_t i = 0; i < n; ++i) fz[i] = s.factor(maps[i]);

  struct Entry {
    MapSquare sq;
    PartialMap kuv;
  };
  std::vector<std::vector<Entry>> squares(n * n);
  Verdict naturality("K action");
  {
    std::vector<SlotLog> logs(n * n);
    parallel_for(n * n, [&](std::size_t p) {
      const std::size_t i = p / n, j = p % n;
      for (auto& sq : w.squares(maps[i], maps[j])) {
        PartialMap kuv = s.kmap(sq);
        auto& log = logs[p];
        ++log.checked;
        if (kuv.dom_size() != fz[i].mid() || kuv.cod_size() != fz[j].mid()) {
          log.fail("K" + sq_text(sq) + " has the wrong type");
          continue;
        }
        if (!map_rel(k, compose_partial(fz[j].l, sq.u), compose_partial(kuv, fz[i].l))) {
          log.fail("L(u,v) is not a square for " + sq_text(sq));
        }
        if (!map_rel(k, compose_partial(fz[j].r, kuv), compose_partial(sq.v, fz[i].r))) {
          log.fail("R(u,v) is not a square for " + sq_text(sq));
        }
        squares[p].push_back({std::move(sq), std::move(kuv)});
      }
    });
    fold(naturality, logs);
  }

  Verdict identity("K(id,id) = id");
  Verdict units("η and ε squares");
  for (std::size_t i = 0; i < n; ++i) {
    const PartialMap& f = maps[i];
    identity.count();
    const MapSquare idsq{f, f, PartialMap::identity(f.dom_size()), PartialMap::identity(f.cod_size())};
    if (!(s.kmap(idsq) == PartialMap::identity(fz[i].mid()))) identity.fail(f.to_string());
    units.count(2);
    if (!map_is_square(k, s.eta(f))) units.fail("η not a square at " + f.to_string());
    if (!map_is_square(k, s.epsilon(f))) units.fail("ε not a square at " + f.to_string());
  }

  Verdict functorial("K preserves composition");
  {
    std::vector<SlotLog> logs(n);
    parallel_for(n, [&](std::size_t j) {
      auto& log = logs[j];
      for (std::size_t i = 0; i < n; ++i) {
        for (const auto& a : squares[i * n + j]) {
          for (std::size_t h = 0; h < n; ++h) {
            for (const auto& b : squares[j * n + h]) {
              ++log.checked;
              const MapSquare c = compose_squares(b.sq, a.sq);
              if (!(s.kmap(c) == compose_partial(b.kuv, a.kuv))) {
                log.fail("K of " + sq_text(c) + " differs from the composite");
              }
            }
          }
        }
      }
    });
    fold(functorial, logs);
  }

  Verdict v("klaws");
  for (Verdict* sub : {&naturality, &identity, &units, &functorial}) {
    sub->finish();
    v.absorb(*sub);
    v.detail[sub->name] = std::string(outcome_name(sub->outcome));
  }
  std::size_t total = 0;
  for (const auto& e : squares) total += e.size();
  v.detail["squares"] = total;
  return std::move(v.finish());
}

std::optional<PartialMap> find_rho(const FactorisationScheme& s, const PartialMap& f) {
  return map_find_filler(s.kind(), s.eta(f));
}

std::optional<PartialMap> find_lambda(const FactorisationScheme& s, const PartialMap& f) {
  return map_find_filler(s.kind(), s.epsilon(f));
}

std::vector<PartialMap> all_rho(const FactorisationScheme& s, const PartialMap& f) {
  return map_all_fillers(s.kind(), s.eta(f));
}

std::vector<PartialMap> all_lambda(const FactorisationScheme& s, const PartialMap& f) {
  return map_all_fillers(s.kind(), s.epsilon(f));
}

Verdict check_predistributive(const SchemeWorkbench& w) {
  w.require_depth(2, "predistributivity");
  const FactorisationScheme& s = w.scheme();
  const auto& maps = w.maps();
  std::vector<SlotLog> logs(maps.size());
  parallel_for(maps.size(), [&](std::size_t i) {
    const PartialMap& f = maps[i];
    const Factorisation fz = s.factor(f);
    const PartialMap rlf = s.factor(fz.l).r;
    const PartialMap lrf = s.factor(fz.r).l;
    auto& log = logs[i];
    log.checked = 2;
    const auto left = w.failure(fz.l, rlf);
    const auto right = w.failure(lrf, fz.r);
    const bool rho = find_rho(s, fz.l).has_value();
    const bool lambda = find_lambda(s, fz.r).has_value();
    if (left) log.fail(f.to_string() + ": Lf not orthogonal to RLf, " + square_text(w.category(), *left));
    if (right) log.fail(f.to_string() + ": LRf not orthogonal to Rf, " + square_text(w.category(), *right));
    if (rho == left.has_value()) log.fail(f.to_string() + ": ρ_{Lf} existence disagrees with Lf ⫪ RLf");
    if (lambda == right.has_value()) log.fail(f.to_string() + ": λ_{Rf} existence disagrees with LRf ⫪ Rf");
  });
  Verdict v("predistributive");
  fold(v, logs);
  return std::move(v.finish());
}

DerivedClasses derive_classes(const SchemeWorkbench& w) {
  const FactorisationScheme& s = w.scheme();
  const auto& u = w.universe();
  std::vector<std::optional<Square>> lw(u.morphisms.size()), rw(u.morphisms.size());
  parallel_for(u.morphisms.size(), [&](std::size_t i) {
    const PartialMap& f = w.maps()[i];
    const Factorisation fz = s.factor(f);
    lw[i] = w.failure(f, fz.r);
    rw[i] = w.failure(fz.l, f);
  });
  DerivedClasses out{empty_class(u, "L_F"), empty_class(u, "R_F")};
  for (std::size_t i = 0; i < u.morphisms.size(); ++i) {
    const MorId f = u.morphisms[i];
    if (lw[i]) {
      out.left.witnesses.emplace(f.index, *lw[i]);
    } else {
      out.left.members.set(f.index);
    }
    if (rw[i]) {
      out.right.witnesses.emplace(f.index, *rw[i]);
    } else {
      out.right.members.set(f.index);
    }
  }
  return out;
}

Verdict check_underlying_lwfs(const SchemeWorkbench& w, const DerivedClasses& classes, bool all_fillers) {
  const FactorisationScheme& s = w.scheme();
  const Kind k = s.kind();
  const auto hint = [&](MorId f) -> std::optional<std::pair<MorId, MorId>> {
    const Factorisation fz = s.factor(w.par().map(f));
    const auto l = w.par().find(fz.l);
    const auto r = w.par().find(fz.r);
    if (!l || !r) return std::nullopt;
    return std::make_pair(*l, *r);
  };
  Verdict v("underlying lwfs");
  Verdict exist = check_lwfs(w.orth(), classes.left, classes.right, w.universe(), hint);
  v.absorb(exist);
  v.detail["factorisations"] = exist.detail["factorisations"];

  const std::vector<MorId> ls = classes.left.list();
  const std::vector<MorId> rs = classes.right.list();
  std::vector<SlotLog> logs(ls.size() * rs.size());
  parallel_for(logs.size(), [&](std::size_t p) {
    const PartialMap& f = w.par().map(ls[p / rs.size()]);
    const PartialMap& g = w.par().map(rs[p % rs.size()]);
    auto& log = logs[p];
    const auto rhos = all_fillers ? all_rho(s, f) : std::vector<PartialMap>{};
    const auto lambdas = all_fillers ? all_lambda(s, g) : std::vector<PartialMap>{};
    const auto rho = find_rho(s, f);
    const auto lambda = find_lambda(s, g);
    if (!rho || !lambda) {
      log.fail("missing " + std::string(!rho ? "ρ at " + f.to_string() : "λ at " + g.to_string()));
      return;
    }
    for (const auto& sq : w.squares(f, g)) {
      const PartialMap kuv = s.kmap(sq);
      ++log.checked;
      const PartialMap delta = compose_partial(*lambda, compose_partial(kuv, *rho));
      if (!map_is_filler(k, sq, delta)) log.fail("Δ = " + delta.to_string() + " does not fill " + sq_text(sq));
      for (const auto& r : rhos) {
        for (const auto& l : lambdas) {
          ++log.checked;
          const PartialMap d = compose_partial(l, compose_partial(kuv, r));
          if (!map_is_filler(k, sq, d)) {
            log.fail("Δ with ρ = " + r.to_string() + ", λ = " + l.to_string() + " does not fill " + sq_text(sq));
          }
        }
      }
    }
  });
  Verdict construction("constructed diagonal");
  fold(construction, logs);
  construction.finish();
  v.absorb(construction);
  v.detail["constructed_diagonal"] = std::string(outcome_name(construction.outcome));
  v.detail["constructed_checked"] = construction.checked;
  v.detail["all_fillers"] = all_fillers;
  return std::move(v.finish());
}

FactorisationPair non_uniqueness_witness(const PartialMap& f) {
  if (f.is_zero()) {
    throw ContractViolation("non-uniqueness needs a map with nonempty domain, got " + f.to_string());
  }
  const auto d = f.domain();
  const auto k = static_cast<std::uint32_t>(d.size());
  const std::uint32_t n = f.cod_size();
  std::vector<std::int32_t> pl(f.dom_size(), PartialMap::kUndefined), pr(k * n);
  std::vector<std::int32_t> cl(f.dom_size(), PartialMap::kUndefined), cr(k + n);
  for (std::uint32_t j = 0; j < k; ++j) {
    pl[d[j]] = static_cast<std::int32_t>(j * n) + f(d[j]);
    cl[d[j]] = static_cast<std::int32_t>(j);
    cr[j] = f(d[j]);
  }
  for (std::uint32_t x = 0; x < k * n; ++x) pr[x] = static_cast<std::int32_t>(x % n);
  for (std::uint32_t y = 0; y < n; ++y) cr[k + y] = static_cast<std::int32_t>(y);
  return {{PartialMap(f.dom_size(), k * n, std::move(pl)), PartialMap(k * n, n, std::move(pr))},
          {PartialMap(f.dom_size(), k + n, std::move(cl)), PartialMap(k + n, n, std::move(cr))}};
}

Verdict check_non_uniqueness(std::uint32_t n) {
  Verdict v("non-uniqueness witnesses");
  for (std::uint32_t a = 0; a <= n; ++a) {
    for (std::uint32_t b = 0; b <= n; ++b) {
      for (const auto& f : enumerate_partial_maps(a, b)) {
        if (f.is_zero()) continue;
        v.count();
        const auto w = non_uniqueness_witness(f);
        for (const Factorisation* fz : {&w.product, &w.coproduct}) {
          if (!fz->l.is_injective_component() || !fz->r.is_total() || !fz->r.is_surjective_component() ||
              !(compose_partial(fz->r, fz->l) == f)) {
            v.fail(f.to_string() + ": bad factorisation through " + std::to_string(fz->mid()));
          }
        }
        if (w.product.l == w.coproduct.l && w.product.r == w.coproduct.r) v.fail(f.to_string() + ": not distinct");
      }
    }
  }
  return std::move(v.finish());
}

nlohmann::json scheme_report(const SchemeWorkbench& w, bool all_fillers, bool& ok) {
  nlohmann::json j;
  j["scheme"] = w.scheme().name();
  j["kind"] = std::string(kind_name(w.kind()));
  j["universe"] = w.universe().label;
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
  run("section", [&] { return check_section(w); });
  run("klaws", [&] { return check_klaws(w); });
  run("predistributive", [&] { return check_predistributive(w); });
  try {
    const DerivedClasses c = derive_classes(w);
    j["classes"] = {{"L_F", c.left.names()}, {"R_F", c.right.names()}};
    run("lwfs", [&] { return check_underlying_lwfs(w, c, all_fillers); });
  } catch (const ResourceError& e) {
    ok = false;
    j["classes"] = {{"verdict", "resource-error"}, {"message", e.what()}};
  }
  return j;
}

}  // namespace laxfact
