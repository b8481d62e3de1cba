#include "laxfact/suite.hpp"

#include <algorithm>

#include "laxfact/catio.hpp"
#include "laxfact/errors.hpp"
#include "laxfact/laws.hpp"
#include "laxfact/pointed.hpp"
#include "laxfact/restrict.hpp"

namespace laxfact {

namespace {

using nlohmann::json;

Criterion make(int id, std::string title) { return {id, title, Verdict(std::move(title))}; }

void expect(Verdict& v, bool ok, const std::string& what) {
  v.count();
  if (!ok) v.fail(what);
}

// Runs fn, turning library errors into failures of v.
template <class F>
void guarded(Verdict& v, const std::string& what, F&& fn) {
  try {
    fn();
  } catch (const std::exception& e) {
    v.count();
    v.fail(what + ": " + e.what());
  }
}

bool class_is(const ClassReport& c, const SchemeWorkbench& w, bool (*pred)(const PartialMap&)) {
  for (std::size_t i = 0; i < w.maps().size(); ++i) {
    if (c.contains(w.universe().morphisms[i]) != pred(w.maps()[i])) return false;
  }
  return true;
}

bool injective(const PartialMap& f) { return f.is_injective_component(); }
bool total(const PartialMap& f) { return f.is_total(); }
bool everything(const PartialMap&) { return true; }
bool left_adjoint(const PartialMap& f) { return f.is_total() && f.is_injective_component(); }

std::string par_label(std::uint32_t n) { return "Par≤" + std::to_string(n); }

}  // namespace

std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir) {
  std::vector<CorpusEntry> out;
  if (dir.empty() || !std::filesystem::is_directory(dir)) return out;
  std::vector<std::filesystem::path> files;
  for (const auto& e : std::filesystem::directory_iterator(dir)) {
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  }
  std::sort(files.begin(), files.end());
  for (const auto& p : files) {
    CorpusEntry entry{p.filename().string(), std::nullopt, {}};
    try {
      FinOrdCategory c = load_category(p);
      const ValidationReport r = validate_category(c);
      if (r.ok()) {
        entry.cat = std::move(c);
      } else {
        entry.problem = std::to_string(r.violations.size()) + " violations, first " + r.violations.front().law;
      }
    } catch (const std::exception& e) {
      entry.problem = e.what();
    }
    out.push_back(std::move(entry));
  }
  return out;
}

Criterion criterion_category_laws(const SuiteOptions&) {
  Criterion c = make(1, "category laws of Par≤2 and Par≤3");
  Verdict& v = c.verdict;
  for (std::uint32_t n : {2U, 3U}) {
    guarded(v, par_label(n), [&] {
      auto par = shared_par(n);
      const ValidationReport r = validate_category(par->category());
      expect(v, r.ok(), par_label(n) + ": " + std::to_string(r.violations.size()) + " violations");
      std::size_t total = 0;
      for (std::uint32_t a = 0; a <= n; ++a) {
        for (std::uint32_t b = 0; b <= n; ++b) {
          std::size_t expected = 1;
          for (std::uint32_t i = 0; i < a; ++i) expected *= b + 1;
          const std::size_t got = par->category().hom(par->object(a), par->object(b)).size();
          expect(v, got == expected, "|hom(" + std::to_string(a) + ", " + std::to_string(b) + ")| = " +
                                         std::to_string(got) + ", expected " + std::to_string(expected));
          total += got;
        }
      }
      c.verdict.detail[par_label(n)] = total;
      if (n == 3) expect(v, total == 144, "Par≤3 has " + std::to_string(total) + " morphisms");
    });
  }
  v.finish();
  return c;
}

Criterion criterion_self_orthogonal(const SuiteOptions& o, const std::vector<CorpusEntry>& corpus) {
  Criterion c = make(2, "self-orthogonal, adjoint and orthogonal-to-all classes coincide");
  auto one = [&](const FinOrdCategory& cat, const std::string& label) {
    const Universe u = whole_universe(cat, label);
    for (Kind k : {Kind::Lax, Kind::Oplax}) {
      const Orthogonality orth(cat, k);
      Verdict sub = check_self_orthogonal_classes(self_orthogonal_classes(orth, u));
      sub.name = label + " (" + std::string(kind_name(k)) + ")";
      c.verdict.absorb(sub);
    }
  };
  guarded(c.verdict, par_label(o.max_size), [&] { one(shared_par(o.max_size)->category(), par_label(o.max_size)); });
  json files = json::array();
  json skipped = json::object();
  for (const auto& e : corpus) {
    if (!e.cat) {
      skipped[e.name] = e.problem;
      continue;
    }
    files.push_back(e.name);
    guarded(c.verdict, e.name, [&] { one(*e.cat, e.name); });
  }
  c.verdict.detail["files"] = std::move(files);
  c.verdict.detail["skipped"] = std::move(skipped);
  c.verdict.finish();
  return c;
}

Criterion criterion_adjunctions(const SuiteOptions& o) {
  Criterion c = make(3, "adjoint pairs of Par are exactly the total injections with partial inverses");
  Verdict& v = c.verdict;
  guarded(v, "adjunctions", [&] {
    auto par = shared_par(o.max_size);
    const auto& cat = par->category();
    std::size_t pairs = 0;
    for (std::uint32_t a = 0; a <= o.max_size; ++a) {
      for (std::uint32_t b = 0; b <= o.max_size; ++b) {
        for (MorId fi : cat.hom(par->object(a), par->object(b))) {
          const PartialMap& f = par->map(fi);
          const auto expected = adjunction_partner(f);
          for (MorId gi : cat.hom(par->object(b), par->object(a))) {
            const PartialMap& g = par->map(gi);
            const bool adj = is_adjoint_pair(f, g);
            const bool want = expected && *expected == g;
            v.count();
            if (adj != want) v.fail(f.to_string() + " ⊣ " + g.to_string() + " is " + (adj ? "" : "not ") + "found");
            if (!adj) continue;
            ++pairs;
            const auto [l, r] = reflect_adjunction(f, g);
            const auto dg = g.domain();
            std::vector<std::int32_t> incl(dg.begin(), dg.end());
            const PartialMap sigma(static_cast<std::uint32_t>(dg.size()), g.dom_size(), std::move(incl));
            v.count();
            if (!l.is_total() || !r.is_total() || !(compose_partial(r, l) == PartialMap::identity(l.dom_size())) ||
                !(compose_partial(l, r) == PartialMap::identity(r.dom_size())) || !(compose_partial(sigma, l) == f)) {
              v.fail("reflection of " + f.to_string() + " ⊣ " + g.to_string() + " does not re-verify");
            }
          }
        }
      }
    }
    v.detail["pairs"] = pairs;
  });
  v.finish();
  return c;
}

Criterion criterion_domain_total(const SuiteOptions& o) {
  Criterion c = make(4, "domain-total scheme");
  Verdict& v = c.verdict;
  guarded(v, "domain-total", [&] {
    SchemeWorkbench w(domain_total_scheme(), o.max_size, 2);
    v.absorb(check_section(w));
    v.absorb(check_klaws(w));
    v.absorb(check_predistributive(w));
    const DerivedClasses cl = derive_classes(w);
    expect(v, class_is(cl.left, w, injective), "L_F is not the injective-component maps");
    expect(v, class_is(cl.right, w, total), "R_F is not the total maps");
    v.absorb(check_underlying_lwfs(w, cl, true));
  });
  v.finish();
  return c;
}

Criterion criterion_trivial(const SuiteOptions& o) {
  Criterion c = make(5, "trivial schemes");
  Verdict& v = c.verdict;
  guarded(v, "trivial-left", [&] {
    SchemeWorkbench w(trivial_left_scheme(), o.max_size, 1);
    const DerivedClasses cl = derive_classes(w);
    expect(v, class_is(cl.left, w, everything), "trivial-left L_F is not All");
    expect(v, class_is(cl.right, w, left_adjoint), "trivial-left R_F is not the left adjoints");
    Verdict sub = check_underlying_lwfs(w, cl);
    sub.name = "trivial-left lwfs";
    v.absorb(sub);
  });
  guarded(v, "trivial-right", [&] {
    SchemeWorkbench w(trivial_right_scheme(), o.max_size, 1);
    const DerivedClasses cl = derive_classes(w);
    expect(v, class_is(cl.left, w, left_adjoint), "trivial-right L_F is not the left adjoints");
    expect(v, class_is(cl.right, w, everything), "trivial-right R_F is not All");
    Verdict sub = check_underlying_lwfs(w, cl);
    sub.name = "trivial-right lwfs";
    v.absorb(sub);
  });
  v.finish();
  return c;
}

Criterion criterion_transfer(const SuiteOptions& o) {
  Criterion c = make(6, "transfer along stable factorisations");
  Verdict& v = c.verdict;
  guarded(v, "stability", [&] {
    Verdict a = check_stability(image_factoriser(), o.max_size);
    a.name = "stability (surjections)";
    v.absorb(a);
    Verdict b = check_stability(coproduct_factoriser(), o.max_size);
    b.name = "stability (injections)";
    v.absorb(b);
  });
  guarded(v, "transfer-epi-mono", [&] {
    SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, o.max_size), o.max_size, 2);
    expect(v, w.kind() == Kind::Oplax, "transfer-epi-mono is not oplax");
    v.absorb(check_section(w));
    v.absorb(check_klaws(w));
    v.absorb(check_predistributive(w));
    v.absorb(check_underlying_lwfs(w, derive_classes(w)));
  });
  guarded(v, "non-uniqueness", [&] { v.absorb(check_non_uniqueness(o.max_size)); });
  v.finish();
  return c;
}

Criterion criterion_monad(const SuiteOptions& o) {
  Criterion c = make(7, "lax monad, comonad and distributivity for transfer-epi-mono");
  Verdict& v = c.verdict;
  guarded(v, "transfer-epi-mono", [&] {
    SchemeWorkbench w(transfer_scheme(TransferBase::EpiMono, o.max_size), o.max_size, 3);
    LaxStructure s(w.scheme_ptr());
    v.absorb(build_monad_data(s, w));
    v.absorb(build_comonad_data(s, w));
    v.absorb(check_lax_monad_laws(s, w));
    v.absorb(check_lax_comonad_laws(s, w));
    v.absorb(check_distributivity_law(s, w));
    v.absorb(check_lawfs_implies_lfwfs(s, w));

    const PartialMap f = PartialMap::identity(std::min<std::uint32_t>(2, o.max_size));
    const PartialMap swap(f.dom_size(), f.dom_size(), f.dom_size() == 2 ? std::vector<std::int32_t>{1, 0}
                                                                         : std::vector<std::int32_t>{PartialMap::kUndefined});
    auto named = [&](const Verdict& r, const char* law) {
      for (const auto& m : r.failures) {
        if (m.find(law) != std::string::npos && m.find(f.to_string()) != std::string::npos) return true;
      }
      return false;
    };
    LaxStructure bad_theta(w.scheme_ptr());
    bad_theta.override_theta(f, swap);
    const Verdict t = check_lax_monad_laws(bad_theta, w);
    expect(v, !t.ok() && named(t, "associativity"), "corrupted Θ at " + f.to_string() + " not caught by associativity");
    LaxStructure bad_omega(w.scheme_ptr());
    bad_omega.override_omega(f, swap);
    const Verdict u = check_lax_comonad_laws(bad_omega, w);
    expect(v, !u.ok() && named(u, "counit"), "corrupted Ω at " + f.to_string() + " not caught by the counit law");
    v.detail["controls"] = {{"theta", t.failure_count}, {"omega", u.failure_count}};
  });
  v.finish();
  return c;
}

Criterion criterion_pointed(const SuiteOptions& o) {
  Criterion c = make(8, "pointed classes by complement and by predicate");
  Verdict& v = c.verdict;
  guarded(v, "pointed", [&] {
    auto par = shared_par(o.max_size);
    const Universe u = whole_universe(par->category(), par_label(o.max_size));
    const PointedClasses pc = compute_pointed_classes(par->category(), u, par.get());
    for (const auto& cls : pc.classes) {
      v.absorb(cls.verdict);
      v.detail[cls.name] = cls.complement.size();
    }
    v.absorb(pc.checks);
  });
  v.finish();
  return c;
}

Criterion criterion_conjectures(const SuiteOptions& o, const std::vector<CorpusEntry>& corpus) {
  Criterion c = make(9, "conjecture harness");
  Verdict& v = c.verdict;
  json rows = json::array();
  auto record = [&](const FinOrdCategory& cat, const Universe& u, Conjecture id, const char* want) {
    const ConjectureResult r = run_conjecture(cat, u, id);
    const std::string label = u.label + " " + std::string(conjecture_name(id));
    rows.push_back({{"universe", u.label}, {"conjecture", std::string(conjecture_name(id))}, {"verdict", r.verdict}});
    expect(v, r.revalidated, label + ": counterexample does not re-validate");
    if (want) expect(v, r.verdict == want, label + ": " + r.verdict + ", expected " + want);
  };
  guarded(v, par_label(o.max_size), [&] {
    auto par = shared_par(o.max_size);
    const Universe u = whole_universe(par->category(), par_label(o.max_size));
    record(par->category(), u, Conjecture::URightComplement, "degenerate-match");
    record(par->category(), u, Conjecture::VLeftComplement, "degenerate-match");
    record(par->category(), u, Conjecture::LiLeftComplement, nullptr);
  });
  for (const auto& e : corpus) {
    if (!e.cat || e.cat->is_discrete()) continue;
    guarded(v, e.name, [&] {
      const Universe u = whole_universe(*e.cat, e.name);
      for (Conjecture id : all_conjectures()) record(*e.cat, u, id, nullptr);
    });
  }
  v.detail["runs"] = std::move(rows);
  v.finish();
  return c;
}

Criterion criterion_restrict(const SuiteOptions& o) {
  Criterion c = make(10, "restriction of transfer-mono-epi to total maps");
  Verdict& v = c.verdict;
  guarded(v, "transfer-mono-epi", [&] {
    SchemeWorkbench w(transfer_scheme(TransferBase::MonoEpi, o.max_size), o.max_size, 1);
    const TotalCategory t(w.par().max_size(), o.max_size);
    const RestrictedClasses rc = total_classes(t, w, derive_classes(w));
    expect(v, rc.left_match == "injective totals", "restricted left class is " + rc.left_match);
    expect(v, rc.right_match == "surjective totals", "restricted right class is " + rc.right_match);
    v.absorb(check_total_fillers(t, w, rc));
    v.absorb(check_totalise(w));
    v.absorb(check_restricted_wfs(t, w, rc));
  });
  v.finish();
  return c;
}

std::vector<Criterion> run_suite(const SuiteOptions& o) {
  const auto corpus = load_corpus(o.corpus);
  std::vector<Criterion> out;
  out.push_back(criterion_category_laws(o));
  out.push_back(criterion_self_orthogonal(o, corpus));
  out.push_back(criterion_adjunctions(o));
  out.push_back(criterion_domain_total(o));
  out.push_back(criterion_trivial(o));
  out.push_back(criterion_transfer(o));
  out.push_back(criterion_monad(o));
  out.push_back(criterion_pointed(o));
  out.push_back(criterion_conjectures(o, corpus));
  out.push_back(criterion_restrict(o));
  return out;
}

json suite_json(const SuiteOptions& o, const std::vector<Criterion>& cs) {
  json j;
  j["max_size"] = o.max_size;
  json arr = json::array();
  bool ok = true;
  for (const auto& c : cs) {
    json e = c.verdict.to_json();
    e["id"] = c.id;
    arr.push_back(std::move(e));
    ok = ok && c.verdict.ok();
  }
  j["criteria"] = std::move(arr);
  j["verdict"] = ok ? "pass" : "fail";
  return j;
}

}  // namespace laxfact
