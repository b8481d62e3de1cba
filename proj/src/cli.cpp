#include "laxfact/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <memory>
#include <ostream>
#include <sstream>

#include "laxfact/catio.hpp"
#include "laxfact/errors.hpp"
#include "laxfact/laws.hpp"
#include "laxfact/parallel.hpp"
#include "laxfact/pointed.hpp"
#include "laxfact/restrict.hpp"
#include "laxfact/suite.hpp"

#ifndef LAXFACT_CORPUS_DIR
#define LAXFACT_CORPUS_DIR "corpus"
#endif

namespace laxfact {

namespace {

using nlohmann::json;

struct Common {
  unsigned jobs = 1;
  std::string report;
  bool json_out = false;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--jobs,-j", c.jobs, "worker threads")->check(CLI::Range(1U, 256U));
  sub->add_option("--report", c.report, "write the JSON report to this file");
  sub->add_flag("--json", c.json_out, "print the JSON report instead of the summary");
}

// A category named on the command line: a file, or par:N.
struct LoadedCategory {
  std::shared_ptr<const ParCategory> par;
  std::optional<FinOrdCategory> file;
  std::string label;

  const FinOrdCategory& cat() const { return par ? par->category() : *file; }
};

LoadedCategory load_named_category(const std::string& arg) {
  LoadedCategory lc;
  if (arg.rfind("par:", 0) == 0) {
    std::uint32_t n = 0;
    try {
      n = static_cast<std::uint32_t>(std::stoul(arg.substr(4)));
    } catch (const std::exception&) {
      throw CLI::ValidationError("--cat", "expected par:N, got " + arg);
    }
    lc.par = shared_par(n);
    lc.label = "Par≤" + std::to_string(n);
    return lc;
  }
  lc.file = load_category(arg);
  const ValidationReport r = validate_category(*lc.file);
  if (!r.ok()) {
    throw ContractViolation(arg + " is not a valid category (" + std::to_string(r.violations.size()) +
                            " violations; run validate)");
  }
  lc.label = std::filesystem::path(arg).filename().string();
  return lc;
}

std::optional<MorId> find_morphism(const FinOrdCategory& c, const std::string& name) {
  if (auto m = c.find(name)) return m;
  return std::nullopt;
}

MorId need_morphism(const FinOrdCategory& c, const std::string& name) {
  auto m = find_morphism(c, name);
  if (!m) throw CLI::ValidationError("no morphism named " + name);
  return *m;
}

Kind need_kind(const std::string& s) {
  auto k = parse_kind(s);
  if (!k) throw CLI::ValidationError("--kind", "expected lax, oplax or strict");
  return *k;
}

bool splits(const FinOrdCategory& c, MorId f, bool epi) {
  for (MorId g : c.hom(c.cod(f), c.dom(f))) {
    if (epi && c.compose(f, g) == c.identity(c.cod(f))) return true;
    if (!epi && c.compose(g, f) == c.identity(c.dom(f))) return true;
  }
  return false;
}

const char* const kNamedClasses[] = {"all",          "empty",         "identities",  "isos",
                                     "left-adjoints", "right-adjoints", "split-monos", "split-epis",
                                     "zero",         "total",         "injective",   "surjective",
                                     "total-injective"};

ClassReport named_class(const LoadedCategory& lc, const Universe& u, const std::string& name) {
  const FinOrdCategory& c = lc.cat();
  auto pred = [&](auto p) { return make_class(u, name, p); };
  auto par_only = [&](bool (*p)(const PartialMap&)) {
    if (!lc.par) throw CLI::ValidationError("--class", name + " needs --cat par:N");
    return make_class(u, name, [&](MorId f) { return p(lc.par->map(f)); });
  };
  if (name == "all") return all_class(u, name);
  if (name == "empty") return empty_class(u, name);
  if (name == "identities") return pred([&](MorId f) { return c.dom(f) == c.cod(f) && c.identity(c.dom(f)) == f; });
  if (name == "isos") return pred([&](MorId f) { return splits(c, f, true) && splits(c, f, false); });
  if (name == "left-adjoints") return pred([&](MorId f) { return find_adjoint_partner(c, f, Kind::Lax).has_value(); });
  if (name == "right-adjoints") return pred([&](MorId f) { return find_adjoint_partner(c, f, Kind::Oplax).has_value(); });
  if (name == "split-monos") return pred([&](MorId f) { return splits(c, f, false); });
  if (name == "split-epis") return pred([&](MorId f) { return splits(c, f, true); });
  if (name == "zero") return zero_class(c, u);
  if (name == "total") return par_only([](const PartialMap& f) { return f.is_total(); });
  if (name == "injective") return par_only([](const PartialMap& f) { return f.is_injective_component(); });
  if (name == "surjective") return par_only([](const PartialMap& f) { return f.is_surjective_component(); });
  if (name == "total-injective") {
    return par_only([](const PartialMap& f) { return f.is_total() && f.is_injective_component(); });
  }
  throw CLI::ValidationError("--class", "unknown class " + name);
}

// Either a named class or a JSON file {"name": ..., "members": [morphism names]}.
ClassReport load_class(const LoadedCategory& lc, const Universe& u, const std::string& arg) {
  if (!std::filesystem::exists(arg)) return named_class(lc, u, arg);
  std::ifstream in(arg);
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw FormatError(arg + ": " + e.what(), 0);
  }
  const json& list = j.is_array() ? j : j.value("members", json::array());
  if (!list.is_array()) throw FormatError(arg + ": members must be an array", 0);
  std::vector<MorId> ids;
  for (const auto& m : list) {
    if (!m.is_string()) throw FormatError(arg + ": member names must be strings", 0);
    const MorId id = need_morphism(lc.cat(), m.get<std::string>());
    if (!u.contains(id)) throw ContractViolation(m.get<std::string>() + " lies outside the universe");
    ids.push_back(id);
  }
  const std::string name = j.is_object() ? j.value("name", std::string("H")) : std::string("H");
  return make_class(u, name, [&](MorId f) { return std::find(ids.begin(), ids.end(), f) != ids.end(); });
}

bool resource_error_in(const json& j) {
  if (j.is_object()) {
    if (auto it = j.find("verdict"); it != j.end() && *it == "resource-error") return true;
    for (const auto& [k, v] : j.items()) {
      if (resource_error_in(v)) return true;
    }
  } else if (j.is_array()) {
    for (const auto& v : j) {
      if (resource_error_in(v)) return true;
    }
  }
  return false;
}

void write_report(const std::string& path, const json& j) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << j.dump(2) << '\n';
}

void summary_line(std::ostream& out, const Verdict& v) {
  out << v.name << ": " << outcome_name(v.outcome) << " (" << v.checked << " checked";
  if (v.failure_count) out << ", " << v.failure_count << " failed";
  out << ")\n";
  for (std::size_t i = 0; i < v.failures.size() && i < 5; ++i) out << "  " << v.failures[i] << '\n';
}

// Prints the summary or the JSON, writes --report, returns the exit code.
int finish(std::ostream& out, const Common& c, const json& j, const std::string& summary, bool ok) {
  if (!c.report.empty()) write_report(c.report, j);
  if (c.json_out) {
    out << j.dump(2) << '\n';
  } else {
    out << summary;
  }
  if (resource_error_in(j)) return 2;
  return ok ? 0 : 1;
}

std::string json_summary(const json& j, const char* key = "verdict") {
  std::ostringstream s;
  for (const auto& [k, v] : j.items()) {
    if (v.is_object() && v.contains(key)) {
      s << k << ": " << v[key].get<std::string>();
      if (v.contains("failure_count") && v["failure_count"].get<std::size_t>() > 0) {
        s << " (" << v["failure_count"] << " failed)";
      }
      s << '\n';
    }
  }
  if (j.contains(key) && j[key].is_string()) s << key << ": " << j[key].get<std::string>() << '\n';
  return s.str();
}

}  // namespace

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"laxfact: lax and oplax weak factorisation systems on finite Ord-enriched categories"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "help for every subcommand");

  std::function<int()> action;

  // validate
  Common c_validate;
  std::string validate_file;
  auto* validate = app.add_subcommand("validate", "check category and Ord-enrichment laws of a file");
  validate->add_option("file", validate_file, "category file")->required();
  add_common(validate, c_validate);
  validate->callback([&] {
    action = [&] {
      const FinOrdCategory cat = load_category(validate_file);
      const ValidationReport r = validate_category(cat);
      json j;
      j["file"] = std::filesystem::path(validate_file).filename().string();
      j["objects"] = cat.object_count();
      j["morphisms"] = cat.morphism_count();
      j["discrete"] = cat.is_discrete();
      json vs = json::array();
      std::ostringstream s;
      for (const auto& v : r.violations) {
        vs.push_back({{"law", v.law}, {"message", v.message}, {"witnesses", v.witnesses}});
        s << v.law << ": " << v.message << '\n';
      }
      j["violations"] = std::move(vs);
      j["verdict"] = r.ok() ? "pass" : "fail";
      s << j["file"].get<std::string>() << ": " << (r.ok() ? "valid" : std::to_string(r.violations.size()) + " violations")
        << '\n';
      return finish(out, c_validate, j, s.str(), r.ok());
    };
  });

  // par
  Common c_par;
  std::uint32_t par_n = 2;
  std::string par_out;
  auto* par = app.add_subcommand("par", "export Par≤N in the category file format");
  par->add_option("--max-size", par_n, "largest set size")->check(CLI::Range(0U, ParCategory::kHardCap));
  par->add_option("--out", par_out, "output file (default stdout)");
  add_common(par, c_par);
  par->callback([&] {
    action = [&] {
      const std::string text = export_category(shared_par(par_n)->category());
      if (par_out.empty()) {
        out << text;
      } else {
        std::ofstream f(par_out, std::ios::binary);
        if (!f) throw std::runtime_error("cannot write " + par_out);
        f << text;
        out << "Par≤" << par_n << ": " << shared_par(par_n)->category().morphism_count() << " morphisms written to "
            << par_out << '\n';
      }
      return 0;
    };
  });

  // ortho
  Common c_ortho;
  std::string ortho_cat, ortho_left, ortho_right, ortho_kind = "lax";
  auto* ortho = app.add_subcommand("ortho", "decide f ⫪ g, with a failing square when it does not hold");
  ortho->add_option("--cat", ortho_cat, "category file or par:N")->required();
  ortho->add_option("--left", ortho_left, "morphism f")->required();
  ortho->add_option("--right", ortho_right, "morphism g")->required();
  ortho->add_option("--kind", ortho_kind, "lax, oplax or strict");
  add_common(ortho, c_ortho);
  ortho->callback([&] {
    action = [&] {
      const Kind k = need_kind(ortho_kind);
      const LoadedCategory lc = load_named_category(ortho_cat);
      const FinOrdCategory& c = lc.cat();
      const MorId f = need_morphism(c, ortho_left);
      const MorId g = need_morphism(c, ortho_right);
      const Orthogonality orth(c, k);
      const auto bad = orth.failure(f, g);
      json j;
      j["category"] = lc.label;
      j["kind"] = std::string(kind_name(k));
      j["left"] = ortho_left;
      j["right"] = ortho_right;
      j["orthogonal"] = !bad;
      j["squares"] = all_squares(c, f, g, k).size();
      j["witness"] = bad ? square_json(c, *bad) : json(nullptr);
      j["verdict"] = bad ? "fail" : "pass";
      std::ostringstream s;
      s << ortho_left << (bad ? " is not " : " is ") << kind_name(k) << " orthogonal to " << ortho_right << '\n';
      if (bad) s << "  unfillable " << square_text(c, *bad) << '\n';
      return finish(out, c_ortho, j, s.str(), !bad);
    };
  });

  // complement
  Common c_comp;
  std::string comp_cat = "par:2", comp_class, comp_side = "left", comp_kind = "lax";
  auto* comp = app.add_subcommand("complement", "orthogonal complement of a class within the whole category");
  comp->add_option("--cat", comp_cat, "category file or par:N (default par:2)");
  std::string class_help = "JSON file with a members list, or one of:";
  for (const char* n : kNamedClasses) class_help += std::string(" ") + n;
  comp->add_option("--class", comp_class, class_help)->required();
  comp->add_option("--side", comp_side, "left or right")->check(CLI::IsMember({"left", "right"}));
  comp->add_option("--kind", comp_kind, "lax, oplax or strict");
  add_common(comp, c_comp);
  comp->callback([&] {
    action = [&] {
      const Kind k = need_kind(comp_kind);
      const LoadedCategory lc = load_named_category(comp_cat);
      const Universe u = whole_universe(lc.cat(), lc.label);
      const ClassReport h = load_class(lc, u, comp_class);
      const Orthogonality orth(lc.cat(), k);
      ClassReport r = comp_side == "left" ? left_complement(orth, h, u) : right_complement(orth, h, u);
      json j;
      j["category"] = lc.label;
      j["kind"] = std::string(kind_name(k));
      j["side"] = comp_side;
      j["class"] = h.to_json();
      j["complement"] = r.to_json();
      std::ostringstream s;
      s << comp_side << " " << kind_name(k) << " complement of " << h.name << " (" << h.size() << ") within "
        << lc.label << ": " << r.size() << " morphisms\n";
      for (const auto& n : r.names()) s << "  " << n << '\n';
      return finish(out, c_comp, j, s.str(), true);
    };
  });

  // scheme check
  Common c_scheme;
  std::string scheme_name;
  std::uint32_t scheme_n = 2;
  bool all_fillers = false;
  auto* scheme = app.add_subcommand("scheme", "factorisation scheme checks");
  scheme->require_subcommand(1);
  auto* scheme_check = scheme->add_subcommand("check", "section, K-laws, predistributivity, classes, lwfs");
  scheme_check->add_option("--scheme", scheme_name, "scheme name")->required()->check(CLI::IsMember(scheme_names()));
  scheme_check->add_option("--max-size", scheme_n, "universe Par≤N")->check(CLI::Range(0U, ParCategory::kHardCap));
  scheme_check->add_flag("--all-fillers", all_fillers, "try every choice of ρ_f and λ_g");
  add_common(scheme_check, c_scheme);
  scheme_check->callback([&] {
    action = [&] {
      SchemeWorkbench w(scheme_by_name(scheme_name, scheme_n), scheme_n, 3);
      bool ok = true;
      const json j = scheme_report(w, all_fillers, ok);
      return finish(out, c_scheme, j, json_summary(j), ok);
    };
  });

  // monad check
  Common c_monad;
  std::string monad_scheme = "transfer-epi-mono", monad_structure;
  std::uint32_t monad_n = 2;
  auto* monad = app.add_subcommand("monad", "lax monad and comonad structure");
  monad->require_subcommand(1);
  auto* monad_check = monad->add_subcommand("check", "monad, comonad, distributivity and lifting checks");
  monad_check->add_option("--scheme", monad_scheme, "scheme name")->check(CLI::IsMember(scheme_names()));
  monad_check->add_option("--max-size", monad_n, "universe Par≤N")->check(CLI::Range(0U, ParCategory::kHardCap));
  monad_check->add_option("--structure", monad_structure, "JSON file overriding Θ and Ω components")
      ->check(CLI::ExistingFile);
  add_common(monad_check, c_monad);
  monad_check->callback([&] {
    action = [&] {
      SchemeWorkbench w(scheme_by_name(monad_scheme, monad_n), monad_n, 3);
      LaxStructure s(w.scheme_ptr());
      if (!monad_structure.empty()) load_structure(s, monad_structure);
      bool ok = true;
      const json j = monad_report(s, w, ok);
      return finish(out, c_monad, j, json_summary(j), ok);
    };
  });

  // pointed report
  Common c_pointed;
  std::uint32_t pointed_n = 2;
  std::string pointed_cat;
  auto* pointed = app.add_subcommand("pointed", "classes of a pointed category");
  pointed->require_subcommand(1);
  auto* pointed_report = pointed->add_subcommand("report", "U, DD, DI, V, LI by complement and by predicate");
  pointed_report->add_option("--max-size", pointed_n, "Par≤N when no --cat")->check(CLI::Range(0U, ParCategory::kHardCap));
  pointed_report->add_option("--cat", pointed_cat, "category file or par:N");
  add_common(pointed_report, c_pointed);
  pointed_report->callback([&] {
    action = [&] {
      const LoadedCategory lc =
          load_named_category(pointed_cat.empty() ? "par:" + std::to_string(pointed_n) : pointed_cat);
      const Universe u = whole_universe(lc.cat(), lc.label);
      const PointedClasses pc = compute_pointed_classes(lc.cat(), u, lc.par.get());
      json j = pc.to_json();
      j["category"] = lc.label;
      std::ostringstream s;
      s << lc.label << ": " << pc.zero.size() << " zero maps\n";
      for (const auto& cls : pc.classes) summary_line(s, cls.verdict);
      summary_line(s, pc.checks);
      return finish(out, c_pointed, j, s.str(), pc.ok());
    };
  });

  // conjecture
  Common c_conj;
  std::string conj_id, conj_cat = "par:2";
  auto* conj = app.add_subcommand("conjecture", "compare a complement with its conjectured description");
  conj->add_option("--id", conj_id, "u-right-complement, v-left-complement, li-left-complement or all")->required();
  conj->add_option("--cat", conj_cat, "category file or par:N (default par:2)");
  add_common(conj, c_conj);
  conj->callback([&] {
    action = [&] {
      std::vector<Conjecture> ids;
      if (conj_id == "all") {
        ids = all_conjectures();
      } else if (auto id = parse_conjecture(conj_id)) {
        ids.push_back(*id);
      } else {
        throw CLI::ValidationError("--id", "unknown conjecture " + conj_id);
      }
      const LoadedCategory lc = load_named_category(conj_cat);
      const Universe u = whole_universe(lc.cat(), lc.label);
      json runs = json::array();
      bool ok = true;
      std::ostringstream s;
      for (Conjecture id : ids) {
        const ConjectureResult r = run_conjecture(lc.cat(), u, id);
        ok = ok && r.revalidated;
        s << conjecture_name(id) << " on " << lc.label << ": " << r.verdict;
        if (!r.revalidated) s << " (counterexample does not re-validate)";
        s << '\n';
        runs.push_back(r.report);
      }
      json j = ids.size() == 1 ? runs.front() : json{{"category", lc.label}, {"runs", runs}};
      Common c = c_conj;
      if (c.report.empty()) c.report = "conjecture-" + conj_id + ".json";
      s << "verdict written to " << c.report << '\n';
      return finish(out, c, j, s.str(), ok);
    };
  });

  // restrict
  Common c_restrict;
  std::string restrict_scheme = "transfer-mono-epi";
  std::uint32_t restrict_n = 2;
  auto* restrict_cmd = app.add_subcommand("restrict", "restrict a scheme's classes to total maps");
  restrict_cmd->add_option("--scheme", restrict_scheme, "scheme name")->check(CLI::IsMember(scheme_names()));
  restrict_cmd->add_option("--max-size", restrict_n, "universe Par≤N")->check(CLI::Range(0U, ParCategory::kHardCap));
  add_common(restrict_cmd, c_restrict);
  restrict_cmd->callback([&] {
    action = [&] {
      SchemeWorkbench w(scheme_by_name(restrict_scheme, restrict_n), restrict_n, 1);
      bool ok = true;
      const json j = restrict_report(w, ok);
      std::string s = json_summary(j);
      if (j.contains("classes")) {
        s = "L_F ∩ Tot: " + j["classes"]["left"]["match"].get<std::string>() + "\nR_F ∩ Tot: " +
            j["classes"]["right"]["match"].get<std::string>() + '\n' + s;
      }
      return finish(out, c_restrict, j, s, ok);
    };
  });

  // suite
  Common c_suite;
  SuiteOptions suite_opts;
  suite_opts.corpus = LAXFACT_CORPUS_DIR;
  std::string corpus_arg;
  auto* suite = app.add_subcommand("suite", "run the acceptance battery");
  suite->add_option("--max-size", suite_opts.max_size, "universe Par≤N")->check(CLI::Range(1U, 3U));
  suite->add_option("--corpus", corpus_arg, "directory of category files");
  add_common(suite, c_suite);
  suite->callback([&] {
    action = [&] {
      if (!corpus_arg.empty()) suite_opts.corpus = corpus_arg;
      const auto cs = run_suite(suite_opts);
      const json j = suite_json(suite_opts, cs);
      std::ostringstream s;
      bool ok = true;
      for (const auto& c : cs) {
        s << "criterion " << c.id << ": " << (c.verdict.ok() ? "PASS" : "FAIL") << " " << c.title << '\n';
        for (std::size_t i = 0; i < c.verdict.failures.size() && i < 5; ++i) s << "  " << c.verdict.failures[i] << '\n';
        ok = ok && c.verdict.ok();
      }
      return finish(out, c_suite, j, s.str(), ok);
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  const std::pair<const CLI::App*, const Common*> parsed[] = {
      {validate, &c_validate}, {par, &c_par},         {ortho, &c_ortho},         {comp, &c_comp},
      {scheme_check, &c_scheme}, {monad_check, &c_monad}, {pointed_report, &c_pointed}, {conj, &c_conj},
      {restrict_cmd, &c_restrict}, {suite, &c_suite}};
  for (const auto& [sub, c] : parsed) {
    if (sub->parsed()) set_jobs(c->jobs);
  }

  try {
    return action ? action() : 2;
  } catch (const CLI::ValidationError& e) {
    err << "laxfact: " << e.what() << '\n';
  } catch (const FormatError& e) {
    err << "laxfact: format error: " << e.what() << '\n';
  } catch (const ResourceError& e) {
    err << "laxfact: " << e.what() << '\n';
  } catch (const ContractViolation& e) {
    err << "laxfact: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "laxfact: " << e.what() << '\n';
  }
  return 2;
}

}  // namespace laxfact
