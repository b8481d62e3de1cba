#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "laxfact/ordcat.hpp"
#include "laxfact/verdict.hpp"

namespace laxfact {

struct CorpusEntry {
  std::string name;  // file name
  std::optional<FinOrdCategory> cat;
  std::string problem;  // load or validation failure; empty when usable
};

// Every *.json under dir, sorted by file name, loaded and validated.
std::vector<CorpusEntry> load_corpus(const std::filesystem::path& dir);

struct SuiteOptions {
  std::uint32_t max_size = 2;
  std::filesystem::path corpus;
};

struct Criterion {
  int id = 0;
  std::string title;
  Verdict verdict;
};

Criterion criterion_category_laws(const SuiteOptions& o);
Criterion criterion_self_orthogonal(const SuiteOptions& o, const std::vector<CorpusEntry>& corpus);
Criterion criterion_adjunctions(const SuiteOptions& o);
Criterion criterion_domain_total(const SuiteOptions& o);
Criterion criterion_trivial(const SuiteOptions& o);
Criterion criterion_transfer(const SuiteOptions& o);
Criterion criterion_monad(const SuiteOptions& o);
Criterion criterion_pointed(const SuiteOptions& o);
Criterion criterion_conjectures(const SuiteOptions& o, const std::vector<CorpusEntry>& corpus);
Criterion criterion_restrict(const SuiteOptions& o);

// Criteria 1-10 in order.
std::vector<Criterion> run_suite(const SuiteOptions& o);
nlohmann::json suite_json(const SuiteOptions& o, const std::vector<Criterion>& cs);

}  // namespace laxfact
