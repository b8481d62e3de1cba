#include "laxfact/ordcat.hpp"

#include <cstdlib>
#include <string>

#include "laxfact/errors.hpp"

namespace laxfact {

std::size_t morphism_cap() {
  if (const char* env = std::getenv("LAXFACT_CAP"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (end != nullptr && *end == '\0' && v > 0) return static_cast<std::size_t>(v);
  }
  return 10000;
}

std::size_t ValidationReport::structural_count() const noexcept {
  std::size_t n = 0;
  for (const auto& v : violations) n += v.law == "structural" ? 1 : 0;
  return n;
}

std::vector<Bits> reflexive_transitive_closure(std::vector<Bits> rows) {
  const std::size_t n = rows.size();
  for (std::size_t i = 0; i < n; ++i) rows[i].set(i);
  // Warshall: row i absorbs row k whenever i reaches k.
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (i != k && rows[i].test(k)) rows[i] |= rows[k];
    }
  }
  return rows;
}

FinOrdCategory FinOrdCategory::skeleton(const CategoryData& shape) {
  const std::size_t cap = morphism_cap();
  if (shape.morphisms.size() > cap) {
    throw ResourceError("category has " + std::to_string(shape.morphisms.size()) +
                        " morphisms, cap is " + std::to_string(cap));
  }

  FinOrdCategory c;
  const std::size_t nobj = shape.objects.size();
  const std::size_t nmor = shape.morphisms.size();
  c.object_names_ = shape.objects;
  for (std::size_t a = 0; a < nobj; ++a) {
    c.obj_by_name_.emplace(shape.objects[a], ObjId{static_cast<std::uint32_t>(a)});
  }

  c.mor_names_.reserve(nmor);
  c.mor_dom_.reserve(nmor);
  c.mor_cod_.reserve(nmor);
  c.homs_.assign(nobj * nobj, {});
  c.out_.assign(nobj, {});
  c.local_.assign(nmor, 0);
  c.out_index_.assign(nmor, 0);
  for (std::size_t i = 0; i < nmor; ++i) {
    const auto& m = shape.morphisms[i];
    const MorId id{static_cast<std::uint32_t>(i)};
    c.mor_names_.push_back(m.name);
    c.mor_dom_.push_back(ObjId{m.dom});
    c.mor_cod_.push_back(ObjId{m.cod});
    c.by_name_.emplace(m.name, id);
    auto& hom = c.homs_[m.dom * nobj + m.cod];
    c.local_[i] = hom.size();
    hom.push_back(id);
    c.out_index_[i] = c.out_[m.dom].size();
    c.out_[m.dom].push_back(id);
  }

  c.identities_.assign(nobj, std::nullopt);
  for (std::size_t a = 0; a < nobj; ++a) {
    const auto slot = a < shape.identities.size() ? shape.identities[a] : std::nullopt;
    if (!slot) {
      c.structural_.push_back("object " + shape.objects[a] + " has no identity");
      continue;
    }
    const auto& m = shape.morphisms[*slot];
    if (m.dom != a || m.cod != a) {
      c.structural_.push_back("identity " + m.name + " of " + shape.objects[a] +
                              " is not an endomorphism of it");
      continue;
    }
    c.identities_[a] = MorId{*slot};
  }

  c.row_start_.assign(nmor, 0);
  std::size_t offset = 0;
  for (std::size_t i = 0; i < nmor; ++i) {
    c.row_start_[i] = offset;
    offset += c.out_[c.mor_cod_[i].index].size();
  }
  c.composition_.assign(offset, kNone);

  c.up_.resize(nmor);
  for (std::size_t i = 0; i < nmor; ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    c.up_[i] = Bits(c.hom(c.dom(f), c.cod(f)).size());
  }
  return c;
}

namespace {

std::string type_of(const FinOrdCategory& c, MorId f) {
  return c.object_name(c.dom(f)) + "->" + c.object_name(c.cod(f));
}

}  // namespace

FinOrdCategory FinOrdCategory::build(const CategoryData& data, OrderMode mode) {
  FinOrdCategory c = skeleton(data);
  c.order_mode_ = mode;

  for (const auto& e : data.compose) {
    const MorId g{e.g}, f{e.f}, gf{e.gf};
    if (c.cod(f) != c.dom(g)) {
      c.structural_.push_back("composite listed for non-composable pair (" + c.name(g) + ", " +
                              c.name(f) + ")");
      continue;
    }
    if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
      c.structural_.push_back("composite " + c.name(g) + "∘" + c.name(f) + " = " + c.name(gf) +
                              " has type " + type_of(c, gf) + ", expected " +
                              c.object_name(c.dom(f)) + "->" + c.object_name(c.cod(g)));
    }
    auto& slot = c.composition_[c.row_start_[f.index] + c.out_index_[g.index]];
    if (slot != kNone && slot != gf.index) {
      c.structural_.push_back("conflicting composites for " + c.name(g) + "∘" + c.name(f));
      continue;
    }
    slot = gf.index;
  }

  for (std::size_t i = 0; i < c.morphism_count(); ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    for (MorId g : c.out(c.cod(f))) {
      if (c.composition_[c.row_start_[i] + c.out_index_[g.index]] == kNone) {
        c.structural_.push_back("missing composite " + c.name(g) + "∘" + c.name(f));
      }
    }
  }

  for (const auto& p : data.leq) {
    const MorId lo{p.lower}, hi{p.upper};
    if (!c.parallel(lo, hi)) {
      c.structural_.push_back("order pair (" + c.name(lo) + ", " + c.name(hi) +
                              ") relates non-parallel morphisms");
      continue;
    }
    c.up_[lo.index].set(c.local_[hi.index]);
  }

  if (mode == OrderMode::Closure) {
    for (const auto& hom : c.homs_) {
      std::vector<Bits> rows;
      rows.reserve(hom.size());
      for (MorId f : hom) rows.push_back(c.up_[f.index]);
      rows = reflexive_transitive_closure(std::move(rows));
      for (std::size_t i = 0; i < hom.size(); ++i) c.up_[hom[i].index] = rows[i];
    }
    for (const auto& hom : c.homs_) {
      for (std::size_t i = 0; i < hom.size(); ++i) {
        for (std::size_t j = i + 1; j < hom.size(); ++j) {
          if (!c.up_[hom[i].index].test(j) || !c.up_[hom[j].index].test(i)) continue;
          std::size_t line = 0;
          for (const auto& p : data.leq) {
            if ((p.lower == hom[i].index && p.upper == hom[j].index) ||
                (p.lower == hom[j].index && p.upper == hom[i].index)) {
              line = p.line;
              break;
            }
          }
          throw FormatError("order is not antisymmetric: " + c.name(hom[i]) + " and " +
                                c.name(hom[j]) + " are mutually below each other",
                            line);
        }
      }
    }
  }

  c.finish_order();
  return c;
}

FinOrdCategory FinOrdCategory::from_functions(const CategoryData& shape, const ComposeFn& compose,
                                              const LeqFn& leq) {
  FinOrdCategory c = skeleton(shape);
  c.order_mode_ = OrderMode::AsGiven;
  for (std::size_t i = 0; i < c.morphism_count(); ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    for (MorId g : c.out(c.cod(f))) {
      const MorId gf = compose(g, f);
      if (c.dom(gf) != c.dom(f) || c.cod(gf) != c.cod(g)) {
        c.structural_.push_back("composite " + c.name(g) + "∘" + c.name(f) + " has type " +
                                type_of(c, gf));
      }
      c.composition_[c.row_start_[i] + c.out_index_[g.index]] = gf.index;
    }
  }
  for (const auto& hom : c.homs_) {
    for (MorId f : hom) {
      for (MorId g : hom) {
        if (leq(f, g)) c.up_[f.index].set(c.local_[g.index]);
      }
    }
  }
  c.finish_order();
  return c;
}

void FinOrdCategory::finish_order() {
  down_.clear();
  down_.reserve(morphism_count());
  for (std::size_t i = 0; i < morphism_count(); ++i) down_.emplace_back(up_[i].size());
  discrete_ = true;
  for (const auto& hom : homs_) {
    for (std::size_t i = 0; i < hom.size(); ++i) {
      const Bits& row = up_[hom[i].index];
      row.for_each([&](std::size_t j) {
        down_[hom[j].index].set(i);
        if (j != i) discrete_ = false;
      });
    }
  }
}

std::optional<MorId> FinOrdCategory::find(std::string_view name) const {
  if (auto it = by_name_.find(std::string(name)); it != by_name_.end()) return it->second;
  return std::nullopt;
}

std::optional<ObjId> FinOrdCategory::find_object(std::string_view name) const {
  if (auto it = obj_by_name_.find(std::string(name)); it != obj_by_name_.end()) return it->second;
  return std::nullopt;
}

MorId FinOrdCategory::identity(ObjId a) const {
  if (!identities_[a.index]) throw ContractViolation("object " + object_name(a) + " has no identity");
  return *identities_[a.index];
}

std::optional<MorId> FinOrdCategory::try_compose(MorId g, MorId f) const noexcept {
  if (cod(f) != dom(g)) return std::nullopt;
  const std::uint32_t v = composition_[row_start_[f.index] + out_index_[g.index]];
  if (v == kNone) return std::nullopt;
  return MorId{v};
}

MorId FinOrdCategory::compose(MorId g, MorId f) const {
  if (cod(f) != dom(g)) {
    throw ContractViolation("compose(" + name(g) + ", " + name(f) + "): cod(" + name(f) +
                            ") != dom(" + name(g) + ")");
  }
  const std::uint32_t v = composition_[row_start_[f.index] + out_index_[g.index]];
  if (v == kNone) throw ContractViolation("no composite for " + name(g) + "∘" + name(f));
  return MorId{v};
}

bool FinOrdCategory::leq(MorId f, MorId g) const {
  if (!parallel(f, g)) {
    throw ContractViolation("leq(" + name(f) + ", " + name(g) + ") on non-parallel morphisms");
  }
  return leq_unchecked(f, g);
}

FinOrdCategory FinOrdCategory::reversed_order() const {
  FinOrdCategory r = *this;
  std::swap(r.up_, r.down_);
  return r;
}

CategoryData FinOrdCategory::to_data() const {
  CategoryData d;
  d.objects = object_names_;
  for (std::size_t i = 0; i < morphism_count(); ++i) {
    d.morphisms.push_back({mor_names_[i], mor_dom_[i].index, mor_cod_[i].index});
  }
  for (const auto& id : identities_) {
    d.identities.push_back(id ? std::optional<std::uint32_t>(id->index) : std::nullopt);
  }
  for (std::size_t i = 0; i < morphism_count(); ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    for (MorId g : out(cod(f))) {
      if (auto gf = try_compose(g, f)) d.compose.push_back({g.index, f.index, gf->index, 0});
    }
  }
  for (const auto& hom : homs_) {
    for (std::size_t i = 0; i < hom.size(); ++i) {
      up_[hom[i].index].for_each([&](std::size_t j) {
        if (j != i) d.leq.push_back({hom[i].index, hom[j].index, 0});
      });
    }
  }
  return d;
}

ValidationReport validate_category(const FinOrdCategory& c) {
  ValidationReport report;
  auto add = [&](std::string law, std::string message, std::vector<std::string> witnesses) {
    report.violations.push_back({std::move(law), std::move(message), std::move(witnesses)});
  };

  for (const auto& issue : c.structural_issues()) add("structural", issue, {});

  const std::size_t nmor = c.morphism_count();
  for (std::size_t i = 0; i < nmor; ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    if (c.has_identity(c.cod(f))) {
      if (auto l = c.try_compose(c.identity(c.cod(f)), f); l && *l != f) {
        add("identity", "id∘f != f at f = " + c.name(f), {c.name(f)});
      }
    }
    if (c.has_identity(c.dom(f))) {
      if (auto r = c.try_compose(f, c.identity(c.dom(f))); r && *r != f) {
        add("identity", "f∘id != f at f = " + c.name(f), {c.name(f)});
      }
    }
  }

  for (std::size_t i = 0; i < nmor; ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    for (MorId g : c.out(c.cod(f))) {
      const auto gf = c.try_compose(g, f);
      if (!gf) continue;
      for (MorId h : c.out(c.cod(g))) {
        const auto hg = c.try_compose(h, g);
        if (!hg) continue;
        const auto left = c.try_compose(h, *gf);
        const auto right = c.try_compose(*hg, f);
        if (left && right && *left != *right) {
          add("associativity",
              "h∘(g∘f) != (h∘g)∘f at (h, g, f) = (" + c.name(h) + ", " + c.name(g) + ", " +
                  c.name(f) + ")",
              {c.name(h), c.name(g), c.name(f)});
        }
      }
    }
  }

  for (std::size_t a = 0; a < c.object_count(); ++a) {
    for (std::size_t b = 0; b < c.object_count(); ++b) {
      const auto hom = c.hom(ObjId{static_cast<std::uint32_t>(a)}, ObjId{static_cast<std::uint32_t>(b)});
      for (std::size_t i = 0; i < hom.size(); ++i) {
        if (!c.leq_unchecked(hom[i], hom[i])) {
          add("order-reflexive", "order not reflexive at " + c.name(hom[i]), {c.name(hom[i])});
        }
        for (std::size_t j = 0; j < hom.size(); ++j) {
          if (i == j || !c.leq_unchecked(hom[i], hom[j])) continue;
          if (i < j && c.leq_unchecked(hom[j], hom[i])) {
            add("order-antisymmetric",
                "order not antisymmetric at (" + c.name(hom[i]) + ", " + c.name(hom[j]) + ")",
                {c.name(hom[i]), c.name(hom[j])});
          }
          for (std::size_t k = 0; k < hom.size(); ++k) {
            if (c.leq_unchecked(hom[j], hom[k]) && !c.leq_unchecked(hom[i], hom[k])) {
              add("order-transitive",
                  "order not transitive at (" + c.name(hom[i]) + ", " + c.name(hom[j]) + ", " +
                      c.name(hom[k]) + ")",
                  {c.name(hom[i]), c.name(hom[j]), c.name(hom[k])});
            }
          }
        }
      }
    }
  }

  // Monotonicity: f ≤ f' and g ≤ g' imply g∘f ≤ g'∘f'.
  for (std::size_t i = 0; i < nmor; ++i) {
    const MorId f{static_cast<std::uint32_t>(i)};
    const auto hom_ab = c.hom(c.dom(f), c.cod(f));
    c.up_set(f).for_each([&](std::size_t fi) {
      const MorId f2 = hom_ab[fi];
      for (std::size_t b2 = 0; b2 < c.object_count(); ++b2) {
        const auto hom_bc = c.hom(c.cod(f), ObjId{static_cast<std::uint32_t>(b2)});
        for (MorId g : hom_bc) {
          const auto gf = c.try_compose(g, f);
          if (!gf) continue;
          c.up_set(g).for_each([&](std::size_t gi) {
            const MorId g2 = hom_bc[gi];
            const auto g2f2 = c.try_compose(g2, f2);
            if (!g2f2 || !c.parallel(*gf, *g2f2)) return;
            if (!c.leq_unchecked(*gf, *g2f2)) {
              add("monotonicity",
                  "composition not monotone: " + c.name(f) + " ≤ " + c.name(f2) + ", " +
                      c.name(g) + " ≤ " + c.name(g2) + " but g∘f ≰ g'∘f'",
                  {c.name(f), c.name(f2), c.name(g), c.name(g2)});
            }
          });
        }
      }
    });
  }

  return report;
}

}  // namespace laxfact
