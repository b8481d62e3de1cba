#include "laxfact/parmap.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

#include "laxfact/errors.hpp"

namespace laxfact {

PartialMap::PartialMap(std::uint32_t dom_size, std::uint32_t cod_size, std::vector<std::int32_t> values)
    : dom_size_(dom_size), cod_size_(cod_size), values_(std::move(values)) {
  if (values_.size() != dom_size_) {
    throw ContractViolation("partial map needs " + std::to_string(dom_size_) + " entries, got " +
                            std::to_string(values_.size()));
  }
  for (std::int32_t v : values_) {
    if (v != kUndefined && (v < 0 || static_cast<std::uint32_t>(v) >= cod_size_)) {
      throw ContractViolation("partial map entry " + std::to_string(v) + " out of range for codomain size " +
                              std::to_string(cod_size_));
    }
  }
}

PartialMap PartialMap::identity(std::uint32_t size) {
  std::vector<std::int32_t> v(size);
  for (std::uint32_t i = 0; i < size; ++i) v[i] = static_cast<std::int32_t>(i);
  return PartialMap(size, size, std::move(v));
}

PartialMap PartialMap::zero(std::uint32_t dom_size, std::uint32_t cod_size) {
  return PartialMap(dom_size, cod_size, std::vector<std::int32_t>(dom_size, kUndefined));
}

std::vector<std::uint32_t> PartialMap::domain() const {
  std::vector<std::uint32_t> d;
  for (std::uint32_t i = 0; i < dom_size_; ++i) {
    if (defined(i)) d.push_back(i);
  }
  return d;
}

std::uint32_t PartialMap::domain_size() const noexcept {
  return static_cast<std::uint32_t>(std::count_if(values_.begin(), values_.end(), [](std::int32_t v) { return v != kUndefined; }));
}

bool PartialMap::is_total() const noexcept { return domain_size() == dom_size_; }

bool PartialMap::is_zero() const noexcept { return domain_size() == 0; }

bool PartialMap::is_injective_component() const noexcept {
  std::vector<bool> hit(cod_size_, false);
  for (std::int32_t v : values_) {
    if (v == kUndefined) continue;
    if (hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = true;
  }
  return true;
}

bool PartialMap::is_surjective_component() const noexcept {
  std::vector<bool> hit(cod_size_, false);
  for (std::int32_t v : values_) {
    if (v != kUndefined) hit[static_cast<std::size_t>(v)] = true;
  }
  return std::all_of(hit.begin(), hit.end(), [](bool b) { return b; });
}

std::uint64_t PartialMap::lex_rank() const noexcept {
  std::uint64_t r = 0;
  for (std::int32_t v : values_) r = r * (cod_size_ + 1) + static_cast<std::uint64_t>(v + 1);
  return r;
}

std::string PartialMap::to_string() const {
  std::ostringstream out;
  out << dom_size_ << "⇀" << cod_size_ << " [";
  for (std::uint32_t i = 0; i < dom_size_; ++i) {
    if (i) out << ",";
    if (defined(i)) {
      out << values_[i];
    } else {
      out << "⊥";
    }
  }
  out << "]";
  return out.str();
}

PartialMap compose_partial(const PartialMap& g, const PartialMap& f) {
  if (f.cod_size() != g.dom_size()) {
    throw ContractViolation("compose_partial: " + g.to_string() + " after " + f.to_string());
  }
  std::vector<std::int32_t> v(f.dom_size(), PartialMap::kUndefined);
  for (std::uint32_t i = 0; i < f.dom_size(); ++i) {
    if (f.defined(i)) v[i] = g(static_cast<std::uint32_t>(f(i)));
  }
  return PartialMap(f.dom_size(), g.cod_size(), std::move(v));
}

bool restriction_leq(const PartialMap& f, const PartialMap& g) {
  if (f.dom_size() != g.dom_size() || f.cod_size() != g.cod_size()) {
    throw ContractViolation("restriction_leq on non-parallel maps " + f.to_string() + ", " + g.to_string());
  }
  for (std::uint32_t i = 0; i < f.dom_size(); ++i) {
    if (f.defined(i) && f(i) != g(i)) return false;
  }
  return true;
}

std::vector<PartialMap> enumerate_partial_maps(std::uint32_t m, std::uint32_t n) {
  const std::size_t cap = morphism_cap();
  std::size_t count = 1;
  for (std::uint32_t i = 0; i < m; ++i) {
    count *= n + 1;
    if (count > cap) {
      throw ResourceError("enumerating " + std::to_string(m) + "⇀" + std::to_string(n) +
                          " exceeds the morphism cap " + std::to_string(cap));
    }
  }
  std::vector<PartialMap> out;
  out.reserve(count);
  std::vector<std::int32_t> v(m, PartialMap::kUndefined);
  for (std::size_t k = 0; k < count; ++k) {
    out.emplace_back(m, n, v);
    // odometer increment, last position fastest
    for (std::size_t pos = m; pos-- > 0;) {
      if (v[pos] + 1 < static_cast<std::int32_t>(n)) {
        ++v[pos];
        break;
      }
      v[pos] = PartialMap::kUndefined;
    }
  }
  return out;
}

bool is_adjoint_pair(const PartialMap& f, const PartialMap& g) {
  if (f.dom_size() != g.cod_size() || f.cod_size() != g.dom_size()) return false;
  return restriction_leq(PartialMap::identity(f.dom_size()), compose_partial(g, f)) &&
         restriction_leq(compose_partial(f, g), PartialMap::identity(f.cod_size()));
}

std::optional<PartialMap> adjunction_partner(const PartialMap& f) {
  if (!f.is_total() || !f.is_injective_component()) return std::nullopt;
  std::vector<std::int32_t> inv(f.cod_size(), PartialMap::kUndefined);
  for (std::uint32_t a = 0; a < f.dom_size(); ++a) inv[static_cast<std::size_t>(f(a))] = static_cast<std::int32_t>(a);
  return PartialMap(f.cod_size(), f.dom_size(), std::move(inv));
}

std::pair<PartialMap, PartialMap> reflect_adjunction(const PartialMap& f, const PartialMap& g) {
  if (!is_adjoint_pair(f, g)) {
    throw ContractViolation("reflect_adjunction: " + f.to_string() + " is not left adjoint to " + g.to_string());
  }
  const std::vector<std::uint32_t> dg = g.domain();
  const auto k = static_cast<std::uint32_t>(dg.size());
  auto position = [&](std::int32_t b) {
    const auto it = std::lower_bound(dg.begin(), dg.end(), static_cast<std::uint32_t>(b));
    if (it == dg.end() || *it != static_cast<std::uint32_t>(b)) {
      throw std::logic_error("reflect_adjunction: image of f leaves D_g");
    }
    return static_cast<std::int32_t>(it - dg.begin());
  };
  std::vector<std::int32_t> through(f.dom_size());
  for (std::uint32_t a = 0; a < f.dom_size(); ++a) through[a] = position(f(a));
  std::vector<std::int32_t> back(k);
  for (std::uint32_t j = 0; j < k; ++j) back[j] = g(dg[j]);
  return {PartialMap(f.dom_size(), k, std::move(through)), PartialMap(k, g.cod_size(), std::move(back))};
}

std::string par_morphism_name(const PartialMap& f) {
  return "p" + std::to_string(f.dom_size()) + "_" + std::to_string(f.cod_size()) + "_" + std::to_string(f.lex_rank());
}

ParCategory ParCategory::build(std::uint32_t max_size) {
  if (max_size > kHardCap) {
    throw ResourceError("Par universe size " + std::to_string(max_size) + " exceeds the hard cap " +
                        std::to_string(kHardCap));
  }
  const std::uint32_t objects = max_size + 1;
  CategoryData shape;
  std::vector<PartialMap> maps;
  std::vector<std::uint32_t> offsets(objects * objects, 0);
  for (std::uint32_t a = 0; a < objects; ++a) shape.objects.push_back(std::to_string(a));

  std::size_t total = 0;
  for (std::uint32_t m = 0; m < objects; ++m) {
    std::size_t row = 1;
    for (std::uint32_t n = 0; n < objects; ++n) {
      row = 1;
      for (std::uint32_t i = 0; i < m; ++i) row *= n + 1;
      total += row;
    }
  }
  if (total > morphism_cap()) {
    throw ResourceError("Par≤" + std::to_string(max_size) + " has " + std::to_string(total) +
                        " morphisms, cap is " + std::to_string(morphism_cap()));
  }

  for (std::uint32_t m = 0; m < objects; ++m) {
    for (std::uint32_t n = 0; n < objects; ++n) {
      offsets[m * objects + n] = static_cast<std::uint32_t>(maps.size());
      for (auto& f : enumerate_partial_maps(m, n)) {
        shape.morphisms.push_back({par_morphism_name(f), m, n});
        maps.push_back(std::move(f));
      }
    }
  }
  shape.identities.resize(objects);
  for (std::uint32_t a = 0; a < objects; ++a) {
    shape.identities[a] = offsets[a * objects + a] + static_cast<std::uint32_t>(PartialMap::identity(a).lex_rank());
  }

  auto lookup = [&](const PartialMap& f) {
    return MorId{offsets[f.dom_size() * objects + f.cod_size()] + static_cast<std::uint32_t>(f.lex_rank())};
  };
  FinOrdCategory cat = FinOrdCategory::from_functions(
      shape,
      [&](MorId g, MorId f) { return lookup(compose_partial(maps[g.index], maps[f.index])); },
      [&](MorId f, MorId g) { return restriction_leq(maps[f.index], maps[g.index]); });

  if (max_size <= kDefaultMaxSize) {
    const ValidationReport report = validate_category(cat);
    if (!report.ok()) {
      throw std::logic_error("internal error: Par≤" + std::to_string(max_size) +
                             " fails validation: " + report.violations.front().message);
    }
  }
  return ParCategory(std::move(cat), max_size, std::move(maps), std::move(offsets));
}

ObjId ParCategory::object(std::uint32_t size) const {
  if (size > max_size_) {
    throw ContractViolation("object of size " + std::to_string(size) + " outside Par≤" + std::to_string(max_size_));
  }
  return ObjId{size};
}

std::optional<MorId> ParCategory::find(const PartialMap& f) const noexcept {
  if (f.dom_size() > max_size_ || f.cod_size() > max_size_) return std::nullopt;
  const std::uint32_t objects = max_size_ + 1;
  return MorId{offsets_[f.dom_size() * objects + f.cod_size()] + static_cast<std::uint32_t>(f.lex_rank())};
}

MorId ParCategory::id_of(const PartialMap& f) const {
  if (auto id = find(f)) return *id;
  throw ContractViolation("map " + f.to_string() + " lies outside Par≤" + std::to_string(max_size_));
}

std::shared_ptr<const ParCategory> shared_par(std::uint32_t max_size) {
  static std::mutex mu;
  static std::map<std::uint32_t, std::shared_ptr<const ParCategory>> cache;
  std::lock_guard lock(mu);
  auto& slot = cache[max_size];
  if (!slot) slot = std::make_shared<const ParCategory>(ParCategory::build(max_size));
  return slot;
}

}  // namespace laxfact
