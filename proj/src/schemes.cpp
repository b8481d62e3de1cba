#include <algorithm>
#include <stdexcept>

#include "laxfact/errors.hpp"
#include "laxfact/factsys.hpp"

namespace laxfact {

namespace {

constexpr std::int32_t kBot = PartialMap::kUndefined;

std::int32_t rank_in(const std::vector<std::uint32_t>& sorted, std::int32_t x) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), static_cast<std::uint32_t>(x));
  if (it == sorted.end() || *it != static_cast<std::uint32_t>(x)) return kBot;
  return static_cast<std::int32_t>(it - sorted.begin());
}

std::vector<std::uint32_t> image_of(const PartialMap& f) {
  std::vector<std::uint32_t> im;
  for (std::int32_t y : f.values()) {
    if (y != kBot) im.push_back(static_cast<std::uint32_t>(y));
  }
  std::sort(im.begin(), im.end());
  im.erase(std::unique(im.begin(), im.end()), im.end());
  return im;
}

[[noreturn]] void not_a_square(const std::string& scheme, const MapSquare& s) {
  throw ContractViolation(scheme + ": K applied to a non-square (" + s.u.to_string() + ", " + s.v.to_string() +
                          ")");
}

class DomainTotal final : public FactorisationScheme {
 public:
  std::string name() const override { return "domain-total"; }
  Kind kind() const override { return Kind::Lax; }
  std::uint32_t mid_bound(std::uint32_t m, std::uint32_t) const override { return m; }

  Factorisation factor(const PartialMap& f) const override {
    const auto d = f.domain();
    const auto k = static_cast<std::uint32_t>(d.size());
    std::vector<std::int32_t> l(f.dom_size(), kBot), r(k);
    for (std::uint32_t j = 0; j < k; ++j) {
      l[d[j]] = static_cast<std::int32_t>(j);
      r[j] = f(d[j]);
    }
    return {PartialMap(f.dom_size(), k, std::move(l)), PartialMap(k, f.cod_size(), std::move(r))};
  }

  PartialMap kmap(const MapSquare& s) const override {
    const auto df = s.f.domain();
    const auto dg = s.g.domain();
    std::vector<std::int32_t> k(df.size(), kBot);
    for (std::size_t j = 0; j < df.size(); ++j) {
      const std::int32_t x = s.u(df[j]);
      if (x != kBot) k[j] = rank_in(dg, x);
    }
    return PartialMap(static_cast<std::uint32_t>(df.size()), static_cast<std::uint32_t>(dg.size()), std::move(k));
  }
};

class TrivialLeft final : public FactorisationScheme {
 public:
  explicit TrivialLeft(Kind k) : kind_(k) {}
  std::string name() const override { return "trivial-left"; }
  Kind kind() const override { return kind_; }
  std::uint32_t mid_bound(std::uint32_t, std::uint32_t n) const override { return n; }
  Factorisation factor(const PartialMap& f) const override { return {f, PartialMap::identity(f.cod_size())}; }
  PartialMap kmap(const MapSquare& s) const override { return s.v; }

 private:
  Kind kind_;
};

class TrivialRight final : public FactorisationScheme {
 public:
  explicit TrivialRight(Kind k) : kind_(k) {}
  std::string name() const override { return "trivial-right"; }
  Kind kind() const override { return kind_; }
  std::uint32_t mid_bound(std::uint32_t m, std::uint32_t) const override { return m; }
  Factorisation factor(const PartialMap& f) const override { return {PartialMap::identity(f.dom_size()), f}; }
  PartialMap kmap(const MapSquare& s) const override { return s.u; }

 private:
  Kind kind_;
};

// total φ: D_f → B of a partial map, as a map on |D_f| points
PartialMap total_component(const PartialMap& f) {
  const auto d = f.domain();
  std::vector<std::int32_t> v(d.size());
  for (std::size_t j = 0; j < d.size(); ++j) v[j] = f(d[j]);
  return PartialMap(static_cast<std::uint32_t>(d.size()), f.cod_size(), std::move(v));
}

class Transfer final : public FactorisationScheme {
 public:
  Transfer(TransferBase base, BaseFactoriser fac) : base_(base), fac_(std::move(fac)) {}

  std::string name() const override {
    return base_ == TransferBase::EpiMono ? "transfer-epi-mono" : "transfer-mono-epi";
  }
  Kind kind() const override { return Kind::Oplax; }
  std::uint32_t mid_bound(std::uint32_t m, std::uint32_t n) const override {
    return base_ == TransferBase::EpiMono ? std::min(m, n) : m + n;
  }

  Factorisation factor(const PartialMap& f) const override {
    const auto d = f.domain();
    const Factorisation em = fac_.factor(total_component(f));
    // ē = e∘σ_f^{-1} on D_f, undefined elsewhere
    std::vector<std::int32_t> l(f.dom_size(), kBot);
    for (std::size_t j = 0; j < d.size(); ++j) l[d[j]] = em.l(static_cast<std::uint32_t>(j));
    return {PartialMap(f.dom_size(), em.mid(), std::move(l)), em.r};
  }

  PartialMap kmap(const MapSquare& s) const override {
    return base_ == TransferBase::EpiMono ? kmap_image(s) : kmap_coproduct(s);
  }

 private:
  PartialMap kmap_image(const MapSquare& s) const {
    const auto imf = image_of(s.f);
    const auto img = image_of(s.g);
    std::vector<std::int32_t> k(imf.size(), kBot);
    for (std::size_t x = 0; x < imf.size(); ++x) {
      const std::int32_t y = s.v(imf[x]);
      if (y == kBot) continue;
      k[x] = rank_in(img, y);
      if (k[x] == kBot) not_a_square(name(), s);
    }
    return PartialMap(static_cast<std::uint32_t>(imf.size()), static_cast<std::uint32_t>(img.size()), std::move(k));
  }

  PartialMap kmap_coproduct(const MapSquare& s) const {
    const auto df = s.f.domain();
    const auto dg = s.g.domain();
    const auto kf = static_cast<std::uint32_t>(df.size()) + s.f.cod_size();
    const auto kg = static_cast<std::uint32_t>(dg.size()) + s.g.cod_size();
    std::vector<std::int32_t> k(kf, kBot);
    for (std::size_t j = 0; j < df.size(); ++j) {
      if (s.v(static_cast<std::uint32_t>(s.f(df[j]))) == kBot) continue;
      const std::int32_t x = s.u(df[j]);
      const std::int32_t r = x == kBot ? kBot : rank_in(dg, x);
      if (r == kBot) not_a_square(name(), s);
      k[j] = r;
    }
    for (std::uint32_t y = 0; y < s.f.cod_size(); ++y) {
      if (s.v.defined(y)) k[df.size() + y] = static_cast<std::int32_t>(dg.size()) + s.v(y);
    }
    return PartialMap(kf, kg, std::move(k));
  }

  TransferBase base_;
  BaseFactoriser fac_;
};

class Corrupted final : public FactorisationScheme {
 public:
  Corrupted(SchemePtr base, PartialMap target) : base_(std::move(base)), target_(std::move(target)) {}
  std::string name() const override { return base_->name() + "-corrupted"; }
  Kind kind() const override { return base_->kind(); }
  std::uint32_t mid_bound(std::uint32_t m, std::uint32_t n) const override { return base_->mid_bound(m, n); }
  Factorisation factor(const PartialMap& f) const override {
    Factorisation fz = base_->factor(f);
    if (f == target_) fz.l = PartialMap::zero(fz.l.dom_size(), fz.l.cod_size());
    return fz;
  }
  PartialMap kmap(const MapSquare& s) const override { return base_->kmap(s); }

 private:
  SchemePtr base_;
  PartialMap target_;
};

}  // namespace

MapSquare FactorisationScheme::eta(const PartialMap& f) const {
  const Factorisation fz = factor(f);
  return {f, fz.r, fz.l, PartialMap::identity(f.cod_size())};
}

MapSquare FactorisationScheme::epsilon(const PartialMap& f) const {
  const Factorisation fz = factor(f);
  return {fz.l, f, PartialMap::identity(f.dom_size()), fz.r};
}

MapSquare FactorisationScheme::lmap(const MapSquare& s) const {
  return {factor(s.f).l, factor(s.g).l, s.u, kmap(s)};
}

MapSquare FactorisationScheme::rmap(const MapSquare& s) const {
  return {factor(s.f).r, factor(s.g).r, kmap(s), s.v};
}

SchemePtr domain_total_scheme() { return std::make_shared<DomainTotal>(); }
SchemePtr trivial_left_scheme(Kind kind) { return std::make_shared<TrivialLeft>(kind); }
SchemePtr trivial_right_scheme(Kind kind) { return std::make_shared<TrivialRight>(kind); }

BaseFactoriser image_factoriser() {
  BaseFactoriser b;
  b.name = "image";
  b.e_name = "surjections";
  b.m_name = "injections";
  b.in_e = [](const PartialMap& e) { return e.is_total() && e.is_surjective_component(); };
  b.in_m = [](const PartialMap& m) { return m.is_total() && m.is_injective_component(); };
  b.factor = [](const PartialMap& phi) {
    const auto im = image_of(phi);
    std::vector<std::int32_t> e(phi.dom_size()), m(im.size());
    for (std::uint32_t a = 0; a < phi.dom_size(); ++a) e[a] = rank_in(im, phi(a));
    for (std::size_t x = 0; x < im.size(); ++x) m[x] = static_cast<std::int32_t>(im[x]);
    const auto k = static_cast<std::uint32_t>(im.size());
    return Factorisation{PartialMap(phi.dom_size(), k, std::move(e)), PartialMap(k, phi.cod_size(), std::move(m))};
  };
  return b;
}

BaseFactoriser coproduct_factoriser() {
  BaseFactoriser b;
  b.name = "coproduct";
  b.e_name = "injections";
  b.m_name = "surjections";
  b.in_e = [](const PartialMap& e) { return e.is_total() && e.is_injective_component(); };
  b.in_m = [](const PartialMap& m) { return m.is_total() && m.is_surjective_component(); };
  b.factor = [](const PartialMap& phi) {
    const std::uint32_t d = phi.dom_size(), n = phi.cod_size();
    std::vector<std::int32_t> e(d), m(d + n);
    for (std::uint32_t a = 0; a < d; ++a) {
      e[a] = static_cast<std::int32_t>(a);
      m[a] = phi(a);
    }
    for (std::uint32_t y = 0; y < n; ++y) m[d + y] = static_cast<std::int32_t>(y);
    return Factorisation{PartialMap(d, d + n, std::move(e)), PartialMap(d + n, n, std::move(m))};
  };
  return b;
}

Verdict check_stability(const BaseFactoriser& base, std::uint32_t n) {
  Verdict v("stability of " + base.e_name + " under pullback along injections");
  for (std::uint32_t x = 0; x <= n; ++x) {
    for (std::uint32_t y = 0; y <= n; ++y) {
      for (const auto& e : enumerate_partial_maps(x, y)) {
        if (!e.is_total() || !base.in_e(e)) continue;
        for (std::uint32_t z = 0; z <= n; ++z) {
          for (const auto& i : enumerate_partial_maps(z, y)) {
            if (!i.is_total() || !i.is_injective_component()) continue;
            v.count();
            std::vector<std::int32_t> inv(y, kBot);
            for (std::uint32_t c = 0; c < z; ++c) inv[static_cast<std::size_t>(i(c))] = static_cast<std::int32_t>(c);
            std::vector<std::int32_t> pulled;
            for (std::uint32_t a = 0; a < x; ++a) {
              if (inv[static_cast<std::size_t>(e(a))] != kBot) pulled.push_back(inv[static_cast<std::size_t>(e(a))]);
            }
            const PartialMap p(static_cast<std::uint32_t>(pulled.size()), z, pulled);
            if (!base.in_e(p)) {
              v.fail("pullback of " + e.to_string() + " along " + i.to_string() + " is " + p.to_string());
            }
          }
        }
      }
    }
  }
  return std::move(v.finish());
}

BaseFactoriser transfer_base(TransferBase base) {
  return base == TransferBase::EpiMono ? image_factoriser() : coproduct_factoriser();
}

SchemePtr transfer_scheme(TransferBase base, std::uint32_t n) {
  BaseFactoriser fac = transfer_base(base);
  const Verdict st = check_stability(fac, n);
  if (!st.ok()) throw ContractViolation("transfer refused: " + st.failures.front());
  return std::make_shared<Transfer>(base, std::move(fac));
}

bool in_transfer_left(TransferBase base, const PartialMap& f) {
  return base == TransferBase::EpiMono ? f.is_surjective_component() : f.is_injective_component();
}

bool in_transfer_right(TransferBase base, const PartialMap& f) {
  if (!f.is_total()) return false;
  return base == TransferBase::EpiMono ? f.is_injective_component() : f.is_surjective_component();
}

SchemePtr corrupted_scheme(SchemePtr base, PartialMap target) {
  return std::make_shared<Corrupted>(std::move(base), std::move(target));
}

std::vector<std::string> scheme_names() {
  return {"domain-total", "transfer-epi-mono", "transfer-mono-epi", "trivial-left", "trivial-right"};
}

SchemePtr scheme_by_name(const std::string& name, std::uint32_t n) {
  if (name == "domain-total") return domain_total_scheme();
  if (name == "transfer-epi-mono") return transfer_scheme(TransferBase::EpiMono, n);
  if (name == "transfer-mono-epi") return transfer_scheme(TransferBase::MonoEpi, n);
  if (name == "trivial-left") return trivial_left_scheme();
  if (name == "trivial-right") return trivial_right_scheme();
  throw ContractViolation("unknown scheme \"" + name + "\"");
}

}  // namespace laxfact
