#pragma once

// Exact arithmetic in F_p and F_{p^n} for odd p, with full element
// enumeration, precomputed square/root tables, and quadratic extensions.
// Fields are capped at q <= 2^20 so every element-indexed table fits in
// memory and exhaustive checks are always possible.

#include <algorithm>
#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace fqdist {

/// Field element, represented as its enumeration index in [0, q).
/// Index i has coefficient vector (i mod p, (i/p) mod p, ...), constant
/// term first, so index order equals the canonical element order.
using Elt = std::uint32_t;

using Count = std::uint64_t;

inline constexpr Elt kNoElement = 0xFFFFFFFFu;

namespace detail {

inline bool is_prime(std::uint64_t m) {
  if (m < 2) return false;
  if (m % 2 == 0) return m == 2;
  for (std::uint64_t d = 3; d * d <= m; d += 2) {
    if (m % d == 0) return false;
  }
  return true;
}

// Dense polynomials over F_p, coefficient vectors with constant term first.
using Poly = std::vector<std::uint32_t>;

inline void poly_trim(Poly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

inline std::uint32_t poly_eval(const Poly& f, std::uint32_t x, std::uint32_t p) {
  std::uint64_t acc = 0;
  for (std::size_t i = f.size(); i-- > 0;) {
    acc = (acc * x + f[i]) % p;
  }
  return static_cast<std::uint32_t>(acc);
}

// Remainder of f by a monic divisor g.
inline Poly poly_rem(Poly f, const Poly& g, std::uint32_t p) {
  const std::size_t dg = g.size() - 1;
  while (f.size() > dg) {
    const std::uint64_t lead = f.back();
    const std::size_t shift = f.size() - 1 - dg;
    if (lead != 0) {
      for (std::size_t j = 0; j < dg; ++j) {
        f[shift + j] = static_cast<std::uint32_t>((f[shift + j] + lead * (p - g[j])) % p);
      }
    }
    f.pop_back();
  }
  poly_trim(f);
  return f;
}

// Monic degree-deg polynomial whose non-leading coefficients are the
// base-p digits of idx, constant term first. Increasing idx is the
// canonical order in which moduli are searched.
inline Poly monic_poly_from_index(std::uint64_t idx, std::uint32_t p, std::uint32_t deg) {
  Poly f(deg + 1, 0);
  for (std::uint32_t i = 0; i < deg; ++i) {
    f[i] = static_cast<std::uint32_t>(idx % p);
    idx /= p;
  }
  f[deg] = 1;
  return f;
}

inline bool poly_is_irreducible(const Poly& f, std::uint32_t p);

// All monic irreducibles of degree exactly deg, in index order.
inline std::vector<Poly> monic_irreducibles(std::uint32_t p, std::uint32_t deg) {
  std::vector<Poly> out;
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < deg; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Poly f = monic_poly_from_index(idx, p, deg);
    if (poly_is_irreducible(f, p)) out.push_back(std::move(f));
  }
  return out;
}

// Root check settles degrees up to 3; above that, trial division by all
// monic irreducibles of degree at most deg/2.
inline bool poly_is_irreducible(const Poly& f, std::uint32_t p) {
  const std::size_t deg = f.size() - 1;
  if (deg == 0) return false;
  if (deg == 1) return true;
  for (std::uint32_t x = 0; x < p; ++x) {
    if (poly_eval(f, x, p) == 0) return false;
  }
  if (deg <= 3) return true;
  for (std::uint32_t d = 2; d <= deg / 2; ++d) {
    for (const Poly& g : monic_irreducibles(p, d)) {
      if (poly_rem(f, g, p).empty()) return false;
    }
  }
  return true;
}

inline Poly canonical_modulus(std::uint32_t p, std::uint32_t deg) {
  std::uint64_t total = 1;
  for (std::uint32_t i = 0; i < deg; ++i) total *= p;
  for (std::uint64_t idx = 0; idx < total; ++idx) {
    Poly f = monic_poly_from_index(idx, p, deg);
    if (poly_is_irreducible(f, p)) return f;
  }
  throw std::logic_error("no irreducible polynomial found (impossible)");
}

}  // namespace detail

/// The finite field F_{p^n}, p an odd prime, q = p^n <= 2^20.
///
/// Elements are indices 0..q-1 (see Elt). All operations are pure and the
/// instance is immutable after construction, so a Field may be shared
/// freely across threads.
class Field {
 public:
  static constexpr std::uint64_t kMaxCardinality = 1u << 20;
  static constexpr std::uint32_t kMaxDegree = 20;

  /// Builds F_{p^n} with the canonical modulus: the lexicographically
  /// smallest monic irreducible of degree n (for n=1 the polynomial x).
  Field(std::uint32_t p, std::uint32_t n)
      : Field(p, n, n == 1 ? detail::Poly{0, 1} : detail::canonical_modulus(p, n), true) {}

  /// Builds F_{p^n} with an explicit monic irreducible modulus,
  /// constant term first, length n+1.
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus)
      : Field(p, n, std::move(modulus), false) {}

  std::uint32_t p() const noexcept { return p_; }
  std::uint32_t n() const noexcept { return n_; }
  std::uint32_t q() const noexcept { return q_; }
  const std::vector<std::uint32_t>& modulus() const noexcept { return modulus_; }

  Elt zero() const noexcept { return 0; }
  Elt one() const noexcept { return 1; }

  bool same_structure(const Field& o) const noexcept {
    return p_ == o.p_ && n_ == o.n_ && modulus_ == o.modulus_;
  }

  /// Element from a coefficient vector (constant term first, length <= n,
  /// entries < p). Missing high coefficients are zero.
  Elt from_coeffs(const std::vector<std::uint32_t>& c) const {
    if (c.size() > n_) throw std::invalid_argument("coefficient vector longer than extension degree");
    Elt x = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= p_) throw std::invalid_argument("coefficient out of range [0, p)");
      x = x * p_ + c[i];
    }
    return x;
  }

  std::vector<std::uint32_t> coeffs(Elt x) const {
    check_element(x);
    std::vector<std::uint32_t> c(n_);
    for (std::uint32_t i = 0; i < n_; ++i) {
      c[i] = x % p_;
      x /= p_;
    }
    return c;
  }

  Elt add(Elt x, Elt y) const {
    check_element(x);
    check_element(y);
    if (n_ == 1) {
      const std::uint32_t s = x + y;
      return s >= p_ ? s - p_ : s;
    }
    Elt out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
      std::uint32_t s = x % p_ + y % p_;
      if (s >= p_) s -= p_;
      out += s * scale;
      scale *= p_;
      x /= p_;
      y /= p_;
    }
    return out;
  }

  Elt sub(Elt x, Elt y) const { return add(x, neg(y)); }

  Elt neg(Elt x) const {
    check_element(x);
    if (n_ == 1) return x == 0 ? 0 : p_ - x;
    Elt out = 0;
    std::uint32_t scale = 1;
    for (std::uint32_t i = 0; i < n_; ++i) {
      const std::uint32_t d = x % p_;
      out += (d == 0 ? 0 : p_ - d) * scale;
      scale *= p_;
      x /= p_;
    }
    return out;
  }

  Elt mul(Elt x, Elt y) const {
    check_element(x);
    check_element(y);
    if (n_ == 1) {
      return static_cast<Elt>(static_cast<std::uint64_t>(x) * y % p_);
    }
    std::array<std::uint32_t, kMaxDegree> a{}, b{};
    to_digits(x, a);
    to_digits(y, b);
    std::array<std::uint64_t, 2 * kMaxDegree> prod{};
    for (std::uint32_t i = 0; i < n_; ++i) {
      if (a[i] == 0) continue;
      for (std::uint32_t j = 0; j < n_; ++j) {
        prod[i + j] += static_cast<std::uint64_t>(a[i]) * b[j];
      }
    }
    // x^n = -(m_0 + m_1 x + ... + m_{n-1} x^{n-1}), modulus monic.
    for (std::uint32_t i = 2 * n_ - 2; i >= n_ && i < 2 * kMaxDegree; --i) {
      const std::uint64_t c = prod[i] % p_;
      prod[i] = 0;
      if (c == 0) continue;
      for (std::uint32_t j = 0; j < n_; ++j) {
        if (modulus_[j] != 0) prod[i - n_ + j] += c * (p_ - modulus_[j]);
      }
    }
    Elt out = 0;
    for (std::uint32_t i = n_; i-- > 0;) {
      out = out * p_ + static_cast<Elt>(prod[i] % p_);
    }
    return out;
  }

  Elt pow(Elt x, std::uint64_t e) const {
    check_element(x);
    Elt acc = one();
    Elt base = x;
    while (e > 0) {
      if (e & 1) acc = mul(acc, base);
      base = mul(base, base);
      e >>= 1;
    }
    return acc;
  }

  /// Multiplicative inverse, computed as x^{q-2}.
  Elt inv(Elt x) const {
    check_element(x);
    if (x == 0) throw std::domain_error("inverse of zero");
    return pow(x, q_ - 2);
  }

  /// True iff some y satisfies y^2 = x; zero counts as a square.
  bool is_square(Elt x) const {
    check_element(x);
    return sqrt_[x] != kNoElement;
  }

  /// Canonical square root: the smaller of the pair {y, -y} in element
  /// order. Throws std::domain_error on non-squares.
  Elt sqrt(Elt x) const {
    check_element(x);
    const Elt r = sqrt_[x];
    if (r == kNoElement) throw std::domain_error("square root of a non-square");
    return r;
  }

  std::uint32_t num_nonzero_squares() const noexcept { return nonzero_squares_; }

  /// All q elements in canonical order.
  std::vector<Elt> all_elements() const {
    std::vector<Elt> out(q_);
    for (Elt e = 0; e < q_; ++e) out[e] = e;
    return out;
  }

 private:
  Field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus, bool trusted)
      : p_(p), n_(n), modulus_(std::move(modulus)) {
    if (p % 2 == 0) throw std::invalid_argument("even characteristic is not supported");
    if (!detail::is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    if (n < 1) throw std::invalid_argument("extension degree must be at least 1");
    if (n > kMaxDegree) throw std::invalid_argument("extension degree too large");
    std::uint64_t card = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
      card *= p;
      if (card > kMaxCardinality) throw std::invalid_argument("field cardinality exceeds 2^20");
    }
    q_ = static_cast<std::uint32_t>(card);
    if (!trusted) validate_modulus();
    build_tables();
  }

  void validate_modulus() const {
    if (modulus_.size() != n_ + 1) throw std::invalid_argument("modulus must have degree n");
    if (modulus_.back() != 1) throw std::invalid_argument("modulus must be monic");
    for (std::uint32_t c : modulus_) {
      if (c >= p_) throw std::invalid_argument("modulus coefficient out of range [0, p)");
    }
    if (n_ == 1) {
      if (modulus_[0] != 0) throw std::invalid_argument("prime-field modulus must be x");
      return;
    }
    if (!detail::poly_is_irreducible(modulus_, p_)) {
      throw std::invalid_argument("modulus is reducible over F_p");
    }
  }

  void build_tables() {
    sqrt_.assign(q_, kNoElement);
    for (Elt e = 0; e < q_; ++e) {
      const Elt s = mul(e, e);
      if (sqrt_[s] == kNoElement) sqrt_[s] = e;
    }
    nonzero_squares_ = 0;
    for (Elt s = 1; s < q_; ++s) {
      if (sqrt_[s] != kNoElement) ++nonzero_squares_;
    }
  }

  void check_element(Elt x) const {
    if (x >= q_) throw std::invalid_argument("element index out of range [0, q)");
  }

  void to_digits(Elt x, std::array<std::uint32_t, kMaxDegree>& d) const noexcept {
    for (std::uint32_t i = 0; i < n_; ++i) {
      d[i] = x % p_;
      x /= p_;
    }
  }

  std::uint32_t p_;
  std::uint32_t n_;
  std::uint32_t q_;
  std::vector<std::uint32_t> modulus_;
  std::vector<Elt> sqrt_;
  std::uint32_t nonzero_squares_ = 0;
};

using FieldPtr = std::shared_ptr<const Field>;

inline FieldPtr make_field(std::uint32_t p, std::uint32_t n = 1) {
  return std::make_shared<Field>(p, n);
}

inline FieldPtr make_field(std::uint32_t p, std::uint32_t n, std::vector<std::uint32_t> modulus) {
  return std::make_shared<Field>(p, n, std::move(modulus));
}

/// A field element bound to its owning field. Arithmetic between elements
/// of structurally different fields throws; use QuadraticExtension::embed
/// to move between a field and its extension.
class FieldElement {
 public:
  FieldElement(FieldPtr field, Elt value) : f_(std::move(field)), v_(value) {
    if (!f_) throw std::invalid_argument("null field");
    if (v_ >= f_->q()) throw std::invalid_argument("element index out of range [0, q)");
  }

  const FieldPtr& field() const noexcept { return f_; }
  Elt index() const noexcept { return v_; }

  friend FieldElement operator+(const FieldElement& a, const FieldElement& b) {
    a.require_same_field(b);
    return FieldElement(a.f_, a.f_->add(a.v_, b.v_));
  }
  friend FieldElement operator-(const FieldElement& a, const FieldElement& b) {
    a.require_same_field(b);
    return FieldElement(a.f_, a.f_->sub(a.v_, b.v_));
  }
  friend FieldElement operator*(const FieldElement& a, const FieldElement& b) {
    a.require_same_field(b);
    return FieldElement(a.f_, a.f_->mul(a.v_, b.v_));
  }
  FieldElement operator-() const { return FieldElement(f_, f_->neg(v_)); }
  FieldElement inverse() const { return FieldElement(f_, f_->inv(v_)); }
  bool is_square() const { return f_->is_square(v_); }

  friend bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.f_->same_structure(*b.f_) && a.v_ == b.v_;
  }
  friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

 private:
  void require_same_field(const FieldElement& o) const {
    if (!f_->same_structure(*o.f_)) {
      throw std::invalid_argument("arithmetic between elements of different fields");
    }
  }

  FieldPtr f_;
  Elt v_;
};

/// F_{q^2} over a base F_q, realized as F_{p^{2n}} with the canonical
/// modulus, together with the embedding F_q -> F_{q^2} that sends the
/// base generator to a root of the base modulus in the extension.
/// Every base element has a square root in the extension.
class QuadraticExtension {
 public:
  explicit QuadraticExtension(FieldPtr base) : base_(std::move(base)) {
    if (!base_) throw std::invalid_argument("null base field");
    const std::uint64_t q = base_->q();
    if (q * q > Field::kMaxCardinality) {
      throw std::invalid_argument("quadratic extension exceeds the 2^20 enumeration bound");
    }
    ext_ = make_field(base_->p(), 2 * base_->n());
    const Elt gen_image = find_generator_image();
    build_embedding(gen_image);
    verify_embedding();
  }

  const FieldPtr& base() const noexcept { return base_; }
  const FieldPtr& ext() const noexcept { return ext_; }

  Elt embed(Elt base_elt) const {
    if (base_elt >= base_->q()) throw std::invalid_argument("element index out of range [0, q)");
    return embed_[base_elt];
  }

  bool in_base_image(Elt ext_elt) const {
    if (ext_elt >= ext_->q()) throw std::invalid_argument("element index out of range [0, q^2)");
    return retract_[ext_elt] != kNoElement;
  }

  std::optional<Elt> retract(Elt ext_elt) const {
    if (ext_elt >= ext_->q()) throw std::invalid_argument("element index out of range [0, q^2)");
    const Elt b = retract_[ext_elt];
    if (b == kNoElement) return std::nullopt;
    return b;
  }

  /// Canonical square root, in the extension, of an embedded base element.
  Elt sqrt_of_base(Elt base_elt) const { return ext_->sqrt(embed(base_elt)); }

 private:
  // The base modulus has F_p coefficients, which are extension constants
  // with the same indices; its roots in the extension are exactly the
  // candidate generator images. The first root in element order is taken.
  Elt find_generator_image() const {
    const auto& m = base_->modulus();
    const std::uint32_t q2 = ext_->q();
    for (Elt t = 0; t < q2; ++t) {
      Elt acc = 0;
      for (std::size_t i = m.size(); i-- > 0;) {
        acc = ext_->add(ext_->mul(acc, t), m[i]);
      }
      if (acc == 0) return t;
    }
    throw std::logic_error("base modulus has no root in the quadratic extension (impossible)");
  }

  void build_embedding(Elt g) {
    const std::uint32_t q = base_->q();
    embed_.assign(q, 0);
    retract_.assign(ext_->q(), kNoElement);
    for (Elt e = 0; e < q; ++e) {
      const auto c = base_->coeffs(e);
      Elt acc = 0;
      for (std::size_t i = c.size(); i-- > 0;) {
        acc = ext_->add(ext_->mul(acc, g), c[i]);
      }
      embed_[e] = acc;
      if (retract_[acc] != kNoElement) throw std::logic_error("embedding is not injective");
      retract_[acc] = e;
    }
  }

  void verify_embedding() const {
    if (embed_[0] != 0 || embed_[1] != 1) throw std::logic_error("embedding does not fix 0 and 1");
    const std::uint32_t q = base_->q();
    const bool exhaustive = q <= 81;
    const std::uint32_t step = exhaustive ? 1 : std::max<std::uint32_t>(1, q / 100);
    for (std::uint32_t x = 0; x < q; x += step) {
      for (std::uint32_t y = 0; y < q; y += step) {
        if (embed_[base_->add(x, y)] != ext_->add(embed_[x], embed_[y]) ||
            embed_[base_->mul(x, y)] != ext_->mul(embed_[x], embed_[y])) {
          throw std::logic_error("embedding is not a ring homomorphism");
        }
      }
    }
  }

  FieldPtr base_;
  FieldPtr ext_;
  std::vector<Elt> embed_;
  std::vector<Elt> retract_;
};

}  // namespace fqdist
