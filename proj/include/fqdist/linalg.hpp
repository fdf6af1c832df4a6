#pragma once

// Vectors, square matrices and the quadratic norm over a field; the
// rotation-type similarity matrices B with B^T B = rI, enumeration of
// O(2,q), and sphere enumeration.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "fqdist/field.hpp"

namespace fqdist {

/// Point in F_q^d: coordinate vector of element indices.
using Vec = std::vector<Elt>;

inline constexpr std::uint64_t kMaxSphereEnumeration = 1u << 22;
inline constexpr std::uint32_t kMaxGroupFieldSize = 1u << 10;

/// q^d with the given ceiling; throws if the point space is larger.
inline std::uint64_t checked_space_size(const Field& f, std::uint32_t d,
                                        std::uint64_t limit) {
  std::uint64_t size = 1;
  for (std::uint32_t i = 0; i < d; ++i) {
    if (size > limit / f.q()) throw std::invalid_argument("point space exceeds enumeration bound");
    size *= f.q();
  }
  return size;
}

/// Mixed-radix code of a point, used as a hash/set key. Valid whenever
/// q^d fits in 62 bits, which every constructor in this library enforces.
inline std::uint64_t encode_vec(const Field& f, const Vec& v) {
  std::uint64_t code = 0;
  for (std::size_t i = v.size(); i-- > 0;) code = code * f.q() + v[i];
  return code;
}

inline Vec decode_vec(const Field& f, std::uint64_t code, std::uint32_t d) {
  Vec v(d);
  for (std::uint32_t i = 0; i < d; ++i) {
    v[i] = static_cast<Elt>(code % f.q());
    code /= f.q();
  }
  return v;
}

inline Vec vec_add(const Field& f, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch");
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.add(u[i], v[i]);
  return out;
}

inline Vec vec_sub(const Field& f, const Vec& u, const Vec& v) {
  if (u.size() != v.size()) throw std::invalid_argument("dimension mismatch");
  Vec out(u.size());
  for (std::size_t i = 0; i < u.size(); ++i) out[i] = f.sub(u[i], v[i]);
  return out;
}

/// ||v||^2 = sum of squared coordinates. Not a metric: nonzero isotropic
/// vectors exist exactly when -1 is a square (q = 1 mod 4, d = 2).
inline Elt norm_sq(const Field& f, const Vec& v) {
  Elt acc = 0;
  for (Elt c : v) acc = f.add(acc, f.mul(c, c));
  return acc;
}

/// Dense d x d matrix over a field, row-major.
struct Mat {
  std::uint32_t d = 0;
  std::vector<Elt> e;

  Mat() = default;
  explicit Mat(std::uint32_t dim) : d(dim), e(static_cast<std::size_t>(dim) * dim, 0) {}

  Elt& at(std::uint32_t i, std::uint32_t j) { return e[static_cast<std::size_t>(i) * d + j]; }
  Elt at(std::uint32_t i, std::uint32_t j) const { return e[static_cast<std::size_t>(i) * d + j]; }

  static Mat identity(const Field& f, std::uint32_t dim) {
    Mat m(dim);
    for (std::uint32_t i = 0; i < dim; ++i) m.at(i, i) = f.one();
    return m;
  }

  friend bool operator==(const Mat& a, const Mat& b) { return a.d == b.d && a.e == b.e; }
};

inline Mat transpose(const Mat& m) {
  Mat out(m.d);
  for (std::uint32_t i = 0; i < m.d; ++i)
    for (std::uint32_t j = 0; j < m.d; ++j) out.at(j, i) = m.at(i, j);
  return out;
}

inline Mat mat_mul(const Field& f, const Mat& a, const Mat& b) {
  if (a.d != b.d) throw std::invalid_argument("dimension mismatch");
  Mat out(a.d);
  for (std::uint32_t i = 0; i < a.d; ++i) {
    for (std::uint32_t k = 0; k < a.d; ++k) {
      const Elt aik = a.at(i, k);
      if (aik == 0) continue;
      for (std::uint32_t j = 0; j < a.d; ++j) {
        out.at(i, j) = f.add(out.at(i, j), f.mul(aik, b.at(k, j)));
      }
    }
  }
  return out;
}

inline Vec mat_vec(const Field& f, const Mat& m, const Vec& v) {
  if (m.d != v.size()) throw std::invalid_argument("dimension mismatch");
  Vec out(m.d, 0);
  for (std::uint32_t i = 0; i < m.d; ++i) {
    Elt acc = 0;
    for (std::uint32_t j = 0; j < m.d; ++j) acc = f.add(acc, f.mul(m.at(i, j), v[j]));
    out[i] = acc;
  }
  return out;
}

/// True iff M^T M = I.
inline bool is_orthogonal(const Field& f, const Mat& m) {
  return mat_mul(f, transpose(m), m) == Mat::identity(f, m.d);
}

/// Scalar matrix test: M^T M = r I.
inline bool is_similarity(const Field& f, const Mat& m, Elt r) {
  Mat g = mat_mul(f, transpose(m), m);
  Mat want(m.d);
  for (std::uint32_t i = 0; i < m.d; ++i) want.at(i, i) = r;
  return g == want;
}

struct TwoSquares {
  Elt a = 0;
  Elt b = 0;
};

/// Deterministic representation r = a^2 + b^2: the smallest a in element
/// order with r - a^2 a square, b its canonical root. Always exists in
/// odd characteristic.
inline TwoSquares sum_of_two_squares(const Field& f, Elt r) {
  for (Elt a = 0; a < f.q(); ++a) {
    const Elt rest = f.sub(r, f.mul(a, a));
    if (f.is_square(rest)) return {a, f.sqrt(rest)};
  }
  throw std::logic_error("no two-square representation found (impossible in odd characteristic)");
}

/// A matrix B with B^T B = ratio * I, hence ||Bv||^2 = ratio * ||v||^2.
/// `field` owns the entries; for the odd-dimension construction that is
/// the quadratic extension and `base_valued` records whether all entries
/// lie in the embedded base field.
struct Similarity {
  FieldPtr field;
  Mat B;
  Elt ratio = 0;
  TwoSquares witness;
  bool base_valued = true;
};

/// Block-diagonal B with d/2 copies of [[a,-b],[b,a]] where a^2+b^2 = r.
/// Entries stay in F_q for every r.
inline Similarity build_similarity_even(const FieldPtr& f, std::uint32_t d, Elt r) {
  if (d < 2 || d % 2 != 0) throw std::invalid_argument("dimension must be even and at least 2");
  if (r == 0) throw std::invalid_argument("similarity ratio must be nonzero");
  const TwoSquares w = sum_of_two_squares(*f, r);
  Mat B(d);
  for (std::uint32_t k = 0; k < d / 2; ++k) {
    B.at(2 * k, 2 * k) = w.a;
    B.at(2 * k, 2 * k + 1) = f->neg(w.b);
    B.at(2 * k + 1, 2 * k) = w.b;
    B.at(2 * k + 1, 2 * k + 1) = w.a;
  }
  if (!is_similarity(*f, B, r)) throw std::logic_error("similarity construction failed B^T B = rI");
  return {f, std::move(B), r, w, true};
}

/// Odd-dimension variant over the quadratic extension: (d-1)/2 embedded
/// blocks plus a final diagonal entry sqrt(r) taken in the extension.
/// B^T B = embed(r) * I over F_{q^2}.
inline Similarity build_similarity_odd(const QuadraticExtension& qe, std::uint32_t d, Elt r) {
  if (d < 3 || d % 2 == 0) throw std::invalid_argument("dimension must be odd and at least 3");
  if (r == 0) throw std::invalid_argument("similarity ratio must be nonzero");
  const Field& base = *qe.base();
  const Field& ext = *qe.ext();
  const TwoSquares w = sum_of_two_squares(base, r);
  Mat B(d);
  for (std::uint32_t k = 0; k + 1 < d; k += 2) {
    B.at(k, k) = qe.embed(w.a);
    B.at(k, k + 1) = ext.neg(qe.embed(w.b));
    B.at(k + 1, k) = qe.embed(w.b);
    B.at(k + 1, k + 1) = qe.embed(w.a);
  }
  B.at(d - 1, d - 1) = qe.sqrt_of_base(r);
  const Elt ratio = qe.embed(r);
  if (!is_similarity(ext, B, ratio)) throw std::logic_error("similarity construction failed B^T B = rI");
  return {qe.ext(), std::move(B), ratio, w, base.is_square(r)};
}

/// O(2,q): all 2x2 matrices with M^T M = I. Elements are listed rotations
/// first (circle points (a,b) with a^2+b^2 = 1 in lexicographic order,
/// matrix [[a,-b],[b,a]]), then reflections [[a,b],[b,-a]] over the same
/// circle points. |O(2,q)| = 2(q+1) for q = 3 mod 4, 2(q-1) for q = 1 mod 4.
struct OrthogonalGroup2 {
  FieldPtr field;
  std::vector<Mat> elements;
  std::size_t rotation_count = 0;
};

inline std::vector<std::pair<Elt, Elt>> unit_circle_points(const Field& f) {
  std::vector<std::pair<Elt, Elt>> pts;
  for (Elt a = 0; a < f.q(); ++a) {
    const Elt rest = f.sub(f.one(), f.mul(a, a));
    if (!f.is_square(rest)) continue;
    const Elt b = f.sqrt(rest);
    const Elt nb = f.neg(b);
    if (b == nb) {
      pts.emplace_back(a, b);
    } else {
      pts.emplace_back(a, std::min(b, nb));
      pts.emplace_back(a, std::max(b, nb));
    }
  }
  return pts;
}

inline OrthogonalGroup2 enumerate_O2(const FieldPtr& f) {
  if (f->q() > kMaxGroupFieldSize) {
    throw std::invalid_argument("O(2) enumeration limited to q <= 2^10");
  }
  OrthogonalGroup2 g;
  g.field = f;
  const auto circle = unit_circle_points(*f);
  g.elements.reserve(2 * circle.size());
  for (const auto& [a, b] : circle) {
    Mat m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = f->neg(b);
    m.at(1, 0) = b;
    m.at(1, 1) = a;
    g.elements.push_back(std::move(m));
  }
  g.rotation_count = g.elements.size();
  for (const auto& [a, b] : circle) {
    Mat m(2);
    m.at(0, 0) = a;
    m.at(0, 1) = b;
    m.at(1, 0) = b;
    m.at(1, 1) = f->neg(a);
    g.elements.push_back(std::move(m));
  }
  return g;
}

/// All v in F_q^d with ||v||^2 = t, in enumeration order.
inline std::vector<Vec> sphere_points(const Field& f, std::uint32_t d, Elt t) {
  const std::uint64_t total = checked_space_size(f, d, kMaxSphereEnumeration);
  std::vector<Vec> out;
  Vec v(d, 0);
  for (std::uint64_t code = 0; code < total; ++code) {
    if (norm_sq(f, v) == t) out.push_back(v);
    // odometer increment in enumeration order
    for (std::uint32_t i = 0; i < d; ++i) {
      if (++v[i] < f.q()) break;
      v[i] = 0;
    }
  }
  return out;
}

}  // namespace fqdist
