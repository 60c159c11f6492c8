#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "galois_field.hpp"
#include "permutation.hpp"

namespace rank1 {

/// Square matrix over a GaloisField, row-major.
struct Matrix {
  unsigned n = 0;
  std::vector<fe_t> a;

  static Matrix identity(unsigned n)
  {
    Matrix m{n, std::vector<fe_t>(n * n, 0)};
    for (unsigned i = 0; i < n; ++i)
      m.a[i * n + i] = 1;
    return m;
  }

  fe_t at(unsigned i, unsigned j) const { return a[i * n + j]; }
  fe_t &at(unsigned i, unsigned j) { return a[i * n + j]; }
  bool operator==(Matrix const &) const = default;
};

inline Matrix mat_mul(GaloisField const &F, Matrix const &x, Matrix const &y)
{
  if (x.n != y.n)
    throw std::invalid_argument("mat_mul: size mismatch");
  Matrix z{x.n, std::vector<fe_t>(x.n * x.n, 0)};
  for (unsigned i = 0; i < x.n; ++i)
    for (unsigned k = 0; k < x.n; ++k) {
      fe_t xik = x.at(i, k);
      if (xik == 0)
        continue;
      for (unsigned j = 0; j < x.n; ++j)
        z.at(i, j) = F.add(z.at(i, j), F.mul(xik, y.at(k, j)));
    }
  return z;
}

inline fe_t determinant(GaloisField const &F, Matrix m)
{
  fe_t det = 1;
  unsigned n = m.n;
  for (unsigned c = 0; c < n; ++c) {
    unsigned p = c;
    while (p < n && m.at(p, c) == 0)
      ++p;
    if (p == n)
      return 0;
    if (p != c) {
      for (unsigned j = 0; j < n; ++j)
        std::swap(m.at(p, j), m.at(c, j));
      det = F.neg(det);
    }
    fe_t piv = m.at(c, c);
    det = F.mul(det, piv);
    fe_t inv = F.inv(piv);
    for (unsigned i = c + 1; i < n; ++i) {
      fe_t factor = F.mul(m.at(i, c), inv);
      if (factor == 0)
        continue;
      for (unsigned j = c; j < n; ++j)
        m.at(i, j) = F.sub(m.at(i, j), F.mul(factor, m.at(c, j)));
    }
  }
  return det;
}

/// Row vector times matrix.
inline std::vector<fe_t> row_times(GaloisField const &F, std::vector<fe_t> const &v, Matrix const &m)
{
  std::vector<fe_t> w(m.n, 0);
  for (unsigned i = 0; i < m.n; ++i) {
    if (v[i] == 0)
      continue;
    for (unsigned j = 0; j < m.n; ++j)
      w[j] = F.add(w[j], F.mul(v[i], m.at(i, j)));
  }
  return w;
}

/// Scales v so that its first nonzero coordinate is 1.
inline std::vector<fe_t> normalize(GaloisField const &F, std::vector<fe_t> v)
{
  for (fe_t x : v)
    if (x != 0) {
      fe_t inv = F.inv(x);
      for (auto &y : v)
        y = F.mul(y, inv);
      return v;
    }
  throw std::invalid_argument("normalize: zero vector");
}

inline std::uint64_t encode_vector(GaloisField const &F, std::vector<fe_t> const &v)
{
  std::uint64_t code = 0;
  for (fe_t x : v)
    code = code * F.order() + x;
  return code;
}

/// A set of projective points closed under some matrices, with the
/// permutation induced by a matrix. Points keep their discovery order
/// unless built from an explicit list.
class ProjectivePoints {
public:
  ProjectivePoints(GaloisField field, std::vector<std::vector<fe_t>> points) : field_(std::move(field))
  {
    for (auto &p : points)
      add(normalize(field_, std::move(p)));
  }

  /// Orbit of <start> under the matrices, in breadth-first order.
  static ProjectivePoints orbit(GaloisField field, std::vector<fe_t> start, std::vector<Matrix> const &gens)
  {
    ProjectivePoints pts(std::move(field), {});
    pts.add(normalize(pts.field_, std::move(start)));
    for (std::size_t k = 0; k < pts.points_.size(); ++k)
      for (auto const &m : gens) {
        auto w = normalize(pts.field_, row_times(pts.field_, pts.points_[k], m));
        if (!pts.index_.count(encode_vector(pts.field_, w)))
          pts.add(std::move(w));
      }
    return pts;
  }

  std::size_t size() const { return points_.size(); }
  std::vector<fe_t> const &point(point_t i) const { return points_[i]; }
  GaloisField const &field() const { return field_; }

  std::optional<point_t> find(std::vector<fe_t> const &v) const
  {
    auto it = index_.find(encode_vector(field_, normalize(field_, v)));
    if (it == index_.end())
      return std::nullopt;
    return it->second;
  }

  Permutation permutation(Matrix const &m) const
  {
    std::vector<point_t> img(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
      auto j = find(row_times(field_, points_[i], m));
      if (!j)
        throw std::invalid_argument("ProjectivePoints: matrix does not preserve the point set");
      img[i] = *j;
    }
    return Permutation(std::move(img));
  }

private:
  void add(std::vector<fe_t> v)
  {
    auto code = encode_vector(field_, v);
    if (index_.count(code))
      return;
    index_.emplace(code, static_cast<point_t>(points_.size()));
    points_.push_back(std::move(v));
  }

  GaloisField field_;
  std::vector<std::vector<fe_t>> points_;
  std::unordered_map<std::uint64_t, point_t> index_;
};

} // namespace rank1
