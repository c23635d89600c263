#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace gammalab {

using Vec = std::vector<double>;

// Dense row-major matrix. The networks here are tiny (widths <= 16), so a
// plain vector with a naive product is all that is needed.
struct Matrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  Matrix() = default;
  Matrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  double& operator()(std::size_t i, std::size_t j) { return data[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return data[i * cols + j]; }

  bool same_shape(const Matrix& other) const {
    return rows == other.rows && cols == other.cols;
  }
};

inline Vec matvec(const Matrix& m, const Vec& x) {
  Vec y(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double acc = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) acc += m(i, j) * x[j];
    y[i] = acc;
  }
  return y;
}

// y = m^T x, used for propagating gradients to the previous layer.
inline Vec matvec_transposed(const Matrix& m, const Vec& x) {
  Vec y(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) y[j] += m(i, j) * x[i];
  return y;
}

inline double squared_distance(const Vec& a, const Vec& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    acc += d * d;
  }
  return acc;
}

inline double distance(const Vec& a, const Vec& b) {
  return std::sqrt(squared_distance(a, b));
}

inline double norm(const Vec& a) {
  double acc = 0.0;
  for (double v : a) acc += v * v;
  return std::sqrt(acc);
}

inline Vec vec_mean(const Vec& a, const Vec& b) {
  Vec m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = 0.5 * (a[i] + b[i]);
  return m;
}

inline Vec vec_mean3(const Vec& a, const Vec& b, const Vec& c) {
  Vec m(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) m[i] = (a[i] + b[i] + c[i]) / 3.0;
  return m;
}

inline bool all_finite(const Vec& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

}  // namespace gammalab
