// Small fixed-size complex matrices (2x2 single-qubit, 4x4 two-qubit) used
// throughout the library. Value types, no allocation.
#pragma once

#include <array>
#include <cmath>
#include <complex>

namespace xqm {

using cplx = std::complex<double>;

struct Mat2 {
  std::array<cplx, 4> a{};

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(2 * i + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(2 * i + j)]; }
};

struct Mat4 {
  std::array<cplx, 16> a{};

  cplx& operator()(int i, int j) { return a[static_cast<std::size_t>(4 * i + j)]; }
  const cplx& operator()(int i, int j) const { return a[static_cast<std::size_t>(4 * i + j)]; }
};

inline Mat2 identity2() {
  Mat2 m;
  m(0, 0) = 1.0;
  m(1, 1) = 1.0;
  return m;
}

inline Mat4 identity4() {
  Mat4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

// Pauli matrices sigma_0..sigma_3 (identity, x, y, z).
inline Mat2 pauli(int k) {
  Mat2 m;
  switch (k) {
    case 0: m(0, 0) = 1.0; m(1, 1) = 1.0; break;
    case 1: m(0, 1) = 1.0; m(1, 0) = 1.0; break;
    case 2: m(0, 1) = cplx(0.0, -1.0); m(1, 0) = cplx(0.0, 1.0); break;
    default: m(0, 0) = 1.0; m(1, 1) = -1.0; break;
  }
  return m;
}

inline Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 2; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat4 operator*(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < 4; ++k) s += x(i, k) * y(k, j);
      r(i, j) = s;
    }
  return r;
}

inline Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat4 operator+(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] + y.a[i];
  return r;
}

inline Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat4 operator-(const Mat4& x, const Mat4& y) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = x.a[i] - y.a[i];
  return r;
}

inline Mat2 operator*(cplx c, const Mat2& x) {
  Mat2 r;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] = c * x.a[i];
  return r;
}

inline Mat4 operator*(cplx c, const Mat4& x) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = c * x.a[i];
  return r;
}

inline Mat2 operator*(double c, const Mat2& x) { return cplx(c, 0.0) * x; }
inline Mat4 operator*(double c, const Mat4& x) { return cplx(c, 0.0) * x; }

inline Mat2 adjoint(const Mat2& x) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

inline Mat4 adjoint(const Mat4& x) {
  Mat4 r;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) r(i, j) = std::conj(x(j, i));
  return r;
}

inline Mat4 conjugate(const Mat4& x) {
  Mat4 r;
  for (std::size_t i = 0; i < 16; ++i) r.a[i] = std::conj(x.a[i]);
  return r;
}

inline cplx trace(const Mat2& x) { return x(0, 0) + x(1, 1); }

inline cplx trace(const Mat4& x) { return x(0, 0) + x(1, 1) + x(2, 2) + x(3, 3); }

inline Mat4 kron(const Mat2& x, const Mat2& y) {
  Mat4 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l) r(2 * i + k, 2 * j + l) = x(i, j) * y(k, l);
  return r;
}

inline double max_abs(const Mat4& x) {
  double m = 0.0;
  for (const cplx& v : x.a) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Mat4& x, const Mat4& y) { return max_abs(x - y); }

inline double frobenius_norm(const Mat4& x) {
  double s = 0.0;
  for (const cplx& v : x.a) s += std::norm(v);
  return std::sqrt(s);
}

inline bool is_hermitian(const Mat4& x, double tol) {
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j)
      if (std::abs(x(i, j) - std::conj(x(j, i))) > tol) return false;
  return true;
}

}  // namespace xqm
