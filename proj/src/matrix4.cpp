#include "molqi/matrix4.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

#include "molqi/error.hpp"

namespace molqi {

namespace {

// LU factorization in place. Returns the determinant; perm records row swaps.
Complex lu_factor(std::array<std::array<Complex, 4>, 4>& a,
                  std::array<int, 4>& perm) {
  Complex det(1.0, 0.0);
  for (int i = 0; i < 4; ++i) perm[i] = i;
  for (int k = 0; k < 4; ++k) {
    int pivot = k;
    double best = std::abs(a[k][k]);
    for (int r = k + 1; r < 4; ++r) {
      const double v = std::abs(a[r][k]);
      if (v > best) {
        best = v;
        pivot = r;
      }
    }
    if (pivot != k) {
      std::swap(a[pivot], a[k]);
      std::swap(perm[pivot], perm[k]);
      det = -det;
    }
    det *= a[k][k];
    if (a[k][k] == Complex(0.0, 0.0)) return Complex(0.0, 0.0);
    for (int r = k + 1; r < 4; ++r) {
      a[r][k] /= a[k][k];
      for (int c = k + 1; c < 4; ++c) a[r][c] -= a[r][k] * a[k][c];
    }
  }
  return det;
}

std::array<std::array<Complex, 4>, 4> rows_of(const ComplexMatrix4& m) {
  std::array<std::array<Complex, 4>, 4> a;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) a[r][c] = m(r, c);
  return a;
}

}  // namespace

ComplexMatrix4 ComplexMatrix4::identity() {
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix4 ComplexMatrix4::diagonal(const std::array<Complex, 4>& diag) {
  ComplexMatrix4 m;
  for (int i = 0; i < 4; ++i) m(i, i) = diag[i];
  return m;
}

ComplexMatrix4 ComplexMatrix4::operator*(const ComplexMatrix4& rhs) const {
  ComplexMatrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) {
      Complex acc(0.0, 0.0);
      for (int k = 0; k < 4; ++k) acc += (*this)(r, k) * rhs(k, c);
      out(r, c) = acc;
    }
  return out;
}

ComplexMatrix4 ComplexMatrix4::operator-(const ComplexMatrix4& rhs) const {
  ComplexMatrix4 out;
  for (int i = 0; i < 16; ++i) out.a_[i] = a_[i] - rhs.a_[i];
  return out;
}

std::array<Complex, 4> ComplexMatrix4::operator*(
    const std::array<Complex, 4>& v) const {
  std::array<Complex, 4> out{};
  for (int r = 0; r < 4; ++r)
    for (int k = 0; k < 4; ++k) out[r] += (*this)(r, k) * v[k];
  return out;
}

ComplexMatrix4 ComplexMatrix4::adjoint() const {
  ComplexMatrix4 out;
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out(r, c) = std::conj((*this)(c, r));
  return out;
}

double ComplexMatrix4::norm_inf() const {
  double best = 0.0;
  for (int r = 0; r < 4; ++r) {
    double row = 0.0;
    for (int c = 0; c < 4; ++c) row += std::abs((*this)(r, c));
    best = std::max(best, row);
  }
  return best;
}

Complex determinant4(const ComplexMatrix4& m) {
  auto a = rows_of(m);
  std::array<int, 4> perm;
  return lu_factor(a, perm);
}

ComplexMatrix4 invert4(const ComplexMatrix4& m) {
  auto a = rows_of(m);
  std::array<int, 4> perm;
  const Complex det = lu_factor(a, perm);
  const double scale = m.norm_inf();
  if (!(std::abs(det) >= 1e-14 * std::pow(scale, 4)) || scale == 0.0) {
    throw Error(ErrorCode::kSingularMatrix,
                "|det| = " + std::to_string(std::abs(det)));
  }
  ComplexMatrix4 inv;
  for (int col = 0; col < 4; ++col) {
    std::array<Complex, 4> x{};
    for (int r = 0; r < 4; ++r) x[r] = perm[r] == col ? 1.0 : 0.0;
    for (int r = 1; r < 4; ++r)
      for (int k = 0; k < r; ++k) x[r] -= a[r][k] * x[k];
    for (int r = 3; r >= 0; --r) {
      for (int k = r + 1; k < 4; ++k) x[r] -= a[r][k] * x[k];
      x[r] /= a[r][r];
    }
    for (int r = 0; r < 4; ++r) inv(r, col) = x[r];
  }
  return inv;
}

}  // namespace molqi
