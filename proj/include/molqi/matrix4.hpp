#pragma once

#include <array>
#include <complex>

namespace molqi {

using Complex = std::complex<double>;

// Dense 4x4 complex matrix, row-major.
class ComplexMatrix4 {
 public:
  ComplexMatrix4() { a_.fill(Complex(0.0, 0.0)); }

  static ComplexMatrix4 identity();
  static ComplexMatrix4 diagonal(const std::array<Complex, 4>& diag);

  Complex& operator()(int r, int c) { return a_[4 * r + c]; }
  const Complex& operator()(int r, int c) const { return a_[4 * r + c]; }

  ComplexMatrix4 operator*(const ComplexMatrix4& rhs) const;
  ComplexMatrix4 operator-(const ComplexMatrix4& rhs) const;
  std::array<Complex, 4> operator*(const std::array<Complex, 4>& v) const;

  ComplexMatrix4 adjoint() const;
  // Largest absolute row sum.
  double norm_inf() const;

 private:
  std::array<Complex, 16> a_;
};

// Gaussian elimination with partial pivoting. Throws SingularMatrix when
// |det| < 1e-14 * norm^4.
ComplexMatrix4 invert4(const ComplexMatrix4& m);

Complex determinant4(const ComplexMatrix4& m);

}  // namespace molqi
