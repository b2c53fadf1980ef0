#pragma once

#include <Eigen/Dense>
#include <complex>

namespace pulselearn {

using Complex = std::complex<double>;
using Mat2c = Eigen::Matrix2cd;
using Mat3r = Eigen::Matrix3d;
using Vec3 = Eigen::Vector3d;

inline constexpr Complex kImag{0.0, 1.0};
inline constexpr double kPi = 3.14159265358979323846264338327950288;

inline const Mat2c& pauli_x() {
  static const Mat2c m = (Mat2c() << 0, 1, 1, 0).finished();
  return m;
}
inline const Mat2c& pauli_y() {
  static const Mat2c m = (Mat2c() << Complex(0, 0), Complex(0, -1),
                          Complex(0, 1), Complex(0, 0)).finished();
  return m;
}
inline const Mat2c& pauli_z() {
  static const Mat2c m = (Mat2c() << 1, 0, 0, -1).finished();
  return m;
}
inline const Mat2c& pauli(int k) {
  return k == 0 ? pauli_x() : (k == 1 ? pauli_y() : pauli_z());
}

// Spectral norm of a 2x2 complex matrix (largest singular value).
inline double spectral_norm(const Mat2c& m) {
  // Singular values of a 2x2 are available in closed form via the 2x2
  // Hermitian eigenproblem of m^dagger m; Eigen's JacobiSVD is exact enough
  // and avoids hand-rolled branch bugs at this size.
  return m.jacobiSvd().singularValues()(0);
}

inline double unitarity_defect(const Mat2c& u) {
  return (u.adjoint() * u - Mat2c::Identity()).norm();
}

}  // namespace pulselearn
