#pragma once

#include <utility>
#include <vector>

#include "pulselearn/qsp.hpp"

namespace pulselearn {

// Fisher information matrix for the L phase parameters, with the sampling
// metadata it was built from.
struct FIMatrix {
  Eigen::MatrixXd m;   // L x L, symmetric PSD
  double M = 1.0;      // shots per sample
  int N = 0;           // number of theta samples
  double nu = 0.0;     // max theta of the grid (when applicable)
  int L = 0;
};

// F_ij = M * sum_n Re <0| d_i W(theta_n) d_j W(theta_n)^+ |0> with analytic
// derivatives dV/dpsi = -(i/2)[Z, V] propagated through the product.
FIMatrix fim_numeric(const PhaseVector& psis, const std::vector<double>& thetas,
                     double M);

enum class FimGrid {
  Endpoint,  // theta_n = nu * n / N, n = 1..N
  Midpoint,  // theta_n = nu * (2n - 1) / (2N), n = 1..N
};

// Closed-form Toeplitz FIM for constant phases on an equidistant grid:
// F_ij = s_{|i-j|}, s_d = (M/4)(2K(d) - K(d+1) - K(d-1)) with K(d) the grid
// cosine sum (K(0) = N by limit).
FIMatrix fim_toeplitz_constant(int L, int N, double nu, double M,
                               FimGrid grid = FimGrid::Endpoint);

// Exactly solvable case nu = r pi/2 on the midpoint grid: F is tridiagonal
// (MN/2 on the diagonal, -MN/4 off), with closed-form inverse
// [F^{-1}]_ij = (4/MN)(min(i,j) - ij/(L+1)) (1-based indices).
std::pair<FIMatrix, Eigen::MatrixXd> fim_exact_solvable(int L, int N, double M,
                                                        int r);

// Normalized determinant-of-FIM sweep: (det F)^(1/L) / (MN) per nu, values
// below 1e-14 reported as that floor.
std::vector<double> dfi_sweep(int L, double M, int N,
                              const std::vector<double>& nus);

// Two-sided Loewner comparison of the continuum FIM against the second-
// difference matrix D: returns the minimum eigenvalues of
// (F - (pi MN / 8 nu) D) and ((pi MN / 4 nu) D - F); both are >= -1e-8 MN
// when the sandwich holds.  Valid for nu in [pi/2, pi].
std::pair<double, double> loewner_check(int L, double M, int N, double nu);

// Continuum-limit FIM (MN/nu) * integral_0^nu of the constant-phase kernel;
// used by loewner_check and its tests.
FIMatrix fim_continuum(int L, double M, int N, double nu);

struct CrlbReport {
  std::vector<double> variance_floor;  // diagonal of F^{-1}
  double avg_correlation = 0.0;        // weighted mean of off-diag correlations
  bool correlation_defined = true;     // false for L = 1 (no pairs)
};

CrlbReport crlb_report(const FIMatrix& f);

}  // namespace pulselearn
