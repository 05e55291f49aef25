#pragma once

#include <Eigen/Dense>

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "expbasis/config.hpp"
#include "expbasis/covering.hpp"
#include "expbasis/geometry.hpp"

namespace expbasis {

/// Fourier transform of the domain's indicator at frequency xi, with the
/// convention f^(x) = integral f(t) e^{-2 pi i x.t} dt.
/// Interval unions sum the closed-form segment transforms; boxes use
/// |det A| e^{-2 pi i xi.t} prod_j e^{-pi i eta_j} sinc(eta_j), eta = A^T xi.
std::complex<double> chi_hat(const DomainSpec& spec, std::span<const double> xi);

/// sin(pi s)/(pi s), series near zero.
double sinc(double s);

/// Finite section of the Gram operator of E(Z^d) on L^2(D) over an explicit
/// frequency index set: entries(m, n) = <e_n, e_m> = chi_hat(idx_m - idx_n).
/// Hermitian, diagonal |D|, positive semidefinite.
struct GramMatrix {
    int dim = 1;
    int N = 0;  // truncation per axis when built by gram_matrix
    std::vector<std::array<int, 4>> indices;
    Eigen::MatrixXcd entries;

    Eigen::Index size() const { return entries.rows(); }
};

/// Section over the sup-norm ball {n : ||n||_inf <= N}, lexicographic order.
GramMatrix gram_matrix(const DomainSpec& spec, int N, const Config& cfg = default_config());

/// Section over an arbitrary index set (1-D indices).
GramMatrix gram_section(const DomainSpec& spec, const std::vector<int>& indices,
                        const Config& cfg = default_config());

struct GramEstimate {
    int N = 0;
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

/// Extremal eigenvalues of a finite section: dense Hermitian solve up to
/// cfg.gram_dense_limit, shifted power iteration above it (residual
/// cfg.power_tol, cap cfg.power_iter_cap; ConvergenceError carries partials).
GramEstimate extremal_eigenvalues(const GramMatrix& G, const Config& cfg = default_config());

/// Power-iteration path, exposed for testing against the dense solver.
GramEstimate extremal_eigenvalues_power(const GramMatrix& G, const Config& cfg = default_config());

struct BracketSum {
    double value = 0.0;
    std::optional<double> tail_bound;  // O(1/M), 1-D interval unions only
};

/// sum over ||m||_inf <= M of |chi_hat(y + m)|^2.
BracketSum bracket_sum(const DomainSpec& spec, std::span<const double> y, int M,
                       const Config& cfg = default_config());

/// Quadratic-form identities for a 1-D domain and a finite coefficient
/// vector a (frequencies first_index .. first_index + len - 1):
///   q1 = <G a, a>            (closed-form chi_hat kernel)
///   q2 = int |S(a)|^2 Phi    (quadrature on the exact fold)
///   q3 = ||G a||^2 over l2(Z) (closed-form kernel from Phi^2)
///   q4 = int |S(a)|^2 Phi^2  (quadrature)
/// q1 = q2 exactly; q3 = q4 exactly, with q3 the full-operator image norm
/// (a finite section drops an O(1/N) tail and would not satisfy the identity).
struct EnergyReport {
    double q1 = 0, q2 = 0, q3 = 0, q4 = 0;
    double d12 = 0, d34 = 0;
};

EnergyReport energy_identities(const DomainSpec& spec, int first_index,
                               const std::vector<std::complex<double>>& a,
                               long quadrature_n, const Config& cfg = default_config());

/// lhs = ||G a||^2 / lambda_max, mid = <G a, a>, rhs = lambda_max, for a unit
/// vector a and the finite section's lambda_max as operator-norm proxy.
/// Always lhs <= mid <= rhs for a PSD section.
struct HaaseGap {
    double lhs = 0, mid = 0, rhs = 0;
};

HaaseGap haase_gap(const GramMatrix& G, const Eigen::VectorXcd& a,
                   const Config& cfg = default_config());
HaaseGap haase_gap(const GramMatrix& G, const Eigen::VectorXcd& a, double lambda_max);

} // namespace expbasis
