#pragma once

#include <Eigen/Dense>
#include <stdexcept>
#include <string>
#include <vector>

#include "fourierbf/kernels.hpp"

namespace fbf {

/// K-term cosine approximation of a range kernel on {-R,...,R}:
///   phihat(t) = sum_{k=0}^{K-1} c_k cos(nu k t),  nu = 2 pi / (2T+1).
struct FourierApproximation {
    int terms = 0;        // K
    int half_period = 0;  // T
    int dynamic_range = 0; // R
    double frequency = 0.0; // nu, derived from T
    std::vector<double> coefficients; // c_0 ... c_{K-1}

    double evaluate(int t) const;
};

double evaluate_approximation(const FourierApproximation& approx, int t);

/// Samples phihat on the lattice {-R,...,R}; exactly symmetric (mirrored).
/// The result is plain data and may violate the invariants that
/// sample_range_kernel guarantees (e.g. it can go negative).
RangeKernelSamples tabulate_approximation(const FourierApproximation& approx);

/// Cosine design matrix: entry (i, j) = cos(nu (i - R) (j)) for
/// 0-based i = 0..2R, j = 0..K-1, nu = 2 pi / (2T+1).
Eigen::MatrixXd design_matrix(int terms, int half_period, int dynamic_range);

struct FitResult {
    std::vector<double> coefficients;
    double error = 0.0; // ||A c - b||^2
};

/// Least-squares minimizer of ||A c - b||^2 via a rank-revealing orthogonal
/// factorization (rank tolerance 1e-10 relative to the largest column norm);
/// returns the minimum-norm solution when A is rank deficient.
FitResult fit_coefficients(const Eigen::MatrixXd& A, const Eigen::VectorXd& b);

/// Least-squares fit of the samples at a fixed (K, T). With T = R this is
/// the fixed-period baseline used for comparisons.
FourierApproximation fit_fixed_period(const RangeKernelSamples& samples, int terms,
                                      int half_period);

struct ErrorSurfacePoint {
    int terms = 0;
    int half_period = 0;
    double error = 0.0;
};

/// E(K, T) for T = 1..t_max at fixed K; result[T-1] = E(K, T).
std::vector<double> scan_period_errors(int terms, const RangeKernelSamples& samples,
                                       int t_max, int threads = 1);

struct PeriodScanResult {
    int best_half_period = 0;
    double best_error = 0.0;
};

/// Exhaustive scan of E(K, T) over T = 1..t_max; ties broken toward the
/// smallest T.
PeriodScanResult min_error_over_period(int terms, const RangeKernelSamples& samples,
                                       int t_max, int threads = 1);

struct PerOrderError {
    int terms = 0;
    int best_half_period = 0;
    double best_error = 0.0; // e(K)
};

struct OptimizationReport {
    int best_terms = 0;       // K*
    int best_half_period = 0; // T*
    std::vector<double> coefficients;
    double achieved_error = 0.0;
    double tolerance = 0.0;
    int t_max = 0;
    std::vector<PerOrderError> per_order; // K = 1 .. K*
    std::vector<ErrorSurfacePoint> surface; // filled only when requested

    FourierApproximation approximation(int dynamic_range) const;
    std::string to_text() const;
};

struct OptimizeOptions {
    int t_max = 0;  // 0 -> 10 R
    int k_max = 0;  // 0 -> 2R + 1
    bool record_surface = false;
    int threads = 1;
};

/// Raised when no K <= k_max reaches the tolerance; carries the best fit found.
class ToleranceUnreachable : public std::runtime_error {
public:
    ToleranceUnreachable(std::string message, OptimizationReport best)
        : std::runtime_error(std::move(message)), best_found(std::move(best)) {}
    OptimizationReport best_found;
};

/// Finds the smallest K with e(K) <= tolerance together with the minimizing
/// T and the fitted coefficients. A candidate (K, T) is accepted only when
/// its error is <= min(current best, tolerance), so (K*, T*) is first
/// recorded once the error drops below the tolerance; equal errors keep the
/// smaller T.
OptimizationReport optimize_parameters(const RangeKernelSamples& samples, double tolerance,
                                       const OptimizeOptions& options = {});

/// Number of strict local minima of the scanned error along T. The scan
/// itself never relies on unimodality; this is a diagnostic for reports.
int count_local_minima(const std::vector<double>& errors);

/// CSV with header "K,T,E", one row per surface point.
std::string surface_to_csv(const std::vector<ErrorSurfacePoint>& surface);

} // namespace fbf
