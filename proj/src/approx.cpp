#include "fourierbf/approx.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>

#include "fourierbf/parallel.hpp"

namespace fbf {

namespace {

constexpr double kRankTolerance = 1e-10;

double frequency_of(int half_period) {
    return 2.0 * std::numbers::pi / (2.0 * half_period + 1.0);
}

Eigen::VectorXd to_vector(const RangeKernelSamples& samples) {
    return Eigen::Map<const Eigen::VectorXd>(samples.values.data(),
                                             static_cast<Eigen::Index>(samples.values.size()));
}

void append_number(std::string& out, const char* fmt, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, fmt, v);
    out += buf;
}

} // namespace

double FourierApproximation::evaluate(int t) const {
    // cos is even; feed |t| so evaluate(t) and evaluate(-t) are the same
    // arithmetic expression.
    const double base = frequency * std::abs(t);
    double sum = 0.0;
    for (int k = 0; k < terms; ++k)
        sum += coefficients[static_cast<size_t>(k)] * std::cos(base * k);
    return sum;
}

double evaluate_approximation(const FourierApproximation& approx, int t) {
    return approx.evaluate(t);
}

RangeKernelSamples tabulate_approximation(const FourierApproximation& approx) {
    const int R = approx.dynamic_range;
    RangeKernelSamples out;
    out.dynamic_range = R;
    out.values.assign(static_cast<size_t>(2 * R + 1), 0.0);
    for (int t = 0; t <= R; ++t) {
        const double v = approx.evaluate(t);
        out.values[static_cast<size_t>(R + t)] = v;
        out.values[static_cast<size_t>(R - t)] = v;
    }
    return out;
}

Eigen::MatrixXd design_matrix(int terms, int half_period, int dynamic_range) {
    if (terms < 1)
        throw std::invalid_argument("design_matrix: need at least one term");
    if (half_period < 1)
        throw std::invalid_argument("design_matrix: half period must be >= 1");
    if (dynamic_range < 1)
        throw std::invalid_argument("design_matrix: dynamic range must be >= 1");
    if (terms > 2 * dynamic_range + 1)
        throw std::invalid_argument("design_matrix: more columns than lattice points");

    const int R = dynamic_range;
    const double nu = frequency_of(half_period);
    Eigen::MatrixXd A(2 * R + 1, terms);
    for (int i = 0; i <= 2 * R; ++i) {
        const int t = i - R;
        A(i, 0) = 1.0;
        if (terms > 1) {
            const double c1 = std::cos(nu * t);
            A(i, 1) = c1;
            // cos(k x) from the Chebyshev recurrence on cos(x)
            for (int j = 2; j < terms; ++j)
                A(i, j) = 2.0 * c1 * A(i, j - 1) - A(i, j - 2);
        }
    }
    return A;
}

FitResult fit_coefficients(const Eigen::MatrixXd& A, const Eigen::VectorXd& b) {
    if (A.rows() != b.size())
        throw std::invalid_argument("fit_coefficients: row count does not match samples");
    if (!A.allFinite() || !b.allFinite())
        throw std::runtime_error("fit_coefficients: non-finite entries");

    Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXd> cod;
    cod.setThreshold(kRankTolerance);
    cod.compute(A);
    const Eigen::VectorXd c = cod.solve(b);

    FitResult result;
    result.coefficients.assign(c.data(), c.data() + c.size());
    result.error = (A * c - b).squaredNorm();
    return result;
}

FourierApproximation fit_fixed_period(const RangeKernelSamples& samples, int terms,
                                      int half_period) {
    const Eigen::MatrixXd A = design_matrix(terms, half_period, samples.dynamic_range);
    const FitResult fit = fit_coefficients(A, to_vector(samples));

    FourierApproximation approx;
    approx.terms = terms;
    approx.half_period = half_period;
    approx.dynamic_range = samples.dynamic_range;
    approx.frequency = frequency_of(half_period);
    approx.coefficients = fit.coefficients;
    return approx;
}

std::vector<double> scan_period_errors(int terms, const RangeKernelSamples& samples,
                                       int t_max, int threads) {
    if (t_max < 1)
        throw std::invalid_argument("period scan: t_max must be >= 1");
    const Eigen::VectorXd b = to_vector(samples);
    std::vector<double> errors(static_cast<size_t>(t_max), 0.0);
    parallel_for(1, t_max + 1, threads, [&](int T) {
        const Eigen::MatrixXd A = design_matrix(terms, T, samples.dynamic_range);
        errors[static_cast<size_t>(T - 1)] = fit_coefficients(A, b).error;
    });
    return errors;
}

PeriodScanResult min_error_over_period(int terms, const RangeKernelSamples& samples,
                                       int t_max, int threads) {
    const std::vector<double> errors = scan_period_errors(terms, samples, t_max, threads);
    PeriodScanResult best{1, errors[0]};
    for (int T = 2; T <= t_max; ++T) {
        const double e = errors[static_cast<size_t>(T - 1)];
        if (e < best.best_error) { // ties keep the smaller T
            best.best_half_period = T;
            best.best_error = e;
        }
    }
    return best;
}

FourierApproximation OptimizationReport::approximation(int dynamic_range) const {
    FourierApproximation approx;
    approx.terms = best_terms;
    approx.half_period = best_half_period;
    approx.dynamic_range = dynamic_range;
    approx.frequency = frequency_of(best_half_period);
    approx.coefficients = coefficients;
    return approx;
}

std::string OptimizationReport::to_text() const {
    std::string out;
    out += "K* = " + std::to_string(best_terms);
    out += "\nT* = " + std::to_string(best_half_period);
    out += "\nachieved_error = ";
    append_number(out, "%.17g", achieved_error);
    out += "\ntolerance = ";
    append_number(out, "%.17g", tolerance);
    out += "\nT_max = " + std::to_string(t_max);
    out += "\ncoefficients =";
    for (double c : coefficients) {
        out += ' ';
        append_number(out, "%.17g", c);
    }
    out += "\nper-order minima (K: T_best E_best):\n";
    for (const auto& p : per_order) {
        out += "  " + std::to_string(p.terms) + ": " + std::to_string(p.best_half_period) + ' ';
        append_number(out, "%.17g", p.best_error);
        out += '\n';
    }
    return out;
}

OptimizationReport optimize_parameters(const RangeKernelSamples& samples, double tolerance,
                                       const OptimizeOptions& options) {
    if (!(tolerance > 0.0))
        throw std::invalid_argument("optimize_parameters: tolerance must be positive");
    const int R = samples.dynamic_range;
    const int t_max = options.t_max > 0 ? options.t_max : 10 * R;
    const int k_max = options.k_max > 0 ? options.k_max : 2 * R + 1;
    if (k_max > 2 * R + 1)
        throw std::invalid_argument("optimize_parameters: k_max exceeds 2R+1");

    OptimizationReport report;
    report.tolerance = tolerance;
    report.t_max = t_max;

    // Columns k and (2T+1-k) coincide on the lattice, so at any T <= t_max
    // the cosine span stops growing after K = T+1 terms; scanning beyond
    // t_max+1 terms cannot lower e(K).
    const int k_cap = std::min(k_max, t_max + 1);

    for (int K = 1; K <= k_cap; ++K) {
        const std::vector<double> errors =
            scan_period_errors(K, samples, t_max, options.threads);
        if (options.record_surface)
            for (int T = 1; T <= t_max; ++T)
                report.surface.push_back({K, T, errors[static_cast<size_t>(T - 1)]});

        PeriodScanResult best{1, errors[0]};
        for (int T = 2; T <= t_max; ++T) {
            const double e = errors[static_cast<size_t>(T - 1)];
            if (e < best.best_error) {
                best.best_half_period = T;
                best.best_error = e;
            }
        }
        report.per_order.push_back({K, best.best_half_period, best.best_error});

        if (best.best_error <= tolerance) {
            report.best_terms = K;
            report.best_half_period = best.best_half_period;
            report.achieved_error = best.best_error;
            report.coefficients =
                fit_fixed_period(samples, K, best.best_half_period).coefficients;
            return report;
        }
    }

    // tolerance unreachable; hand back the best fit seen (e(K) is
    // nonincreasing, but take the minimum rather than assume it)
    const auto best = std::min_element(
        report.per_order.begin(), report.per_order.end(),
        [](const PerOrderError& a, const PerOrderError& b) { return a.best_error < b.best_error; });
    report.best_terms = best->terms;
    report.best_half_period = best->best_half_period;
    report.achieved_error = best->best_error;
    report.coefficients =
        fit_fixed_period(samples, best->terms, best->best_half_period).coefficients;
    const std::string reason =
        k_cap < k_max ? "tolerance unreachable: the cosine span saturates at K = T_max + 1 = " +
                            std::to_string(k_cap)
                      : "tolerance unreachable within K_max = " + std::to_string(k_max);
    throw ToleranceUnreachable(reason, std::move(report));
}

int count_local_minima(const std::vector<double>& errors) {
    const int n = static_cast<int>(errors.size());
    if (n < 2)
        return n;
    int count = 0;
    for (int i = 0; i < n; ++i) {
        const bool left_ok = i == 0 || errors[static_cast<size_t>(i)] < errors[static_cast<size_t>(i - 1)];
        const bool right_ok =
            i == n - 1 || errors[static_cast<size_t>(i)] < errors[static_cast<size_t>(i + 1)];
        if (left_ok && right_ok)
            ++count;
    }
    return count;
}

std::string surface_to_csv(const std::vector<ErrorSurfacePoint>& surface) {
    std::string out = "K,T,E\n";
    for (const auto& p : surface) {
        out += std::to_string(p.terms) + ',' + std::to_string(p.half_period) + ',';
        append_number(out, "%.17g", p.error);
        out += '\n';
    }
    return out;
}

} // namespace fbf
