#pragma once

#include <string>
#include <vector>

#include "fourierbf/approx.hpp"

namespace fbf {

/// Offline table of optimal (K*, T*) over a (sigma, log10(1/eps)) grid.
/// Rows follow sigma_grid, columns follow logeps_grid; both grids are
/// strictly ascending with at least two entries. Coefficients are never
/// stored; they are re-fitted at query time.
struct LookupTable {
    int dynamic_range = 0;
    std::vector<double> sigma_grid;
    std::vector<double> logeps_grid; // log10(1/eps), ascending
    std::vector<std::vector<int>> terms;       // K*[sigma][logeps]
    std::vector<std::vector<int>> half_period; // T*[sigma][logeps]

    size_t rows() const { return sigma_grid.size(); }
    size_t cols() const { return logeps_grid.size(); }
};

/// Fills every grid cell by running the parameter optimization for the
/// Gaussian kernel at that (sigma, eps). Deterministic; a cell that cannot
/// reach its tolerance fails the build with the cell identified.
LookupTable build_lut(const std::vector<double>& sigmas, const std::vector<double>& epsilons,
                      int dynamic_range, int t_max = 0, int threads = 1);

struct LutQuery {
    int terms = 0;       // ceil of the interpolated K
    int half_period = 0; // nearest integer of the interpolated T
};

/// Bilinear interpolation in (sigma, log10(1/eps)). Exact grid nodes return
/// the stored values unchanged; queries outside the bounding box are a
/// range error (no extrapolation).
LutQuery query_lut(const LookupTable& table, double sigma, double eps);

/// Text format, LF line endings:
///   R <int>
///   sigma <v1> <v2> ...
///   logeps <v1> ...
///   K <ints...>     (one line per sigma row)
///   T <ints...>     (one line per sigma row)
void save_lut(const LookupTable& table, const std::string& path);
LookupTable load_lut(const std::string& path);

struct TrendViolation {
    std::string axis; // "K" or "T"
    size_t row = 0, col = 0;
    std::string detail;
};

/// Checks the empirical trends (K* nonincreasing and T* nondecreasing with
/// sigma at fixed eps). Violations are reported, never an error.
std::vector<TrendViolation> check_monotone_trends(const LookupTable& table);

} // namespace fbf
