#include "fourierbf/lut.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "fourierbf/parallel.hpp"

namespace fbf {

namespace {

void require_strictly_ascending(const std::vector<double>& grid, const char* name) {
    if (grid.size() < 2)
        throw std::invalid_argument(std::string("LUT: ") + name +
                                    " grid needs at least two points");
    for (size_t i = 1; i < grid.size(); ++i)
        if (!(grid[i] > grid[i - 1]))
            throw std::invalid_argument(std::string("LUT: ") + name +
                                        " grid must be strictly ascending");
}

// Bracketing interval for x in `grid`, clamping the top node into the last
// interval so x == grid.back() interpolates with t == 1.
size_t locate(const std::vector<double>& grid, double x) {
    size_t i = static_cast<size_t>(std::upper_bound(grid.begin(), grid.end(), x) -
                                   grid.begin());
    if (i > 0)
        --i;
    return std::min(i, grid.size() - 2);
}

double lerp(double a, double b, double t) { return a + t * (b - a); }

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

int parse_int_token(const std::string& token, int line_no, const std::string& path) {
    size_t pos = 0;
    long v = 0;
    try {
        v = std::stol(token, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != token.size() || token.empty())
        throw std::runtime_error("LUT: non-integer entry '" + token + "' at line " +
                                 std::to_string(line_no) + " of " + path);
    return static_cast<int>(v);
}

} // namespace

LookupTable build_lut(const std::vector<double>& sigmas, const std::vector<double>& epsilons,
                      int dynamic_range, int t_max, int threads) {
    require_strictly_ascending(sigmas, "sigma");
    for (double s : sigmas)
        if (!(s > 0.0))
            throw std::invalid_argument("LUT: sigma values must be positive");

    if (epsilons.size() < 2)
        throw std::invalid_argument("LUT: eps grid needs at least two points");
    std::vector<double> logeps(epsilons.size());
    for (size_t i = 0; i < epsilons.size(); ++i) {
        if (!(epsilons[i] > 0.0) || !(epsilons[i] < 1.0))
            throw std::invalid_argument("LUT: eps values must be in (0, 1)");
        logeps[i] = std::log10(1.0 / epsilons[i]);
    }
    require_strictly_ascending(logeps, "log10(1/eps)");

    LookupTable table;
    table.dynamic_range = dynamic_range;
    table.sigma_grid = sigmas;
    table.logeps_grid = logeps;
    table.terms.assign(sigmas.size(), std::vector<int>(epsilons.size(), 0));
    table.half_period.assign(sigmas.size(), std::vector<int>(epsilons.size(), 0));

    const int cells = static_cast<int>(sigmas.size() * epsilons.size());
    std::vector<std::string> failures(static_cast<size_t>(cells));
    parallel_for(0, cells, threads, [&](int cell) {
        const size_t i = static_cast<size_t>(cell) / epsilons.size();
        const size_t j = static_cast<size_t>(cell) % epsilons.size();
        try {
            const RangeKernelSamples samples =
                sample_range_kernel(RangeKernelSpec::gaussian(sigmas[i], dynamic_range));
            OptimizeOptions opt;
            opt.t_max = t_max;
            const OptimizationReport report =
                optimize_parameters(samples, epsilons[j], opt);
            table.terms[i][j] = report.best_terms;
            table.half_period[i][j] = report.best_half_period;
        } catch (const std::exception& e) {
            failures[static_cast<size_t>(cell)] = e.what();
        }
    });

    for (int cell = 0; cell < cells; ++cell) {
        if (!failures[static_cast<size_t>(cell)].empty()) {
            const size_t i = static_cast<size_t>(cell) / epsilons.size();
            const size_t j = static_cast<size_t>(cell) % epsilons.size();
            throw std::runtime_error("LUT build failed at cell sigma=" +
                                     format_double(sigmas[i]) + " eps=" +
                                     format_double(epsilons[j]) + ": " +
                                     failures[static_cast<size_t>(cell)]);
        }
    }
    return table;
}

LutQuery query_lut(const LookupTable& table, double sigma, double eps) {
    if (table.rows() < 2 || table.cols() < 2)
        throw std::invalid_argument("LUT: malformed table");
    if (!(eps > 0.0) || !(eps < 1.0))
        throw std::out_of_range("LUT query: eps must be in (0, 1)");
    const double le = std::log10(1.0 / eps);
    const auto& sg = table.sigma_grid;
    const auto& lg = table.logeps_grid;
    if (sigma < sg.front() || sigma > sg.back() || le < lg.front() || le > lg.back())
        throw std::out_of_range("LUT query: (sigma, eps) outside the table grid");

    const size_t i = locate(sg, sigma);
    const size_t j = locate(lg, le);
    const double tx = (sigma - sg[i]) / (sg[i + 1] - sg[i]);
    const double ty = (le - lg[j]) / (lg[j + 1] - lg[j]);

    const auto bilinear = [&](const std::vector<std::vector<int>>& grid) {
        const double lo = lerp(grid[i][j], grid[i][j + 1], ty);
        const double hi = lerp(grid[i + 1][j], grid[i + 1][j + 1], ty);
        return lerp(lo, hi, tx);
    };

    LutQuery q;
    // K rounds up (over-provisioning the order is always safe), T to nearest
    q.terms = static_cast<int>(std::ceil(bilinear(table.terms)));
    q.half_period = static_cast<int>(std::lround(bilinear(table.half_period)));
    return q;
}

void save_lut(const LookupTable& table, const std::string& path) {
    std::ofstream out(path, std::ios::binary); // LF endings everywhere
    if (!out)
        throw std::runtime_error("LUT: cannot open " + path + " for writing");
    out << "R " << table.dynamic_range << '\n';
    out << "sigma";
    for (double s : table.sigma_grid)
        out << ' ' << format_double(s);
    out << "\nlogeps";
    for (double l : table.logeps_grid)
        out << ' ' << format_double(l);
    out << '\n';
    for (const auto& row : table.terms) {
        out << 'K';
        for (int v : row)
            out << ' ' << v;
        out << '\n';
    }
    for (const auto& row : table.half_period) {
        out << 'T';
        for (int v : row)
            out << ' ' << v;
        out << '\n';
    }
    if (!out)
        throw std::runtime_error("LUT: write failed for " + path);
}

LookupTable load_lut(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("LUT: cannot open " + path);

    LookupTable table;
    std::string line;
    int line_no = 0;

    const auto next_line = [&](const char* expect) {
        if (!std::getline(in, line))
            throw std::runtime_error(std::string("LUT: missing ") + expect + " line at line " +
                                     std::to_string(line_no + 1) + " of " + path);
        ++line_no;
    };

    const auto parse_tagged = [&](const std::string& tag) {
        std::istringstream iss(line);
        std::string got;
        iss >> got;
        if (got != tag)
            throw std::runtime_error("LUT: expected '" + tag + "' at line " +
                                     std::to_string(line_no) + " of " + path + ", got '" +
                                     got + "'");
        return iss;
    };

    next_line("R");
    {
        auto iss = parse_tagged("R");
        std::string token;
        if (!(iss >> token))
            throw std::runtime_error("LUT: missing R value at line 1 of " + path);
        table.dynamic_range = parse_int_token(token, line_no, path);
        if (table.dynamic_range < 1)
            throw std::runtime_error("LUT: R must be >= 1 in " + path);
    }

    next_line("sigma");
    {
        auto iss = parse_tagged("sigma");
        double v = 0.0;
        while (iss >> v)
            table.sigma_grid.push_back(v);
    }
    next_line("logeps");
    {
        auto iss = parse_tagged("logeps");
        double v = 0.0;
        while (iss >> v)
            table.logeps_grid.push_back(v);
    }
    require_strictly_ascending(table.sigma_grid, "sigma");
    require_strictly_ascending(table.logeps_grid, "log10(1/eps)");

    const auto parse_rows = [&](const std::string& tag, std::vector<std::vector<int>>& out) {
        for (size_t i = 0; i < table.sigma_grid.size(); ++i) {
            next_line(tag.c_str());
            auto iss = parse_tagged(tag);
            std::vector<int> row;
            std::string token;
            while (iss >> token)
                row.push_back(parse_int_token(token, line_no, path));
            if (row.size() != table.logeps_grid.size())
                throw std::runtime_error("LUT: row length mismatch at line " +
                                         std::to_string(line_no) + " of " + path);
            for (int v : row)
                if (v < 1)
                    throw std::runtime_error("LUT: non-positive entry at line " +
                                             std::to_string(line_no) + " of " + path);
            out.push_back(std::move(row));
        }
    };
    parse_rows("K", table.terms);
    parse_rows("T", table.half_period);
    return table;
}

std::vector<TrendViolation> check_monotone_trends(const LookupTable& table) {
    std::vector<TrendViolation> violations;
    for (size_t j = 0; j < table.cols(); ++j) {
        for (size_t i = 1; i < table.rows(); ++i) {
            if (table.terms[i][j] > table.terms[i - 1][j])
                violations.push_back({"K", i, j,
                                      "K* increased with sigma at fixed eps (" +
                                          std::to_string(table.terms[i - 1][j]) + " -> " +
                                          std::to_string(table.terms[i][j]) + ")"});
            if (table.half_period[i][j] < table.half_period[i - 1][j])
                violations.push_back({"T", i, j,
                                      "T* decreased with sigma at fixed eps (" +
                                          std::to_string(table.half_period[i - 1][j]) + " -> " +
                                          std::to_string(table.half_period[i][j]) + ")"});
        }
    }
    return violations;
}

} // namespace fbf
