#pragma once

#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "pai/matrix.hpp"
#include "pai/types.hpp"

namespace pai {

struct DiagonalFixpointReport {
    std::size_t iterations = 0;
    double max_residual = 0.0;  // max_i |PAI(i,i) - 1| over rows with margin > 0
    bool converged = false;
};

// The neutral rule drives the diagonal to the point where its own overlapping
// PAI equals 1: n_ii <- margin(i)^2 / total. paper_literal keeps the printed
// margin/total update for comparison; its fixed point is not neutral, so
// convergence there is judged by diagonal change instead of the residual.
enum class DiagonalUpdateRule { neutral, paper_literal };

namespace detail {

// The neutrality residual evaluated both ways: in extended precision (the
// iteration's own view) and in plain double (what pai_overlapping computes).
// Convergence requires both, so callers never observe a diagonal whose
// double-precision PAI strays past the tolerance, and a tolerance of 0 runs
// to bitwise stationarity instead of stopping on a rounding coincidence.
struct Residuals {
    long double wide = 0.0L;
    double narrow = 0.0;
};

inline Residuals neutrality_residuals(const CoauthMatrix& m,
                                      const std::vector<long double>& margins_wide,
                                      long double total_wide) {
    Residuals r;
    const std::vector<double> margins = m.margins();
    const double total = m.total();
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (margins_wide[i] <= 0.0L) continue;
        const long double wide =
            total_wide * m.at(i, i) / (margins_wide[i] * margins_wide[i]);
        r.wide = std::max(r.wide, std::abs(wide - 1.0L));
        const double narrow = total * m.at(i, i) / (margins[i] * margins[i]);
        r.narrow = std::max(r.narrow, std::abs(narrow - 1.0));
    }
    return r;
}

}  // namespace detail

// Jacobi sweeps from a zeroed diagonal: every update in a sweep uses the
// previous sweep's margins and total, so evaluation order cannot change the
// result. Sweep sums and the update quotient run in extended precision; with
// plain doubles the double rounding of margin^2/total can stall the iteration
// one ulp short of the fixed point. Zero-margin rows stay at 0. When max_iter
// runs out the matrix is still returned, converged = false.
inline std::pair<CoauthMatrix, DiagonalFixpointReport> iterate_diagonal(
    const CoauthMatrix& matrix, double tolerance, std::size_t max_iter,
    DiagonalUpdateRule rule = DiagonalUpdateRule::neutral) {
    CoauthMatrix m = matrix;
    m.diagonal_strategy = DiagonalStrategy::iterative;
    const std::size_t n = m.size();
    for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 0.0;

    DiagonalFixpointReport report;
    std::vector<long double> margins_wide(n);
    long double total_wide = 0.0L;
    auto refresh_sums = [&] {
        total_wide = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            long double row = 0.0L;
            for (std::size_t j = 0; j < n; ++j) row += m.at(i, j);
            margins_wide[i] = row;
            total_wide += row;
        }
    };

    double change = 0.0;
    bool stationary = n == 0;
    for (std::size_t sweep = 0; sweep < max_iter && !stationary; ++sweep) {
        refresh_sums();

        if (rule == DiagonalUpdateRule::neutral) {
            auto res = detail::neutrality_residuals(m, margins_wide, total_wide);
            report.max_residual = std::max(static_cast<double>(res.wide), res.narrow);
            if (res.wide <= tolerance && res.narrow <= tolerance) {
                report.converged = true;
                return {std::move(m), report};
            }
        }

        stationary = true;
        change = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (margins_wide[i] <= 0.0L || total_wide <= 0.0L) continue;
            const double next = static_cast<double>(
                rule == DiagonalUpdateRule::neutral
                    ? margins_wide[i] * margins_wide[i] / total_wide
                    : margins_wide[i] / total_wide);
            change = std::max(change, std::abs(next - m.at(i, i)));
            if (next != m.at(i, i)) stationary = false;
            m.at(i, i) = next;
        }
        report.iterations = sweep + 1;

        if (rule == DiagonalUpdateRule::paper_literal) {
            report.max_residual = change;
            if (change <= tolerance) {
                report.converged = true;
                return {std::move(m), report};
            }
        }
    }

    refresh_sums();
    if (rule == DiagonalUpdateRule::neutral) {
        auto res = detail::neutrality_residuals(m, margins_wide, total_wide);
        report.max_residual = std::max(static_cast<double>(res.wide), res.narrow);
        report.converged = res.wide <= tolerance && res.narrow <= tolerance;
    } else {
        report.max_residual = change;
        report.converged = change <= tolerance;
    }
    return {std::move(m), report};
}

}  // namespace pai
