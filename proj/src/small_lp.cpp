#include "small_lp.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace switchstab::lp {

namespace {

constexpr double kPivotTol = 1e-8; // tiny pivots amplify roundoff
constexpr double kCostTol = 1e-12;

struct Tableau {
    std::size_t rows = 0, cols = 0; // rows exclude the objective row
    std::vector<double> t;          // (rows + 1) x cols, last column rhs
    std::vector<std::size_t> basis;

    double& at(std::size_t r, std::size_t c) { return t[r * cols + c]; }
    double at(std::size_t r, std::size_t c) const { return t[r * cols + c]; }
};

void pivot(Tableau& tb, std::size_t pr, std::size_t pc) {
    const double pv = tb.at(pr, pc);
    for (std::size_t c = 0; c < tb.cols; ++c) tb.at(pr, c) /= pv;
    tb.at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= tb.rows; ++r) {
        if (r == pr) continue;
        const double f = tb.at(r, pc);
        if (f == 0.0) continue;
        for (std::size_t c = 0; c < tb.cols; ++c) tb.at(r, c) -= f * tb.at(pr, c);
        tb.at(r, pc) = 0.0;
    }
    tb.basis[pr] = pc;
}

// Minimizes the objective row over columns < limit. Bland's rule. Columns
// with a negative reduced cost but no pivot row are unbounded directions only
// when rays can exist at all (allow_ray); otherwise, and for barely negative
// costs, they are roundoff near a degenerate optimum and get retired.
// Returns false only for a decidedly improving ray.
bool run_simplex(Tableau& tb, std::size_t limit, bool allow_ray) {
    const std::size_t obj = tb.rows;
    const std::size_t rhs = tb.cols - 1;
    std::vector<char> retired(limit, 0);
    for (long iter = 0; iter < 50000; ++iter) {
        bool pivoted = false;
        for (std::size_t pc = 0; pc < limit && !pivoted; ++pc) {
            if (retired[pc]) continue;
            const double cost = tb.at(obj, pc);
            if (cost >= -kCostTol) continue;
            std::size_t pr = obj;
            double best = std::numeric_limits<double>::infinity();
            for (std::size_t r = 0; r < tb.rows; ++r) {
                const double a = tb.at(r, pc);
                if (a > kPivotTol) {
                    const double ratio = tb.at(r, rhs) / a;
                    if (ratio < best - 1e-12 ||
                        (ratio <= best + 1e-12 && (pr == obj || tb.basis[r] < tb.basis[pr]))) {
                        best = ratio;
                        pr = r;
                    }
                }
            }
            if (pr == obj) {
                if (allow_ray && cost < -1e-7) return false;
                retired[pc] = 1;
                continue;
            }
            pivot(tb, pr, pc);
            pivoted = true;
        }
        if (!pivoted) return true;
    }
    throw std::runtime_error("simplex iteration cap exceeded");
}

} // namespace

Result solve_max(const Problem& p) {
    const std::size_t n = p.c.size();
    const std::size_t m_ub = p.a_ub.size();
    const std::size_t m_eq = p.a_eq.size();
    const std::size_t m = m_ub + m_eq;

    // Inequalities get slacks; flipped inequalities and equalities need an
    // artificial to seed the basis.
    std::vector<bool> needs_art(m, false);
    std::size_t nart = 0;
    for (std::size_t r = 0; r < m; ++r) {
        const bool eq = r >= m_ub;
        const double rhs = eq ? p.b_eq[r - m_ub] : p.b_ub[r];
        needs_art[r] = eq || rhs < 0.0;
        if (needs_art[r]) ++nart;
    }

    const std::size_t cols = n + m_ub + nart + 1;
    Tableau tb;
    tb.rows = m;
    tb.cols = cols;
    tb.t.assign((m + 1) * cols, 0.0);
    tb.basis.assign(m, 0);

    std::size_t art = 0;
    for (std::size_t r = 0; r < m; ++r) {
        const bool eq = r >= m_ub;
        const auto& row = eq ? p.a_eq[r - m_ub] : p.a_ub[r];
        double rhs = eq ? p.b_eq[r - m_ub] : p.b_ub[r];
        const double sign = rhs < 0.0 ? -1.0 : 1.0;
        for (std::size_t c = 0; c < n; ++c) tb.at(r, c) = sign * row[c];
        if (!eq) tb.at(r, n + r) = sign;
        tb.at(r, cols - 1) = sign * rhs;
        if (needs_art[r]) {
            tb.at(r, n + m_ub + art) = 1.0;
            tb.basis[r] = n + m_ub + art;
            ++art;
        } else {
            tb.basis[r] = n + r; // slack with +1 coefficient
        }
    }

    if (nart > 0) {
        // Phase 1: minimize the artificial sum, expressed over the basis.
        const std::size_t obj = m;
        for (std::size_t r = 0; r < m; ++r) {
            if (!needs_art[r]) continue;
            for (std::size_t c = 0; c < cols; ++c) tb.at(obj, c) -= tb.at(r, c);
        }
        for (std::size_t a = 0; a < nart; ++a) tb.at(obj, n + m_ub + a) = 0.0;

        run_simplex(tb, n + m_ub, /*allow_ray=*/false); // phase 1 is bounded below by 0
        if (tb.at(obj, cols - 1) < -1e-7) return {Status::infeasible, 0.0, {}};

        // Drive leftover artificials out of the basis where possible.
        for (std::size_t r = 0; r < m; ++r) {
            if (tb.basis[r] < n + m_ub) continue;
            for (std::size_t c = 0; c < n + m_ub; ++c)
                if (std::abs(tb.at(r, c)) > kPivotTol) {
                    pivot(tb, r, c);
                    break;
                }
        }
    }

    // Phase 2: minimize -c.x.
    const std::size_t obj = m;
    for (std::size_t c = 0; c < cols; ++c) tb.at(obj, c) = 0.0;
    for (std::size_t c = 0; c < n; ++c) tb.at(obj, c) = -p.c[c];
    for (std::size_t r = 0; r < m; ++r) {
        if (tb.basis[r] >= n) continue; // slack or artificial basics cost nothing
        const double coef = tb.at(obj, tb.basis[r]);
        if (coef == 0.0) continue;
        for (std::size_t c = 0; c < cols; ++c) tb.at(obj, c) -= coef * tb.at(r, c);
        tb.at(obj, tb.basis[r]) = 0.0;
    }

    if (!run_simplex(tb, n + m_ub, /*allow_ray=*/true)) return {Status::unbounded, 0.0, {}};

    Result res;
    res.status = Status::optimal;
    res.x.assign(n, 0.0);
    for (std::size_t r = 0; r < m; ++r)
        if (tb.basis[r] < n) res.x[tb.basis[r]] = tb.at(r, cols - 1);
    res.objective = 0.0;
    for (std::size_t c = 0; c < n; ++c) res.objective += p.c[c] * res.x[c];
    return res;
}

} // namespace switchstab::lp
