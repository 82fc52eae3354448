#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "switchstab/linalg.hpp"

namespace switchstab {

/// Uniform grid on the half-circle of directions, theta_k = pi*k/n; antipodal
/// directions are identified, so interpolation wraps n back to 0.
struct AngularGrid {
    int n;

    explicit AngularGrid(int nodes) : n(nodes) {
        if (n < 8) throw input_error("angular grid needs at least 8 nodes");
    }
    double spacing() const { return 3.141592653589793238462643383279502884 / n; }
    double angle(int k) const { return spacing() * k; }
};

/// Sampled positively-homogeneous function on unit directions.
struct ValueTable {
    enum class Kind { sup_inf, inf_sup };

    AngularGrid grid;
    std::vector<double> values;
    double lambda = 0.0;
    Kind kind = Kind::inf_sup;
    double residual = 0.0; // final fixed-point increment / truncation gap
    bool converged = false;
    int iterations = 0;
};

/// Piecewise-linear interpolation in angle with the antipodal identification.
double interpolate(const AngularGrid& grid, const std::vector<double>& values, double phi);

/// Relative slack used when comparing ratios against a target rate; absorbs
/// the float noise of the from-below fixed-point iteration (~2*tol) without
/// masking genuine violations (1e-2 scale).
inline constexpr double kRatioSlack = 1e-5;

/// Default sweep cap for the inf-sup iteration. Each sweep extends the
/// explored trajectory horizon by one step; rates with real certifying tables
/// converge within a few dozen sweeps at tol 1e-6. Runs still moving after
/// hundreds of sweeps are tracking interpolation smoothing rather than the
/// value function, so the table is returned unconverged for inspection.
inline constexpr int kDefaultValueIterations = 250;

/// g_t(theta) ~ min over length-t products of |A theta| by dynamic
/// programming on the grid (g_0 = 1).
std::vector<double> min_product_profile(const MatrixSet& set, int t, const AngularGrid& grid);

/// Truncated sup-inf value: max_{0<=t<=T} g_t(theta) / lambda^t. The residual
/// reports the positive part of the final term's contribution. Throws
/// nonconvergence_error when the running values exceed 1e12 (rate too small).
ValueTable sup_inf_value(const MatrixSet& set, double lambda, int horizon, const AngularGrid& grid);

/// One application of the inf-sup update to an arbitrary table:
/// max(1, min_A (|A theta|/lambda) * w(angle(A theta))).
std::vector<double> bellman_sweep(const MatrixSet& set, const AngularGrid& grid,
                                  const std::vector<double>& w, double lambda);

/// Inf-sup value by monotone fixed-point iteration from W = 1:
/// W <- max(1, min_A (|A theta|/lambda) * W(angle(A theta))). Stops at
/// sup-increment <= tol or max_iter; values above 1e12 throw
/// nonconvergence_error ("rate not certifiable").
ValueTable inf_sup_value(const MatrixSet& set, double lambda, const AngularGrid& grid,
                         int max_iter = kDefaultValueIterations, double tol = 1e-6);

/// One-step decrease factor r(theta) = min_A |A theta| W(angle(A theta)) / W(theta).
std::vector<double> decrease_ratio(const ValueTable& table, const MatrixSet& set);

/// Fraction of nodes whose decrease ratio exceeds lambda * (1 + kRatioSlack).
double ratio_exceedance_fraction(const ValueTable& table, const MatrixSet& set, double lambda);

struct FeedbackArc {
    double begin = 0.0;
    double end = 0.0;
    std::uint32_t mode = 0;
};

struct FeedbackPartition {
    std::vector<FeedbackArc> arcs; // cover [0, pi)
    double mu = 0.0;               // certified per-step decrease factor
    double max_ratio = 0.0;        // largest node ratio seen (diagnostic)
};

/// Piecewise-constant feedback from a value table: per-node argmin mode
/// merged into arcs, certified at arc endpoints and midpoints. Throws
/// nonconvergence_error ("not certifiable at mu") when a node ratio exceeds
/// mu (up to kRatioSlack).
FeedbackPartition extract_feedback(const ValueTable& table, const MatrixSet& set, double mu);

/// Closed loop x_{k+1} = A_{sigma(x_k)} x_k driven by the partition (d = 2).
/// Returns steps+1 states starting with x0.
std::vector<Vec> closed_loop_simulate(const FeedbackPartition& partition, const MatrixSet& set,
                                      const Vec& x0, int steps);

/// Same loop with an arbitrary 0-homogeneous rule (any dimension).
std::vector<Vec> closed_loop_simulate(const std::function<std::uint32_t(const Vec&)>& feedback,
                                      const MatrixSet& set, const Vec& x0, int steps);

} // namespace switchstab
