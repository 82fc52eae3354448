#include "switchstab/lyapunov.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "switchstab/kernels.hpp"
#include "switchstab/parallel.hpp"

namespace switchstab {

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;
constexpr double kOverflow = 1e12;

double fold_half_circle(double phi) {
    double f = std::fmod(phi, kPi);
    if (f < 0.0) f += kPi;
    if (f >= kPi) f = 0.0; // fmod can land exactly on pi after the add
    return f;
}

// Per-mode precomputation for one grid: |A theta_k| and the interpolation
// stencil of angle(A theta_k). One-time atan2 cost; every sweep is then a
// gather-multiply kernel call.
struct ModePlan {
    std::vector<double> norm;
    std::vector<std::int32_t> i0, i1;
    std::vector<double> w0, w1;
};

ModePlan build_plan(const Matrix& a, const AngularGrid& grid) {
    const int n = grid.n;
    ModePlan p;
    p.norm.resize(n);
    p.i0.resize(n);
    p.i1.resize(n);
    p.w0.resize(n);
    p.w1.resize(n);
    for (int k = 0; k < n; ++k) {
        const double th = grid.angle(k);
        const double x = std::cos(th), y = std::sin(th);
        const double u = a(0, 0) * x + a(0, 1) * y;
        const double v = a(1, 0) * x + a(1, 1) * y;
        const double nm = std::sqrt(u * u + v * v);
        p.norm[k] = nm;
        if (nm == 0.0) {
            p.i0[k] = p.i1[k] = 0;
            p.w0[k] = p.w1[k] = 0.5;
            continue;
        }
        const double phi = fold_half_circle(std::atan2(v, u));
        double pos = phi / grid.spacing();
        int base = static_cast<int>(pos);
        if (base >= n) base = n - 1;
        const double frac = pos - base;
        p.i0[k] = base;
        p.i1[k] = (base + 1) % n;
        p.w0[k] = 1.0 - frac;
        p.w1[k] = frac;
    }
    return p;
}

std::vector<ModePlan> build_plans(const MatrixSet& set, const AngularGrid& grid) {
    if (set.dim != 2) throw method_inapplicable_error("value tables are built for dimension 2 only");
    std::vector<ModePlan> plans;
    plans.reserve(set.size());
    for (const auto& m : set.modes) plans.push_back(build_plan(m, grid));
    return plans;
}

// acc[k] = min over modes of |A theta_k| * interp(tab, angle(A theta_k)).
void min_mode_images(const std::vector<ModePlan>& plans, const std::vector<double>& tab,
                     std::vector<double>& acc, std::vector<double>& scratch) {
    const std::size_t n = tab.size();
    acc.assign(n, std::numeric_limits<double>::infinity());
    scratch.resize(n);
    for (const auto& p : plans) {
        parallel_for(n, [&](std::size_t lo, std::size_t hi) {
            kernels::gather_interp_scale(tab.data(), p.i0.data() + lo, p.i1.data() + lo,
                                         p.w0.data() + lo, p.w1.data() + lo, p.norm.data() + lo,
                                         scratch.data() + lo, hi - lo);
        });
        kernels::min_inplace(acc.data(), scratch.data(), n);
    }
}

} // namespace

double interpolate(const AngularGrid& grid, const std::vector<double>& values, double phi) {
    const double f = fold_half_circle(phi);
    double pos = f / grid.spacing();
    int base = static_cast<int>(pos);
    if (base >= grid.n) base = grid.n - 1;
    const double frac = pos - base;
    return (1.0 - frac) * values[static_cast<std::size_t>(base)] +
           frac * values[static_cast<std::size_t>((base + 1) % grid.n)];
}

std::vector<double> min_product_profile(const MatrixSet& set, int t, const AngularGrid& grid) {
    if (t < 0) throw input_error("profile horizon must be >= 0");
    const auto plans = build_plans(set, grid);
    std::vector<double> g(static_cast<std::size_t>(grid.n), 1.0);
    std::vector<double> acc, scratch;
    for (int step = 0; step < t; ++step) {
        min_mode_images(plans, g, acc, scratch);
        g.swap(acc);
    }
    return g;
}

ValueTable sup_inf_value(const MatrixSet& set, double lambda, int horizon, const AngularGrid& grid) {
    if (lambda <= 0.0) throw input_error("lambda must be positive");
    if (horizon < 1) throw input_error("horizon must be >= 1");
    const auto plans = build_plans(set, grid);
    const std::size_t n = static_cast<std::size_t>(grid.n);

    std::vector<double> g(n, 1.0);      // g_t
    std::vector<double> running(n, 1.0); // max_{s<=t} g_s / lambda^s
    std::vector<double> acc, scratch;
    double inv_pow = 1.0;
    double residual = 0.0;
    for (int t = 1; t <= horizon; ++t) {
        min_mode_images(plans, g, acc, scratch);
        g.swap(acc);
        inv_pow /= lambda;
        double last_gain = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double contrib = g[k] * inv_pow;
            if (contrib > kOverflow)
                throw nonconvergence_error(
                    "sup-inf value overflow: rate appears below the stabilization radius");
            if (contrib > running[k]) {
                last_gain = std::max(last_gain, contrib - running[k]);
                running[k] = contrib;
            }
        }
        if (t == horizon) residual = last_gain;
    }

    ValueTable table{grid, std::move(running), lambda, ValueTable::Kind::sup_inf, residual, true,
                     horizon};
    return table;
}

std::vector<double> bellman_sweep(const MatrixSet& set, const AngularGrid& grid,
                                  const std::vector<double>& w, double lambda) {
    if (lambda <= 0.0) throw input_error("lambda must be positive");
    if (w.size() != static_cast<std::size_t>(grid.n)) throw input_error("table size mismatch");
    const auto plans = build_plans(set, grid);
    std::vector<double> acc, scratch;
    min_mode_images(plans, w, acc, scratch);
    for (auto& v : acc) v = std::max(1.0, v / lambda);
    return acc;
}

ValueTable inf_sup_value(const MatrixSet& set, double lambda, const AngularGrid& grid,
                         int max_iter, double tol) {
    if (lambda <= 0.0) throw input_error("lambda must be positive");
    if (max_iter < 1) throw input_error("max_iter must be >= 1");
    const auto plans = build_plans(set, grid);
    const std::size_t n = static_cast<std::size_t>(grid.n);

    std::vector<double> w(n, 1.0);
    std::vector<double> acc, scratch;
    double increment = std::numeric_limits<double>::infinity();
    int it = 0;
    bool converged = false;
    const double inv_lambda = 1.0 / lambda;
    while (it < max_iter) {
        ++it;
        min_mode_images(plans, w, acc, scratch);
        increment = 0.0;
        double peak = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
            const double next = std::max(1.0, acc[k] * inv_lambda);
            const double d = std::abs(next - w[k]);
            if (d > increment) increment = d;
            if (next > peak) peak = next;
            acc[k] = next;
        }
        w.swap(acc);
        if (peak > kOverflow)
            throw nonconvergence_error("inf-sup iteration diverged: lambda not certifiable");
        if (increment <= tol) {
            converged = true;
            break;
        }
    }

    ValueTable table{grid, std::move(w), lambda, ValueTable::Kind::inf_sup, increment, converged, it};
    return table;
}

std::vector<double> decrease_ratio(const ValueTable& table, const MatrixSet& set) {
    const auto plans = build_plans(set, table.grid);
    std::vector<double> acc, scratch;
    min_mode_images(plans, table.values, acc, scratch);
    for (std::size_t k = 0; k < acc.size(); ++k) acc[k] /= table.values[k];
    return acc;
}

double ratio_exceedance_fraction(const ValueTable& table, const MatrixSet& set, double lambda) {
    const auto r = decrease_ratio(table, set);
    const double threshold = lambda * (1.0 + kRatioSlack);
    std::size_t over = 0;
    for (double v : r)
        if (v > threshold) ++over;
    return static_cast<double>(over) / static_cast<double>(r.size());
}

namespace {

double mode_ratio_at(const ValueTable& table, const Matrix& a, double phi) {
    const double x = std::cos(phi), y = std::sin(phi);
    const double u = a(0, 0) * x + a(0, 1) * y;
    const double v = a(1, 0) * x + a(1, 1) * y;
    const double nm = std::sqrt(u * u + v * v);
    const double here = interpolate(table.grid, table.values, phi);
    if (nm == 0.0) return 0.0;
    const double image = interpolate(table.grid, table.values, std::atan2(v, u));
    return nm * image / here;
}

} // namespace

FeedbackPartition extract_feedback(const ValueTable& table, const MatrixSet& set, double mu) {
    if (set.dim != 2) throw method_inapplicable_error("feedback extraction requires dimension 2");
    const auto plans = build_plans(set, table.grid);
    const std::size_t n = table.values.size();
    const double gate = mu * (1.0 + kRatioSlack);

    // Per-node ratios per mode, then argmin (smallest index wins ties).
    std::vector<std::vector<double>> per_mode(set.size());
    std::vector<double> scratch;
    for (std::size_t m = 0; m < set.size(); ++m) {
        per_mode[m].resize(n);
        kernels::gather_interp_scale(table.values.data(), plans[m].i0.data(), plans[m].i1.data(),
                                     plans[m].w0.data(), plans[m].w1.data(), plans[m].norm.data(),
                                     per_mode[m].data(), n);
        for (std::size_t k = 0; k < n; ++k) per_mode[m][k] /= table.values[k];
    }

    std::vector<std::uint32_t> choice(n, 0);
    double max_ratio = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::uint32_t best = 0;
        double val = per_mode[0][k];
        for (std::size_t m = 1; m < set.size(); ++m)
            if (per_mode[m][k] < val) {
                val = per_mode[m][k];
                best = static_cast<std::uint32_t>(m);
            }
        choice[k] = best;
        max_ratio = std::max(max_ratio, val);
        if (val > gate)
            throw nonconvergence_error("feedback not certifiable at mu: node ratio exceeds target");
    }

    FeedbackPartition part;
    part.mu = mu;
    part.max_ratio = max_ratio;
    const double step = table.grid.spacing();
    std::size_t k = 0;
    while (k < n) {
        std::size_t j = k;
        while (j + 1 < n && choice[j + 1] == choice[k]) ++j;
        const double begin = k == 0 ? 0.0 : (static_cast<double>(k) - 0.5) * step;
        const double end = j + 1 == n ? kPi : (static_cast<double>(j) + 0.5) * step;
        part.arcs.push_back({begin, end, choice[k]});
        k = j + 1;
    }

    // Probe each arc at its endpoints and midpoint with the assigned mode.
    // Off-node evaluations carry interpolation error and the mode crossing may
    // sit anywhere inside the boundary cell; the ratio slope is O(1), so the
    // probe gate widens by two node spacings. The node-level gate above is
    // the strict one.
    const double probe_gate = gate + 2.0 * step;
    for (const auto& arc : part.arcs) {
        for (double phi : {arc.begin, 0.5 * (arc.begin + arc.end), arc.end}) {
            const double r = mode_ratio_at(table, set.modes[arc.mode], phi);
            part.max_ratio = std::max(part.max_ratio, r);
            if (r > probe_gate)
                throw nonconvergence_error("feedback not certifiable at mu: arc check failed");
        }
    }
    return part;
}

namespace {

std::uint32_t partition_mode(const FeedbackPartition& part, double x, double y) {
    double phi = std::atan2(y, x);
    phi = fold_half_circle(phi);
    // Arcs are sorted and cover [0, pi); linear scan is fine at these sizes.
    for (const auto& arc : part.arcs)
        if (phi < arc.end || &arc == &part.arcs.back()) return arc.mode;
    return part.arcs.back().mode;
}

} // namespace

std::vector<Vec> closed_loop_simulate(const FeedbackPartition& partition, const MatrixSet& set,
                                      const Vec& x0, int steps) {
    if (set.dim != 2) throw method_inapplicable_error("partition feedback requires dimension 2");
    return closed_loop_simulate(
        [&partition](const Vec& x) { return partition_mode(partition, x[0], x[1]); }, set, x0,
        steps);
}

std::vector<Vec> closed_loop_simulate(const std::function<std::uint32_t(const Vec&)>& feedback,
                                      const MatrixSet& set, const Vec& x0, int steps) {
    if (static_cast<int>(x0.size()) != set.dim) throw input_error("x0 dimension mismatch");
    if (norm2(x0) == 0.0) throw input_error("x0 must be nonzero");
    std::vector<Vec> states;
    states.reserve(static_cast<std::size_t>(steps) + 1);
    states.push_back(x0);
    Vec x = x0;
    for (int s = 0; s < steps; ++s) {
        const std::uint32_t m = feedback(x);
        if (m >= set.size()) throw input_error("feedback returned an invalid mode index");
        x = mat_vec(set.modes[m], x);
        states.push_back(x);
    }
    return states;
}

} // namespace switchstab
