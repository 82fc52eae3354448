#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "switchstab/bounds.hpp"
#include "switchstab/instances.hpp"
#include "switchstab/lyapunov.hpp"
#include "switchstab/rng.hpp"

using namespace switchstab;

namespace {

constexpr double kPi = 3.141592653589793238462643383279502884;

double brute_force_profile(const MatrixSet& set, int t, double theta) {
    const Vec z{std::cos(theta), std::sin(theta)};
    double best = 1e300;
    for (const auto& e : enumerate_products(set, t, 0.0))
        best = std::min(best, norm2(mat_vec(e.matrix, z)));
    return best;
}

} // namespace

TEST_CASE("min product profile") {
    const auto su = stanford_urbano();
    const AngularGrid grid(512);

    const auto g0 = min_product_profile(su.set, 0, grid);
    for (double v : g0) CHECK(v == 1.0);

    const auto g1 = min_product_profile(su.set, 1, grid);
    CHECK(g1[0] == doctest::Approx(0.5).epsilon(1e-12)); // squeeze wins on the first axis

    for (int t = 2; t <= 5; ++t) {
        const auto g = min_product_profile(su.set, t, grid);
        for (int k = 0; k < grid.n; k += 7)
            CHECK(g[static_cast<std::size_t>(k)] ==
                  doctest::Approx(brute_force_profile(su.set, t, grid.angle(k))).epsilon(2e-3));
    }
}

TEST_CASE("sup-inf value tables") {
    const MatrixSet half({Matrix::diagonal({0.5, 0.5})}, {"H"});
    const AngularGrid small(64);
    const auto flat = sup_inf_value(half, 0.9, 20, small);
    for (double v : flat.values) CHECK(v == 1.0);
    CHECK(flat.residual == 0.0);

    // Self-convergence under grid doubling.
    const auto su = stanford_urbano();
    const auto t1 = sup_inf_value(su.set, 0.95, 24, AngularGrid(1024));
    const auto t2 = sup_inf_value(su.set, 0.95, 24, AngularGrid(2048));
    double m1 = 0.0, m2 = 0.0;
    for (double v : t1.values) m1 = std::max(m1, v);
    for (double v : t2.values) m2 = std::max(m2, v);
    CHECK(std::abs(m1 - m2) <= 0.01 * m2);
    for (double v : t1.values) CHECK(v >= 1.0);

    // Overflow guard: identity cannot decay, so 1/lambda^t blows up.
    CHECK_THROWS_AS(sup_inf_value(MatrixSet({Matrix::identity(2)}, {"I"}), 0.5, 50, small),
                    nonconvergence_error);
}

TEST_CASE("inf-sup fixed point") {
    const MatrixSet half({Matrix::diagonal({0.5, 0.5})}, {"H"});
    const AngularGrid small(64);
    const auto flat = inf_sup_value(half, 0.9, small);
    CHECK(flat.converged);
    CHECK(flat.iterations == 1);
    for (double v : flat.values) CHECK(v == 1.0);

    const auto su = stanford_urbano();
    const AngularGrid grid(4096);
    const auto table = inf_sup_value(su.set, 0.88, grid, kDefaultValueIterations, 1e-6);
    CHECK(table.converged);
    CHECK(table.residual <= 1e-6);

    // Converged tables satisfy W = TW within tol, and the sandwich 1 <= W < inf.
    const auto swept = bellman_sweep(su.set, grid, table.values, 0.88);
    double vmax = 0.0;
    for (std::size_t k = 0; k < swept.size(); ++k) {
        CHECK(std::abs(swept[k] - table.values[k]) <= 1e-6);
        CHECK(table.values[k] >= 1.0);
        vmax = std::max(vmax, table.values[k]);
    }
    CHECK(std::isfinite(vmax));

    // Divergence: the identity admits no decay at all.
    CHECK_THROWS_AS(inf_sup_value(MatrixSet({Matrix::identity(2)}, {"I"}), 0.5, small),
                    nonconvergence_error);
}

TEST_CASE("bellman sweep is monotone") {
    const auto su = stanford_urbano();
    const AngularGrid grid(128);
    DetRng rng(99);
    for (int trial = 0; trial < 5; ++trial) {
        std::vector<double> lo(static_cast<std::size_t>(grid.n)), hi(lo.size());
        for (std::size_t k = 0; k < lo.size(); ++k) {
            lo[k] = rng.uniform(1.0, 3.0);
            hi[k] = lo[k] + rng.uniform(0.0, 2.0);
        }
        const auto tlo = bellman_sweep(su.set, grid, lo, 0.9);
        const auto thi = bellman_sweep(su.set, grid, hi, 0.9);
        for (std::size_t k = 0; k < lo.size(); ++k) CHECK(tlo[k] <= thi[k] + 1e-12);
    }
}

TEST_CASE("decrease ratios") {
    const MatrixSet half({Matrix::diagonal({0.5, 0.5})}, {"H"});
    const AngularGrid small(64);
    const auto flat = inf_sup_value(half, 0.9, small);
    for (double r : decrease_ratio(flat, half)) CHECK(r == doctest::Approx(0.5).epsilon(1e-12));

    const auto su = stanford_urbano();
    const AngularGrid grid(4096);
    const auto table = inf_sup_value(su.set, 0.88, grid);
    const auto ratios = decrease_ratio(table, su.set);
    double rmin = ratios[0], rmax = ratios[0];
    for (double r : ratios) {
        rmin = std::min(rmin, r);
        rmax = std::max(rmax, r);
    }
    // Active nodes sit at the target rate; dips go well below it.
    CHECK(rmax >= 0.87);
    CHECK(rmax <= 0.88 * (1.0 + kRatioSlack));
    CHECK(rmin < 0.88);

    CHECK(ratio_exceedance_fraction(table, su.set, 0.88) < 0.05);
}

TEST_CASE("exceedance grows when the rate is not certifiable") {
    const auto su = stanford_urbano();
    const AngularGrid grid(4096);
    const auto good = inf_sup_value(su.set, 0.88, grid);
    const auto bad = inf_sup_value(su.set, 0.80, grid);
    CHECK_FALSE(bad.converged);
    CHECK(ratio_exceedance_fraction(bad, su.set, 0.80) >
          ratio_exceedance_fraction(good, su.set, 0.88));
}

TEST_CASE("sup-inf ratios stay below a certified upper bound rate on most nodes") {
    const auto su = stanford_urbano();
    const auto certified = best_response_upper(su.set, 9, 8192).report.certified;
    const double lambda = 0.95;
    REQUIRE(lambda > certified);
    const auto table = sup_inf_value(su.set, lambda, 24, AngularGrid(1024));
    const double exceed = ratio_exceedance_fraction(table, su.set, lambda);
    CHECK(exceed <= 0.05);
}

TEST_CASE("homogeneous evaluation agrees with direct lookup on grid images") {
    const auto su = stanford_urbano();
    const AngularGrid grid(4096);
    const auto table = inf_sup_value(su.set, 0.9, grid);
    const Matrix& squeeze = su.set.modes[1];
    // The squeeze maps the axes onto themselves: nodes 0 and n/2.
    for (int k : {0, grid.n / 2}) {
        const Vec x{std::cos(grid.angle(k)), std::sin(grid.angle(k))};
        const Vec ax = mat_vec(squeeze, x);
        const double via_homogeneity =
            norm2(ax) * interpolate(grid, table.values, std::atan2(ax[1], ax[0]));
        const double direct = norm2(ax) * table.values[static_cast<std::size_t>(k)];
        CHECK(via_homogeneity == doctest::Approx(direct).epsilon(1e-12));
    }
}

TEST_CASE("feedback extraction") {
    const MatrixSet pair({Matrix::diagonal({0.5, 0.5}), Matrix::diagonal({2.0, 2.0})}, {"H", "G"});
    const AngularGrid small(64);
    const auto flat = inf_sup_value(pair, 0.9, small);
    const auto part = extract_feedback(flat, pair, 0.6);
    REQUIRE(part.arcs.size() == 1);
    CHECK(part.arcs[0].mode == 0);
    CHECK(part.arcs[0].begin == 0.0);
    CHECK(part.arcs[0].end == doctest::Approx(kPi).epsilon(1e-12));

    const auto su = stanford_urbano();
    const AngularGrid grid(2048);
    const auto table = inf_sup_value(su.set, 0.95, grid);
    const auto part_su = extract_feedback(table, su.set, 0.95);
    CHECK(part_su.arcs.size() >= 2);
    // Node ratios obey the strict gate; arc probes may add up to two node
    // spacings of interpolation error.
    CHECK(part_su.max_ratio <= 0.95 * (1.0 + kRatioSlack) + 2.0 * grid.spacing());
    // Arcs tile [0, pi) with shared endpoints.
    CHECK(part_su.arcs.front().begin == 0.0);
    CHECK(part_su.arcs.back().end == doctest::Approx(kPi).epsilon(1e-15));
    for (std::size_t i = 1; i < part_su.arcs.size(); ++i) {
        CHECK(part_su.arcs[i].begin == part_su.arcs[i - 1].end);
        CHECK(part_su.arcs[i].mode != part_su.arcs[i - 1].mode);
    }

    // The global lower bound is 1/2: no table can certify mu = 0.5.
    CHECK_THROWS_AS(extract_feedback(table, su.set, 0.5), nonconvergence_error);

    // Closed loop under the certified partition decays at the certified rate.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    const auto states = closed_loop_simulate(part_su, su.set, {inv_sqrt2, inv_sqrt2}, 200);
    REQUIRE(states.size() == 201);
    for (std::size_t k = 0; k < states.size(); ++k)
        CHECK(norm2(states[k]) <= 1.1 * std::pow(0.95, static_cast<double>(k)));
}

TEST_CASE("closed loop with a constant contraction") {
    const MatrixSet half({Matrix::diagonal({0.5, 0.5})}, {"H"});
    FeedbackPartition part;
    part.arcs.push_back({0.0, kPi, 0});
    part.mu = 0.5;
    const auto states = closed_loop_simulate(part, half, {1.0, 0.0}, 10);
    CHECK(norm2(states.back()) == doctest::Approx(std::ldexp(1.0, -10)).epsilon(1e-12));
    CHECK_THROWS_AS(closed_loop_simulate(part, half, {0.0, 0.0}, 1), input_error);
}

TEST_CASE("no homogeneous feedback stabilizes the 3-D instance from e") {
    const auto inst = prop_different_3d();
    const Vec e{1.0, 1.0, 1.0};

    std::vector<std::function<std::uint32_t(const Vec&)>> family;
    family.emplace_back([](const Vec&) { return 0u; });
    family.emplace_back([](const Vec&) { return 1u; });
    for (double tau : {0.6, 0.9, 0.99, 0.999}) {
        family.emplace_back([tau](const Vec& x) {
            const double n = norm2(x);
            return x[0] / n >= tau ? 1u : 0u;
        });
    }

    for (const auto& feedback : family) {
        const auto states = closed_loop_simulate(feedback, inst.set, e, 100);
        double growth = 0.0;
        for (std::size_t k = 50; k < states.size(); ++k)
            growth = std::max(growth, std::pow(norm2(states[k]) / norm2(e),
                                               1.0 / static_cast<double>(k)));
        CHECK(growth > 1.005);
    }
}
