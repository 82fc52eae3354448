#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "switchstab/bounds.hpp"
#include "switchstab/instances.hpp"
#include "switchstab/rng.hpp"

using namespace switchstab;

namespace {

MatrixSet random_positive_pair(std::uint64_t seed) {
    DetRng rng(seed);
    auto gen = [&] {
        Matrix m(2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) m(i, j) = rng.uniform(0.1, 1.5);
        return m;
    };
    return MatrixSet({gen(), gen()}, {"P", "Q"});
}

double brute_force_min_norm_rate(const MatrixSet& set, int t) {
    double best = 1e300;
    for (const auto& e : enumerate_products(set, t, 0.0))
        best = std::min(best, spectral_norm(e.matrix));
    return std::pow(best, 1.0 / t);
}

} // namespace

TEST_CASE("singular-value lower bound") {
    const auto su = stanford_urbano();
    const auto rep = singular_value_lower_bound(su.set, 6);
    REQUIRE(rep.per_horizon.size() == 6);
    CHECK(rep.per_horizon[0].second == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(rep.best == doctest::Approx(0.5).epsilon(1e-12));
    for (const auto& [t, v] : rep.per_horizon) CHECK(v <= 0.5 + 1e-12);

    const auto id_rep = singular_value_lower_bound(MatrixSet({Matrix::identity(2)}, {"I"}), 3);
    for (const auto& [t, v] : id_rep.per_horizon) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cone lower bound on scaled identity") {
    const auto res = cone_lower_bound(MatrixSet({scale(Matrix::identity(2), 2.0)}, {"D"}), 1);
    CHECK(res.certificate.lambda == doctest::Approx(2.0).epsilon(1e-8));
    CHECK(res.certificate.v[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.certificate.v[1] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.report.best == doctest::Approx(2.0).epsilon(1e-8));
}

TEST_CASE("cone lower bound finds the Perron pair") {
    const Matrix a{{2.0, 1.0}, {1.0, 2.0}};
    // Direct 2x2 eigen oracle: symmetric, eigenvalues tr/2 +- |off|.
    const double perron = 3.0;
    const auto res = cone_lower_bound(MatrixSet({a}, {"A"}), 1);
    CHECK(res.certificate.lambda == doctest::Approx(perron).epsilon(1e-8));
    CHECK(res.certificate.v[0] == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(res.certificate.v[1] == doctest::Approx(0.5).epsilon(1e-6));

    // Certificate residual: A v >= lambda v within 1e-9.
    const Vec av = mat_vec(a, res.certificate.v);
    for (int i = 0; i < 2; ++i)
        CHECK(av[static_cast<std::size_t>(i)] >=
              res.certificate.lambda * res.certificate.v[static_cast<std::size_t>(i)] - 1e-9);
}

TEST_CASE("cone bound vs brute force on a random positive pair") {
    const auto set = random_positive_pair(0xBEE);
    const auto res = cone_lower_bound(set, 6);
    double prev = 0.0;
    for (const auto& [t, v] : res.report.per_horizon) {
        CHECK(v >= prev - 1e-9); // nondecreasing for this seed
        prev = v;
        CHECK(v <= brute_force_min_norm_rate(set, t) + 1e-9);
    }
    // Certificate holds for every product at the full horizon.
    for (const auto& e : enumerate_products(set, 6, 0.0)) {
        const Vec av = mat_vec(e.matrix, res.certificate.v);
        for (int i = 0; i < 2; ++i)
            CHECK(av[static_cast<std::size_t>(i)] >=
                  res.certificate.lambda * res.certificate.v[static_cast<std::size_t>(i)] - 1e-9);
    }
}

TEST_CASE("cone bound refuses negative entries") {
    const auto su = stanford_urbano();
    CHECK_THROWS_AS(cone_lower_bound(su.set, 1), method_inapplicable_error);
}

TEST_CASE("grid upper bounds: case study") {
    const auto su = stanford_urbano();
    const auto reps = certified_grid_upper_bounds(su.set, 4, 4096);
    REQUIRE(reps.size() == 4);
    const auto& r4 = reps[3];
    CHECK(r4.certified <= 0.98);
    CHECK(r4.empirical <= r4.certified);
    CHECK(r4.empirical <= std::pow(0.9, 0.25) + 1e-6); // consistent with the 4-step squeeze
    CHECK(r4.certified_valid);
}

TEST_CASE("grid upper bounds: trivial sets") {
    const auto id_reps = certified_grid_upper_bounds(MatrixSet({Matrix::identity(2)}, {"I"}), 3, 64);
    for (const auto& r : id_reps) {
        CHECK(r.empirical == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(r.certified >= 1.0);
    }

    const MatrixSet two_scalings({scale(Matrix::identity(2), 2.0), scale(Matrix::identity(2), 3.0)},
                                 {"S2", "S3"});
    const auto reps = certified_grid_upper_bounds(two_scalings, 1, 64);
    CHECK(reps[0].raw_gamma == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(reps[0].certified <= 2.0 + 3.0 * chord_pad(64) + 1e-12);
}

TEST_CASE("grid upper bounds: dimension above 2 is uncertified") {
    const auto inst = prop_different_3d();
    const auto reps = certified_grid_upper_bounds(inst.set, 2, 128);
    for (const auto& r : reps) {
        CHECK_FALSE(r.certified_valid);
        CHECK(std::isinf(r.certified));
        CHECK(std::isfinite(r.empirical));
    }
}

TEST_CASE("grid refinement never raises the certified bound") {
    const auto su = stanford_urbano();
    double prev = 1e300;
    for (long g : {1024L, 2048L, 4096L}) {
        const double cert = certified_grid_upper_bounds(su.set, 4, g)[3].certified;
        CHECK(cert <= prev + 1e-12);
        prev = cert;
    }
}

TEST_CASE("sandwich and homogeneity") {
    const auto su = stanford_urbano();
    const auto lower = singular_value_lower_bound(su.set, 4);
    const auto upper = certified_grid_upper_bounds(su.set, 4, 1024);
    for (const auto& r : upper) CHECK(lower.best <= r.certified + 1e-9);

    for (double g : {0.5, 2.0}) {
        const auto scaled = scale_set(su.set, g);
        CHECK(singular_value_lower_bound(scaled, 3).best ==
              doctest::Approx(g * lower.best).epsilon(1e-9));
        const auto scaled_up = certified_grid_upper_bounds(scaled, 3, 1024);
        const auto base_up = certified_grid_upper_bounds(su.set, 3, 1024);
        for (std::size_t i = 0; i < scaled_up.size(); ++i) {
            CHECK(scaled_up[i].certified == doctest::Approx(g * base_up[i].certified).epsilon(1e-9));
            CHECK(scaled_up[i].empirical == doctest::Approx(g * base_up[i].empirical).epsilon(1e-9));
        }
    }
}

TEST_CASE("best response with the case-study words") {
    const auto su = stanford_urbano();
    const auto words = stanford_urbano_case_words();
    const auto res = best_response_upper(su.set, 9, 8192, &words);
    CHECK(res.report.empirical >= 0.881);
    CHECK(res.report.empirical <= 0.891);
    CHECK(res.report.certified >= res.report.empirical);
    CHECK(res.contraction_achieved);

    // Arc cover of [0, pi] with shared endpoints.
    REQUIRE(!res.map.arcs.empty());
    CHECK(res.map.arcs.front().begin == 0.0);
    CHECK(res.map.arcs.back().end == doctest::Approx(3.14159265358979324).epsilon(1e-12));
    for (std::size_t i = 1; i < res.map.arcs.size(); ++i)
        CHECK(res.map.arcs[i].begin == res.map.arcs[i - 1].end);
}

TEST_CASE("best response full enumeration certifies below 0.90") {
    const auto su = stanford_urbano();
    const auto res = best_response_upper(su.set, 9, 8192);
    CHECK(res.report.certified <= 0.90);
    CHECK(res.report.empirical <= res.report.certified);
}

TEST_CASE("best response on a plain contraction") {
    const MatrixSet half({Matrix::diagonal({0.5, 0.5})}, {"H"});
    const auto res = best_response_upper(half, 1, 64);
    CHECK(res.report.empirical == doctest::Approx(0.5).epsilon(1e-12));
    REQUIRE(res.map.arcs.size() == 1);
    CHECK(res.map.arcs[0].begin == 0.0);
    CHECK(res.map.arcs[0].end == doctest::Approx(3.14159265358979324).epsilon(1e-12));
}

TEST_CASE("best response flags vacuous bounds") {
    const MatrixSet grow({scale(Matrix::identity(2), 1.5)}, {"G"});
    const auto res = best_response_upper(grow, 2, 64);
    CHECK_FALSE(res.contraction_achieved);
    CHECK(res.report.certified >= 1.0);
}

TEST_CASE("arc certification soundness by random sampling") {
    const auto su = stanford_urbano();
    const auto res = best_response_upper(su.set, 4, 256);
    DetRng rng(0xA5C);
    for (const auto& arc : res.map.arcs) {
        const Matrix m = word_matrix(su.set, arc.word);
        const double budget = std::pow(arc.rate, arc.length) + 1e-12;
        for (int s = 0; s < 1000; ++s) {
            const double phi = rng.uniform(arc.begin, arc.end);
            const Vec z{std::cos(phi), std::sin(phi)};
            CHECK(norm2(mat_vec(m, z)) <= budget);
        }
    }
}

TEST_CASE("subradius norm bound") {
    const auto su = stanford_urbano();
    const auto rep = subradius_norm_upper(su.set, 10);
    CHECK(rep.value == doctest::Approx(1.0).epsilon(1e-9));

    const MatrixSet pair({Matrix::diagonal({0.5, 2.0}), Matrix::diagonal({2.0, 0.5})}, {"D", "E"});
    const auto rep2 = subradius_norm_upper(pair, 2);
    CHECK(rep2.value == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(rep2.horizon == 2);
    CHECK(rep2.word.modes == std::vector<std::uint32_t>{0, 1});

    // A mortal doubled pair reaches an exact zero product.
    const Matrix n1{{0.0, 1.0}, {0.0, 0.0}};
    const Matrix n2{{0.0, 0.0}, {1.0, 0.0}};
    const auto mortal = mortality_reduction(MatrixSet({n1, n2}, {"N1", "N2"}));
    CHECK(subradius_norm_upper(mortal.set, 2).value == 0.0);

    // Cone lower never exceeds the norm upper at the same horizon.
    const auto pos = random_positive_pair(0xFACE);
    const auto cone = cone_lower_bound(pos, 4);
    const auto norms = subradius_norm_upper(pos, 4);
    for (std::size_t i = 0; i < cone.report.per_horizon.size(); ++i)
        CHECK(cone.report.per_horizon[i].second <= norms.per_horizon[i].second + 1e-9);
}

TEST_CASE("input validation") {
    const auto su = stanford_urbano();
    CHECK_THROWS_AS(certified_grid_upper_bounds(su.set, 4, 63), input_error);
    CHECK_THROWS_AS(certified_grid_upper_bounds(su.set, 0, 64), input_error);
    CHECK_THROWS_AS(best_response_upper(prop_different_3d().set, 2, 64),
                    method_inapplicable_error);
    EnumerationLimits tight;
    tight.max_products = 4;
    CHECK_THROWS_AS(singular_value_lower_bound(su.set, 5, tight), resource_limit_error);
}
