#include "switchstab/instances.hpp"

#include <cmath>

namespace switchstab {

namespace {

Matrix su_rotation() {
    const double c = std::sqrt(2.0) / 2.0;
    return Matrix{{c, c}, {-c, c}};
}

Matrix su_squeeze() { return Matrix{{0.5, 0.0}, {0.0, 2.0}}; }

Matrix pow_matrix(const Matrix& a, int k) {
    Matrix p = Matrix::identity(a.dim());
    for (int i = 0; i < k; ++i) p = multiply(p, a);
    return p;
}

} // namespace

NamedInstance stanford_urbano() {
    const Matrix a1 = su_rotation();
    const Matrix a2 = su_squeeze();
    MatrixSet set({a1, a2}, {"A1", "A2"});
    std::vector<Fact> facts;
    facts.push_back({"det(A1) = 1", [a1] { return std::abs(determinant(a1) - 1.0) <= 1e-12; }});
    facts.push_back({"det(A2) = 1", [a2] { return std::abs(determinant(a2) - 1.0) <= 1e-12; }});
    facts.push_back({"||A1|| = 1", [a1] { return std::abs(spectral_norm(a1) - 1.0) <= 1e-12; }});
    facts.push_back({"sigma_min(A2) = 1/2",
                     [a2] { return std::abs(smallest_singular_value(a2) - 0.5) <= 1e-12; }});
    facts.push_back({"A1^4 = -Id", [a1] {
                         return max_abs_diff(pow_matrix(a1, 4), scale(Matrix::identity(2), -1.0)) <= 1e-12;
                     }});
    facts.push_back({"A2 A1^2 A2 = A1^2", [a1, a2] {
                         const Matrix lhs = multiply(multiply(a2, pow_matrix(a1, 2)), a2);
                         return max_abs_diff(lhs, pow_matrix(a1, 2)) <= 1e-12;
                     }});
    return {"stanford-urbano", std::move(set), std::move(facts)};
}

NamedInstance stanford_urbano_bar() {
    const Matrix b1{{0.0, 1.0}, {-1.0, 0.0}};
    const Matrix b2 = su_squeeze();
    MatrixSet set({b1, b2}, {"B1", "B2"});
    std::vector<Fact> facts;
    facts.push_back({"B1^4 = Id (exact)", [b1] {
                         return pow_matrix(b1, 4) == Matrix::identity(2);
                     }});
    facts.push_back({"B2 B1 B2 = B1 (exact)", [b1, b2] {
                         return multiply(multiply(b2, b1), b2) == b1;
                     }});
    facts.push_back({"axis decay |B2^t e1| = 2^-t", [b2] {
                         Vec x{1.0, 0.0};
                         for (int t = 1; t <= 20; ++t) {
                             x = mat_vec(b2, x);
                             if (norm2(x) != std::ldexp(1.0, -t)) return false;
                         }
                         return true;
                     }});
    return {"stanford-urbano-bar", std::move(set), std::move(facts)};
}

std::vector<Word> stanford_urbano_case_words() {
    // Mode 0 = rotation, mode 1 = squeeze; words read left to right as the
    // written product (rightmost factor acts first).
    return {
        Word{{1}},                            // A2
        Word{{1, 0}},                         // A2 A1
        Word{{1, 0, 0}},                      // A2 A1^2
        Word{{1, 0, 0, 0}},                   // A2 A1^3
        Word{{1, 0, 1, 0, 0}},                // A2 A1 A2 A1^2
        Word{{1, 0, 1, 0, 1}},                // A2 A1 A2 A1 A2
        Word{{1, 0, 1, 0, 1, 0}},             // A2 A1 A2 A1 A2 A1
        Word{{1, 0, 1, 0, 0, 0}},             // A2 A1 A2 A1^3
        Word{{1, 0, 0, 0, 1, 0, 0}},          // A2 A1^3 A2 A1^2
        Word{{1, 0, 1, 0, 1, 0, 0}},          // A2 A1 A2 A1 A2 A1^2
        Word{{1, 0, 0, 0, 1, 0, 0, 0}},       // A2 A1^3 A2 A1^3
        Word{{1, 0, 1, 0, 1, 0, 0, 0}},       // A2 A1 A2 A1 A2 A1^3
        Word{{1, 0, 1, 0, 1, 0, 1, 0, 0}},    // A2 A1 A2 A1 A2 A1 A2 A1^2
    };
}

NamedInstance prop_different_3d() {
    const Matrix a{{2.0, 0.0, 0.0}, {0.0, 1.0, 0.0}, {0.0, 0.0, 1.0}};
    const Matrix b{{0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}, {0.0, 1.0, 1.0}};
    MatrixSet set({a, b}, {"A", "B"});
    std::vector<Fact> facts;
    facts.push_back({"B e = 2 e (exact)", [b] {
                         return mat_vec(b, Vec{1.0, 1.0, 1.0}) == Vec{2.0, 2.0, 2.0};
                     }});
    facts.push_back({"B A^t = B for t <= 50 (exact)", [a, b] {
                         Matrix at = Matrix::identity(3);
                         for (int t = 1; t <= 50; ++t) {
                             at = multiply(at, a);
                             if (!(multiply(b, at) == b)) return false;
                         }
                         return true;
                     }});
    facts.push_back({"second component nondecreasing along words from e", [a, b] {
                         // breadth-first over words of length <= 8
                         std::vector<Vec> layer{{1.0, 1.0, 1.0}};
                         for (int t = 0; t < 8; ++t) {
                             std::vector<Vec> next;
                             next.reserve(layer.size() * 2);
                             for (const auto& x : layer) {
                                 for (const Matrix* m : {&a, &b}) {
                                     Vec y = mat_vec(*m, x);
                                     if (y[1] < x[1] - 1e-12) return false;
                                     next.push_back(std::move(y));
                                 }
                             }
                             layer = std::move(next);
                         }
                         return true;
                     }});
    return {"prop-different-3d", std::move(set), std::move(facts)};
}

namespace {

bool nonnegative_integer_entries(const MatrixSet& base) {
    for (const auto& m : base.modes)
        for (double v : m.entries())
            if (v < 0.0 || v != std::floor(v)) return false;
    return true;
}

bool integer_entries(const MatrixSet& base) {
    for (const auto& m : base.modes)
        for (double v : m.entries())
            if (v != std::floor(v)) return false;
    return true;
}

} // namespace

NamedInstance mortality_reduction(const MatrixSet& base) {
    if (!nonnegative_integer_entries(base))
        throw input_error("mortality reduction requires nonnegative integer entries");
    std::vector<Matrix> doubled;
    doubled.reserve(base.modes.size());
    for (const auto& m : base.modes) doubled.push_back(scale(m, 2.0));
    MatrixSet set(std::move(doubled), base.labels);
    std::vector<Fact> facts;
    for (std::size_t i = 0; i < set.modes.size(); ++i) {
        const Matrix& twice = set.modes[i];
        const Matrix& orig = base.modes[i];
        facts.push_back({"mode " + set.labels[i] + " is exactly 2x the base mode",
                         [twice, orig] { return twice == scale(orig, 2.0); }});
    }
    return {"mortality-reduction", std::move(set), std::move(facts)};
}

BlockDiagInstance blockdiag_reduction(const MatrixSet& base) {
    if (!integer_entries(base))
        throw input_error("block-diagonal reduction requires integer entries");
    const int n = base.dim;
    const int big = n * n;
    std::vector<Matrix> blocks;
    blocks.reserve(base.modes.size());
    for (const auto& m : base.modes) {
        Matrix bm(big);
        for (int copy = 0; copy < n; ++copy)
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    bm(copy * n + i, copy * n + j) = 2.0 * m(i, j);
        blocks.push_back(std::move(bm));
    }
    MatrixSet set(std::move(blocks), base.labels);
    Vec v(static_cast<std::size_t>(big), 0.0);
    for (int copy = 0; copy < n; ++copy) v[static_cast<std::size_t>(copy * n + copy)] = 1.0;
    NamedInstance inst{"blockdiag-reduction", std::move(set), {}};
    return {std::move(inst), std::move(v)};
}

std::optional<NamedInstance> find_instance(const std::string& name) {
    if (name == "stanford-urbano") return stanford_urbano();
    if (name == "stanford-urbano-bar") return stanford_urbano_bar();
    if (name == "prop-different-3d") return prop_different_3d();
    return std::nullopt;
}

} // namespace switchstab
