#include "switchstab/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace switchstab {

namespace {

void check_finite(const std::vector<double>& e) {
    for (double v : e)
        if (!std::isfinite(v)) throw input_error("matrix entry is not finite");
}

} // namespace

Matrix::Matrix(int dim) : dim_(dim), e_(static_cast<std::size_t>(dim) * dim, 0.0) {
    if (dim < 1) throw input_error("matrix dimension must be >= 1");
}

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), e_(std::move(entries)) {
    if (dim < 1) throw input_error("matrix dimension must be >= 1");
    if (e_.size() != static_cast<std::size_t>(dim) * dim)
        throw input_error("matrix entry count does not match dimension");
    check_finite(e_);
}

Matrix::Matrix(std::initializer_list<std::initializer_list<double>> rows)
    : dim_(static_cast<int>(rows.size())) {
    if (dim_ < 1) throw input_error("matrix dimension must be >= 1");
    e_.reserve(static_cast<std::size_t>(dim_) * dim_);
    for (const auto& r : rows) {
        if (static_cast<int>(r.size()) != dim_) throw input_error("matrix rows must be square");
        e_.insert(e_.end(), r.begin(), r.end());
    }
    check_finite(e_);
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(const Vec& d) {
    Matrix m(static_cast<int>(d.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = d[static_cast<std::size_t>(i)];
    return m;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw input_error("matrix dimension mismatch in multiply");
    const int d = a.dim();
    Matrix c(d);
    for (int i = 0; i < d; ++i)
        for (int k = 0; k < d; ++k) {
            const double aik = a(i, k);
            if (aik == 0.0) continue;
            for (int j = 0; j < d; ++j) c(i, j) += aik * b(k, j);
        }
    return c;
}

Matrix add(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw input_error("matrix dimension mismatch in add");
    Matrix c = a;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) += b(i, j);
    return c;
}

Matrix scale(const Matrix& a, double s) {
    Matrix c = a;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(i, j) *= s;
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix c(a.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) c(j, i) = a(i, j);
    return c;
}

Vec mat_vec(const Matrix& a, const Vec& x) {
    if (static_cast<int>(x.size()) != a.dim()) throw input_error("vector dimension mismatch in apply");
    Vec y(x.size(), 0.0);
    for (int i = 0; i < a.dim(); ++i) {
        double s = 0.0;
        for (int j = 0; j < a.dim(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
        y[static_cast<std::size_t>(i)] = s;
    }
    return y;
}

double norm2(const Vec& x) {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double max_abs_diff(const Matrix& a, const Matrix& b) {
    if (a.dim() != b.dim()) throw input_error("matrix dimension mismatch");
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

namespace {

// Partial-pivot LU in place; returns permutation sign, throws on singularity.
double lu_decompose(Matrix& a, std::vector<int>& perm) {
    const int d = a.dim();
    perm.resize(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) perm[static_cast<std::size_t>(i)] = i;
    double sign = 1.0;
    for (int k = 0; k < d; ++k) {
        int piv = k;
        double best = std::abs(a(k, k));
        for (int i = k + 1; i < d; ++i)
            if (std::abs(a(i, k)) > best) { best = std::abs(a(i, k)); piv = i; }
        if (best == 0.0) throw input_error("singular matrix in linear solve");
        if (piv != k) {
            for (int j = 0; j < d; ++j) std::swap(a(k, j), a(piv, j));
            std::swap(perm[static_cast<std::size_t>(k)], perm[static_cast<std::size_t>(piv)]);
            sign = -sign;
        }
        for (int i = k + 1; i < d; ++i) {
            a(i, k) /= a(k, k);
            const double f = a(i, k);
            for (int j = k + 1; j < d; ++j) a(i, j) -= f * a(k, j);
        }
    }
    return sign;
}

} // namespace

double determinant(const Matrix& a) {
    const int d = a.dim();
    if (d == 1) return a(0, 0);
    if (d == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    Matrix lu = a;
    std::vector<int> perm;
    double det;
    try {
        det = lu_decompose(lu, perm);
    } catch (const input_error&) {
        return 0.0;
    }
    for (int i = 0; i < d; ++i) det *= lu(i, i);
    return det;
}

Vec solve_linear(const Matrix& a, const Vec& b) {
    Matrix lu = a;
    std::vector<int> perm;
    lu_decompose(lu, perm);
    const int d = a.dim();
    Vec x(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) x[static_cast<std::size_t>(i)] = b[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])];
    for (int i = 1; i < d; ++i)
        for (int j = 0; j < i; ++j) x[static_cast<std::size_t>(i)] -= lu(i, j) * x[static_cast<std::size_t>(j)];
    for (int i = d - 1; i >= 0; --i) {
        for (int j = i + 1; j < d; ++j) x[static_cast<std::size_t>(i)] -= lu(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] /= lu(i, i);
    }
    return x;
}

Matrix solve_linear(const Matrix& a, const Matrix& b) {
    const int d = a.dim();
    Matrix x(d);
    for (int col = 0; col < d; ++col) {
        Vec rhs(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) rhs[static_cast<std::size_t>(i)] = b(i, col);
        Vec sol = solve_linear(a, rhs);
        for (int i = 0; i < d; ++i) x(i, col) = sol[static_cast<std::size_t>(i)];
    }
    return x;
}

std::vector<double> symmetric_eigenvalues(const Matrix& s) {
    const int d = s.dim();
    Matrix a = s;
    double total = 0.0;
    for (double v : a.entries()) total += v * v;
    // Cyclic Jacobi; quadratic convergence, ample for the small dims here.
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) off += a(p, q) * a(p, q);
        if (off <= 1e-28 * (total + 1e-300)) break;
        for (int p = 0; p < d; ++p)
            for (int q = p + 1; q < d; ++q) {
                if (a(p, q) == 0.0) continue;
                const double theta = (a(q, q) - a(p, p)) / (2.0 * a(p, q));
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double sn = t * c;
                for (int k = 0; k < d; ++k) {
                    const double akp = a(k, p), akq = a(k, q);
                    a(k, p) = c * akp - sn * akq;
                    a(k, q) = sn * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    const double apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk - sn * aqk;
                    a(q, k) = sn * apk + c * aqk;
                }
            }
    }
    std::vector<double> eig(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) eig[static_cast<std::size_t>(i)] = a(i, i);
    std::sort(eig.begin(), eig.end());
    return eig;
}

namespace {

// Extreme singular values via the Gram matrix eigenvalues.
std::pair<double, double> singular_extremes(const Matrix& a) {
    const int d = a.dim();
    if (d == 1) {
        const double v = std::abs(a(0, 0));
        return {v, v};
    }
    if (d == 2) {
        // Gram eigenvalues in closed form; the small one via det/large to
        // avoid cancellation.
        const double g00 = a(0, 0) * a(0, 0) + a(1, 0) * a(1, 0);
        const double g11 = a(0, 1) * a(0, 1) + a(1, 1) * a(1, 1);
        const double g01 = a(0, 0) * a(0, 1) + a(1, 0) * a(1, 1);
        const double tr = g00 + g11;
        const double disc = std::sqrt(std::max(0.0, (g00 - g11) * (g00 - g11) + 4.0 * g01 * g01));
        const double lmax = 0.5 * (tr + disc);
        const double det = determinant(a);
        const double lmin = lmax > 0.0 ? (det * det) / lmax : 0.0;
        return {std::sqrt(std::max(0.0, lmin)), std::sqrt(std::max(0.0, lmax))};
    }
    const Matrix gram = multiply(transpose(a), a);
    const std::vector<double> eig = symmetric_eigenvalues(gram);
    return {std::sqrt(std::max(0.0, eig.front())), std::sqrt(std::max(0.0, eig.back()))};
}

} // namespace

double smallest_singular_value(const Matrix& a) { return singular_extremes(a).first; }

double spectral_norm(const Matrix& a) { return singular_extremes(a).second; }

MatrixSet::MatrixSet(std::vector<Matrix> mats, std::vector<std::string> labs)
    : dim(0), modes(std::move(mats)), labels(std::move(labs)) {
    if (modes.empty()) throw input_error("matrix set must be nonempty");
    dim = modes.front().dim();
    for (const auto& m : modes)
        if (m.dim() != dim) throw input_error("matrix set members must share dimension");
    if (labels.empty()) {
        for (std::size_t i = 0; i < modes.size(); ++i) labels.push_back("A" + std::to_string(i + 1));
    }
    if (labels.size() != modes.size())
        throw input_error("label count does not match matrix count");
    std::set<std::string> seen(labels.begin(), labels.end());
    if (seen.size() != labels.size()) throw input_error("matrix set labels must be unique");
}

MatrixSet scale_set(const MatrixSet& set, double gamma) {
    std::vector<Matrix> mats;
    mats.reserve(set.modes.size());
    for (const auto& m : set.modes) mats.push_back(scale(m, gamma));
    return MatrixSet(std::move(mats), set.labels);
}

Matrix word_matrix(const MatrixSet& set, const Word& w) {
    Matrix prod = Matrix::identity(set.dim);
    for (auto it = w.modes.rbegin(); it != w.modes.rend(); ++it) {
        if (*it >= set.modes.size()) throw input_error("word index out of range");
        prod = multiply(set.modes[*it], prod);
    }
    return prod;
}

std::vector<ProductEntry> enumerate_products(const MatrixSet& set, int t, double dedup_tol,
                                             const EnumerationLimits& limits) {
    if (t < 0) throw input_error("product length must be >= 0");
    if (dedup_tol < 0.0) throw input_error("dedup tolerance must be >= 0");
    const std::size_t m = set.modes.size();
    std::uint64_t count = 1;
    for (int i = 0; i < t; ++i) {
        if (count > limits.max_products / m)
            throw resource_limit_error("horizon too large: m^t exceeds enumeration cap");
        count *= m;
    }

    std::vector<ProductEntry> out;
    if (t == 0) {
        out.push_back({Word{}, Matrix::identity(set.dim), 0});
        return out;
    }
    out.reserve(static_cast<std::size_t>(count));

    // Depth-first in index order yields lexicographic words; partial products
    // are kept on a stack so each step is one multiply.
    std::vector<std::uint32_t> word(static_cast<std::size_t>(t), 0);
    std::vector<Matrix> partial;
    partial.reserve(static_cast<std::size_t>(t) + 1);
    partial.push_back(Matrix::identity(set.dim));
    int depth = 0;
    while (true) {
        while (depth < t) {
            partial.push_back(multiply(partial.back(), set.modes[word[static_cast<std::size_t>(depth)]]));
            ++depth;
        }
        out.push_back({Word{word}, partial.back(), t});
        while (depth > 0) {
            partial.pop_back();
            --depth;
            if (++word[static_cast<std::size_t>(depth)] < m) break;
            word[static_cast<std::size_t>(depth)] = 0;
        }
        if (depth == 0 && word[0] == 0) break;
    }

    if (dedup_tol > 0.0) {
        std::vector<ProductEntry> kept;
        for (auto& e : out) {
            bool merged = false;
            for (const auto& rep : kept)
                if (max_abs_diff(e.matrix, rep.matrix) <= dedup_tol) { merged = true; break; }
            if (!merged) kept.push_back(std::move(e));
        }
        out = std::move(kept);
    }
    return out;
}

std::string word_to_string(const MatrixSet& set, const Word& w) {
    if (w.modes.empty()) return "Id";
    std::string s;
    for (std::size_t i = 0; i < w.modes.size(); ++i) {
        if (i) s += ' ';
        s += set.labels[w.modes[i]];
    }
    return s;
}

} // namespace switchstab
