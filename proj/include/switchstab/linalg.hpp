#pragma once

#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "switchstab/errors.hpp"

namespace switchstab {

using Vec = std::vector<double>;

/// Small dense square matrix, row-major, entries validated finite.
class Matrix {
public:
    explicit Matrix(int dim); // zero matrix
    Matrix(int dim, std::vector<double> entries);
    Matrix(std::initializer_list<std::initializer_list<double>> rows);

    static Matrix identity(int dim);
    static Matrix diagonal(const Vec& d);

    int dim() const { return dim_; }
    double operator()(int i, int j) const { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    double& operator()(int i, int j) { return e_[static_cast<std::size_t>(i) * dim_ + j]; }
    const std::vector<double>& entries() const { return e_; }

    bool operator==(const Matrix& o) const { return dim_ == o.dim_ && e_ == o.e_; }

private:
    int dim_;
    std::vector<double> e_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return multiply(a, b); }
Matrix add(const Matrix& a, const Matrix& b);
Matrix scale(const Matrix& a, double s);
Matrix transpose(const Matrix& a);
Vec mat_vec(const Matrix& a, const Vec& x);

double norm2(const Vec& x);
double determinant(const Matrix& a);

/// Largest absolute entry of a - b; dimensions must match.
double max_abs_diff(const Matrix& a, const Matrix& b);

/// min_{|x|=1} |a x|, via the Gram matrix: closed form for d = 2, cyclic
/// Jacobi on a^T a for d > 2.
double smallest_singular_value(const Matrix& a);
/// Operator 2-norm (largest singular value), same route.
double spectral_norm(const Matrix& a);

/// Eigenvalues of the symmetric matrix s, ascending, by cyclic Jacobi.
std::vector<double> symmetric_eigenvalues(const Matrix& s);

/// Solves a x = b for square a (partial-pivot LU); throws on singular a.
Vec solve_linear(const Matrix& a, const Vec& b);
Matrix solve_linear(const Matrix& a, const Matrix& b);

/// Finite mode sequence; read left to right as the written matrix product,
/// so the last index is the first matrix applied to a vector.
struct Word {
    std::vector<std::uint32_t> modes;

    std::size_t length() const { return modes.size(); }
    bool operator==(const Word& o) const { return modes == o.modes; }
    bool operator<(const Word& o) const { return modes < o.modes; }
};

/// Finite set of same-dimension matrices with unique textual labels.
struct MatrixSet {
    int dim;
    std::vector<Matrix> modes;
    std::vector<std::string> labels;

    MatrixSet(std::vector<Matrix> mats, std::vector<std::string> labs);
    std::size_t size() const { return modes.size(); }
};

MatrixSet scale_set(const MatrixSet& set, double gamma);

struct ProductEntry {
    Word word;
    Matrix matrix;
    int length;
};

struct EnumerationLimits {
    // Refuse enumerations whose undeduplicated count m^t exceeds this.
    std::uint64_t max_products = std::uint64_t{1} << 24;
};

/// Product of the word's mode matrices, accumulated by left-multiplication
/// (last index applied first). Empty word gives the identity.
Matrix word_matrix(const MatrixSet& set, const Word& w);

/// All length-t products in lexicographic word order. With dedup_tol > 0,
/// entries whose matrices agree entrywise within dedup_tol are merged,
/// keeping the lexicographically smallest word.
std::vector<ProductEntry> enumerate_products(const MatrixSet& set, int t, double dedup_tol,
                                             const EnumerationLimits& limits = {});

std::string word_to_string(const MatrixSet& set, const Word& w);

} // namespace switchstab
