#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace swcert {

/// Dense real square matrix, row-major storage. All entries are required to
/// be finite; factory functions and arithmetic reject NaN/inf inputs.
class Matrix {
public:
    explicit Matrix(int dim);  // zero matrix
    Matrix(int dim, std::vector<double> entries);

    static Matrix identity(int dim);
    static Matrix diagonal(std::span<const double> entries);
    /// Builds from nested rows; throws std::invalid_argument unless the rows
    /// form a square matrix of finite values.
    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    int dim() const { return dim_; }
    double& operator()(int r, int c) { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    double operator()(int r, int c) const { return a_[static_cast<std::size_t>(r) * dim_ + c]; }
    std::span<const double> entries() const { return a_; }

    bool all_finite() const;
    std::string to_string() const;

    bool operator==(const Matrix& other) const = default;

private:
    int dim_;
    std::vector<double> a_;
};

Matrix operator+(const Matrix& a, const Matrix& b);
Matrix operator-(const Matrix& a, const Matrix& b);
Matrix operator*(const Matrix& a, double s);

/// Exact floating-point product; dimensions must agree.
Matrix mat_mul(const Matrix& a, const Matrix& b);
inline Matrix operator*(const Matrix& a, const Matrix& b) { return mat_mul(a, b); }

/// a^k by iterated multiplication (k is small in this domain; the fixed
/// association keeps rounding reproducible). a^0 is the identity.
Matrix mat_pow(const Matrix& a, int k);

/// Largest singular value (induced Euclidean norm).
double spectral_norm(const Matrix& a);

/// Largest eigenvalue modulus.
double spectral_radius(const Matrix& a);

/// a^p b^q - b^q a^p.
Matrix commutator(const Matrix& a, int p, const Matrix& b, int q);

using Vec = std::vector<double>;

Vec mat_vec(const Matrix& a, const Vec& x);
double vec_norm(const Vec& x);

}  // namespace swcert
