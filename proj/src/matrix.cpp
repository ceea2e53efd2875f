#include "swcert/matrix.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace swcert {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

Eigen::MatrixXd to_eigen(const Matrix& a) {
    const int d = a.dim();
    Eigen::MatrixXd m(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) m(r, c) = a(r, c);
    return m;
}

}  // namespace

Matrix::Matrix(int dim) : dim_(dim), a_(static_cast<std::size_t>(dim) * dim, 0.0) {
    require(dim >= 1, "matrix dimension must be positive");
}

Matrix::Matrix(int dim, std::vector<double> entries) : dim_(dim), a_(std::move(entries)) {
    require(dim >= 1, "matrix dimension must be positive");
    require(a_.size() == static_cast<std::size_t>(dim) * dim,
            "entry count does not match dimension");
    require(all_finite(), "matrix entries must be finite");
}

Matrix Matrix::identity(int dim) {
    Matrix m(dim);
    for (int i = 0; i < dim; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const double> entries) {
    Matrix m(static_cast<int>(entries.size()));
    for (int i = 0; i < m.dim(); ++i) m(i, i) = entries[i];
    require(m.all_finite(), "matrix entries must be finite");
    return m;
}

Matrix Matrix::from_rows(const std::vector<std::vector<double>>& rows) {
    require(!rows.empty(), "matrix must have at least one row");
    const int d = static_cast<int>(rows.size());
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(d) * d);
    for (const auto& row : rows) {
        require(static_cast<int>(row.size()) == d, "matrix must be square");
        flat.insert(flat.end(), row.begin(), row.end());
    }
    return Matrix(d, std::move(flat));
}

bool Matrix::all_finite() const {
    for (double v : a_)
        if (!std::isfinite(v)) return false;
    return true;
}

std::string Matrix::to_string() const {
    std::ostringstream os;
    os << "[";
    for (int r = 0; r < dim_; ++r) {
        os << (r ? "; " : "");
        for (int c = 0; c < dim_; ++c) os << (c ? " " : "") << (*this)(r, c);
    }
    os << "]";
    return os.str();
}

Matrix operator+(const Matrix& a, const Matrix& b) {
    require(a.dim() == b.dim(), "dimension mismatch");
    Matrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) + b(r, c);
    return out;
}

Matrix operator-(const Matrix& a, const Matrix& b) {
    require(a.dim() == b.dim(), "dimension mismatch");
    Matrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) - b(r, c);
    return out;
}

Matrix operator*(const Matrix& a, double s) {
    Matrix out(a.dim());
    for (int r = 0; r < a.dim(); ++r)
        for (int c = 0; c < a.dim(); ++c) out(r, c) = a(r, c) * s;
    return out;
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    require(a.dim() == b.dim(), "dimension mismatch in mat_mul");
    const int d = a.dim();
    Matrix out(d);
    for (int r = 0; r < d; ++r) {
        for (int c = 0; c < d; ++c) {
            double acc = 0.0;
            for (int k = 0; k < d; ++k) acc += a(r, k) * b(k, c);
            out(r, c) = acc;
        }
    }
    return out;
}

Matrix mat_pow(const Matrix& a, int k) {
    require(k >= 0, "mat_pow exponent must be nonnegative");
    Matrix out = Matrix::identity(a.dim());
    for (int i = 0; i < k; ++i) out = mat_mul(out, a);
    return out;
}

double spectral_norm(const Matrix& a) {
    require(a.all_finite(), "spectral_norm requires finite entries");
    if (a.dim() == 1) return std::abs(a(0, 0));
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(to_eigen(a));
    return svd.singularValues()(0);
}

double spectral_radius(const Matrix& a) {
    require(a.all_finite(), "spectral_radius requires finite entries");
    Eigen::EigenSolver<Eigen::MatrixXd> solver(to_eigen(a), /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success)
        throw std::runtime_error("eigensolver failed to converge on " + a.to_string());
    return solver.eigenvalues().cwiseAbs().maxCoeff();
}

Matrix commutator(const Matrix& a, int p, const Matrix& b, int q) {
    require(a.dim() == b.dim(), "dimension mismatch in commutator");
    require(p >= 1 && q >= 1, "commutator powers must be positive");
    const Matrix ap = mat_pow(a, p);
    const Matrix bq = mat_pow(b, q);
    return mat_mul(ap, bq) - mat_mul(bq, ap);
}

Vec mat_vec(const Matrix& a, const Vec& x) {
    require(static_cast<int>(x.size()) == a.dim(), "dimension mismatch in mat_vec");
    Vec out(x.size(), 0.0);
    for (int r = 0; r < a.dim(); ++r) {
        double acc = 0.0;
        for (int c = 0; c < a.dim(); ++c) acc += a(r, c) * x[c];
        out[r] = acc;
    }
    return out;
}

double vec_norm(const Vec& x) {
    double acc = 0.0;
    for (double v : x) acc += v * v;
    return std::sqrt(acc);
}

}  // namespace swcert
