#pragma once

#include <Eigen/Dense>
#include <complex>
#include <random>

namespace l1proj {

using complexd = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr complexd kImag{0.0, 1.0};

/// Frobenius norm of a complex matrix.
inline double frobenius(const Matrix& a) { return a.norm(); }

/// Trace norm (sum of singular values).
inline double trace_norm(const Matrix& a) {
    if (a.size() == 0) return 0.0;
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues().sum();
}

inline double unitarity_defect(const Matrix& u) {
    return (u * u.adjoint() - Matrix::Identity(u.rows(), u.cols())).norm();
}

inline double hermiticity_defect(const Matrix& a) { return (a - a.adjoint()).norm(); }

inline complexd frobenius_inner(const Matrix& a, const Matrix& b) {
    // <A,B>_F = Tr(B^* A)
    return (b.adjoint() * a).trace();
}

inline complexd random_complex_gaussian(std::mt19937_64& rng) {
    std::normal_distribution<double> n01(0.0, 1.0);
    double re = n01(rng);
    double im = n01(rng);
    return complexd(re, im);
}

inline Matrix random_gaussian_matrix(int rows, int cols, std::mt19937_64& rng) {
    Matrix m(rows, cols);
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) m(r, c) = random_complex_gaussian(rng);
    return m;
}

inline Vector random_gaussian_vector(int n, std::mt19937_64& rng) {
    Vector v(n);
    for (int i = 0; i < n; ++i) v(i) = random_complex_gaussian(rng);
    return v;
}

inline Vector random_unit_vector(int n, std::mt19937_64& rng) {
    Vector v = random_gaussian_vector(n, rng);
    while (v.norm() < 1e-8) v = random_gaussian_vector(n, rng);
    return v / v.norm();
}

/// Haar-distributed unitary via QR of a Ginibre matrix.
inline Matrix random_unitary(int n, std::mt19937_64& rng) {
    Matrix g = random_gaussian_matrix(n, n, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (int i = 0; i < n; ++i) {
        complexd d = r(i, i);
        double ad = std::abs(d);
        q.col(i) *= (ad > 1e-300) ? d / ad : complexd(1.0, 0.0);
    }
    return q;
}

/// Random isometry: dim x rank matrix with orthonormal columns.
inline Matrix random_orthonormal_frame(int dim, int rank, std::mt19937_64& rng) {
    Matrix g = random_gaussian_matrix(dim, rank, rng);
    Eigen::HouseholderQR<Matrix> qr(g);
    return Matrix(qr.householderQ()) * Matrix::Identity(dim, rank);
}

}  // namespace l1proj
