#pragma once

#include <array>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "l1proj/linalg.hpp"

namespace l1proj {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;
inline constexpr double kFourPi = 4.0 * std::numbers::pi;

// ---------------------------------------------------------------------------
// Euler-angle parameterization of SU(2), zyz convention.
//
// u(alpha, beta, gamma) = [ e^{-i(a+g)/2} cos(b/2)   -e^{-i(a-g)/2} sin(b/2) ]
//                         [ e^{ i(a-g)/2} sin(b/2)    e^{ i(a+g)/2} cos(b/2) ]
//
// Ranges: alpha in [0, 2pi), beta in [0, pi], gamma in [0, 4pi).
// ---------------------------------------------------------------------------

struct EulerAngles {
    double alpha = 0.0;
    double beta = 0.0;
    double gamma = 0.0;
};

inline double mod_positive(double x, double period) {
    double r = std::fmod(x, period);
    if (r < 0.0) r += period;
    if (r >= period) r = 0.0;  // guard fmod edge at the period boundary
    return r;
}

inline Eigen::Matrix2cd su2_from_euler(const EulerAngles& e) {
    const double cb = std::cos(e.beta / 2.0);
    const double sb = std::sin(e.beta / 2.0);
    const complexd a = std::exp(-kImag * (e.alpha + e.gamma) / 2.0) * cb;
    const complexd b = -std::exp(-kImag * (e.alpha - e.gamma) / 2.0) * sb;
    Eigen::Matrix2cd m;
    m << a, b, -std::conj(b), std::conj(a);
    return m;
}

/// Canonical Euler triple of an SU(2) matrix: the returned angles reproduce
/// the matrix exactly (both sheets of the double cover are reachable through
/// the 4pi range of gamma).  At beta in {0, pi} only one phase combination is
/// defined; the other is set to zero.
inline EulerAngles euler_from_su2(const Eigen::Matrix2cd& m) {
    const complexd a = m(0, 0);
    const complexd b = m(0, 1);
    const double na = std::abs(a);
    const double nb = std::abs(b);
    EulerAngles e;
    e.beta = 2.0 * std::atan2(nb, na);

    // u == -(alpha+gamma)/2 mod 2pi, v == -(alpha-gamma)/2 mod 2pi
    double u = 0.0, v = 0.0;
    if (na > 1e-12) u = mod_positive(-std::arg(a), kTwoPi);
    if (nb > 1e-12) v = mod_positive(-std::arg(-b), kTwoPi);
    e.alpha = mod_positive(u + v, kTwoPi);
    e.gamma = mod_positive(2.0 * u - e.alpha, kFourPi);
    return e;
}

inline EulerAngles canonical_euler(const EulerAngles& e) { return euler_from_su2(su2_from_euler(e)); }

// ---------------------------------------------------------------------------
// Gauss-Legendre nodes/weights on [-1, 1] (Newton on the recurrence).
// ---------------------------------------------------------------------------

struct GaussLegendre {
    std::vector<double> nodes;
    std::vector<double> weights;
};

inline GaussLegendre gauss_legendre(int n) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: n must be >= 1");
    GaussLegendre gl;
    gl.nodes.resize(n);
    gl.weights.resize(n);
    for (int i = 0; i < n; ++i) {
        double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            if (n == 1) p1 = x;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double pn = (n == 1) ? x : p1;
            double pn1 = (n == 1) ? 1.0 : p0;
            dp = n * (x * pn - pn1) / (x * x - 1.0);
            double dx = pn / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        gl.nodes[n - 1 - i] = x;
        gl.weights[n - 1 - i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    return gl;
}

// ---------------------------------------------------------------------------
// Wigner matrices.  Index convention: row r corresponds to m' = j - r and
// column c to m = j - c (descending), so wigner_d(1, e) equals su2_from_euler(e).
// ---------------------------------------------------------------------------

inline double factorial_table(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(171);
        t[0] = 1.0;
        for (int i = 1; i <= 170; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n > 170) throw std::out_of_range("factorial_table");
    return table[static_cast<std::size_t>(n)];
}

/// Wigner small-d element d^j_{m',m}(beta); all spins passed doubled.
inline double wigner_small_d(int two_j, int two_mp, int two_m, double beta) {
    if ((two_j + two_mp) % 2 != 0 || (two_j + two_m) % 2 != 0)
        throw std::invalid_argument("wigner_small_d: incompatible parities");
    const int jpm = (two_j + two_m) / 2;
    const int jmm = (two_j - two_m) / 2;
    const int jpmp = (two_j + two_mp) / 2;
    const int jmmp = (two_j - two_mp) / 2;
    if (jpm < 0 || jmm < 0 || jpmp < 0 || jmmp < 0) throw std::invalid_argument("wigner_small_d: |m| > j");

    const double pref = std::sqrt(factorial_table(jpm) * factorial_table(jmm) * factorial_table(jpmp) *
                                  factorial_table(jmmp));
    const double ch = std::cos(beta / 2.0);
    const double sh = std::sin(beta / 2.0);
    const int dmp_m = (two_mp - two_m) / 2;  // m' - m
    const int s_lo = std::max(0, -dmp_m);
    const int s_hi = std::min(jpm, jmmp);
    double acc = 0.0;
    for (int s = s_lo; s <= s_hi; ++s) {
        const double sign = ((dmp_m + s) % 2 == 0) ? 1.0 : -1.0;
        const double den = factorial_table(jpm - s) * factorial_table(s) * factorial_table(dmp_m + s) *
                           factorial_table(jmmp - s);
        const int cos_pow = two_j + (two_m - two_mp) / 2 - 2 * s;
        const int sin_pow = dmp_m + 2 * s;
        acc += sign / den * std::pow(ch, cos_pow) * std::pow(sh, sin_pow);
    }
    return pref * acc;
}

/// Full Wigner D^j(alpha, beta, gamma), a (2j+1) x (2j+1) unitary.
inline Matrix wigner_d(int two_j, const EulerAngles& e) {
    const int dim = two_j + 1;
    Matrix m(dim, dim);
    for (int r = 0; r < dim; ++r) {
        const int two_mp = two_j - 2 * r;
        for (int c = 0; c < dim; ++c) {
            const int two_m = two_j - 2 * c;
            const double d = wigner_small_d(two_j, two_mp, two_m, e.beta);
            const complexd ph = std::exp(-kImag * (0.5 * two_mp * e.alpha + 0.5 * two_m * e.gamma));
            m(r, c) = ph * d;
        }
    }
    return m;
}

}  // namespace l1proj
