#include "hypercorr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hypercorr {

double Vec3::norm() const { return std::sqrt(x * x + y * y + z * z); }

Vec3 Vec3::normalized() const {
    const double n = norm();
    if (n == 0.0) throw std::invalid_argument("Vec3::normalized: zero vector");
    return {x / n, y / n, z / n};
}

bool is_unit(const Vec3& v, double tol) { return std::abs(v.norm() - 1.0) <= tol; }

Mat3 Mat3::identity() { return diag(1.0, 1.0, 1.0); }

Mat3 Mat3::diag(double a, double b, double c) {
    Mat3 m;
    m.at(0, 0) = a;
    m.at(1, 1) = b;
    m.at(2, 2) = c;
    return m;
}

Mat3 Mat3::transpose() const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) r.at(i, j) = at(j, i);
    return r;
}

Mat3 Mat3::operator*(const Mat3& o) const {
    Mat3 r;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat3 Mat3::operator*(double s) const {
    Mat3 r = *this;
    for (double& v : r.e) v *= s;
    return r;
}

Mat3 Mat3::operator+(const Mat3& o) const {
    Mat3 r = *this;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] += o.e[i];
    return r;
}

Mat3 Mat3::operator-(const Mat3& o) const {
    Mat3 r = *this;
    for (std::size_t i = 0; i < 9; ++i) r.e[i] -= o.e[i];
    return r;
}

Vec3 Mat3::apply(const Vec3& v) const {
    return {at(0, 0) * v.x + at(0, 1) * v.y + at(0, 2) * v.z,
            at(1, 0) * v.x + at(1, 1) * v.y + at(1, 2) * v.z,
            at(2, 0) * v.x + at(2, 1) * v.y + at(2, 2) * v.z};
}

double Mat3::max_abs() const {
    double m = 0.0;
    for (double v : e) m = std::max(m, std::abs(v));
    return m;
}

bool Mat3::is_symmetric(double tol) const {
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
            if (std::abs(at(i, j) - at(j, i)) > tol) return false;
    return true;
}

double spectral_norm3(const Mat3& m) {
    const Mat3 mtm = m.transpose() * m;
    const auto ev = sym3_eigenvalues(mtm);
    return std::sqrt(std::max(0.0, ev[0]));
}

std::array<double, 3> sym3_eigenvalues(const Mat3& t) {
    if (!t.is_symmetric(1e-12)) throw std::invalid_argument("sym3_eigenvalues: matrix not symmetric");

    const double a01 = t.at(0, 1), a02 = t.at(0, 2), a12 = t.at(1, 2);
    const double p1 = a01 * a01 + a02 * a02 + a12 * a12;
    std::array<double, 3> ev;
    if (p1 == 0.0) {
        ev = {t.at(0, 0), t.at(1, 1), t.at(2, 2)};
    } else {
        const double q = (t.at(0, 0) + t.at(1, 1) + t.at(2, 2)) / 3.0;
        const double p2 = (t.at(0, 0) - q) * (t.at(0, 0) - q) + (t.at(1, 1) - q) * (t.at(1, 1) - q) +
                          (t.at(2, 2) - q) * (t.at(2, 2) - q) + 2.0 * p1;
        const double p = std::sqrt(p2 / 6.0);
        Mat3 b = (t - Mat3::diag(q, q, q)) * (1.0 / p);
        const double detb = b.at(0, 0) * (b.at(1, 1) * b.at(2, 2) - b.at(1, 2) * b.at(2, 1)) -
                            b.at(0, 1) * (b.at(1, 0) * b.at(2, 2) - b.at(1, 2) * b.at(2, 0)) +
                            b.at(0, 2) * (b.at(1, 0) * b.at(2, 1) - b.at(1, 1) * b.at(2, 0));
        const double r = std::clamp(detb / 2.0, -1.0, 1.0);
        const double phi = std::acos(r) / 3.0;
        const double two_pi_3 = 2.0943951023931953;
        ev[0] = q + 2.0 * p * std::cos(phi);
        ev[2] = q + 2.0 * p * std::cos(phi + two_pi_3);
        ev[1] = 3.0 * q - ev[0] - ev[2];
    }
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

Mat2 Mat2::identity() {
    Mat2 m;
    m.e[0] = m.e[3] = 1.0;
    return m;
}

Mat2 Mat2::operator+(const Mat2& o) const {
    Mat2 r = *this;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] += o.e[i];
    return r;
}

Mat2 Mat2::operator-(const Mat2& o) const {
    Mat2 r = *this;
    for (std::size_t i = 0; i < 4; ++i) r.e[i] -= o.e[i];
    return r;
}

Mat2 Mat2::operator*(const Mat2& o) const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 2; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat2 Mat2::operator*(cplx s) const {
    Mat2 r = *this;
    for (cplx& v : r.e) v *= s;
    return r;
}

Mat2 Mat2::adjoint() const {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

double Mat2::max_abs() const {
    double m = 0.0;
    for (const cplx& v : e) m = std::max(m, std::abs(v));
    return m;
}

bool Mat2::is_hermitian(double tol) const {
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

Mat4 Mat4::identity() {
    Mat4 m;
    m.e[0] = m.e[5] = m.e[10] = m.e[15] = 1.0;
    return m;
}

Mat4 Mat4::operator+(const Mat4& o) const {
    Mat4 r = *this;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] += o.e[i];
    return r;
}

Mat4 Mat4::operator-(const Mat4& o) const {
    Mat4 r = *this;
    for (std::size_t i = 0; i < 16; ++i) r.e[i] -= o.e[i];
    return r;
}

Mat4 Mat4::operator*(const Mat4& o) const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            cplx s = 0.0;
            for (int k = 0; k < 4; ++k) s += at(i, k) * o.at(k, j);
            r.at(i, j) = s;
        }
    return r;
}

Mat4 Mat4::operator*(cplx s) const {
    Mat4 r = *this;
    for (cplx& v : r.e) v *= s;
    return r;
}

Mat4 Mat4::adjoint() const {
    Mat4 r;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) r.at(i, j) = std::conj(at(j, i));
    return r;
}

double Mat4::max_abs() const {
    double m = 0.0;
    for (const cplx& v : e) m = std::max(m, std::abs(v));
    return m;
}

bool Mat4::is_hermitian(double tol) const {
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (std::abs(at(i, j) - std::conj(at(j, i))) > tol) return false;
    return true;
}

Mat2 pauli_x() {
    Mat2 m;
    m.at(0, 1) = 1.0;
    m.at(1, 0) = 1.0;
    return m;
}

Mat2 pauli_y() {
    Mat2 m;
    m.at(0, 1) = cplx(0.0, -1.0);
    m.at(1, 0) = cplx(0.0, 1.0);
    return m;
}

Mat2 pauli_z() {
    Mat2 m;
    m.at(0, 0) = 1.0;
    m.at(1, 1) = -1.0;
    return m;
}

Mat2 pauli_dot(const Vec3& n) {
    if (!is_unit(n)) throw std::invalid_argument("pauli_dot: direction is not a unit vector");
    Mat2 m;
    m.at(0, 0) = n.z;
    m.at(0, 1) = cplx(n.x, -n.y);
    m.at(1, 0) = cplx(n.x, n.y);
    m.at(1, 1) = -n.z;
    return m;
}

Mat4 kron(const Mat2& a, const Mat2& b) {
    Mat4 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
                for (int l = 0; l < 2; ++l) r.at(2 * i + k, 2 * j + l) = a.at(i, j) * b.at(k, l);
    return r;
}

Mat4 mat_pow(const Mat4& m, int n) {
    if (n < 0 || n > 4) throw std::invalid_argument("mat_pow: exponent out of range {0..4}");
    Mat4 r = Mat4::identity();
    for (int i = 0; i < n; ++i) r = r * m;
    return r;
}

std::array<double, 2> hermitian_eigenvalues(const Mat2& m) {
    const double a = m.at(0, 0).real();
    const double d = m.at(1, 1).real();
    const double mean = 0.5 * (a + d);
    const double delta = 0.5 * (a - d);
    const double r = std::sqrt(delta * delta + std::norm(m.at(0, 1)));
    return {mean + r, mean - r};
}

std::array<double, 4> hermitian_eigenvalues(const Mat4& m) {
    Mat4 a = m;
    const double scale = std::max(1.0, a.max_abs());
    // Cyclic Jacobi with complex plane rotations.
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) off = std::max(off, std::abs(a.at(p, q)));
        if (off <= 1e-15 * scale) break;
        for (int p = 0; p < 4; ++p)
            for (int q = p + 1; q < 4; ++q) {
                const cplx apq = a.at(p, q);
                const double mag = std::abs(apq);
                if (mag <= 1e-18 * scale) continue;
                const double tau = (a.at(q, q).real() - a.at(p, p).real()) / (2.0 * mag);
                double t;
                if (tau == 0.0)
                    t = 1.0;
                else
                    t = (tau > 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                const double c = 1.0 / std::sqrt(1.0 + t * t);
                const double s = t * c;
                const cplx phase = apq / mag;
                Mat4 u = Mat4::identity();
                u.at(p, p) = c;
                u.at(q, q) = c;
                u.at(p, q) = s * phase;
                u.at(q, p) = -s * std::conj(phase);
                a = u.adjoint() * a * u;
            }
    }
    std::array<double, 4> ev = {a.at(0, 0).real(), a.at(1, 1).real(), a.at(2, 2).real(),
                                a.at(3, 3).real()};
    std::sort(ev.begin(), ev.end(), std::greater<double>());
    return ev;
}

Mat2 partial_trace_second(const Mat4& m) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = m.at(2 * i, 2 * j) + m.at(2 * i + 1, 2 * j + 1);
    return r;
}

Mat2 partial_trace_first(const Mat4& m) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) r.at(i, j) = m.at(i, j) + m.at(2 + i, 2 + j);
    return r;
}

}  // namespace hypercorr
