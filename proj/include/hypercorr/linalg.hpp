#pragma once

// Minimal fixed-size complex linear algebra for two-qubit spin problems:
// real 3-vectors and symmetric 3x3 matrices, complex 2x2 / 4x4 matrices,
// Pauli constructions, tensor products, small powers and eigenvalues.
// Everything is a plain value type; all functions are pure.

#include <array>
#include <complex>
#include <cstddef>

namespace hypercorr {

using cplx = std::complex<double>;

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double s) const { return {x * s, y * s, z * s}; }
    Vec3 operator-() const { return {-x, -y, -z}; }

    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const;
    Vec3 normalized() const;
};

inline Vec3 operator*(double s, const Vec3& v) { return v * s; }

/// True when |v| = 1 within tol.
bool is_unit(const Vec3& v, double tol = 1e-12);

/// Real 3x3 matrix, row-major. Used for correlation matrices.
struct Mat3 {
    std::array<double, 9> e{};

    double& at(int i, int j) { return e[static_cast<std::size_t>(3 * i + j)]; }
    double at(int i, int j) const { return e[static_cast<std::size_t>(3 * i + j)]; }

    static Mat3 zero() { return {}; }
    static Mat3 identity();
    static Mat3 diag(double a, double b, double c);

    Mat3 transpose() const;
    Mat3 operator*(const Mat3& o) const;
    Mat3 operator*(double s) const;
    Mat3 operator+(const Mat3& o) const;
    Mat3 operator-(const Mat3& o) const;
    Vec3 apply(const Vec3& v) const;
    double max_abs() const;
    bool is_symmetric(double tol = 1e-12) const;
};

/// Largest singular value (spectral norm) of a real 3x3 matrix.
double spectral_norm3(const Mat3& m);

/// Eigenvalues of a real symmetric 3x3 matrix, sorted descending.
/// Closed-form trigonometric solution of the characteristic cubic.
/// Throws std::invalid_argument when the input is not symmetric within 1e-12.
std::array<double, 3> sym3_eigenvalues(const Mat3& t);

struct Mat2 {
    std::array<cplx, 4> e{};

    cplx& at(int i, int j) { return e[static_cast<std::size_t>(2 * i + j)]; }
    cplx at(int i, int j) const { return e[static_cast<std::size_t>(2 * i + j)]; }

    static Mat2 zero() { return {}; }
    static Mat2 identity();

    Mat2 operator+(const Mat2& o) const;
    Mat2 operator-(const Mat2& o) const;
    Mat2 operator*(const Mat2& o) const;
    Mat2 operator*(cplx s) const;
    Mat2 operator*(double s) const { return *this * cplx(s, 0.0); }
    Mat2 adjoint() const;
    cplx trace() const { return e[0] + e[3]; }
    double max_abs() const;
    bool is_hermitian(double tol = 1e-9) const;
};

struct Mat4 {
    std::array<cplx, 16> e{};

    cplx& at(int i, int j) { return e[static_cast<std::size_t>(4 * i + j)]; }
    cplx at(int i, int j) const { return e[static_cast<std::size_t>(4 * i + j)]; }

    static Mat4 zero() { return {}; }
    static Mat4 identity();

    Mat4 operator+(const Mat4& o) const;
    Mat4 operator-(const Mat4& o) const;
    Mat4 operator*(const Mat4& o) const;
    Mat4 operator*(cplx s) const;
    Mat4 operator*(double s) const { return *this * cplx(s, 0.0); }
    Mat4 adjoint() const;
    cplx trace() const { return e[0] + e[5] + e[10] + e[15]; }
    double max_abs() const;
    bool is_hermitian(double tol = 1e-9) const;
};

Mat2 pauli_x();
Mat2 pauli_y();
Mat2 pauli_z();

/// sigma . n for a unit direction n. Hermitian, traceless, squares to I.
/// Throws std::invalid_argument when |n| deviates from 1 by more than 1e-12.
Mat2 pauli_dot(const Vec3& n);

/// Tensor product; (A (x) B)(C (x) D) = AC (x) BD.
Mat4 kron(const Mat2& a, const Mat2& b);

/// M^n for n in {0..4}; M^0 = I. Throws std::invalid_argument otherwise.
Mat4 mat_pow(const Mat4& m, int n);

/// Eigenvalues of a Hermitian 2x2 matrix, sorted descending.
std::array<double, 2> hermitian_eigenvalues(const Mat2& m);

/// Eigenvalues of a Hermitian 4x4 matrix, sorted descending.
/// Cyclic complex Jacobi sweeps; deterministic.
std::array<double, 4> hermitian_eigenvalues(const Mat4& m);

/// Partial traces of a two-qubit operator.
Mat2 partial_trace_second(const Mat4& m);
Mat2 partial_trace_first(const Mat4& m);

}  // namespace hypercorr
