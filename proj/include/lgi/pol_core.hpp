/**
 * @file pol_core.hpp
 * @brief Jones vectors, Jones matrices, coherency matrices and Stokes parameters.
 *
 * Conventions:
 * - A Jones vector is the column (Ex, Ey).
 * - Coherency matrices use the Hermitian ordering rho01 = <Ex Ey*>, so a pure
 *   state is the outer product v v^dagger and an element J maps rho to J rho J^dagger.
 * - Stokes parameters relate to rho by
 *       rho = 1/2 [[s0 + s1, s2 + i s3], [s2 - i s3, s0 - s1]].
 * - Element products read right-to-left in beam order: compose(j2, j1) is
 *   "j1 first, then j2".
 * - Public angles are in degrees.
 */

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "lgi/errors.hpp"

namespace lgi {

using Complex = std::complex<double>;

namespace tol {
inline constexpr double kHermitian = 1e-9;
inline constexpr double kPsd = 1e-9;
inline constexpr double kRoundTrip = 1e-12;
/// Below this trace a state carries no light and DOP/correlations are undefined.
inline constexpr double kZeroTrace = 1e-15;
}  // namespace tol

inline constexpr double deg_to_rad(double deg) noexcept { return deg * (std::numbers::pi / 180.0); }

namespace detail {
inline bool finite(Complex z) noexcept { return std::isfinite(z.real()) && std::isfinite(z.imag()); }
}  // namespace detail

/// Complex field amplitudes (Ex, Ey) of a pure polarization state.
struct JonesVector {
    Complex ex{};
    Complex ey{};

    double norm2() const noexcept { return std::norm(ex) + std::norm(ey); }
    bool is_finite() const noexcept { return detail::finite(ex) && detail::finite(ey); }
};

/// Row-major 2x2 complex operator. Unitarity or projector character is never
/// assumed; use the predicates below.
struct JonesMatrix {
    Complex a00{}, a01{}, a10{}, a11{};

    static constexpr JonesMatrix identity() noexcept { return {1.0, 0.0, 0.0, 1.0}; }

    JonesMatrix adjoint() const noexcept {
        return {std::conj(a00), std::conj(a10), std::conj(a01), std::conj(a11)};
    }

    Complex trace() const noexcept { return a00 + a11; }
    Complex determinant() const noexcept { return a00 * a11 - a01 * a10; }

    bool is_finite() const noexcept {
        return detail::finite(a00) && detail::finite(a01) && detail::finite(a10) && detail::finite(a11);
    }

    friend JonesMatrix operator*(const JonesMatrix& l, const JonesMatrix& r) noexcept {
        return {l.a00 * r.a00 + l.a01 * r.a10, l.a00 * r.a01 + l.a01 * r.a11,
                l.a10 * r.a00 + l.a11 * r.a10, l.a10 * r.a01 + l.a11 * r.a11};
    }

    friend JonesVector operator*(const JonesMatrix& j, const JonesVector& v) noexcept {
        return {j.a00 * v.ex + j.a01 * v.ey, j.a10 * v.ex + j.a11 * v.ey};
    }

    friend JonesMatrix operator+(const JonesMatrix& l, const JonesMatrix& r) noexcept {
        return {l.a00 + r.a00, l.a01 + r.a01, l.a10 + r.a10, l.a11 + r.a11};
    }

    friend JonesMatrix operator*(Complex c, const JonesMatrix& j) noexcept {
        return {c * j.a00, c * j.a01, c * j.a10, c * j.a11};
    }
};

/// Largest absolute entry-wise difference.
inline double max_abs_diff(const JonesMatrix& a, const JonesMatrix& b) noexcept {
    return std::max({std::abs(a.a00 - b.a00), std::abs(a.a01 - b.a01), std::abs(a.a10 - b.a10),
                     std::abs(a.a11 - b.a11)});
}

inline bool is_unitary(const JonesMatrix& j, double tolerance = tol::kRoundTrip) noexcept {
    return max_abs_diff(j.adjoint() * j, JonesMatrix::identity()) <= tolerance;
}

inline bool is_idempotent(const JonesMatrix& j, double tolerance = tol::kRoundTrip) noexcept {
    return max_abs_diff(j * j, j) <= tolerance;
}

inline bool is_hermitian(const JonesMatrix& j, double tolerance = tol::kHermitian) noexcept {
    return max_abs_diff(j, j.adjoint()) <= tolerance;
}

/// 2x2 coherency (polarization) matrix of possibly partially polarized light.
/// Entries are stored as given; physicality is checked by is_physical().
struct CoherencyMatrix {
    Complex r00{}, r01{}, r10{}, r11{};

    Complex trace() const noexcept { return r00 + r11; }

    bool is_finite() const noexcept {
        return detail::finite(r00) && detail::finite(r01) && detail::finite(r10) && detail::finite(r11);
    }

    friend CoherencyMatrix operator+(const CoherencyMatrix& l, const CoherencyMatrix& r) noexcept {
        return {l.r00 + r.r00, l.r01 + r.r01, l.r10 + r.r10, l.r11 + r.r11};
    }

    friend CoherencyMatrix operator*(double c, const CoherencyMatrix& m) noexcept {
        return {c * m.r00, c * m.r01, c * m.r10, c * m.r11};
    }
};

inline double max_abs_diff(const CoherencyMatrix& a, const CoherencyMatrix& b) noexcept {
    return std::max({std::abs(a.r00 - b.r00), std::abs(a.r01 - b.r01), std::abs(a.r10 - b.r10),
                     std::abs(a.r11 - b.r11)});
}

struct StokesVector {
    double s0 = 0.0;
    double s1 = 0.0;
    double s2 = 0.0;
    double s3 = 0.0;

    double polarized_norm() const noexcept { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }
};

/// Eigenvalues of a 2x2 Hermitian matrix, ascending.
struct EigenPair {
    double low = 0.0;
    double high = 0.0;
};

inline double hermiticity_defect(const CoherencyMatrix& rho) noexcept {
    return std::max({std::abs(rho.r01 - std::conj(rho.r10)), std::abs(rho.r00.imag()), std::abs(rho.r11.imag())});
}

/// Closed-form eigenvalues of the Hermitian part of rho:
/// tr/2 -+ sqrt(((a - d)/2)^2 + |b|^2).
inline EigenPair hermitian_eigenvalues(const CoherencyMatrix& rho) noexcept {
    const double a = rho.r00.real();
    const double d = rho.r11.real();
    const Complex b = 0.5 * (rho.r01 + std::conj(rho.r10));
    const double half_trace = 0.5 * (a + d);
    const double radius = std::hypot(0.5 * (a - d), std::abs(b));
    return {half_trace - radius, half_trace + radius};
}

/// Hermitian within tolerance and both eigenvalues >= -tolerance.
inline bool is_physical(const CoherencyMatrix& rho, double tolerance = tol::kPsd) noexcept {
    if (!rho.is_finite()) return false;
    if (hermiticity_defect(rho) > tolerance) return false;
    return hermitian_eigenvalues(rho).low >= -tolerance;
}

/// Pure-state coherency matrix v v^dagger.
inline CoherencyMatrix jones_to_coherency(const JonesVector& v) {
    if (!v.is_finite()) throw InvalidInput("jones_to_coherency: non-finite Jones vector");
    const Complex off = v.ex * std::conj(v.ey);
    return {std::norm(v.ex), off, std::conj(off), std::norm(v.ey)};
}

inline CoherencyMatrix coherency_from_stokes(const StokesVector& s) {
    if (!(std::isfinite(s.s0) && std::isfinite(s.s1) && std::isfinite(s.s2) && std::isfinite(s.s3)))
        throw InvalidInput("coherency_from_stokes: non-finite Stokes parameters");
    if (s.s0 < 0.0) throw UnphysicalState("coherency_from_stokes: negative s0");
    const double pol2 = s.s1 * s.s1 + s.s2 * s.s2 + s.s3 * s.s3;
    if (pol2 > s.s0 * s.s0 * (1.0 + tol::kPsd))
        throw UnphysicalState("coherency_from_stokes: degree of polarization exceeds 1");
    const Complex off{0.5 * s.s2, 0.5 * s.s3};
    return {0.5 * (s.s0 + s.s1), off, std::conj(off), 0.5 * (s.s0 - s.s1)};
}

inline StokesVector stokes_from_coherency(const CoherencyMatrix& rho) {
    if (!rho.is_finite()) throw InvalidInput("stokes_from_coherency: non-finite entries");
    if (hermiticity_defect(rho) > tol::kHermitian)
        throw InvalidState("stokes_from_coherency: coherency matrix is not Hermitian");
    const double a = rho.r00.real();
    const double d = rho.r11.real();
    const Complex off = 0.5 * (rho.r01 + std::conj(rho.r10));
    return {a + d, a - d, 2.0 * off.real(), 2.0 * off.imag()};
}

/// Time-averaged intensity, Re Tr(rho).
inline double intensity(const CoherencyMatrix& rho) noexcept { return rho.trace().real(); }

/// sqrt(s1^2 + s2^2 + s3^2) / s0, clamped to [0, 1].
inline double degree_of_polarization(const CoherencyMatrix& rho) {
    const StokesVector s = stokes_from_coherency(rho);
    if (s.s0 < tol::kZeroTrace) throw UndefinedDop("degree_of_polarization: zero-intensity state");
    return std::clamp(s.polarized_norm() / s.s0, 0.0, 1.0);
}

/// J rho J^dagger. The result is made exactly Hermitian.
inline CoherencyMatrix apply_element(const JonesMatrix& j, const CoherencyMatrix& rho) noexcept {
    // t = J rho
    const Complex t00 = j.a00 * rho.r00 + j.a01 * rho.r10;
    const Complex t01 = j.a00 * rho.r01 + j.a01 * rho.r11;
    const Complex t10 = j.a10 * rho.r00 + j.a11 * rho.r10;
    const Complex t11 = j.a10 * rho.r01 + j.a11 * rho.r11;
    // t J^dagger
    const double o00 = (t00 * std::conj(j.a00) + t01 * std::conj(j.a01)).real();
    const Complex o01 = t00 * std::conj(j.a10) + t01 * std::conj(j.a11);
    const double o11 = (t10 * std::conj(j.a10) + t11 * std::conj(j.a11)).real();
    return {o00, o01, std::conj(o01), o11};
}

/// j2 * j1: the beam meets j1 first.
inline JonesMatrix compose(const JonesMatrix& j2, const JonesMatrix& j1) noexcept { return j2 * j1; }

}  // namespace lgi
