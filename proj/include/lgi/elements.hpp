#pragma once

#include <cmath>

#include "lgi/pol_core.hpp"

namespace lgi {

/// Fast-axis angles (degrees from horizontal) of the two half-wave plates that
/// generate one time step of evolution.
struct EvolutionConfig {
    double theta1 = 0.0;
    double theta2 = 0.0;
};

namespace detail {

/// Element angles are lines, so they are reduced modulo 180 degrees before
/// entering the trigonometry.
inline double axis_radians(double deg) noexcept { return deg_to_rad(std::fmod(deg, 180.0)); }

inline void require_finite(double v, const char* what) {
    if (!std::isfinite(v)) throw InvalidInput(std::string(what) + ": non-finite angle");
}

}  // namespace detail

/// R(theta) diag(1, e^{i delta}) R(-theta); theta in degrees, delta in radians.
inline JonesMatrix linear_retarder(double theta_deg, double delta_rad) {
    detail::require_finite(theta_deg, "linear_retarder");
    detail::require_finite(delta_rad, "linear_retarder");
    const double t = detail::axis_radians(theta_deg);
    const double c = std::cos(t);
    const double s = std::sin(t);
    const Complex phase = std::polar(1.0, delta_rad);
    const Complex cross = c * s * (1.0 - phase);
    return {c * c + s * s * phase, cross, cross, s * s + c * c * phase};
}

/// Real reflection form [[cos 2t, sin 2t], [sin 2t, -cos 2t]]; the overall phase
/// of a physical plate is dropped, so HWP(t)^2 is exactly the identity.
inline JonesMatrix half_wave_plate(double theta_deg) {
    detail::require_finite(theta_deg, "half_wave_plate");
    const double t = 2.0 * detail::axis_radians(theta_deg);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {c, s, s, -c};
}

inline JonesMatrix quarter_wave_plate(double theta_deg) {
    return linear_retarder(theta_deg, std::numbers::pi / 2.0);
}

/// Ideal lossless projector onto linear polarization at theta.
inline JonesMatrix linear_polarizer(double theta_deg) {
    detail::require_finite(theta_deg, "linear_polarizer");
    const double t = detail::axis_radians(theta_deg);
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {c * c, c * s, c * s, s * s};
}

/// Measurement projector for outcome m: +1 is horizontal, -1 is vertical.
inline JonesMatrix projector(int m) {
    if (m == +1) return {1.0, 0.0, 0.0, 0.0};
    if (m == -1) return {0.0, 0.0, 0.0, 1.0};
    throw InvalidOutcome("projector: outcome must be +1 or -1, got " + std::to_string(m));
}

/// HWP(theta2) * HWP(theta1), a rotation by 2 (theta2 - theta1).
inline JonesMatrix evolution_unitary(const EvolutionConfig& cfg) {
    return compose(half_wave_plate(cfg.theta2), half_wave_plate(cfg.theta1));
}

/// Rotation of the field by phi degrees: [[cos, -sin], [sin, cos]].
inline JonesMatrix rotation(double phi_deg) {
    detail::require_finite(phi_deg, "rotation");
    const double t = deg_to_rad(std::fmod(phi_deg, 360.0));
    const double c = std::cos(t);
    const double s = std::sin(t);
    return {c, -s, s, c};
}

}  // namespace lgi
