/**
 * @file lgi_engine.hpp
 * @brief Three-time Leggett-Garg test on a polarization state.
 *
 * The dichotomic observable is sigma_z realized by a polarizing beamsplitter
 * (+1 horizontal, -1 vertical). Between measurement times the state evolves by
 * the unitary U of two half-wave plates. For each time pair (i, j) four
 * intensities I_ij(m, n) are computed, where n is the earlier outcome and m
 * the later one:
 *
 *   I_21(m, n) = Tr(P(m) U P(n) rho P(n) U^+ P(m))
 *   I_32(m, n) = Tr(P(m) U P(n) U rho U^+ P(n) U^+ P(m))
 *   I_31(m, n) = Tr(P(m) U U P(n) rho P(n) U^+ U^+ P(m))
 *
 * C_ij = sum mn I_ij(m, n) / sum I_ij(m, n) and K = C_21 + C_32 - C_31.
 * Macrorealism requires K <= 1.
 */

#pragma once

#include <array>
#include <cmath>
#include <variant>

#include "lgi/elements.hpp"
#include "lgi/pol_core.hpp"

namespace lgi {

/// Which correlation function a table feeds.
enum class CorrelationPair { c21 = 21, c32 = 32, c31 = 31 };

/// Slack absorbing rounding when K sits exactly on the bound, e.g. U = identity.
inline constexpr double kViolationSlack = 1e-12;

inline bool violates_lgi(double k) noexcept { return k > 1.0 + kViolationSlack; }

/// The four intensities I(m, n) for m, n in {-1, +1}; m is the later outcome.
class IntensityTable {
public:
    static constexpr double kNegativeSlack = 1e-12;

    IntensityTable() = default;

    /// Values in (m, n) order (+,+), (+,-), (-,+), (-,-). Entries in
    /// [-kNegativeSlack, 0) are clamped to 0; anything lower is rejected.
    IntensityTable(CorrelationPair pair, std::array<double, 4> values) : pair_(pair) {
        for (std::size_t i = 0; i < values.size(); ++i) {
            const double v = values[i];
            if (!std::isfinite(v) || v < -kNegativeSlack)
                throw InvalidInput("IntensityTable: entries must be finite and nonnegative");
            values_[i] = std::max(v, 0.0);
        }
    }

    static constexpr std::size_t index(int m, int n) {
        if ((m != 1 && m != -1) || (n != 1 && n != -1))
            throw InvalidOutcome("IntensityTable: outcomes must be +1 or -1");
        return (m == 1 ? 0u : 2u) + (n == 1 ? 0u : 1u);
    }

    double at(int m, int n) const { return values_[index(m, n)]; }
    const std::array<double, 4>& values() const noexcept { return values_; }
    CorrelationPair pair() const noexcept { return pair_; }

    double total() const noexcept { return values_[0] + values_[1] + values_[2] + values_[3]; }

private:
    CorrelationPair pair_ = CorrelationPair::c21;
    std::array<double, 4> values_{};
};

/// Outcome signs matching IntensityTable's storage order.
inline constexpr std::array<int, 4> kOutcomeProducts{+1, -1, -1, +1};

struct CorrelationTriple {
    double c21 = 0.0;
    double c32 = 0.0;
    double c31 = 0.0;

    double k() const noexcept { return c21 + c32 - c31; }
};

struct KStat {
    double k = 0.0;
    bool violated = false;
};

inline KStat make_kstat(double k) noexcept { return {k, violates_lgi(k)}; }

struct TableSet {
    IntensityTable t21;
    IntensityTable t32;
    IntensityTable t31;
};

// Initial-state kinds. Angles in degrees.
struct LinearState {
    double angle = 0.0;
};
struct DiagonalState {};
struct UnpolarizedState {};
/// Incoherent mix of |basis> and |basis + 90> with weights (1 + dop)/2, (1 - dop)/2.
struct PartiallyPolarizedState {
    double dop = 0.0;
    double basis_angle = 0.0;
};
struct CustomState {
    CoherencyMatrix rho;
};

using InitialStateSpec =
    std::variant<LinearState, DiagonalState, UnpolarizedState, PartiallyPolarizedState, CustomState>;

namespace detail {

inline CoherencyMatrix linear_pure_state(double angle_deg) {
    require_finite(angle_deg, "initial_state");
    const double t = axis_radians(angle_deg);
    return jones_to_coherency({std::cos(t), std::sin(t)});
}

/// Intensity table of: pre-evolution, measure n, mid-evolution, measure m.
inline IntensityTable branch_table(CorrelationPair pair, const CoherencyMatrix& rho, const JonesMatrix& pre,
                                   const JonesMatrix& mid) {
    const CoherencyMatrix before = apply_element(pre, rho);
    std::array<double, 4> values{};
    for (int n : {+1, -1}) {
        const CoherencyMatrix evolved = apply_element(mid, apply_element(projector(n), before));
        // Tr(P(m) sigma P(m)) is the corresponding diagonal entry of sigma.
        values[IntensityTable::index(+1, n)] = evolved.r00.real();
        values[IntensityTable::index(-1, n)] = evolved.r11.real();
    }
    return {pair, values};
}

}  // namespace detail

/// Unit-trace coherency matrix for the requested preparation.
inline CoherencyMatrix initial_state(const InitialStateSpec& spec) {
    struct Visitor {
        CoherencyMatrix operator()(const LinearState& s) const { return detail::linear_pure_state(s.angle); }
        CoherencyMatrix operator()(const DiagonalState&) const { return detail::linear_pure_state(45.0); }
        CoherencyMatrix operator()(const UnpolarizedState&) const { return {0.5, 0.0, 0.0, 0.5}; }
        CoherencyMatrix operator()(const PartiallyPolarizedState& s) const {
            if (!(s.dop >= 0.0 && s.dop <= 1.0)) throw InvalidInput("initial_state: dop must be in [0,1]");
            const double a = 0.5 * (1.0 + s.dop);
            return a * detail::linear_pure_state(s.basis_angle) +
                   (1.0 - a) * detail::linear_pure_state(s.basis_angle + 90.0);
        }
        CoherencyMatrix operator()(const CustomState& s) const {
            if (!is_physical(s.rho)) throw InvalidState("initial_state: custom coherency matrix is not physical");
            const double tr = intensity(s.rho);
            if (tr < tol::kZeroTrace) throw InvalidState("initial_state: custom state has zero intensity");
            CoherencyMatrix n = (1.0 / tr) * s.rho;
            n.r00 = n.r00.real();
            n.r11 = n.r11.real();
            n.r10 = std::conj(n.r01);
            return n;
        }
    };
    return std::visit(Visitor{}, spec);
}

inline IntensityTable intensities_c21(const CoherencyMatrix& rho, const JonesMatrix& u) {
    return detail::branch_table(CorrelationPair::c21, rho, JonesMatrix::identity(), u);
}

inline IntensityTable intensities_c32(const CoherencyMatrix& rho, const JonesMatrix& u) {
    return detail::branch_table(CorrelationPair::c32, rho, u, u);
}

inline IntensityTable intensities_c31(const CoherencyMatrix& rho, const JonesMatrix& u) {
    return detail::branch_table(CorrelationPair::c31, rho, JonesMatrix::identity(), u * u);
}

inline TableSet intensity_tables(const CoherencyMatrix& rho, const JonesMatrix& u) {
    return {intensities_c21(rho, u), intensities_c32(rho, u), intensities_c31(rho, u)};
}

/// sum mn I(m, n) / sum I(m, n); scale-free.
inline double correlation(const IntensityTable& table) {
    const double total = table.total();
    if (!(total > 0.0)) throw UndefinedCorrelation("correlation: intensity table sums to zero");
    double weighted = 0.0;
    for (std::size_t i = 0; i < 4; ++i) weighted += kOutcomeProducts[i] * table.values()[i];
    return std::clamp(weighted / total, -1.0, 1.0);
}

inline CorrelationTriple correlations(const TableSet& tables) {
    return {correlation(tables.t21), correlation(tables.t32), correlation(tables.t31)};
}

/// Full noiseless pipeline: U from cfg, three tables, three correlations, K.
inline KStat k_statistic(const CoherencyMatrix& rho, const EvolutionConfig& cfg) {
    if (!is_physical(rho)) throw InvalidState("k_statistic: coherency matrix is not physical");
    if (intensity(rho) < tol::kZeroTrace) throw UndefinedCorrelation("k_statistic: zero-intensity state");
    const JonesMatrix u = evolution_unitary(cfg);
    return make_kstat(correlations(intensity_tables(rho, u)).k());
}

/// Closed form K = 2 cos(4 (t1 - t2)) - cos(8 (t1 - t2)); state independent.
inline double k_analytic(const EvolutionConfig& cfg) {
    detail::require_finite(cfg.theta1, "k_analytic");
    detail::require_finite(cfg.theta2, "k_analytic");
    // K has period 90 deg in the angle difference; fmod is exact.
    const double delta = deg_to_rad(std::fmod(cfg.theta1 - cfg.theta2, 90.0));
    return 2.0 * std::cos(4.0 * delta) - std::cos(8.0 * delta);
}

/// Eigenprojectors (+1, -1) of the linear-basis observable sigma_theta.
struct ObservableProjectors {
    JonesMatrix plus;
    JonesMatrix minus;
};

inline ObservableProjectors rotated_observable(double theta_deg) {
    return {linear_polarizer(theta_deg), linear_polarizer(theta_deg + 90.0)};
}

}  // namespace lgi
