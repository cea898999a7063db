#ifndef QJPD_STARK_HPP
#define QJPD_STARK_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "qjpd/angular.hpp"
#include "qjpd/constants.hpp"
#include "qjpd/integrate.hpp"
#include "qjpd/species.hpp"
#include "qjpd/spectra.hpp"

namespace qjpd {

enum class Polarization { linear, isotropic };

struct StarkTransition {
    std::string partner;
    int twice_j_partner = 0;
    double omega = 0.0;      // signed transition frequency, rad/s (< 0 downward)
    double strength = 0.0;   // symmetric line strength S, C^2 m^2
    double linewidth = 0.0;  // rad/s
};

// Dynamic polarizability model of one state: a list of regularized dipole
// resonances plus the angular-momentum labels needed for the tensor part.
struct PolarizabilityModel {
    std::string state_label;
    int twice_j = 1;
    int twice_i = 3;
    Polarization polarization = Polarization::linear;
    // optional hyperfine selection; tensor term projected onto (F, m_F)
    std::optional<int> twice_f;
    int twice_mf = 0;
    std::vector<StarkTransition> transitions;

    void validate() const {
        for (const auto& t : transitions) {
            if (!(std::abs(t.omega) > 0.0))
                throw std::domain_error("PolarizabilityModel: transition frequency must be nonzero");
            if (!(t.linewidth > 0.0))
                throw std::domain_error("PolarizabilityModel: linewidth must be positive");
            if (t.strength < 0.0)
                throw std::domain_error("PolarizabilityModel: strength must be non-negative");
        }
        if (twice_f && (std::abs(twice_mf) > *twice_f))
            throw std::domain_error("PolarizabilityModel: |m_F| must not exceed F");
    }
};

namespace detail {

// Re[1/(wk - w - i g/2) + 1/(wk + w + i g/2)]; at g = 0 this is 2 wk/(wk^2-w^2).
inline double regularized_lorentzian(double wk, double g, double w) {
    const double a = wk - w, b = wk + w;
    const double g2 = 0.25 * g * g;
    return a / (a * a + g2) + b / (b * b + g2);
}

inline double alpha_scalar(const PolarizabilityModel& m, double omega) {
    double sum = 0.0;
    for (const auto& t : m.transitions)
        sum += t.strength * regularized_lorentzian(t.omega, t.linewidth, omega);
    return sum / (3.0 * (m.twice_j + 1.0) * constants().hbar);
}

inline double alpha_tensor_j(const PolarizabilityModel& m, double omega) {
    const double J = 0.5 * m.twice_j;
    if (m.twice_j < 2) return 0.0;  // no tensor part for J < 1
    const double A = std::sqrt(40.0 * J * (2.0 * J - 1.0) /
                               (3.0 * (J + 1.0) * (2.0 * J + 1.0) * (2.0 * J + 3.0)));
    double sum = 0.0;
    for (const auto& t : m.transitions) {
        const double sj = wigner_6j_twice(m.twice_j, 2, t.twice_j_partner, 2, m.twice_j, 4);
        const int parity = ((m.twice_j + t.twice_j_partner) / 2) % 2;
        const double phase = (parity == 0) ? 1.0 : -1.0;
        sum += phase * sj * t.strength * regularized_lorentzian(t.omega, t.linewidth, omega);
    }
    return A * sum / (2.0 * constants().hbar);
}

// Tensor projection from the J level onto hyperfine level F, normalized so the
// stretched level F = J + I keeps the full J tensor polarizability.
inline double tensor_projection(int twice_j, int twice_i, int twice_f) {
    auto weight = [&](int tf) {
        const double F = 0.5 * tf;
        if (tf == 0 || tf == 1) return 0.0;  // no tensor for F < 1
        const double sj = wigner_6j_twice(tf, 4, tf, twice_j, twice_i, twice_j);
        const double sgn = (tf % 4 == 0 || tf % 4 == 1) ? 1.0 : -1.0;  // (-1)^F, integer F
        return sgn * std::sqrt(F * (2.0 * F - 1.0) * (2.0 * F + 1.0) /
                               ((2.0 * F + 3.0) * (F + 1.0))) *
               sj;
    };
    const double wmax = weight(twice_j + twice_i);
    if (wmax == 0.0) return 0.0;
    return weight(twice_f) / wmax;
}

}  // namespace detail

// Polarizability of the modelled state at angular frequency omega (SI, C^2 m^2 / J).
// Isotropic polarization: scalar part only. Linear polarization with a hyperfine
// selection: scalar plus the (F, m_F)-projected tensor part.
inline double dynamic_polarizability(const PolarizabilityModel& model, double omega) {
    if (!(omega >= 0.0)) throw std::domain_error("dynamic_polarizability: omega >= 0 required");
    model.validate();
    double alpha = detail::alpha_scalar(model, omega);
    if (model.polarization == Polarization::linear && model.twice_f && model.twice_j >= 2) {
        const int tf = *model.twice_f;
        const double F = 0.5 * tf;
        if (tf >= 2) {
            const double mf = 0.5 * model.twice_mf;
            const double gfac = (3.0 * mf * mf - F * (F + 1.0)) / (F * (2.0 * F - 1.0));
            const double proj = detail::tensor_projection(model.twice_j, model.twice_i, tf);
            alpha += detail::alpha_tensor_j(model, omega) * proj * gfac;
        }
    }
    return alpha;
}

enum class ShiftScenario { full_spectrum, cutoff, isotropic };

inline std::string to_string(ShiftScenario s) {
    switch (s) {
        case ShiftScenario::full_spectrum: return "full-spectrum";
        case ShiftScenario::cutoff: return "cutoff";
        case ShiftScenario::isotropic: return "isotropic";
    }
    return "?";
}

struct ShiftResult {
    double shift_per_power = 0.0;  // rad/s per W
    std::string state_label;
    ShiftScenario scenario = ShiftScenario::full_spectrum;

    double hz_per_uw() const { return shift_per_power * 1e-6 / two_pi; }
};

struct BbrShiftOptions {
    int base_resolution = 2000;       // log-grid points across the thermal support
    double convergence_tol = 5e-3;    // relative, checked by doubling the grid
    std::optional<double> lambda_min_cutoff;  // keep only wavelengths > lambda_min
};

namespace detail {

inline std::vector<double> bbr_grid(const PolarizabilityModel& m, double temperature,
                                    int base_resolution) {
    const auto& k = constants();
    const double w_th = k.kB * temperature / k.hbar;
    const double lo = 1.2e-6 * w_th;   // Planck weight ~1e-12 of peak
    const double hi = 45.0 * w_th;
    std::set<double> pts;
    for (int i = 0; i < base_resolution; ++i)
        pts.insert(lo * std::pow(hi / lo, static_cast<double>(i) / (base_resolution - 1)));
    // symmetric geometric clusters around every resonance
    for (const auto& t : m.transitions) {
        const double wp = std::abs(t.omega);
        if (wp <= lo || wp >= hi) continue;
        pts.insert(wp);
        for (double d = 0.25 * t.linewidth; d < 0.03 * wp; d *= 1.6) {
            if (wp - d > lo) pts.insert(wp - d);
            if (wp + d < hi) pts.insert(wp + d);
        }
    }
    return {pts.begin(), pts.end()};
}

inline double bbr_weighted_alpha(const PolarizabilityModel& m, double temperature,
                                 int resolution, std::optional<double> lambda_min_cutoff) {
    const auto& k = constants();
    auto rho = [&](double w) { return planck_energy_density(w, temperature); };
    const std::vector<double> grid = bbr_grid(m, temperature, resolution);
    const double norm = integrate_panels(rho, grid);
    std::vector<double> dom = grid;
    if (lambda_min_cutoff) {
        const double wcut = two_pi * k.c / *lambda_min_cutoff;
        dom.erase(std::remove_if(dom.begin(), dom.end(), [&](double w) { return w > wcut; }),
                  dom.end());
        if (dom.empty() || dom.back() < wcut) dom.push_back(wcut);
    }
    const double num = integrate_panels(
        [&](double w) { return dynamic_polarizability(m, w) * rho(w); }, dom);
    return num / norm;
}

}  // namespace detail

// Thermal light shift dE = -(1/4 eps0) int alpha(F,w) rho(w) dw, with rho a
// Planck shape at the given temperature scaled so the total power in the given
// waist equals total_power (peak intensity 2P / (pi w^2)). The shift is exactly
// linear in total_power, so the result carries it per unit power; multiply by
// the power to get the absolute shift. The cutoff variant zeroes rho for
// wavelengths below lambda_min while keeping the full-spectrum normalization.
inline ShiftResult bbr_shift(const PolarizabilityModel& model, double temperature,
                             double total_power, double waist,
                             const BbrShiftOptions& opts = {}) {
    if (!(temperature > 0.0)) throw std::domain_error("bbr_shift: T > 0 required");
    if (total_power < 0.0) throw std::domain_error("bbr_shift: total_power >= 0 required");
    if (!(waist > 0.0)) throw std::domain_error("bbr_shift: waist > 0 required");
    model.validate();

    const double coarse =
        detail::bbr_weighted_alpha(model, temperature, opts.base_resolution, opts.lambda_min_cutoff);
    const double fine = detail::bbr_weighted_alpha(model, temperature, 2 * opts.base_resolution,
                                                   opts.lambda_min_cutoff);
    const double scale = std::max({std::abs(coarse), std::abs(fine), 1e-300});
    const double achieved = std::abs(fine - coarse) / scale;
    if (achieved > opts.convergence_tol)
        throw std::runtime_error("bbr_shift: quadrature did not converge (achieved relative "
                                 "tolerance " + std::to_string(achieved) + ")");

    const auto& k = constants();
    // dE/P = -<alpha> / (2 pi eps0 w^2 c) in J per W; stored in rad/s per W.
    ShiftResult res;
    res.shift_per_power = -fine / (two_pi * k.eps0 * waist * waist * k.c) / k.hbar;
    res.state_label = model.state_label;
    res.scenario = opts.lambda_min_cutoff
                       ? ShiftScenario::cutoff
                       : (model.polarization == Polarization::isotropic ? ShiftScenario::isotropic
                                                                        : ShiftScenario::full_spectrum);
    return res;
}

inline ShiftResult differential_shift(const ShiftResult& ground, const ShiftResult& excited) {
    if (ground.scenario != excited.scenario)
        throw std::domain_error("differential_shift: scenario labels must match");
    ShiftResult res;
    res.shift_per_power = excited.shift_per_power - ground.shift_per_power;
    res.state_label = excited.state_label + " - " + ground.state_label;
    res.scenario = ground.scenario;
    return res;
}

// --- model factories from the species polarizability table ---

namespace detail {

inline StarkTransition to_transition(const PolarizabilityTransition& t, bool upward) {
    StarkTransition st;
    st.partner = upward ? t.upper_state : t.lower_state;
    st.twice_j_partner = upward ? t.twice_j_upper : t.twice_j_lower;
    const double w = two_pi * constants().c / t.wavelength;
    st.omega = upward ? w : -w;
    st.strength = t.line_strength;
    st.linewidth = t.linewidth;
    return st;
}

}  // namespace detail

// Ground-manifold model (J = 1/2): all transitions where the state is lower.
inline PolarizabilityModel ground_polarizability_model(
    const AtomSpecies& sp, Polarization pol = Polarization::linear,
    const std::string& state = "", std::optional<int> twice_f = std::nullopt, int twice_mf = 0) {
    const std::string lower = state.empty()
                                  ? (sp.polarizability_transitions.empty()
                                         ? std::string("ground")
                                         : sp.polarizability_transitions.front().lower_state)
                                  : state;
    PolarizabilityModel m;
    m.state_label = lower;
    m.twice_j = 1;
    m.twice_i = sp.twice_nuclear_spin;
    m.polarization = pol;
    m.twice_f = twice_f;
    m.twice_mf = twice_mf;
    for (const auto& t : sp.polarizability_transitions)
        if (t.lower_state == lower) m.transitions.push_back(detail::to_transition(t, true));
    if (m.transitions.empty())
        throw std::runtime_error("ground_polarizability_model: no transitions found for " + lower);
    return m;
}

// Model of an excited state (e.g. the D2 upper level): downward transitions to
// states below it plus upward ones where it appears as the lower partner.
inline PolarizabilityModel excited_polarizability_model(
    const AtomSpecies& sp, const std::string& state, int twice_j,
    Polarization pol = Polarization::linear, std::optional<int> twice_f = std::nullopt,
    int twice_mf = 0) {
    PolarizabilityModel m;
    m.state_label = state;
    m.twice_j = twice_j;
    m.twice_i = sp.twice_nuclear_spin;
    m.polarization = pol;
    m.twice_f = twice_f;
    m.twice_mf = twice_mf;
    for (const auto& t : sp.polarizability_transitions) {
        if (t.upper_state == state) m.transitions.push_back(detail::to_transition(t, false));
        if (t.lower_state == state) m.transitions.push_back(detail::to_transition(t, true));
    }
    if (m.transitions.empty())
        throw std::runtime_error("excited_polarizability_model: no transitions found for " + state);
    return m;
}

}  // namespace qjpd

#endif
