#ifndef QJPD_RATES_HPP
#define QJPD_RATES_HPP

#include <cmath>
#include <stdexcept>

#include "qjpd/constants.hpp"
#include "qjpd/species.hpp"
#include "qjpd/spectra.hpp"

namespace qjpd {

struct ProbeConfig {
    double photons_per_window = 0.0;  // mean resonant photons per exposure
    double window = 1e-2;             // s
    double eta_qj = 8.5e-3;           // quantum-jump efficiency

    void validate() const {
        if (photons_per_window < 0.0)
            throw std::domain_error("ProbeConfig: photons_per_window >= 0 required");
        if (!(window > 0.0)) throw std::domain_error("ProbeConfig: window > 0 required");
        if (!(eta_qj > 0.0 && eta_qj <= 1.0))
            throw std::domain_error("ProbeConfig: eta_qj must lie in (0, 1]");
    }
};

struct RateSet {
    double r0 = 0.0;        // scaling rate, 1/s
    double sun_12 = 0.0;    // 1/s
    double sun_21 = 0.0;    // 1/s
    double probe_12 = 0.0;  // 1/s
    double sun_power = 0.0; // W

    double total_12() const { return sun_12 + probe_12; }
    double total() const { return sun_12 + sun_21 + probe_12; }
};

// R0 = (2 pi c^2 / (hbar omega0^3 w_at^2)) kappa P_sun.
inline double scaling_rate(double sun_power, double kappa, const FocusGeometry& geom,
                           const AtomSpecies& species) {
    if (sun_power < 0.0 || kappa < 0.0)
        throw std::domain_error("scaling_rate: power and kappa must be non-negative");
    geom.validate();
    const auto& k = constants();
    const double omega0 = two_pi * k.c / species.lambda0;
    const double w2 = geom.waist_at_atom * geom.waist_at_atom;
    return two_pi * k.c * k.c / (k.hbar * omega0 * omega0 * omega0 * w2) * kappa * sun_power;
}

struct SunRates {
    double r12 = 0.0;
    double r21 = 0.0;
};

// Broadband rates between the ground hyperfine levels, summed over both D lines.
inline SunRates sun_rates(double r0, const AtomSpecies& species) {
    if (r0 < 0.0) throw std::domain_error("sun_rates: r0 >= 0 required");
    return {r0 * species.sum_1_to_2(), r0 * species.sum_2_to_1()};
}

// R_probe = eta_QJ * n_ph / t.
inline double probe_rate(const ProbeConfig& cfg) {
    cfg.validate();
    return cfg.eta_qj * cfg.photons_per_window / cfg.window;
}

// Steady-state population of |2>.
inline double saturated_population(const RateSet& rates) {
    const double up = rates.sun_12 + rates.probe_12;
    const double total = up + rates.sun_21;
    if (!(total > 0.0))
        throw std::domain_error("saturated_population: all rates zero, no steady state reached");
    return up / total;
}

// Saturation rate per unit sun power, b_th = (sum12 + sum21) * R0 / P.
inline double saturation_rate_per_power(double kappa, const FocusGeometry& geom,
                                        const AtomSpecies& species) {
    const double r0_per_w = scaling_rate(1.0, kappa, geom, species);
    return (species.sum_1_to_2() + species.sum_2_to_1()) * r0_per_w;
}

inline RateSet make_rate_set(double sun_power, double kappa, const FocusGeometry& geom,
                             const AtomSpecies& species, const ProbeConfig& probe) {
    RateSet rs;
    rs.sun_power = sun_power;
    rs.r0 = scaling_rate(sun_power, kappa, geom, species);
    const SunRates sr = sun_rates(rs.r0, species);
    rs.sun_12 = sr.r12;
    rs.sun_21 = sr.r21;
    rs.probe_12 = probe_rate(probe);
    return rs;
}

}  // namespace qjpd

#endif
