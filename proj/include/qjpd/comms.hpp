#ifndef QJPD_COMMS_HPP
#define QJPD_COMMS_HPP

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "qjpd/constants.hpp"
#include "qjpd/dynamics.hpp"
#include "qjpd/rates.hpp"
#include "qjpd/species.hpp"
#include "qjpd/spectra.hpp"

namespace qjpd {

struct DetectionScenario {
    double n_sig = 0.0;    // signal photons per window
    double n_bg = 0.0;     // background photons per window
    double eta_sig = 0.0;  // signal efficiency
    double eta_bg = 0.0;   // background efficiency

    void validate() const {
        if (n_sig < 0.0 || n_bg < 0.0)
            throw std::domain_error("DetectionScenario: photon counts must be non-negative");
        for (double e : {eta_sig, eta_bg})
            if (!(e >= 0.0 && e <= 1.0))
                throw std::domain_error("DetectionScenario: efficiencies must lie in [0, 1]");
    }
};

// SNR = N_sig eta_sig / (N_bg eta_bg). A zero background response is reported
// as +infinity rather than an arithmetic overflow.
inline double snr(const DetectionScenario& sc) {
    sc.validate();
    const double denom = sc.n_bg * sc.eta_bg;
    if (denom == 0.0) return std::numeric_limits<double>::infinity();
    return sc.n_sig * sc.eta_sig / denom;
}

// Background sensitivity of the quantum-jump detector. The prefactor is the
// ratio of the total broadband 1->2 strength to the probe-transition term
// (8/3 for the default species: (10/9) / (5/12)).
inline double qjpd_background_efficiency(double kappa, double eta_qj, const AtomSpecies& sp) {
    if (kappa < 0.0 || !(eta_qj >= 0.0 && eta_qj <= 1.0))
        throw std::domain_error("qjpd_background_efficiency: invalid kappa or eta_qj");
    const double ratio = sp.sum_1_to_2() / sp.probe_transition_term();
    return ratio * kappa * eta_qj;
}

struct FilterDetector {
    double t_max = 0.7;     // peak transmission
    double enbw = 1e9;      // equivalent noise bandwidth, Hz
    double eta_det = 1.0;   // detector quantum efficiency

    void validate() const {
        if (!(t_max > 0.0 && t_max <= 1.0))
            throw std::domain_error("FilterDetector: t_max must lie in (0, 1]");
        if (!(enbw > 0.0)) throw std::domain_error("FilterDetector: enbw > 0 required");
        if (!(eta_det > 0.0 && eta_det <= 1.0))
            throw std::domain_error("FilterDetector: eta_det must lie in (0, 1]");
    }
};

inline double filter_signal_efficiency(const FilterDetector& f) {
    f.validate();
    return f.t_max * f.eta_det;
}

// eta_bg = kappa_filter T_max eta_det with kappa_filter evaluated at the filter ENBW.
inline double filter_background_efficiency(const FilterDetector& f, const SolarSpectrum& spectrum,
                                           double lambda0) {
    f.validate();
    return in_band_fraction(spectrum, lambda0, f.enbw) * f.t_max * f.eta_det;
}

struct LinkBudget {
    double a_t = 5e-4;         // transmitter aperture, m^2
    double a_r = 0.8;          // receiver aperture, m^2
    double distance = 1.496e11;  // m
    double wavelength = 780e-9;  // m
    double tx_power = 1.0;       // W

    void validate() const {
        if (!(a_t > 0.0 && a_r > 0.0 && distance > 0.0 && wavelength > 0.0 && tx_power > 0.0))
            throw std::domain_error("LinkBudget: all fields must be strictly positive");
    }
};

// Antenna-theorem link efficiency A_T A_R / (lambda L)^2, valid in the far field.
inline double link_efficiency(const LinkBudget& lb) {
    lb.validate();
    // Fraunhofer condition for both apertures
    for (double a : {lb.a_t, lb.a_r}) {
        const double d = 2.0 * std::sqrt(a / pi);  // aperture diameter
        if (lb.distance < 2.0 * d * d / lb.wavelength)
            throw std::domain_error("link_efficiency: far-field condition violated");
    }
    const double x = lb.wavelength * lb.distance;
    return lb.a_t * lb.a_r / (x * x);
}

inline double received_photons_per_window(const LinkBudget& lb, double eta_link, double window) {
    return photon_flux(lb.tx_power * eta_link, lb.wavelength) * window;
}

// Channel model behind p_s / p_b. Fitted mode reproduces the sun-only
// saturation curve N2 = n2_sat (1 - exp(-b P t)) by splitting the sun rates
// as R12 = n2_sat b P and R21 = (1 - n2_sat) b P; theoretical mode splits
// R0/P by the species aggregates.
struct ChannelModel {
    enum class Mode { fitted, theoretical } mode = Mode::fitted;
    double n2_sat = 0.66;       // fitted
    double b_per_w = 9.0e9;     // fitted, 1/(s W)
    double r0_per_w = 0.0;      // theoretical, 1/(s W)
    double sum12 = 10.0 / 9.0;  // theoretical split
    double sum21 = 2.0 / 3.0;

    static ChannelModel fitted(double n2_sat_exp = 0.66, double b_per_w_exp = 9.0e9) {
        ChannelModel m;
        m.mode = Mode::fitted;
        m.n2_sat = n2_sat_exp;
        m.b_per_w = b_per_w_exp;
        return m;
    }
    static ChannelModel theoretical(double kappa, const FocusGeometry& geom,
                                    const AtomSpecies& sp) {
        ChannelModel m;
        m.mode = Mode::theoretical;
        m.r0_per_w = scaling_rate(1.0, kappa, geom, sp);
        m.sum12 = sp.sum_1_to_2();
        m.sum21 = sp.sum_2_to_1();
        return m;
    }

    RateSet rates(double sun_power, double probe_rate_12) const {
        RateSet rs;
        rs.sun_power = sun_power;
        if (mode == Mode::fitted) {
            rs.sun_12 = n2_sat * b_per_w * sun_power;
            rs.sun_21 = (1.0 - n2_sat) * b_per_w * sun_power;
            rs.r0 = (b_per_w * sun_power) / (sum12 + sum21);
        } else {
            rs.r0 = r0_per_w * sun_power;
            rs.sun_12 = rs.r0 * sum12;
            rs.sun_21 = rs.r0 * sum21;
        }
        rs.probe_12 = probe_rate_12;
        return rs;
    }
};

struct ChannelProbabilities {
    double p_s = 0.0;  // P(detect | signal sent)
    double p_b = 0.0;  // P(detect | background only)
};

inline ChannelProbabilities channel_probabilities(double n_probe, double sun_power,
                                                  const ChannelModel& model, double window,
                                                  double eta_qj) {
    if (n_probe < 0.0 || sun_power < 0.0 || !(window > 0.0) || !(eta_qj > 0.0 && eta_qj <= 1.0))
        throw std::domain_error("channel_probabilities: invalid inputs");
    const double rp = eta_qj * n_probe / window;
    const RateSet with_probe = model.rates(sun_power, rp);
    const RateSet sun_only = model.rates(sun_power, 0.0);
    ChannelProbabilities cp;
    cp.p_s = n2_closed_form(with_probe, window).n2;
    cp.p_b = n2_closed_form(sun_only, window).n2;
    return cp;
}

struct BinaryChannel {
    double p_s = 0.0;
    double p_b = 0.0;
    double q_opt = 0.5;     // optimal input probability p(x=1)
    double capacity = 0.0;  // bits per use
};

namespace detail {

inline double entropy_bits(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log2(p);
    if (p < 1.0) h -= (1.0 - p) * std::log2(1.0 - p);
    return h;
}

inline double mutual_information_bits(double q, double p_s, double p_b) {
    const double py1 = q * p_s + (1.0 - q) * p_b;
    return entropy_bits(py1) - q * entropy_bits(p_s) - (1.0 - q) * entropy_bits(p_b);
}

}  // namespace detail

// Shannon capacity of the binary asymmetric channel, maximized over the input
// distribution by golden-section search (the mutual information is concave in q).
inline BinaryChannel capacity(double p_s, double p_b) {
    for (double p : {p_s, p_b})
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("capacity: probabilities must lie in [0, 1]");
    BinaryChannel ch;
    ch.p_s = p_s;
    ch.p_b = p_b;
    if (p_s == p_b) {
        ch.capacity = 0.0;
        ch.q_opt = 0.5;
        return ch;
    }
    const double gr = 0.6180339887498949;  // (sqrt(5)-1)/2
    double a = 0.0, b = 1.0;
    double c = b - gr * (b - a), d = a + gr * (b - a);
    double fc = detail::mutual_information_bits(c, p_s, p_b);
    double fd = detail::mutual_information_bits(d, p_s, p_b);
    while (b - a > 1e-12) {
        if (fc > fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = detail::mutual_information_bits(c, p_s, p_b);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = detail::mutual_information_bits(d, p_s, p_b);
        }
    }
    ch.q_opt = 0.5 * (a + b);
    ch.capacity = detail::mutual_information_bits(ch.q_opt, p_s, p_b);
    return ch;
}

struct CapacityMap {
    std::vector<double> photons;       // probe photons per window, ascending
    std::vector<double> sun_powers;    // W, ascending
    std::vector<double> bits;          // row-major, rows indexed by photons

    double at(std::size_t i_photon, std::size_t j_power) const {
        return bits[i_photon * sun_powers.size() + j_power];
    }
};

inline CapacityMap capacity_map(const std::vector<double>& photon_grid,
                                const std::vector<double>& sun_power_grid,
                                const ChannelModel& model, double window, double eta_qj) {
    if (photon_grid.empty() || sun_power_grid.empty())
        throw std::domain_error("capacity_map: grids must be non-empty");
    for (std::size_t i = 1; i < photon_grid.size(); ++i)
        if (!(photon_grid[i] > photon_grid[i - 1]))
            throw std::domain_error("capacity_map: photon grid must ascend");
    for (std::size_t j = 1; j < sun_power_grid.size(); ++j)
        if (!(sun_power_grid[j] > sun_power_grid[j - 1]))
            throw std::domain_error("capacity_map: sun power grid must ascend");
    CapacityMap map;
    map.photons = photon_grid;
    map.sun_powers = sun_power_grid;
    map.bits.resize(photon_grid.size() * sun_power_grid.size());
    for (std::size_t i = 0; i < photon_grid.size(); ++i)
        for (std::size_t j = 0; j < sun_power_grid.size(); ++j) {
            const auto cp =
                channel_probabilities(photon_grid[i], sun_power_grid[j], model, window, eta_qj);
            map.bits[i * sun_power_grid.size() + j] = capacity(cp.p_s, cp.p_b).capacity;
        }
    return map;
}

// CSV: first row the sun-power axis in nW, first column probe photons per
// window, body in bits/use with 6 significant digits.
inline void capacity_map_to_csv(const CapacityMap& map, std::ostream& out) {
    out << "photons_per_window";
    out.precision(10);
    for (double p : map.sun_powers) out << ',' << p * 1e9;
    out << '\n';
    for (std::size_t i = 0; i < map.photons.size(); ++i) {
        out << map.photons[i];
        for (std::size_t j = 0; j < map.sun_powers.size(); ++j) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "%.6g", map.at(i, j));
            out << ',' << buf;
        }
        out << '\n';
    }
}

}  // namespace qjpd

#endif
