#ifndef QJPD_SPECTRA_HPP
#define QJPD_SPECTRA_HPP

#include <algorithm>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qjpd/constants.hpp"
#include "qjpd/integrate.hpp"

namespace qjpd {

// Planck spectral energy density per angular frequency, J s / m^3.
inline double planck_energy_density(double omega, double temperature) {
    if (!std::isfinite(omega) || !std::isfinite(temperature) || omega < 0.0 || temperature <= 0.0)
        throw std::domain_error("planck_energy_density: omega >= 0 and T > 0 required");
    if (omega == 0.0) return 0.0;
    const auto& k = constants();
    const double x = k.hbar * omega / (k.kB * temperature);
    const double pref = k.hbar / (pi * pi * k.c * k.c * k.c) * omega * omega * omega;
    if (x > 700.0) return pref * std::exp(-x);
    return pref / std::expm1(x);
}

// Solid angle of the Sun seen from 1 AU, and the dilution factor that turns
// the source blackbody energy density into the density at Earth.
inline constexpr double sun_solid_angle = 6.794e-5;  // sr
inline constexpr double earth_dilution = sun_solid_angle / (4.0 * pi);

// Spectral radiance per wavelength, W m^-2 m^-1, at the dilution-scaled level.
// B(lambda) = 2 pi nu^2 rho(omega) * scale.
inline double planck_radiance(double lambda, double temperature, double scale = earth_dilution) {
    if (!(lambda > 0.0)) throw std::domain_error("planck_radiance: lambda > 0 required");
    const auto& k = constants();
    const double nu = k.c / lambda;
    return two_pi * nu * nu * planck_energy_density(two_pi * nu, temperature) * scale;
}

struct FocusGeometry {
    double waist_at_atom = 1.3e-6;        // m
    double lens_focal_length = 8e-3;      // m
    double design_wavelength = 780e-9;    // m

    double input_waist() const {
        return design_wavelength * lens_focal_length / (pi * waist_at_atom);
    }
    void validate() const {
        if (!(waist_at_atom > 0.0) || !(lens_focal_length > 0.0) || !(design_wavelength > 0.0))
            throw std::domain_error("FocusGeometry: all fields must be strictly positive");
        if (!(input_waist() > waist_at_atom))
            throw std::domain_error("FocusGeometry: input waist must exceed the waist at the atom");
    }
};

enum class SpectrumKind { analytic_planck, measured_samples };

struct SpectrumSample {
    double wavelength;  // m
    double radiance;    // W m^-2 m^-1
};

struct SolarSpectrum {
    SpectrumKind kind = SpectrumKind::analytic_planck;
    double temperature = 5800.0;                       // K, analytic only
    std::optional<std::pair<double, double>> band;     // [m, m]
    std::vector<SpectrumSample> samples;               // measured only, ascending
    double total_power_scale = 1.0;                    // W carried to the point of use

    static SolarSpectrum planck(double T = 5800.0,
                                std::optional<std::pair<double, double>> band_m =
                                    std::make_pair(600e-9, 1100e-9)) {
        SolarSpectrum s;
        s.kind = SpectrumKind::analytic_planck;
        s.temperature = T;
        s.band = band_m;
        s.validate();
        return s;
    }

    static SolarSpectrum measured(std::vector<SpectrumSample> pts,
                                  std::optional<std::pair<double, double>> band_m = std::nullopt) {
        SolarSpectrum s;
        s.kind = SpectrumKind::measured_samples;
        s.samples = std::move(pts);
        s.band = band_m;
        s.validate();
        return s;
    }

    void validate() const {
        if (kind == SpectrumKind::analytic_planck) {
            if (!(temperature > 0.0)) throw std::domain_error("SolarSpectrum: temperature > 0 required");
        } else {
            if (samples.size() < 2) throw std::domain_error("SolarSpectrum: need >= 2 samples");
            for (std::size_t i = 0; i < samples.size(); ++i) {
                if (samples[i].radiance < 0.0)
                    throw std::domain_error("SolarSpectrum: radiance must be non-negative");
                if (i > 0 && !(samples[i].wavelength > samples[i - 1].wavelength))
                    throw std::domain_error("SolarSpectrum: wavelengths must be strictly increasing");
            }
        }
        if (band && !(band->first < band->second))
            throw std::domain_error("SolarSpectrum: band must satisfy lambda_min < lambda_max");
    }

    bool in_band(double lambda) const {
        return !band || (lambda >= band->first && lambda <= band->second);
    }

    // Radiance per wavelength, W m^-2 m^-1; zero outside band and outside the
    // sampled range (no extrapolation).
    double radiance(double lambda) const {
        if (!(lambda > 0.0)) throw std::domain_error("SolarSpectrum: lambda > 0 required");
        if (!in_band(lambda)) return 0.0;
        if (kind == SpectrumKind::analytic_planck) return planck_radiance(lambda, temperature);
        if (lambda < samples.front().wavelength || lambda > samples.back().wavelength) return 0.0;
        auto it = std::lower_bound(samples.begin(), samples.end(), lambda,
                                   [](const SpectrumSample& s, double x) { return s.wavelength < x; });
        if (it == samples.begin()) return it->radiance;
        const auto& hi = *it;
        const auto& lo = *(it - 1);
        const double t = (lambda - lo.wavelength) / (hi.wavelength - lo.wavelength);
        return lo.radiance + t * (hi.radiance - lo.radiance);
    }

    // [lambda_lo, lambda_hi] over which the radiance can be non-zero.
    std::pair<double, double> support() const {
        double lo, hi;
        if (kind == SpectrumKind::measured_samples) {
            lo = samples.front().wavelength;
            hi = samples.back().wavelength;
        } else {
            // Planck support truncated where the cumulative radiance is negligible.
            const auto& k = constants();
            const double lam_kt = k.h * k.c / (k.kB * temperature);
            lo = lam_kt / 45.0;
            hi = lam_kt / 2e-3;
        }
        if (band) {
            lo = std::max(lo, band->first);
            hi = std::min(hi, band->second);
        }
        return {lo, hi};
    }

    double integrated_radiance() const {
        const auto [lo, hi] = support();
        if (!(hi > lo)) throw std::runtime_error("SolarSpectrum: empty support");
        if (kind == SpectrumKind::measured_samples) {
            std::vector<double> x, y;
            x.push_back(lo);
            y.push_back(radiance(lo));
            for (const auto& s : samples)
                if (s.wavelength > lo && s.wavelength < hi) {
                    x.push_back(s.wavelength);
                    y.push_back(radiance(s.wavelength));
                }
            x.push_back(hi);
            y.push_back(radiance(hi));
            return trapezoid(x, y);
        }
        return integrate_adaptive([this](double l) { return radiance(l); }, lo, hi, 1e-10);
    }
};

// Fraction of the total spectral power within one natural linewidth at lambda0.
// kappa = B(lambda0) * dlambda / integral(B), with dlambda = lambda0^2 dnu / c.
inline double in_band_fraction(const SolarSpectrum& spectrum, double lambda0, double linewidth_hz) {
    if (!(linewidth_hz > 0.0)) throw std::domain_error("in_band_fraction: linewidth > 0 required");
    const auto [lo, hi] = spectrum.support();
    if (!(lambda0 >= lo && lambda0 <= hi))
        throw std::domain_error("in_band_fraction: lambda0 outside spectrum support");
    const double b0 = spectrum.radiance(lambda0);
    if (!(b0 > 0.0)) throw std::domain_error("in_band_fraction: zero radiance at lambda0");
    const double total = spectrum.integrated_radiance();
    if (!(total > 0.0)) throw std::runtime_error("in_band_fraction: degenerate spectrum (zero integral)");
    const double dlambda = lambda0 * lambda0 * linewidth_hz / constants().c;
    const double kappa = b0 * dlambda / total;
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::domain_error("in_band_fraction: spectrum narrower than the transition linewidth");
    return kappa;
}

// Radiance gain from focusing: B_at = (w_in / w_at)^2 B_in.
inline double radiance_at_focus(double b_in, const FocusGeometry& geom) {
    if (b_in < 0.0) throw std::domain_error("radiance_at_focus: B_in >= 0 required");
    geom.validate();
    const double ratio = geom.input_waist() / geom.waist_at_atom;
    return ratio * ratio * b_in;
}

// Photon rate for monochromatic power: P * lambda / (h c).
inline double photon_flux(double power, double lambda) {
    if (power < 0.0 || !(lambda > 0.0))
        throw std::domain_error("photon_flux: power >= 0 and lambda > 0 required");
    const auto& k = constants();
    return power * lambda / (k.h * k.c);
}

// --- spectrum CSV: "wavelength_nm,radiance_W_per_m2_nm", header mandatory ---

inline SolarSpectrum spectrum_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("spectrum CSV: empty file");
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "wavelength_nm,radiance_W_per_m2_nm")
        throw std::runtime_error("spectrum CSV line 1: expected header "
                                 "'wavelength_nm,radiance_W_per_m2_nm'");
    std::vector<SpectrumSample> pts;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::istringstream ss(line);
        std::string a, b;
        if (!std::getline(ss, a, ',') || !std::getline(ss, b))
            throw std::runtime_error("spectrum CSV line " + std::to_string(lineno) +
                                     ": expected two comma-separated fields");
        try {
            const double lam_nm = std::stod(strip(a));
            const double rad_nm = std::stod(strip(b));
            pts.push_back({lam_nm * 1e-9, rad_nm * 1e9});
        } catch (const std::exception&) {
            throw std::runtime_error("spectrum CSV line " + std::to_string(lineno) +
                                     ": could not parse numbers");
        }
    }
    try {
        return SolarSpectrum::measured(std::move(pts));
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("spectrum CSV: ") + e.what());
    }
}

inline SolarSpectrum spectrum_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("spectrum CSV: cannot open " + path);
    return spectrum_from_csv(in);
}

inline void spectrum_to_csv(const SolarSpectrum& s, std::ostream& out) {
    if (s.kind != SpectrumKind::measured_samples)
        throw std::runtime_error("spectrum CSV: only measured spectra are exportable");
    out << "wavelength_nm,radiance_W_per_m2_nm\n";
    out.precision(17);
    for (const auto& p : s.samples)
        out << p.wavelength * 1e9 << ',' << p.radiance * 1e-9 << '\n';
}

}  // namespace qjpd

#endif
