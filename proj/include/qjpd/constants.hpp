#ifndef QJPD_CONSTANTS_HPP
#define QJPD_CONSTANTS_HPP

#include <cmath>
#include <stdexcept>

namespace qjpd {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double two_pi = 2.0 * pi;

// CODATA 2018 values, SI units throughout.
struct PhysicalConstants {
    double c = 299792458.0;          // speed of light, m/s
    double h = 6.62607015e-34;       // Planck constant, J s
    double hbar = 6.62607015e-34 / two_pi;
    double kB = 1.380649e-23;        // Boltzmann constant, J/K
    double eps0 = 8.8541878128e-12;  // vacuum permittivity, F/m

    void validate() const {
        if (!(c > 0.0) || !(h > 0.0) || !(hbar > 0.0) || !(kB > 0.0) || !(eps0 > 0.0))
            throw std::domain_error("PhysicalConstants: all values must be strictly positive");
        if (std::abs(h - two_pi * hbar) > 1e-12 * h)
            throw std::domain_error("PhysicalConstants: h must equal 2*pi*hbar");
    }
};

inline const PhysicalConstants& constants() {
    static const PhysicalConstants k{};
    return k;
}

// derived atomic-scale conversions
inline constexpr double elementary_charge = 1.602176634e-19;  // C
inline constexpr double bohr_radius = 5.29177210903e-11;      // m
inline constexpr double au_polarizability = 1.64877727436e-41;  // C^2 m^2 / J

}  // namespace qjpd

#endif
