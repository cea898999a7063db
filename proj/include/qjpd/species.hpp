#ifndef QJPD_SPECIES_HPP
#define QJPD_SPECIES_HPP

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

#include "qjpd/constants.hpp"

namespace qjpd {

// F quantum numbers are stored doubled so half-integers stay exact.

struct HyperfineLevel {
    std::string term_label;
    int twice_f = 0;
    double energy_offset_hz = 0.0;  // relative to the species reference
};

struct StrengthEntry {
    int twice_f_from = 0;
    int twice_f_to = 0;
    double value = 0.0;
};

struct LineData {
    std::string lower_term;
    std::string upper_term;
    double wavelength = 0.0;          // m
    double natural_linewidth = 0.0;   // rad/s
    std::vector<StrengthEntry> absorption_strengths;  // f_{F_i, F_e}
    std::vector<StrengthEntry> branching;             // f_{F_e, F_f}

    double absorption_strength(int twice_fi, int twice_fe) const {
        for (const auto& e : absorption_strengths)
            if (e.twice_f_from == twice_fi && e.twice_f_to == twice_fe) return e.value;
        return 0.0;
    }
    double branching_fraction(int twice_fe, int twice_ff) const {
        for (const auto& e : branching)
            if (e.twice_f_from == twice_fe && e.twice_f_to == twice_ff) return e.value;
        return 0.0;
    }
    std::vector<int> excited_twice_f() const {
        std::vector<int> fs;
        for (const auto& e : branching)
            if (std::find(fs.begin(), fs.end(), e.twice_f_from) == fs.end())
                fs.push_back(e.twice_f_from);
        return fs;
    }
};

// One dipole transition of the polarizability table. The line strength is the
// symmetric squared reduced element S = |<a||d||b>|^2 in C^2 m^2, normalized so
// that Gamma(upper->lower) = omega^3 S / ((2 J_upper + 1) 3 pi eps0 hbar c^3).
struct PolarizabilityTransition {
    std::string lower_state;
    std::string upper_state;
    int twice_j_lower = 0;
    int twice_j_upper = 0;
    double wavelength = 0.0;       // m
    double line_strength = 0.0;    // C^2 m^2
    double linewidth = 0.0;        // rad/s, used to regularize the resonance
};

struct AtomSpecies {
    std::string name;
    int twice_nuclear_spin = 3;
    std::vector<HyperfineLevel> ground_hyperfine;
    std::vector<LineData> lines;
    double gamma0 = two_pi * 6.065e6;  // rad/s
    double lambda0 = 780.241e-9;       // m
    std::vector<PolarizabilityTransition> polarizability_transitions;

    // Sum over both D lines of f_{F_i,e} f_{e,F_f} between the two ground levels.
    double aggregate_sum(int twice_fi, int twice_ff) const {
        double total = 0.0;
        for (const auto& line : lines)
            for (int tfe : line.excited_twice_f())
                total += line.absorption_strength(twice_fi, tfe) *
                         line.branching_fraction(tfe, twice_ff);
        return total;
    }
    double sum_1_to_2() const { return aggregate_sum(2, 4); }
    double sum_2_to_1() const { return aggregate_sum(4, 2); }

    const LineData* reference_line() const {
        const LineData* best = nullptr;
        for (const auto& line : lines)
            if (!best || std::abs(line.wavelength - lambda0) < std::abs(best->wavelength - lambda0))
                best = &line;
        return best;
    }

    // Contribution of the probe transition (F=1 -> F'=2 on the reference line,
    // decaying to F=2) to the total 1->2 rate, in units of R0.
    double probe_transition_term() const {
        const LineData* line = reference_line();
        if (!line) throw std::runtime_error("AtomSpecies: no lines defined");
        return line->absorption_strength(2, 4) * line->branching_fraction(4, 4);
    }
};

struct SpeciesViolation {
    std::string location;
    std::string rule;
};

inline std::vector<SpeciesViolation> validate_species(const AtomSpecies& sp) {
    std::vector<SpeciesViolation> out;
    if (!(sp.gamma0 > 0.0)) out.push_back({"gamma0", "must be strictly positive"});
    if (!(sp.lambda0 > 0.0)) out.push_back({"lambda0", "must be strictly positive"});

    const int ti = sp.twice_nuclear_spin;
    for (const auto& lvl : sp.ground_hyperfine) {
        // ground manifold has J = 1/2
        const int lo = std::abs(ti - 1), hi = ti + 1;
        if (lvl.twice_f < lo || lvl.twice_f > hi)
            out.push_back({lvl.term_label + " F=" + std::to_string(lvl.twice_f / 2.0),
                           "F outside |J-I|..J+I for the ground manifold"});
    }

    for (const auto& line : sp.lines) {
        const std::string where = line.lower_term + "->" + line.upper_term;
        if (!(line.wavelength > 0.0)) out.push_back({where, "wavelength must be positive"});
        if (!(line.natural_linewidth > 0.0)) out.push_back({where, "linewidth must be positive"});
        for (const auto& e : line.absorption_strengths) {
            if (e.value < 0.0)
                out.push_back({where + " f(" + std::to_string(e.twice_f_from / 2.0) + "," +
                                   std::to_string(e.twice_f_to / 2.0) + ")",
                               "strength must be non-negative"});
            if (std::abs(e.twice_f_from - e.twice_f_to) > 2 && e.value != 0.0)
                out.push_back({where + " f(" + std::to_string(e.twice_f_from / 2.0) + "," +
                                   std::to_string(e.twice_f_to / 2.0) + ")",
                               "dipole selection rule |dF|<=1 requires exact zero"});
        }
        for (int tfe : line.excited_twice_f()) {
            double row = 0.0;
            for (const auto& e : line.branching)
                if (e.twice_f_from == tfe) {
                    row += e.value;
                    if (e.value < 0.0)
                        out.push_back({where + " branching F_e=" + std::to_string(tfe / 2.0),
                                       "branching must be non-negative"});
                    if (std::abs(e.twice_f_from - e.twice_f_to) > 2 && e.value != 0.0)
                        out.push_back({where + " branching F_e=" + std::to_string(tfe / 2.0),
                                       "dipole selection rule |dF|<=1 requires exact zero"});
                }
            if (std::abs(row - 1.0) > 1e-12)
                out.push_back({where + " branching F_e=" + std::to_string(tfe / 2.0),
                               "branching row must sum to 1"});
        }
    }

    // Gamma / omega^3 must agree across the D lines to a couple of percent,
    // otherwise the single-factor R0 reduction does not apply.
    if (sp.lines.size() >= 2) {
        const auto ratio = [](const LineData& l) {
            const double w = two_pi * constants().c / l.wavelength;
            return l.natural_linewidth / (w * w * w);
        };
        const double r0 = ratio(sp.lines.front());
        for (const auto& line : sp.lines)
            if (std::abs(ratio(line) / r0 - 1.0) > 0.02)
                out.push_back({line.lower_term + "->" + line.upper_term,
                               "Gamma/omega^3 deviates by more than 2% across lines"});
    }

    for (const auto& t : sp.polarizability_transitions) {
        const std::string where = t.lower_state + "->" + t.upper_state;
        if (!(t.wavelength > 0.0)) out.push_back({where, "wavelength must be positive"});
        if (!(t.linewidth > 0.0)) out.push_back({where, "linewidth must be positive"});
        if (t.line_strength < 0.0) out.push_back({where, "line strength must be non-negative"});
    }
    return out;
}

namespace builtin {

inline LineData rb_d1_line(double lambda, double gamma, const std::string& lower,
                           const std::string& upper) {
    LineData d1;
    d1.lower_term = lower;
    d1.upper_term = upper;
    d1.wavelength = lambda;
    d1.natural_linewidth = gamma;
    d1.absorption_strengths = {
        {2, 2, 1.0 / 6.0}, {2, 4, 5.0 / 6.0},
        {4, 2, 1.0 / 2.0}, {4, 4, 1.0 / 2.0}};
    d1.branching = {
        {2, 2, 1.0 / 6.0}, {2, 4, 5.0 / 6.0},
        {4, 2, 1.0 / 2.0}, {4, 4, 1.0 / 2.0}};
    return d1;
}

inline LineData rb_d2_line(double lambda, double gamma, const std::string& lower,
                           const std::string& upper) {
    LineData d2;
    d2.lower_term = lower;
    d2.upper_term = upper;
    d2.wavelength = lambda;
    d2.natural_linewidth = gamma;
    d2.absorption_strengths = {
        {2, 0, 1.0 / 3.0}, {2, 2, 5.0 / 6.0}, {2, 4, 5.0 / 6.0}, {2, 6, 0.0},
        {4, 0, 0.0},       {4, 2, 1.0 / 10.0}, {4, 4, 1.0 / 2.0}, {4, 6, 7.0 / 5.0}};
    d2.branching = {
        {0, 2, 1.0},       {0, 4, 0.0},
        {2, 2, 5.0 / 6.0}, {2, 4, 1.0 / 6.0},
        {4, 2, 1.0 / 2.0}, {4, 4, 1.0 / 2.0},
        {6, 2, 0.0},       {6, 4, 1.0}};
    return d2;
}

}  // namespace builtin

// Bundled species datasets. The hyperfine strength tables are static data
// (regenerated from 6j algebra only in the test suite); the polarizability
// line strengths are anchored to measured linewidths, lifetimes and
// oscillator strengths.
inline AtomSpecies builtin_species(const std::string& name) {
    if (name == "rb87" || name == "rubidium-87" || name == "87Rb") {
        AtomSpecies sp;
        sp.name = "rb87";
        sp.twice_nuclear_spin = 3;
        sp.gamma0 = two_pi * 6.065e6;
        sp.lambda0 = 780.241e-9;
        sp.ground_hyperfine = {
            {"5S1/2 F=1", 2, -4.2716766318e9},
            {"5S1/2 F=2", 4, +2.5630059791e9}};
        sp.lines = {
            builtin::rb_d1_line(794.979e-9, two_pi * 5.750e6, "5S1/2", "5P1/2"),
            builtin::rb_d2_line(780.241e-9, two_pi * 6.065e6, "5S1/2", "5P3/2")};
        sp.polarizability_transitions = {
            {"5S1/2", "5P1/2", 1, 1, 794.979e-9, 1.287956e-57, two_pi * 5.750e6},
            {"5S1/2", "5P3/2", 1, 3, 780.241e-9, 2.568700e-57, two_pi * 6.065e6},
            {"5S1/2", "6P1/2", 1, 1, 421.671e-9, 7.982931e-60, two_pi * 6.0e6},
            {"5S1/2", "6P3/2", 1, 3, 420.298e-9, 1.790311e-59, two_pi * 6.0e6},
            {"5P3/2", "4D5/2", 3, 5, 1529.37e-9, 8.555696e-57, 1.124e7},
            {"5P3/2", "4D3/2", 3, 3, 1529.26e-9, 9.506329e-58, 1.124e7},
            {"5P3/2", "6S1/2", 3, 1, 1366.87e-9, 2.560414e-57, 2.19e7},
            {"5P3/2", "7S1/2", 3, 1, 741.02e-9, 2.148362e-58, 1.14e7},
            {"5P3/2", "5D5/2", 3, 5, 775.98e-9, 3.885253e-58, 3.9e6},
            {"5P3/2", "5D3/2", 3, 3, 775.94e-9, 4.316948e-59, 3.9e6}};
        return sp;
    }
    if (name == "na23" || name == "sodium-23" || name == "23Na") {
        // Same I = 3/2, J structure as rb87, so the same strength tables apply.
        AtomSpecies sp;
        sp.name = "na23";
        sp.twice_nuclear_spin = 3;
        sp.gamma0 = two_pi * 9.7946e6;
        sp.lambda0 = 589.158e-9;
        sp.ground_hyperfine = {
            {"3S1/2 F=1", 2, -1.1072663305e9},
            {"3S1/2 F=2", 4, +6.6435979830e8}};
        sp.lines = {
            builtin::rb_d1_line(589.756e-9, two_pi * 9.765e6, "3S1/2", "3P1/2"),
            builtin::rb_d2_line(589.158e-9, two_pi * 9.7946e6, "3S1/2", "3P3/2")};
        sp.polarizability_transitions = {
            {"3S1/2", "3P1/2", 1, 1, 589.756e-9, 8.930086e-58, two_pi * 9.765e6},
            {"3S1/2", "3P3/2", 1, 3, 589.158e-9, 1.785987e-57, two_pi * 9.7946e6}};
        return sp;
    }
    throw std::invalid_argument("builtin_species: unknown species '" + name + "'");
}

}  // namespace qjpd

#endif
