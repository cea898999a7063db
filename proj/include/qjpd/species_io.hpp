#ifndef QJPD_SPECIES_IO_HPP
#define QJPD_SPECIES_IO_HPP

#include <fstream>
#include <string>

#include <json.hpp>

#include "qjpd/species.hpp"

namespace qjpd {

inline constexpr int species_schema_version = 1;

inline nlohmann::json strength_table_to_json(const std::vector<StrengthEntry>& tab) {
    auto arr = nlohmann::json::array();
    for (const auto& e : tab)
        arr.push_back({{"twice_f_from", e.twice_f_from},
                       {"twice_f_to", e.twice_f_to},
                       {"value", e.value}});
    return arr;
}

inline std::vector<StrengthEntry> strength_table_from_json(const nlohmann::json& arr) {
    std::vector<StrengthEntry> tab;
    for (const auto& e : arr)
        tab.push_back({e.at("twice_f_from").get<int>(), e.at("twice_f_to").get<int>(),
                       e.at("value").get<double>()});
    return tab;
}

inline nlohmann::json species_to_json(const AtomSpecies& sp) {
    nlohmann::json j;
    j["schema_version"] = species_schema_version;
    j["name"] = sp.name;
    j["twice_nuclear_spin"] = sp.twice_nuclear_spin;
    j["gamma0_rad_per_s"] = sp.gamma0;
    j["lambda0_m"] = sp.lambda0;
    auto levels = nlohmann::json::array();
    for (const auto& l : sp.ground_hyperfine)
        levels.push_back({{"term", l.term_label},
                          {"twice_f", l.twice_f},
                          {"energy_offset_hz", l.energy_offset_hz}});
    j["levels"] = levels;
    auto lines = nlohmann::json::array();
    for (const auto& l : sp.lines)
        lines.push_back({{"lower", l.lower_term},
                         {"upper", l.upper_term},
                         {"wavelength_m", l.wavelength},
                         {"natural_linewidth_rad_per_s", l.natural_linewidth},
                         {"absorption_strengths", strength_table_to_json(l.absorption_strengths)},
                         {"branching", strength_table_to_json(l.branching)}});
    j["lines"] = lines;
    auto pols = nlohmann::json::array();
    for (const auto& t : sp.polarizability_transitions)
        pols.push_back({{"lower", t.lower_state},
                        {"upper", t.upper_state},
                        {"twice_j_lower", t.twice_j_lower},
                        {"twice_j_upper", t.twice_j_upper},
                        {"wavelength_m", t.wavelength},
                        {"line_strength_C2m2", t.line_strength},
                        {"linewidth_rad_per_s", t.linewidth}});
    j["polarizability_transitions"] = pols;
    return j;
}

inline AtomSpecies species_from_json(const nlohmann::json& j) {
    if (!j.contains("schema_version"))
        throw std::runtime_error("species file: missing mandatory schema_version");
    if (j.at("schema_version").get<int>() != species_schema_version)
        throw std::runtime_error("species file: unsupported schema_version");
    AtomSpecies sp;
    sp.name = j.at("name").get<std::string>();
    sp.twice_nuclear_spin = j.at("twice_nuclear_spin").get<int>();
    sp.gamma0 = j.at("gamma0_rad_per_s").get<double>();
    sp.lambda0 = j.at("lambda0_m").get<double>();
    for (const auto& l : j.at("levels"))
        sp.ground_hyperfine.push_back({l.at("term").get<std::string>(),
                                       l.at("twice_f").get<int>(),
                                       l.at("energy_offset_hz").get<double>()});
    for (const auto& l : j.at("lines")) {
        LineData line;
        line.lower_term = l.at("lower").get<std::string>();
        line.upper_term = l.at("upper").get<std::string>();
        line.wavelength = l.at("wavelength_m").get<double>();
        line.natural_linewidth = l.at("natural_linewidth_rad_per_s").get<double>();
        line.absorption_strengths = strength_table_from_json(l.at("absorption_strengths"));
        line.branching = strength_table_from_json(l.at("branching"));
        sp.lines.push_back(std::move(line));
    }
    for (const auto& t : j.at("polarizability_transitions"))
        sp.polarizability_transitions.push_back(
            {t.at("lower").get<std::string>(), t.at("upper").get<std::string>(),
             t.at("twice_j_lower").get<int>(), t.at("twice_j_upper").get<int>(),
             t.at("wavelength_m").get<double>(), t.at("line_strength_C2m2").get<double>(),
             t.at("linewidth_rad_per_s").get<double>()});
    return sp;
}

inline void species_to_file(const AtomSpecies& sp, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("species file: cannot open " + path + " for writing");
    out << species_to_json(sp).dump(2) << '\n';
}

inline AtomSpecies species_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("species file: cannot open " + path);
    nlohmann::json j;
    in >> j;
    return species_from_json(j);
}

}  // namespace qjpd

#endif
