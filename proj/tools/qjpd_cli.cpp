// Command-line front end: rate chain, population dynamics, shot-level Monte
// Carlo, thermal light shifts, SNR, link budget, channel capacity and
// saturation fits, with CSV/JSON outputs for external plotting.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qjpd/qjpd.hpp"
#include "qjpd/species_io.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct SpectrumChoice {
    enum class Kind { pinned_kappa, planck, file } kind = Kind::pinned_kappa;
    double kappa = 3.7e-8;  // measured in-band fraction of the lab solar spectrum
    double temperature_k = 5800.0;
    std::optional<std::pair<double, double>> band_nm = std::make_pair(600.0, 1100.0);
    std::string path;
};

struct RunConfig {
    std::string species_name = "rb87";
    SpectrumChoice spectrum;
    qjpd::FocusGeometry geometry;
    qjpd::ProbeConfig probe;
    std::uint64_t seed = 20240601;
    std::string output_dir = ".";
    unsigned threads = 1;
};

SpectrumChoice parse_spectrum_string(const std::string& s) {
    SpectrumChoice c;
    if (s.rfind("kappa:", 0) == 0) {
        c.kind = SpectrumChoice::Kind::pinned_kappa;
        c.kappa = std::stod(s.substr(6));
        return c;
    }
    if (s.rfind("planck", 0) == 0) {
        c.kind = SpectrumChoice::Kind::planck;
        // planck[:T[:lmin-lmax|full]]
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string tok;
        while (std::getline(ss, tok, ':')) parts.push_back(tok);
        if (parts.size() > 1) c.temperature_k = std::stod(parts[1]);
        if (parts.size() > 2) {
            if (parts[2] == "full") {
                c.band_nm.reset();
            } else {
                const auto dash = parts[2].find('-');
                if (dash == std::string::npos)
                    throw std::runtime_error("spectrum: expected planck:T:lmin-lmax or planck:T:full");
                c.band_nm = std::make_pair(std::stod(parts[2].substr(0, dash)),
                                           std::stod(parts[2].substr(dash + 1)));
            }
        }
        return c;
    }
    c.kind = SpectrumChoice::Kind::file;
    c.path = s;
    return c;
}

void load_config_file(const std::string& path, RunConfig& cfg) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("config: cannot open " + path);
    json j;
    in >> j;
    if (j.contains("species")) cfg.species_name = j["species"].get<std::string>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("output_dir")) cfg.output_dir = j["output_dir"].get<std::string>();
    if (j.contains("threads")) cfg.threads = j["threads"].get<unsigned>();
    if (j.contains("spectrum")) {
        const auto& s = j["spectrum"];
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "pinned-kappa") {
            cfg.spectrum.kind = SpectrumChoice::Kind::pinned_kappa;
            cfg.spectrum.kappa = s.at("kappa").get<double>();
        } else if (kind == "planck") {
            cfg.spectrum.kind = SpectrumChoice::Kind::planck;
            if (s.contains("temperature_K"))
                cfg.spectrum.temperature_k = s["temperature_K"].get<double>();
            if (s.contains("band_nm")) {
                if (s["band_nm"].is_null())
                    cfg.spectrum.band_nm.reset();
                else
                    cfg.spectrum.band_nm =
                        std::make_pair(s["band_nm"][0].get<double>(), s["band_nm"][1].get<double>());
            }
        } else if (kind == "file") {
            cfg.spectrum.kind = SpectrumChoice::Kind::file;
            cfg.spectrum.path = s.at("path").get<std::string>();
        } else {
            throw std::runtime_error("config: unknown spectrum kind '" + kind + "'");
        }
    }
    if (j.contains("geometry")) {
        const auto& g = j["geometry"];
        if (g.contains("waist_at_atom_um"))
            cfg.geometry.waist_at_atom = g["waist_at_atom_um"].get<double>() * 1e-6;
        if (g.contains("lens_focal_length_mm"))
            cfg.geometry.lens_focal_length = g["lens_focal_length_mm"].get<double>() * 1e-3;
        if (g.contains("design_wavelength_nm"))
            cfg.geometry.design_wavelength = g["design_wavelength_nm"].get<double>() * 1e-9;
    }
    if (j.contains("probe")) {
        const auto& p = j["probe"];
        if (p.contains("photons_per_window"))
            cfg.probe.photons_per_window = p["photons_per_window"].get<double>();
        if (p.contains("window_ms")) cfg.probe.window = p["window_ms"].get<double>() * 1e-3;
        if (p.contains("eta_qj")) cfg.probe.eta_qj = p["eta_qj"].get<double>();
    }
}

struct Context {
    RunConfig cfg;
    qjpd::AtomSpecies species;
    std::optional<qjpd::SolarSpectrum> spectrum;  // absent when kappa is pinned
    double kappa = 0.0;

    static Context build(const RunConfig& cfg, const std::string& species_file) {
        Context ctx;
        ctx.cfg = cfg;
        ctx.species = species_file.empty() ? qjpd::builtin_species(cfg.species_name)
                                           : qjpd::species_from_file(species_file);
        const auto violations = qjpd::validate_species(ctx.species);
        if (!violations.empty())
            throw std::runtime_error("species '" + ctx.species.name + "' fails validation: " +
                                     violations.front().location + ": " + violations.front().rule);
        ctx.cfg.geometry.validate();
        ctx.cfg.probe.validate();
        switch (cfg.spectrum.kind) {
            case SpectrumChoice::Kind::pinned_kappa:
                ctx.kappa = cfg.spectrum.kappa;
                if (!(ctx.kappa > 0.0 && ctx.kappa < 1.0))
                    throw std::runtime_error("config: pinned kappa must lie in (0, 1)");
                break;
            case SpectrumChoice::Kind::planck: {
                std::optional<std::pair<double, double>> band_m;
                if (cfg.spectrum.band_nm)
                    band_m = std::make_pair(cfg.spectrum.band_nm->first * 1e-9,
                                            cfg.spectrum.band_nm->second * 1e-9);
                ctx.spectrum = qjpd::SolarSpectrum::planck(cfg.spectrum.temperature_k, band_m);
                break;
            }
            case SpectrumChoice::Kind::file:
                ctx.spectrum = qjpd::spectrum_from_csv_file(cfg.spectrum.path);
                break;
        }
        if (ctx.spectrum)
            ctx.kappa = qjpd::in_band_fraction(*ctx.spectrum, ctx.species.lambda0,
                                               ctx.species.gamma0 / qjpd::two_pi);
        return ctx;
    }

    qjpd::RateSet rates_at(double sun_w, double probe_photons) const {
        qjpd::ProbeConfig p = cfg.probe;
        p.photons_per_window = probe_photons;
        return qjpd::make_rate_set(sun_w, kappa, cfg.geometry, species, p);
    }
};

// Outputs go through a temp file and rename, so a failed command never leaves
// a partial file behind.
void write_file(const fs::path& path, const std::string& content) {
    const fs::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << content;
        if (!out) throw std::runtime_error("write failed for " + tmp.string());
    }
    fs::rename(tmp, path);
}

fs::path out_path(const RunConfig& cfg, const std::string& name) {
    fs::create_directories(cfg.output_dir);
    return fs::path(cfg.output_dir) / name;
}

json rate_set_to_json(const qjpd::RateSet& rs) {
    return json{{"r0_per_s", rs.r0},
                {"sun_12_per_s", rs.sun_12},
                {"sun_21_per_s", rs.sun_21},
                {"probe_12_per_s", rs.probe_12},
                {"sun_power_W", rs.sun_power}};
}

std::string format_json(const json& j) { return j.dump(2) + "\n"; }

int cmd_rates(const Context& ctx, double sun_nw) {
    const double sun_w = sun_nw * 1e-9;
    const auto rs = ctx.rates_at(sun_w, ctx.cfg.probe.photons_per_window);
    json j = rate_set_to_json(rs);
    j["kappa"] = ctx.kappa;
    j["b_th_per_s_per_nW"] =
        qjpd::saturation_rate_per_power(ctx.kappa, ctx.cfg.geometry, ctx.species) * 1e-9;
    j["r0_per_s_per_nW"] = qjpd::scaling_rate(1.0, ctx.kappa, ctx.cfg.geometry, ctx.species) * 1e-9;
    if (rs.total() > 0.0) {
        j["saturated_population"] = qjpd::saturated_population(rs);
    } else {
        j["saturated_population"] = nullptr;
        j["warning"] = "all rates zero: populations never reach a steady state";
    }
    const std::string text = format_json(j);
    write_file(out_path(ctx.cfg, "rates.json"), text);
    std::cout << text;
    return 0;
}

int cmd_dynamics(const Context& ctx, double sun_nw, double probe_photons, double t_ms,
                 int n_points) {
    const auto rs = ctx.rates_at(sun_nw * 1e-9, probe_photons);
    std::ostringstream csv;
    csv << "time_ms,n2_closed_form,n2_ode\n";
    csv.precision(12);
    for (int i = 0; i <= n_points; ++i) {
        const double t = t_ms * 1e-3 * i / n_points;
        csv << t * 1e3 << ',' << qjpd::n2_closed_form(rs, t).n2 << ','
            << qjpd::n2_ode(rs, t, 0.0, 1e-10).n2 << '\n';
    }
    write_file(out_path(ctx.cfg, "dynamics.csv"), csv.str());
    json j = rate_set_to_json(rs);
    j["n2_at_t"] = qjpd::n2_closed_form(rs, t_ms * 1e-3).n2;
    std::cout << format_json(j);
    return 0;
}

int cmd_montecarlo(const Context& ctx, std::vector<double> sun_nw, std::vector<double> probes,
                   std::int64_t trials, double t_ms) {
    if (sun_nw.empty()) sun_nw = {0, 5, 10, 20, 30, 40, 50};
    if (probes.empty()) probes = {0, 49, 295};
    json estimates = json::array();
    for (double p : probes) {
        for (double s : sun_nw) {
            const auto rs = ctx.rates_at(s * 1e-9, p);
            const auto shots = qjpd::simulate_shots(rs, t_ms * 1e-3, trials, ctx.cfg.seed, {},
                                                    ctx.cfg.threads);
            const auto est = qjpd::estimate(shots);
            std::ostringstream csv;
            qjpd::shots_to_csv(shots, csv);
            std::ostringstream name;
            name << "shots_sun" << s << "nW_probe" << p << "ph.csv";
            write_file(out_path(ctx.cfg, name.str()), csv.str());
            json e = {{"sun_power_nW", s},
                      {"probe_photons", p},
                      {"p2_hat", est.p2_hat},
                      {"stderr", est.stderr_p2},
                      {"trials", est.trials},
                      {"seed", ctx.cfg.seed},
                      {"n2_model", qjpd::n2_closed_form(rs, t_ms * 1e-3).n2}};
            if (est.trials < 2) e["warning"] = "single-shot estimate, stderr not meaningful";
            estimates.push_back(e);
        }
    }
    const std::string text = format_json(estimates);
    write_file(out_path(ctx.cfg, "estimates.json"), text);
    std::cout << text;
    return 0;
}

int cmd_stark(const Context& ctx, double temperature, double cutoff_nm) {
    using namespace qjpd;
    const auto& sp = ctx.species;
    const double waist = ctx.cfg.geometry.waist_at_atom;
    json out = json::array();
    auto add = [&](const ShiftResult& r) {
        out.push_back({{"state", r.state_label},
                       {"scenario", to_string(r.scenario)},
                       {"shift_hz_per_uw", r.hz_per_uw()}});
        return r;
    };

    const auto ground_lin = ground_polarizability_model(sp, Polarization::linear);
    const auto ground_full = add(bbr_shift(ground_lin, temperature, 1e-6, waist));
    BbrShiftOptions cut;
    cut.lambda_min_cutoff = cutoff_nm * 1e-9;
    add(bbr_shift(ground_lin, temperature, 1e-6, waist, cut));

    // D2 upper level, maximum m_F = 0 shift (stretched hyperfine level)
    const int tf_max = 3 + sp.twice_nuclear_spin;
    const auto excited_lin = excited_polarizability_model(sp, "5P3/2", 3, Polarization::linear,
                                                          tf_max, 0);
    const auto excited_full = add(bbr_shift(excited_lin, temperature, 1e-6, waist));
    add(differential_shift(ground_full, excited_full));

    const auto ground_iso = ground_polarizability_model(sp, Polarization::isotropic);
    const auto excited_iso =
        excited_polarizability_model(sp, "5P3/2", 3, Polarization::isotropic);
    const auto gi = add(bbr_shift(ground_iso, temperature, 1e-6, waist));
    const auto ei = add(bbr_shift(excited_iso, temperature, 1e-6, waist));
    add(differential_shift(gi, ei));

    const std::string text = format_json(out);
    write_file(out_path(ctx.cfg, "stark.json"), text);
    std::cout << text;
    return 0;
}

int cmd_snr(const Context& ctx, double n_sig, double n_bg, double filter_tmax,
            double filter_enbw_ghz, double filter_eta) {
    using namespace qjpd;
    DetectionScenario qjpd_sc;
    qjpd_sc.n_sig = n_sig;
    qjpd_sc.n_bg = n_bg;
    qjpd_sc.eta_sig = ctx.cfg.probe.eta_qj;
    qjpd_sc.eta_bg = qjpd_background_efficiency(ctx.kappa, ctx.cfg.probe.eta_qj, ctx.species);

    FilterDetector filt{filter_tmax, filter_enbw_ghz * 1e9, filter_eta};
    // kappa scales linearly with bandwidth, so the pinned atomic kappa converts
    // directly to the filter bandwidth
    const double kappa_filter =
        ctx.spectrum ? in_band_fraction(*ctx.spectrum, ctx.species.lambda0, filt.enbw)
                     : ctx.kappa * filt.enbw / (ctx.species.gamma0 / two_pi);
    DetectionScenario filt_sc;
    filt_sc.n_sig = n_sig;
    filt_sc.n_bg = n_bg;
    filt_sc.eta_sig = filter_signal_efficiency(filt);
    filt_sc.eta_bg = kappa_filter * filt.t_max * filt.eta_det;

    json j = {{"qjpd", {{"eta_sig", qjpd_sc.eta_sig}, {"eta_bg", qjpd_sc.eta_bg}, {"snr", snr(qjpd_sc)}}},
              {"filtered", {{"eta_sig", filt_sc.eta_sig},
                            {"eta_bg", filt_sc.eta_bg},
                            {"kappa_filter", kappa_filter},
                            {"snr", snr(filt_sc)}}},
              {"n_sig_per_window", n_sig},
              {"n_bg_per_window", n_bg}};
    const std::string text = format_json(j);
    write_file(out_path(ctx.cfg, "snr.json"), text);
    std::cout << text;
    return 0;
}

int cmd_capacity(const Context& ctx, std::vector<double> photons, std::vector<double> sun_nw,
                 const std::string& mode) {
    using namespace qjpd;
    if (photons.empty()) for (int i = 0; i <= 30; ++i) photons.push_back(10.0 * i + (i ? 0 : 1));
    if (sun_nw.empty()) for (double p : {0.1, 0.2, 0.5, 1.0, 2.0, 5.0, 10.0, 20.0, 50.0}) sun_nw.push_back(p);
    ChannelModel model = (mode == "theoretical")
                             ? ChannelModel::theoretical(ctx.kappa, ctx.cfg.geometry, ctx.species)
                             : ChannelModel::fitted();
    std::vector<double> sun_w;
    for (double p : sun_nw) sun_w.push_back(p * 1e-9);
    const auto map =
        capacity_map(photons, sun_w, model, ctx.cfg.probe.window, ctx.cfg.probe.eta_qj);
    std::ostringstream csv;
    capacity_map_to_csv(map, csv);
    write_file(out_path(ctx.cfg, "capacity_map.csv"), csv.str());

    // headline single point if present in the grid
    json j = {{"mode", mode}, {"rows_photons", photons.size()}, {"cols_sun_powers", sun_nw.size()}};
    std::cout << format_json(j);
    return 0;
}

int cmd_link(const Context& ctx, double at_m2, double ar_m2, double distance_au,
             double wavelength_nm, double power_w, double window_ms) {
    using namespace qjpd;
    LinkBudget lb{at_m2, ar_m2, distance_au * 1.495978707e11, wavelength_nm * 1e-9, power_w};
    const double eta = link_efficiency(lb);
    json j = {{"eta_link", eta},
              {"photons_per_window", received_photons_per_window(lb, eta, window_ms * 1e-3)},
              {"window_ms", window_ms}};
    const std::string text = format_json(j);
    write_file(out_path(ctx.cfg, "link.json"), text);
    std::cout << text;
    return 0;
}

int cmd_fit(const Context& ctx, const std::string& data_path, bool synthetic,
            std::int64_t trials) {
    using namespace qjpd;
    SaturationDataset data;
    if (synthetic) {
        // Monte-Carlo dataset from the configured rate chain
        const double t = ctx.cfg.probe.window;
        for (double s_nw : {3.0, 6.0, 12.0, 18.0, 25.0, 33.0, 41.0, 50.0}) {
            const auto rs = ctx.rates_at(s_nw * 1e-9, 0.0);
            const auto shots =
                simulate_shots(rs, t, trials, ctx.cfg.seed + static_cast<int>(s_nw), {},
                               ctx.cfg.threads);
            const auto est = estimate(shots);
            const double guarded =
                (est.p2_hat <= 0.0 || est.p2_hat >= 1.0)
                    ? std::sqrt((est.p2_hat * trials + 0.5) / (trials + 1.0) *
                                (1.0 - (est.p2_hat * trials + 0.5) / (trials + 1.0)) / trials)
                    : est.stderr_p2;
            data.points.push_back({s_nw * 1e-9, t, est.p2_hat, guarded});
        }
        data.label = "synthetic";
        std::ostringstream csv;
        dataset_to_csv(data, csv);
        write_file(out_path(ctx.cfg, "fit_dataset.csv"), csv.str());
    } else {
        data = dataset_from_csv_file(data_path);
    }
    const auto params = fit_saturation(data);
    json j = {{"n2_sat", params.n2_sat},
              {"b_per_nW_per_s", params.b_per_w * 1e-9},
              {"stderr_n2sat", params.stderr_n2_sat()},
              {"stderr_b", params.stderr_b() * 1e-9},
              {"chi2", params.chi2},
              {"dof", params.dof}};
    const std::string text = format_json(j);
    write_file(out_path(ctx.cfg, "fit.json"), text);
    std::cout << text;
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Single-atom quantum-jump photodetector toolkit"};
    app.require_subcommand(1);

    std::string config_path, species_file, spectrum_str, out_dir;
    std::string species_name;
    std::uint64_t seed = 0;
    bool seed_set = false, out_set = false;
    unsigned threads = 0;

    app.add_option("--config", config_path, "JSON configuration file");
    app.add_option("--species", species_name, "builtin species name (rb87, na23)");
    app.add_option("--species-file", species_file, "species data file (JSON)");
    app.add_option("--spectrum", spectrum_str,
                   "spectrum: kappa:<value> | planck[:T[:lmin-lmax|full]] | <csv path>");
    app.add_option("--seed", seed, "random seed")->each([&](const std::string&) { seed_set = true; });
    app.add_option("--out", out_dir, "output directory")->each([&](const std::string&) { out_set = true; });
    app.add_option("--threads", threads, "worker threads for Monte-Carlo trials");

    double sun_nw = 1.0, probe_photons = -1.0, t_ms = 10.0;
    std::vector<double> sun_list, probe_list, photon_list;
    std::int64_t trials = 200;
    int n_points = 100;
    double temperature = 5800.0, cutoff_nm = 800.0;
    double n_sig = 400.0, n_bg = 5e7;
    double filter_tmax = 0.7, filter_enbw_ghz = 1.0, filter_eta = 1.0;
    std::string mode = "fitted", data_path;
    bool synthetic = false;
    double at_m2 = 5e-4, ar_m2 = 0.8, distance_au = 1.0, wavelength_nm = 780.0, power_w = 1.0;

    auto* c_rates = app.add_subcommand("rates", "transition rates for a given sun power");
    c_rates->add_option("--sun-nw", sun_nw, "total sun power in nW");

    auto* c_dyn = app.add_subcommand("dynamics", "population evolution curve");
    c_dyn->add_option("--sun-nw", sun_nw);
    c_dyn->add_option("--probe-photons", probe_photons, "probe photons per window");
    c_dyn->add_option("--t-ms", t_ms, "exposure duration in ms");
    c_dyn->add_option("--points", n_points);

    auto* c_mc = app.add_subcommand("montecarlo", "shot-level experiment emulation");
    c_mc->add_option("--sun-nw", sun_list, "sun powers in nW");
    c_mc->add_option("--probe-photons", probe_list, "probe photon numbers");
    c_mc->add_option("--trials", trials);
    c_mc->add_option("--t-ms", t_ms);

    auto* c_stark = app.add_subcommand("stark", "thermal light shift scenarios");
    c_stark->add_option("--temperature", temperature, "blackbody temperature in K");
    c_stark->add_option("--cutoff-nm", cutoff_nm, "keep only wavelengths above this");

    auto* c_snr = app.add_subcommand("snr", "detector signal-to-noise comparison");
    c_snr->add_option("--n-sig", n_sig, "signal photons per window");
    c_snr->add_option("--n-bg", n_bg, "background photons per window");
    c_snr->add_option("--filter-tmax", filter_tmax);
    c_snr->add_option("--filter-enbw-ghz", filter_enbw_ghz);
    c_snr->add_option("--filter-eta", filter_eta);

    auto* c_cap = app.add_subcommand("capacity", "binary channel capacity map");
    c_cap->add_option("--photons", photon_list, "probe photon grid");
    c_cap->add_option("--sun-nw", sun_list, "sun power grid in nW");
    c_cap->add_option("--mode", mode)->check(CLI::IsMember({"fitted", "theoretical"}));

    auto* c_link = app.add_subcommand("link", "free-space link budget");
    c_link->add_option("--at-m2", at_m2, "transmitter aperture area");
    c_link->add_option("--ar-m2", ar_m2, "receiver aperture area");
    c_link->add_option("--distance-au", distance_au);
    c_link->add_option("--wavelength-nm", wavelength_nm);
    c_link->add_option("--power-w", power_w);
    c_link->add_option("--t-ms", t_ms);

    auto* c_fit = app.add_subcommand("fit", "weighted saturation-curve fit");
    c_fit->add_option("--data", data_path, "dataset CSV (sun_power_nW,exposure_ms,p2,stderr)");
    c_fit->add_flag("--synthetic", synthetic, "generate a Monte-Carlo dataset and fit it");
    c_fit->add_option("--trials", trials);

    CLI11_PARSE(app, argc, argv);

    try {
        RunConfig cfg;
        if (!config_path.empty()) load_config_file(config_path, cfg);
        if (!species_name.empty()) cfg.species_name = species_name;
        if (!spectrum_str.empty()) cfg.spectrum = parse_spectrum_string(spectrum_str);
        if (seed_set) cfg.seed = seed;
        if (out_set) cfg.output_dir = out_dir;
        if (threads > 0) cfg.threads = threads;
        if (probe_photons >= 0.0) cfg.probe.photons_per_window = probe_photons;

        const Context ctx = Context::build(cfg, species_file);

        if (*c_rates) return cmd_rates(ctx, sun_nw);
        if (*c_dyn) return cmd_dynamics(ctx, sun_nw, std::max(probe_photons, 0.0), t_ms, n_points);
        if (*c_mc) return cmd_montecarlo(ctx, sun_list, probe_list, trials, t_ms);
        if (*c_stark) return cmd_stark(ctx, temperature, cutoff_nm);
        if (*c_snr) return cmd_snr(ctx, n_sig, n_bg, filter_tmax, filter_enbw_ghz, filter_eta);
        if (*c_cap) return cmd_capacity(ctx, photon_list, sun_list, mode);
        if (*c_link) return cmd_link(ctx, at_m2, ar_m2, distance_au, wavelength_nm, power_w, t_ms);
        if (*c_fit) {
            if (!synthetic && data_path.empty())
                throw std::runtime_error("fit: provide --data <csv> or --synthetic");
            return cmd_fit(ctx, data_path, synthetic, trials);
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
