#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "qjpd/comms.hpp"

using namespace qjpd;
using Catch::Approx;

namespace {
const AtomSpecies& rb() {
    static const AtomSpecies sp = builtin_species("rb87");
    return sp;
}
}  // namespace

TEST_CASE("snr of the quantum-jump detector against full sunlight") {
    DetectionScenario sc;
    sc.n_sig = 400.0;
    sc.n_bg = 5e7;
    sc.eta_sig = 8.5e-3;
    sc.eta_bg = qjpd_background_efficiency(3.7e-8, 8.5e-3, rb());
    CHECK(sc.eta_bg == Approx(8.39e-10).epsilon(1e-3));
    CHECK(snr(sc) == Approx(81.08).epsilon(1e-3));
    CHECK(snr(sc) == Approx(81.0).epsilon(0.05));
}

TEST_CASE("snr of the filtered classical detector") {
    DetectionScenario sc;
    sc.n_sig = 400.0;
    sc.n_bg = 5e7;
    sc.eta_sig = 0.7;
    sc.eta_bg = 6e-6 * 0.7 * 1.0;
    CHECK(snr(sc) == Approx(4.0 / 3.0).epsilon(1e-6));
    CHECK(snr(sc) >= 1.0);
    CHECK(snr(sc) <= 1.4);
}

TEST_CASE("snr edge cases and homogeneity") {
    DetectionScenario sc;
    sc.n_sig = 0.0;
    sc.n_bg = 1e7;
    sc.eta_sig = 0.5;
    sc.eta_bg = 1e-9;
    CHECK(snr(sc) == 0.0);
    sc.n_bg = 0.0;
    CHECK(std::isinf(snr(sc)));

    DetectionScenario base{200.0, 3e7, 8.5e-3, 1e-9};
    DetectionScenario sig_scaled = base;
    sig_scaled.n_sig *= 3.0;
    CHECK(snr(sig_scaled) == Approx(3.0 * snr(base)).epsilon(1e-12));
    DetectionScenario bg_scaled = base;
    bg_scaled.n_bg *= 5.0;
    CHECK(snr(bg_scaled) == Approx(snr(base) / 5.0).epsilon(1e-12));
    DetectionScenario bad = base;
    bad.eta_sig = 1.5;
    CHECK_THROWS_AS(snr(bad), std::domain_error);
}

TEST_CASE("background efficiency prefactor comes from the strength tables") {
    const double ratio = rb().sum_1_to_2() / rb().probe_transition_term();
    CHECK(ratio == Approx(8.0 / 3.0).margin(1e-12));
    CHECK(qjpd_background_efficiency(0.0, 8.5e-3, rb()) == 0.0);
    const double kappa = 2.2e-8;
    CHECK(qjpd_background_efficiency(kappa, 8.5e-3, rb()) / 8.5e-3 ==
          Approx(8.0 / 3.0 * kappa).epsilon(1e-12));
}

TEST_CASE("filtered detector efficiencies from the spectrum") {
    const auto spectrum = SolarSpectrum::planck(5800.0, std::make_pair(600e-9, 1100e-9));
    FilterDetector f{0.7, 1e9, 1.0};
    CHECK(filter_signal_efficiency(f) == Approx(0.7));
    const double eta_bg = filter_background_efficiency(f, spectrum, 780e-9);
    // kappa scales linearly with bandwidth: 1 GHz / 6.065 MHz above the atomic kappa
    const double kappa_atom = in_band_fraction(spectrum, 780e-9, 6.065e6);
    CHECK(eta_bg == Approx(kappa_atom * (1e9 / 6.065e6) * 0.7).epsilon(1e-6));
    FilterDetector bad{0.0, 1e9, 1.0};
    CHECK_THROWS_AS(filter_signal_efficiency(bad), std::domain_error);
}

TEST_CASE("link budget") {
    LinkBudget lb;  // defaults: 5e-4 m^2, 0.8 m^2, 1 AU, 780 nm, 1 W
    const double eta = link_efficiency(lb);
    CHECK(eta == Approx(2.9377e-14).epsilon(1e-3));
    CHECK(eta > 1e-14 / 3.0);
    CHECK(eta < 1e-14 * 3.0);

    LinkBudget twice = lb;
    twice.distance *= 2.0;
    CHECK(link_efficiency(twice) == Approx(eta / 4.0).epsilon(1e-12));

    // 1 W at a pinned link efficiency of 1e-14 in a 10 ms window
    CHECK(received_photons_per_window(lb, 1e-14, 10e-3) == Approx(392.66).epsilon(1e-3));
    CHECK(received_photons_per_window(lb, 1e-14, 10e-3) == Approx(390.0).epsilon(0.05));

    LinkBudget near = lb;
    near.distance = 1e5;  // inside the Fraunhofer distance of the 0.8 m^2 aperture
    CHECK_THROWS_AS(link_efficiency(near), std::domain_error);
}

TEST_CASE("channel probabilities in fitted mode") {
    const auto model = ChannelModel::fitted();
    const auto cp = channel_probabilities(150.0, 1e-9, model, 10e-3, 8.5e-3);
    CHECK(cp.p_b == Approx(0.0568054).margin(1e-6));
    CHECK(cp.p_b == Approx(0.057).margin(5e-4));
    CHECK(cp.p_s == Approx(0.7279).margin(5e-4));
    CHECK(cp.p_s == Approx(0.73).margin(5e-3));

    const auto none = channel_probabilities(0.0, 1e-9, model, 10e-3, 8.5e-3);
    CHECK(none.p_s == Approx(none.p_b).margin(1e-15));
}

TEST_CASE("channel probabilities in theoretical mode differ through the rate chain") {
    const auto model = ChannelModel::theoretical(3.7e-8, FocusGeometry{}, rb());
    const auto cp = channel_probabilities(150.0, 1e-9, model, 10e-3, 8.5e-3);
    CHECK(cp.p_b > 0.0);
    CHECK(cp.p_s > cp.p_b);
    // theoretical sun-only saturation sits at 5/8
    const auto strong = channel_probabilities(0.0, 1e-5, model, 10e-3, 8.5e-3);
    CHECK(strong.p_b == Approx(0.625).margin(1e-9));
}

TEST_CASE("capacity endpoints are exact") {
    for (double p : {0.0, 0.123, 0.5, 0.93, 1.0}) {
        const auto ch = capacity(p, p);
        CHECK(ch.capacity == 0.0);
    }
    const auto perfect = capacity(1.0, 0.0);
    CHECK(perfect.capacity == Approx(1.0).margin(1e-9));
    CHECK(perfect.q_opt == Approx(0.5).margin(1e-5));
    CHECK_THROWS_AS(capacity(1.2, 0.0), std::domain_error);
}

TEST_CASE("capacity is symmetric under relabeling and locally optimal") {
    const double ps = 0.7279, pb = 0.0568;
    const auto a = capacity(ps, pb);
    const auto b = capacity(pb, ps);
    CHECK(a.capacity == Approx(b.capacity).margin(1e-9));
    const double at_opt = detail::mutual_information_bits(a.q_opt, ps, pb);
    CHECK(at_opt >= detail::mutual_information_bits(a.q_opt + 1e-6, ps, pb));
    CHECK(at_opt >= detail::mutual_information_bits(a.q_opt - 1e-6, ps, pb));
}

TEST_CASE("capacity agrees with a brute-force scan at the reference operating point") {
    const auto model = ChannelModel::fitted();
    const auto cp = channel_probabilities(150.0, 1e-9, model, 10e-3, 8.5e-3);
    const auto ch = capacity(cp.p_s, cp.p_b);
    double brute = 0.0;
    for (int i = 0; i <= 10000; ++i)
        brute = std::max(brute, detail::mutual_information_bits(i / 10000.0, cp.p_s, cp.p_b));
    CHECK(ch.capacity >= brute - 1e-9);
    CHECK(ch.capacity <= brute + 1e-6);
    // frozen value of the Shannon capacity for this channel
    CHECK(ch.capacity == Approx(0.38891).margin(2e-4));
}

TEST_CASE("capacity map structure and monotonicity") {
    const auto model = ChannelModel::fitted();
    const std::vector<double> photons = {1, 10, 50, 150, 300};
    const std::vector<double> powers_w = {1e-11, 1e-10, 5e-10, 1e-9, 5e-9, 2e-8, 5e-8};
    const auto map = capacity_map(photons, powers_w, model, 10e-3, 8.5e-3);

    for (double c : map.bits) {
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
    }
    // single-cell consistency
    const auto cp = channel_probabilities(150.0, 1e-9, model, 10e-3, 8.5e-3);
    CHECK(map.at(3, 3) == Approx(capacity(cp.p_s, cp.p_b).capacity).margin(1e-12));
    // capacity falls (weakly) with sun power at fixed photon number
    for (std::size_t i = 0; i < photons.size(); ++i)
        for (std::size_t j = 0; j + 1 < powers_w.size(); ++j)
            CHECK(map.at(i, j) >= map.at(i, j + 1) - 1e-12);

    // with no background the capacity grows with photon number
    const auto clean = capacity_map(photons, {1e-30}, model, 10e-3, 8.5e-3);
    for (std::size_t i = 0; i + 1 < photons.size(); ++i)
        CHECK(clean.at(i, 0) <= clean.at(i + 1, 0) + 1e-12);

    CHECK_THROWS_AS(capacity_map({}, powers_w, model, 10e-3, 8.5e-3), std::domain_error);
    CHECK_THROWS_AS(capacity_map({2.0, 1.0}, powers_w, model, 10e-3, 8.5e-3), std::domain_error);
}

TEST_CASE("capacity map CSV layout") {
    const auto model = ChannelModel::fitted();
    const auto map = capacity_map({10, 150}, {1e-9, 2e-9}, model, 10e-3, 8.5e-3);
    std::ostringstream out;
    capacity_map_to_csv(map, out);
    std::istringstream in(out.str());
    std::string header;
    std::getline(in, header);
    CHECK(header == "photons_per_window,1,2");
    std::string row;
    std::getline(in, row);
    CHECK(row.substr(0, 3) == "10,");
    std::getline(in, row);
    CHECK(row.substr(0, 4) == "150,");
}
