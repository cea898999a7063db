#include <catch2/catch_amalgamated.hpp>

#include "qjpd/rates.hpp"

using namespace qjpd;
using Catch::Approx;

namespace {
const AtomSpecies& rb() {
    static const AtomSpecies sp = builtin_species("rb87");
    return sp;
}
}  // namespace

TEST_CASE("sun rates at unit scaling rate give the branching aggregates") {
    const auto [r12, r21] = sun_rates(1.0, rb());
    CHECK(r12 == Approx(10.0 / 9.0).margin(1e-9));
    CHECK(r21 == Approx(2.0 / 3.0).margin(1e-9));
    CHECK(r12 / r21 == Approx(5.0 / 3.0).margin(1e-9));
    const auto zero = sun_rates(0.0, rb());
    CHECK(zero.r12 == 0.0);
    CHECK(zero.r21 == 0.0);
}

TEST_CASE("rate ratio is independent of r0") {
    for (double r0 : {1e-3, 1.0, 42.0, 8.6e3}) {
        const auto [r12, r21] = sun_rates(r0, rb());
        CHECK(r12 / r21 == Approx(5.0 / 3.0).margin(1e-9));
    }
}

TEST_CASE("scaling rate reproduces the measured-spectrum chain") {
    const FocusGeometry geom;
    const double kappa = 3.7e-8;
    const double r0_per_nw = scaling_rate(1e-9, kappa, geom, rb());
    CHECK(r0_per_nw == Approx(8.3242).epsilon(1e-3));  // frozen oracle value
    CHECK(r0_per_nw == Approx(8.6).epsilon(0.10));
    CHECK(scaling_rate(0.0, kappa, geom, rb()) == 0.0);

    const double b_th = saturation_rate_per_power(kappa, geom, rb()) * 1e-9;
    CHECK(b_th == Approx(16.0 / 9.0 * r0_per_nw).epsilon(1e-12));
    CHECK(b_th == Approx(15.3).epsilon(0.10));

    // in-line power cross-check at the maximum lab power
    CHECK(kappa * 1.38e-6 == Approx(51.2e-15).epsilon(0.05));
}

TEST_CASE("scaling rate is linear in power and kappa") {
    const FocusGeometry geom;
    const double base = scaling_rate(2e-9, 1.1e-8, geom, rb());
    CHECK(scaling_rate(4e-9, 1.1e-8, geom, rb()) == Approx(2.0 * base).epsilon(1e-12));
    CHECK(scaling_rate(2e-9, 3.3e-8, geom, rb()) == Approx(3.0 * base).epsilon(1e-12));
}

TEST_CASE("probe rate") {
    ProbeConfig cfg;
    cfg.photons_per_window = 295.0;
    CHECK(probe_rate(cfg) == Approx(250.75).margin(1e-9));
    cfg.photons_per_window = 49.0;
    CHECK(probe_rate(cfg) == Approx(41.65).margin(1e-9));
    cfg.photons_per_window = 0.0;
    CHECK(probe_rate(cfg) == 0.0);
    cfg.eta_qj = 0.0;
    CHECK_THROWS_AS(probe_rate(cfg), std::domain_error);
    cfg.eta_qj = 8.5e-3;
    cfg.window = 0.0;
    CHECK_THROWS_AS(probe_rate(cfg), std::domain_error);
}

TEST_CASE("saturated population") {
    RateSet sun_only;
    sun_only.sun_12 = 10.0 / 9.0;
    sun_only.sun_21 = 2.0 / 3.0;
    CHECK(saturated_population(sun_only) == Approx(0.625).margin(1e-15));

    RateSet probe_dominated = sun_only;
    probe_dominated.probe_12 = 1e9;
    CHECK(saturated_population(probe_dominated) > 0.999999);

    RateSet symmetric;
    symmetric.sun_12 = 3.7;
    symmetric.sun_21 = 3.7;
    CHECK(saturated_population(symmetric) == Approx(0.5).margin(1e-15));

    RateSet dead;
    CHECK_THROWS_AS(saturated_population(dead), std::domain_error);
}

TEST_CASE("saturated population is monotone in the probe rate and bounded") {
    RateSet rs;
    rs.sun_12 = 5.0;
    rs.sun_21 = 3.0;
    double prev = saturated_population(rs);
    CHECK(prev > 0.0);
    CHECK(prev < 1.0);
    for (double p : {0.1, 1.0, 10.0, 100.0, 1e4}) {
        rs.probe_12 = p;
        const double cur = saturated_population(rs);
        CHECK(cur > prev);
        CHECK(cur < 1.0);
        prev = cur;
    }
}

TEST_CASE("make_rate_set wires the full chain") {
    const FocusGeometry geom;
    ProbeConfig probe;
    probe.photons_per_window = 150.0;
    const auto rs = make_rate_set(1e-9, 3.7e-8, geom, rb(), probe);
    CHECK(rs.sun_12 / rs.sun_21 == Approx(5.0 / 3.0).margin(1e-9));
    CHECK(rs.probe_12 == Approx(127.5).margin(1e-9));
    CHECK(rs.sun_power == 1e-9);
    CHECK(rs.r0 == Approx(8.3242).epsilon(1e-3));
}
