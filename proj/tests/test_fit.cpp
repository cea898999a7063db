#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "qjpd/fit.hpp"

using namespace qjpd;
using Catch::Approx;

namespace {

SaturationDataset noiseless(double a, double b_per_w) {
    SaturationDataset d;
    d.label = "noiseless";
    for (double p_nw : {2.0, 5.0, 10.0, 18.0, 30.0, 45.0}) {
        FitParams truth;
        truth.n2_sat = a;
        truth.b_per_w = b_per_w;
        d.points.push_back({p_nw * 1e-9, 0.01, predict(truth, p_nw * 1e-9, 0.01), 0.01});
    }
    return d;
}

}  // namespace

TEST_CASE("noiseless round trip recovers the generating parameters") {
    const auto fitp = fit_saturation(noiseless(0.66, 9.0e9));
    CHECK(fitp.n2_sat == Approx(0.66).epsilon(1e-6));
    CHECK(fitp.b_per_w == Approx(9.0e9).epsilon(1e-6));
    CHECK(fitp.chi2 < 1e-12);
    CHECK(fitp.dof == 4);
}

TEST_CASE("forward model") {
    FitParams p;
    p.n2_sat = 0.66;
    p.b_per_w = 9.0e9;
    CHECK(predict(p, 0.0, 0.01) == 0.0);
    CHECK(predict(p, 10e-9, 1e6) == Approx(0.66).margin(1e-12));
    CHECK(predict(p, 10e-9, 0.01) == Approx(0.3917).margin(5e-4));
    CHECK_THROWS_AS(predict(p, -1.0, 0.01), std::domain_error);
}

TEST_CASE("residual gradient vanishes at the optimum") {
    // seeded noisy dataset
    std::mt19937_64 rng(42);
    std::normal_distribution<double> gauss;
    SaturationDataset d;
    FitParams truth;
    truth.n2_sat = 0.66;
    truth.b_per_w = 9.0e9;
    for (double p_nw : {3.0, 6.0, 12.0, 18.0, 25.0, 33.0, 41.0, 50.0}) {
        const double m = predict(truth, p_nw * 1e-9, 0.01);
        d.points.push_back({p_nw * 1e-9, 0.01, std::clamp(m + 0.02 * gauss(rng), 0.0, 1.0), 0.02});
    }
    const auto fitp = fit_saturation(d);

    auto chi2_of = [&](double a, double b) {
        double s = 0.0;
        FitParams q;
        q.n2_sat = a;
        q.b_per_w = b;
        for (const auto& pt : d.points) {
            const double r = (pt.p2 - predict(q, pt.sun_power, pt.exposure)) / pt.stderr_p2;
            s += r * r;
        }
        return s;
    };
    const double c0 = chi2_of(fitp.n2_sat, fitp.b_per_w);
    const double da = 1e-7 * fitp.n2_sat, db = 1e-7 * fitp.b_per_w;
    const double ga = (chi2_of(fitp.n2_sat + da, fitp.b_per_w) -
                       chi2_of(fitp.n2_sat - da, fitp.b_per_w)) / (2 * da);
    const double gb = (chi2_of(fitp.n2_sat, fitp.b_per_w + db) -
                       chi2_of(fitp.n2_sat, fitp.b_per_w - db)) / (2 * db);
    CHECK(std::abs(ga * fitp.n2_sat) < 1e-5 * std::max(c0, 1.0));
    CHECK(std::abs(gb * fitp.b_per_w) < 1e-5 * std::max(c0, 1.0));

    // analytic model partials against central differences on a 10-point probe
    for (int i = 0; i < 10; ++i) {
        const double P = (2.0 + 5.0 * i) * 1e-9, t = 0.01;
        FitParams q = fitp;
        const double e = std::exp(-q.b_per_w * P * t);
        const double ja = 1.0 - e;
        const double jb = q.n2_sat * P * t * e;
        const double ja_fd = (predict({q.n2_sat + da, q.b_per_w, {}, 0, 0}, P, t) -
                              predict({q.n2_sat - da, q.b_per_w, {}, 0, 0}, P, t)) / (2 * da);
        const double jb_fd = (predict({q.n2_sat, q.b_per_w + db, {}, 0, 0}, P, t) -
                              predict({q.n2_sat, q.b_per_w - db, {}, 0, 0}, P, t)) / (2 * db);
        CHECK(ja == Approx(ja_fd).epsilon(1e-6));
        CHECK(jb == Approx(jb_fd).epsilon(1e-6));
    }
}

TEST_CASE("fit is invariant under point reordering") {
    std::mt19937_64 rng(7);
    std::normal_distribution<double> gauss;
    SaturationDataset d;
    FitParams truth;
    truth.n2_sat = 0.6;
    truth.b_per_w = 7.0e9;
    for (double p_nw : {2.0, 4.0, 9.0, 15.0, 24.0, 40.0})
        d.points.push_back({p_nw * 1e-9, 0.01,
                            std::clamp(predict(truth, p_nw * 1e-9, 0.01) + 0.03 * gauss(rng), 0.0, 1.0),
                            0.03});
    const auto a = fit_saturation(d);
    SaturationDataset shuffled = d;
    std::shuffle(shuffled.points.begin(), shuffled.points.end(), rng);
    const auto b = fit_saturation(shuffled);
    CHECK(a.n2_sat == Approx(b.n2_sat).epsilon(1e-10));
    CHECK(a.b_per_w == Approx(b.b_per_w).epsilon(1e-10));
}

TEST_CASE("common stderr rescaling leaves point estimates unchanged") {
    std::mt19937_64 rng(21);
    std::normal_distribution<double> gauss;
    SaturationDataset d;
    FitParams truth;
    truth.n2_sat = 0.66;
    truth.b_per_w = 9.0e9;
    for (double p_nw : {3.0, 7.0, 14.0, 22.0, 35.0, 50.0})
        d.points.push_back({p_nw * 1e-9, 0.01,
                            std::clamp(predict(truth, p_nw * 1e-9, 0.01) + 0.02 * gauss(rng), 0.0, 1.0),
                            0.02});
    const auto a = fit_saturation(d);
    SaturationDataset scaled = d;
    for (auto& p : scaled.points) p.stderr_p2 *= 3.0;
    const auto b = fit_saturation(scaled);
    CHECK(a.n2_sat == Approx(b.n2_sat).epsilon(1e-9));
    CHECK(a.b_per_w == Approx(b.b_per_w).epsilon(1e-9));
}

TEST_CASE("ingestion rejects bad datasets") {
    SaturationDataset zero_err;
    zero_err.points = {{1e-9, 0.01, 0.1, 0.0}, {2e-9, 0.01, 0.2, 0.01}, {9e-9, 0.01, 0.5, 0.01}};
    CHECK_THROWS_AS(zero_err.validate(), std::domain_error);

    SaturationDataset two_points;
    two_points.points = {{1e-9, 0.01, 0.1, 0.01}, {9e-9, 0.01, 0.5, 0.01}};
    CHECK_THROWS_AS(fit_saturation(two_points), std::invalid_argument);

    SaturationDataset degenerate;
    degenerate.points = {{5e-9, 0.01, 0.1, 0.01}, {5e-9, 0.01, 0.12, 0.01}, {5e-9, 0.01, 0.11, 0.01}};
    CHECK_THROWS_AS(fit_saturation(degenerate), std::runtime_error);

    SaturationDataset narrow;
    narrow.points = {{10e-9, 0.01, 0.3, 0.01}, {11e-9, 0.01, 0.32, 0.01}, {12e-9, 0.01, 0.34, 0.01}};
    CHECK_THROWS_AS(fit_saturation(narrow), std::invalid_argument);
}

TEST_CASE("dataset CSV round trip and header enforcement") {
    const auto d = noiseless(0.6, 8.0e9);
    std::ostringstream out;
    dataset_to_csv(d, out);
    std::istringstream in(out.str());
    const auto back = dataset_from_csv(in);
    REQUIRE(back.points.size() == d.points.size());
    for (std::size_t i = 0; i < d.points.size(); ++i) {
        CHECK(back.points[i].sun_power == Approx(d.points[i].sun_power).epsilon(1e-12));
        CHECK(back.points[i].p2 == Approx(d.points[i].p2).epsilon(1e-12));
    }
    std::istringstream bad("power,exp,p2,err\n1,10,0.1,0.01\n");
    CHECK_THROWS_WITH(dataset_from_csv(bad), Catch::Matchers::ContainsSubstring("line 1"));
    std::istringstream bad2("sun_power_nW,exposure_ms,p2,stderr\n1,10,zzz,0.01\n");
    CHECK_THROWS_WITH(dataset_from_csv(bad2), Catch::Matchers::ContainsSubstring("line 2"));
}

TEST_CASE("binomial noise study recovers the truth within errors") {
    // a light version of the full calibration study in the acceptance suite
    std::mt19937_64 rng(2024);
    FitParams truth;
    truth.n2_sat = 0.66;
    truth.b_per_w = 9.0e9;
    const int trials = 200;
    int ok = 0;
    const int reps = 20;
    for (int rep = 0; rep < reps; ++rep) {
        SaturationDataset d;
        for (double p_nw : {3.0, 6.0, 12.0, 18.0, 25.0, 33.0, 41.0, 50.0}) {
            const double m = predict(truth, p_nw * 1e-9, 0.01);
            std::binomial_distribution<int> bin(trials, m);
            const int k = bin(rng);
            const double phat = static_cast<double>(k) / trials;
            const double ptil = (k + 0.5) / (trials + 1.0);
            const double guard = (k == 0 || k == trials) ? ptil : phat;
            d.points.push_back(
                {p_nw * 1e-9, 0.01, phat, std::sqrt(guard * (1.0 - guard) / trials)});
        }
        const auto f = fit_saturation(d);
        if (std::abs(f.n2_sat - truth.n2_sat) <= 2.0 * f.stderr_n2_sat() &&
            std::abs(f.b_per_w - truth.b_per_w) <= 2.0 * f.stderr_b())
            ++ok;
    }
    CHECK(ok >= reps * 8 / 10);
}
