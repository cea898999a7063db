#ifndef QJPD_DYNAMICS_HPP
#define QJPD_DYNAMICS_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qjpd/random.hpp"
#include "qjpd/rates.hpp"

namespace qjpd {

struct PopulationState {
    double n2 = 0.0;
    double time = 0.0;
};

enum class GroundState : int { one = 1, two = 2 };

struct ShotRecord {
    std::int64_t trial_index = 0;
    GroundState end_state = GroundState::one;
    GroundState readout = GroundState::one;
    std::int64_t jump_count = 0;
    std::uint64_t seed_stream_id = 0;
};

struct ExperimentEstimate {
    double p2_hat = 0.0;
    double stderr_p2 = 0.0;
    std::int64_t trials = 0;
};

struct ReadoutErrors {
    double eps_12 = 0.0;  // P(readout = two | end state = one)
    double eps_21 = 0.0;  // P(readout = one | end state = two)
};

// Exact solution of dN2/dt = R12 (1 - N2) - R21 N2.
inline PopulationState n2_closed_form(const RateSet& rates, double t, double n2_initial = 0.0) {
    if (!(t >= 0.0)) throw std::domain_error("n2_closed_form: t >= 0 required");
    if (!(n2_initial >= 0.0 && n2_initial <= 1.0))
        throw std::domain_error("n2_closed_form: n2_initial must lie in [0, 1]");
    const double r12 = rates.total_12();
    const double total = r12 + rates.sun_21;
    if (total == 0.0) return {n2_initial, t};  // free evolution
    const double steady = r12 / total;
    return {steady + (n2_initial - steady) * std::exp(-total * t), t};
}

// Independent check of the closed form: adaptive embedded RK45 (Dormand-Prince)
// on the rate equation itself.
inline PopulationState n2_ode(const RateSet& rates, double t, double n2_initial = 0.0,
                              double tol = 1e-10) {
    if (!(t >= 0.0)) throw std::domain_error("n2_ode: t >= 0 required");
    if (!(n2_initial >= 0.0 && n2_initial <= 1.0))
        throw std::domain_error("n2_ode: n2_initial must lie in [0, 1]");
    if (!(tol > 0.0 && tol <= 1e-3)) throw std::domain_error("n2_ode: tol must lie in (0, 1e-3]");
    const double r12 = rates.total_12();
    const double r21 = rates.sun_21;
    auto deriv = [&](double n2) { return r12 * (1.0 - n2) - r21 * n2; };

    if (t == 0.0) return {n2_initial, 0.0};
    double x = 0.0, y = n2_initial;
    double h = std::min(t, (r12 + r21 > 0.0) ? 0.1 / (r12 + r21) : t);

    // Dormand-Prince 5(4) coefficients
    static const double a21 = 1.0 / 5.0;
    static const double a31 = 3.0 / 40.0, a32 = 9.0 / 40.0;
    static const double a41 = 44.0 / 45.0, a42 = -56.0 / 15.0, a43 = 32.0 / 9.0;
    static const double a51 = 19372.0 / 6561.0, a52 = -25360.0 / 2187.0,
                        a53 = 64448.0 / 6561.0, a54 = -212.0 / 729.0;
    static const double a61 = 9017.0 / 3168.0, a62 = -355.0 / 33.0, a63 = 46732.0 / 5247.0,
                        a64 = 49.0 / 176.0, a65 = -5103.0 / 18656.0;
    static const double b1 = 35.0 / 384.0, b3 = 500.0 / 1113.0, b4 = 125.0 / 192.0,
                        b5 = -2187.0 / 6784.0, b6 = 11.0 / 84.0;
    static const double e1 = 5179.0 / 57600.0, e3 = 7571.0 / 16695.0, e4 = 393.0 / 640.0,
                        e5 = -92097.0 / 339200.0, e6 = 187.0 / 2100.0, e7 = 1.0 / 40.0;

    const double local_tol = tol * 1e-2;
    while (x < t) {
        h = std::min(h, t - x);
        if (h < t * 1e-15 || h < 1e-300)
            throw std::runtime_error("n2_ode: step size underflow");
        const double k1 = deriv(y);
        const double k2 = deriv(y + h * a21 * k1);
        const double k3 = deriv(y + h * (a31 * k1 + a32 * k2));
        const double k4 = deriv(y + h * (a41 * k1 + a42 * k2 + a43 * k3));
        const double k5 = deriv(y + h * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const double k6 = deriv(y + h * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
        const double y5 = y + h * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const double k7 = deriv(y5);
        const double y4 = y + h * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
        const double err = std::abs(y5 - y4);
        if (err <= local_tol) {
            x += h;
            y = y5;
        }
        const double safety = (err > 0.0) ? 0.9 * std::pow(local_tol / err, 0.2) : 4.0;
        h *= std::clamp(safety, 0.2, 4.0);
    }
    return {std::clamp(y, 0.0, 1.0), t};
}

namespace detail {

inline ShotRecord run_one_trial(const RateSet& rates, double t_exposure, std::uint64_t seed,
                                std::int64_t trial, const ReadoutErrors& err) {
    SplitMix64 rng = substream(seed, static_cast<std::uint64_t>(trial));
    ShotRecord rec;
    rec.trial_index = trial;
    rec.seed_stream_id = mix64(seed ^ mix64(static_cast<std::uint64_t>(trial) +
                                            0x9e3779b97f4a7c15ULL));
    GroundState state = GroundState::one;
    double now = 0.0;
    while (true) {
        const double rate = (state == GroundState::one) ? rates.total_12() : rates.sun_21;
        if (!(rate > 0.0)) break;
        now += rng.exponential(rate);
        if (now >= t_exposure) break;
        state = (state == GroundState::one) ? GroundState::two : GroundState::one;
        ++rec.jump_count;
    }
    rec.end_state = state;
    const double u = rng.uniform();
    rec.readout = rec.end_state;
    if (rec.end_state == GroundState::one && u <= err.eps_12) rec.readout = GroundState::two;
    if (rec.end_state == GroundState::two && u <= err.eps_21) rec.readout = GroundState::one;
    return rec;
}

}  // namespace detail

// Event-driven two-state Markov chain, one exposure per trial, starting in |1>.
// Deterministic for fixed (seed, trials) under any thread partitioning since
// every trial draws from its own (seed, trial_index) substream.
inline std::vector<ShotRecord> simulate_shots(const RateSet& rates, double t_exposure,
                                              std::int64_t trials, std::uint64_t seed,
                                              ReadoutErrors readout_errors = {},
                                              unsigned n_threads = 1) {
    if (trials < 1) throw std::domain_error("simulate_shots: trials >= 1 required");
    if (!(t_exposure >= 0.0)) throw std::domain_error("simulate_shots: t_exposure >= 0 required");
    for (double e : {readout_errors.eps_12, readout_errors.eps_21})
        if (!(e >= 0.0 && e < 0.5))
            throw std::domain_error("simulate_shots: readout errors must lie in [0, 0.5)");

    std::vector<ShotRecord> shots(static_cast<std::size_t>(trials));
    auto work = [&](std::int64_t begin, std::int64_t end) {
        for (std::int64_t i = begin; i < end; ++i)
            shots[static_cast<std::size_t>(i)] =
                detail::run_one_trial(rates, t_exposure, seed, i, readout_errors);
    };
    if (n_threads <= 1 || trials < 256) {
        work(0, trials);
    } else {
        const unsigned nt = std::min<unsigned>(n_threads, std::thread::hardware_concurrency());
        std::vector<std::thread> pool;
        const std::int64_t chunk = (trials + nt - 1) / nt;
        for (unsigned th = 0; th < nt; ++th) {
            const std::int64_t b = th * chunk;
            const std::int64_t e = std::min<std::int64_t>(b + chunk, trials);
            if (b >= e) break;
            pool.emplace_back(work, b, e);
        }
        for (auto& th : pool) th.join();
    }
    return shots;
}

inline ExperimentEstimate estimate(const std::vector<ShotRecord>& shots) {
    if (shots.empty()) throw std::domain_error("estimate: empty shot list");
    std::int64_t twos = 0;
    for (const auto& s : shots)
        if (s.readout == GroundState::two) ++twos;
    ExperimentEstimate est;
    est.trials = static_cast<std::int64_t>(shots.size());
    est.p2_hat = static_cast<double>(twos) / static_cast<double>(est.trials);
    est.stderr_p2 = std::sqrt(est.p2_hat * (1.0 - est.p2_hat) / static_cast<double>(est.trials));
    return est;
}

// Shot export: trial,end_state,readout,jump_count
inline void shots_to_csv(const std::vector<ShotRecord>& shots, std::ostream& out) {
    out << "trial,end_state,readout,jump_count\n";
    for (const auto& s : shots)
        out << s.trial_index << ',' << static_cast<int>(s.end_state) << ','
            << static_cast<int>(s.readout) << ',' << s.jump_count << '\n';
}

}  // namespace qjpd

#endif
