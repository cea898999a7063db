#ifndef QJPD_ANGULAR_HPP
#define QJPD_ANGULAR_HPP

#include <array>
#include <cmath>
#include <stdexcept>

namespace qjpd {

// Angular momenta are passed as doubled integers so half-integers stay exact.

namespace detail {

inline double factorial(int n) {
    static const auto table = [] {
        std::array<double, 171> t{};
        t[0] = 1.0;
        for (int i = 1; i < 171; ++i) t[i] = t[i - 1] * i;
        return t;
    }();
    if (n < 0 || n >= 171) throw std::domain_error("factorial: argument out of range");
    return table[static_cast<std::size_t>(n)];
}

inline bool triangle_ok(int ta, int tb, int tc) {
    return tc >= std::abs(ta - tb) && tc <= ta + tb && (ta + tb + tc) % 2 == 0;
}

inline double triangle_coef(int ta, int tb, int tc) {
    return std::sqrt(factorial((ta + tb - tc) / 2) * factorial((ta - tb + tc) / 2) *
                     factorial((-ta + tb + tc) / 2) / factorial((ta + tb + tc) / 2 + 1));
}

}  // namespace detail

// Wigner 6j symbol {j1 j2 j3; j4 j5 j6} via the Racah sum formula.
// Returns 0 for triangle-rule violations.
inline double wigner_6j_twice(int tj1, int tj2, int tj3, int tj4, int tj5, int tj6) {
    using detail::factorial;
    using detail::triangle_coef;
    using detail::triangle_ok;
    if (!triangle_ok(tj1, tj2, tj3) || !triangle_ok(tj1, tj5, tj6) ||
        !triangle_ok(tj4, tj2, tj6) || !triangle_ok(tj4, tj5, tj3))
        return 0.0;

    const double pref = triangle_coef(tj1, tj2, tj3) * triangle_coef(tj1, tj5, tj6) *
                        triangle_coef(tj4, tj2, tj6) * triangle_coef(tj4, tj5, tj3);

    const int a1 = (tj1 + tj2 + tj3) / 2;
    const int a2 = (tj1 + tj5 + tj6) / 2;
    const int a3 = (tj4 + tj2 + tj6) / 2;
    const int a4 = (tj4 + tj5 + tj3) / 2;
    const int b1 = (tj1 + tj2 + tj4 + tj5) / 2;
    const int b2 = (tj2 + tj3 + tj5 + tj6) / 2;
    const int b3 = (tj3 + tj1 + tj6 + tj4) / 2;

    const int tmin = std::max(std::max(a1, a2), std::max(a3, a4));
    const int tmax = std::min(b1, std::min(b2, b3));

    double sum = 0.0;
    for (int t = tmin; t <= tmax; ++t) {
        const double term = factorial(t + 1) /
                            (factorial(t - a1) * factorial(t - a2) * factorial(t - a3) *
                             factorial(t - a4) * factorial(b1 - t) * factorial(b2 - t) *
                             factorial(b3 - t));
        sum += (t % 2 == 0) ? term : -term;
    }
    return pref * sum;
}

inline double wigner_6j(double j1, double j2, double j3, double j4, double j5, double j6) {
    auto tw = [](double j) {
        const int t = static_cast<int>(std::lround(2.0 * j));
        if (t < 0 || std::abs(2.0 * j - t) > 1e-9)
            throw std::domain_error("wigner_6j: arguments must be non-negative half-integers");
        return t;
    };
    return wigner_6j_twice(tw(j1), tw(j2), tw(j3), tw(j4), tw(j5), tw(j6));
}

}  // namespace qjpd

#endif
