#ifndef QJPD_INTEGRATE_HPP
#define QJPD_INTEGRATE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace qjpd {

// Neumaier compensated sum; keeps panel sums deterministic and accurate.
class CompensatedSum {
  public:
    void add(double v) {
        double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// 15-point Gauss-Legendre nodes/weights on [-1, 1].
inline const std::vector<double>& gl15_nodes() {
    static const std::vector<double> x = {
        -0.9879925180204854, -0.9372733924007060, -0.8482065834104272,
        -0.7244177313601701, -0.5709721726085388, -0.3941513470775634,
        -0.2011940939974345, 0.0,                 0.2011940939974345,
        0.3941513470775634,  0.5709721726085388,  0.7244177313601701,
        0.8482065834104272,  0.9372733924007060,  0.9879925180204854};
    return x;
}
inline const std::vector<double>& gl15_weights() {
    static const std::vector<double> w = {
        0.0307532419961173, 0.0703660474881081, 0.1071592204671719,
        0.1395706779261543, 0.1662692058169939, 0.1861610000155622,
        0.1984314853271116, 0.2025782419255613, 0.1984314853271116,
        0.1861610000155622, 0.1662692058169939, 0.1395706779261543,
        0.1071592204671719, 0.0703660474881081, 0.0307532419961173};
    return w;
}

// Composite Gauss-Legendre over a sorted breakpoint grid.
template <typename F>
double integrate_panels(F&& f, const std::vector<double>& pts) {
    if (pts.size() < 2) return 0.0;
    const auto& xs = gl15_nodes();
    const auto& ws = gl15_weights();
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        const double mid = 0.5 * (pts[i] + pts[i + 1]);
        const double half = 0.5 * (pts[i + 1] - pts[i]);
        if (half <= 0.0) continue;
        CompensatedSum panel;
        for (std::size_t k = 0; k < xs.size(); ++k)
            panel.add(ws[k] * f(mid + half * xs[k]));
        acc.add(half * panel.value());
    }
    return acc.value();
}

// Adaptive Simpson with absolute+relative control.
namespace detail {
template <typename F>
double simpson_step(F&& f, double a, double fa, double b, double fb, double m, double fm,
                    double whole, double tol, int depth) {
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0) return left + right + delta / 15.0;
    if (std::abs(delta) <= 15.0 * tol) return left + right + delta / 15.0;
    return simpson_step(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1) +
           simpson_step(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1);
}
}  // namespace detail

template <typename F>
double integrate_adaptive(F&& f, double a, double b, double rel_tol = 1e-10, int max_depth = 48) {
    if (!(b > a)) throw std::invalid_argument("integrate_adaptive: requires b > a");
    // coarse scan for a scale estimate; log-spaced when the domain spans decades
    double scale = 0.0;
    const int n = 128;
    const bool log_scan = a > 0.0 && b / a > 50.0;
    for (int i = 0; i <= n; ++i) {
        const double x = log_scan ? a * std::pow(b / a, static_cast<double>(i) / n)
                                  : a + (b - a) * i / n;
        scale = std::max(scale, std::abs(f(x)));
    }
    const double tol = std::max(scale * (b - a) * rel_tol, 1e-300);
    const double m = 0.5 * (a + b);
    const double fa = f(a), fb = f(b), fm = f(m);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return detail::simpson_step(f, a, fa, b, fb, m, fm, whole, tol, max_depth);
}

// Trapezoid rule over tabulated samples (x ascending).
inline double trapezoid(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2)
        throw std::invalid_argument("trapezoid: need >= 2 matching samples");
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        acc.add(0.5 * (y[i] + y[i + 1]) * (x[i + 1] - x[i]));
    return acc.value();
}

}  // namespace qjpd

#endif
