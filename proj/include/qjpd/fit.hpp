#ifndef QJPD_FIT_HPP
#define QJPD_FIT_HPP

#include <array>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace qjpd {

struct SaturationPoint {
    double sun_power = 0.0;  // W
    double exposure = 0.0;   // s
    double p2 = 0.0;
    double stderr_p2 = 0.0;
};

struct SaturationDataset {
    std::vector<SaturationPoint> points;
    std::string label;

    void validate() const {
        for (const auto& p : points) {
            if (!(p.stderr_p2 > 0.0))
                throw std::domain_error("SaturationDataset: stderr must be strictly positive");
            if (!(p.p2 >= 0.0 && p.p2 <= 1.0))
                throw std::domain_error("SaturationDataset: p2 must lie in [0, 1]");
            if (p.sun_power < 0.0 || !(p.exposure > 0.0))
                throw std::domain_error("SaturationDataset: invalid abscissa");
        }
    }
};

struct FitParams {
    double n2_sat = 0.0;
    double b_per_w = 0.0;  // 1/(s W)
    std::array<std::array<double, 2>, 2> cov{{{0.0, 0.0}, {0.0, 0.0}}};
    double chi2 = 0.0;
    int dof = 0;

    double stderr_n2_sat() const { return std::sqrt(cov[0][0]); }
    double stderr_b() const { return std::sqrt(cov[1][1]); }
};

// Forward model N2(P, t) = n2_sat (1 - exp(-b P t)).
inline double predict(const FitParams& params, double sun_power, double t) {
    if (sun_power < 0.0 || t < 0.0) throw std::domain_error("predict: inputs must be >= 0");
    return params.n2_sat * (1.0 - std::exp(-params.b_per_w * sun_power * t));
}

class FitError : public std::runtime_error {
  public:
    FitError(const std::string& msg, FitParams best)
        : std::runtime_error(msg), best_so_far(best) {}
    FitParams best_so_far;
};

namespace detail {

inline double fit_chi2(const SaturationDataset& d, double a, double b) {
    double s = 0.0;
    for (const auto& p : d.points) {
        const double r = (p.p2 - a * (1.0 - std::exp(-b * p.sun_power * p.exposure))) / p.stderr_p2;
        s += r * r;
    }
    return s;
}

}  // namespace detail

// Weighted least squares for the two-parameter saturation model, damped
// Gauss-Newton (Levenberg-style damping schedule). Covariance comes from the
// Jacobian at the optimum scaled by max(1, chi2/dof).
inline FitParams fit_saturation(const SaturationDataset& data,
                                const FitParams* init = nullptr) {
    data.validate();
    const auto& pts = data.points;
    if (pts.size() < 3)
        throw std::invalid_argument("fit_saturation: need at least 3 points");
    double xmin = 1e300, xmax = 0.0;
    for (const auto& p : pts) {
        const double x = p.sun_power * p.exposure;
        xmin = std::min(xmin, x);
        xmax = std::max(xmax, x);
    }
    if (!(xmax > 0.0) || xmax == xmin)
        throw std::runtime_error("fit_saturation: degenerate data (single abscissa), rank deficient");
    if (xmax < 3.0 * std::max(xmin, xmax * 1e-12))
        throw std::invalid_argument("fit_saturation: abscissa must span at least a factor 3");

    // initialization: plateau from the largest observation, rate from the
    // earliest rising point via log-linearization
    double a = 0.0, b = 0.0;
    if (init) {
        a = init->n2_sat;
        b = init->b_per_w;
    }
    if (!(a > 0.0)) {
        for (const auto& p : pts) a = std::max(a, p.p2);
        a = std::min(std::max(a, 1e-3), 1.0);
    }
    if (!(b > 0.0)) {
        for (const auto& p : pts) {
            const double x = p.sun_power * p.exposure;
            if (x > 0.0 && p.p2 > 0.0 && p.p2 < a) {
                b = -std::log(1.0 - p.p2 / a) / x;
                break;
            }
        }
        if (!(b > 0.0)) b = 1.0 / xmax;
    }

    double lambda = 1e-3;
    double chi2 = detail::fit_chi2(data, a, b);
    bool converged = false;
    for (int iter = 0; iter < 200 && !converged; ++iter) {
        double jaa = 0.0, jab = 0.0, jbb = 0.0, ga = 0.0, gb = 0.0;
        for (const auto& p : pts) {
            const double x = p.sun_power * p.exposure;
            const double e = std::exp(-b * x);
            const double m = a * (1.0 - e);
            const double ja = (1.0 - e) / p.stderr_p2;
            const double jb = a * x * e / p.stderr_p2;
            const double r = (p.p2 - m) / p.stderr_p2;
            jaa += ja * ja;
            jab += ja * jb;
            jbb += jb * jb;
            ga += ja * r;
            gb += jb * r;
        }
        double da = 0.0, db = 0.0;
        bool accepted = false;
        for (int k = 0; k < 60; ++k) {
            const double maa = jaa * (1.0 + lambda), mbb = jbb * (1.0 + lambda);
            const double det = maa * mbb - jab * jab;
            if (det == 0.0) {
                lambda *= 10.0;
                continue;
            }
            da = (mbb * ga - jab * gb) / det;
            db = (maa * gb - jab * ga) / det;
            const double an = a + da, bn = b + db;
            const double c2 = detail::fit_chi2(data, an, bn);
            if (std::isfinite(c2) && c2 <= chi2) {
                a = an;
                b = bn;
                chi2 = c2;
                lambda = std::max(lambda * 0.3, 1e-12);
                accepted = true;
                break;
            }
            lambda *= 10.0;
        }
        if (!accepted) break;
        const double rel = std::max(std::abs(da) / std::max(std::abs(a), 1e-12),
                                    std::abs(db) / std::max(std::abs(b), 1e-12));
        if (rel < 1e-8) converged = true;
    }

    FitParams out;
    out.n2_sat = a;
    out.b_per_w = b;
    out.chi2 = chi2;
    out.dof = static_cast<int>(pts.size()) - 2;

    double jaa = 0.0, jab = 0.0, jbb = 0.0;
    for (const auto& p : pts) {
        const double x = p.sun_power * p.exposure;
        const double e = std::exp(-b * x);
        const double ja = (1.0 - e) / p.stderr_p2;
        const double jb = a * x * e / p.stderr_p2;
        jaa += ja * ja;
        jab += ja * jb;
        jbb += jb * jb;
    }
    const double det = jaa * jbb - jab * jab;
    if (!(det > 0.0))
        throw std::runtime_error("fit_saturation: singular normal equations, rank deficient");
    const double scale = (out.dof > 0) ? std::max(1.0, chi2 / out.dof) : 1.0;
    out.cov[0][0] = jbb / det * scale;
    out.cov[1][1] = jaa / det * scale;
    out.cov[0][1] = out.cov[1][0] = -jab / det * scale;

    if (!converged)
        throw FitError("fit_saturation: no convergence within the iteration cap", out);
    return out;
}

// --- dataset CSV: sun_power_nW,exposure_ms,p2,stderr ---

inline SaturationDataset dataset_from_csv(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("dataset CSV: empty file");
    auto strip = [](std::string s) {
        s.erase(0, s.find_first_not_of(" \t\r"));
        s.erase(s.find_last_not_of(" \t\r") + 1);
        return s;
    };
    if (strip(line) != "sun_power_nW,exposure_ms,p2,stderr")
        throw std::runtime_error("dataset CSV line 1: expected header "
                                 "'sun_power_nW,exposure_ms,p2,stderr'");
    SaturationDataset d;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (strip(line).empty()) continue;
        std::istringstream ss(line);
        std::string f[4];
        for (int i = 0; i < 4; ++i)
            if (!std::getline(ss, f[i], i == 3 ? '\n' : ','))
                throw std::runtime_error("dataset CSV line " + std::to_string(lineno) +
                                         ": expected four comma-separated fields");
        try {
            SaturationPoint p;
            p.sun_power = std::stod(strip(f[0])) * 1e-9;
            p.exposure = std::stod(strip(f[1])) * 1e-3;
            p.p2 = std::stod(strip(f[2]));
            p.stderr_p2 = std::stod(strip(f[3]));
            d.points.push_back(p);
        } catch (const std::exception&) {
            throw std::runtime_error("dataset CSV line " + std::to_string(lineno) +
                                     ": could not parse numbers");
        }
    }
    d.validate();
    return d;
}

inline SaturationDataset dataset_from_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("dataset CSV: cannot open " + path);
    return dataset_from_csv(in);
}

inline void dataset_to_csv(const SaturationDataset& d, std::ostream& out) {
    out << "sun_power_nW,exposure_ms,p2,stderr\n";
    out.precision(17);
    for (const auto& p : d.points)
        out << p.sun_power * 1e9 << ',' << p.exposure * 1e3 << ',' << p.p2 << ','
            << p.stderr_p2 << '\n';
}

}  // namespace qjpd

#endif
