#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>

namespace oracle {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();
constexpr double pi = std::numbers::pi;
constexpr double quad_tol = 1e-13;

double lgam(double x) { return std::lgamma(x); }

double sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

double log_fact_sum(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += lgam(x + 1.0);
    return s;
}

// Lentz evaluation of the continued fraction for I_x(a,b), valid for x < (a+1)/(a+b+2).
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double c = 1.0, d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 10000; ++m) {
        double m2 = 2.0 * m;
        double aa = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + aa * d;
        if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + aa / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h;
}

template <class Cdf>
double bisect(Cdf cdf, double p, double hi) {
    while (cdf(hi) < p) hi *= 2.0;
    double lo = 0.0;
    for (int i = 0; i < 300 && hi - lo > 1e-15 * hi; ++i) {
        double mid = 0.5 * (lo + hi);
        (cdf(mid) < p ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

// log of the integral over the real line of exp(logf), peaked near `center` with scale `width`.
double log_integrate_line(const std::function<double(double)>& logf, double center, double width) {
    const double shift = logf(center);
    boost::math::quadrature::tanh_sinh<double> ts;
    auto f = [&](double x) { return std::exp(logf(x) - shift); };
    const double L = 40.0 * width;
    double total = ts.integrate(f, center - L, center, quad_tol) + ts.integrate(f, center, center + L, quad_tol);
    return shift + std::log(total);
}

}  // namespace

double gamma_p(double a, double x) {
    if (x <= 0.0) return 0.0;
    const double lead = a * std::log(x) - x - lgam(a);
    if (x < a + 1.0) {
        double term = 1.0 / a, acc = term;
        for (int k = 1; k < 100000; ++k) {
            term *= x / (a + k);
            acc += term;
            if (term < acc * 1e-17) break;
        }
        return std::exp(lead) * acc;
    }
    const double tiny = 1e-300;
    double b = x + 1.0 - a, c = 1.0 / tiny, d = 1.0 / b, h = d;
    for (int i = 1; i < 100000; ++i) {
        double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return 1.0 - std::exp(lead) * h;
}

double inc_beta(double a, double b, double x) {
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double lead = lgam(a + b) - lgam(a) - lgam(b) + a * std::log(x) + b * std::log1p(-x);
    if (x < (a + 1.0) / (a + b + 2.0)) return std::exp(lead) * beta_cf(a, b, x) / a;
    return 1.0 - std::exp(lead) * beta_cf(b, a, 1.0 - x) / b;
}

double chi2_quantile(double p, int dof) {
    return bisect([dof](double x) { return gamma_p(0.5 * dof, 0.5 * x); }, p, 1.0);
}

double f_quantile(double p, int d1, int d2) {
    return bisect([d1, d2](double x) { return inc_beta(0.5 * d1, 0.5 * d2, d1 * x / (d1 * x + d2)); }, p, 1.0);
}

double log_integrate(const std::function<double(double)>& logf, double lo, double hi, double mode) {
    const double shift = logf(mode);
    auto f = [&](double x) {
        double v = logf(x) - shift;
        return std::isfinite(v) ? std::exp(v) : 0.0;
    };
    double total = 0.0;
    if (mode > lo) {
        boost::math::quadrature::tanh_sinh<double> ts;
        total += ts.integrate(f, lo, mode, quad_tol);
    }
    if (std::isinf(hi)) {
        boost::math::quadrature::exp_sinh<double> es;
        total += es.integrate([&](double t) { return f(mode + t); }, 0.0, inf, quad_tol);
    } else if (hi > mode) {
        boost::math::quadrature::tanh_sinh<double> ts;
        total += ts.integrate(f, mode, hi, quad_tol);
    }
    return shift + std::log(total);
}

double exp_log_m1(const obf::Sample& y) {
    const double n = static_cast<double>(y.size()), s = sum(y.values);
    return log_integrate([&](double l) { return (n - 1.0) * std::log(l) - l * s; }, 0.0, inf, std::max(n - 1.0, 0.5) / s);
}

double exp_trained_log_bf01(const obf::Sample& y, std::size_t ell, double lambda0) {
    const double n = static_cast<double>(y.size()), s = sum(y.values), yl = y.values[ell];
    const double rest = s - yl;
    // Posterior under 1/lambda given y(l) is proportional to exp(-lambda y(l)).
    double log_z = log_integrate([&](double l) { return -l * yl; }, 0.0, inf, 0.0);
    double log_m1 = log_integrate([&](double l) { return (n - 1.0) * std::log(l) - l * rest - l * yl; }, 0.0, inf,
                                  (n - 1.0) / s) -
                    log_z;
    double log_m0 = (n - 1.0) * std::log(lambda0) - lambda0 * rest;
    return log_m0 - log_m1;
}

double poisson_log_m(const obf::Sample& y) {
    const double n = static_cast<double>(y.size()), s = sum(y.values);
    return log_integrate([&](double l) { return (s - 0.5) * std::log(l) - n * l; }, 0.0, inf, std::max(s - 0.5, 0.5) / n) -
           log_fact_sum(y.values);
}

double geometric_log_m(const obf::Sample& y) {
    const double n = static_cast<double>(y.size()), s = sum(y.values);
    const double mode = std::clamp((n - 1.0) / (n + s - 1.5), 0.05, 0.95);
    return log_integrate([&](double t) { return (n - 1.0) * std::log(t) + (s - 0.5) * std::log1p(-t); }, 0.0, 1.0, mode);
}

double negbin_log_m(const obf::Sample& y, int r) {
    const double n = static_cast<double>(y.size()), s = sum(y.values), rr = r;
    double log_comb = 0.0;
    for (double v : y.values) log_comb += lgam(v + rr) - lgam(v + 1.0) - lgam(rr);
    const double mode = std::clamp((n * rr - 0.5) / (n * rr + s - 1.5), 0.05, 0.95);
    return log_comb + 0.5 * std::log(rr) +
           log_integrate([&](double t) { return (n * rr - 0.5) * std::log(t) + (s - 1.0) * std::log1p(-t); }, 0.0, 1.0, mode);
}

double pg_trained_log_bf01(const obf::Sample& y, std::size_t ell) {
    obf::Sample one{{y.values[ell]}, ""};
    return (poisson_log_m(y) - poisson_log_m(one)) - (geometric_log_m(y) - geometric_log_m(one));
}

double scale_log_m0(const obf::Sample& y, double h0) {
    const double n = static_cast<double>(y.size());
    const double ybar = sum(y.values) / n;
    auto logf = [&](double mu) {
        double ss = 0.0;
        for (double v : y.values) ss += (v - mu) * (v - mu);
        return 0.5 * n * std::log(h0 / (2.0 * pi)) - 0.5 * h0 * ss;
    };
    return log_integrate_line(logf, ybar, 1.0 / std::sqrt(n * h0));
}

double scale_log_m1(const obf::Sample& y) {
    const double n = static_cast<double>(y.size());
    const double ybar = sum(y.values) / n;
    double s2 = 0.0;
    for (double v : y.values) s2 += (v - ybar) * (v - ybar);
    // Inner integral over mu for fixed h, prior 1/h on h and flat on mu.
    auto inner = [&](double h) {
        auto logf = [&](double mu) {
            double ss = 0.0;
            for (double v : y.values) ss += (v - mu) * (v - mu);
            // never above the peak; rounding in ss - s2 would otherwise blow up for large h
            return std::min(0.0, -0.5 * h * (ss - s2));
        };
        if (!(h > 0.0)) return -inf;
        return -std::log(h) + 0.5 * n * std::log(h / (2.0 * pi)) - 0.5 * h * s2 +
               log_integrate_line(logf, ybar, 1.0 / std::sqrt(n * h));
    };
    return log_integrate(inner, 0.0, inf, std::max(n - 3.0, 0.5) / s2);
}

double scale_trained_log_bf01(const obf::Sample& y, std::size_t i, std::size_t j, double h0) {
    obf::Sample pair{{y.values[i], y.values[j]}, ""};
    return (scale_log_m0(y, h0) - scale_log_m0(pair, h0)) - (scale_log_m1(y) - scale_log_m1(pair));
}

double mean_unknown_log_m0(const obf::Sample& y, double mu0) {
    const double n = static_cast<double>(y.size());
    double ss = 0.0;
    for (double v : y.values) ss += (v - mu0) * (v - mu0);
    auto logf = [&](double sigma) {
        return -std::log(sigma) - 0.5 * n * std::log(2.0 * pi * sigma * sigma) - ss / (2.0 * sigma * sigma);
    };
    return log_integrate(logf, 0.0, inf, std::sqrt(ss / n));
}

double mean_unknown_log_m1(const obf::Sample& y) {
    const double n = static_cast<double>(y.size());
    const double ybar = sum(y.values) / n;
    double s2 = 0.0;
    for (double v : y.values) s2 += (v - ybar) * (v - ybar);
    auto outer = [&](double sigma) {
        auto logf = [&](double mu) {
            double ss = 0.0;
            for (double v : y.values) ss += (v - mu) * (v - mu);
            return std::min(0.0, -(ss - s2) / (2.0 * sigma * sigma));
        };
        if (!(sigma > 0.0)) return -inf;
        return -2.0 * std::log(sigma) - 0.5 * n * std::log(2.0 * pi * sigma * sigma) - s2 / (2.0 * sigma * sigma) +
               log_integrate_line(logf, ybar, sigma / std::sqrt(n));
    };
    return log_integrate(outer, 0.0, inf, std::sqrt(s2 / n));
}

double linear_log_m(const Eigen::MatrixXd& A, const Eigen::VectorXd& y, int q) {
    const double n = static_cast<double>(A.rows()), p = static_cast<double>(A.cols());
    Eigen::MatrixXd gram = A.transpose() * A;
    Eigen::VectorXd theta = gram.ldlt().solve(A.transpose() * y);
    const double R = (y - A * theta).squaredNorm();
    const double log_det = std::log(gram.determinant());
    auto logf = [&](double sigma) {
        return -(1.0 + q) * std::log(sigma) - 0.5 * (n - p) * std::log(2.0 * pi * sigma * sigma) - R / (2.0 * sigma * sigma);
    };
    return -0.5 * log_det + log_integrate(logf, 0.0, inf, std::sqrt(R / (n - p + q + 1.0)));
}

std::vector<double> exp_data(std::size_t n, double rate, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::exponential_distribution<double> d(rate);
    std::vector<double> out(n);
    for (auto& v : out) v = d(g);
    return out;
}

std::vector<double> normal_data(std::size_t n, double mean, double sd, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::normal_distribution<double> d(mean, sd);
    std::vector<double> out(n);
    for (auto& v : out) v = d(g);
    return out;
}

std::vector<double> poisson_data(std::size_t n, double lambda, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::poisson_distribution<int> d(lambda);
    std::vector<double> out(n);
    for (auto& v : out) v = d(g);
    return out;
}

std::vector<double> geometric_data(std::size_t n, double prob, std::uint64_t seed) {
    std::mt19937_64 g(seed);
    std::geometric_distribution<int> d(prob);
    std::vector<double> out(n);
    for (auto& v : out) v = d(g);
    return out;
}

double rel_err_log(double a, double b) { return std::abs(std::expm1(a - b)); }

}  // namespace oracle
