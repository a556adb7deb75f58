#include "obf/prior.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "obf/core.hpp"
#include "obf/specialfn.hpp"

namespace obf {

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;
}  // namespace

double PriorDensity::operator()(double x) const {
    return std::visit(
        overloaded{
            [x](const GammaHalf& g) {
                if (x <= 0.0) return 0.0;
                return std::exp(-x / (2.0 * g.h0)) / std::sqrt(2.0 * std::numbers::pi * x * g.h0);
            },
            [x](const SBeta2& s) {
                if (x <= 0.0) return 0.0;
                double t = x / s.b;
                double log_norm = ln_gamma(s.p + s.q) - ln_gamma(s.p) - ln_gamma(s.q) - std::log(s.b);
                return std::exp(log_norm + (s.p - 1.0) * std::log(t) - (s.p + s.q) * std::log1p(t));
            },
            [x](const CauchyLoc& c) {
                double d = x - c.center;
                return std::sqrt(c.scale_sq) / (std::numbers::pi * (c.scale_sq + d * d));
            },
            [x](const ExponentialRate& e) {
                if (x < 0.0) return 0.0;
                return e.rate * std::exp(-e.rate * x);
            },
            [](const Flat&) { return 1.0; },
        },
        family);
}

double PriorDensity::support_lower() const {
    return std::visit(overloaded{[](const CauchyLoc&) { return -inf; }, [](const Flat&) { return -inf; },
                                 [](const auto&) { return 0.0; }},
                      family);
}

double PriorDensity::support_upper() const { return inf; }

bool PriorDensity::proper() const { return !std::holds_alternative<Flat>(family); }

std::string PriorDensity::describe() const {
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const GammaHalf& g) { os << "Gamma(shape=1/2, scale=" << 2.0 * g.h0 << ")"; },
                   [&](const SBeta2& s) { os << "SBeta2(p=" << s.p << ", q=" << s.q << ", b=" << s.b << ")"; },
                   [&](const CauchyLoc& c) { os << "Cauchy(center=" << c.center << ", scale=" << std::sqrt(c.scale_sq) << ")"; },
                   [&](const ExponentialRate& e) { os << "Exponential(rate=" << e.rate << ")"; },
                   [&](const Flat&) { os << "Flat"; },
               },
               family);
    return os.str();
}

}  // namespace obf
