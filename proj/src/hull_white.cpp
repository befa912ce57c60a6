#include "fvawwr/hull_white.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

namespace {

// Below this a*tau the bracket in the variance cancels badly; use the series.
constexpr double kSeriesSwitch = 0.05;

// (1 - e^{-x}) / x
double one_minus_exp_over(double x) {
    if (x == 0.0) return 1.0;
    return -std::expm1(-x) / x;
}

}  // namespace

double hw_b(double a, double tau) { return tau * one_minus_exp_over(a * tau); }

double hw_integral_variance(double a, double sigma, double tau) {
    if (tau <= 0.0) return 0.0;
    double x = a * tau;
    if (x < kSeriesSwitch) {
        // sigma^2 tau^3 sum_{k>=2} (-x)^{k-2} (2^k - 2) / (k+1)!
        double sum = 0.0, xp = 1.0, fact = 6.0, pow2 = 4.0;
        for (int k = 2; k <= 14; ++k) {
            sum += xp * (pow2 - 2.0) / fact;
            xp *= -x;
            pow2 *= 2.0;
            fact *= (k + 2);
        }
        return sigma * sigma * tau * tau * tau * sum;
    }
    double bracket = tau - 2.0 * hw_b(a, tau) + hw_b(2.0 * a, tau);
    return sigma * sigma / (a * a) * bracket;
}

HullWhiteModel::HullWhiteModel(Curve curve, HullWhiteParams p) : curve_(std::move(curve)), p_(p) {
    if (!(p.a > 0.0)) throw Error(ErrorCode::DomainError, fmt::format("HW mean reversion a={} must be > 0", p.a));
    if (!(p.sigma >= 0.0)) throw Error(ErrorCode::DomainError, fmt::format("HW sigma={} must be >= 0", p.sigma));
    const double a = p.a, s = p.sigma;
    // the cumulative outlives this constructor, so it owns a copy of the curve
    shift_ = DeterministicShift(
        curve_.last_time(),
        [this, a, s](double t) {
            double bt = hw_b(a, t);
            return curve_.inst_forward(t) + 0.5 * s * s * bt * bt;
        },
        [c = curve_, a, s](double t) { return -std::log(c.df(t)) + 0.5 * hw_integral_variance(a, s, t); });
}

double HullWhiteModel::b(double t, double T) const { return hw_b(p_.a, T - t); }

double HullWhiteModel::log_a(double t, double T) const {
    if (T < t) throw Error(ErrorCode::TimeOrder, fmt::format("T={} < t={}", T, t));
    if (T == t) return 0.0;
    return -shift_.integral(t, T) + 0.5 * hw_integral_variance(p_.a, p_.sigma, T - t);
}

double HullWhiteModel::zcb(double t, double T, double x) const {
    if (T == t) return 1.0;
    return std::exp(log_a(t, T) - b(t, T) * x);
}

double HullWhiteModel::ou_mean_factor(double dt) const { return std::exp(-p_.a * dt); }

double HullWhiteModel::ou_stdev(double dt) const {
    // sigma^2 (1 - e^{-2a dt}) / 2a = sigma^2 dt * (1 - e^{-2a dt}) / (2a dt)
    return p_.sigma * std::sqrt(dt * one_minus_exp_over(2.0 * p_.a * dt));
}

}  // namespace fvawwr
