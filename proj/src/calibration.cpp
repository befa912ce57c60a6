#include "fvawwr/calibration.hpp"

#include <cmath>
#include <algorithm>
#include <cstdint>
#include <limits>
#include <numbers>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

namespace {

double norm_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }
double norm_pdf(double x) { return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi); }

constexpr double kSigmaLo = 1e-6;
constexpr double kSigmaHi = 0.2;
constexpr double kThetaLo = 1e-8;
constexpr double kThetaHi = 2.0;
// b_z below -kShiftNoise counts as negative; smaller values are rounding.
constexpr double kShiftNoise = 1e-12;

void check_spec(const SwaptionSpec& s) {
    if (!(s.expiry > 0.0) || !(s.tenor > 0.0) || !(s.vol_quote > 0.0))
        throw Error(ErrorCode::DomainError, "swaption expiry, tenor and vol must be positive");
    if (std::abs(s.tenor - std::round(s.tenor)) > 1e-12)
        throw Error(ErrorCode::DomainError, "swaption tenor must be a whole number of years");
}

template <class F>
double solve_bracketed(F f, double lo, double hi) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return lo;
    if (fhi == 0.0) return hi;
    if ((flo < 0.0) == (fhi < 0.0))
        throw Error(ErrorCode::NoRoot, fmt::format("no sign change on [{}, {}]", lo, hi));
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi, boost::math::tools::eps_tolerance<double>(52),
                                               iters);
    return 0.5 * (r.first + r.second);
}

}  // namespace

SwapRateInfo forward_swap_rate(const Curve& curve, double expiry, double tenor) {
    int n = static_cast<int>(std::lround(tenor));
    double ann = 0.0;
    for (int i = 1; i <= n; ++i) ann += curve.df(expiry + i);
    return {(curve.df(expiry) - curve.df(expiry + n)) / ann, ann};
}

double market_swaption_price(const Curve& curve, const SwaptionSpec& spec) {
    check_spec(spec);
    auto [fwd, ann] = forward_swap_rate(curve, spec.expiry, spec.tenor);
    double sd = spec.vol_quote * std::sqrt(spec.expiry);
    if (spec.convention == VolConvention::Normal) {
        // ATM Bachelier
        return ann * sd * norm_pdf(0.0);
    }
    double f = fwd + spec.shift;
    if (!(f > 0.0))
        throw Error(ErrorCode::DomainError,
                    fmt::format("lognormal quote needs forward + shift > 0 (forward {}, shift {})", fwd, spec.shift));
    double d1 = 0.5 * sd;
    return ann * f * (norm_cdf(d1) - norm_cdf(-d1));
}

double hw_swaption_price(const HullWhiteModel& model, double expiry, double tenor, double strike) {
    const auto& p = model.params();
    int n = static_cast<int>(std::lround(tenor));
    std::vector<double> times, coupons;
    for (int i = 1; i <= n; ++i) {
        times.push_back(expiry + i);
        coupons.push_back(strike + (i == n ? 1.0 : 0.0));
    }
    // x* with sum c_i P(T0, T_i; x*) = 1
    auto bond = [&](double x) {
        double s = 0.0;
        for (std::size_t i = 0; i < times.size(); ++i) s += coupons[i] * model.zcb(expiry, times[i], x);
        return s - 1.0;
    };
    double lo = -0.5, hi = 0.5;
    while (bond(lo) < 0.0 && lo > -100.0) lo *= 2.0;
    while (bond(hi) > 0.0 && hi < 100.0) hi *= 2.0;
    double xstar = solve_bracketed(bond, lo, hi);

    double var_x = p.sigma * p.sigma * hw_b(2.0 * p.a, expiry);  // sigma^2 (1 - e^{-2aT0}) / 2a
    double p0 = model.curve().df(expiry);
    double price = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        double strike_i = model.zcb(expiry, times[i], xstar);
        double pi = model.curve().df(times[i]);
        double sp = std::sqrt(var_x) * model.b(expiry, times[i]);
        if (sp <= 0.0) {
            price += coupons[i] * std::max(strike_i * p0 - pi, 0.0);
            continue;
        }
        double h = std::log(pi / (strike_i * p0)) / sp + 0.5 * sp;
        price += coupons[i] * (strike_i * p0 * norm_cdf(-h + sp) - pi * norm_cdf(-h));
    }
    return price;
}

HwCalibration calibrate_hw_sigma(const Curve& curve, double a, const SwaptionSpec& spec) {
    check_spec(spec);
    if (!(a > 0.0)) throw Error(ErrorCode::DomainError, "mean reversion must be positive");
    double fwd = forward_swap_rate(curve, spec.expiry, spec.tenor).forward;
    double target = market_swaption_price(curve, spec);
    auto diff = [&](double s) {
        return hw_swaption_price(HullWhiteModel(curve, {a, s, 0.0}), spec.expiry, spec.tenor, fwd) - target;
    };
    // Grow the bracket from below: at the top of [1e-6, 0.2] a 30y horizon
    // makes the Jamshidian terms overflow into cancellation noise.
    double lo = kSigmaLo, hi = std::min(1e-3, kSigmaHi);
    while (diff(hi) < 0.0) {
        if (hi >= kSigmaHi) throw Error(ErrorCode::NoRoot, "quote above the HW price at sigma = 0.2");
        lo = hi;
        hi = std::min(2.0 * hi, kSigmaHi);
    }
    double sigma = solve_bracketed(diff, lo, hi);
    HullWhiteModel m(curve, {a, sigma, 0.0});
    return {sigma, target, hw_swaption_price(m, spec.expiry, spec.tenor, fwd), fwd};
}

CirThetaCalibration calibrate_cir_theta(const Curve& curve, double x0, double a, double sigma) {
    double f0 = curve.inst_forward(0.0);
    if (x0 > f0)
        throw Error(ErrorCode::PositivityViolation, fmt::format("x0={} exceeds f^M(0,0)={}", x0, f0));
    if (!(a > 0.0) || !(sigma > 0.0)) throw Error(ErrorCode::DomainError, "a and sigma must be positive");

    CirThetaCalibration out;
    out.theta = std::numeric_limits<double>::infinity();
    for (const auto& pillar : curve.pillars()) {
        if (pillar.t <= 0.0) continue;
        double per_theta = cir_forward({0.0, a, 1.0, sigma, 0.0}, pillar.t);
        double from_x0 = cir_forward({x0, a, 0.0, sigma, 0.0}, pillar.t);
        double th = (curve.inst_forward(pillar.t) - from_x0) / per_theta;
        bool ok = std::isfinite(th) && th >= kThetaLo && th <= kThetaHi;
        out.pillars.push_back({pillar.t, th, ok});
        if (ok && th < out.theta) {
            out.theta = th;
            out.argmin_t = pillar.t;
        }
    }
    if (!std::isfinite(out.theta)) throw Error(ErrorCode::NoRoot, "no pillar implied a theta inside [1e-8, 2]");
    out.feller = feller_check({x0, a, out.theta, sigma, 0.0});
    return out;
}

ShiftFit cir_shift_fit(const Curve& curve, const CirParams& p) {
    ShiftFit fit;
    fit.shift = cir_shift(curve, p);
    fit.min_b = fit.shift.min_value();
    fit.negative_times = fit.shift.negative_times(kShiftNoise);
    fit.integral = fit.shift.integral(0.0, curve.last_time());
    return fit;
}

}  // namespace fvawwr
