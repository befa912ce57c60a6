#include "fvawwr/cir.hpp"

#include <cmath>

#include <boost/math/quadrature/gauss.hpp>
#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

namespace {

// Below this sigma^2 / a^2 the closed-form ln A loses too many digits to the
// 2 a theta / sigma^2 prefactor; integrate (ln A)' = -a theta B instead.
constexpr double kSmallVolRatio = 1e-6;

double h_of(const CirParams& p) { return std::sqrt(p.a * p.a + 2.0 * p.sigma * p.sigma); }

}  // namespace

FellerStatus feller_check(const CirParams& p) {
    double margin = 2.0 * p.a * p.theta - p.sigma * p.sigma;
    return {margin > 0.0, margin};
}

double cir_b(const CirParams& p, double tau) {
    if (tau <= 0.0) return 0.0;
    double h = h_of(p);
    double e = std::expm1(h * tau);
    return 2.0 * e / (2.0 * h + (p.a + h) * e);
}

double cir_log_a(const CirParams& p, double tau) {
    if (tau <= 0.0) return 0.0;
    if (p.sigma * p.sigma < kSmallVolRatio * p.a * p.a) {
        auto b = [&p](double s) { return cir_b(p, s); };
        double ib = boost::math::quadrature::gauss<double, 30>::integrate(b, 0.0, tau);
        return -p.a * p.theta * ib;
    }
    double h = h_of(p);
    double e = std::expm1(h * tau);
    // ln(2h e^{(a+h)tau/2} / d),  d = 2h + (a+h)(e^{h tau} - 1)
    double bracket = 0.5 * (p.a + h) * tau - std::log1p((p.a + h) * e / (2.0 * h));
    return 2.0 * p.a * p.theta / (p.sigma * p.sigma) * bracket;
}

double cir_forward(const CirParams& p, double t) {
    if (t <= 0.0) return p.x0;
    double h = h_of(p);
    double e = std::expm1(h * t);
    double d = 2.0 * h + (p.a + h) * e;
    return 2.0 * p.a * p.theta * e / d + p.x0 * 4.0 * h * h * (1.0 + e) / (d * d);
}

double cir_mean(const CirParams& p, double t) { return p.theta + (p.x0 - p.theta) * std::exp(-p.a * t); }

DeterministicShift cir_shift(const Curve& curve, const CirParams& p) {
    return DeterministicShift(
        curve.last_time(), [&curve, &p](double t) { return curve.inst_forward(t) - cir_forward(p, t); },
        [c = curve, p](double t) {
            // int_0^t b = -ln P^M(t) + ln P^CIR(0,t)
            return -std::log(c.df(t)) + cir_log_a(p, t) - cir_b(p, t) * p.x0;
        });
}

CirModel::CirModel(Curve curve, CirParams p) : curve_(std::move(curve)), p_(p) {
    if (!(p.a > 0.0) || !(p.theta > 0.0) || !(p.sigma >= 0.0) || !(p.x0 >= 0.0))
        throw Error(ErrorCode::DomainError,
                    fmt::format("CIR parameters out of domain (x0={}, a={}, theta={}, sigma={})", p.x0, p.a,
                                p.theta, p.sigma));
    if (!(p.lgd >= 0.0 && p.lgd <= 1.0))
        throw Error(ErrorCode::DomainError, fmt::format("lgd={} outside [0,1]", p.lgd));
    auto f = feller_check(p);
    if (!f.holds)
        throw Error(ErrorCode::FellerViolation,
                    fmt::format("2*a*theta={} <= sigma^2={}", 2.0 * p.a * p.theta, p.sigma * p.sigma));
    shift_ = cir_shift(curve_, p_);
}

double CirModel::zcb(double t, double T, double x) const {
    if (T < t) throw Error(ErrorCode::TimeOrder, fmt::format("T={} < t={}", T, t));
    if (T == t) return 1.0;
    double tau = T - t;
    return std::exp(cir_log_a(p_, tau) - cir_b(p_, tau) * x - shift_.integral(t, T));
}

}  // namespace fvawwr
