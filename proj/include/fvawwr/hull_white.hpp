#pragma once

#include "fvawwr/curve.hpp"
#include "fvawwr/shift.hpp"

namespace fvawwr {

struct HullWhiteParams {
    double a = 0.0;
    double sigma = 0.0;
    double x0 = 0.0;
};

// B(t,T) = (1 - e^{-a tau}) / a, stable for a -> 0.
double hw_b(double a, double tau);
// Variance of int_t^T x(v) dv given x(t): sigma^2/a^2 [tau - 2B(a) + B(2a)].
double hw_integral_variance(double a, double sigma, double tau);

/// Hull-White 1F in shifted form r(t) = x(t) + b_r(t), dx = -a x dt + sigma dW.
///
/// b_r(t) = f^M(0,t) + sigma^2/2 B(0,t)^2 fits the base curve exactly.
class HullWhiteModel {
public:
    HullWhiteModel(Curve curve, HullWhiteParams p);

    const HullWhiteParams& params() const { return p_; }
    const Curve& curve() const { return curve_; }
    const DeterministicShift& shift() const { return shift_; }

    double b(double t, double T) const;
    // ln P(t,T) = log_a(t,T) - b(t,T) x_t
    double log_a(double t, double T) const;
    double zcb(double t, double T, double x) const;

    // Exact OU transition over dt: x' = mean_factor * x + stdev * z
    double ou_mean_factor(double dt) const;
    double ou_stdev(double dt) const;

private:
    Curve curve_;
    HullWhiteParams p_;
    DeterministicShift shift_;
};

}  // namespace fvawwr
