#pragma once

#include "fvawwr/curve.hpp"
#include "fvawwr/shift.hpp"

namespace fvawwr {

struct CirParams {
    double x0 = 0.0;
    double a = 0.0;
    double theta = 0.0;
    double sigma = 0.0;
    double lgd = 0.6;
};

struct FellerStatus {
    bool holds = false;
    double margin = 0.0;  // 2 a theta - sigma^2
};

FellerStatus feller_check(const CirParams& p);

// Plain CIR (no shift) pieces, h = sqrt(a^2 + 2 sigma^2).
double cir_b(const CirParams& p, double tau);
double cir_log_a(const CirParams& p, double tau);
// Instantaneous forward f^CIR(0,t) of the unshifted process started at x0.
double cir_forward(const CirParams& p, double t);
double cir_mean(const CirParams& p, double t);

/// CIR++ intensity lambda(t) = x(t) + b(t), with b = f^M - f^CIR.
///
/// Construction enforces Feller. A negative shift is allowed here and shows up
/// in the shift diagnostics; the simulation floors lambda at zero.
class CirModel {
public:
    CirModel(Curve curve, CirParams p);

    const CirParams& params() const { return p_; }
    const Curve& curve() const { return curve_; }
    const DeterministicShift& shift() const { return shift_; }

    double forward(double t) const { return cir_forward(p_, t); }
    double mean(double t) const { return cir_mean(p_, t); }
    // Survival P_z(t,T) given x(t) = x
    double zcb(double t, double T, double x) const;

private:
    Curve curve_;
    CirParams p_;
    DeterministicShift shift_;
};

// Shift b_z = f^M - f^CIR tabulated on the dense grid, with no Feller check.
DeterministicShift cir_shift(const Curve& curve, const CirParams& p);

}  // namespace fvawwr
