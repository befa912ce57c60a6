#pragma once

#include <vector>

#include "fvawwr/cir.hpp"
#include "fvawwr/curve.hpp"
#include "fvawwr/hull_white.hpp"

namespace fvawwr {

enum class VolConvention { Lognormal, Normal };

struct SwaptionSpec {
    double expiry = 10.0;
    double tenor = 20.0;
    double vol_quote = 0.1;
    VolConvention convention = VolConvention::Lognormal;
    // Displacement for the lognormal quote; 0 is plain Black.
    double shift = 0.03;
};

struct SwapRateInfo {
    double forward = 0.0;
    double annuity = 0.0;
};

// Forward swap rate and annuity of the co-terminal swap (annual fixed leg).
SwapRateInfo forward_swap_rate(const Curve& curve, double expiry, double tenor);

// Payer swaption price per unit notional, ATM strike, from the quote.
double market_swaption_price(const Curve& curve, const SwaptionSpec& spec);
// Payer swaption price per unit notional under HW via Jamshidian.
double hw_swaption_price(const HullWhiteModel& model, double expiry, double tenor, double strike);

struct HwCalibration {
    double sigma = 0.0;
    double market_price = 0.0;
    double model_price = 0.0;
    double forward = 0.0;
};

HwCalibration calibrate_hw_sigma(const Curve& curve, double a, const SwaptionSpec& spec);

struct PillarTheta {
    double t = 0.0;
    double theta = 0.0;
    bool used = false;  // false when the implied value fell outside [1e-8, 2]
};

struct CirThetaCalibration {
    double theta = 0.0;
    double argmin_t = 0.0;
    std::vector<PillarTheta> pillars;
    FellerStatus feller;
};

/// Minimum over credit pillars of the theta that makes f^CIR(0,t_i) = f^M(0,t_i).
///
/// f^CIR is linear in theta, so each pillar solves in closed form.
CirThetaCalibration calibrate_cir_theta(const Curve& curve, double x0, double a, double sigma);

struct ShiftFit {
    DeterministicShift shift;
    double min_b = 0.0;
    std::vector<double> negative_times;
    double integral = 0.0;  // int_0^T b_z
};

ShiftFit cir_shift_fit(const Curve& curve, const CirParams& p);

}  // namespace fvawwr
