#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fvawwr/curve.hpp"
#include "fvawwr/hull_white.hpp"
#include "fvawwr/matrix.hpp"
#include "fvawwr/simulation.hpp"

namespace fvawwr {

enum class SwapDirection { Receiver, Payer };
enum class Moneyness { Atm, Itm, Otm };

struct SwapSpec {
    double notional = 10000.0;
    double maturity = 30.0;
    double fixed_rate = 0.0;
    SwapDirection direction = SwapDirection::Receiver;
    int pay_freq = 1;
    Moneyness moneyness = Moneyness::Atm;
};

std::string to_string(SwapDirection d);
std::string to_string(Moneyness m);
// "receiver:atm", "payer:itm", ...
std::string swap_label(const SwapSpec& s);

void validate(const SwapSpec& s);
std::vector<double> payment_times(const SwapSpec& s);

double par_rate(const Curve& curve, double maturity, int pay_freq);

// ITM always means positive value to the institution.
SwapSpec apply_moneyness(SwapSpec spec, double par, Moneyness label);

/// Swap value at u given x_r(u).
///
/// Inside a period the float leg needs the period's fixing, i.e. the bond
/// price P(T_{j-1}, T_j) seen at the period start. At a period start the
/// fixing is implied by the state and may be omitted.
double value_at(const SwapSpec& spec, const HullWhiteModel& hw, double u, double x_r,
                std::optional<double> fixing = std::nullopt);

// V(u) per path and date.
Matrix pathwise_values(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw,
                       unsigned threads = 0);
// h(u) = e^{-int r} max(V(u), 0) per path and date.
Matrix pathwise_exposure(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw,
                         unsigned threads = 0);

}  // namespace fvawwr
