#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "fvawwr/fva.hpp"
#include "fvawwr/scenario.hpp"
#include "fvawwr/simulation.hpp"
#include "fvawwr/swap.hpp"

namespace fvawwr {

struct ScenarioModels {
    HullWhiteModel hw;
    CirModel credit_I;
    CirModel credit_C;
};

ScenarioModels build_models(const Scenario& s);

PathBlock simulate(const Scenario& s, const ScenarioModels& m, const SimConfig& cfg, double horizon);

struct RegimeRun {
    FvaFlags flags;
    ExposureProfile profile;
    FvaResult result;
};

// All regimes share the given paths.
std::vector<RegimeRun> evaluate_regimes(const Scenario& s, const ScenarioModels& m, const PathBlock& paths,
                                        const SwapSpec& swap, const std::vector<FvaFlags>& regimes,
                                        unsigned threads = 0);

RegimeRun compute_fva(const Scenario& s, const SwapSpec& swap, const FvaFlags& flags, const SimConfig& cfg);

// Grid order: excl/excl, incl/excl, excl/incl, incl/incl (tau_I/tau_C).
std::vector<FvaFlags> flag_grid_regimes(SpreadKind spread);
std::vector<FvaFlags> all_regimes();
std::vector<RegimeRun> run_flag_grid(const Scenario& s, const SwapSpec& swap, SpreadKind spread,
                                     const SimConfig& cfg);

SwapSpec make_swap(const Curve& curve, SwapDirection dir, Moneyness m, double maturity = 30.0,
                   double notional = 10000.0);
// {receiver, payer} x {atm, itm, otm}
std::vector<SwapSpec> swap_variants(const Curve& curve, double maturity = 30.0, double notional = 10000.0);
// "receiver:atm" style label
SwapSpec parse_swap(const Curve& curve, const std::string& label, double maturity = 30.0,
                    double notional = 10000.0);

/// Per-date sample means of e^{-I_r}, e^{-Lambda_I}, e^{-Lambda_C} with their
/// standard errors, next to the curve values they should reproduce.
struct FitGates {
    std::vector<double> grid;
    std::array<std::vector<double>, 3> curve;
    std::array<std::vector<double>, 3> mean;
    std::array<std::vector<double>, 3> se;
};

FitGates fit_gates(const ScenarioModels& m, const PathBlock& paths);

enum class SweepAxis { RhoRI, RhoRC, RhoIC };
std::string to_string(SweepAxis a);

struct SweepPoint {
    double value = 0.0;
    FvaResult result;
};

struct SweepCurve {
    std::string label;
    std::optional<double> rho_rI;
    std::vector<SweepPoint> points;
};

struct SweepTable {
    SweepAxis axis = SweepAxis::RhoRC;
    std::vector<double> values;
    std::vector<SweepCurve> curves;
};

const std::vector<double>& default_sweep_grid();
const std::vector<double>& default_sweep_curves();

/// Correlation sweep with common random numbers. For the rho_rC axis there is
/// one curve per entry of curve_rho_rI; other axes give a single curve.
SweepTable sweep_correlation(const Scenario& s, const SwapSpec& swap, SweepAxis axis,
                             const std::vector<double>& grid, const FvaFlags& flags, const SimConfig& cfg,
                             const std::vector<double>& curve_rho_rI = default_sweep_curves());

}  // namespace fvawwr
