#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "fvawwr/cir.hpp"
#include "fvawwr/curve.hpp"
#include "fvawwr/hull_white.hpp"
#include "fvawwr/simulation.hpp"

namespace fvawwr {

struct CreditSetup {
    std::string curve_ref;
    Curve curve;
    CirParams params;
};

// Swaption/CDS-option vols behind the parameters; informational only.
struct ImpliedVols {
    double r = 0.0;
    double I = 0.0;
    double C = 0.0;
};

struct Scenario {
    std::string name;
    std::string yield_curve_ref;
    Curve yield_curve;
    HullWhiteParams hw;
    CreditSetup credit_I;
    CreditSetup credit_C;
    CorrelationBlock corr;
    ImpliedVols implied_vols;
};

inline constexpr int kBuiltinScenarioCount = 21;

Scenario builtin_scenario(int id);

// "builtin:N", "file:<path>" or a bare path to a JSON file.
Scenario load_scenario(const std::string& source);

// Curve refs are "builtin:<name>" or paths, relative paths resolved against base_dir.
Curve resolve_curve(const std::string& ref, const std::filesystem::path& base_dir, CurveKind kind);

nlohmann::ordered_json scenario_to_json(const Scenario& s);
Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});

// Feller for both credit parties and an SPD correlation block.
void validate(const Scenario& s);

}  // namespace fvawwr
