// Command-line driver: run, flag-grid, sweep, diagnose, calibrate, curves, scenario.
//
// Exit codes: 0 ok, 2 bad arguments, 3 model construction errors, 4 NaN at runtime.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "fvawwr/calibration.hpp"
#include "fvawwr/engine.hpp"
#include "fvawwr/errors.hpp"
#include "fvawwr/report.hpp"

namespace fs = std::filesystem;
using namespace fvawwr;

namespace {

enum Exit { kOk = 0, kArgs = 2, kModel = 3, kNaN = 4 };

int exit_code_for(ErrorCode c) {
    switch (c) {
        case ErrorCode::ParseError:
        case ErrorCode::UnknownScenario: return kArgs;
        case ErrorCode::NumericalError: return kNaN;
        default: return kModel;
    }
}

struct SimOptions {
    std::size_t paths = 100000;
    std::uint64_t seed = 42;
    int dates_per_year = 10;
    int sub_steps = 10;
    bool antithetic = false;
    unsigned threads = 0;

    SimConfig config() const { return {paths, dates_per_year, sub_steps, seed, antithetic, threads}; }
};

struct RegimeOptions {
    std::string spread = "stochastic";
    std::string tau_i = "exclude";
    std::string tau_c = "exclude";
};

void add_sim_options(CLI::App* app, SimOptions& o) {
    app->add_option("--paths", o.paths, "Monte Carlo paths")->check(CLI::Range(std::size_t{2}, std::size_t{1} << 40));
    app->add_option("--seed", o.seed, "RNG seed");
    app->add_option("--dates-per-year", o.dates_per_year, "exposure dates per year")->check(CLI::Range(1, 10000));
    app->add_option("--sub-steps", o.sub_steps, "simulation sub-steps per exposure interval")->check(CLI::Range(1, 10000));
    app->add_flag("--antithetic", o.antithetic, "antithetic pairs (needs an even path count)");
    app->add_option("--threads", o.threads, "worker threads, 0 = all cores");
}

void add_regime_options(CLI::App* app, RegimeOptions& o, bool allow_both) {
    std::vector<std::string> incl = {"include", "exclude"};
    std::vector<std::string> spreads = {"stochastic", "deterministic"};
    if (allow_both) {
        incl.push_back("both");
        spreads.push_back("both");
    }
    app->add_option("--spread", o.spread, "funding spread kind")->check(CLI::IsMember(spreads));
    app->add_option("--tau-i", o.tau_i, "include the institution's default time")->check(CLI::IsMember(incl));
    app->add_option("--tau-c", o.tau_c, "include the counterparty's default time")->check(CLI::IsMember(incl));
}

std::vector<FvaFlags> expand(const RegimeOptions& o) {
    auto spreads = o.spread == "both" ? std::vector<SpreadKind>{SpreadKind::Stochastic, SpreadKind::Deterministic}
                   : o.spread == "stochastic" ? std::vector<SpreadKind>{SpreadKind::Stochastic}
                                              : std::vector<SpreadKind>{SpreadKind::Deterministic};
    auto flags = [](const std::string& s) {
        return s == "both" ? std::vector<bool>{false, true} : std::vector<bool>{s == "include"};
    };
    std::vector<FvaFlags> out;
    for (auto sp : spreads)
        for (bool c : flags(o.tau_c))
            for (bool i : flags(o.tau_i)) out.push_back({i, c, sp});
    return out;
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        std::size_t used = 0;
        double v = std::stod(item, &used);
        if (used != item.size()) throw CLI::ValidationError("list", "bad number '" + item + "'");
        out.push_back(v);
    }
    return out;
}

fs::path prepare_out(const std::string& dir) {
    fs::path p(dir);
    fs::create_directories(p);
    return p;
}

void print_runs(const std::vector<RegimeRun>& runs) {
    for (const auto& r : runs)
        std::cout << fmt::format("{:<26} FVA_indep={:.4f} (se {:.4f})  FVA_wwr={:.4f} (se {:.4f})  wwr%={:.2f}\n",
                                 regime_label(r.flags), r.result.fva_indep, r.result.se_indep, r.result.fva_wwr,
                                 r.result.se_wwr, r.result.wwr_pct);
}

Scenario scenario_with_lgd(const std::string& ref, const std::optional<double>& lgd) {
    Scenario s = load_scenario(ref);
    if (lgd) s.credit_I.params.lgd = *lgd;
    return s;
}

void write_runs(const fs::path& out, const std::string& format, const std::string& stem, const RunMetadata& meta,
                const std::vector<RegimeRun>& runs) {
    if (format == "json") {
        std::ofstream(out / (stem + ".json")) << runs_json(meta, runs, true).dump(2) << '\n';
        return;
    }
    write_fva_result_csv(out / (stem + ".csv"), meta, runs);
    write_exposure_csv(out / "exposure_profile.csv", meta, runs);
}

nlohmann::ordered_json cir_report(const Curve& curve, double x0, double a, double sigma) {
    auto cal = calibrate_cir_theta(curve, x0, a, sigma);
    auto fit = cir_shift_fit(curve, {x0, a, cal.theta, sigma, 0.0});
    nlohmann::ordered_json j;
    j["theta"] = cal.theta;
    j["argmin_t"] = cal.argmin_t;
    j["shift_min"] = fit.min_b;
    j["shift_negative_times"] = fit.negative_times;
    j["shift_integral"] = fit.integral;
    j["feller_holds"] = cal.feller.holds;
    j["feller_margin"] = cal.feller.margin;
    j["pillar_implied_thetas"] = nlohmann::ordered_json::array();
    for (const auto& p : cal.pillars)
        j["pillar_implied_thetas"].push_back({{"t", p.t}, {"theta", p.theta}, {"used", p.used}});
    return j;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"FVA with wrong-way risk under Hull-White rates and CIR++ intensities"};
    app.set_version_flag("--version", std::string(version()));
    app.require_subcommand(1);

    // run
    auto* run = app.add_subcommand("run", "FVA for one scenario, swap and set of regimes");
    std::string scenario_ref, swap_label_arg = "receiver:atm", out_dir = ".", format = "csv";
    std::optional<double> lgd_override;
    SimOptions sim;
    RegimeOptions regimes;
    run->add_option("--scenario", scenario_ref, "builtin:N, file:<path> or a JSON path")->required();
    run->add_option("--swap", swap_label_arg, "receiver|payer:atm|itm|otm");
    run->add_option("--lgd-i", lgd_override, "override the institution's LGD")->check(CLI::Range(0.0, 1.0));
    run->add_option("--out", out_dir, "output directory");
    run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_sim_options(run, sim);
    add_regime_options(run, regimes, true);

    // flag-grid
    auto* grid = app.add_subcommand("flag-grid", "2x2 include/exclude grid on shared paths");
    std::string grid_spread = "stochastic";
    grid->add_option("--scenario", scenario_ref, "scenario reference")->required();
    grid->add_option("--swap", swap_label_arg, "receiver|payer:atm|itm|otm");
    grid->add_option("--spread", grid_spread, "stochastic, deterministic or both")
        ->check(CLI::IsMember({"stochastic", "deterministic", "both"}));
    grid->add_option("--lgd-i", lgd_override, "override the institution's LGD")->check(CLI::Range(0.0, 1.0));
    grid->add_option("--out", out_dir, "output directory");
    grid->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_sim_options(grid, sim);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "correlation sweep with common random numbers");
    std::string axis = "rC", grid_list, curves_list;
    sweep->add_option("--scenario", scenario_ref, "scenario reference")->required();
    sweep->add_option("--swap", swap_label_arg, "receiver|payer:atm|itm|otm");
    sweep->add_option("--axis", axis, "rI, rC or IC")->check(CLI::IsMember({"rI", "rC", "IC"}));
    sweep->add_option("--grid", grid_list, "comma-separated values (default: -0.7..0.7 step 0.175)");
    sweep->add_option("--curves", curves_list, "rho_rI values, one curve each (rC axis)");
    sweep->add_option("--out", out_dir, "output directory");
    sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    add_sim_options(sweep, sim);
    add_regime_options(sweep, regimes, false);

    // diagnose
    auto* diag = app.add_subcommand("diagnose", "Monte Carlo fit of discount and survival curves");
    double diag_horizon = 30.0;
    diag->add_option("--scenario", scenario_ref, "scenario reference")->required();
    diag->add_option("--horizon", diag_horizon, "simulation horizon, years")->check(CLI::PositiveNumber);
    diag->add_option("--out", out_dir, "output directory");
    add_sim_options(diag, sim);

    // calibrate
    auto* cal = app.add_subcommand("calibrate", "calibration reports as JSON");
    cal->require_subcommand(1);
    auto* cal_hw = cal->add_subcommand("hw-sigma", "HW sigma from one ATM co-terminal swaption");
    std::string curve_ref = "builtin:flat5", convention = "lognormal";
    double a_r = 1e-5;
    SwaptionSpec swaption;
    cal_hw->add_option("--curve", curve_ref, "yield curve reference");
    cal_hw->add_option("--a", a_r, "mean reversion")->check(CLI::PositiveNumber);
    cal_hw->add_option("--vol", swaption.vol_quote, "implied vol quote")->check(CLI::PositiveNumber);
    cal_hw->add_option("--expiry", swaption.expiry, "option expiry, years")->check(CLI::PositiveNumber);
    cal_hw->add_option("--tenor", swaption.tenor, "swap tenor, years")->check(CLI::PositiveNumber);
    cal_hw->add_option("--convention", convention, "lognormal or normal")->check(CLI::IsMember({"lognormal", "normal"}));
    cal_hw->add_option("--shift", swaption.shift, "displacement for the lognormal quote");

    auto* cal_cir = cal->add_subcommand("cir-theta", "CIR theta by the minimum-implied rule plus shift diagnostics");
    std::string cir_curve, party = "I";
    double x0 = 0.0, a_z = 0.0, sigma_z = 0.0;
    cal_cir->add_option("--scenario", scenario_ref, "take curve, x0, a, sigma from a scenario");
    cal_cir->add_option("--party", party, "I or C (with --scenario)")->check(CLI::IsMember({"I", "C"}));
    cal_cir->add_option("--curve", cir_curve, "credit curve reference");
    cal_cir->add_option("--x0", x0, "initial intensity state");
    cal_cir->add_option("--a", a_z, "mean reversion");
    cal_cir->add_option("--sigma", sigma_z, "volatility");

    // curves
    auto* curves = app.add_subcommand("curves", "dump an interpolated curve");
    std::string dump_curve;
    double step = 0.1;
    bool list_curves = false;
    std::string curve_kind = "auto", curve_out;
    curves->add_option("--curve", dump_curve, "builtin:<name> or a CSV path");
    curves->add_option("--kind", curve_kind, "yield, credit or auto")->check(CLI::IsMember({"yield", "credit", "auto"}));
    curves->add_option("--step", step, "time step of the dump")->check(CLI::PositiveNumber);
    curves->add_option("--out", curve_out, "output CSV (default stdout)");
    curves->add_flag("--list", list_curves, "list builtin curves");

    // scenario
    auto* scen = app.add_subcommand("scenario", "print a scenario as JSON");
    std::string scen_ref;
    bool list_scen = false;
    scen->add_option("ref", scen_ref, "builtin:N or file");
    scen->add_flag("--list", list_scen, "list builtin scenarios");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kOk : kArgs;
    }

    try {
        if (run->parsed() || grid->parsed()) {
            Scenario s = scenario_with_lgd(scenario_ref, lgd_override);
            SwapSpec swap = parse_swap(s.yield_curve, swap_label_arg);
            auto cfg = sim.config();
            std::vector<FvaFlags> flags;
            if (run->parsed()) {
                flags = expand(regimes);
            } else {
                if (grid_spread != "deterministic") {
                    auto g = flag_grid_regimes(SpreadKind::Stochastic);
                    flags.insert(flags.end(), g.begin(), g.end());
                }
                if (grid_spread != "stochastic") {
                    auto g = flag_grid_regimes(SpreadKind::Deterministic);
                    flags.insert(flags.end(), g.begin(), g.end());
                }
            }
            auto models = build_models(s);
            auto paths = simulate(s, models, cfg, swap.maturity);
            auto runs = evaluate_regimes(s, models, paths, swap, flags, cfg.threads);
            auto out = prepare_out(out_dir);
            write_runs(out, format, run->parsed() ? "fva_result" : "flag_grid", make_metadata(s.name, swap, cfg), runs);
            print_runs(runs);
            return kOk;
        }
        if (sweep->parsed()) {
            Scenario s = load_scenario(scenario_ref);
            SwapSpec swap = parse_swap(s.yield_curve, swap_label_arg);
            auto values = grid_list.empty() ? default_sweep_grid() : parse_list(grid_list);
            auto curve_values = curves_list.empty() ? default_sweep_curves() : parse_list(curves_list);
            if (values.empty() || curve_values.empty()) {
                std::cerr << "sweep: empty grid\n";
                return kArgs;
            }
            auto flags = expand(regimes);
            SweepAxis ax = axis == "rI" ? SweepAxis::RhoRI : axis == "rC" ? SweepAxis::RhoRC : SweepAxis::RhoIC;
            auto cfg = sim.config();
            auto table = sweep_correlation(s, swap, ax, values, flags.front(), cfg, curve_values);
            auto out = prepare_out(out_dir);
            auto meta = make_metadata(s.name, swap, cfg);
            if (format == "json")
                std::ofstream(out / "sweep.json") << sweep_json(meta, table).dump(2) << '\n';
            else
                write_sweep_csv(out / "sweep.csv", meta, table);
            for (const auto& c : table.curves)
                for (const auto& p : c.points)
                    std::cout << fmt::format("{} {}={:+.3f} ratio={:.6f}\n", c.label, to_string(ax), p.value,
                                             p.result.ratio);
            return kOk;
        }
        if (diag->parsed()) {
            Scenario s = load_scenario(scenario_ref);
            auto cfg = sim.config();
            auto models = build_models(s);
            auto g = fit_gates(models, simulate(s, models, cfg, diag_horizon));
            RunMetadata meta{s.name, "none", cfg.seed, cfg.n_paths, cfg.sub_steps, cfg.dates_per_year};
            write_fit_gates_csv(prepare_out(out_dir) / "fit_gates.csv", meta, g);
            const char* names[3] = {"df", "surv_I", "surv_C"};
            for (int q = 0; q < 3; ++q) {
                double worst = 0.0;
                for (std::size_t k = 0; k < g.grid.size(); ++k)
                    if (g.se[q][k] > 0.0) worst = std::max(worst, std::abs(g.mean[q][k] - g.curve[q][k]) / g.se[q][k]);
                std::cout << fmt::format("{:<7} max |mc - curve| / se = {:.3f}\n", names[q], worst);
            }
            return kOk;
        }
        if (cal_hw->parsed()) {
            swaption.convention = convention == "normal" ? VolConvention::Normal : VolConvention::Lognormal;
            Curve c = resolve_curve(curve_ref, fs::current_path(), CurveKind::Yield);
            auto r = calibrate_hw_sigma(c, a_r, swaption);
            nlohmann::ordered_json j;
            j["sigma_r"] = r.sigma;
            j["market_price"] = r.market_price;
            j["model_price"] = r.model_price;
            j["forward"] = r.forward;
            j["convention"] = convention;
            j["shift"] = swaption.convention == VolConvention::Lognormal ? swaption.shift : 0.0;
            j["expiry"] = swaption.expiry;
            j["tenor"] = swaption.tenor;
            std::cout << j.dump(2) << '\n';
            return kOk;
        }
        if (cal_cir->parsed()) {
            Curve c;
            if (!scenario_ref.empty()) {
                Scenario s = load_scenario(scenario_ref);
                const auto& cs = party == "I" ? s.credit_I : s.credit_C;
                c = cs.curve;
                x0 = cs.params.x0;
                a_z = cs.params.a;
                sigma_z = cs.params.sigma;
            } else {
                if (cir_curve.empty() || !(a_z > 0.0) || !(sigma_z > 0.0)) {
                    std::cerr << "calibrate cir-theta: need --scenario or --curve with --a and --sigma > 0\n";
                    return kArgs;
                }
                c = resolve_curve(cir_curve, fs::current_path(), CurveKind::Credit);
            }
            std::cout << cir_report(c, x0, a_z, sigma_z).dump(2) << '\n';
            return kOk;
        }
        if (curves->parsed()) {
            if (list_curves) {
                for (const auto& n : builtin_curve_names()) std::cout << "builtin:" << n << '\n';
                return kOk;
            }
            if (dump_curve.empty()) {
                std::cerr << "curves: need --curve or --list\n";
                return kArgs;
            }
            CurveKind kind = curve_kind == "credit" ? CurveKind::Credit : CurveKind::Yield;
            if (curve_kind == "auto" && dump_curve.rfind("builtin:", 0) == 0)
                kind = builtin_curve(dump_curve.substr(8)).kind();
            Curve c = resolve_curve(dump_curve, fs::current_path(), kind);
            std::ostringstream os;
            os << "t,df,zero_rate,inst_forward\n";
            long n = std::lround(std::floor(c.last_time() / step + 1e-9));
            for (long i = 0; i <= n; ++i) {
                double t = std::min(i * step, c.last_time());
                double z = t > 0.0 ? c.zero_rate(t) : c.inst_forward(0.0);
                os << fmt::format("{},{},{},{}\n", fmt_num(t), fmt_num(c.df(t)), fmt_num(z), fmt_num(c.inst_forward(t)));
            }
            if (curve_out.empty())
                std::cout << os.str();
            else
                std::ofstream(curve_out) << os.str();
            return kOk;
        }
        if (scen->parsed()) {
            if (list_scen) {
                for (int i = 1; i <= kBuiltinScenarioCount; ++i) std::cout << "builtin:" << i << '\n';
                return kOk;
            }
            if (scen_ref.empty()) {
                std::cerr << "scenario: need a reference or --list\n";
                return kArgs;
            }
            std::cout << scenario_to_json(load_scenario(scen_ref)).dump(2) << '\n';
            return kOk;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_code_for(e.code());
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: bad number: " << e.what() << '\n';
        return kArgs;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kArgs;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kOk;
}
