#include "fvawwr/engine.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

ScenarioModels build_models(const Scenario& s) {
    validate(s);
    return {HullWhiteModel(s.yield_curve, s.hw), CirModel(s.credit_I.curve, s.credit_I.params),
            CirModel(s.credit_C.curve, s.credit_C.params)};
}

PathBlock simulate(const Scenario& s, const ScenarioModels& m, const SimConfig& cfg, double horizon) {
    return simulate(m.hw, m.credit_I, m.credit_C, s.corr, cfg, horizon);
}

std::vector<RegimeRun> evaluate_regimes(const Scenario& s, const ScenarioModels& m, const PathBlock& paths,
                                        const SwapSpec& swap, const std::vector<FvaFlags>& regimes,
                                        unsigned threads) {
    const Matrix h = pathwise_exposure(paths, swap, m.hw, threads);
    SpreadInputs spread{s.credit_I.params.lgd, {}};
    std::vector<RegimeRun> out;
    out.reserve(regimes.size());
    for (const auto& f : regimes) {
        RegimeRun r{f, regime_profile(paths, m.credit_I, spread, f, h), {}};
        r.result = fva_integrate(r.profile);
        if (!std::isfinite(r.result.fva_indep) || !std::isfinite(r.result.fva_wwr))
            throw Error(ErrorCode::NumericalError, "non-finite FVA in regime " + regime_label(f));
        out.push_back(std::move(r));
    }
    return out;
}

RegimeRun compute_fva(const Scenario& s, const SwapSpec& swap, const FvaFlags& flags, const SimConfig& cfg) {
    auto m = build_models(s);
    auto paths = simulate(s, m, cfg, swap.maturity);
    return std::move(evaluate_regimes(s, m, paths, swap, {flags}, cfg.threads).front());
}

FitGates fit_gates(const ScenarioModels& m, const PathBlock& paths) {
    const std::size_t n = paths.n_paths(), nd = paths.n_dates();
    FitGates g;
    g.grid = paths.grid;
    const Matrix* src[3] = {&paths.int_r, &paths.Lambda_I, &paths.Lambda_C};
    const Curve* curves[3] = {&m.hw.curve(), &m.credit_I.curve(), &m.credit_C.curve()};
    for (int q = 0; q < 3; ++q) {
        g.curve[q].resize(nd);
        g.mean[q].assign(nd, 0.0);
        g.se[q].assign(nd, 0.0);
        for (std::size_t k = 0; k < nd; ++k) {
            double s1 = 0.0, s2 = 0.0;
            for (std::size_t p = 0; p < n; ++p) {
                double v = std::exp(-(*src[q])(p, k));
                s1 += v;
                s2 += v * v;
            }
            double mean = s1 / n;
            double var = n > 1 ? std::max(0.0, (s2 - s1 * mean) / (n - 1)) : 0.0;
            g.curve[q][k] = curves[q]->df(paths.grid[k]);
            g.mean[q][k] = mean;
            g.se[q][k] = std::sqrt(var / n);
        }
    }
    return g;
}

std::vector<FvaFlags> flag_grid_regimes(SpreadKind spread) {
    return {{false, false, spread}, {true, false, spread}, {false, true, spread}, {true, true, spread}};
}

std::vector<FvaFlags> all_regimes() {
    auto a = flag_grid_regimes(SpreadKind::Stochastic);
    auto b = flag_grid_regimes(SpreadKind::Deterministic);
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

std::vector<RegimeRun> run_flag_grid(const Scenario& s, const SwapSpec& swap, SpreadKind spread,
                                     const SimConfig& cfg) {
    auto m = build_models(s);
    auto paths = simulate(s, m, cfg, swap.maturity);
    return evaluate_regimes(s, m, paths, swap, flag_grid_regimes(spread), cfg.threads);
}

SwapSpec make_swap(const Curve& curve, SwapDirection dir, Moneyness mny, double maturity, double notional) {
    SwapSpec s;
    s.notional = notional;
    s.maturity = maturity;
    s.direction = dir;
    return apply_moneyness(s, par_rate(curve, maturity, s.pay_freq), mny);
}

std::vector<SwapSpec> swap_variants(const Curve& curve, double maturity, double notional) {
    std::vector<SwapSpec> out;
    for (auto d : {SwapDirection::Receiver, SwapDirection::Payer})
        for (auto m : {Moneyness::Atm, Moneyness::Itm, Moneyness::Otm})
            out.push_back(make_swap(curve, d, m, maturity, notional));
    return out;
}

SwapSpec parse_swap(const Curve& curve, const std::string& label, double maturity, double notional) {
    auto colon = label.find(':');
    std::string dir = label.substr(0, colon);
    std::string mny = colon == std::string::npos ? "atm" : label.substr(colon + 1);
    SwapDirection d;
    if (dir == "receiver") d = SwapDirection::Receiver;
    else if (dir == "payer") d = SwapDirection::Payer;
    else throw Error(ErrorCode::ParseError, "swap direction must be receiver or payer, got '" + dir + "'");
    Moneyness m;
    if (mny == "atm") m = Moneyness::Atm;
    else if (mny == "itm") m = Moneyness::Itm;
    else if (mny == "otm") m = Moneyness::Otm;
    else throw Error(ErrorCode::ParseError, "moneyness must be atm, itm or otm, got '" + mny + "'");
    return make_swap(curve, d, m, maturity, notional);
}

std::string to_string(SweepAxis a) {
    switch (a) {
        case SweepAxis::RhoRI: return "rho_rI";
        case SweepAxis::RhoRC: return "rho_rC";
        case SweepAxis::RhoIC: return "rho_IC";
    }
    return "";
}

const std::vector<double>& default_sweep_grid() {
    static const std::vector<double> g = {-0.7, -0.525, -0.35, -0.175, 0.0, 0.175, 0.35, 0.525, 0.7};
    return g;
}

const std::vector<double>& default_sweep_curves() {
    static const std::vector<double> c = {-0.7, -0.35, 0.0, 0.35, 0.7};
    return c;
}

SweepTable sweep_correlation(const Scenario& s, const SwapSpec& swap, SweepAxis axis,
                             const std::vector<double>& grid, const FvaFlags& flags, const SimConfig& cfg,
                             const std::vector<double>& curve_rho_rI) {
    if (grid.empty()) throw Error(ErrorCode::DomainError, "empty sweep grid");
    SweepTable table;
    table.axis = axis;
    table.values = grid;
    if (axis == SweepAxis::RhoRC) {
        if (curve_rho_rI.empty()) throw Error(ErrorCode::DomainError, "no rho_rI curves for the rho_rC sweep");
        for (double r : curve_rho_rI) table.curves.push_back({fmt::format("rho_rI={}", r), r, {}});
    } else {
        table.curves.push_back({"base", std::nullopt, {}});
    }

    auto corr_at = [&](const SweepCurve& c, double v) {
        CorrelationBlock b = s.corr;
        switch (axis) {
            case SweepAxis::RhoRI: b.rho_rI = v; break;
            case SweepAxis::RhoRC:
                b.rho_rC = v;
                b.rho_rI = *c.rho_rI;
                break;
            case SweepAxis::RhoIC: b.rho_IC = v; break;
        }
        return b;
    };

    // reject bad points before spending any simulation time
    std::vector<std::string> bad;
    for (const auto& c : table.curves) {
        for (double v : grid) {
            try {
                cholesky3(corr_at(c, v));
            } catch (const Error&) {
                bad.push_back(c.rho_rI ? fmt::format("(rho_rI={}, {}={})", *c.rho_rI, to_string(axis), v)
                                       : fmt::format("{}={}", to_string(axis), v));
            }
        }
    }
    if (!bad.empty()) throw Error(ErrorCode::NotSPD, fmt::format("non-SPD sweep points: {}", fmt::join(bad, ", ")));

    Scenario point = s;
    for (auto& c : table.curves) {
        for (double v : grid) {
            point.corr = corr_at(c, v);
            auto m = build_models(point);
            // same seed at every point: common random numbers
            auto paths = simulate(point, m, cfg, swap.maturity);
            auto runs = evaluate_regimes(point, m, paths, swap, {flags}, cfg.threads);
            c.points.push_back({v, runs.front().result});
        }
    }
    return table;
}

}  // namespace fvawwr
