#include "fvawwr/report.hpp"

#include <fstream>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"

#ifndef FVAWWR_VERSION
#define FVAWWR_VERSION "0.0.0"
#endif

namespace fvawwr {

const char* version() { return FVAWWR_VERSION; }

RunMetadata make_metadata(const std::string& scenario, const SwapSpec& swap, const SimConfig& cfg) {
    return {scenario, swap_label(swap), cfg.seed, cfg.n_paths, cfg.sub_steps, cfg.dates_per_year};
}

std::string metadata_line(const RunMetadata& m) {
    return fmt::format("# fvawwr {} scenario={} swap={} seed={} paths={} sub_steps={} dates_per_year={}", version(),
                       m.scenario, m.swap, m.seed, m.paths, m.sub_steps, m.dates_per_year);
}

std::string fmt_num(double x) { return fmt::format("{:.17g}", x); }

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    return out;
}

const char* incl(bool b) { return b ? "include" : "exclude"; }

}  // namespace

void write_fva_result_csv(const std::filesystem::path& path, const RunMetadata& meta,
                          const std::vector<RegimeRun>& runs) {
    auto out = open_out(path);
    out << metadata_line(meta) << '\n';
    out << "spread,tau_i,tau_c,fva_indep,fva_wwr,fva,wwr_pct,ratio,se_indep,se_wwr,se_total,seed,n_paths\n";
    for (const auto& r : runs) {
        const auto& x = r.result;
        out << fmt::format("{},{},{},{},{},{},{},{},{},{},{},{},{}\n", to_string(r.flags.spread),
                           incl(r.flags.include_tau_I), incl(r.flags.include_tau_C), fmt_num(x.fva_indep),
                           fmt_num(x.fva_wwr), fmt_num(x.fva()), fmt_num(x.wwr_pct), fmt_num(x.ratio),
                           fmt_num(x.se_indep), fmt_num(x.se_wwr), fmt_num(x.se_total), meta.seed, x.n_paths);
    }
}

void write_exposure_csv(const std::filesystem::path& path, const RunMetadata& meta,
                        const std::vector<RegimeRun>& runs) {
    auto out = open_out(path);
    out << metadata_line(meta) << '\n';
    out << "spread,tau_i,tau_c,u,epe_indep,epe_wwr,se_indep,se_wwr\n";
    for (const auto& r : runs) {
        const auto& p = r.profile;
        for (std::size_t k = 0; k < p.grid.size(); ++k)
            out << fmt::format("{},{},{},{},{},{},{},{}\n", to_string(r.flags.spread), incl(r.flags.include_tau_I),
                               incl(r.flags.include_tau_C), fmt_num(p.grid[k]), fmt_num(p.epe_indep[k]),
                               fmt_num(p.epe_wwr[k]), fmt_num(p.se_indep[k]), fmt_num(p.se_wwr[k]));
    }
}

void write_fit_gates_csv(const std::filesystem::path& path, const RunMetadata& meta, const FitGates& g) {
    auto out = open_out(path);
    out << metadata_line(meta) << '\n';
    out << "u,df_curve,df_mc,df_se,surv_I_curve,surv_I_mc,surv_I_se,surv_C_curve,surv_C_mc,surv_C_se\n";
    for (std::size_t k = 0; k < g.grid.size(); ++k) {
        out << fmt_num(g.grid[k]);
        for (int q = 0; q < 3; ++q)
            out << ',' << fmt_num(g.curve[q][k]) << ',' << fmt_num(g.mean[q][k]) << ',' << fmt_num(g.se[q][k]);
        out << '\n';
    }
}

void write_sweep_csv(const std::filesystem::path& path, const RunMetadata& meta, const SweepTable& table) {
    auto out = open_out(path);
    out << metadata_line(meta) << '\n';
    out << to_string(table.axis);
    for (const char* what : {"ratio", "fva", "fva_indep", "se_total"})
        for (const auto& c : table.curves) out << ',' << what << '[' << c.label << ']';
    out << '\n';
    for (std::size_t i = 0; i < table.values.size(); ++i) {
        out << fmt_num(table.values[i]);
        for (int what = 0; what < 4; ++what) {
            for (const auto& c : table.curves) {
                const auto& r = c.points[i].result;
                double v = what == 0 ? r.ratio : what == 1 ? r.fva() : what == 2 ? r.fva_indep : r.se_total;
                out << ',' << fmt_num(v);
            }
        }
        out << '\n';
    }
}

nlohmann::ordered_json metadata_json(const RunMetadata& m) {
    return {{"tool", "fvawwr"},   {"version", version()}, {"scenario", m.scenario},
            {"swap", m.swap},     {"seed", m.seed},       {"paths", m.paths},
            {"sub_steps", m.sub_steps}, {"dates_per_year", m.dates_per_year}};
}

nlohmann::ordered_json result_json(const FvaFlags& f, const FvaResult& r) {
    return {{"spread", to_string(f.spread)},
            {"tau_i", incl(f.include_tau_I)},
            {"tau_c", incl(f.include_tau_C)},
            {"fva_indep", r.fva_indep},
            {"fva_wwr", r.fva_wwr},
            {"fva", r.fva()},
            {"wwr_pct", r.wwr_pct},
            {"ratio", r.ratio},
            {"se_indep", r.se_indep},
            {"se_wwr", r.se_wwr},
            {"se_total", r.se_total},
            {"n_paths", r.n_paths}};
}

nlohmann::ordered_json runs_json(const RunMetadata& meta, const std::vector<RegimeRun>& runs, bool with_profiles) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["results"] = nlohmann::ordered_json::array();
    for (const auto& r : runs) {
        auto x = result_json(r.flags, r.result);
        if (with_profiles) {
            x["profile"] = {{"u", r.profile.grid},
                            {"epe_indep", r.profile.epe_indep},
                            {"epe_wwr", r.profile.epe_wwr},
                            {"se_indep", r.profile.se_indep},
                            {"se_wwr", r.profile.se_wwr}};
        }
        j["results"].push_back(std::move(x));
    }
    return j;
}

nlohmann::ordered_json sweep_json(const RunMetadata& meta, const SweepTable& table) {
    nlohmann::ordered_json j;
    j["metadata"] = metadata_json(meta);
    j["axis"] = to_string(table.axis);
    j["values"] = table.values;
    j["curves"] = nlohmann::ordered_json::array();
    for (const auto& c : table.curves) {
        nlohmann::ordered_json cj;
        cj["label"] = c.label;
        if (c.rho_rI) cj["rho_rI"] = *c.rho_rI;
        for (const auto& p : c.points) {
            cj["ratio"].push_back(p.result.ratio);
            cj["fva"].push_back(p.result.fva());
            cj["fva_indep"].push_back(p.result.fva_indep);
            cj["se_total"].push_back(p.result.se_total);
        }
        j["curves"].push_back(std::move(cj));
    }
    return j;
}

}  // namespace fvawwr
