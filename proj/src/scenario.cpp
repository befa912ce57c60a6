#include "fvawwr/scenario.hpp"

#include <fstream>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

namespace {

CreditSetup credit(const std::string& curve, double x0, double a, double theta, double sigma) {
    return {"builtin:" + curve, builtin_curve(curve), {x0, a, theta, sigma, 0.6}};
}

Scenario base_scenario() {
    Scenario s;
    s.yield_curve_ref = "builtin:flat5";
    s.yield_curve = builtin_curve("flat5");
    s.hw = {1e-5, 0.00774, 0.0};
    s.credit_I = credit("aaa", 0.0016939, 0.05, 0.015390, 0.02);
    s.credit_C = credit("aaa", 0.0016939, 0.05, 0.015390, 0.02);
    s.corr = {-0.35, -0.35, 0.0};
    s.implied_vols = {0.1, 0.07395, 0.07395};
    return s;
}

void set_yield(Scenario& s, const std::string& name) {
    s.yield_curve_ref = "builtin:" + name;
    s.yield_curve = builtin_curve(name);
}

Scenario make_builtin(int id) {
    Scenario s = base_scenario();
    switch (id) {
        case 1:
            set_yield(s, "eur1d");
            s.hw.sigma = 0.00284;
            s.credit_C = credit("bbb", 0.0063774, 0.2, 0.035447, 0.08);
            s.corr = {-0.35, -0.5, 0.0};
            s.implied_vols = {0.1, 0.07351, 0.12090};
            break;
        case 2: break;
        case 3:
            s.hw.sigma = 0.01556;
            s.implied_vols.r = 0.2;
            break;
        case 4: s.hw = {0.05, 0.01285, 0.0}; break;
        case 5:
            s.hw = {0.05, 0.02578, 0.0};
            s.implied_vols.r = 0.2;
            break;
        case 6:
            set_yield(s, "eur1d");
            s.hw.sigma = 0.00284;
            break;
        case 7:
            s.credit_I = credit("bbb", 0.0098774, 0.05, 0.041033, 0.02);
            s.credit_C = credit("bbb", 0.0098774, 0.05, 0.041033, 0.02);
            s.implied_vols = {0.1, 0.05224, 0.05224};
            break;
        default: {
            // 8..17 start from 8, 18..21 from 9
            s.credit_C = credit("bbb", 0.0098774, 0.05, 0.041033, 0.02);
            s.implied_vols.C = 0.05224;
            if (id == 8) break;
            if (id == 9 || id >= 18) {
                s.credit_C = credit("bbb", 0.0078774, 0.2, 0.033825, 0.045);
                s.implied_vols.C = 0.07359;
                if (id == 18) s.corr.rho_rI = -0.7;
                if (id == 19) s.corr.rho_rC = -0.7;
                if (id == 20) s.corr = {-0.7, -0.7, 0.0};
                if (id == 21) s.corr = {0.7, 0.7, 0.0};
                break;
            }
            switch (id) {
                case 10:
                    s.credit_C = credit("b", 0.071957, 0.06, 0.16435, 0.045);
                    s.implied_vols.C = 0.07330;
                    break;
                case 11:
                    s.credit_C = credit("b", 0.057657, 0.02, 0.44319, 0.08);
                    s.implied_vols.C = 0.13624;
                    break;
                case 12:
                    s.credit_I = credit("aaa", 0.0011139, 0.15, 0.012183, 0.02);
                    s.implied_vols.I = 0.05871;
                    break;
                case 13:
                    s.credit_I = credit("aaa", 0.0016539, 0.05, 0.016763, 0.04);
                    s.implied_vols.I = 0.14155;
                    break;
                case 14:
                    s.credit_I = credit("aaa", 0.00052392, 0.15, 0.012475, 0.04);
                    s.implied_vols.I = 0.11033;
                    break;
                case 15:
                    s.credit_C = credit("bbb", 0.0088774, 0.15, 0.033506, 0.02);
                    s.implied_vols.C = 0.03840;
                    break;
                case 16:
                    s.credit_C = credit("bbb", 0.0097774, 0.05, 0.045113, 0.04);
                    s.implied_vols.C = 0.10292;
                    break;
                case 17:
                    s.credit_C = credit("bbb", 0.0087774, 0.15, 0.034305, 0.04);
                    s.implied_vols.C = 0.07579;
                    break;
            }
        }
    }
    s.name = fmt::format("builtin:{}", id);
    return s;
}

CreditSetup credit_from_json(const nlohmann::json& j, const std::filesystem::path& base) {
    CreditSetup c;
    c.curve_ref = j.at("curve").get<std::string>();
    c.curve = resolve_curve(c.curve_ref, base, CurveKind::Credit);
    c.params = {j.at("x0").get<double>(), j.at("a").get<double>(), j.at("theta").get<double>(),
                j.at("sigma").get<double>(), j.value("lgd", 0.6)};
    return c;
}

nlohmann::ordered_json credit_to_json(const CreditSetup& c) {
    nlohmann::ordered_json j;
    j["curve"] = c.curve_ref;
    j["x0"] = c.params.x0;
    j["a"] = c.params.a;
    j["theta"] = c.params.theta;
    j["sigma"] = c.params.sigma;
    j["lgd"] = c.params.lgd;
    return j;
}

}  // namespace

Scenario builtin_scenario(int id) {
    if (id < 1 || id > kBuiltinScenarioCount)
        throw Error(ErrorCode::UnknownScenario, fmt::format("no builtin scenario {} (have 1..{})", id, kBuiltinScenarioCount));
    Scenario s = make_builtin(id);
    validate(s);
    return s;
}

Curve resolve_curve(const std::string& ref, const std::filesystem::path& base_dir, CurveKind kind) {
    const std::string prefix = "builtin:";
    if (ref.rfind(prefix, 0) == 0) {
        Curve c = builtin_curve(ref.substr(prefix.size()));
        if (c.kind() != kind)
            throw Error(ErrorCode::ParseError, fmt::format("curve {} has the wrong kind for this slot", ref));
        return c;
    }
    std::filesystem::path p(ref);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return load_curve_csv(p, kind);
}

void validate(const Scenario& s) {
    for (const auto* c : {&s.credit_I, &s.credit_C}) {
        auto f = feller_check(c->params);
        if (!f.holds)
            throw Error(ErrorCode::FellerViolation,
                        fmt::format("{}: 2*a*theta - sigma^2 = {} for {} party", s.name, f.margin,
                                    c == &s.credit_I ? "I" : "C"));
    }
    cholesky3(s.corr);
}

Scenario load_scenario(const std::string& source) {
    if (source.rfind("builtin:", 0) == 0) {
        std::string id = source.substr(8);
        int n = 0;
        try {
            std::size_t used = 0;
            n = std::stoi(id, &used);
            if (used != id.size()) throw std::invalid_argument(id);
        } catch (const std::exception&) {
            throw Error(ErrorCode::UnknownScenario, "bad builtin scenario id '" + id + "'");
        }
        return builtin_scenario(n);
    }
    std::string path = source.rfind("file:", 0) == 0 ? source.substr(5) : source;
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open scenario file " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, path + ": " + e.what());
    }
    Scenario s = scenario_from_json(j, std::filesystem::path(path).parent_path());
    if (s.name.empty()) s.name = path;
    return s;
}

nlohmann::ordered_json scenario_to_json(const Scenario& s) {
    nlohmann::ordered_json j;
    j["name"] = s.name;
    j["yield_curve"] = s.yield_curve_ref;
    j["hull_white"] = {{"x0", s.hw.x0}, {"a", s.hw.a}, {"sigma", s.hw.sigma}};
    j["credit_I"] = credit_to_json(s.credit_I);
    j["credit_C"] = credit_to_json(s.credit_C);
    j["correlation"] = {{"rho_rI", s.corr.rho_rI}, {"rho_rC", s.corr.rho_rC}, {"rho_IC", s.corr.rho_IC}};
    j["implied_vols"] = {{"r", s.implied_vols.r}, {"I", s.implied_vols.I}, {"C", s.implied_vols.C}};
    return j;
}

Scenario scenario_from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    Scenario s;
    try {
        s.name = j.value("name", std::string());
        s.yield_curve_ref = j.at("yield_curve").get<std::string>();
        s.yield_curve = resolve_curve(s.yield_curve_ref, base_dir, CurveKind::Yield);
        const auto& hw = j.at("hull_white");
        s.hw = {hw.at("a").get<double>(), hw.at("sigma").get<double>(), hw.value("x0", 0.0)};
        s.credit_I = credit_from_json(j.at("credit_I"), base_dir);
        s.credit_C = credit_from_json(j.at("credit_C"), base_dir);
        const auto& c = j.at("correlation");
        s.corr = {c.at("rho_rI").get<double>(), c.at("rho_rC").get<double>(), c.value("rho_IC", 0.0)};
        if (j.contains("implied_vols")) {
            const auto& v = j["implied_vols"];
            s.implied_vols = {v.value("r", 0.0), v.value("I", 0.0), v.value("C", 0.0)};
        }
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorCode::ParseError, std::string("scenario: ") + e.what());
    }
    validate(s);
    return s;
}

}  // namespace fvawwr
