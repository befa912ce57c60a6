#include "fvawwr/curve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

namespace {

constexpr double kFdStep = 1e-4;
// Slack for times that come out of grid arithmetic a few ulps past 30.
constexpr double kEndSlack = 1e-10;

}  // namespace

Curve::Curve() : t_{0.0}, log_df_{0.0} {}

Curve build_curve(std::vector<CurvePillar> pillars, CurveKind kind) {
    if (pillars.empty()) throw Error(ErrorCode::DomainError, "curve needs at least one pillar");
    if (pillars.front().t != 0.0) pillars.insert(pillars.begin(), CurvePillar{0.0, 1.0});

    Curve c;
    c.kind_ = kind;
    c.t_.clear();
    c.log_df_.clear();
    for (std::size_t i = 0; i < pillars.size(); ++i) {
        const auto& p = pillars[i];
        if (!(p.t >= 0.0) || !std::isfinite(p.t))
            throw Error(ErrorCode::NonMonotoneTimes, fmt::format("invalid pillar time {}", p.t));
        if (i > 0 && !(p.t > pillars[i - 1].t))
            throw Error(ErrorCode::NonMonotoneTimes,
                        fmt::format("pillar times must increase strictly (t={} after t={})", p.t,
                                    pillars[i - 1].t));
        if (!(p.df > 0.0) || !std::isfinite(p.df))
            throw Error(ErrorCode::NonPositiveFactor, fmt::format("df={} at t={}", p.df, p.t));
        c.t_.push_back(p.t);
        c.log_df_.push_back(std::log(p.df));
    }
    // df(0) = 1 exactly, even if the table says 1.000000 with noise
    c.log_df_.front() = 0.0;
    return c;
}

double Curve::log_df(double t) const {
    if (!(t >= 0.0) || t > t_.back() + kEndSlack)
        throw Error(ErrorCode::OutOfRange,
                    fmt::format("t={} outside curve range [0, {}]", t, t_.back()));
    if (t >= t_.back()) return log_df_.back();
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    if (t == t_[i]) return log_df_[i];
    double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
    return log_df_[i] + w * (log_df_[i + 1] - log_df_[i]);
}

double Curve::df(double t) const {
    if (t == 0.0) return 1.0;
    return std::exp(log_df(t));
}

double Curve::zero_rate(double t) const {
    if (!(t > 0.0)) throw Error(ErrorCode::DomainError, "zero rate undefined at t<=0");
    return -log_df(t) / t;
}

double Curve::inst_forward(double t) const {
    const double end = t_.back();
    if (!(t >= 0.0) || t > end + kEndSlack)
        throw Error(ErrorCode::OutOfRange,
                    fmt::format("t={} outside curve range [0, {}]", t, end));
    if (end < kFdStep) return 0.0;  // single-pillar identity curve
    double lo = t - kFdStep;
    double hi = t + kFdStep;
    if (lo < 0.0) {
        lo = t;
        hi = t + kFdStep;
    } else if (hi > end) {
        lo = std::min(t, end) - kFdStep;
        hi = std::min(t, end);
    }
    return -(log_df(hi) - log_df(lo)) / (hi - lo);
}

std::vector<CurvePillar> Curve::pillars() const {
    std::vector<CurvePillar> out;
    out.reserve(t_.size());
    for (std::size_t i = 0; i < t_.size(); ++i) out.push_back({t_[i], std::exp(log_df_[i])});
    return out;
}

Curve load_curve_csv(const std::filesystem::path& path, CurveKind kind) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open curve file " + path.string());
    std::string line;
    std::vector<CurvePillar> pillars;
    bool header_seen = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header_seen) {
            if (line != "t,df")
                throw Error(ErrorCode::ParseError,
                            fmt::format("{}: expected header 't,df', got '{}'", path.string(), line));
            header_seen = true;
            continue;
        }
        std::istringstream row(line);
        std::string a, b;
        if (!std::getline(row, a, ',') || !std::getline(row, b))
            throw Error(ErrorCode::ParseError, fmt::format("{}:{}: bad row", path.string(), lineno));
        try {
            pillars.push_back({std::stod(a), std::stod(b)});
        } catch (const std::exception&) {
            throw Error(ErrorCode::ParseError, fmt::format("{}:{}: bad number", path.string(), lineno));
        }
    }
    if (!header_seen) throw Error(ErrorCode::ParseError, path.string() + ": empty curve file");
    return build_curve(std::move(pillars), kind);
}

void write_curve_csv(const std::filesystem::path& path, const Curve& curve) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path.string());
    out << "t,df\n";
    for (const auto& p : curve.pillars()) out << fmt::format("{:.17g},{:.17g}\n", p.t, p.df);
}

// Reference tables, verbatim.
namespace {

const std::vector<double> kYieldTimes = {0,   0.25, 0.5, 0.75, 1,  1.5, 2,  2.5, 3,  4, 5,
                                         6,   7,    8,   9,    10, 12,  15, 20,  25, 30};
const std::vector<double> kCreditTimes = {0, 0.5, 1, 2, 3, 4, 5, 7, 10, 15, 20, 30};

const std::map<std::string, std::pair<CurveKind, std::vector<double>>>& tables() {
    static const std::map<std::string, std::pair<CurveKind, std::vector<double>>> t = {
        {"flat5",
         {CurveKind::Yield,
          {1.000000, 0.987578, 0.975310, 0.963194, 0.951229, 0.927743, 0.904837,
           0.882497, 0.860708, 0.818731, 0.778801, 0.740818, 0.704688, 0.670320,
           0.637628, 0.606531, 0.548812, 0.472367, 0.367879, 0.286505, 0.223130}}},
        {"eur1d",
         {CurveKind::Yield,
          {1.000000, 1.001187, 1.002448, 1.003773, 1.005158, 1.008088, 1.011132,
           1.014134, 1.016990, 1.022401, 1.026945, 1.030583, 1.033099, 1.034654,
           1.035117, 1.034622, 1.031876, 1.025681, 1.021923, 1.032268, 1.053926}}},
        {"aaa",
         {CurveKind::Credit,
          {1.000000, 0.998984, 0.997659, 0.993528, 0.987626, 0.979424, 0.969391, 0.946630,
           0.912382, 0.861670, 0.813199, 0.721512}}},
        {"bbb",
         {CurveKind::Credit,
          {1.000000, 0.994676, 0.988348, 0.970999, 0.948562, 0.920897, 0.888371, 0.828067,
           0.745380, 0.632957, 0.537460, 0.386538}}},
        {"b",
         {CurveKind::Credit,
          {1.000000, 0.963312, 0.919991, 0.831220, 0.741957, 0.657705, 0.579658, 0.439022,
           0.296235, 0.160474, 0.085857, 0.023506}}},
    };
    return t;
}

}  // namespace

const std::vector<std::string>& builtin_curve_names() {
    static const std::vector<std::string> names = {"flat5", "eur1d", "aaa", "bbb", "b"};
    return names;
}

Curve builtin_curve(const std::string& name) {
    auto it = tables().find(name);
    if (it == tables().end()) throw Error(ErrorCode::UnknownScenario, "no builtin curve '" + name + "'");
    const auto& [kind, dfs] = it->second;
    const auto& times = kind == CurveKind::Yield ? kYieldTimes : kCreditTimes;
    std::vector<CurvePillar> pillars;
    for (std::size_t i = 0; i < dfs.size(); ++i) pillars.push_back({times[i], dfs[i]});
    return build_curve(std::move(pillars), kind);
}

}  // namespace fvawwr
