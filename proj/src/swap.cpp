#include "fvawwr/swap.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"
#include "fvawwr/parallel.hpp"

namespace fvawwr {

namespace {

constexpr double kTimeTol = 1e-9;

}  // namespace

std::string to_string(SwapDirection d) { return d == SwapDirection::Receiver ? "receiver" : "payer"; }

std::string to_string(Moneyness m) {
    switch (m) {
        case Moneyness::Atm: return "atm";
        case Moneyness::Itm: return "itm";
        case Moneyness::Otm: return "otm";
    }
    return "atm";
}

std::string swap_label(const SwapSpec& s) { return to_string(s.direction) + ":" + to_string(s.moneyness); }

void validate(const SwapSpec& s) {
    if (!(s.notional > 0.0)) throw Error(ErrorCode::DomainError, "notional must be positive");
    if (s.pay_freq < 1) throw Error(ErrorCode::DomainError, "pay_freq must be >= 1");
    double n = s.maturity * s.pay_freq;
    if (!(s.maturity > 0.0) || std::abs(n - std::round(n)) > kTimeTol)
        throw Error(ErrorCode::DomainError, fmt::format("maturity {} is not a whole number of periods", s.maturity));
    if (!std::isfinite(s.fixed_rate)) throw Error(ErrorCode::DomainError, "fixed rate must be finite");
}

std::vector<double> payment_times(const SwapSpec& s) {
    long n = std::lround(s.maturity * s.pay_freq);
    std::vector<double> t(static_cast<std::size_t>(n));
    for (long i = 1; i <= n; ++i) t[static_cast<std::size_t>(i - 1)] = static_cast<double>(i) / s.pay_freq;
    t.back() = s.maturity;
    return t;
}

double par_rate(const Curve& curve, double maturity, int pay_freq) {
    SwapSpec s;
    s.maturity = maturity;
    s.pay_freq = pay_freq;
    validate(s);
    double tau = 1.0 / pay_freq, ann = 0.0;
    for (double t : payment_times(s)) ann += tau * curve.df(t);
    return (1.0 - curve.df(maturity)) / ann;
}

SwapSpec apply_moneyness(SwapSpec spec, double par, Moneyness label) {
    constexpr double kShock = 0.005;
    double sign = spec.direction == SwapDirection::Receiver ? 1.0 : -1.0;
    spec.moneyness = label;
    switch (label) {
        case Moneyness::Atm: spec.fixed_rate = par; break;
        case Moneyness::Itm: spec.fixed_rate = par + sign * kShock; break;
        case Moneyness::Otm: spec.fixed_rate = par - sign * kShock; break;
    }
    return spec;
}

double value_at(const SwapSpec& spec, const HullWhiteModel& hw, double u, double x_r, std::optional<double> fixing) {
    validate(spec);
    if (u < 0.0 || u > spec.maturity + kTimeTol)
        throw Error(ErrorCode::OutOfRange, fmt::format("u={} outside [0, {}]", u, spec.maturity));
    if (u >= spec.maturity - kTimeTol) return 0.0;
    const auto pay = payment_times(spec);
    const double tau = 1.0 / spec.pay_freq;
    std::size_t j = 0;
    while (pay[j] <= u + kTimeTol) ++j;  // first payment strictly after u
    double start = j == 0 ? 0.0 : pay[j - 1];
    bool at_start = std::abs(u - start) <= kTimeTol;
    double p_next = hw.zcb(u, pay[j], x_r);
    double p_fix;
    if (at_start) {
        p_fix = p_next;
    } else if (fixing) {
        p_fix = *fixing;
    } else {
        throw Error(ErrorCode::MissingFixing, fmt::format("u={} is inside period [{}, {}]", u, start, pay[j]));
    }
    double fixed_leg = 0.0;
    for (std::size_t i = j; i < pay.size(); ++i) fixed_leg += tau * hw.zcb(u, pay[i], x_r);
    double float_leg = p_next / p_fix - hw.zcb(u, pay.back(), x_r);
    double v = spec.notional * (spec.fixed_rate * fixed_leg - float_leg);
    return spec.direction == SwapDirection::Receiver ? v : -v;
}

namespace {

// Bond coefficients P(u_k, T_i) = exp(la - b x) for every grid date and every
// payment still ahead of it.
struct DateInfo {
    std::size_t first_pay = 0;  // index of first payment strictly after u
    bool period_start = false;
    bool expired = false;
    std::vector<double> la, b;  // for payments first_pay..end
};

std::vector<DateInfo> prepare(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw) {
    validate(spec);
    const auto pay = payment_times(spec);
    const auto& grid = paths.grid;
    if (grid.empty() || grid.back() < spec.maturity - kTimeTol)
        throw Error(ErrorCode::GridMismatch, "exposure grid ends before swap maturity");
    for (double t : pay) {
        auto it = std::lower_bound(grid.begin(), grid.end(), t - kTimeTol);
        if (it == grid.end() || std::abs(*it - t) > kTimeTol)
            throw Error(ErrorCode::GridMismatch, fmt::format("payment date {} is not an exposure date", t));
    }
    std::vector<DateInfo> info(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        double u = grid[k];
        auto& d = info[k];
        if (u >= spec.maturity - kTimeTol) {
            d.expired = true;
            continue;
        }
        std::size_t j = 0;
        while (pay[j] <= u + kTimeTol) ++j;
        d.first_pay = j;
        d.period_start = std::abs(u - (j == 0 ? 0.0 : pay[j - 1])) <= kTimeTol;
        for (std::size_t i = j; i < pay.size(); ++i) {
            d.la.push_back(hw.log_a(u, pay[i]));
            d.b.push_back(hw.b(u, pay[i]));
        }
    }
    return info;
}

template <class Out>
void value_kernel(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw, unsigned threads,
                  Out&& out) {
    const auto info = prepare(paths, spec, hw);
    const double tau = 1.0 / spec.pay_freq;
    const double sign = spec.direction == SwapDirection::Receiver ? 1.0 : -1.0;
    const std::size_t n = paths.n_paths();
    const std::size_t K = paths.n_dates();
    const std::size_t n_chunks = (n + kPathsPerChunk - 1) / kPathsPerChunk;
    parallel_for(n_chunks, threads, [&](std::size_t chunk) {
        const std::size_t end = std::min(n, (chunk + 1) * kPathsPerChunk);
        for (std::size_t p = chunk * kPathsPerChunk; p < end; ++p) {
            const double* xr = paths.x_r.row(p);
            double p_fix = 1.0;
            for (std::size_t k = 0; k < K; ++k) {
                const auto& d = info[k];
                if (d.expired) {
                    out(p, k, 0.0);
                    continue;
                }
                double x = xr[k];
                double fixed_leg = 0.0, p_next = 0.0, p_last = 0.0;
                for (std::size_t i = 0; i < d.la.size(); ++i) {
                    double bond = std::exp(d.la[i] - d.b[i] * x);
                    fixed_leg += bond;
                    if (i == 0) p_next = bond;
                    p_last = bond;
                }
                if (d.period_start) p_fix = p_next;
                double v = spec.notional * (spec.fixed_rate * tau * fixed_leg - (p_next / p_fix - p_last));
                if (!std::isfinite(v))
                    throw Error(ErrorCode::NumericalError,
                                fmt::format("non-finite swap value on path {} at u={}", p, paths.grid[k]));
                out(p, k, sign * v);
            }
        }
    });
}

}  // namespace

Matrix pathwise_values(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw, unsigned threads) {
    Matrix v(paths.n_paths(), paths.n_dates());
    value_kernel(paths, spec, hw, threads, [&v](std::size_t p, std::size_t k, double val) { v(p, k) = val; });
    return v;
}

Matrix pathwise_exposure(const PathBlock& paths, const SwapSpec& spec, const HullWhiteModel& hw, unsigned threads) {
    Matrix h(paths.n_paths(), paths.n_dates());
    value_kernel(paths, spec, hw, threads, [&](std::size_t p, std::size_t k, double val) {
        h(p, k) = val > 0.0 ? std::exp(-paths.int_r(p, k)) * val : 0.0;
    });
    return h;
}

}  // namespace fvawwr
