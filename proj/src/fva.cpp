#include "fvawwr/fva.hpp"

#include <cmath>

#include <fmt/format.h>

#include "fvawwr/errors.hpp"

namespace fvawwr {

std::string to_string(SpreadKind k) { return k == SpreadKind::Stochastic ? "stochastic" : "deterministic"; }

std::string regime_label(const FvaFlags& f) {
    return fmt::format("{} {}/{}", to_string(f.spread), f.include_tau_I ? "incl" : "excl",
                       f.include_tau_C ? "incl" : "excl");
}

Field Field::per_date(std::vector<double> v) {
    Field f(Kind::PerDate);
    f.by_date_ = std::move(v);
    return f;
}

Field Field::per_path(Matrix m) {
    Field f(Kind::PerPath);
    f.by_path_ = std::move(m);
    return f;
}

double Field::at(std::size_t p, std::size_t k) const {
    switch (kind_) {
        case Kind::Ones: return 1.0;
        case Kind::PerDate: return by_date_[k];
        case Kind::PerPath: return by_path_(p, k);
    }
    return 0.0;
}

double Field::date_value(std::size_t k) const { return kind_ == Kind::Ones ? 1.0 : by_date_[k]; }

Field borrowing_spread(const PathBlock& paths, const CirModel& credit_I, const SpreadInputs& s, SpreadKind kind) {
    if (!(s.lgd_I >= 0.0 && s.lgd_I <= 1.0)) throw Error(ErrorCode::DomainError, "lgd_I outside [0,1]");
    const auto& grid = paths.grid;
    const std::size_t K = grid.size();
    std::vector<double> b(K), l(K, 0.0);
    for (std::size_t k = 0; k < K; ++k) {
        b[k] = credit_I.shift()(grid[k]);
        if (s.liquidity) l[k] = s.liquidity(grid[k]);
    }
    if (kind == SpreadKind::Deterministic) {
        std::vector<double> xi(K);
        for (std::size_t k = 0; k < K; ++k) xi[k] = s.lgd_I * (credit_I.mean(grid[k]) + b[k]) + l[k];
        return Field::per_date(std::move(xi));
    }
    Matrix xi(paths.n_paths(), K);
    for (std::size_t p = 0; p < paths.n_paths(); ++p) {
        const double* x = paths.x_I.row(p);
        double* out = xi.row(p);
        for (std::size_t k = 0; k < K; ++k) out[k] = s.lgd_I * std::max(x[k] + b[k], 0.0) + l[k];
    }
    return Field::per_path(std::move(xi));
}

Field credit_adjustment(const PathBlock& paths, bool include_tau_I, bool include_tau_C) {
    if (!include_tau_I && !include_tau_C) return Field::ones();
    Matrix d(paths.n_paths(), paths.n_dates());
    for (std::size_t p = 0; p < d.rows; ++p) {
        for (std::size_t k = 0; k < d.cols; ++k) {
            double lam = 0.0;
            if (include_tau_I) lam += paths.Lambda_I(p, k);
            if (include_tau_C) lam += paths.Lambda_C(p, k);
            d(p, k) = std::exp(-lam);
        }
    }
    return Field::per_path(std::move(d));
}

std::vector<double> trapezoid_weights(const std::vector<double>& grid) {
    std::vector<double> w(grid.size(), 0.0);
    for (std::size_t k = 0; k + 1 < grid.size(); ++k) {
        double half = 0.5 * (grid[k + 1] - grid[k]);
        w[k] += half;
        w[k + 1] += half;
    }
    return w;
}

namespace {

void check_field(const Field& f, std::size_t n, std::size_t K, const char* name) {
    if (f.kind() == Field::Kind::PerDate && f.date_values().size() != K)
        throw Error(ErrorCode::ShapeMismatch, fmt::format("{} has {} dates, expected {}", name, f.date_values().size(), K));
    if (f.kind() == Field::Kind::PerPath && (f.path_values().rows != n || f.path_values().cols != K))
        throw Error(ErrorCode::ShapeMismatch, fmt::format("{} is {}x{}, expected {}x{}", name, f.path_values().rows,
                                                          f.path_values().cols, n, K));
}

}  // namespace

ExposureProfile decompose(const std::vector<double>& grid, const Field& f, const Field& g, const Matrix& h) {
    const std::size_t n = h.rows, K = h.cols;
    if (K != grid.size())
        throw Error(ErrorCode::ShapeMismatch, fmt::format("h has {} dates, grid has {}", K, grid.size()));
    if (n < 2) throw Error(ErrorCode::ShapeMismatch, "need at least two paths");
    check_field(f, n, K, "f");
    check_field(g, n, K, "g");

    const bool fg_det = f.deterministic() && g.deterministic();
    auto fg_at = [&](std::size_t p, std::size_t k) { return f.at(p, k) * g.at(p, k); };

    // first pass: sample means
    std::vector<double> s_h(K, 0.0), s_fg(K, 0.0), s_fgh(K, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        const double* hp = h.row(p);
        for (std::size_t k = 0; k < K; ++k) {
            s_h[k] += hp[k];
            if (!fg_det) {
                double fg = fg_at(p, k);
                s_fg[k] += fg;
                s_fgh[k] += fg * hp[k];
            }
        }
    }
    const double dn = static_cast<double>(n);
    ExposureProfile out;
    out.grid = grid;
    out.epe_indep.resize(K);
    out.epe_wwr.resize(K);
    std::vector<double> m_h(K), m_fg(K), m_fgh(K);
    for (std::size_t k = 0; k < K; ++k) {
        m_h[k] = s_h[k] / dn;
        if (fg_det) {
            m_fg[k] = f.date_value(k) * g.date_value(k);
            m_fgh[k] = m_fg[k] * m_h[k];
        } else {
            m_fg[k] = s_fg[k] / dn;
            m_fgh[k] = s_fgh[k] / dn;
        }
        // E[f]E[g]E[h] + E[h]Cov(f,g) collapses to E[h]E[fg]
        out.epe_indep[k] = m_fg[k] * m_h[k];
        out.epe_wwr[k] = m_fgh[k] - out.epe_indep[k];
    }

    // second pass: influence functions of both components
    const auto w = trapezoid_weights(grid);
    std::vector<double> ss_indep(K, 0.0), ss_wwr(K, 0.0);
    out.path_indep.assign(n, 0.0);
    out.path_wwr.assign(n, 0.0);
    for (std::size_t p = 0; p < n; ++p) {
        const double* hp = h.row(p);
        double psi_i = 0.0, psi_w = 0.0;
        for (std::size_t k = 0; k < K; ++k) {
            double fg = fg_det ? m_fg[k] : fg_at(p, k);
            double if_indep = m_fg[k] * (hp[k] - m_h[k]) + m_h[k] * (fg - m_fg[k]);
            // identically zero when f g is deterministic; skip the rounding residue
            double if_wwr = fg_det ? 0.0 : (fg * hp[k] - m_fgh[k]) - if_indep;
            ss_indep[k] += if_indep * if_indep;
            ss_wwr[k] += if_wwr * if_wwr;
            psi_i += w[k] * if_indep;
            psi_w += w[k] * if_wwr;
        }
        out.path_indep[p] = psi_i;
        out.path_wwr[p] = psi_w;
    }
    out.se_indep.resize(K);
    out.se_wwr.resize(K);
    for (std::size_t k = 0; k < K; ++k) {
        out.se_indep[k] = std::sqrt(ss_indep[k] / (dn * (dn - 1.0)));
        out.se_wwr[k] = std::sqrt(ss_wwr[k] / (dn * (dn - 1.0)));
    }
    return out;
}

FvaResult fva_integrate(const ExposureProfile& profile) {
    const auto w = trapezoid_weights(profile.grid);
    FvaResult r;
    for (std::size_t k = 0; k < w.size(); ++k) {
        r.fva_indep += w[k] * profile.epe_indep[k];
        r.fva_wwr += w[k] * profile.epe_wwr[k];
    }
    r.wwr_pct = 100.0 * r.fva_wwr / r.fva_indep;
    r.ratio = 1.0 + r.wwr_pct / 100.0;
    const std::size_t n = profile.path_indep.size();
    r.n_paths = n;
    if (n >= 2) {
        // influences have zero sample mean by construction
        double si = 0.0, sw = 0.0, st = 0.0;
        for (std::size_t p = 0; p < n; ++p) {
            double a = profile.path_indep[p], b = profile.path_wwr[p];
            si += a * a;
            sw += b * b;
            st += (a + b) * (a + b);
        }
        double d = static_cast<double>(n) * static_cast<double>(n - 1);
        r.se_indep = std::sqrt(si / d);
        r.se_wwr = std::sqrt(sw / d);
        r.se_total = std::sqrt(st / d);
    }
    return r;
}

FvaResult pool(const std::vector<FvaResult>& runs) {
    if (runs.empty()) throw Error(ErrorCode::ShapeMismatch, "nothing to pool");
    FvaResult r;
    r.fva_indep = 0.0;
    double vi = 0.0, vw = 0.0, vt = 0.0;
    for (const auto& x : runs) {
        r.fva_indep += x.fva_indep;
        r.fva_wwr += x.fva_wwr;
        vi += x.se_indep * x.se_indep;
        vw += x.se_wwr * x.se_wwr;
        vt += x.se_total * x.se_total;
        r.n_paths += x.n_paths;
    }
    double s = static_cast<double>(runs.size());
    r.fva_indep /= s;
    r.fva_wwr /= s;
    r.wwr_pct = 100.0 * r.fva_wwr / r.fva_indep;
    r.ratio = 1.0 + r.wwr_pct / 100.0;
    r.se_indep = std::sqrt(vi) / s;
    r.se_wwr = std::sqrt(vw) / s;
    r.se_total = std::sqrt(vt) / s;
    return r;
}

ExposureProfile regime_profile(const PathBlock& paths, const CirModel& credit_I, const SpreadInputs& s,
                               const FvaFlags& flags, const Matrix& h) {
    Field xi = borrowing_spread(paths, credit_I, s, flags.spread);
    Field d = credit_adjustment(paths, flags.include_tau_I, flags.include_tau_C);
    if (flags.spread == SpreadKind::Deterministic) return decompose(paths.grid, d, xi, h);
    // stochastic: f = D xi, g = 1
    if (d.kind() == Field::Kind::Ones) return decompose(paths.grid, xi, Field::ones(), h);
    Matrix f = std::move(xi).take_path_values();
    const Matrix& dm = d.path_values();
    for (std::size_t i = 0; i < f.data.size(); ++i) f.data[i] *= dm.data[i];
    return decompose(paths.grid, Field::per_path(std::move(f)), Field::ones(), h);
}

}  // namespace fvawwr
