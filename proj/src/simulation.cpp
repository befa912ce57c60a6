#include "fvawwr/simulation.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include <boost/random/mersenne_twister.hpp>
#include <boost/random/normal_distribution.hpp>
#include <fmt/format.h>

#include "fvawwr/errors.hpp"
#include "fvawwr/parallel.hpp"

namespace fvawwr {

Cholesky3 cholesky3(const CorrelationBlock& c) {
    for (double r : {c.rho_rI, c.rho_rC, c.rho_IC})
        if (!(r >= -1.0 && r <= 1.0)) throw Error(ErrorCode::NotSPD, fmt::format("correlation {} outside [-1,1]", r));
    double m2 = 1.0 - c.rho_rI * c.rho_rI;
    if (!(m2 > 0.0)) throw Error(ErrorCode::NotSPD, fmt::format("leading 2x2 minor {} <= 0", m2));
    double det = 1.0 + 2.0 * c.rho_rI * c.rho_rC * c.rho_IC - c.rho_rI * c.rho_rI - c.rho_rC * c.rho_rC -
                 c.rho_IC * c.rho_IC;
    if (!(det > 0.0))
        throw Error(ErrorCode::NotSPD,
                    fmt::format("determinant {} <= 0 (rho_rI={}, rho_rC={}, rho_IC={})", det, c.rho_rI, c.rho_rC,
                                c.rho_IC));
    Cholesky3 l{};
    l[0][0] = 1.0;
    l[1][0] = c.rho_rI;
    l[1][1] = std::sqrt(m2);
    l[2][0] = c.rho_rC;
    l[2][1] = (c.rho_IC - c.rho_rI * c.rho_rC) / l[1][1];
    l[2][2] = std::sqrt(std::max(0.0, 1.0 - l[2][0] * l[2][0] - l[2][1] * l[2][1]));
    return l;
}

void validate(const SimConfig& cfg) {
    if (cfg.n_paths < 2) throw Error(ErrorCode::DomainError, "n_paths must be >= 2");
    if (cfg.dates_per_year < 1) throw Error(ErrorCode::DomainError, "dates_per_year must be >= 1");
    if (cfg.sub_steps < 1) throw Error(ErrorCode::DomainError, "sub_steps must be >= 1");
    if (cfg.antithetic && cfg.n_paths % 2 != 0)
        throw Error(ErrorCode::DomainError, "antithetic sampling needs an even path count");
}

std::vector<double> exposure_grid(double horizon, int dates_per_year) {
    double steps = horizon * dates_per_year;
    long k = std::lround(steps);
    if (std::abs(steps - static_cast<double>(k)) > 1e-9 || k < 1)
        throw Error(ErrorCode::GridMismatch,
                    fmt::format("horizon {} is not a whole number of 1/{} year steps", horizon, dates_per_year));
    std::vector<double> grid(static_cast<std::size_t>(k) + 1);
    for (long i = 0; i <= k; ++i) grid[static_cast<std::size_t>(i)] = static_cast<double>(i) / dates_per_year;
    grid.back() = horizon;
    return grid;
}

namespace {

struct StepTables {
    double dt = 0.0;
    double ou_mean = 0.0;
    double ou_sd = 0.0;
    std::vector<double> int_b_r;  // per sub-step
    std::vector<double> bbar_I;   // average shift over the sub-step
    std::vector<double> bbar_C;
};

struct CirStep {
    double a, theta, sigma;
};

inline double cir_euler(double x, const CirStep& c, double dt, double sqrt_dt, double z) {
    double xp = std::max(x, 0.0);
    return x + c.a * (c.theta - xp) * dt + c.sigma * std::sqrt(xp) * sqrt_dt * z;
}

}  // namespace

PathBlock simulate(const HullWhiteModel& hw, const CirModel& credit_I, const CirModel& credit_C,
                   const CorrelationBlock& corr, const SimConfig& cfg, double horizon) {
    validate(cfg);
    const Cholesky3 L = cholesky3(corr);

    PathBlock pb;
    pb.grid = exposure_grid(horizon, cfg.dates_per_year);
    const std::size_t K = pb.grid.size() - 1;
    const std::size_t n = cfg.n_paths;
    const std::size_t cols = K + 1;
    for (Matrix* m : {&pb.x_r, &pb.int_r, &pb.x_I, &pb.Lambda_I, &pb.x_C, &pb.Lambda_C}) *m = Matrix(n, cols);

    const int sub = cfg.sub_steps;
    const std::size_t n_steps = K * static_cast<std::size_t>(sub);
    StepTables tab;
    tab.dt = 1.0 / (static_cast<double>(cfg.dates_per_year) * sub);
    tab.ou_mean = hw.ou_mean_factor(tab.dt);
    tab.ou_sd = hw.ou_stdev(tab.dt);
    tab.int_b_r.resize(n_steps);
    tab.bbar_I.resize(n_steps);
    tab.bbar_C.resize(n_steps);
    for (std::size_t k = 0; k < K; ++k) {
        double u0 = pb.grid[k], u1 = pb.grid[k + 1];
        for (int j = 0; j < sub; ++j) {
            double s0 = u0 + (u1 - u0) * j / sub;
            double s1 = j + 1 == sub ? u1 : u0 + (u1 - u0) * (j + 1) / sub;
            std::size_t s = k * sub + j;
            tab.int_b_r[s] = hw.shift().integral(s0, s1);
            tab.bbar_I[s] = credit_I.shift().integral(s0, s1) / (s1 - s0);
            tab.bbar_C[s] = credit_C.shift().integral(s0, s1) / (s1 - s0);
        }
    }
    const double dt = tab.dt;
    const double sqrt_dt = std::sqrt(dt);
    const CirStep ci{credit_I.params().a, credit_I.params().theta, credit_I.params().sigma};
    const CirStep cc{credit_C.params().a, credit_C.params().theta, credit_C.params().sigma};
    const double xr0 = hw.params().x0, xi0 = credit_I.params().x0, xc0 = credit_C.params().x0;

    // eps holds 3 iid normals per sub-step, negated for the antithetic twin.
    auto run_path = [&](std::size_t p, const std::vector<double>& eps, double sign) {
        double xr = xr0, ir = 0.0, xi = xi0, li = 0.0, xc = xc0, lc = 0.0;
        double* o_xr = pb.x_r.row(p);
        double* o_ir = pb.int_r.row(p);
        double* o_xi = pb.x_I.row(p);
        double* o_li = pb.Lambda_I.row(p);
        double* o_xc = pb.x_C.row(p);
        double* o_lc = pb.Lambda_C.row(p);
        o_xr[0] = xr, o_ir[0] = 0.0, o_xi[0] = xi, o_li[0] = 0.0, o_xc[0] = xc, o_lc[0] = 0.0;
        std::size_t s = 0;
        for (std::size_t k = 0; k < K; ++k) {
            for (int j = 0; j < sub; ++j, ++s) {
                double e0 = sign * eps[3 * s], e1 = sign * eps[3 * s + 1], e2 = sign * eps[3 * s + 2];
                double zr = e0;
                double zi = L[1][0] * e0 + L[1][1] * e1;
                double zc = L[2][0] * e0 + L[2][1] * e1 + L[2][2] * e2;

                double xr_new = tab.ou_mean * xr + tab.ou_sd * zr;
                ir += 0.5 * dt * (xr + xr_new) + tab.int_b_r[s];
                xr = xr_new;

                double xi_new = cir_euler(xi, ci, dt, sqrt_dt, zi);
                double bi = tab.bbar_I[s];
                li += 0.5 * dt * (std::max(xi + bi, 0.0) + std::max(xi_new + bi, 0.0));
                xi = xi_new;

                double xc_new = cir_euler(xc, cc, dt, sqrt_dt, zc);
                double bc = tab.bbar_C[s];
                lc += 0.5 * dt * (std::max(xc + bc, 0.0) + std::max(xc_new + bc, 0.0));
                xc = xc_new;
            }
            if (!(std::isfinite(xr) && std::isfinite(ir) && std::isfinite(xi) && std::isfinite(li) &&
                  std::isfinite(xc) && std::isfinite(lc)))
                throw Error(ErrorCode::NumericalError, fmt::format("non-finite state on path {} at date {}", p, k + 1));
            o_xr[k + 1] = xr, o_ir[k + 1] = ir, o_xi[k + 1] = xi;
            o_li[k + 1] = li, o_xc[k + 1] = xc, o_lc[k + 1] = lc;
        }
    };

    const std::size_t n_chunks = (n + kPathsPerChunk - 1) / kPathsPerChunk;
    parallel_for(n_chunks, cfg.threads, [&](std::size_t chunk) {
        std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed), static_cast<std::uint32_t>(cfg.seed >> 32),
                          static_cast<std::uint32_t>(chunk)};
        boost::random::mt19937_64 eng(seq);
        boost::random::normal_distribution<double> normal;
        std::vector<double> eps(3 * n_steps);
        const std::size_t begin = chunk * kPathsPerChunk;
        const std::size_t end = std::min(n, begin + kPathsPerChunk);
        for (std::size_t p = begin; p < end; ++p) {
            if (cfg.antithetic && (p - begin) % 2 == 1) {
                run_path(p, eps, -1.0);
                continue;
            }
            for (double& e : eps) e = normal(eng);
            run_path(p, eps, 1.0);
        }
    });
    return pb;
}

}  // namespace fvawwr
