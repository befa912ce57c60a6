#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "fvawwr/cir.hpp"
#include "fvawwr/hull_white.hpp"
#include "fvawwr/matrix.hpp"

namespace fvawwr {

struct CorrelationBlock {
    double rho_rI = 0.0;
    double rho_rC = 0.0;
    double rho_IC = 0.0;
};

using Cholesky3 = std::array<std::array<double, 3>, 3>;

// Lower factor of [[1,rI,rC],[rI,1,IC],[rC,IC,1]]; throws NotSPD naming the
// first non-positive leading minor.
Cholesky3 cholesky3(const CorrelationBlock& c);

struct SimConfig {
    std::size_t n_paths = 100000;
    int dates_per_year = 10;
    int sub_steps = 10;
    std::uint64_t seed = 42;
    bool antithetic = false;
    unsigned threads = 0;  // 0 = all cores; never changes results
};

void validate(const SimConfig& cfg);

// Paths per RNG substream. Part of the stream identity: changing it changes
// the draws.
inline constexpr std::size_t kPathsPerChunk = 1024;

/// Simulated states on the exposure grid, one row per path.
struct PathBlock {
    std::vector<double> grid;
    Matrix x_r;
    Matrix int_r;  // int_0^u r dv
    Matrix x_I;
    Matrix Lambda_I;  // int_0^u lambda_I dv
    Matrix x_C;
    Matrix Lambda_C;

    std::size_t n_paths() const { return x_r.rows; }
    std::size_t n_dates() const { return grid.size(); }
};

std::vector<double> exposure_grid(double horizon, int dates_per_year);

/// Correlated paths of (x_r, int r, x_I, Lambda_I, x_C, Lambda_C).
///
/// x_r steps by the exact OU transition; x_I and x_C by full-truncation Euler.
/// Integrals use the trapezoid on the sub-grid with lambda floored at zero and
/// the exact shift integral per sub-step. Draws come in (r, I, C) order per
/// sub-step from a substream keyed on (seed, chunk), so a change of
/// correlation alone reuses the same normals.
PathBlock simulate(const HullWhiteModel& hw, const CirModel& credit_I, const CirModel& credit_C,
                   const CorrelationBlock& corr, const SimConfig& cfg, double horizon);

}  // namespace fvawwr
