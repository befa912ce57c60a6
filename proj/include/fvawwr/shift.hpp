#pragma once

#include <functional>
#include <vector>

namespace fvawwr {

/// Deterministic shift b(t) tabulated on a dense grid.
///
/// Point values interpolate the table linearly. Integrals come from a
/// closed-form cumulative supplied by the owning model, so the curve fit
/// does not depend on the grid resolution.
class DeterministicShift {
public:
    using Fn = std::function<double(double)>;

    DeterministicShift() = default;
    DeterministicShift(double horizon, const Fn& value, Fn cumulative);

    double operator()(double t) const;
    double integral(double t0, double t1) const;
    double cumulative(double t) const { return cumulative_(t); }

    const std::vector<double>& grid() const { return t_; }
    const std::vector<double>& values() const { return b_; }
    double horizon() const { return t_.empty() ? 0.0 : t_.back(); }

    double min_value() const;
    std::vector<double> negative_times(double tol = 0.0) const;

private:
    std::vector<double> t_;
    std::vector<double> b_;
    Fn cumulative_;
};

// 120 points/year on [0,1], 40 on (1,5], 10 beyond.
std::vector<double> dense_shift_grid(double horizon);

}  // namespace fvawwr
