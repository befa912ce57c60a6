#include "fvawwr/shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "fvawwr/errors.hpp"

namespace fvawwr {

std::vector<double> dense_shift_grid(double horizon) {
    std::vector<double> t;
    auto fill = [&](double from, double to, int per_year) {
        int n = static_cast<int>(std::llround((to - from) * per_year));
        for (int i = t.empty() ? 0 : 1; i <= n; ++i) t.push_back(from + static_cast<double>(i) / per_year);
    };
    double a = std::min(1.0, horizon), b = std::min(5.0, horizon);
    fill(0.0, a, 120);
    if (horizon > 1.0) fill(1.0, b, 40);
    if (horizon > 5.0) {
        // horizon may not sit on the 0.1 lattice; keep the last point exact
        int n = static_cast<int>(std::floor((horizon - 5.0) * 10 + 1e-9));
        for (int i = 1; i <= n; ++i) t.push_back(5.0 + i / 10.0);
        if (horizon - t.back() > 1e-12) t.push_back(horizon);
    }
    if (horizon > 0.0 && t.back() != horizon && std::abs(t.back() - horizon) < 1e-9) t.back() = horizon;
    return t;
}

DeterministicShift::DeterministicShift(double horizon, const Fn& value, Fn cumulative)
    : t_(dense_shift_grid(horizon)), cumulative_(std::move(cumulative)) {
    b_.reserve(t_.size());
    for (double t : t_) b_.push_back(value(t));
}

double DeterministicShift::operator()(double t) const {
    if (t_.empty()) return 0.0;
    if (t <= t_.front()) return b_.front();
    if (t >= t_.back()) return b_.back();
    auto it = std::upper_bound(t_.begin(), t_.end(), t);
    std::size_t i = static_cast<std::size_t>(it - t_.begin()) - 1;
    // exposure dates sit on the table; avoid interpolation noise there
    if (std::abs(t - t_[i]) < 1e-12) return b_[i];
    if (std::abs(t - t_[i + 1]) < 1e-12) return b_[i + 1];
    double w = (t - t_[i]) / (t_[i + 1] - t_[i]);
    return b_[i] + w * (b_[i + 1] - b_[i]);
}

double DeterministicShift::integral(double t0, double t1) const {
    if (t1 < t0) throw Error(ErrorCode::TimeOrder, "shift integral with t1 < t0");
    if (t0 == t1) return 0.0;
    return cumulative_(t1) - cumulative_(t0);
}

double DeterministicShift::min_value() const {
    if (b_.empty()) return 0.0;
    return *std::min_element(b_.begin(), b_.end());
}

std::vector<double> DeterministicShift::negative_times(double tol) const {
    std::vector<double> out;
    for (std::size_t i = 0; i < b_.size(); ++i)
        if (b_[i] < -tol) out.push_back(t_[i]);
    return out;
}

}  // namespace fvawwr
