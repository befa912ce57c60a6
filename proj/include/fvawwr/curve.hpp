#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fvawwr {

struct CurvePillar {
    double t = 0.0;
    double df = 1.0;
};

enum class CurveKind { Yield, Credit };

/// Discount or survival curve on a pillar table, log-linear in df.
///
/// Forwards are piecewise constant between pillars. No extrapolation past the
/// last pillar.
class Curve {
public:
    Curve();

    double df(double t) const;
    double zero_rate(double t) const;
    /// Central difference of -ln df with step 1e-4, one-sided at the ends.
    double inst_forward(double t) const;

    double last_time() const { return t_.back(); }
    CurveKind kind() const { return kind_; }
    std::vector<CurvePillar> pillars() const;

private:
    friend Curve build_curve(std::vector<CurvePillar>, CurveKind);

    double log_df(double t) const;

    std::vector<double> t_;
    std::vector<double> log_df_;
    CurveKind kind_ = CurveKind::Yield;
};

Curve build_curve(std::vector<CurvePillar> pillars, CurveKind kind = CurveKind::Yield);

Curve load_curve_csv(const std::filesystem::path& path, CurveKind kind);
void write_curve_csv(const std::filesystem::path& path, const Curve& curve);

// The five builtin tables: flat5, eur1d, aaa, bbb, b.
const std::vector<std::string>& builtin_curve_names();
Curve builtin_curve(const std::string& name);

}  // namespace fvawwr
