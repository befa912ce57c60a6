#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fvawwr/cir.hpp"
#include "fvawwr/matrix.hpp"
#include "fvawwr/simulation.hpp"

namespace fvawwr {

enum class SpreadKind { Stochastic, Deterministic };

std::string to_string(SpreadKind k);

struct FvaFlags {
    bool include_tau_I = false;
    bool include_tau_C = false;
    SpreadKind spread = SpreadKind::Stochastic;
};

std::string regime_label(const FvaFlags& f);  // e.g. "stochastic incl/excl"

struct SpreadInputs {
    double lgd_I = 0.6;
    std::function<double(double)> liquidity;  // l(t); empty means 0
};

/// A per-path/date input to the decomposition. Ones and PerDate fields are
/// deterministic and never go through sample averaging, which keeps the
/// structural zeros exact.
class Field {
public:
    enum class Kind { Ones, PerDate, PerPath };

    static Field ones() { return Field(Kind::Ones); }
    static Field per_date(std::vector<double> v);
    static Field per_path(Matrix m);

    Kind kind() const { return kind_; }
    bool deterministic() const { return kind_ != Kind::PerPath; }
    double at(std::size_t p, std::size_t k) const;
    // Only for deterministic fields.
    double date_value(std::size_t k) const;

    const std::vector<double>& date_values() const { return by_date_; }
    const Matrix& path_values() const { return by_path_; }
    Matrix take_path_values() && { return std::move(by_path_); }

private:
    explicit Field(Kind k) : kind_(k) {}
    Kind kind_;
    std::vector<double> by_date_;
    Matrix by_path_;
};

struct ExposureProfile {
    std::vector<double> grid;
    std::vector<double> epe_indep;
    std::vector<double> epe_wwr;
    std::vector<double> se_indep;
    std::vector<double> se_wwr;
    // Per-path influence of each component integrated over the grid. Their
    // sample spread gives the FVA standard errors.
    std::vector<double> path_indep;
    std::vector<double> path_wwr;
};

struct FvaResult {
    double fva_indep = 0.0;
    double fva_wwr = 0.0;
    double wwr_pct = 0.0;
    double ratio = 1.0;
    double se_indep = 0.0;
    double se_wwr = 0.0;
    double se_total = 0.0;
    std::size_t n_paths = 0;

    double fva() const { return fva_indep + fva_wwr; }
};

// Stochastic: lgd max(x_I + b_I, 0) + l per path. Deterministic: lgd (E[x_I] + b_I) + l per date.
Field borrowing_spread(const PathBlock& paths, const CirModel& credit_I, const SpreadInputs& s, SpreadKind kind);

// e^{-(Lambda_I + Lambda_C)} restricted to the included defaults, or Ones.
Field credit_adjustment(const PathBlock& paths, bool include_tau_I, bool include_tau_C);

/// Covariance split of E[f g h] per date with sample moments:
/// epe_indep = E[f]E[g]E[h] + E[h]Cov(f,g), epe_wwr = E[fgh] - epe_indep.
ExposureProfile decompose(const std::vector<double>& grid, const Field& f, const Field& g, const Matrix& h);

std::vector<double> trapezoid_weights(const std::vector<double>& grid);

FvaResult fva_integrate(const ExposureProfile& profile);

// Average over independent seeds; SEs combine as sqrt(sum se^2) / S.
FvaResult pool(const std::vector<FvaResult>& runs);

// Builds f, g for the regime and decomposes. h is the discounted positive exposure.
ExposureProfile regime_profile(const PathBlock& paths, const CirModel& credit_I, const SpreadInputs& s,
                               const FvaFlags& flags, const Matrix& h);

}  // namespace fvawwr
