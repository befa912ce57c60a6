#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "fvawwr/engine.hpp"

namespace fvawwr {

const char* version();

struct RunMetadata {
    std::string scenario;
    std::string swap;
    std::uint64_t seed = 0;
    std::size_t paths = 0;
    int sub_steps = 0;
    int dates_per_year = 0;
};

RunMetadata make_metadata(const std::string& scenario, const SwapSpec& swap, const SimConfig& cfg);

// "# fvawwr <version> scenario=... swap=... seed=... paths=... sub_steps=... dates_per_year=..."
std::string metadata_line(const RunMetadata& m);

// 17 significant digits, round-trip safe.
std::string fmt_num(double x);

void write_fva_result_csv(const std::filesystem::path& path, const RunMetadata& meta,
                          const std::vector<RegimeRun>& runs);
void write_exposure_csv(const std::filesystem::path& path, const RunMetadata& meta,
                        const std::vector<RegimeRun>& runs);
void write_fit_gates_csv(const std::filesystem::path& path, const RunMetadata& meta, const FitGates& g);
void write_sweep_csv(const std::filesystem::path& path, const RunMetadata& meta, const SweepTable& table);

nlohmann::ordered_json metadata_json(const RunMetadata& m);
nlohmann::ordered_json result_json(const FvaFlags& f, const FvaResult& r);
nlohmann::ordered_json runs_json(const RunMetadata& meta, const std::vector<RegimeRun>& runs, bool with_profiles);
nlohmann::ordered_json sweep_json(const RunMetadata& meta, const SweepTable& table);

}  // namespace fvawwr
