#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dacs/protocols.hpp"

namespace dacs {

struct ConfigError : std::runtime_error {
    explicit ConfigError(const std::string& field, const std::string& what)
        : std::runtime_error(field + ": " + what), field(field) {}
    std::string field;
};

struct CorruptSpec {
    enum class Mode { count, explicit_set, all_but_one };
    Mode mode = Mode::count;
    int value = 10;            ///< count mode
    std::vector<int> nodes;    ///< explicit mode
};

/// Monte Carlo orchestration settings for the four experiments. Defaults
/// reproduce the reference setup (n = 30 geometric graph, c = 1, l = 2,
/// unit-variance Gaussian data) at desk scale.
struct ExperimentConfig {
    std::string experiment = "convergence";  // convergence | smpc-compare | dp-compare | attack-verify
    int n = 30;
    int trials = 2000;
    std::uint64_t seed = 20240613;
    ConsensusConfig consensus{1.0, 0.0, 500};
    struct {
        double sigma_z = 1000.0;
        double delta0 = 0.0;  ///< <= 0 selects the default heuristic
        double gamma = 0.9;
        double delta_min = 0.0;
        int bits = 2;
    } adqsp;
    SmpcConfig smpc;
    DpConfig dp;
    CorruptSpec corrupt;

    AdqspConfig adqsp_config() const;
    void validate() const;

    static ExperimentConfig defaults();
    /// Parses a JSON document over the defaults; unknown keys and invariant
    /// violations raise ConfigError naming the field.
    static ExperimentConfig from_json_text(const std::string& text);
};

/// Derived per-trial seed; parallel-safe reproducibility.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t trial) {
    return mix_seed(seed, 0x7217a1ULL, trial);
}

/// Runs fn(trial) for every trial on a bounded worker pool. Each call must
/// write only to its own slot of preallocated storage; aggregation order is
/// by index, so results do not depend on the scheduling.
void for_each_trial(int trials, const std::function<void(int)>& fn);

/// Figure-data generators. Each writes its CSVs plus manifest.json into
/// out_dir and returns the list of files written.
std::vector<std::string> run_convergence(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_smpc_compare(const ExperimentConfig& cfg, const std::string& out_dir);
std::vector<std::string> run_dp_compare(const ExperimentConfig& cfg, const std::string& out_dir);

/// End-to-end attack checks (component-sum recovery, trajectory recursion,
/// noisy-secret reconstruction). Writes attack_report.csv, prints one line
/// per check, returns false if any check failed.
bool run_attack_verify(const ExperimentConfig& cfg, const std::string& out_dir);

}  // namespace dacs
