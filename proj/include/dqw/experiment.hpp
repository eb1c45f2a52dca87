#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "dqw/evolution.hpp"
#include "dqw/observables.hpp"
#include "dqw/spectral.hpp"

namespace dqw {

class ConfigError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

enum class OutputFormat { Csv, Json };

struct ExperimentConfig {
    std::string schedule_text;
    InitialSpec initial;
    std::uint64_t seed = 0;
    std::uint64_t ensemble = 1;
    std::uint64_t record_every = 1;
    std::vector<std::uint64_t> dump_distribution_at;
    std::string output_path;
    OutputFormat format = OutputFormat::Csv;
    PawlConfig pawl;
    // Worker threads for the ensemble; 0 picks the hardware concurrency.
    // Results do not depend on this value.
    unsigned threads = 0;
};

// Ensemble mean and standard error of every observable at one recorded step.
struct AggregateRecord {
    std::uint64_t t = 0;
    double mean_x = 0.0;
    double se_mean_x = 0.0;
    double sd_x = 0.0;
    double se_sd_x = 0.0;
    double entropy = 0.0;
    double se_entropy = 0.0;
    double norm = 0.0;
};

struct EnsembleSummary {
    std::string canonical_schedule;
    std::uint64_t seed = 0;
    std::uint64_t ensemble = 0;
    std::uint64_t total_steps = 0;
    std::vector<AggregateRecord> records;
    // Ensemble-averaged distributions keyed by step; always holds total_steps.
    std::map<std::uint64_t, Distribution> distributions;

    const Distribution& final_distribution() const { return distributions.at(total_steps); }
    const AggregateRecord& record_at(std::uint64_t t) const;
};

// Parses the schedule and checks ensemble, record_every and dump steps.
// Throws ParseError or ConfigError.
Schedule checked_schedule(const ExperimentConfig& config);

/// Runs `ensemble` trajectories, trajectory i drawing from RngStream(seed, i).
/// Observables are recorded at t = 0, every record_every steps and at the
/// final step; aggregation is ordered by trajectory index.
EnsembleSummary run_experiment(const ExperimentConfig& config);

/// Observables of one trajectory at every recorded step.
std::vector<ObservableRecord> run_trajectory(const ExperimentConfig& config, std::uint64_t trajectory);

struct PresetSeries {
    std::string label;
    ExperimentConfig config;
};

struct Preset {
    std::string name;
    std::string description;
    std::vector<PresetSeries> series;
};

std::vector<std::string> preset_names();

// Throws ConfigError naming the valid presets for an unknown name.
Preset preset(std::string_view name);

// The pawl-with-fixed-coin family after 100 steps, one series per angle.
Preset fig3_preset(const std::vector<double>& thetas);

// "symmetric" | "up" | "down" | "custom:a_re,a_im,b_re,b_im", each optionally "@pos".
InitialSpec parse_initial(std::string_view text);

std::string observables_csv(const EnsembleSummary& summary);
std::string distribution_csv(const Distribution& dist);
std::string summary_json(const EnsembleSummary& summary, const ExperimentConfig& config);

/// CSV: observables at `path`, one "<stem>_dist_t<T><ext>" file per dumped
/// distribution. JSON: a single document at `path`. Throws IoError.
void emit(const EnsembleSummary& summary, const ExperimentConfig& config, OutputFormat format,
          const std::string& path);

// Path of the distribution file for step t next to `path`.
std::string distribution_path(const std::string& path, std::uint64_t t);

// Uniform grid of n_k >= 2 momenta over [-pi, pi], endpoints included.
std::vector<DispersionPoint> band_structure(double theta, std::uint64_t n_k);
std::string band_structure_csv(const std::vector<DispersionPoint>& points);
void run_band_structure(double theta, std::uint64_t n_k, const std::string& path);

// "%.12g" with negative zero printed as 0.
std::string format_number(double v);

void write_file(const std::string& path, const std::string& contents);

}  // namespace dqw
