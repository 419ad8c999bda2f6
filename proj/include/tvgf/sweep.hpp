#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "tvgf/filters.hpp"
#include "tvgf/graph.hpp"
#include "tvgf/knn.hpp"
#include "tvgf/signal.hpp"

namespace tvgf {

/// One filter entry of a sweep, with the temporal length left open until
/// the dataset is loaded.
struct FilterSpec {
  std::string label;  ///< CSV key; auto-assigned "<kind>-<index>" if empty
  FilterKind kind = FilterKind::mean;
  int max_hops = 1;
  double beta = 1.0;
  double gamma_spatial = 0.0;
  int half_window = 1;
  double alpha = 1.0;
  double gamma_temporal = 0.0;
  bool include_self = true;
  bool recursive = false;
};

enum class NoiseModel { gaussian, mixed };

/// Parameters of the built-in synthetic dataset: uniform random planar
/// sensor positions plus a smooth signal from synthesize_smooth_signal.
struct SyntheticSpec {
  int nodes = 100;
  int instants = 120;
  double smoothness = 30.0;
};

/// Declarative description of an SNR sweep, parsed from a plain-text
/// key=value file (see README for the format).
struct ExperimentSpec {
  std::string signal_csv;
  std::string coords_csv;
  bool signal_has_header = false;
  bool coords_has_header = false;
  std::optional<SyntheticSpec> synthetic;

  int knn_k = 5;
  EdgeWeighting knn_weighting = EdgeWeighting::binary;

  std::vector<double> input_snrs_db;
  int trials = 1;
  std::uint64_t seed = 0;

  NoiseModel noise = NoiseModel::gaussian;
  double impulse_fraction = 0.05;   ///< mixed noise: share of entries hit
  double impulse_amplitude = 6.0;   ///< mixed noise: spike size in RMS units

  /// false writes wall_time_s as 0 so rerun outputs are byte-identical.
  bool record_timing = true;

  std::vector<FilterSpec> filters;

  void validate() const;

  static ExperimentSpec parse(std::istream& in, const std::string& origin);
  static ExperimentSpec parse_file(const std::string& path);
};

/// Clean dataset resolved from an ExperimentSpec.
struct Dataset {
  Graph graph;
  TimeVertexSignal signal;
  Eigen::MatrixXd coords;
};

Dataset load_dataset(const ExperimentSpec& spec);

struct TrialRecord {
  std::string filter;
  double input_snr_db = 0.0;
  int trial = 0;
  double output_snr_db = 0.0;
  double wall_time_s = 0.0;
};

struct AggregateRecord {
  std::string filter;
  double input_snr_db = 0.0;
  double mean_output_snr_db = 0.0;
  double std_output_snr_db = 0.0;  ///< sample std; 0 for a single trial
};

/// Per-trial records of a sweep, ordered by (filter, input SNR, trial).
struct ExperimentResult {
  std::vector<TrialRecord> trials;
  std::string rng_algorithm;

  std::vector<AggregateRecord> aggregate() const;

  /// header: filter,input_snr_db,trial,output_snr_db,wall_time_s
  void write_trials_csv(const std::string& path) const;
  /// header: filter,input_snr_db,mean_output_snr_db,std_output_snr_db
  void write_aggregate_csv(const std::string& path) const;
};

/// Echo of the resolved spec plus the pinned RNG algorithm, written next to
/// sweep outputs for reproducibility.
void write_config_echo(const std::string& path, const ExperimentSpec& spec,
                       const std::string& rng_algorithm);

/// Runs the sweep: for every (input SNR, trial) a noisy copy of the clean
/// signal is generated from a substream of (seed, snr index, trial) --
/// shared across filters so they compete on identical inputs -- then every
/// filter runs and its output SNR against the clean signal is recorded.
/// n_threads = 0 reads TVGF_THREADS, falling back to the hardware count;
/// results are identical for any thread count.
ExperimentResult run_sweep(const ExperimentSpec& spec, int n_threads = 0);

}  // namespace tvgf
