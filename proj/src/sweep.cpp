#include "tvgf/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "tvgf/csv.hpp"
#include "tvgf/harness.hpp"
#include "tvgf/rng.hpp"

namespace tvgf {

namespace {

// Substream tags for the independent random streams of one sweep.
constexpr std::uint64_t kStreamCoords = 0x11;
constexpr std::uint64_t kStreamSignal = 0x22;
constexpr std::uint64_t kStreamGaussian = 0x33;
constexpr std::uint64_t kStreamImpulse = 0x44;

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> tokenize(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

[[noreturn]] void parse_fail(const std::string& origin, std::size_t lineno,
                             const std::string& what) {
  std::ostringstream os;
  os << origin << ":" << lineno << ": " << what;
  throw std::runtime_error(os.str());
}

bool parse_bool(const std::string& v, const std::string& origin,
                std::size_t lineno) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  parse_fail(origin, lineno, "expected true/false, got '" + v + "'");
}

double parse_double(const std::string& v, const std::string& origin,
                    std::size_t lineno) {
  try {
    std::size_t used = 0;
    const double d = std::stod(v, &used);
    if (used == v.size()) return d;
  } catch (const std::exception&) {
  }
  parse_fail(origin, lineno, "expected a number, got '" + v + "'");
}

long parse_int(const std::string& v, const std::string& origin,
               std::size_t lineno) {
  try {
    std::size_t used = 0;
    const long i = std::stol(v, &used);
    if (used == v.size()) return i;
  } catch (const std::exception&) {
  }
  parse_fail(origin, lineno, "expected an integer, got '" + v + "'");
}

EdgeWeighting parse_weighting(const std::string& v, const std::string& origin,
                              std::size_t lineno) {
  if (v == "binary") return EdgeWeighting::binary;
  if (v == "inverse-distance") return EdgeWeighting::inverse_distance;
  if (v == "gaussian") return EdgeWeighting::gaussian;
  parse_fail(origin, lineno, "unknown weighting '" + v + "'");
}

FilterSpec parse_filter_line(const std::string& value,
                             const std::string& origin, std::size_t lineno) {
  FilterSpec f;
  bool kind_seen = false;
  double gamma_both = 0.0;
  bool gamma_both_set = false, gs_set = false, gt_set = false;
  for (const std::string& tok : tokenize(value)) {
    const std::size_t eq = tok.find('=');
    std::string key, val;
    if (eq == std::string::npos) {
      key = "kind";  // bare leading token names the filter kind
      val = tok;
    } else {
      key = tok.substr(0, eq);
      val = tok.substr(eq + 1);
    }
    if (key == "kind") {
      if (kind_seen) parse_fail(origin, lineno, "duplicate filter kind");
      kind_seen = true;
      if (val == "mean")
        f.kind = FilterKind::mean;
      else if (val == "median")
        f.kind = FilterKind::median;
      else
        parse_fail(origin, lineno, "unknown filter kind '" + val + "'");
    } else if (key == "label") {
      f.label = val;
    } else if (key == "K") {
      f.max_hops = static_cast<int>(parse_int(val, origin, lineno));
    } else if (key == "M") {
      f.half_window = static_cast<int>(parse_int(val, origin, lineno));
    } else if (key == "alpha") {
      f.alpha = parse_double(val, origin, lineno);
    } else if (key == "beta") {
      f.beta = parse_double(val, origin, lineno);
    } else if (key == "gamma") {
      gamma_both = parse_double(val, origin, lineno);
      gamma_both_set = true;
    } else if (key == "gamma_spatial") {
      f.gamma_spatial = parse_double(val, origin, lineno);
      gs_set = true;
    } else if (key == "gamma_temporal") {
      f.gamma_temporal = parse_double(val, origin, lineno);
      gt_set = true;
    } else if (key == "include_self") {
      f.include_self = parse_bool(val, origin, lineno);
    } else if (key == "recursive") {
      f.recursive = parse_bool(val, origin, lineno);
    } else {
      parse_fail(origin, lineno, "unknown filter key '" + key + "'");
    }
  }
  if (!kind_seen) parse_fail(origin, lineno, "filter line needs a kind");
  if (gamma_both_set) {
    if (!gs_set) f.gamma_spatial = gamma_both;
    if (!gt_set) f.gamma_temporal = gamma_both;
  }
  return f;
}

std::vector<double> parse_number_list(const std::string& value,
                                      const std::string& origin,
                                      std::size_t lineno) {
  std::string normalized = value;
  for (char& c : normalized)
    if (c == ',') c = ' ';
  std::vector<double> out;
  for (const std::string& tok : tokenize(normalized))
    out.push_back(parse_double(tok, origin, lineno));
  return out;
}

int env_threads() {
  if (const char* env = std::getenv("TVGF_THREADS")) {
    const int n = std::atoi(env);
    if (n >= 1) return n;
  }
  const unsigned hw = std::thread::hardware_concurrency();
  return hw ? static_cast<int>(hw) : 1;
}

/// Runs fn(0..n-1) on `threads` workers; any exception is rethrown once.
void parallel_for(std::size_t n, int threads,
                  const std::function<void(std::size_t)>& fn) {
  if (threads <= 1 || n <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int count = static_cast<int>(
      std::min<std::size_t>(n, static_cast<std::size_t>(threads)));
  pool.reserve(count);
  for (int i = 0; i < count; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

std::string kind_name(FilterKind k) {
  return k == FilterKind::mean ? "mean" : "median";
}

}  // namespace

void ExperimentSpec::validate() const {
  const bool has_csv = !signal_csv.empty() || !coords_csv.empty();
  if (synthetic && has_csv)
    throw std::invalid_argument(
        "spec must use either CSV inputs or the synthetic dataset, not both");
  if (!synthetic) {
    if (signal_csv.empty() || coords_csv.empty())
      throw std::invalid_argument(
          "spec needs signal_csv and coords_csv, or synthetic = true");
  } else {
    if (synthetic->nodes < 2 || synthetic->instants < 2)
      throw std::invalid_argument(
          "synthetic dataset needs at least 2 nodes and 2 instants");
    if (!(synthetic->smoothness >= 0.0))
      throw std::invalid_argument("synthetic smoothness must be >= 0");
  }
  if (knn_k < 1) throw std::invalid_argument("knn_k must be >= 1");
  if (input_snrs_db.empty())
    throw std::invalid_argument("spec needs at least one input SNR");
  for (double s : input_snrs_db)
    if (!std::isfinite(s))
      throw std::invalid_argument("input SNRs must be finite");
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  if (!(impulse_fraction >= 0.0) || impulse_fraction > 1.0)
    throw std::invalid_argument("impulse_fraction must lie in [0, 1]");
  if (!(impulse_amplitude >= 0.0))
    throw std::invalid_argument("impulse_amplitude must be >= 0");
  if (filters.empty())
    throw std::invalid_argument("spec needs at least one filter line");
  std::unordered_set<std::string> labels;
  for (const FilterSpec& f : filters) {
    if (f.label.find(',') != std::string::npos)
      throw std::invalid_argument("filter labels must not contain commas");
    if (!f.label.empty() && !labels.insert(f.label).second)
      throw std::invalid_argument("duplicate filter label '" + f.label + "'");
  }
}

ExperimentSpec ExperimentSpec::parse(std::istream& in,
                                     const std::string& origin) {
  ExperimentSpec spec;
  SyntheticSpec synth;
  bool synthetic_requested = false;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      parse_fail(origin, lineno, "expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));

    if (key == "signal_csv") {
      spec.signal_csv = value;
    } else if (key == "coords_csv") {
      spec.coords_csv = value;
    } else if (key == "signal_has_header") {
      spec.signal_has_header = parse_bool(value, origin, lineno);
    } else if (key == "coords_has_header") {
      spec.coords_has_header = parse_bool(value, origin, lineno);
    } else if (key == "synthetic") {
      synthetic_requested = parse_bool(value, origin, lineno);
    } else if (key == "synthetic_nodes") {
      synth.nodes = static_cast<int>(parse_int(value, origin, lineno));
    } else if (key == "synthetic_instants") {
      synth.instants = static_cast<int>(parse_int(value, origin, lineno));
    } else if (key == "synthetic_smoothness") {
      synth.smoothness = parse_double(value, origin, lineno);
    } else if (key == "knn_k") {
      spec.knn_k = static_cast<int>(parse_int(value, origin, lineno));
    } else if (key == "knn_weighting") {
      spec.knn_weighting = parse_weighting(value, origin, lineno);
    } else if (key == "input_snr_db") {
      spec.input_snrs_db = parse_number_list(value, origin, lineno);
    } else if (key == "trials") {
      spec.trials = static_cast<int>(parse_int(value, origin, lineno));
    } else if (key == "seed") {
      spec.seed =
          static_cast<std::uint64_t>(parse_int(value, origin, lineno));
    } else if (key == "noise") {
      if (value == "gaussian")
        spec.noise = NoiseModel::gaussian;
      else if (value == "mixed")
        spec.noise = NoiseModel::mixed;
      else
        parse_fail(origin, lineno, "unknown noise model '" + value + "'");
    } else if (key == "impulse_fraction") {
      spec.impulse_fraction = parse_double(value, origin, lineno);
    } else if (key == "impulse_amplitude") {
      spec.impulse_amplitude = parse_double(value, origin, lineno);
    } else if (key == "record_timing") {
      spec.record_timing = parse_bool(value, origin, lineno);
    } else if (key == "filter") {
      spec.filters.push_back(parse_filter_line(value, origin, lineno));
    } else {
      parse_fail(origin, lineno, "unknown key '" + key + "'");
    }
  }
  if (synthetic_requested) spec.synthetic = synth;
  for (std::size_t i = 0; i < spec.filters.size(); ++i)
    if (spec.filters[i].label.empty())
      spec.filters[i].label =
          kind_name(spec.filters[i].kind) + "-" + std::to_string(i + 1);
  spec.validate();
  return spec;
}

ExperimentSpec ExperimentSpec::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FileError("cannot open spec file: " + path);
  return parse(in, path);
}

Dataset load_dataset(const ExperimentSpec& spec) {
  spec.validate();
  if (spec.synthetic) {
    const SyntheticSpec& s = *spec.synthetic;
    std::mt19937_64 gen(rng::derive_stream(spec.seed, kStreamCoords));
    Eigen::MatrixXd coords(s.nodes, 2);
    for (Eigen::Index i = 0; i < coords.size(); ++i)
      coords.data()[i] = rng::uniform01(gen);
    Graph graph = build_knn_graph(coords, spec.knn_k, spec.knn_weighting);
    TimeVertexSignal signal = synthesize_smooth_signal(
        graph, s.instants, s.smoothness,
        rng::derive_stream(spec.seed, kStreamSignal));
    return {std::move(graph), std::move(signal), std::move(coords)};
  }
  Eigen::MatrixXd coords =
      csv::load_matrix(spec.coords_csv, spec.coords_has_header);
  Eigen::MatrixXd values =
      csv::load_matrix(spec.signal_csv, spec.signal_has_header);
  if (coords.rows() != values.rows()) {
    std::ostringstream os;
    os << "coordinate rows (" << coords.rows() << ") do not match signal"
       << " rows (" << values.rows() << ")";
    throw std::runtime_error(os.str());
  }
  Graph graph = build_knn_graph(coords, spec.knn_k, spec.knn_weighting);
  return {std::move(graph), TimeVertexSignal(std::move(values)),
          std::move(coords)};
}

std::vector<AggregateRecord> ExperimentResult::aggregate() const {
  std::vector<AggregateRecord> out;
  for (const TrialRecord& row : trials) {
    auto it = std::find_if(out.begin(), out.end(), [&](const auto& a) {
      return a.filter == row.filter && a.input_snr_db == row.input_snr_db;
    });
    if (it == out.end()) {
      out.push_back({row.filter, row.input_snr_db, 0.0, 0.0});
      it = out.end() - 1;
    }
    it->mean_output_snr_db += row.output_snr_db;  // accumulate sums first
    it->std_output_snr_db += row.output_snr_db * row.output_snr_db;
  }
  for (AggregateRecord& a : out) {
    std::size_t n = 0;
    for (const TrialRecord& row : trials)
      if (row.filter == a.filter && row.input_snr_db == a.input_snr_db) ++n;
    const double mean = a.mean_output_snr_db / static_cast<double>(n);
    const double sq_sum = a.std_output_snr_db;
    a.mean_output_snr_db = mean;
    a.std_output_snr_db =
        n > 1 ? std::sqrt(std::max(
                    0.0, (sq_sum - static_cast<double>(n) * mean * mean) /
                             static_cast<double>(n - 1)))
              : 0.0;
  }
  return out;
}

void ExperimentResult::write_trials_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  out << "filter,input_snr_db,trial,output_snr_db,wall_time_s\n";
  for (const TrialRecord& r : trials)
    out << r.filter << ',' << csv::format_full(r.input_snr_db) << ','
        << r.trial << ',' << csv::format_full(r.output_snr_db) << ','
        << csv::format_full(r.wall_time_s) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

void ExperimentResult::write_aggregate_csv(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  out << "filter,input_snr_db,mean_output_snr_db,std_output_snr_db\n";
  for (const AggregateRecord& a : aggregate())
    out << a.filter << ',' << csv::format_full(a.input_snr_db) << ','
        << csv::format_full(a.mean_output_snr_db) << ','
        << csv::format_full(a.std_output_snr_db) << '\n';
  if (!out) throw FileError("write failed: " + path);
}

void write_config_echo(const std::string& path, const ExperimentSpec& spec,
                       const std::string& rng_algorithm) {
  std::ofstream out(path);
  if (!out) throw FileError("cannot create file: " + path);
  out << "rng = " << rng_algorithm << "\n";
  out << "seed = " << spec.seed << "\n";
  out << "trials = " << spec.trials << "\n";
  out << "noise = "
      << (spec.noise == NoiseModel::gaussian ? "gaussian" : "mixed") << "\n";
  if (spec.noise == NoiseModel::mixed) {
    out << "impulse_fraction = " << csv::format_full(spec.impulse_fraction)
        << "\n";
    out << "impulse_amplitude = " << csv::format_full(spec.impulse_amplitude)
        << "\n";
  }
  if (spec.synthetic) {
    out << "synthetic = true\n";
    out << "synthetic_nodes = " << spec.synthetic->nodes << "\n";
    out << "synthetic_instants = " << spec.synthetic->instants << "\n";
    out << "synthetic_smoothness = "
        << csv::format_full(spec.synthetic->smoothness) << "\n";
  } else {
    out << "signal_csv = " << spec.signal_csv << "\n";
    out << "coords_csv = " << spec.coords_csv << "\n";
    out << "signal_has_header = "
        << (spec.signal_has_header ? "true" : "false") << "\n";
    out << "coords_has_header = "
        << (spec.coords_has_header ? "true" : "false") << "\n";
  }
  out << "knn_k = " << spec.knn_k << "\n";
  out << "knn_weighting = "
      << (spec.knn_weighting == EdgeWeighting::binary ? "binary"
          : spec.knn_weighting == EdgeWeighting::inverse_distance
              ? "inverse-distance"
              : "gaussian")
      << "\n";
  out << "record_timing = " << (spec.record_timing ? "true" : "false")
      << "\n";
  out << "input_snr_db =";
  for (double s : spec.input_snrs_db) out << ' ' << csv::format_full(s);
  out << "\n";
  for (const FilterSpec& f : spec.filters) {
    out << "filter = " << kind_name(f.kind) << " label=" << f.label
        << " K=" << f.max_hops << " M=" << f.half_window
        << " alpha=" << csv::format_full(f.alpha)
        << " beta=" << csv::format_full(f.beta)
        << " gamma_spatial=" << csv::format_full(f.gamma_spatial)
        << " gamma_temporal=" << csv::format_full(f.gamma_temporal)
        << " include_self=" << (f.include_self ? "true" : "false")
        << " recursive=" << (f.recursive ? "true" : "false") << "\n";
  }
  if (!out) throw FileError("write failed: " + path);
}

ExperimentResult run_sweep(const ExperimentSpec& spec, int n_threads) {
  spec.validate();
  const Dataset data = load_dataset(spec);
  const Eigen::MatrixXd& clean = data.signal.values();
  const int t_len = static_cast<int>(data.signal.n_instants());

  std::vector<PreparedFilter> prepared;
  prepared.reserve(spec.filters.size());
  for (const FilterSpec& f : spec.filters) {
    FilterConfig cfg;
    cfg.khop = {f.max_hops, f.beta, f.gamma_spatial};
    cfg.temporal = {t_len, f.half_window, f.alpha, f.gamma_temporal};
    cfg.kind = f.kind;
    cfg.include_self = f.include_self;
    prepared.emplace_back(data.graph, cfg, f.recursive);
  }

  const std::size_t n_snrs = spec.input_snrs_db.size();
  const auto n_trials = static_cast<std::size_t>(spec.trials);
  const std::size_t n_jobs = n_snrs * n_trials;
  std::vector<TrialRecord> slots(spec.filters.size() * n_jobs);

  // One job per (input SNR, trial); the noisy input is derived from the
  // job coordinates alone, so all filters see the same realization and the
  // schedule cannot affect any value.
  parallel_for(n_jobs, n_threads > 0 ? n_threads : env_threads(),
               [&](std::size_t job) {
                 const std::size_t si = job / n_trials;
                 const std::size_t trial = job % n_trials;
                 const double target = spec.input_snrs_db[si];
                 Eigen::MatrixXd noisy = add_white_noise(
                     clean, target,
                     rng::derive_stream(spec.seed, kStreamGaussian, si,
                                        trial));
                 if (spec.noise == NoiseModel::mixed)
                   noisy = add_impulse_noise(
                       noisy, spec.impulse_fraction, spec.impulse_amplitude,
                       rng::derive_stream(spec.seed, kStreamImpulse, si,
                                          trial));
                 const TimeVertexSignal input(std::move(noisy));
                 for (std::size_t f = 0; f < prepared.size(); ++f) {
                   const auto start = std::chrono::steady_clock::now();
                   const TimeVertexSignal filtered = prepared[f].apply(input);
                   const std::chrono::duration<double> elapsed =
                       std::chrono::steady_clock::now() - start;
                   slots[f * n_jobs + job] = {
                       spec.filters[f].label, target,
                       static_cast<int>(trial),
                       snr_db(clean, filtered.values()),
                       spec.record_timing ? elapsed.count() : 0.0};
                 }
               });

  ExperimentResult result;
  result.rng_algorithm = rng::kAlgorithm;
  result.trials = std::move(slots);  // already (filter, snr, trial) ordered
  return result;
}

}  // namespace tvgf
