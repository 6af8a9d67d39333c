#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "phydsss/adversary.hpp"
#include "phydsss/analytics.hpp"
#include "phydsss/bch.hpp"
#include "phydsss/channel.hpp"
#include "phydsss/dsss.hpp"
#include "phydsss/extractor.hpp"
#include "phydsss/rng.hpp"

namespace phydsss::harness {

inline constexpr int kSchemaVersion = 1;

enum class FailurePolicy { count_as_failure, retry };

struct ProbeConfig {
  channel::ProbingSchedule schedule{1e-3, 1e-3, 1e-4, 10.0};
  std::size_t slots = 16;
  std::size_t subcarriers = 64;
  std::size_t taps = 8;
  double probe_error_variance = 0.01;
  double eve_offset_variance = 1.0;
};

struct ExperimentConfig {
  std::string scenario = "default";
  analytics::LinkBudget budget = analytics::LinkBudget::reference_geometry();
  /// Linear gamma overrides; when set they replace the link budget values.
  std::optional<double> gamma_ab;
  std::optional<double> gamma_eb;
  ProbeConfig probe;
  extractor::QuantizerConfig quantizer;
  bch::BchParams bch = bch::kProductionParams;
  std::size_t key_bits = 256;   // l
  std::size_t pool_count = 12;  // U + 1
  double min_pool_entropy = 128.0;
  std::string bank_path;        // empty: all primitive polynomials of the degree matched to L
  unsigned bank_degree = 0;     // nonzero: all primitive polynomials of this degree
  std::vector<std::size_t> L_sweep{1024};
  std::vector<unsigned> kt_sweep{1, 2, 3, 4, 5, 6, 7, 8};
  double gamma_th = 1.0;
  adversary::JammerConfig jammer;
  std::size_t frame_symbols = 100;
  bool code_refresh = true;
  /// Run probing and extraction each trial; otherwise pool 0 is fed from
  /// the trial's entropy stream.
  bool extract_keys = true;
  FailurePolicy failure_policy = FailurePolicy::count_as_failure;
  std::size_t max_retries = 3;
  analytics::Measurement measurement = analytics::Measurement::cfr;
  std::size_t trials = 1000;
  std::uint64_t seed = 1;
  bool write_trials = false;

  void validate() const;
  /// Throws ConfigError with line/field context.
  static ExperimentConfig parse(std::string_view text);
  static ExperimentConfig load(const std::filesystem::path& path);
  [[nodiscard]] std::string to_json() const;

  [[nodiscard]] analytics::Gammas gammas() const;
};

std::string_view policy_name(FailurePolicy p);

struct TrialRecord {
  std::size_t trial = 0;
  unsigned k_t = 0;
  std::size_t L = 0;
  bool agreed = false;
  std::size_t attempts = 0;
  double g_ab = 0.0;
  double g_eb = 0.0;
  /// Mean over the frame of the despread jammer power factor (sum_i phi_i)^2.
  double phi_power = 0.0;
  double sinr_measured = 0.0;
  double sinr_analytic = 0.0;
  bool success = false;
  std::size_t bit_errors = 0;
  std::size_t symbols = 0;
  std::string key_hex;

  friend bool operator==(const TrialRecord&, const TrialRecord&) = default;
};

/// Immutable campaign context plus the RACS superposition cache.
class Context {
 public:
  explicit Context(const ExperimentConfig& config);

  [[nodiscard]] const ExperimentConfig& config() const noexcept { return config_; }
  [[nodiscard]] const bch::BchCode& code() const noexcept { return code_; }
  [[nodiscard]] const dsss::PrimitivePolyBank& bank(std::size_t L) const;
  [[nodiscard]] analytics::Gammas gammas() const noexcept { return gammas_; }
  const std::vector<double>& superposition(std::size_t poly_index, unsigned key_bits, std::size_t L);

 private:
  ExperimentConfig config_;
  bch::BchCode code_;
  analytics::Gammas gammas_;
  std::map<std::size_t, dsss::PrimitivePolyBank> banks_;
  std::map<std::tuple<std::size_t, unsigned, std::size_t>, std::vector<double>> sup_cache_;
};

/// One full pass: probe, extract, feed pools, RSG, SSG, spread a frame,
/// jam, despread, measure SINR.
TrialRecord run_pipeline_trial(Context& ctx, std::size_t trial_index, unsigned k_t, std::size_t L);

struct ResultRow {
  unsigned k_t = 0;
  std::size_t L = 0;
  std::size_t trials = 0;
  std::size_t successes = 0;
  double P_s_simulated = 0.0;
  double wilson_ci_low = 0.0;
  double wilson_ci_high = 0.0;
  double P_s_closed_form = 0.0;
  double P_s_approx = 0.0;
  double T_s = 0.0;
  double T_s_approx = 0.0;
  double agreement_rate = 0.0;
  double mean_phi_power = 0.0;
};

struct CampaignResult {
  std::vector<ResultRow> rows;
  std::vector<TrialRecord> records;  // filled only when requested
  std::uint64_t seed = 0;
};

CampaignResult run_campaign(const ExperimentConfig& config, bool keep_records = false);

/// RFC 4180 field quoting.
std::string csv_field(std::string_view v);
/// Shortest round-trip decimal.
std::string format_double(double v);

void write_results_csv(std::ostream& out, const CampaignResult& result, const ExperimentConfig& config);
void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records);

enum class Figure { ps_vs_kt, ts_vs_kt, keytime_vs_kt };
std::string_view figure_name(Figure f);
Figure parse_figure(std::string_view name);
void write_figure_csv(std::ostream& out, const std::vector<ResultRow>& rows, Figure which);
void emit_figure_data(const std::vector<ResultRow>& rows, Figure which, const std::filesystem::path& path);

std::string manifest_json(const ExperimentConfig& config, std::string_view config_sha256,
                          const std::vector<std::string>& outputs);

/// Writes results.csv, the three figure files, optionally trials.csv, and
/// manifest.json into `out_dir`. `config_text` is hashed as given.
std::vector<std::filesystem::path> run_to_directory(const ExperimentConfig& config, std::string_view config_text,
                                                    const std::filesystem::path& out_dir);

/// Chip-level link with fixed unit gains, used for processing-gain and
/// replay measurements.
struct LinkMeasurement {
  double sinr_pre = 0.0;   // chip-level signal / (jammer + noise) power
  double sinr_post = 0.0;  // after despreading
  std::size_t bit_errors = 0;
  std::size_t symbols = 0;
  [[nodiscard]] double ber() const { return symbols ? static_cast<double>(bit_errors) / symbols : 0.0; }
};

struct LinkSimConfig {
  adversary::JammerStrategy strategy = adversary::JammerStrategy::broadband;
  std::size_t L = 63;
  unsigned bank_degree = 0;  // 0: matched to L
  double gamma_ab = 1.0;
  double gamma_eb = 1.0;
  bool code_refresh = true;
  std::size_t delay_symbols = 1;
  std::size_t symbols = 100000;
  std::uint64_t seed = 1;
};
LinkMeasurement simulate_link(const LinkSimConfig& cfg);

/// Key extraction from a recorded trace (all slots form one key).
struct TraceKeys {
  extractor::AgreementStatus status = extractor::AgreementStatus::insufficient_material;
  std::string alice_hex;
  std::string bob_hex;
  std::optional<std::string> eve_hex;
  double entropy_estimate = 0.0;
  std::size_t aligned_bits = 0;
  std::size_t mismatches = 0;
};
TraceKeys extract_from_trace(std::span<const channel::ChannelObservation> observations,
                             const ExperimentConfig& config);

/// Probe once and return the three views (for trace export).
channel::ProbeViews probe_views(const ExperimentConfig& config, std::size_t trial_index);

}  // namespace phydsss::harness
