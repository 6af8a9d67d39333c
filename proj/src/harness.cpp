#include "phydsss/harness.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "json.hpp"

#include "phydsss/crypto.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/rsg.hpp"
#include "phydsss/stats.hpp"

#ifndef PHYDSSS_VERSION
#define PHYDSSS_VERSION "0.0.0"
#endif

namespace phydsss::harness {

using nlohmann::json;

std::string_view policy_name(FailurePolicy p) {
  return p == FailurePolicy::retry ? "retry" : "count_as_failure";
}

// ---------------------------------------------------------------- config

void ExperimentConfig::validate() const {
  budget.validate();
  if (gamma_ab && !(*gamma_ab > 0.0)) throw ConfigError("field 'gammas.ab': must be > 0");
  if (gamma_eb && !(*gamma_eb >= 0.0)) throw ConfigError("field 'gammas.eb': must be >= 0");
  if (!channel::schedule_valid(probe.schedule)) {
    throw ConfigError("field 'probing': T_P1 + T_P2 + T_s exceeds the coherence time " +
                      std::to_string(channel::coherence_time(probe.schedule.doppler_hz)) + " s");
  }
  if (probe.slots < 1 || probe.subcarriers < 1) throw ConfigError("field 'probing': slots and subcarriers must be >= 1");
  if (probe.taps < 1 || probe.taps > probe.subcarriers) {
    throw ConfigError("field 'probing.taps': must be in [1, subcarriers]");
  }
  if (!(probe.probe_error_variance >= 0.0) || !(probe.eve_offset_variance >= 0.0)) {
    throw ConfigError("field 'probing': variances must be >= 0");
  }
  if (probe.eve_offset_variance < probe.probe_error_variance) {
    throw ConfigError("field 'probing.eve_offset_variance': must be >= probe_error_variance");
  }
  quantizer.validate();
  if (key_bits < 1) throw ConfigError("field 'key_bits': must be >= 1");
  if (pool_count < 1 || pool_count > 64) throw ConfigError("field 'pools': must be in [1, 64]");
  if (L_sweep.empty()) throw ConfigError("field 'L': sweep must be nonempty");
  for (auto L : L_sweep) {
    if (L < 3) throw ConfigError("field 'L': spreading length must be >= 3");
  }
  if (kt_sweep.empty()) throw ConfigError("field 'kt_sweep': sweep must be nonempty");
  for (auto k : kt_sweep) {
    if (k < 1 || k > 62) throw ConfigError("field 'kt_sweep': k_t must be in [1, 62]");
  }
  if (!(gamma_th >= 0.0)) throw ConfigError("field 'gamma_th': must be >= 0");
  if (frame_symbols < 1) throw ConfigError("field 'frame_symbols': must be >= 1");
  if (trials < 1) throw ConfigError("field 'trials': must be >= 1");
  try {
    jammer.validate();
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("field 'jammer': ") + e.what());
  }
}

analytics::Gammas ExperimentConfig::gammas() const {
  auto g = analytics::gammas_from_budget(budget);
  if (gamma_ab) g.ab = *gamma_ab;
  if (gamma_eb) g.eb = *gamma_eb;
  return g;
}

namespace {

std::size_t line_of_offset(std::string_view text, std::size_t offset) {
  offset = std::min(offset, text.size());
  std::size_t line = 1;
  for (std::size_t i = 0; i < offset; ++i) line += text[i] == '\n';
  return line;
}

std::size_t line_of_key(std::string_view text, std::string_view key) {
  const auto pos = text.find("\"" + std::string(key) + "\"");
  return pos == std::string_view::npos ? 0 : line_of_offset(text, pos);
}

class Reader {
 public:
  Reader(std::string_view text, const json& obj, std::string prefix)
      : text_(text), obj_(obj), prefix_(std::move(prefix)) {
    if (!obj_.is_object()) fail("", "expected an object");
  }

  [[noreturn]] void fail(std::string_view key, std::string_view msg) const {
    const std::string field = prefix_.empty() ? std::string(key) : prefix_ + (key.empty() ? "" : ".") + std::string(key);
    const auto line = line_of_key(text_, key.empty() ? std::string_view(prefix_) : key);
    std::string where = line ? "config:" + std::to_string(line) + ": " : "config: ";
    throw ConfigError(where + "field '" + field + "': " + std::string(msg));
  }

  [[nodiscard]] bool has(std::string_view key) const { return obj_.contains(key); }

  template <class T>
  void get(std::string_view key, T& out) {
    seen_.insert(std::string(key));
    if (!obj_.contains(key)) return;
    const auto& v = obj_.at(std::string(key));
    try {
      if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail(key, "expected a boolean");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail(key, "expected a string");
      } else if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer()) fail(key, "expected an integer");
        if (v.is_number_unsigned()) {
          out = static_cast<T>(v.get<std::uint64_t>());
          return;
        }
        if (v.get<long long>() < 0) fail(key, "must be nonnegative");
      } else if constexpr (std::is_floating_point_v<T>) {
        if (!v.is_number()) fail(key, "expected a number");
      }
      out = v.get<T>();
    } catch (const json::exception& e) {
      fail(key, e.what());
    }
  }

  const json& child(std::string_view key) {
    seen_.insert(std::string(key));
    return obj_.at(std::string(key));
  }

  void finish() const {
    for (const auto& [k, v] : obj_.items()) {
      if (!seen_.count(k)) fail(k, "unknown field");
    }
  }

  [[nodiscard]] std::string sub(std::string_view key) const {
    return prefix_.empty() ? std::string(key) : prefix_ + "." + std::string(key);
  }

 private:
  std::string_view text_;
  const json& obj_;
  std::string prefix_;
  std::set<std::string> seen_;
};

template <class T>
std::vector<T> read_list(Reader& r, std::string_view text, std::string_view key, const json& v) {
  std::vector<T> out;
  if (v.is_number_integer()) {
    if (v.get<long long>() < 0) r.fail(key, "must be nonnegative");
    out.push_back(v.get<T>());
    return out;
  }
  if (!v.is_array()) r.fail(key, "expected an integer or an array of integers");
  for (const auto& e : v) {
    if (!e.is_number_integer() || e.get<long long>() < 0) r.fail(key, "expected nonnegative integers");
    out.push_back(e.get<T>());
  }
  (void)text;
  return out;
}

}  // namespace

ExperimentConfig ExperimentConfig::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    throw ConfigError("config:" + std::to_string(line_of_offset(text, e.byte ? e.byte - 1 : 0)) +
                      ": syntax error: " + e.what());
  }
  ExperimentConfig c;
  Reader r(text, doc, "");
  int version = 0;
  if (!r.has("schema_version")) r.fail("schema_version", "missing");
  r.get("schema_version", version);
  if (version != kSchemaVersion) {
    r.fail("schema_version", "unsupported version " + std::to_string(version) + " (expected " +
                                 std::to_string(kSchemaVersion) + ")");
  }
  r.get("scenario", c.scenario);

  if (r.has("link_budget")) {
    Reader b(text, r.child("link_budget"), "link_budget");
    b.get("P_a_dbm", c.budget.P_a_dbm);
    b.get("P_e_dbm", c.budget.P_e_dbm);
    b.get("d_ab", c.budget.d_ab);
    b.get("d_eb", c.budget.d_eb);
    b.get("alpha_pl", c.budget.alpha_pl);
    b.get("sigma_b2_dbm", c.budget.sigma_b2_dbm);
    b.finish();
  }
  if (r.has("gammas")) {
    Reader g(text, r.child("gammas"), "gammas");
    double v = 0.0;
    if (g.has("ab")) {
      g.get("ab", v);
      c.gamma_ab = v;
    }
    if (g.has("eb")) {
      g.get("eb", v);
      c.gamma_eb = v;
    }
    g.finish();
  }
  if (r.has("probing")) {
    Reader p(text, r.child("probing"), "probing");
    p.get("T_P1", c.probe.schedule.probe_slot_1);
    p.get("T_P2", c.probe.schedule.probe_slot_2);
    p.get("T_s", c.probe.schedule.switch_time);
    p.get("doppler_hz", c.probe.schedule.doppler_hz);
    p.get("slots", c.probe.slots);
    p.get("subcarriers", c.probe.subcarriers);
    p.get("taps", c.probe.taps);
    p.get("probe_error_variance", c.probe.probe_error_variance);
    p.get("eve_offset_variance", c.probe.eve_offset_variance);
    p.finish();
  }
  if (r.has("quantizer")) {
    Reader q(text, r.child("quantizer"), "quantizer");
    q.get("alpha_tune", c.quantizer.alpha_tune);
    q.get("block_len", c.quantizer.block_len);
    std::string guard = "variance";
    q.get("guard", guard);
    if (guard == "variance") {
      c.quantizer.guard = extractor::GuardBand::variance;
    } else if (guard == "std_dev") {
      c.quantizer.guard = extractor::GuardBand::std_dev;
    } else {
      q.fail("guard", "expected 'variance' or 'std_dev'");
    }
    q.finish();
  }
  if (r.has("bch")) {
    Reader b(text, r.child("bch"), "bch");
    b.get("n", c.bch.n);
    b.get("k", c.bch.k);
    b.get("t", c.bch.t);
    b.finish();
    try {
      bch::BchCode probe(c.bch);
    } catch (const std::exception& e) {
      b.fail("", e.what());
    }
  }
  r.get("key_bits", c.key_bits);
  r.get("pools", c.pool_count);
  r.get("min_pool_entropy", c.min_pool_entropy);
  r.get("bank", c.bank_path);
  r.get("bank_degree", c.bank_degree);
  if (r.has("L")) c.L_sweep = read_list<std::size_t>(r, text, "L", r.child("L"));
  if (r.has("kt_sweep")) c.kt_sweep = read_list<unsigned>(r, text, "kt_sweep", r.child("kt_sweep"));
  r.get("gamma_th", c.gamma_th);
  if (r.has("jammer")) {
    Reader j(text, r.child("jammer"), "jammer");
    std::string strategy(adversary::strategy_name(c.jammer.strategy));
    j.get("strategy", strategy);
    try {
      c.jammer.strategy = adversary::parse_strategy(strategy);
    } catch (const ValidationError& e) {
      j.fail("strategy", e.what());
    }
    j.get("key_bits", c.jammer.key_bits);
    j.get("delay_symbols", c.jammer.delay_symbols);
    j.finish();
  }
  r.get("frame_symbols", c.frame_symbols);
  r.get("code_refresh", c.code_refresh);
  r.get("extract_keys", c.extract_keys);
  std::string policy(policy_name(c.failure_policy));
  r.get("failure_policy", policy);
  if (policy == "count_as_failure") {
    c.failure_policy = FailurePolicy::count_as_failure;
  } else if (policy == "retry") {
    c.failure_policy = FailurePolicy::retry;
  } else {
    r.fail("failure_policy", "expected 'count_as_failure' or 'retry'");
  }
  r.get("max_retries", c.max_retries);
  std::string meas(analytics::measurement_name(c.measurement));
  r.get("measurement", meas);
  try {
    c.measurement = analytics::parse_measurement(meas);
  } catch (const ValidationError& e) {
    r.fail("measurement", e.what());
  }
  r.get("trials", c.trials);
  r.get("seed", c.seed);
  r.get("write_trials", c.write_trials);
  r.finish();

  try {
    c.validate();
  } catch (const ConfigError& e) {
    const std::string msg = e.what();
    const auto q1 = msg.find('\'');
    const auto q2 = q1 == std::string::npos ? q1 : msg.find('\'', q1 + 1);
    std::size_t line = 0;
    if (q2 != std::string::npos) {
      auto field = msg.substr(q1 + 1, q2 - q1 - 1);
      if (auto dot = field.rfind('.'); dot != std::string::npos) field = field.substr(dot + 1);
      line = line_of_key(text, field);
    }
    throw ConfigError((line ? "config:" + std::to_string(line) + ": " : std::string("config: ")) + msg);
  } catch (const ValidationError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  ExperimentConfig c;
  try {
    c = parse(ss.str());
  } catch (const ConfigError& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  if (!c.bank_path.empty() && std::filesystem::path(c.bank_path).is_relative()) {
    c.bank_path = (path.parent_path() / c.bank_path).string();
  }
  return c;
}

std::string ExperimentConfig::to_json() const {
  json j;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = scenario;
  j["link_budget"] = {{"P_a_dbm", budget.P_a_dbm}, {"P_e_dbm", budget.P_e_dbm},   {"d_ab", budget.d_ab},
                      {"d_eb", budget.d_eb},       {"alpha_pl", budget.alpha_pl}, {"sigma_b2_dbm", budget.sigma_b2_dbm}};
  if (gamma_ab || gamma_eb) {
    j["gammas"] = json::object();
    if (gamma_ab) j["gammas"]["ab"] = *gamma_ab;
    if (gamma_eb) j["gammas"]["eb"] = *gamma_eb;
  }
  j["probing"] = {{"T_P1", probe.schedule.probe_slot_1},
                  {"T_P2", probe.schedule.probe_slot_2},
                  {"T_s", probe.schedule.switch_time},
                  {"doppler_hz", probe.schedule.doppler_hz},
                  {"slots", probe.slots},
                  {"subcarriers", probe.subcarriers},
                  {"taps", probe.taps},
                  {"probe_error_variance", probe.probe_error_variance},
                  {"eve_offset_variance", probe.eve_offset_variance}};
  j["quantizer"] = {{"alpha_tune", quantizer.alpha_tune},
                    {"block_len", quantizer.block_len},
                    {"guard", quantizer.guard == extractor::GuardBand::variance ? "variance" : "std_dev"}};
  j["bch"] = {{"n", bch.n}, {"k", bch.k}, {"t", bch.t}};
  j["key_bits"] = key_bits;
  j["pools"] = pool_count;
  j["min_pool_entropy"] = min_pool_entropy;
  if (!bank_path.empty()) j["bank"] = bank_path;
  if (bank_degree) j["bank_degree"] = bank_degree;
  j["L"] = L_sweep;
  j["kt_sweep"] = kt_sweep;
  j["gamma_th"] = gamma_th;
  j["jammer"] = {{"strategy", std::string(adversary::strategy_name(jammer.strategy))},
                 {"key_bits", jammer.key_bits},
                 {"delay_symbols", jammer.delay_symbols}};
  j["frame_symbols"] = frame_symbols;
  j["code_refresh"] = code_refresh;
  j["extract_keys"] = extract_keys;
  j["failure_policy"] = std::string(policy_name(failure_policy));
  j["max_retries"] = max_retries;
  j["measurement"] = std::string(analytics::measurement_name(measurement));
  j["trials"] = trials;
  j["seed"] = seed;
  j["write_trials"] = write_trials;
  return j.dump(2) + "\n";
}

// --------------------------------------------------------------- context

Context::Context(const ExperimentConfig& config) : config_(config), code_(config.bch), gammas_(config.gammas()) {
  config_.validate();
  for (auto L : config_.L_sweep) {
    if (banks_.count(L)) continue;
    if (!config_.bank_path.empty()) {
      banks_.emplace(L, dsss::PrimitivePolyBank::load_file(config_.bank_path));
    } else if (config_.bank_degree) {
      banks_.emplace(L, dsss::PrimitivePolyBank::for_degree(config_.bank_degree));
    } else {
      banks_.emplace(L, dsss::PrimitivePolyBank::for_code_length(L));
    }
  }
}

const dsss::PrimitivePolyBank& Context::bank(std::size_t L) const {
  const auto it = banks_.find(L);
  if (it == banks_.end()) throw ValidationError("no bank for L = " + std::to_string(L));
  return it->second;
}

const std::vector<double>& Context::superposition(std::size_t poly_index, unsigned key_bits, std::size_t L) {
  const auto key = std::make_tuple(poly_index, key_bits, L);
  auto it = sup_cache_.find(key);
  if (it == sup_cache_.end()) {
    it = sup_cache_.emplace(key, adversary::racs_superposition(key_bits, bank(L).at(poly_index), L)).first;
  }
  return it->second;
}

// ----------------------------------------------------------------- trial

namespace {

std::string purpose(std::string_view base, std::size_t attempt) { return std::string(base) + "/" + std::to_string(attempt); }

channel::ProbeViews probe_once(const ExperimentConfig& c, std::size_t trial, std::size_t attempt) {
  auto rs = derive_stream(c.seed, trial, purpose("probe", attempt));
  const auto truth = channel::sample_observation(channel::TapProfile::uniform(c.probe.taps), c.probe.slots,
                                                 c.probe.subcarriers, rs);
  return channel::probe_pair(truth, c.probe.probe_error_variance, c.probe.eve_offset_variance, rs);
}

/// R_s with the all-zero value excluded, so the legitimate code lies in
/// the 2^k - 1 code space the rate-aware jammer enumerates.
rsg::SeedOutput draw_seed(rsg::SeedGenerator& gen, unsigned k_t, bool first) {
  auto out = first ? gen.next_seed_pair(k_t) : gen.generate(k_t);
  while (out.seed.all_zero()) out = gen.generate(k_t);
  return out;
}

}  // namespace

channel::ProbeViews probe_views(const ExperimentConfig& config, std::size_t trial_index) {
  return probe_once(config, trial_index, 0);
}

TrialRecord run_pipeline_trial(Context& ctx, std::size_t trial, unsigned k_t, std::size_t L) {
  const auto& c = ctx.config();
  TrialRecord rec;
  rec.trial = trial;
  rec.k_t = k_t;
  rec.L = L;

  rsg::SeedGenerator gen(c.pool_count, c.min_pool_entropy);
  if (c.extract_keys) {
    const std::size_t attempts = c.failure_policy == FailurePolicy::retry ? c.max_retries + 1 : 1;
    for (std::size_t a = 0; a < attempts && !rec.agreed; ++a) {
      ++rec.attempts;
      const auto views = probe_once(c, trial, a);
      auto sk = derive_stream(c.seed, trial, purpose("sketch", a));
      const auto res = extractor::extract_shared_key(views.alice.values(), views.bob.values(), c.quantizer,
                                                     ctx.code(), c.key_bits, sk);
      if (!res.agreed() || !res.bob || res.bob->bits != res.alice.bits) continue;
      if (res.alice.entropy_estimate < c.min_pool_entropy) continue;
      rec.agreed = true;
      rec.key_hex = res.alice.bits.to_hex();
      gen.pool_feed(0, res.alice.bits.to_bytes(), res.alice.entropy_estimate);
    }
  } else {
    auto es = derive_stream(c.seed, trial, "entropy");
    rec.attempts = 1;
    rec.agreed = true;
    const auto bytes = es.bytes(32);
    rec.key_hex = to_hex(bytes);
    gen.pool_feed(0, bytes, 256.0);
  }
  if (!rec.agreed) return rec;

  const auto gam = ctx.gammas();
  auto fading = derive_stream(c.seed, trial, "fading");
  rec.g_ab = fading.exponential();
  rec.g_eb = fading.exponential();
  auto sym = derive_stream(c.seed, trial, "symbols");
  auto jam = derive_stream(c.seed, trial, "jammer");
  auto noise = derive_stream(c.seed, trial, "noise");

  const auto strategy = c.jammer.strategy;
  const unsigned k_r = c.jammer.key_bits ? c.jammer.key_bits : k_t;
  const double S = analytics::code_space(k_r);
  const double amp = std::sqrt(gam.ab * rec.g_ab);
  const double jam_power = gam.eb * rec.g_eb;
  const auto& bank = ctx.bank(L);
  adversary::ReplayJammer replay(std::max<std::size_t>(c.jammer.delay_symbols, 1));

  dsss::SpreadingCode code;
  std::size_t poly_index = 0;
  std::vector<double> tx(L), rx(L);
  double err2 = 0.0;
  double phi_acc = 0.0;
  for (std::size_t i = 0; i < c.frame_symbols; ++i) {
    if (i == 0 || c.code_refresh) {
      const auto so = draw_seed(gen, k_t, i == 0);
      poly_index = dsss::select_polynomial_index(so.poly_select, bank);
      code = dsss::make_code(bank, so.poly_select, so.seed, L);
    }
    const int x = sym.sign();
    for (std::size_t j = 0; j < L; ++j) tx[j] = x * code[j];
    for (std::size_t j = 0; j < L; ++j) rx[j] = amp * tx[j];

    switch (strategy) {
      case adversary::JammerStrategy::racs: {
        const auto& sup = ctx.superposition(poly_index, k_r, L);
        const double a = std::sqrt(jam_power / S) * jam.sign();
        for (std::size_t j = 0; j < L; ++j) rx[j] += a * sup[j];
        const double phi = adversary::effective_interference(sup, code);
        phi_acc += phi * phi;
        break;
      }
      case adversary::JammerStrategy::broadband: {
        const double a = std::sqrt(jam_power);
        for (std::size_t j = 0; j < L; ++j) rx[j] += a * jam.normal();
        phi_acc += 1.0;
        break;
      }
      case adversary::JammerStrategy::replay: {
        const auto w = replay.waveform(jam.sign(), jam_power);
        for (std::size_t j = 0; j < w.size(); ++j) rx[j] += w[j];
        replay.capture(tx);
        phi_acc += 1.0;
        break;
      }
    }
    for (std::size_t j = 0; j < L; ++j) rx[j] += noise.normal();

    const double z = dsss::despread(rx, code).front();
    const double e = z - amp * x;
    err2 += e * e;
    if ((z >= 0.0 ? 1 : -1) != x) ++rec.bit_errors;
  }
  rec.symbols = c.frame_symbols;
  rec.phi_power = phi_acc / static_cast<double>(c.frame_symbols);
  const double interference = err2 / static_cast<double>(c.frame_symbols);
  rec.sinr_measured = interference > 0.0 ? amp * amp / interference : std::numeric_limits<double>::infinity();
  if (strategy == adversary::JammerStrategy::racs) {
    rec.sinr_analytic = analytics::sinr_racs(gam.ab, gam.eb, rec.g_ab, rec.g_eb, static_cast<double>(L),
                                             rec.phi_power, S);
  } else {
    rec.sinr_analytic = analytics::sinr_broadband(gam.ab, gam.eb, rec.g_ab, rec.g_eb, static_cast<double>(L));
  }
  rec.success = rec.sinr_measured > c.gamma_th;
  return rec;
}

// -------------------------------------------------------------- campaign

CampaignResult run_campaign(const ExperimentConfig& config, bool keep_records) {
  Context ctx(config);
  const auto gam = ctx.gammas();
  const double rate = analytics::key_rate(config.measurement);
  CampaignResult out;
  out.seed = config.seed;
  for (auto L : config.L_sweep) {
    for (auto k_t : config.kt_sweep) {
      ResultRow row;
      row.k_t = k_t;
      row.L = L;
      row.trials = config.trials;
      const unsigned k_r = config.jammer.key_bits ? config.jammer.key_bits : k_t;
      std::size_t agreed = 0;
      double cf_acc = 0.0;
      double phi_acc = 0.0;
      for (std::size_t t = 0; t < config.trials; ++t) {
        auto rec = run_pipeline_trial(ctx, t, k_t, L);
        if (rec.agreed) {
          ++agreed;
          phi_acc += rec.phi_power;
          if (config.jammer.strategy == adversary::JammerStrategy::racs) {
            analytics::SuccessQuery q;
            q.key_bits = k_r;
            q.bits_per_tx = k_t;
            q.gamma_th = config.gamma_th;
            q.L = static_cast<double>(L);
            q.phi = rec.phi_power;
            cf_acc += analytics::p_s_closed_form(q, gam.ab, gam.eb);
          }
        }
        row.successes += rec.success;
        if (keep_records) out.records.push_back(std::move(rec));
      }
      row.P_s_simulated = static_cast<double>(row.successes) / static_cast<double>(row.trials);
      const auto ci = stats::wilson_interval(row.successes, row.trials);
      row.wilson_ci_low = ci.low;
      row.wilson_ci_high = ci.high;
      row.agreement_rate = static_cast<double>(agreed) / static_cast<double>(row.trials);
      row.mean_phi_power = agreed ? phi_acc / static_cast<double>(agreed) : 0.0;
      if (config.jammer.strategy == adversary::JammerStrategy::racs) {
        analytics::SuccessQuery q;
        q.key_bits = k_r;
        q.bits_per_tx = k_t;
        q.gamma_th = config.gamma_th;
        q.L = static_cast<double>(L);
        row.P_s_closed_form = agreed ? cf_acc / static_cast<double>(agreed) : 0.0;
        row.P_s_approx = analytics::p_s_approx(q, gam.ab, gam.eb);
      } else {
        row.P_s_closed_form = analytics::p_s_broadband(config.gamma_th, static_cast<double>(L), gam.ab, gam.eb);
        row.P_s_approx = row.P_s_closed_form;
      }
      row.T_s = analytics::throughput(rate, k_t, row.P_s_simulated);
      row.T_s_approx = analytics::throughput(rate, k_t, row.P_s_approx);
      out.rows.push_back(row);
    }
  }
  return out;
}

// ----------------------------------------------------------------- output

std::string csv_field(std::string_view v) {
  if (v.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(v);
  std::string out = "\"";
  for (char ch : v) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

namespace {

void write_row(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << csv_field(fields[i]);
  }
  out << "\r\n";
}

std::string num(std::size_t v) { return std::to_string(v); }

}  // namespace

void write_results_csv(std::ostream& out, const CampaignResult& result, const ExperimentConfig& config) {
  write_row(out, {"scenario", "strategy", "L", "k_t", "trials", "successes", "P_s_simulated", "wilson_ci_low",
                  "wilson_ci_high", "P_s_closed_form", "P_s_approx", "T_s", "T_s_approx", "agreement_rate",
                  "mean_phi_power", "measurement", "seed"});
  const std::string strategy(adversary::strategy_name(config.jammer.strategy));
  const std::string meas(analytics::measurement_name(config.measurement));
  for (const auto& r : result.rows) {
    write_row(out, {config.scenario, strategy, num(r.L), num(r.k_t), num(r.trials), num(r.successes),
                    format_double(r.P_s_simulated), format_double(r.wilson_ci_low), format_double(r.wilson_ci_high),
                    format_double(r.P_s_closed_form), format_double(r.P_s_approx), format_double(r.T_s),
                    format_double(r.T_s_approx), format_double(r.agreement_rate), format_double(r.mean_phi_power),
                    meas, std::to_string(result.seed)});
  }
}

void write_trials_csv(std::ostream& out, const std::vector<TrialRecord>& records) {
  write_row(out, {"trial", "L", "k_t", "agreed", "attempts", "g_ab", "g_eb", "phi_power", "sinr_measured",
                  "sinr_analytic", "success", "bit_errors", "symbols", "key_hex"});
  for (const auto& r : records) {
    write_row(out, {num(r.trial), num(r.L), num(r.k_t), r.agreed ? "1" : "0", num(r.attempts), format_double(r.g_ab),
                    format_double(r.g_eb), format_double(r.phi_power), format_double(r.sinr_measured),
                    format_double(r.sinr_analytic), r.success ? "1" : "0", num(r.bit_errors), num(r.symbols),
                    r.key_hex});
  }
}

std::string_view figure_name(Figure f) {
  switch (f) {
    case Figure::ps_vs_kt: return "ps_vs_kt";
    case Figure::ts_vs_kt: return "ts_vs_kt";
    case Figure::keytime_vs_kt: return "keytime_vs_kt";
  }
  return "ps_vs_kt";
}

Figure parse_figure(std::string_view name) {
  if (name == "ps_vs_kt") return Figure::ps_vs_kt;
  if (name == "ts_vs_kt") return Figure::ts_vs_kt;
  if (name == "keytime_vs_kt") return Figure::keytime_vs_kt;
  throw ValidationError("unknown figure '" + std::string(name) + "'");
}

void write_figure_csv(std::ostream& out, const std::vector<ResultRow>& rows, Figure which) {
  if (rows.empty()) throw ValidationError("emit_figure_data: no rows");
  switch (which) {
    case Figure::ps_vs_kt:
      write_row(out, {"series", "L", "k_t", "P_s_simulated", "wilson_ci_low", "wilson_ci_high", "P_s_closed_form",
                      "P_s_approx"});
      for (const auto& r : rows) {
        write_row(out, {"L=" + num(r.L), num(r.L), num(r.k_t), format_double(r.P_s_simulated),
                        format_double(r.wilson_ci_low), format_double(r.wilson_ci_high),
                        format_double(r.P_s_closed_form), format_double(r.P_s_approx)});
      }
      break;
    case Figure::ts_vs_kt:
      write_row(out, {"series", "L", "measurement", "rate_bps", "k_t", "T_s", "T_s_approx"});
      for (auto m : analytics::kAllMeasurements) {
        const double rate = analytics::key_rate(m);
        const std::string name(analytics::measurement_name(m));
        for (const auto& r : rows) {
          write_row(out, {"L=" + num(r.L) + "/" + name, num(r.L), name, format_double(rate), num(r.k_t),
                          format_double(analytics::throughput(rate, r.k_t, r.P_s_simulated)),
                          format_double(analytics::throughput(rate, r.k_t, r.P_s_approx))});
        }
      }
      break;
    case Figure::keytime_vs_kt: {
      std::set<unsigned> kts;
      for (const auto& r : rows) kts.insert(r.k_t);
      write_row(out, {"series", "measurement", "rate_bps", "k_t", "seconds"});
      for (auto m : analytics::kAllMeasurements) {
        const double rate = analytics::key_rate(m);
        const std::string name(analytics::measurement_name(m));
        for (auto k : kts) {
          write_row(out, {name, name, format_double(rate), num(k),
                          format_double(analytics::key_generation_time(k, rate))});
        }
      }
      break;
    }
  }
}

namespace {

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw ResourceError("cannot open " + path.string() + " for writing");
  return out;
}

void close_checked(std::ofstream& out, const std::filesystem::path& path) {
  out.close();
  if (!out) throw ResourceError("write failed for " + path.string());
}

}  // namespace

void emit_figure_data(const std::vector<ResultRow>& rows, Figure which, const std::filesystem::path& path) {
  auto out = open_out(path);
  write_figure_csv(out, rows, which);
  close_checked(out, path);
}

std::string manifest_json(const ExperimentConfig& config, std::string_view config_sha256,
                          const std::vector<std::string>& outputs) {
  json j;
  j["tool"] = "phydsss";
  j["version"] = PHYDSSS_VERSION;
  j["schema_version"] = kSchemaVersion;
  j["scenario"] = config.scenario;
  j["config_sha256"] = std::string(config_sha256);
  j["seed"] = config.seed;
  j["trials"] = config.trials;
  j["jammer"] = std::string(adversary::strategy_name(config.jammer.strategy));
  j["outputs"] = outputs;
  return j.dump(2) + "\n";
}

std::vector<std::filesystem::path> run_to_directory(const ExperimentConfig& config, std::string_view config_text,
                                                    const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw ResourceError("cannot create output directory " + out_dir.string() + ": " + ec.message());

  const auto result = run_campaign(config, config.write_trials);
  std::vector<std::filesystem::path> written;
  std::vector<std::string> names;
  auto emit = [&](const std::string& name, auto&& writer) {
    const auto path = out_dir / name;
    auto out = open_out(path);
    writer(out);
    close_checked(out, path);
    written.push_back(path);
    names.push_back(name);
  };
  emit("results.csv", [&](std::ostream& o) { write_results_csv(o, result, config); });
  for (auto f : {Figure::ps_vs_kt, Figure::ts_vs_kt, Figure::keytime_vs_kt}) {
    emit(std::string(figure_name(f)) + ".csv", [&](std::ostream& o) { write_figure_csv(o, result.rows, f); });
  }
  if (config.write_trials) {
    emit("trials.csv", [&](std::ostream& o) { write_trials_csv(o, result.records); });
  }
  const auto digest = crypto::sha256(
      std::span(reinterpret_cast<const std::uint8_t*>(config_text.data()), config_text.size()));
  const auto manifest = manifest_json(config, to_hex(digest), names);
  const auto mpath = out_dir / "manifest.json";
  auto mout = open_out(mpath);
  mout << manifest;
  close_checked(mout, mpath);
  written.push_back(mpath);
  return written;
}

// ------------------------------------------------------------ link model

LinkMeasurement simulate_link(const LinkSimConfig& cfg) {
  if (cfg.L < 3) throw ValidationError("simulate_link: L must be >= 3");
  if (cfg.symbols < 1) throw ValidationError("simulate_link: need at least one symbol");
  if (cfg.strategy == adversary::JammerStrategy::racs) {
    throw ValidationError("simulate_link: RACS jamming runs through run_pipeline_trial");
  }
  const auto bank = cfg.bank_degree ? dsss::PrimitivePolyBank::for_degree(cfg.bank_degree)
                                    : dsss::PrimitivePolyBank::for_code_length(cfg.L);
  const unsigned seed_bits = bank.at(0).degree;
  auto es = derive_stream(cfg.seed, 0, "entropy");
  rsg::SeedGenerator gen;
  gen.pool_feed(0, es.bytes(32), 256.0);
  auto sym = derive_stream(cfg.seed, 0, "symbols");
  auto jam = derive_stream(cfg.seed, 0, "jammer");
  auto noise = derive_stream(cfg.seed, 0, "noise");

  const std::size_t L = cfg.L;
  const double amp = std::sqrt(cfg.gamma_ab);
  const double jam_amp = std::sqrt(cfg.gamma_eb);
  const std::size_t warmup = cfg.strategy == adversary::JammerStrategy::replay ? cfg.delay_symbols : 0;
  adversary::ReplayJammer replay(std::max<std::size_t>(cfg.delay_symbols, 1));

  LinkMeasurement m;
  dsss::SpreadingCode code;
  std::vector<double> tx(L), rx(L);
  double chip_noise = 0.0;
  double post_err = 0.0;
  for (std::size_t i = 0; i < cfg.symbols + warmup; ++i) {
    if (i == 0 || cfg.code_refresh) {
      const auto so = draw_seed(gen, seed_bits, i == 0);
      code = dsss::make_code(bank, so.poly_select, so.seed, L);
    }
    const int x = sym.sign();
    for (std::size_t j = 0; j < L; ++j) tx[j] = x * code[j];
    std::fill(rx.begin(), rx.end(), 0.0);
    if (cfg.strategy == adversary::JammerStrategy::broadband) {
      for (std::size_t j = 0; j < L; ++j) rx[j] = jam_amp * jam.normal();
    } else {
      const auto w = replay.waveform(jam.sign(), cfg.gamma_eb);
      for (std::size_t j = 0; j < w.size(); ++j) rx[j] = w[j];
      replay.capture(tx);
    }
    for (std::size_t j = 0; j < L; ++j) rx[j] += noise.normal();
    const bool counted = i >= warmup;
    if (counted) {
      for (double v : rx) chip_noise += v * v;
    }
    for (std::size_t j = 0; j < L; ++j) rx[j] += amp * tx[j];
    const double z = dsss::despread(rx, code).front();
    if (!counted) continue;
    const double e = z - amp * x;
    post_err += e * e;
    if ((z >= 0.0 ? 1 : -1) != x) ++m.bit_errors;
    ++m.symbols;
  }
  const double n = static_cast<double>(m.symbols);
  m.sinr_pre = cfg.gamma_ab / (chip_noise / (n * static_cast<double>(L)));
  m.sinr_post = cfg.gamma_ab / (post_err / n);
  return m;
}

// ------------------------------------------------------------ trace mode

TraceKeys extract_from_trace(std::span<const channel::ChannelObservation> observations,
                             const ExperimentConfig& config) {
  const channel::ChannelObservation* alice = nullptr;
  const channel::ChannelObservation* bob = nullptr;
  const channel::ChannelObservation* eve = nullptr;
  for (const auto& o : observations) {
    switch (o.role()) {
      case channel::ObservationRole::alice: alice = &o; break;
      case channel::ObservationRole::bob: bob = &o; break;
      case channel::ObservationRole::eve: eve = &o; break;
    }
  }
  if (!alice || !bob) throw ValidationError("trace must contain alice and bob observations");
  const bch::BchCode code(config.bch);
  auto rng = derive_stream(config.seed, 0, purpose("sketch", 0));
  const auto res = extractor::extract_shared_key(alice->values(), bob->values(), config.quantizer, code,
                                                 config.key_bits, rng);
  TraceKeys out;
  out.status = res.status;
  out.aligned_bits = res.leakage.aligned_bits;
  out.mismatches = res.mismatches;
  if (res.status == extractor::AgreementStatus::insufficient_material) return out;
  out.alice_hex = res.alice.bits.to_hex();
  out.entropy_estimate = res.alice.entropy_estimate;
  if (res.bob) out.bob_hex = res.bob->bits.to_hex();
  if (eve) {
    if (auto k = extractor::eavesdrop(eve->values(), res.leakage, config.quantizer, code, config.key_bits)) {
      out.eve_hex = k->bits.to_hex();
    }
  }
  return out;
}

}  // namespace phydsss::harness
