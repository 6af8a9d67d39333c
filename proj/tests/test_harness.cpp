#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "phydsss/crypto.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/harness.hpp"
#include "phydsss/stats.hpp"
#include "phydsss/verify.hpp"

using namespace phydsss;
using namespace phydsss::harness;

namespace {

std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string parse_error(std::string_view text) {
  try {
    ExperimentConfig::parse(text);
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

ExperimentConfig small(adversary::JammerStrategy s) {
  ExperimentConfig c;
  c.L_sweep = {64};
  c.kt_sweep = {1, 2, 3, 4};
  c.jammer.strategy = s;
  c.frame_symbols = 20;
  c.trials = 30;
  return c;
}

std::filesystem::path scratch(const char* name) {
  auto p = std::filesystem::temp_directory_path() / ("phydsss-test-" + std::string(name));
  std::filesystem::remove_all(p);
  return p;
}

}  // namespace

TEST_SUITE("harness") {
TEST_CASE("config parsing") {
  const auto c = ExperimentConfig::parse(R"({
    // comments are allowed
    "schema_version": 1,
    "scenario": "x",
    "gammas": {"ab": 2.5, "eb": 0},
    "L": 1023,
    "kt_sweep": [3, 5],
    "jammer": {"strategy": "replay", "delay_symbols": 2},
    "failure_policy": "retry",
    "measurement": "RSS",
    "quantizer": {"alpha_tune": 0.5, "guard": "std_dev"},
    "bch": {"n": 15, "k": 7, "t": 2},
    "trials": 12,
    "seed": 99
  })");
  CHECK(c.scenario == "x");
  CHECK(c.gammas().ab == 2.5);
  CHECK(c.gammas().eb == 0.0);
  CHECK(c.L_sweep == std::vector<std::size_t>{1023});
  CHECK(c.kt_sweep == std::vector<unsigned>{3, 5});
  CHECK(c.jammer.strategy == adversary::JammerStrategy::replay);
  CHECK(c.jammer.delay_symbols == 2);
  CHECK(c.failure_policy == FailurePolicy::retry);
  CHECK(c.measurement == analytics::Measurement::rss);
  CHECK(c.quantizer.guard == extractor::GuardBand::std_dev);
  CHECK(c.bch == bch::kTestParams);
  CHECK(c.trials == 12);
  CHECK(c.seed == 99);
  const auto back = ExperimentConfig::parse(c.to_json());
  CHECK(back.to_json() == c.to_json());

  const auto defaults = ExperimentConfig::load(std::string(PHYDSSS_CONFIG_DIR) + "/reference_racs.json");
  CHECK(defaults.pool_count == 12);
  CHECK(defaults.L_sweep == std::vector<std::size_t>{1024});
}

TEST_CASE("config diagnostics") {
  CHECK(parse_error(R"({"scenario": "x"})").find("schema_version") != std::string::npos);
  CHECK(parse_error(R"({"schema_version": 2})").find("unsupported version 2") != std::string::npos);
  const auto unknown = parse_error("{\n  \"schema_version\": 1,\n  \"trails\": 5\n}");
  CHECK(unknown.find("config:3:") == 0);
  CHECK(unknown.find("trails") != std::string::npos);
  const auto zero = parse_error("{\n  \"schema_version\": 1,\n\n  \"trials\": 0\n}");
  CHECK(zero.find("config:4:") == 0);
  CHECK(zero.find("'trials'") != std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "trials": "ten"})").find("expected an integer") != std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "jammer": {"strategy": "smart"}})").find("jammer.strategy") !=
        std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "bch": {"n": 15, "k": 8, "t": 2}})").find("bch") != std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "probing": {"doppler_hz": 1000}})").find("coherence time") !=
        std::string::npos);
  CHECK(parse_error(R"({"schema_version": 1, "kt_sweep": []})").find("kt_sweep") != std::string::npos);
  CHECK(parse_error("{\"schema_version\": 1,,}").find("syntax error") != std::string::npos);
  CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/config.json"), ConfigError);
}

TEST_CASE("CSV quoting and number formatting") {
  CHECK(csv_field("plain") == "plain");
  CHECK(csv_field("a,b") == "\"a,b\"");
  CHECK(csv_field("say \"hi\"") == "\"say \"\"hi\"\"\"");
  CHECK(csv_field("two\nlines") == "\"two\nlines\"");
  CHECK(format_double(0.1) == "0.1");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);
}

TEST_CASE("unjammed high-SNR trial succeeds") {
  auto c = small(adversary::JammerStrategy::broadband);
  c.gamma_ab = 1e6;
  c.gamma_eb = 0.0;
  Context ctx(c);
  for (std::size_t t = 0; t < 5; ++t) {
    const auto rec = run_pipeline_trial(ctx, t, 4, 64);
    REQUIRE(rec.agreed);
    CHECK(rec.success);
    CHECK(rec.bit_errors == 0);
    CHECK(rec.key_hex.size() == 64);
  }
  c.jammer.strategy = adversary::JammerStrategy::racs;
  Context racs(c);
  CHECK(run_pipeline_trial(racs, 0, 4, 64).success);
}

TEST_CASE("trial SINR matches the RACS form for the drawn gains") {
  ExperimentConfig c;
  c.gamma_ab = 1.0;
  c.gamma_eb = 100.0;
  c.probe.probe_error_variance = 0.0;
  c.frame_symbols = 2000;
  c.L_sweep = {1024};
  Context ctx(c);
  for (unsigned k = 1; k <= 8; ++k) {
    for (std::size_t t = 0; t < 6; ++t) {
      const auto rec = run_pipeline_trial(ctx, t, k, 1024);
      REQUIRE(rec.agreed);
      CHECK(rec.sinr_measured == doctest::Approx(rec.sinr_analytic).epsilon(0.10));
    }
  }
}

TEST_CASE("trials are deterministic per seed") {
  for (auto s : {adversary::JammerStrategy::racs, adversary::JammerStrategy::broadband,
                 adversary::JammerStrategy::replay}) {
    const auto c = small(s);
    const auto a = run_campaign(c, true);
    const auto b = run_campaign(c, true);
    CHECK(a.records == b.records);
    auto other = c;
    other.seed = 2;
    CHECK(run_campaign(other, true).records != a.records);
  }
}

TEST_CASE("failure policy") {
  auto c = small(adversary::JammerStrategy::racs);
  c.probe.probe_error_variance = 0.4;
  c.probe.eve_offset_variance = 1.0;
  c.trials = 40;
  Context once(c);
  std::size_t agreed_once = 0, agreed_retry = 0;
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto rec = run_pipeline_trial(once, t, 2, 64);
    CHECK(rec.attempts == 1);
    agreed_once += rec.agreed;
    if (!rec.agreed) CHECK_FALSE(rec.success);
  }
  c.failure_policy = FailurePolicy::retry;
  c.max_retries = 3;
  Context retry(c);
  for (std::size_t t = 0; t < c.trials; ++t) {
    const auto rec = run_pipeline_trial(retry, t, 2, 64);
    CHECK(rec.attempts <= 4);
    agreed_retry += rec.agreed;
  }
  CHECK(agreed_once < c.trials);
  CHECK(agreed_retry >= agreed_once);
}

TEST_CASE("campaign rows against the closed form") {
  const auto c = ExperimentConfig::load(std::string(PHYDSSS_CONFIG_DIR) + "/reference_racs.json");
  const auto res = run_campaign(c);
  REQUIRE(res.rows.size() == 8);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& r = res.rows[i];
    CAPTURE(r.k_t);
    CHECK(r.wilson_ci_low <= r.P_s_simulated);
    CHECK(r.P_s_simulated <= r.wilson_ci_high);
    CHECK(r.P_s_closed_form >= r.wilson_ci_low);
    CHECK(r.P_s_closed_form <= r.wilson_ci_high);
    CHECK(r.agreement_rate >= 0.99);
    if (i > 0) {
      const auto& p = res.rows[i - 1];
      CHECK(r.P_s_simulated >= p.P_s_simulated - (p.wilson_ci_high - p.wilson_ci_low));
      CHECK(r.T_s < p.T_s);
      CHECK(r.T_s_approx < p.T_s_approx);
    }
  }
}

TEST_CASE("Wilson interval coverage on a known scenario") {
  // P_s known analytically; each campaign is 1e4 sampled trials
  const unsigned k = 4;
  const double L = 64, gab = 10, geb = 10;
  const double phi = analytics::mai_phi(k, L);
  analytics::SuccessQuery q;
  q.key_bits = k;
  q.L = L;
  const double truth = analytics::p_s_approx(q, gab, geb);
  std::size_t covered = 0;
  const std::size_t campaigns = 500, trials = 10000;
  for (std::size_t i = 0; i < campaigns; ++i) {
    const double p = verify::monte_carlo_ps(k, L, gab, geb, 1.0, phi, trials, 1000 + i);
    const auto ci = stats::wilson_interval(static_cast<std::size_t>(std::llround(p * trials)), trials);
    covered += ci.low <= truth && truth <= ci.high;
  }
  const double coverage = static_cast<double>(covered) / campaigns;
  CHECK(coverage >= 0.93);
  CHECK(coverage <= 0.97);
}

TEST_CASE("output files and manifest") {
  const auto dir = scratch("out");
  auto c = small(adversary::JammerStrategy::racs);
  c.write_trials = true;
  const std::string text = c.to_json();
  const auto files = run_to_directory(c, text, dir);
  for (const char* name : {"results.csv", "ps_vs_kt.csv", "ts_vs_kt.csv", "keytime_vs_kt.csv", "trials.csv",
                           "manifest.json"}) {
    CHECK(std::filesystem::exists(dir / name));
  }
  CHECK(files.size() == 6);
  const auto results = read_file(dir / "results.csv");
  CHECK(results.find("wilson_ci_low") != std::string::npos);
  CHECK(results.find("\r\n") != std::string::npos);
  const auto ps = read_file(dir / "ps_vs_kt.csv");
  CHECK(ps.find("P_s_simulated") != std::string::npos);
  CHECK(ps.find("P_s_closed_form") != std::string::npos);
  const auto keytime = read_file(dir / "keytime_vs_kt.csv");
  for (const char* m : {"RSS", "CIR", "CFR"}) CHECK(keytime.find(m) != std::string::npos);

  const auto manifest = nlohmann::json::parse(read_file(dir / "manifest.json"));
  CHECK(manifest.at("seed").get<std::uint64_t>() == c.seed);
  CHECK(manifest.at("config_sha256").get<std::string>() == to_hex(crypto::sha256(std::span(
                                                                reinterpret_cast<const std::uint8_t*>(text.data()),
                                                                text.size()))));
  CHECK(manifest.at("schema_version").get<int>() == kSchemaVersion);

  const auto again = scratch("out2");
  run_to_directory(c, text, again);
  for (const char* name : {"results.csv", "ps_vs_kt.csv", "ts_vs_kt.csv", "keytime_vs_kt.csv", "trials.csv",
                           "manifest.json"}) {
    CHECK(read_file(dir / name) == read_file(again / name));
  }
  CHECK_THROWS(emit_figure_data({}, Figure::ps_vs_kt, dir / "empty.csv"));
  CHECK_THROWS(emit_figure_data(run_campaign(c).rows, Figure::ps_vs_kt, "/nonexistent/dir/x.csv"));
  std::filesystem::remove_all(dir);
  std::filesystem::remove_all(again);
}

TEST_CASE("trace extraction") {
  ExperimentConfig c;
  const auto v = probe_views(c, 3);
  std::stringstream ss;
  const channel::ChannelObservation obs[] = {v.alice, v.bob, v.eve};
  channel::write_trace_csv(ss, obs);
  const auto back = channel::read_trace_csv(ss);
  const auto keys = extract_from_trace(back, c);
  CHECK(keys.status == extractor::AgreementStatus::ok);
  CHECK(keys.alice_hex == keys.bob_hex);
  CHECK(keys.alice_hex.size() == 64);
  CHECK(!(keys.eve_hex && *keys.eve_hex == keys.alice_hex));
  CHECK_THROWS_AS(extract_from_trace(std::span(obs, 1), c), ValidationError);
}

TEST_CASE("link simulation") {
  LinkSimConfig cfg;
  cfg.symbols = 20000;
  cfg.gamma_eb = 0.0;
  cfg.gamma_ab = 1.0;
  const auto clean = simulate_link(cfg);
  CHECK(clean.ber() < 1e-3);
  cfg.strategy = adversary::JammerStrategy::racs;
  CHECK_THROWS(simulate_link(cfg));
}
}
