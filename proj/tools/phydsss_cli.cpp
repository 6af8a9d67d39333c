#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "phydsss/bch.hpp"
#include "phydsss/channel.hpp"
#include "phydsss/dsss.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/harness.hpp"
#include "phydsss/verify.hpp"

using namespace phydsss;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

harness::ExperimentConfig config_or_default(const std::string& path) {
  return path.empty() ? harness::ExperimentConfig{} : harness::ExperimentConfig::load(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Physical-layer key driven DSSS anti-jamming simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", PHYDSSS_VERSION);

  // run
  auto* run = app.add_subcommand("run", "Run a Monte Carlo campaign and write CSV outputs");
  std::string config_path, out_dir;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> trials;
  std::string jammer;
  run->add_option("--config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--seed", seed, "Master seed (overrides the config)");
  run->add_option("--out", out_dir, "Output directory")->required();
  run->add_option("--trials", trials, "Trials per sweep point (overrides the config)");
  run->add_option("--jammer", jammer, "Jammer strategy")->check(CLI::IsMember({"broadband", "racs", "replay"}));

  // verify
  auto* verify = app.add_subcommand("verify", "Run acceptance suites");
  std::string suite = "all";
  verify::VerifyOptions vopts;
  std::vector<std::string> bank_files;
  std::string bank_dir;
  verify->add_option("--suite", suite, "Suite name")->check(CLI::IsMember(verify::suite_names()));
  verify->add_option("--seed", vopts.seed, "Seed");
  verify->add_option("--scale", vopts.scale, "Trial-count multiplier")->check(CLI::PositiveNumber);
  verify->add_option("--bank", bank_files, "Bank file(s) for the m-sequence suite");
  verify->add_option("--bank-dir", bank_dir, "Directory of *.txt banks for the m-sequence suite");

  // banks
  auto* banks = app.add_subcommand("banks", "Primitive polynomial banks");
  banks->require_subcommand(1);
  auto* banks_check = banks->add_subcommand("check", "Validate a bank file");
  std::string bank_path;
  banks_check->add_option("path", bank_path, "Bank file")->required();
  auto* banks_gen = banks->add_subcommand("generate", "Write all primitive polynomials of a degree");
  std::vector<unsigned> degrees;
  std::size_t max_per_degree = 0;
  std::string bank_out;
  banks_gen->add_option("--degree", degrees, "Degree(s)")->required()->check(CLI::Range(2u, 32u));
  banks_gen->add_option("--max", max_per_degree, "Keep at most this many per degree (0 = all)");
  banks_gen->add_option("--out", bank_out, "Output file (default stdout)");

  // probe: export a channel trace
  auto* probe = app.add_subcommand("probe", "Simulate one probing round and export a trace CSV");
  std::string probe_config, probe_out;
  std::size_t probe_trial = 0;
  probe->add_option("--config", probe_config, "Experiment config (JSON)");
  probe->add_option("--trial", probe_trial, "Trial index");
  probe->add_option("--out", probe_out, "Trace CSV path")->required();

  // extract: trace replay
  auto* extract = app.add_subcommand("extract", "Extract a shared key from a trace CSV");
  std::string extract_config, trace_path;
  extract->add_option("--config", extract_config, "Experiment config (JSON)");
  extract->add_option("--trace", trace_path, "Trace CSV")->required()->check(CLI::ExistingFile);

  // bch conformance vectors
  auto* bchv = app.add_subcommand("bch-vectors", "Emit BCH conformance vectors");
  unsigned bn = 15, bk = 7, bt = 2;
  std::size_t count = 8;
  std::uint64_t bseed = 1;
  bchv->add_option("--n", bn);
  bchv->add_option("--k", bk);
  bchv->add_option("--t", bt);
  bchv->add_option("--count", count);
  bchv->add_option("--seed", bseed);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) {
      const auto text = slurp(config_path);
      auto cfg = harness::ExperimentConfig::load(config_path);
      if (seed) cfg.seed = *seed;
      if (trials) cfg.trials = *trials;
      if (!jammer.empty()) cfg.jammer.strategy = adversary::parse_strategy(jammer);
      cfg.validate();
      for (const auto& p : harness::run_to_directory(cfg, text, out_dir)) std::cout << p.string() << "\n";
      return 0;
    }
    if (*verify) {
      for (const auto& f : bank_files) vopts.bank_files.emplace_back(f);
      if (!bank_dir.empty()) vopts.bank_dir = bank_dir;
      bool all = true;
      for (const auto& r : verify::run_suite(suite, vopts)) {
        std::cout << verify::format_result(r) << std::endl;
        all = all && r.passed;
      }
      return all ? 0 : 1;
    }
    if (*banks_check) {
      const auto bank = dsss::PrimitivePolyBank::load_file(bank_path);
      std::cout << bank_path << ": " << bank.size() << " primitive polynomials OK\n";
      return 0;
    }
    if (*banks_gen) {
      std::vector<dsss::PolyEntry> entries;
      for (auto d : degrees) {
        auto polys = dsss::primitive_polynomials(d);
        if (max_per_degree && polys.size() > max_per_degree) polys.resize(max_per_degree);
        entries.insert(entries.end(), polys.begin(), polys.end());
      }
      const dsss::PrimitivePolyBank bank(entries);
      if (bank_out.empty()) {
        bank.save(std::cout);
      } else {
        std::ofstream out(bank_out);
        if (!out) throw ResourceError("cannot write " + bank_out);
        bank.save(out);
      }
      return 0;
    }
    if (*probe) {
      const auto cfg = config_or_default(probe_config);
      const auto views = harness::probe_views(cfg, probe_trial);
      std::ofstream out(probe_out, std::ios::binary);
      if (!out) throw ResourceError("cannot write " + probe_out);
      const channel::ChannelObservation obs[] = {views.alice, views.bob, views.eve};
      channel::write_trace_csv(out, obs);
      return 0;
    }
    if (*extract) {
      const auto cfg = config_or_default(extract_config);
      std::ifstream in(trace_path, std::ios::binary);
      const auto obs = channel::read_trace_csv(in);
      const auto keys = harness::extract_from_trace(obs, cfg);
      std::cout << "status " << extractor::status_name(keys.status) << "\n"
                << "aligned_bits " << keys.aligned_bits << "\n"
                << "mismatches " << keys.mismatches << "\n"
                << "entropy_estimate " << keys.entropy_estimate << "\n"
                << "alice " << keys.alice_hex << "\n"
                << "bob " << keys.bob_hex << "\n"
                << "eve " << (keys.eve_hex ? *keys.eve_hex : std::string("-")) << "\n";
      return keys.status == extractor::AgreementStatus::ok ? 0 : 2;
    }
    if (*bchv) {
      const bch::BchCode code({bn, bk, bt});
      RngStream rng(bseed);
      bch::write_conformance(std::cout, bch::make_conformance(code, count, rng));
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
