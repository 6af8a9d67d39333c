#include "phydsss/verify.hpp"

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <fstream>
#include <sstream>

#include "phydsss/adversary.hpp"
#include "phydsss/analytics.hpp"
#include "phydsss/bch.hpp"
#include "phydsss/channel.hpp"
#include "phydsss/dsss.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/extractor.hpp"
#include "phydsss/harness.hpp"
#include "phydsss/rng.hpp"
#include "phydsss/rsg.hpp"
#include "phydsss/stats.hpp"

namespace phydsss::verify {

namespace {

std::size_t scaled(std::size_t n, const VerifyOptions& o) {
  return std::max<std::size_t>(1, static_cast<std::size_t>(std::llround(static_cast<double>(n) * o.scale)));
}

std::string fmt(double v, int prec = 6) {
  std::ostringstream ss;
  ss.precision(prec);
  ss << v;
  return ss.str();
}

CriterionResult make(int id, std::string name) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  return r;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t v) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p * p <= v; ++p) {
    if (v % p) continue;
    out.push_back(p);
    while (v % p == 0) v /= p;
  }
  if (v > 1) out.push_back(v);
  return out;
}

class PackedBits {
 public:
  explicit PackedBits(const std::vector<std::uint8_t>& bits) : size_(bits.size()), words_((bits.size() + 63) / 64 + 1) {
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i]) words_[i / 64] |= std::uint64_t{1} << (i % 64);
    }
  }
  /// 64 bits starting at `pos` (bits past the end read as 0).
  [[nodiscard]] std::uint64_t word_at(std::size_t pos) const {
    const std::size_t w = pos / 64, s = pos % 64;
    const std::uint64_t lo = words_[w] >> s;
    const std::uint64_t hi = (s && w + 1 < words_.size()) ? words_[w + 1] << (64 - s) : 0;
    return lo | hi;
  }
  /// Hamming distance between bits [a, a+len) and [b, b+len).
  [[nodiscard]] std::uint64_t distance(std::size_t a, std::size_t b, std::size_t len) const {
    std::uint64_t d = 0;
    std::size_t i = 0;
    for (; i + 64 <= len; i += 64) d += std::popcount(word_at(a + i) ^ word_at(b + i));
    if (i < len) {
      const std::uint64_t mask = (std::uint64_t{1} << (len - i)) - 1;
      d += std::popcount((word_at(a + i) ^ word_at(b + i)) & mask);
    }
    return d;
  }
  [[nodiscard]] std::uint64_t ones(std::size_t len) const {
    std::uint64_t c = 0;
    for (std::size_t i = 0; i < len; i += 64) {
      const std::uint64_t w = word_at(i);
      c += std::popcount(len - i >= 64 ? w : w & ((std::uint64_t{1} << (len - i)) - 1));
    }
    return c;
  }
  [[nodiscard]] std::size_t size() const noexcept { return size_; }

 private:
  std::size_t size_;
  std::vector<std::uint64_t> words_;
};

}  // namespace

// ------------------------------------------------------------------ oracles

double monte_carlo_ps(unsigned key_bits, double L, double gamma_ab, double gamma_eb, double gamma_th, double phi,
                      std::size_t trials, std::uint64_t seed) {
  RngStream rng(seed);
  const double S = analytics::code_space(key_bits);
  std::size_t ok = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double g_ab = rng.exponential();
    const double g_eb = rng.exponential();
    ok += analytics::sinr_racs(gamma_ab, gamma_eb, g_ab, g_eb, L, phi, S) > gamma_th;
  }
  return static_cast<double>(ok) / static_cast<double>(trials);
}

SequenceProperties measure_sequence(const std::vector<std::uint8_t>& bits, std::uint64_t P) {
  SequenceProperties out;
  if (P == 0 || bits.size() < 2 * P) return out;
  const PackedBits pb(bits);
  auto is_period = [&](std::uint64_t p) { return pb.distance(0, p, bits.size() - p) == 0; };
  if (!is_period(P)) return out;
  std::uint64_t period = P;
  bool reduced = true;
  while (reduced) {
    reduced = false;
    for (auto q : prime_factors(period)) {
      if (is_period(period / q)) {
        period /= q;
        reduced = true;
        break;
      }
    }
  }
  out.period = period;
  out.ones = pb.ones(P);
  bool two_valued = true;
  for (std::uint64_t tau = 1; tau < P && two_valued; ++tau) {
    // sum (1-2a)(1-2b) = P - 2 * distance
    const auto d = pb.distance(0, tau, P);
    two_valued = static_cast<long long>(P) - 2 * static_cast<long long>(d) == -1;
  }
  out.two_valued_autocorrelation = two_valued;
  return out;
}

// ---------------------------------------------------------------- criteria

CriterionResult theorem1_oracle(const VerifyOptions& opts) {
  auto r = make(1, "theorem1");
  const std::size_t trials = scaled(1000000, opts);
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t points = 0, inside = 0;
  double worst = 0.0;
  std::string worst_at;
  const std::pair<double, double> gammas[] = {{10.0, 10.0}, {10.0, 1.0}};
  for (unsigned k = 1; k <= 8; ++k) {
    for (double L : {64.0, 1024.0}) {
      for (auto [gab, geb] : gammas) {
        analytics::SuccessQuery q;
        q.key_bits = k;
        q.gamma_th = 1.0;
        q.L = L;
        const double phi = analytics::mai_phi(k, L);
        const double p = analytics::p_s_closed_form(q, gab, geb);
        const double mc = monte_carlo_ps(k, L, gab, geb, 1.0, phi, trials, derive_seed(opts.seed, points, "theorem1"));
        const double sigma = stats::binomial_sigma(p, trials);
        const double z = sigma > 0 ? std::abs(mc - p) / sigma : (mc == p ? 0.0 : INFINITY);
        if (z <= 3.0) ++inside;
        if (z > worst) {
          worst = z;
          worst_at = "k=" + std::to_string(k) + " L=" + fmt(L) + " gab=" + fmt(gab) + " geb=" + fmt(geb) +
                     " P=" + fmt(p) + " MC=" + fmt(mc);
        }
        ++points;
      }
    }
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.passed = inside == points && secs < 600.0;
  r.detail = std::to_string(inside) + "/" + std::to_string(points) + " points within 3 sigma at " +
             std::to_string(trials) + " trials; worst " + fmt(worst, 3) + " sigma (" + worst_at + "); " +
             fmt(secs, 3) + " s";
  return r;
}

CriterionResult saturation_shape(const VerifyOptions&) {
  auto r = make(2, "saturation");
  const auto g = analytics::gammas_from_budget(analytics::LinkBudget::reference_geometry());
  std::vector<double> ps;
  for (unsigned k = 1; k <= 16; ++k) {
    analytics::SuccessQuery q;
    q.key_bits = k;
    q.bits_per_tx = k;
    q.gamma_th = 1.0;
    q.L = 1024.0;
    ps.push_back(analytics::p_s_approx(q, g.ab, g.eb));
  }
  bool monotone = true;
  for (std::size_t i = 1; i < ps.size(); ++i) monotone = monotone && ps[i] >= ps[i - 1];
  const double ratio = ps[6] / ps[15];
  r.passed = monotone && ratio >= 0.99;
  r.detail = "P_s(7)/P_s(16) = " + fmt(ratio) + " (need >= 0.99), P_s(7) = " + fmt(ps[6]) + ", P_s(16) = " +
             fmt(ps[15]) + ", monotone " + (monotone ? "yes" : "no") + ", gamma_eb/gamma_ab = " + fmt(g.eb / g.ab);
  return r;
}

CriterionResult throughput_shape(const VerifyOptions&) {
  auto r = make(3, "throughput");
  const auto g = analytics::gammas_from_budget(analytics::LinkBudget::reference_geometry());
  const double Ls[] = {64.0, 256.0, 1024.0};
  auto ts = [&](double rate, unsigned k, double L) {
    analytics::SuccessQuery q;
    q.key_bits = k;
    q.bits_per_tx = k;
    q.gamma_th = 1.0;
    q.L = L;
    return analytics::throughput(rate, k, analytics::p_s_approx(q, g.ab, g.eb));
  };
  std::size_t checks = 0, bad = 0;
  std::string first_bad;
  auto expect = [&](bool ok, const std::string& what) {
    ++checks;
    if (!ok) {
      if (!bad) first_bad = what;
      ++bad;
    }
  };
  for (auto m : analytics::kAllMeasurements) {
    const double rate = analytics::key_rate(m);
    for (double L : Ls) {
      for (unsigned k = 2; k <= 16; ++k) {
        expect(ts(rate, k, L) < ts(rate, k - 1, L), "decreasing k_t=" + std::to_string(k) + " L=" + fmt(L));
      }
    }
    for (unsigned k = 1; k <= 16; ++k) {
      expect(ts(rate, k, 256.0) > ts(rate, k, 64.0) && ts(rate, k, 1024.0) > ts(rate, k, 256.0),
             "increasing in L at k_t=" + std::to_string(k));
    }
  }
  for (unsigned k = 1; k <= 16; ++k) {
    for (double L : Ls) {
      expect(ts(16.0, k, L) > ts(15.0, k, L) && ts(15.0, k, L) > ts(4.0, k, L),
             "rate ordering at k_t=" + std::to_string(k));
    }
  }
  r.passed = bad == 0;
  r.detail = std::to_string(checks - bad) + "/" + std::to_string(checks) + " shape checks hold" +
             (bad ? "; first failure: " + first_bad : "");
  return r;
}

CriterionResult key_agreement(const VerifyOptions& opts) {
  auto r = make(4, "agreement");
  harness::ExperimentConfig cfg;
  cfg.seed = opts.seed;
  const bch::BchCode code(cfg.bch);
  const std::size_t n = cfg.bch.n;

  // calibration pilot: expected per-block mismatches must sit at or below t
  const std::size_t pilot = scaled(500, opts);
  double mism = 0.0, blocks = 0.0;
  for (std::size_t i = 0; i < pilot; ++i) {
    const auto v = harness::probe_views(cfg, 1000000 + i);
    auto rng = derive_stream(cfg.seed, 1000000 + i, "sketch/0");
    const auto res = extractor::extract_shared_key(v.alice.values(), v.bob.values(), cfg.quantizer, code,
                                                   cfg.key_bits, rng);
    mism += static_cast<double>(res.mismatches);
    blocks += static_cast<double>((res.leakage.aligned_bits + n - 1) / n);
  }
  const double per_block = blocks > 0 ? mism / blocks : 0.0;

  const std::size_t trials = scaled(10000, opts);
  std::size_t ok = 0, unequal = 0, eve_success = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    const auto v = harness::probe_views(cfg, i);
    auto rng = derive_stream(cfg.seed, i, "sketch/0");
    const auto res = extractor::extract_shared_key(v.alice.values(), v.bob.values(), cfg.quantizer, code,
                                                   cfg.key_bits, rng);
    if (res.agreed() && res.bob) {
      if (res.bob->bits == res.alice.bits) {
        ++ok;
      } else {
        ++unequal;
      }
    }
    if (i < 200) {
      const auto e = extractor::eavesdrop(v.eve.values(), res.leakage, cfg.quantizer, code, cfg.key_bits);
      eve_success += e && e->bits == res.alice.bits;
    }
  }
  const double rate = static_cast<double>(ok) / static_cast<double>(trials);
  r.passed = per_block <= cfg.bch.t && rate >= 0.999 && unequal == 0;
  r.detail = "probe error variance " + fmt(cfg.probe.probe_error_variance) + ", mean mismatches/block " +
             fmt(per_block, 4) + " (t = " + std::to_string(cfg.bch.t) + "), agreement " + std::to_string(ok) + "/" +
             std::to_string(trials) + " = " + fmt(rate) + ", unequal-key successes " + std::to_string(unequal) +
             ", eve recoveries " + std::to_string(eve_success) + "/200";
  return r;
}

CriterionResult sketch_correctness(const VerifyOptions& opts) {
  auto r = make(5, "sketch");
  RngStream rng(derive_seed(opts.seed, 0, "sketch-suite"));
  std::size_t bad = 0;
  std::size_t low_patterns = 0, w3_patterns = 0;
  {
    const bch::BchCode code(bch::kTestParams);
    const std::size_t n = 15;
    for (int rep = 0; rep < 8; ++rep) {
      const auto a = rng.bits(n);
      const auto sk = extractor::sketch_generate(a, code, rng);
      for (std::uint32_t e = 0; e < (1u << n); ++e) {
        const int w = std::popcount(e);
        if (w > 3) continue;
        auto b = a;
        for (std::size_t i = 0; i < n; ++i) {
          if (e >> i & 1) b.flip(i);
        }
        const auto rec = extractor::sketch_recover(b, sk.msg, code);
        if (w <= 2) {
          ++low_patterns;
          bad += !rec.ok() || rec.bits != a;
        } else {
          ++w3_patterns;
          bad += rec.ok();
        }
      }
    }
  }
  const std::size_t trials = scaled(10000, opts);
  std::size_t big_ok = 0, big_rej = 0;
  {
    const bch::BchCode code(bch::kProductionParams);
    const std::size_t n = 255, t = 18;
    for (std::size_t i = 0; i < trials; ++i) {
      const auto a = rng.bits(n);
      const auto sk = extractor::sketch_generate(a, code, rng);
      const bool beyond = i % 2 == 1;
      const std::size_t w = beyond ? t + 1 : rng.below(t + 1);
      auto b = a;
      std::vector<std::size_t> pos(n);
      for (std::size_t j = 0; j < n; ++j) pos[j] = j;
      for (std::size_t j = 0; j < w; ++j) {
        std::swap(pos[j], pos[j + rng.below(n - j)]);
        b.flip(pos[j]);
      }
      const auto rec = extractor::sketch_recover(b, sk.msg, code);
      if (beyond) {
        big_rej += !rec.ok();
        bad += rec.ok();
      } else {
        big_ok += rec.ok() && rec.bits == a;
        bad += !rec.ok() || rec.bits != a;
      }
    }
  }
  r.passed = bad == 0;
  r.detail = "(15,7,2): " + std::to_string(low_patterns) + " weight<=2 and " + std::to_string(w3_patterns) +
             " weight-3 patterns; (255,131,18): " + std::to_string(big_ok) + " weight<=18 recovered, " +
             std::to_string(big_rej) + " weight-19 rejected; violations " + std::to_string(bad);
  return r;
}

CriterionResult msequence_suite(const VerifyOptions& opts) {
  auto r = make(6, "msequence");
  std::vector<dsss::PolyEntry> polys;
  std::vector<std::filesystem::path> files = opts.bank_files;
  if (files.empty() && !opts.bank_dir.empty()) {
    for (const auto& e : std::filesystem::directory_iterator(opts.bank_dir)) {
      if (e.path().extension() == ".txt") files.push_back(e.path());
    }
    std::sort(files.begin(), files.end());
  }
  std::string source;
  if (files.empty()) {
    for (unsigned d = 2; d <= 12; ++d) {
      for (const auto& p : dsss::primitive_polynomials(d)) polys.push_back(p);
    }
    source = "generated banks degree 2..12";
  } else {
    for (const auto& f : files) {
      try {
        const auto bank = dsss::PrimitivePolyBank::load_file(f);
        polys.insert(polys.end(), bank.entries().begin(), bank.entries().end());
      } catch (const std::exception& e) {
        r.detail = "bank " + f.string() + " rejected: " + e.what();
        return r;
      }
      source += (source.empty() ? "" : ", ") + f.filename().string();
    }
  }
  std::size_t checked = 0, bad = 0;
  std::string first_bad;
  for (const auto& p : polys) {
    if (p.degree > 16) continue;
    const std::uint64_t P = (std::uint64_t{1} << p.degree) - 1;
    BitString seed(p.degree);
    seed.set(p.degree - 1, 1);
    const auto bits = dsss::lfsr_bits(p, seed, 2 * P + 1);
    const auto props = measure_sequence(bits, P);
    const bool ok = props.period == P && props.ones == (P + 1) / 2 && props.two_valued_autocorrelation;
    ++checked;
    if (!ok) {
      if (!bad) {
        std::ostringstream ss;
        ss << "degree " << p.degree << " mask 0x" << std::hex << p.mask << std::dec << ": period " << props.period
           << ", ones " << props.ones;
        first_bad = ss.str();
      }
      ++bad;
    }
  }
  r.passed = checked > 0 && bad == 0;
  r.detail = std::to_string(checked - bad) + "/" + std::to_string(checked) +
             " polynomials with period 2^n-1, 2^(n-1) ones and off-peak autocorrelation -1/(2^n-1) [" + source + "]" +
             (bad ? "; first failure " + first_bad : "");
  return r;
}

CriterionResult fortuna_schedule(const VerifyOptions& opts) {
  auto r = make(7, "fortuna");
  std::size_t mismatched = 0;
  {
    rsg::SeedGenerator gen;
    std::vector<std::string> log;
    gen.set_transcript(&log);
    RngStream rng(derive_seed(opts.seed, 0, "fortuna"));
    for (std::uint64_t round = 1; round <= 1024; ++round) {
      for (std::size_t p = 0; p < gen.pool_count(); ++p) gen.pool_feed(p, rng.bytes(32), 128.0);
      const auto pools = gen.reseed();
      std::vector<std::size_t> expected;
      for (std::size_t i = 0; i < gen.pool_count(); ++i) {
        if (round % (std::uint64_t{1} << i) == 0) expected.push_back(i);
      }
      mismatched += pools != expected || gen.state().reseed_count != round;
    }
  }
  // one pool carries real entropy while the attacker controls every other event
  std::string stats_detail;
  bool stats_ok = true;
  const std::size_t nbits = scaled(100000, opts);
  for (std::size_t honest : {std::size_t{0}, rsg::kDefaultPoolCount - 1}) {
    rsg::SeedGenerator gen;
    RngStream rng(derive_seed(opts.seed, honest, "fortuna-honest"));
    const std::vector<std::uint8_t> known(32, 0x5a);
    const std::size_t rounds = std::size_t{1} << honest;
    for (std::size_t round = 0; round < rounds; ++round) {
      for (std::size_t p = 0; p < gen.pool_count(); ++p) {
        if (p == honest) {
          gen.pool_feed(p, rng.bytes(32), 128.0);
        } else {
          gen.pool_feed(p, known, 128.0);
        }
      }
      gen.reseed();
    }
    BitString out;
    while (out.size() < nbits) out.append(gen.generate(std::min<std::size_t>(4096, nbits - out.size())).seed);
    const double mono = stats::monobit_p_value(out);
    const double runs = stats::runs_p_value(out);
    stats_ok = stats_ok && mono >= 0.01 && runs >= 0.01;
    stats_detail += " pool " + std::to_string(honest) + ": monobit p=" + fmt(mono, 4) + " runs p=" + fmt(runs, 4) + ";";
  }
  r.passed = mismatched == 0 && stats_ok;
  r.detail = std::to_string(1024 - mismatched) + "/1024 reseeds used exactly {i : 2^i | r};" + stats_detail + " " +
             std::to_string(nbits) + " bits";
  return r;
}

CriterionResult processing_gain(const VerifyOptions& opts) {
  auto r = make(8, "gain");
  bool ok = true;
  for (std::size_t L : {63, 255, 1023}) {
    harness::LinkSimConfig cfg;
    cfg.strategy = adversary::JammerStrategy::broadband;
    cfg.L = L;
    cfg.gamma_ab = 1.0;
    cfg.gamma_eb = 10.0;
    cfg.symbols = scaled(100000, opts);
    cfg.seed = derive_seed(opts.seed, L, "gain");
    const auto m = harness::simulate_link(cfg);
    const double gain = m.sinr_post / m.sinr_pre;
    const double rel = gain / static_cast<double>(L);
    ok = ok && std::abs(rel - 1.0) <= 0.10;
    r.detail += "L=" + std::to_string(L) + " gain " + fmt(gain, 5) + " (" + fmt(rel, 4) + " L); ";
  }
  r.passed = ok;
  r.detail += "tolerance 10%";
  return r;
}

CriterionResult replay_neutralization(const VerifyOptions& opts) {
  auto r = make(9, "replay");
  harness::LinkSimConfig base;
  base.L = 64;
  base.bank_degree = 10;
  base.gamma_ab = 1.0;
  base.gamma_eb = 15.0;
  base.symbols = scaled(100000, opts);
  base.seed = derive_seed(opts.seed, 0, "replay");

  auto bb_cfg = base;
  bb_cfg.strategy = adversary::JammerStrategy::broadband;
  const auto bb = harness::simulate_link(bb_cfg);
  auto rp_cfg = base;
  rp_cfg.strategy = adversary::JammerStrategy::replay;
  const auto rp = harness::simulate_link(rp_cfg);
  auto fixed_cfg = rp_cfg;
  fixed_cfg.code_refresh = false;
  const auto fixed = harness::simulate_link(fixed_cfg);

  const double n = static_cast<double>(base.symbols);
  const double p1 = bb.ber(), p2 = rp.ber();
  const double sigma = std::sqrt(p1 * (1 - p1) / n + p2 * (1 - p2) / n);
  const bool close = std::abs(p1 - p2) <= 2.0 * sigma;
  const bool worse = fixed.ber() > p1;
  r.passed = close && worse;
  r.detail = "BER broadband " + fmt(p1, 5) + ", replay+refresh " + fmt(p2, 5) + " (|diff| " + fmt(std::abs(p1 - p2), 3) +
             " vs 2 sigma " + fmt(2 * sigma, 3) + "), replay fixed code " + fmt(fixed.ber(), 5) + "; L=64, " +
             std::to_string(base.symbols) + " symbols";
  return r;
}

CriterionResult determinism(const VerifyOptions& opts) {
  auto r = make(10, "determinism");
  auto root = opts.scratch_dir.empty() ? std::filesystem::temp_directory_path() / "phydsss-determinism"
                                       : opts.scratch_dir;
  std::filesystem::remove_all(root);
  std::size_t files = 0, differing = 0;
  for (auto strategy : {adversary::JammerStrategy::racs, adversary::JammerStrategy::broadband,
                        adversary::JammerStrategy::replay}) {
    harness::ExperimentConfig cfg;
    cfg.scenario = "determinism";
    cfg.jammer.strategy = strategy;
    cfg.L_sweep = {64};
    cfg.kt_sweep = {1, 2, 3, 4};
    cfg.trials = scaled(50, opts);
    cfg.frame_symbols = 20;
    cfg.seed = opts.seed;
    cfg.write_trials = true;
    const auto text = cfg.to_json();
    const std::string name(adversary::strategy_name(strategy));
    const auto a = harness::run_to_directory(cfg, text, root / (name + "-a"));
    const auto b = harness::run_to_directory(cfg, text, root / (name + "-b"));
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto slurp = [](const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return ss.str();
      };
      ++files;
      differing += slurp(a[i]) != slurp(b[i]);
    }
  }
  std::filesystem::remove_all(root);
  r.passed = differing == 0 && files > 0;
  r.detail = std::to_string(files - differing) + "/" + std::to_string(files) +
             " output files byte-identical across repeated runs (racs, broadband, replay)";
  return r;
}

// ------------------------------------------------------------------ suites

std::vector<std::string> suite_names() {
  return {"theorem1", "saturation", "throughput", "agreement", "sketch",      "msequence",
          "fortuna",  "gain",       "replay",     "determinism", "all"};
}

std::vector<CriterionResult> run_suite(std::string_view name, const VerifyOptions& opts) {
  using Fn = CriterionResult (*)(const VerifyOptions&);
  static const std::pair<std::string_view, Fn> table[] = {
      {"theorem1", theorem1_oracle},   {"saturation", saturation_shape},
      {"throughput", throughput_shape}, {"agreement", key_agreement},
      {"sketch", sketch_correctness},   {"msequence", msequence_suite},
      {"fortuna", fortuna_schedule},    {"gain", processing_gain},
      {"replay", replay_neutralization}, {"determinism", determinism},
  };
  std::vector<CriterionResult> out;
  for (const auto& [n, fn] : table) {
    if (name == "all" || name == n) out.push_back(fn(opts));
  }
  if (out.empty()) throw ValidationError("unknown verify suite '" + std::string(name) + "'");
  return out;
}

std::string format_result(const CriterionResult& r) {
  return std::string(r.passed ? "[PASS] " : "[FAIL] ") + std::to_string(r.id) + " " + r.name + ": " + r.detail;
}

}  // namespace phydsss::verify
