#include <fstream>
#include <sstream>

#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "phydsss/analytics.hpp"
#include "phydsss/bch.hpp"
#include "phydsss/dsss.hpp"
#include "phydsss/errors.hpp"
#include "phydsss/extractor.hpp"
#include "phydsss/harness.hpp"
#include "phydsss/rsg.hpp"
#include "phydsss/verify.hpp"

namespace py = pybind11;
using namespace phydsss;

namespace {

BitString bits_arg(const std::string& s) { return BitString::from_string(s); }

py::dict row_dict(const harness::ResultRow& r) {
  py::dict d;
  d["k_t"] = r.k_t;
  d["L"] = r.L;
  d["trials"] = r.trials;
  d["successes"] = r.successes;
  d["P_s_simulated"] = r.P_s_simulated;
  d["wilson_ci_low"] = r.wilson_ci_low;
  d["wilson_ci_high"] = r.wilson_ci_high;
  d["P_s_closed_form"] = r.P_s_closed_form;
  d["P_s_approx"] = r.P_s_approx;
  d["T_s"] = r.T_s;
  d["T_s_approx"] = r.T_s_approx;
  d["agreement_rate"] = r.agreement_rate;
  d["mean_phi_power"] = r.mean_phi_power;
  return d;
}

analytics::SuccessQuery query(unsigned k_r, double L, double gamma_th, std::optional<double> phi) {
  analytics::SuccessQuery q;
  q.key_bits = k_r;
  q.bits_per_tx = k_r;
  q.L = L;
  q.gamma_th = gamma_th;
  q.phi = phi;
  return q;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Key-driven DSSS anti-jamming simulator core";
  m.attr("__version__") = PHYDSSS_VERSION;

  py::register_exception<ValidationError>(m, "ValidationError", PyExc_ValueError);
  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<DomainError>(m, "DomainError", PyExc_ValueError);
  py::register_exception<ConfigError>(m, "ConfigError", PyExc_RuntimeError);
  py::register_exception<ResourceError>(m, "ResourceError", PyExc_RuntimeError);

  // analytics
  m.def("gammas_from_budget",
        [](double P_a_dbm, double P_e_dbm, double d_ab, double d_eb, double alpha_pl, double sigma_b2_dbm) {
          const auto g = analytics::gammas_from_budget({P_a_dbm, P_e_dbm, d_ab, d_eb, alpha_pl, sigma_b2_dbm});
          return py::make_tuple(g.ab, g.eb);
        },
        py::arg("P_a_dbm"), py::arg("P_e_dbm"), py::arg("d_ab"), py::arg("d_eb"), py::arg("alpha_pl") = 3.0,
        py::arg("sigma_b2_dbm") = -90.0);
  m.def("reference_gammas", [] {
    const auto g = analytics::gammas_from_budget(analytics::LinkBudget::reference_geometry());
    return py::make_tuple(g.ab, g.eb);
  });
  m.def("sinr_broadband", &analytics::sinr_broadband, py::arg("gamma_ab"), py::arg("gamma_eb"), py::arg("g_ab"),
        py::arg("g_eb"), py::arg("L"));
  m.def("sinr_racs", &analytics::sinr_racs, py::arg("gamma_ab"), py::arg("gamma_eb"), py::arg("g_ab"),
        py::arg("g_eb"), py::arg("L"), py::arg("phi"), py::arg("S"));
  m.def("mai_phi", &analytics::mai_phi, py::arg("k_r"), py::arg("L"));
  m.def("p_s_closed_form",
        [](unsigned k_r, double L, double gamma_ab, double gamma_eb, double gamma_th, std::optional<double> phi) {
          return analytics::p_s_closed_form(query(k_r, L, gamma_th, phi), gamma_ab, gamma_eb);
        },
        py::arg("k_r"), py::arg("L"), py::arg("gamma_ab"), py::arg("gamma_eb"), py::arg("gamma_th") = 1.0,
        py::arg("phi") = py::none());
  m.def("p_s_approx",
        [](unsigned k_r, double L, double gamma_ab, double gamma_eb, double gamma_th) {
          return analytics::p_s_approx(query(k_r, L, gamma_th, std::nullopt), gamma_ab, gamma_eb);
        },
        py::arg("k_r"), py::arg("L"), py::arg("gamma_ab"), py::arg("gamma_eb"), py::arg("gamma_th") = 1.0);
  m.def("throughput", &analytics::throughput, py::arg("key_rate"), py::arg("k_t"), py::arg("p_s"));
  m.def("key_generation_time", &analytics::key_generation_time, py::arg("k_t"), py::arg("rate"));
  m.def("monte_carlo_ps", &verify::monte_carlo_ps, py::arg("k_r"), py::arg("L"), py::arg("gamma_ab"),
        py::arg("gamma_eb"), py::arg("gamma_th"), py::arg("phi"), py::arg("trials"), py::arg("seed"));

  // BCH
  py::class_<bch::BchCode>(m, "BchCode")
      .def(py::init([](unsigned n, unsigned k, unsigned t) { return bch::BchCode({n, k, t}); }), py::arg("n"),
           py::arg("k"), py::arg("t"))
      .def_property_readonly("n", [](const bch::BchCode& c) { return c.params().n; })
      .def_property_readonly("k", [](const bch::BchCode& c) { return c.params().k; })
      .def_property_readonly("t", [](const bch::BchCode& c) { return c.params().t; })
      .def("encode", [](const bch::BchCode& c, const std::string& msg) { return c.encode(bits_arg(msg)).to_string(); })
      .def("decode",
           [](const bch::BchCode& c, const std::string& word) -> py::object {
             const auto r = c.decode(bits_arg(word));
             if (!r.ok()) return py::none();
             return py::make_tuple(r.codeword->to_string(), r.corrections);
           })
      .def("is_codeword", [](const bch::BchCode& c, const std::string& w) { return c.is_codeword(bits_arg(w)); });

  // spreading codes
  m.def("primitive_polynomials", [](unsigned degree) {
    std::vector<std::pair<unsigned, std::uint64_t>> out;
    for (const auto& p : dsss::primitive_polynomials(degree)) out.emplace_back(p.degree, p.mask);
    return out;
  });
  m.def("is_primitive", [](unsigned degree, std::uint64_t mask) { return dsss::is_primitive({degree, mask}); });
  m.def("lfsr_code",
        [](unsigned degree, std::uint64_t mask, const std::string& seed, std::size_t chips) {
          const auto code = dsss::lfsr_generate({degree, mask}, bits_arg(seed), chips);
          return std::vector<int>(code.chips().begin(), code.chips().end());
        },
        py::arg("degree"), py::arg("mask"), py::arg("seed"), py::arg("chips"));
  m.def("check_bank", [](const std::string& path) { return dsss::PrimitivePolyBank::load_file(path).size(); });

  // seed generator
  py::class_<rsg::SeedGenerator>(m, "SeedGenerator")
      .def(py::init<std::size_t, double>(), py::arg("pool_count") = rsg::kDefaultPoolCount,
           py::arg("min_pool_entropy") = rsg::kDefaultMinPoolEntropy)
      .def("pool_feed",
           [](rsg::SeedGenerator& g, std::size_t source, const py::bytes& event, double bits) {
             const std::string s = event;
             return g.pool_feed(source, std::vector<std::uint8_t>(s.begin(), s.end()), bits);
           },
           py::arg("source_id"), py::arg("event"), py::arg("declared_bits"))
      .def("reseed_ready", &rsg::SeedGenerator::reseed_ready)
      .def("reseed", &rsg::SeedGenerator::reseed)
      .def("generate",
           [](rsg::SeedGenerator& g, std::size_t s_l) {
             const auto out = g.generate(s_l);
             return py::make_tuple(out.seed.to_string(), out.poly_select.to_hex());
           },
           py::arg("seed_bits"))
      .def_property_readonly("reseed_count", [](const rsg::SeedGenerator& g) { return g.state().reseed_count; })
      .def_property_readonly("pool_count", &rsg::SeedGenerator::pool_count);

  // key extraction
  m.def("extract_shared_key",
        [](const std::vector<std::complex<double>>& h_ab, const std::vector<std::complex<double>>& h_ba,
           std::size_t key_bits, unsigned n, unsigned k, unsigned t, double alpha, std::uint64_t seed) {
          extractor::QuantizerConfig cfg;
          cfg.alpha_tune = alpha;
          const bch::BchCode code({n, k, t});
          RngStream rng(seed);
          const auto r = extractor::extract_shared_key(h_ab, h_ba, cfg, code, key_bits, rng);
          py::dict d;
          d["status"] = std::string(extractor::status_name(r.status));
          d["alice"] = r.alice.bits.to_hex();
          d["bob"] = r.bob ? py::object(py::str(r.bob->bits.to_hex())) : py::object(py::none());
          d["entropy_estimate"] = r.alice.entropy_estimate;
          d["aligned_bits"] = r.leakage.aligned_bits;
          d["mismatches"] = r.mismatches;
          return d;
        },
        py::arg("h_ab"), py::arg("h_ba"), py::arg("key_bits") = 256, py::arg("n") = 255, py::arg("k") = 131,
        py::arg("t") = 18, py::arg("alpha") = 1.0, py::arg("seed") = 1);

  // harness
  m.def("run_campaign",
        [](const std::string& config_json, std::optional<std::size_t> trials, std::optional<std::uint64_t> seed) {
          auto cfg = harness::ExperimentConfig::parse(config_json);
          if (trials) cfg.trials = *trials;
          if (seed) cfg.seed = *seed;
          py::list rows;
          for (const auto& r : harness::run_campaign(cfg).rows) rows.append(row_dict(r));
          return rows;
        },
        py::arg("config_json"), py::arg("trials") = py::none(), py::arg("seed") = py::none());
  m.def("run_to_directory",
        [](const std::string& config_path, const std::string& out_dir, std::optional<std::uint64_t> seed) {
          auto cfg = harness::ExperimentConfig::load(config_path);
          if (seed) cfg.seed = *seed;
          std::ifstream in(config_path, std::ios::binary);
          std::stringstream ss;
          ss << in.rdbuf();
          std::vector<std::string> out;
          for (const auto& p : harness::run_to_directory(cfg, ss.str(), out_dir)) out.push_back(p.string());
          return out;
        },
        py::arg("config_path"), py::arg("out_dir"), py::arg("seed") = py::none());
  m.def("default_config", [] { return harness::ExperimentConfig{}.to_json(); });
  m.def("simulate_link",
        [](const std::string& strategy, std::size_t L, double gamma_ab, double gamma_eb, bool code_refresh,
           std::size_t symbols, unsigned bank_degree, std::uint64_t seed) {
          harness::LinkSimConfig c;
          c.strategy = adversary::parse_strategy(strategy);
          c.L = L;
          c.gamma_ab = gamma_ab;
          c.gamma_eb = gamma_eb;
          c.code_refresh = code_refresh;
          c.symbols = symbols;
          c.bank_degree = bank_degree;
          c.seed = seed;
          const auto r = harness::simulate_link(c);
          py::dict d;
          d["sinr_pre"] = r.sinr_pre;
          d["sinr_post"] = r.sinr_post;
          d["ber"] = r.ber();
          d["symbols"] = r.symbols;
          return d;
        },
        py::arg("strategy"), py::arg("L"), py::arg("gamma_ab") = 1.0, py::arg("gamma_eb") = 1.0,
        py::arg("code_refresh") = true, py::arg("symbols") = 10000, py::arg("bank_degree") = 0, py::arg("seed") = 1);

  // acceptance suites
  m.def("verify",
        [](const std::string& suite, double scale, std::uint64_t seed) {
          verify::VerifyOptions o;
          o.scale = scale;
          o.seed = seed;
          py::list out;
          for (const auto& r : verify::run_suite(suite, o)) {
            py::dict d;
            d["id"] = r.id;
            d["name"] = r.name;
            d["passed"] = r.passed;
            d["detail"] = r.detail;
            out.append(d);
          }
          return out;
        },
        py::arg("suite"), py::arg("scale") = 1.0, py::arg("seed") = 20261014);
}
