#include "phydsss/analytics.hpp"

#include <cmath>
#include <string>

#include "phydsss/errors.hpp"

namespace phydsss::analytics {

void LinkBudget::validate() const {
  if (!(d_ab > 0.0) || !(d_eb > 0.0)) throw ValidationError("link budget: distances must be > 0");
  if (!(alpha_pl >= 2.0)) throw ValidationError("link budget: alpha_pl must be >= 2");
  if (!std::isfinite(P_a_dbm) || !std::isfinite(P_e_dbm) || !std::isfinite(sigma_b2_dbm)) {
    throw ValidationError("link budget: powers must be finite");
  }
}

double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

LinkBudget LinkBudget::reference_geometry() {
  const Point alice{0.0, 0.0};
  const Point bob{0.0, 20.0};
  const Point eve{10.0 * std::sqrt(2.0), 10.0 * std::sqrt(2.0)};
  LinkBudget b;
  b.d_ab = distance(alice, bob);
  b.d_eb = distance(eve, bob);
  return b;
}

double dbm_to_mw(double dbm) { return std::pow(10.0, dbm / 10.0); }
double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
double linear_to_db(double lin) { return 10.0 * std::log10(lin); }

Gammas gammas_from_budget(const LinkBudget& b) {
  b.validate();
  const double noise = dbm_to_mw(b.sigma_b2_dbm);
  return {dbm_to_mw(b.P_a_dbm) * std::pow(b.d_ab, -b.alpha_pl) / noise,
          dbm_to_mw(b.P_e_dbm) * std::pow(b.d_eb, -b.alpha_pl) / noise};
}

double sinr_broadband(double gamma_ab, double gamma_eb, double g_ab, double g_eb, double L) {
  return gamma_ab * L * g_ab / (gamma_eb * g_eb + 1.0);
}

double sinr_racs(double gamma_ab, double gamma_eb, double g_ab, double g_eb, double L, double phi, double S) {
  return gamma_ab * g_ab / (gamma_eb * g_eb * phi / S + 1.0 / L);
}

void SuccessQuery::validate() const {
  if (key_bits < 1 || key_bits > 62) throw ValidationError("success query: key bits must be in [1, 62]");
  if (!(L >= 1.0)) throw ValidationError("success query: L must be >= 1");
  if (!(gamma_th >= 0.0)) throw ValidationError("success query: gamma_th must be >= 0");
  if (phi && !(*phi >= 0.0)) throw ValidationError("success query: phi must be >= 0");
}

double code_space(unsigned key_bits) { return std::ldexp(1.0, static_cast<int>(key_bits)) - 1.0; }

double mai_phi(unsigned key_bits, double L) {
  return 1.0 + (std::ldexp(1.0, static_cast<int>(key_bits)) - 2.0) / (3.0 * L);
}

double p_s_closed_form(const SuccessQuery& q, double gamma_ab, double gamma_eb) {
  q.validate();
  if (!(gamma_ab > 0.0)) throw DomainError("p_s: gamma_ab must be > 0");
  const double S = code_space(q.key_bits);
  const double phi = q.phi.value_or(mai_phi(q.key_bits, q.L));
  return std::exp(-q.gamma_th / (gamma_ab * q.L)) / (q.gamma_th * gamma_eb * phi / (S * gamma_ab) + 1.0);
}

double p_s_approx(const SuccessQuery& q, double gamma_ab, double gamma_eb) {
  q.validate();
  if (!(gamma_ab > 0.0)) throw DomainError("p_s: gamma_ab must be > 0");
  const double S = code_space(q.key_bits);
  const double phi = mai_phi(q.key_bits, q.L);
  return S * gamma_ab * std::exp(-q.gamma_th / (gamma_ab * q.L)) / (q.gamma_th * gamma_eb * phi + S * gamma_ab);
}

double p_s_broadband(double gamma_th, double L, double gamma_ab, double gamma_eb) {
  if (!(gamma_ab > 0.0)) throw DomainError("p_s: gamma_ab must be > 0");
  if (!(L >= 1.0)) throw ValidationError("p_s: L must be >= 1");
  return std::exp(-gamma_th / (gamma_ab * L)) / (gamma_th * gamma_eb / (gamma_ab * L) + 1.0);
}

double throughput(double key_rate, unsigned k_t, double p_s) {
  if (k_t == 0) throw DomainError("throughput: k_t must be >= 1");
  return key_rate * p_s / static_cast<double>(k_t);
}

double key_generation_time(unsigned k_t, double rate) {
  if (!(rate > 0.0)) throw DomainError("key generation time: rate must be > 0");
  return static_cast<double>(k_t) / rate;
}

double key_rate(Measurement m) {
  switch (m) {
    case Measurement::rss: return 4.0;
    case Measurement::cir: return 15.0;
    case Measurement::cfr: return 16.0;
  }
  return 16.0;
}

std::string_view measurement_name(Measurement m) {
  switch (m) {
    case Measurement::rss: return "RSS";
    case Measurement::cir: return "CIR";
    case Measurement::cfr: return "CFR";
  }
  return "CFR";
}

Measurement parse_measurement(std::string_view name) {
  if (name == "RSS" || name == "rss") return Measurement::rss;
  if (name == "CIR" || name == "cir") return Measurement::cir;
  if (name == "CFR" || name == "cfr") return Measurement::cfr;
  throw ValidationError("unknown measurement type '" + std::string(name) + "'");
}

}  // namespace phydsss::analytics
