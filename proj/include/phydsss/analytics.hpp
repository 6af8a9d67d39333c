#pragma once

#include <optional>
#include <string_view>
#include <utility>

namespace phydsss::analytics {

struct LinkBudget {
  double P_a_dbm = 45.0;
  double P_e_dbm = 45.0;
  double d_ab = 20.0;
  double d_eb = 15.307337;
  double alpha_pl = 3.0;
  double sigma_b2_dbm = -90.0;

  void validate() const;
  /// Alice (0,0), Bob (0,20), attacker (10 sqrt2, 10 sqrt2); 45 dBm everywhere.
  static LinkBudget reference_geometry();
};

struct Point {
  double x = 0.0;
  double y = 0.0;
};
double distance(Point a, Point b);

double dbm_to_mw(double dbm);
double db_to_linear(double db);
double linear_to_db(double lin);

struct Gammas {
  double ab = 0.0;
  double eb = 0.0;
};
Gammas gammas_from_budget(const LinkBudget& b);

/// gamma_ab L g_ab / (gamma_eb g_eb + 1)
double sinr_broadband(double gamma_ab, double gamma_eb, double g_ab, double g_eb, double L);
/// gamma_ab g_ab / (gamma_eb g_eb phi / S + 1/L)
double sinr_racs(double gamma_ab, double gamma_eb, double g_ab, double g_eb, double L, double phi, double S);

struct SuccessQuery {
  unsigned key_bits = 1;       // effective key bits (k_r); the harness maps k_t here
  unsigned bits_per_tx = 1;    // k_t, used by throughput
  double gamma_th = 1.0;
  double L = 1.0;
  std::optional<double> phi;   // defaults to mai_phi

  void validate() const;
};

/// S = 2^k - 1
double code_space(unsigned key_bits);
/// 1 + (2^k - 2) / (3L)
double mai_phi(unsigned key_bits, double L);

double p_s_closed_form(const SuccessQuery& q, double gamma_ab, double gamma_eb);
double p_s_approx(const SuccessQuery& q, double gamma_ab, double gamma_eb);
/// exp(-gamma_th/(gamma_ab L)) / (gamma_th gamma_eb/(gamma_ab L) + 1): same
/// integral with the broadband SINR.
double p_s_broadband(double gamma_th, double L, double gamma_ab, double gamma_eb);

double throughput(double key_rate, unsigned k_t, double p_s);
double key_generation_time(unsigned k_t, double rate);

enum class Measurement { rss, cir, cfr };
double key_rate(Measurement m);
std::string_view measurement_name(Measurement m);
Measurement parse_measurement(std::string_view name);
inline constexpr Measurement kAllMeasurements[] = {Measurement::rss, Measurement::cir, Measurement::cfr};

}  // namespace phydsss::analytics
