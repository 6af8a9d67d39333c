#pragma once

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "phydsss/rng.hpp"

namespace phydsss::channel {

using Complex = std::complex<double>;
using FrequencyResponse = std::vector<Complex>;

/// Power-delay profile of a tapped-delay-line channel.
struct TapProfile {
  std::size_t num_taps = 1;
  std::vector<double> tap_powers{1.0};
  double sampling_period = 50e-9;

  /// Equal power on every tap.
  static TapProfile uniform(std::size_t taps, double sampling_period = 50e-9);
  void validate() const;
};

enum class ObservationRole { alice, bob, eve };

std::string_view role_name(ObservationRole role);
ObservationRole parse_role(std::string_view name);

/// Complex channel estimates over N probing slots x M subcarriers, row-major.
class ChannelObservation {
 public:
  ChannelObservation(std::size_t slots, std::size_t subcarriers, ObservationRole role);

  [[nodiscard]] std::size_t slots() const noexcept { return slots_; }
  [[nodiscard]] std::size_t subcarriers() const noexcept { return subcarriers_; }
  [[nodiscard]] ObservationRole role() const noexcept { return role_; }
  void set_role(ObservationRole role) noexcept { role_ = role; }

  Complex& at(std::size_t slot, std::size_t subcarrier);
  [[nodiscard]] const Complex& at(std::size_t slot, std::size_t subcarrier) const;
  [[nodiscard]] std::span<const Complex> row(std::size_t slot) const;
  [[nodiscard]] std::span<Complex> row(std::size_t slot);
  [[nodiscard]] std::span<const Complex> values() const noexcept { return values_; }
  /// |H| of every entry, row-major.
  [[nodiscard]] std::vector<double> magnitudes() const;

 private:
  std::size_t slots_;
  std::size_t subcarriers_;
  ObservationRole role_;
  std::vector<Complex> values_;
};

/// Draws tap gains h[l] ~ CN(0, tap_powers[l]) and returns the M-point DFT
/// H[k] = sum_l h[l] exp(-j 2 pi k l / M).
FrequencyResponse sample_channel(const TapProfile& profile, std::size_t subcarriers, RngStream& rng);

/// Independent channel draw per slot (probing at the coherence-time rate).
ChannelObservation sample_observation(const TapProfile& profile, std::size_t slots,
                                      std::size_t subcarriers, RngStream& rng);

struct ProbeViews {
  ChannelObservation alice;  // H_ab
  ChannelObservation bob;    // H_ba = H_ab + D_b
  ChannelObservation eve;    // H_ea = H_ab + D_e
};

ProbeViews probe_pair(const ChannelObservation& true_channel, double probe_error_variance,
                      double eve_offset_variance, RngStream& rng);

struct ProbingSchedule {
  double probe_slot_1 = 0.0;  // T_P1, seconds
  double probe_slot_2 = 0.0;  // T_P2, seconds
  double switch_time = 0.0;   // T_s, seconds
  double doppler_hz = 10.0;   // f_d
};

/// T_c = 9 / (16 pi f_d).
double coherence_time(double doppler_hz);
/// T_P1 + T_P2 + T_s <= T_c.
bool schedule_valid(const ProbingSchedule& schedule);

/// CSV trace: header `slot,subcarrier,re,im,role`, one row per entry.
void write_trace_csv(std::ostream& out, std::span<const ChannelObservation> observations);
std::vector<ChannelObservation> read_trace_csv(std::istream& in);

}  // namespace phydsss::channel
