#include "phydsss/channel.hpp"

#include <charconv>
#include <cmath>
#include <istream>
#include <map>
#include <numbers>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>

#include "phydsss/errors.hpp"

namespace phydsss::channel {

TapProfile TapProfile::uniform(std::size_t taps, double sampling_period) {
  if (taps == 0) throw ValidationError("TapProfile: num_taps must be >= 1");
  return TapProfile{taps, std::vector<double>(taps, 1.0 / static_cast<double>(taps)),
                    sampling_period};
}

void TapProfile::validate() const {
  if (num_taps == 0) throw ValidationError("TapProfile: num_taps must be >= 1");
  if (tap_powers.size() != num_taps) {
    throw ValidationError("TapProfile: tap_powers length must equal num_taps");
  }
  double total = 0.0;
  for (double p : tap_powers) {
    if (!(p >= 0.0) || !std::isfinite(p)) throw ValidationError("TapProfile: tap powers must be >= 0");
    total += p;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("TapProfile: tap powers must sum to 1");
  if (!(sampling_period > 0.0)) throw ValidationError("TapProfile: sampling period must be > 0");
}

std::string_view role_name(ObservationRole role) {
  switch (role) {
    case ObservationRole::alice: return "alice";
    case ObservationRole::bob: return "bob";
    case ObservationRole::eve: return "eve";
  }
  return "alice";
}

ObservationRole parse_role(std::string_view name) {
  if (name == "alice") return ObservationRole::alice;
  if (name == "bob") return ObservationRole::bob;
  if (name == "eve") return ObservationRole::eve;
  throw ValidationError("unknown observation role '" + std::string(name) + "'");
}

ChannelObservation::ChannelObservation(std::size_t slots, std::size_t subcarriers,
                                       ObservationRole role)
    : slots_(slots), subcarriers_(subcarriers), role_(role), values_(slots * subcarriers) {
  if (slots == 0 || subcarriers == 0) {
    throw ValidationError("ChannelObservation: need at least one slot and one subcarrier");
  }
}

Complex& ChannelObservation::at(std::size_t slot, std::size_t subcarrier) {
  if (slot >= slots_ || subcarrier >= subcarriers_) throw std::out_of_range("ChannelObservation::at");
  return values_[slot * subcarriers_ + subcarrier];
}

const Complex& ChannelObservation::at(std::size_t slot, std::size_t subcarrier) const {
  if (slot >= slots_ || subcarrier >= subcarriers_) throw std::out_of_range("ChannelObservation::at");
  return values_[slot * subcarriers_ + subcarrier];
}

std::span<const Complex> ChannelObservation::row(std::size_t slot) const {
  if (slot >= slots_) throw std::out_of_range("ChannelObservation::row");
  return std::span<const Complex>(values_).subspan(slot * subcarriers_, subcarriers_);
}

std::span<Complex> ChannelObservation::row(std::size_t slot) {
  if (slot >= slots_) throw std::out_of_range("ChannelObservation::row");
  return std::span<Complex>(values_).subspan(slot * subcarriers_, subcarriers_);
}

std::vector<double> ChannelObservation::magnitudes() const {
  std::vector<double> out(values_.size());
  for (std::size_t i = 0; i < values_.size(); ++i) out[i] = std::abs(values_[i]);
  return out;
}

FrequencyResponse sample_channel(const TapProfile& profile, std::size_t subcarriers, RngStream& rng) {
  profile.validate();
  if (subcarriers < profile.num_taps) {
    throw ValidationError("sample_channel: subcarrier count must be >= num_taps");
  }
  std::vector<Complex> taps(profile.num_taps);
  for (std::size_t l = 0; l < profile.num_taps; ++l) taps[l] = rng.complex_normal(profile.tap_powers[l]);

  FrequencyResponse out(subcarriers);
  const double m = static_cast<double>(subcarriers);
  for (std::size_t k = 0; k < subcarriers; ++k) {
    Complex acc{0.0, 0.0};
    for (std::size_t l = 0; l < profile.num_taps; ++l) {
      const double angle = -2.0 * std::numbers::pi * static_cast<double>((k * l) % subcarriers) / m;
      acc += taps[l] * std::polar(1.0, angle);
    }
    out[k] = acc;
  }
  return out;
}

ChannelObservation sample_observation(const TapProfile& profile, std::size_t slots,
                                      std::size_t subcarriers, RngStream& rng) {
  ChannelObservation obs(slots, subcarriers, ObservationRole::alice);
  for (std::size_t n = 0; n < slots; ++n) {
    const auto h = sample_channel(profile, subcarriers, rng);
    std::copy(h.begin(), h.end(), obs.row(n).begin());
  }
  return obs;
}

ProbeViews probe_pair(const ChannelObservation& true_channel, double probe_error_variance,
                      double eve_offset_variance, RngStream& rng) {
  if (!(probe_error_variance >= 0.0) || !(eve_offset_variance >= 0.0)) {
    throw ValidationError("probe_pair: variances must be >= 0");
  }
  ProbeViews views{true_channel, true_channel, true_channel};
  views.alice.set_role(ObservationRole::alice);
  views.bob.set_role(ObservationRole::bob);
  views.eve.set_role(ObservationRole::eve);
  for (std::size_t n = 0; n < true_channel.slots(); ++n) {
    for (std::size_t k = 0; k < true_channel.subcarriers(); ++k) {
      const Complex d_b = rng.complex_normal(probe_error_variance);
      const Complex d_e = rng.complex_normal(eve_offset_variance);
      views.bob.at(n, k) += d_b;
      views.eve.at(n, k) += d_e;
    }
  }
  return views;
}

double coherence_time(double doppler_hz) {
  if (!(doppler_hz > 0.0)) throw DomainError("coherence_time: Doppler frequency must be > 0");
  return 9.0 / (16.0 * std::numbers::pi * doppler_hz);
}

bool schedule_valid(const ProbingSchedule& s) {
  if (s.probe_slot_1 < 0.0 || s.probe_slot_2 < 0.0 || s.switch_time < 0.0) {
    throw ValidationError("schedule_valid: durations must be >= 0");
  }
  return s.probe_slot_1 + s.probe_slot_2 + s.switch_time <= coherence_time(s.doppler_hz);
}

namespace {

std::string format_double(double v) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

double parse_double(std::string_view s, std::size_t line) {
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("trace line " + std::to_string(line) + ": bad number '" + std::string(s) + "'");
  }
  return v;
}

std::size_t parse_index(std::string_view s, std::size_t line) {
  std::size_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size()) {
    throw ValidationError("trace line " + std::to_string(line) + ": bad index '" + std::string(s) + "'");
  }
  return v;
}

}  // namespace

void write_trace_csv(std::ostream& out, std::span<const ChannelObservation> observations) {
  out << "slot,subcarrier,re,im,role\n";
  for (const auto& obs : observations) {
    for (std::size_t n = 0; n < obs.slots(); ++n) {
      for (std::size_t k = 0; k < obs.subcarriers(); ++k) {
        const auto& v = obs.at(n, k);
        out << n << ',' << k << ',' << format_double(v.real()) << ',' << format_double(v.imag())
            << ',' << role_name(obs.role()) << '\n';
      }
    }
  }
}

std::vector<ChannelObservation> read_trace_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ValidationError("trace: empty input");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "slot,subcarrier,re,im,role") throw ValidationError("trace: unexpected header '" + line + "'");

  struct Entry {
    std::size_t slot, sub;
    Complex value;
  };
  std::map<ObservationRole, std::vector<Entry>> by_role;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 5) {
      throw ValidationError("trace line " + std::to_string(line_no) + ": expected 5 fields");
    }
    by_role[parse_role(fields[4])].push_back(
        {parse_index(fields[0], line_no), parse_index(fields[1], line_no),
         {parse_double(fields[2], line_no), parse_double(fields[3], line_no)}});
  }

  std::vector<ChannelObservation> out;
  for (auto& [role, entries] : by_role) {
    std::size_t slots = 0, subs = 0;
    for (const auto& e : entries) {
      slots = std::max(slots, e.slot + 1);
      subs = std::max(subs, e.sub + 1);
    }
    if (entries.size() != slots * subs) {
      throw ValidationError("trace: role '" + std::string(role_name(role)) + "' is not a full slot x subcarrier grid");
    }
    ChannelObservation obs(slots, subs, role);
    std::vector<bool> seen(slots * subs, false);
    for (const auto& e : entries) {
      if (seen[e.slot * subs + e.sub]) {
        throw ValidationError("trace: duplicate entry for role '" + std::string(role_name(role)) + "'");
      }
      seen[e.slot * subs + e.sub] = true;
      obs.at(e.slot, e.sub) = e.value;
    }
    out.push_back(std::move(obs));
  }
  return out;
}

}  // namespace phydsss::channel
