// SPDX-License-Identifier: Apache-2.0

#include "pinch/channel.hpp"

#include <cmath>
#include <numeric>

namespace pinch {

double distance(const Point3& a, const Point3& b) {
  const double dx = a.x - b.x;
  const double dy = a.y - b.y;
  const double dz = a.z - b.z;
  return std::sqrt(dx * dx + dy * dy + dz * dz);
}

ActivationMask::ActivationMask(int num_waveguides, int num_antennas)
    : num_waveguides_(num_waveguides),
      num_antennas_(num_antennas),
      bits_(static_cast<std::size_t>(num_waveguides) * num_antennas, 0),
      counts_(num_waveguides, 0) {}

ActivationMask ActivationMask::all_active(int num_waveguides, int num_antennas) {
  ActivationMask mask(num_waveguides, num_antennas);
  for (int k = 0; k < num_waveguides; ++k) {
    for (int m = 0; m < num_antennas; ++m) mask.set(k, m, true);
  }
  return mask;
}

void ActivationMask::set(int k, int m, bool on) {
  auto& bit = bits_[index(k, m)];
  if ((bit != 0) == on) return;
  bit = on ? 1 : 0;
  counts_[k] += on ? 1 : -1;
}

void ActivationMask::clear_waveguide(int k) {
  for (int m = 0; m < num_antennas_; ++m) bits_[index(k, m)] = 0;
  counts_[k] = 0;
}

int ActivationMask::total_active() const {
  return std::accumulate(counts_.begin(), counts_.end(), 0);
}

std::complex<double> antenna_term(const Drop& drop, const DerivedConstants& consts,
                                  double antenna_x, double waveguide_y, const Point2& user) {
  const double dist =
      distance({user.x, user.y, 0.0}, {antenna_x, waveguide_y, drop.height});
  const double guided = std::abs(antenna_x - drop.feed_x);
  // Phase in cycles, reduced before the trig call: distances are ~1e3
  // wavelengths at mmWave.
  double cycles = dist / consts.wavelength + guided / consts.guided_wavelength;
  cycles -= std::floor(cycles);
  return std::polar(consts.eta / dist, -2.0 * kPi * cycles);
}

AntennaTerms::AntennaTerms(const Drop& drop, const DerivedConstants& consts)
    : num_waveguides_(drop.num_waveguides()),
      num_antennas_(drop.num_antennas()),
      num_users_(drop.num_users()),
      terms_(static_cast<std::size_t>(num_waveguides_) * num_antennas_ * num_users_) {
  std::size_t i = 0;
  for (int k = 0; k < num_waveguides_; ++k) {
    for (int m = 0; m < num_antennas_; ++m) {
      for (int n = 0; n < num_users_; ++n) {
        terms_[i++] =
            antenna_term(drop, consts, drop.antenna_x[m], drop.waveguide_y[k], drop.users[n]);
      }
    }
  }
}

void update_channel_row(const AntennaTerms& terms, const ActivationMask& mask, int k,
                        ChannelMatrix& channel) {
  for (int n = 0; n < terms.num_users(); ++n) {
    std::complex<double> h{0.0, 0.0};
    for (int m = 0; m < terms.num_antennas(); ++m) {
      if (mask.active(k, m)) h += terms(k, m, n);
    }
    channel.h(k, n) = h;
    channel.gain2(k, n) = std::norm(h);
  }
}

ChannelMatrix effective_channel(const AntennaTerms& terms, const ActivationMask& mask) {
  ChannelMatrix out;
  out.h = Eigen::MatrixXcd::Zero(terms.num_waveguides(), terms.num_users());
  out.gain2 = Eigen::MatrixXd::Zero(terms.num_waveguides(), terms.num_users());
  for (int k = 0; k < terms.num_waveguides(); ++k) update_channel_row(terms, mask, k, out);
  return out;
}

ChannelMatrix effective_channel(const Drop& drop, const DerivedConstants& consts,
                                const ActivationMask& mask) {
  return effective_channel(AntennaTerms(drop, consts), mask);
}

}  // namespace pinch
