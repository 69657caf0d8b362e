// SPDX-License-Identifier: Apache-2.0
//
// Effective complex channels h_{k,n} between each waveguide and each user,
// summed over the activated pinching antennas of that waveguide. Each term
// carries free-space spherical-wave path loss and phase plus the in-waveguide
// phase from the feed point.

#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "pinch/scenario.hpp"

namespace pinch {

struct Point3 {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;
};

double distance(const Point3& a, const Point3& b);

// K x M binary activation indicators with cached per-waveguide counts M_k.
class ActivationMask {
 public:
  ActivationMask() = default;
  ActivationMask(int num_waveguides, int num_antennas);

  static ActivationMask all_active(int num_waveguides, int num_antennas);

  int num_waveguides() const { return num_waveguides_; }
  int num_antennas() const { return num_antennas_; }

  bool active(int k, int m) const { return bits_[index(k, m)] != 0; }
  void set(int k, int m, bool on);
  void clear_waveguide(int k);
  int active_count(int k) const { return counts_[k]; }
  int total_active() const;

  bool operator==(const ActivationMask&) const = default;

 private:
  std::size_t index(int k, int m) const {
    return static_cast<std::size_t>(k) * num_antennas_ + m;
  }

  int num_waveguides_ = 0;
  int num_antennas_ = 0;
  std::vector<std::uint8_t> bits_;
  std::vector<int> counts_;
};

// h is K x N; gain2 holds |h|^2 entry-wise. Rows of idle waveguides are zero.
struct ChannelMatrix {
  Eigen::MatrixXcd h;
  Eigen::MatrixXd gain2;
};

// Contribution of one antenna at (antenna_x, waveguide_y, height) to the
// channel of a user at (x, y, 0).
std::complex<double> antenna_term(const Drop& drop, const DerivedConstants& consts,
                                  double antenna_x, double waveguide_y, const Point2& user);

// Every antenna_term of a drop, precomputed once. Activation changes then only
// re-sum cached terms.
class AntennaTerms {
 public:
  AntennaTerms(const Drop& drop, const DerivedConstants& consts);

  int num_waveguides() const { return num_waveguides_; }
  int num_antennas() const { return num_antennas_; }
  int num_users() const { return num_users_; }

  std::complex<double> operator()(int k, int m, int n) const {
    return terms_[(static_cast<std::size_t>(k) * num_antennas_ + m) * num_users_ + n];
  }

 private:
  int num_waveguides_;
  int num_antennas_;
  int num_users_;
  std::vector<std::complex<double>> terms_;
};

ChannelMatrix effective_channel(const Drop& drop, const DerivedConstants& consts,
                                const ActivationMask& mask);
ChannelMatrix effective_channel(const AntennaTerms& terms, const ActivationMask& mask);

// Recomputes row k only, in place.
void update_channel_row(const AntennaTerms& terms, const ActivationMask& mask, int k,
                        ChannelMatrix& channel);

}  // namespace pinch
