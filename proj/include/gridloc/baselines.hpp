#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "gridloc/models.hpp"

namespace gridloc {

/// Constant-velocity state [px, py, vx, vy] with covariance.
struct KinematicState {
  Eigen::Vector4d state = Eigen::Vector4d::Zero();
  Eigen::Matrix4d covariance = Eigen::Matrix4d::Zero();

  Vec2 position() const { return state.head<2>(); }
  Vec2 velocity() const { return state.tail<2>(); }
};

/// Least-squares position fix from >= 3 ranges (anchor-difference
/// linearization). Exact on noiseless non-collinear instances.
Vec2 trilaterate(const MeasurementFrame& frame,
                 const std::vector<Anchor>& anchors);

struct TrilaterationTrack {
  std::vector<Vec2> positions;
  std::vector<bool> interpolated;  // true where < 3 ranges forced interpolation
};

/// Per-frame trilateration; frames with fewer than 3 ranges are filled by
/// linear interpolation between the surrounding fixes (held at the ends).
TrilaterationTrack trilaterate_track(const std::vector<MeasurementFrame>& frames,
                                     const std::vector<Anchor>& anchors);

struct EkfTrack {
  std::vector<KinematicState> filtered;
  std::vector<KinematicState> predicted;  // prior moments, same indexing
  Eigen::Matrix4d transition = Eigen::Matrix4d::Identity();
};

/// EKF over the constant-velocity model with first-order range
/// linearization. Process noise is a white-acceleration kernel whose
/// density defaults to 3 sigma_x^2 / T_s, i.e. a one-step position process
/// std of sigma_x * T_s. Frames with no ranges run predict only. Uses the
/// best-3 subset rule (chosen at the predicted position) when more than 3
/// anchors are connected.
EkfTrack ekf_track(const std::vector<MeasurementFrame>& frames,
                   const std::vector<Anchor>& anchors,
                   const KinematicState& init, const HmmParams& params,
                   double accel_noise_density = -1.0);

/// Backward Rauch-Tung-Striebel pass over a filtered track.
std::vector<KinematicState> rts_smooth(const EkfTrack& track);

struct PfTrack {
  std::vector<Vec2> positions;  // weighted-mean estimate per frame
  int degeneracy_resets = 0;    // times the weights underflowed to zero
};

/// Bootstrap particle filter: constant-velocity proposal perturbed with
/// sigma_x * T_s Gaussian noise, weights from the shared observation
/// likelihood, systematic resampling every step. Deterministic per seed.
PfTrack pf_track(const std::vector<MeasurementFrame>& frames,
                 const std::vector<Anchor>& anchors, const Vec2& origin,
                 double width, double height, int particle_count,
                 const HmmParams& params, std::uint64_t seed);

}  // namespace gridloc
