#include "gridloc/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace gridloc {

namespace {

Eigen::Matrix4d cv_transition(double dt) {
  Eigen::Matrix4d f = Eigen::Matrix4d::Identity();
  f(0, 2) = dt;
  f(1, 3) = dt;
  return f;
}

Eigen::Matrix4d cv_process_noise(double dt, double density) {
  const double q3 = density * dt * dt * dt / 3.0;
  const double q2 = density * dt * dt / 2.0;
  const double q1 = density * dt;
  Eigen::Matrix4d q = Eigen::Matrix4d::Zero();
  q(0, 0) = q(1, 1) = q3;
  q(2, 2) = q(3, 3) = q1;
  q(0, 2) = q(2, 0) = q2;
  q(1, 3) = q(3, 1) = q2;
  return q;
}

void condition(Eigen::Matrix4d& covariance) {
  covariance = 0.5 * (covariance + covariance.transpose()).eval();
  for (int i = 0; i < 4; ++i) {
    covariance(i, i) = std::max(covariance(i, i), 1e-12);
  }
}

// Ranges used in a measurement update: all when <= 3, else the best-3
// subset evaluated at the given position.
std::vector<std::pair<const Anchor*, double>> update_ranges(
    const MeasurementFrame& frame, const std::vector<Anchor>& anchors,
    const Vec2& position, const HmmParams& params) {
  auto resolved = resolve_ranges(frame, anchors);
  if (resolved.size() <= 3) return resolved;
  const auto pick = best_anchor_subset_point(position, frame, anchors, params);

  std::vector<std::pair<const Anchor*, double>> selected;
  for (const auto& entry : resolved) {
    if (std::find(pick.begin(), pick.end(), entry.first->id) != pick.end()) {
      selected.push_back(entry);
    }
  }
  return selected;
}

}  // namespace

Vec2 trilaterate(const MeasurementFrame& frame,
                 const std::vector<Anchor>& anchors) {
  const auto resolved = resolve_ranges(frame, anchors);
  if (resolved.size() < 3) {
    throw NotEnoughAnchorsError("trilateration needs at least 3 ranges");
  }

  const auto& [ref, ref_range] = resolved.front();
  const int rows = static_cast<int>(resolved.size()) - 1;
  Eigen::MatrixXd a(rows, 2);
  Eigen::VectorXd b(rows);
  for (int j = 0; j < rows; ++j) {
    const auto& [anchor, range] = resolved[j + 1];
    a.row(j) = 2.0 * (anchor->position - ref->position).transpose();
    b(j) = anchor->position.squaredNorm() - ref->position.squaredNorm() -
           range * range + ref_range * ref_range;
  }

  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(
      a, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const auto& sv = svd.singularValues();
  if (sv(0) <= 0.0 || sv(1) <= 1e-9 * sv(0)) {
    throw DegenerateGeometryError("anchors are collinear");
  }
  return svd.solve(b);
}

TrilaterationTrack trilaterate_track(const std::vector<MeasurementFrame>& frames,
                                     const std::vector<Anchor>& anchors) {
  const int n = static_cast<int>(frames.size());
  TrilaterationTrack track;
  track.positions.assign(n, Vec2::Zero());
  track.interpolated.assign(n, true);
  for (int t = 0; t < n; ++t) {
    if (frames[t].connected_count() >= 3) {
      track.positions[t] = trilaterate(frames[t], anchors);
      track.interpolated[t] = false;
    }
  }

  int prev_fix = -1;
  for (int t = 0; t < n; ++t) {
    if (track.interpolated[t]) continue;
    if (prev_fix < 0) {
      for (int s = 0; s < t; ++s) track.positions[s] = track.positions[t];
    } else {
      for (int s = prev_fix + 1; s < t; ++s) {
        const double alpha = static_cast<double>(s - prev_fix) / (t - prev_fix);
        track.positions[s] =
            track.positions[prev_fix] +
            alpha * (track.positions[t] - track.positions[prev_fix]);
      }
    }
    prev_fix = t;
  }
  if (prev_fix < 0) {
    throw NotEnoughAnchorsError("no frame with >= 3 ranges to anchor the track");
  }
  for (int s = prev_fix + 1; s < n; ++s) {
    track.positions[s] = track.positions[prev_fix];
  }
  return track;
}

EkfTrack ekf_track(const std::vector<MeasurementFrame>& frames,
                   const std::vector<Anchor>& anchors,
                   const KinematicState& init, const HmmParams& params,
                   double accel_noise_density) {
  const double dt = params.sample_interval;
  const double density = accel_noise_density >= 0.0
                             ? accel_noise_density
                             : 3.0 * params.sigma_x * params.sigma_x / dt;
  const Eigen::Matrix4d f = cv_transition(dt);
  const Eigen::Matrix4d q = cv_process_noise(dt, density);
  const double r = params.sigma_o * params.sigma_o;

  EkfTrack track;
  track.transition = f;
  track.filtered.reserve(frames.size());
  track.predicted.reserve(frames.size());

  KinematicState state = init;
  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (t > 0) {
      state.state = f * state.state;
      state.covariance = f * state.covariance * f.transpose() + q;
      condition(state.covariance);
    }
    track.predicted.push_back(state);

    if (!frames[t].empty()) {
      const auto used =
          update_ranges(frames[t], anchors, state.position(), params);
      const int m = static_cast<int>(used.size());
      Eigen::MatrixXd h = Eigen::MatrixXd::Zero(m, 4);
      Eigen::VectorXd innovation(m);
      for (int j = 0; j < m; ++j) {
        const auto& [anchor, range] = used[j];
        const Vec2 delta = state.position() - anchor->position;
        const double predicted_range = std::max(delta.norm(), 1e-9);
        h.block<1, 2>(j, 0) = delta.transpose() / predicted_range;
        innovation(j) = range - predicted_range;
      }
      const Eigen::MatrixXd s =
          h * state.covariance * h.transpose() +
          r * Eigen::MatrixXd::Identity(m, m);
      const Eigen::MatrixXd gain =
          state.covariance * h.transpose() * s.ldlt().solve(
              Eigen::MatrixXd::Identity(m, m));
      state.state += gain * innovation;
      state.covariance =
          (Eigen::Matrix4d::Identity() - gain * h) * state.covariance;
      condition(state.covariance);
    }
    track.filtered.push_back(state);
  }
  return track;
}

std::vector<KinematicState> rts_smooth(const EkfTrack& track) {
  const int n = static_cast<int>(track.filtered.size());
  std::vector<KinematicState> smoothed = track.filtered;
  for (int t = n - 2; t >= 0; --t) {
    const KinematicState& filtered = track.filtered[t];
    const KinematicState& prior = track.predicted[t + 1];
    const Eigen::Matrix4d gain =
        filtered.covariance * track.transition.transpose() *
        prior.covariance.ldlt().solve(Eigen::Matrix4d::Identity());
    smoothed[t].state =
        filtered.state + gain * (smoothed[t + 1].state - prior.state);
    smoothed[t].covariance =
        filtered.covariance +
        gain * (smoothed[t + 1].covariance - prior.covariance) *
            gain.transpose();
    condition(smoothed[t].covariance);
  }
  return smoothed;
}

PfTrack pf_track(const std::vector<MeasurementFrame>& frames,
                 const std::vector<Anchor>& anchors, const Vec2& origin,
                 double width, double height, int particle_count,
                 const HmmParams& params, std::uint64_t seed) {
  if (particle_count < 1) throw ValidationError("need at least one particle");
  if (frames.empty()) throw EmptyFrameError("no frames to filter");
  const int n = particle_count;
  const double dt = params.sample_interval;
  const double jitter = params.sigma_x * dt;

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  std::normal_distribution<double> gauss(0.0, 1.0);

  std::vector<Eigen::Vector4d> particles(n);
  for (auto& p : particles) {
    p << origin.x() + uniform(rng) * width, origin.y() + uniform(rng) * height,
        (2.0 * uniform(rng) - 1.0) * params.speed,
        (2.0 * uniform(rng) - 1.0) * params.speed;
  }
  std::vector<double> weights(n, 1.0 / n);
  std::vector<double> loglik(n);
  std::vector<Eigen::Vector4d> resampled(n);

  PfTrack track;
  track.positions.reserve(frames.size());

  for (std::size_t t = 0; t < frames.size(); ++t) {
    if (t > 0) {
      for (auto& p : particles) {
        p(0) += p(2) * dt + jitter * gauss(rng);
        p(1) += p(3) * dt + jitter * gauss(rng);
        p(2) += jitter * gauss(rng);
        p(3) += jitter * gauss(rng);
      }
    }

    if (!frames[t].empty()) {
      double max_ll = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) {
        loglik[i] = observation_logprob_point(particles[i].head<2>(), frames[t],
                                              anchors, params);
        max_ll = std::max(max_ll, loglik[i]);
      }
      double sum = 0.0;
      for (int i = 0; i < n; ++i) {
        weights[i] *= std::exp(loglik[i] - max_ll);
        sum += weights[i];
      }
      if (sum <= 0.0 || !std::isfinite(sum)) {
        ++track.degeneracy_resets;
        std::fill(weights.begin(), weights.end(), 1.0 / n);
      } else {
        for (double& w : weights) w /= sum;
      }
    }

    Vec2 mean = Vec2::Zero();
    for (int i = 0; i < n; ++i) mean += weights[i] * particles[i].head<2>();
    track.positions.push_back(mean);

    // Systematic resampling; weights reset uniform.
    const double start = uniform(rng) / n;
    double cumulative = weights[0];
    int source = 0;
    for (int i = 0; i < n; ++i) {
      const double target = start + static_cast<double>(i) / n;
      while (cumulative < target && source < n - 1) {
        ++source;
        cumulative += weights[source];
      }
      resampled[i] = particles[source];
    }
    particles.swap(resampled);
    std::fill(weights.begin(), weights.end(), 1.0 / n);
  }
  return track;
}

}  // namespace gridloc
