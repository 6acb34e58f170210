#pragma once

#include "manilift/common.hpp"
#include "manilift/rng.hpp"
#include "manilift/skeleton.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace manilift {

/// Draw one angle from a von Mises distribution via the Best-Fisher
/// wrapped-Cauchy rejection scheme; result wrapped to (-pi, pi].
double sample_von_mises(double mode, double kappa, CounterRng& rng);

double von_mises_log_density(double theta, double mode, double kappa);

enum class Scenario { A, B, C, Torus };

Scenario scenario_from_name(const std::string& name);
std::string scenario_name(Scenario scenario);

/// Frozen description of one synthetic lifting task: a von Mises mixture
/// over the manifold chart angles plus the manifold radii. The circle
/// scenarios use theta only; the torus scenario draws (theta, phi) pairs
/// with one concentration per component.
struct ScenarioSpec {
  Scenario id;
  std::string name;
  bool torus = false;
  std::vector<double> theta_modes;
  std::vector<double> phi_modes;  // empty for circle scenarios
  std::vector<double> kappas;
  std::vector<double> weights;
  double s0 = 1.0;  // circle / major radius
  double s1 = 0.0;  // torus minor radius

  int joint_count() const { return torus ? 3 : 2; }
  int input_dim() const { return torus ? 4 : 1; }
  int target_dim() const { return torus ? 6 : 2; }
  int ambient_dim() const { return torus ? 3 : 2; }
  int drop_axis() const { return 1; }  // both tasks project out y
  Eigen::VectorXd segment_vector() const;
  Skeleton skeleton() const { return Skeleton::chain(joint_count()); }

  /// Mixture density of theta marginalized over components (circle tasks).
  double density(double theta) const;
  /// Joint mixture density over (theta, phi) for the torus task.
  double density(double theta, double phi) const;

  std::uint64_t checksum() const;
};

/// The frozen scenario table; throws if the pinned checksum no longer
/// matches the constructed spec.
const ScenarioSpec& scenario_spec(Scenario scenario);

struct SplitSizes {
  int train = 1000;
  int val = 1000;
  int test = 1000;
};

SplitSizes default_sizes(Scenario scenario);

/// Flat input/target rows for one split; inputs are the projected non-root
/// keypoints, targets the non-root joint coordinates.
struct DataSplit {
  Eigen::MatrixXd inputs;
  Eigen::MatrixXd targets;
};

struct LiftingDataset {
  Scenario scenario;
  std::uint64_t seed = 0;
  DataSplit train;
  DataSplit val;
  DataSplit test;
};

/// The chart angles drawn for one sample.
struct SampleAngles {
  double theta;
  double phi;  // unused for circle scenarios
};

SampleAngles sample_angles(const ScenarioSpec& spec, CounterRng& rng);

/// Deterministic dataset generation; sample i of split s uses the derived
/// stream (s, i), so results are byte-stable for a fixed seed.
LiftingDataset generate(Scenario scenario, const SplitSizes& sizes, std::uint64_t seed);

/// Turn flat target rows into full poses (root row prepended at the origin).
PoseSeq<double> rows_to_poses(const Eigen::MatrixXd& rows, const ScenarioSpec& spec);
Eigen::VectorXd pose_to_row(const PoseMatrix<double>& pose);

struct PreimageMode {
  Eigen::VectorXd position;  // target-space row
  double weight;
  double theta;
  double phi;  // NaN for circle scenarios
};

struct ConditionalExpectation {
  Eigen::VectorXd expected;  // target-space row, E[p | input]
  std::vector<PreimageMode> modes;
  bool grazing = false;  // a preimage sat on a fold of the projection
};

/// Exact conditional expectation of the target given an on-manifold input:
/// enumerate the projection preimages, weight each by mixture density times
/// the inverse projection Jacobian, and normalize. Near a fold (the
/// Jacobian vanishes) the density is integrated over a small angular window
/// of `resolution` points instead.
ConditionalExpectation conditional_expectation_oracle(const ScenarioSpec& spec,
                                                      const Eigen::VectorXd& input,
                                                      int resolution = 2048);

struct MonteCarloEstimate {
  Eigen::VectorXd expected;
  long accepted = 0;
};

/// Independent estimate of the same conditional expectation by rejection:
/// draw samples from the scenario, keep those whose projection falls within
/// `bin_halfwidth` of the input in every coordinate, and average the kept
/// targets.
MonteCarloEstimate conditional_expectation_monte_carlo(const ScenarioSpec& spec,
                                                       const Eigen::VectorXd& input,
                                                       long num_samples, double bin_halfwidth,
                                                       std::uint64_t seed);

}  // namespace manilift
