#include "manilift/synthdata.hpp"

#include "manilift/rotations.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>

namespace manilift {

namespace {

constexpr double kPi = EIGEN_PI;
constexpr double kFoldEpsilon = 1e-9;  // |sin| below this counts as a projection fold

double log_bessel_i0(double kappa) {
  // Exact up to ~500, then the large-argument asymptotic.
  if (kappa < 500.0) return std::log(std::cyl_bessel_i(0.0, kappa));
  return kappa - 0.5 * std::log(2.0 * kPi * kappa) + std::log1p(1.0 / (8.0 * kappa));
}

std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t hash = 1469598103934665603ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ULL;
  }
  return hash;
}

void append_number(std::string& out, double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g|", value);
  out += buf;
}

}  // namespace

double sample_von_mises(double mode, double kappa, CounterRng& rng) {
  if (!(kappa > 0)) throw std::invalid_argument("sample_von_mises: kappa must be positive");
  // Best & Fisher (1979): rejection from a wrapped Cauchy envelope.
  const double tau = 1.0 + std::sqrt(1.0 + 4.0 * kappa * kappa);
  const double rho = (tau - std::sqrt(2.0 * tau)) / (2.0 * kappa);
  const double r = (1.0 + rho * rho) / (2.0 * rho);
  double f = 0.0;
  for (;;) {
    const double z = std::cos(kPi * rng.next_double());
    f = (1.0 + r * z) / (r + z);
    const double c = kappa * (r - f);
    const double u2 = rng.next_double();
    if (c * (2.0 - c) - u2 > 0.0) break;
    if (std::log(c / u2) + 1.0 - c >= 0.0) break;
  }
  const double sign = rng.next_double() > 0.5 ? 1.0 : -1.0;
  return wrap_angle(mode + sign * std::acos(f));
}

double von_mises_log_density(double theta, double mode, double kappa) {
  return kappa * std::cos(theta - mode) - std::log(2.0 * kPi) - log_bessel_i0(kappa);
}

Scenario scenario_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "a") return Scenario::A;
  if (lower == "b") return Scenario::B;
  if (lower == "c") return Scenario::C;
  if (lower == "torus") return Scenario::Torus;
  throw std::invalid_argument("unknown scenario '" + name + "' (expected A, B, C or torus)");
}

std::string scenario_name(Scenario scenario) {
  switch (scenario) {
    case Scenario::A: return "A";
    case Scenario::B: return "B";
    case Scenario::C: return "C";
    case Scenario::Torus: return "torus";
  }
  throw std::invalid_argument("scenario_name: bad enum value");
}

Eigen::VectorXd ScenarioSpec::segment_vector() const {
  Eigen::VectorXd segments(joint_count() - 1);
  segments[0] = s0;
  if (torus) segments[1] = s1;
  return segments;
}

double ScenarioSpec::density(double theta) const {
  if (torus) throw std::invalid_argument("ScenarioSpec::density(theta): torus needs (theta, phi)");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    total += weights[i] * std::exp(von_mises_log_density(theta, theta_modes[i], kappas[i]));
  return total;
}

double ScenarioSpec::density(double theta, double phi) const {
  if (!torus) throw std::invalid_argument("ScenarioSpec::density(theta, phi): circle task has no phi");
  double total = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i)
    total += weights[i] * std::exp(von_mises_log_density(theta, theta_modes[i], kappas[i]) +
                                   von_mises_log_density(phi, phi_modes[i], kappas[i]));
  return total;
}

std::uint64_t ScenarioSpec::checksum() const {
  std::string canon = name + "|";
  canon += torus ? "torus|" : "circle|";
  for (double v : theta_modes) append_number(canon, v);
  for (double v : phi_modes) append_number(canon, v);
  for (double v : kappas) append_number(canon, v);
  for (double v : weights) append_number(canon, v);
  append_number(canon, s0);
  append_number(canon, s1);
  return fnv1a(canon);
}

namespace {

struct PinnedScenario {
  ScenarioSpec spec;
  std::uint64_t expected_checksum;
};

const std::array<PinnedScenario, 4>& scenario_table() {
  static const std::array<PinnedScenario, 4> table = [] {
    std::array<PinnedScenario, 4> entries{};
    entries[0] = {{Scenario::A, "A", false, {2.0 * kPi / 5.0}, {}, {20.0}, {1.0}, 1.0, 0.0},
                  0x31566ab7b6c098d4ULL};
    entries[1] = {{Scenario::B, "B", false, {0.0}, {}, {20.0}, {1.0}, 1.0, 0.0},
                  0x5a4f885c2528d58bULL};
    entries[2] = {{Scenario::C, "C", false, {kPi / 3.0, -kPi / 3.0}, {}, {20.0, 20.0},
                   {2.0 / 3.0, 1.0 / 3.0}, 1.0, 0.0},
                  0x66b5e9574368dbf6ULL};
    entries[3] = {{Scenario::Torus, "torus", true,
                   {-kPi, 0.0, 0.5, 2.0 * kPi / 3.0},
                   {0.0, kPi / 4.0, -kPi / 4.0, kPi / 2.0},
                   {2.0, 4.0, 3.0, 10.0},
                   {0.3, 0.4, 0.2, 0.1}, 2.0, 1.0},
                  0x538918a51a4b2a8cULL};
    return entries;
  }();
  return table;
}

}  // namespace

const ScenarioSpec& scenario_spec(Scenario scenario) {
  for (const auto& entry : scenario_table()) {
    if (entry.spec.id != scenario) continue;
    if (entry.spec.checksum() != entry.expected_checksum)
      throw std::logic_error("scenario_spec: frozen spec for '" + entry.spec.name +
                             "' no longer matches its pinned checksum");
    return entry.spec;
  }
  throw std::invalid_argument("scenario_spec: bad enum value");
}

SplitSizes default_sizes(Scenario scenario) {
  return scenario == Scenario::Torus ? SplitSizes{20000, 2000, 2000} : SplitSizes{1000, 1000, 1000};
}

SampleAngles sample_angles(const ScenarioSpec& spec, CounterRng& rng) {
  const double pick = rng.next_double();
  std::size_t component = 0;
  double cumulative = 0.0;
  for (; component + 1 < spec.weights.size(); ++component) {
    cumulative += spec.weights[component];
    if (pick < cumulative) break;
  }
  SampleAngles angles{};
  angles.theta = sample_von_mises(spec.theta_modes[component], spec.kappas[component], rng);
  angles.phi = spec.torus
                   ? sample_von_mises(spec.phi_modes[component], spec.kappas[component], rng)
                   : 0.0;
  return angles;
}

namespace {

void fill_sample(const ScenarioSpec& spec, const SampleAngles& angles,
                 Eigen::RowVectorXd& input, Eigen::RowVectorXd& target) {
  if (!spec.torus) {
    const Vector2<double> point = angle_to_point(angles.theta, spec.s0);
    target << point.x(), point.y();
    input << point.x();
    return;
  }
  const Vector3<double> joint1 = circle_point(angles.theta, spec.s0);
  const Vector3<double> joint2 = torus_point(angles.theta, angles.phi, spec.s0, spec.s1);
  target << joint1.x(), joint1.y(), joint1.z(), joint2.x(), joint2.y(), joint2.z();
  input << joint1.x(), joint1.z(), joint2.x(), joint2.z();
}

DataSplit generate_split(const ScenarioSpec& spec, int count, const CounterRng& base,
                         std::uint64_t split_tag) {
  DataSplit split;
  split.inputs.resize(count, spec.input_dim());
  split.targets.resize(count, spec.target_dim());
  Eigen::RowVectorXd input(spec.input_dim());
  Eigen::RowVectorXd target(spec.target_dim());
  for (int i = 0; i < count; ++i) {
    CounterRng rng = base.derived((split_tag << 32) | static_cast<std::uint64_t>(i));
    const SampleAngles angles = sample_angles(spec, rng);
    fill_sample(spec, angles, input, target);
    split.inputs.row(i) = input;
    split.targets.row(i) = target;
  }
  return split;
}

}  // namespace

LiftingDataset generate(Scenario scenario, const SplitSizes& sizes, std::uint64_t seed) {
  if (sizes.train <= 0 || sizes.val <= 0 || sizes.test <= 0)
    throw std::invalid_argument("generate: split sizes must be positive");
  const ScenarioSpec& spec = scenario_spec(scenario);
  const CounterRng base(seed);
  LiftingDataset dataset;
  dataset.scenario = scenario;
  dataset.seed = seed;
  dataset.train = generate_split(spec, sizes.train, base, 0);
  dataset.val = generate_split(spec, sizes.val, base, 1);
  dataset.test = generate_split(spec, sizes.test, base, 2);
  return dataset;
}

PoseSeq<double> rows_to_poses(const Eigen::MatrixXd& rows, const ScenarioSpec& spec) {
  if (rows.cols() != spec.target_dim())
    throw DimensionMismatch("rows_to_poses: row width does not match scenario target dim");
  const int dims = spec.ambient_dim();
  PoseSeq<double> poses(rows.rows());
  for (Eigen::Index i = 0; i < rows.rows(); ++i) {
    PoseMatrix<double> pose = PoseMatrix<double>::Zero(spec.joint_count(), dims);
    for (int j = 1; j < spec.joint_count(); ++j)
      pose.row(j) = rows.row(i).segment((j - 1) * dims, dims);
    poses[i] = std::move(pose);
  }
  return poses;
}

Eigen::VectorXd pose_to_row(const PoseMatrix<double>& pose) {
  const Eigen::Index dims = pose.cols();
  Eigen::VectorXd row((pose.rows() - 1) * dims);
  for (Eigen::Index j = 1; j < pose.rows(); ++j)
    row.segment((j - 1) * dims, dims) = pose.row(j).transpose();
  return row;
}

namespace {

/// Density integrated over a small window around `center` (fold handling).
double window_mass(const ScenarioSpec& spec, bool over_phi, double fixed_theta, double center,
                   double halfwidth, int resolution) {
  double mass = 0.0;
  const double step = 2.0 * halfwidth / resolution;
  for (int i = 0; i < resolution; ++i) {
    const double angle = wrap_angle(center - halfwidth + (i + 0.5) * step);
    mass += over_phi ? spec.density(fixed_theta, angle) : spec.density(angle);
  }
  return mass * step;
}

ConditionalExpectation circle_oracle(const ScenarioSpec& spec, double x, int resolution) {
  if (std::abs(x) > spec.s0 * (1.0 + 1e-9))
    throw std::domain_error("conditional_expectation_oracle: |x| exceeds the circle radius");
  const double cosine = std::clamp(x / spec.s0, -1.0, 1.0);
  const double theta = std::acos(cosine);
  const double sine = std::sqrt(std::max(0.0, 1.0 - cosine * cosine));

  ConditionalExpectation result;
  const std::array<double, 2> preimages = {theta, -theta};
  std::array<double, 2> mass{};
  if (sine >= kFoldEpsilon) {
    // Both preimages share |dx/dtheta| = s0 |sin theta|, so the inverse
    // Jacobian factors cancel after normalization.
    for (int i = 0; i < 2; ++i) mass[i] = spec.density(preimages[i]) / (spec.s0 * sine);
  } else {
    result.grazing = true;
    const double halfwidth = kPi / resolution;
    for (int i = 0; i < 2; ++i)
      mass[i] = window_mass(spec, false, 0.0, preimages[i], halfwidth, resolution);
  }
  const double total = mass[0] + mass[1];
  result.expected = Eigen::VectorXd::Zero(2);
  for (int i = 0; i < 2; ++i) {
    PreimageMode mode;
    mode.theta = preimages[i];
    mode.phi = std::numeric_limits<double>::quiet_NaN();
    mode.weight = mass[i] / total;
    mode.position = angle_to_point(preimages[i], spec.s0);
    result.expected += mode.weight * mode.position;
    result.modes.push_back(std::move(mode));
  }
  return result;
}

ConditionalExpectation torus_oracle(const ScenarioSpec& spec, const Eigen::VectorXd& input,
                                    int resolution) {
  const double x1 = input[0], z1 = input[1], x2 = input[2], z2 = input[3];
  const double radius1 = std::hypot(x1, z1);
  if (std::abs(radius1 - spec.s0) > 1e-6)
    throw std::domain_error("conditional_expectation_oracle: first keypoint is off the circle");
  const double theta = std::atan2(z1, x1);
  const double ct = std::cos(theta), st = std::sin(theta);
  // The offset J2 - J1 projects onto the radial direction of the circle; its
  // transverse projected component must vanish for an on-manifold input.
  const double radial = ((x2 - x1) * ct + (z2 - z1) * st) / spec.s1;
  const double transverse = (-(x2 - x1) * st + (z2 - z1) * ct) / spec.s1;
  if (std::abs(transverse) > 1e-6 || std::abs(radial) > 1.0 + 1e-6)
    throw std::domain_error("conditional_expectation_oracle: second keypoint is off the torus");

  const double cosine = std::clamp(radial, -1.0, 1.0);
  const double phi = std::acos(cosine);
  const double sine = std::sqrt(std::max(0.0, 1.0 - cosine * cosine));

  ConditionalExpectation result;
  const std::array<double, 2> preimages = {phi, -phi};
  std::array<double, 2> mass{};
  if (sine >= kFoldEpsilon) {
    for (int i = 0; i < 2; ++i) mass[i] = spec.density(theta, preimages[i]) / (spec.s1 * sine);
  } else {
    result.grazing = true;
    const double halfwidth = kPi / resolution;
    for (int i = 0; i < 2; ++i)
      mass[i] = window_mass(spec, true, theta, preimages[i], halfwidth, resolution);
  }
  const double total = mass[0] + mass[1];
  result.expected = Eigen::VectorXd::Zero(6);
  for (int i = 0; i < 2; ++i) {
    PreimageMode mode;
    mode.theta = theta;
    mode.phi = preimages[i];
    mode.weight = mass[i] / total;
    mode.position = Eigen::VectorXd(6);
    const Vector3<double> joint1 = circle_point(theta, spec.s0);
    const Vector3<double> joint2 = torus_point(theta, preimages[i], spec.s0, spec.s1);
    mode.position << joint1.x(), joint1.y(), joint1.z(), joint2.x(), joint2.y(), joint2.z();
    result.expected += mode.weight * mode.position;
    result.modes.push_back(std::move(mode));
  }
  return result;
}

}  // namespace

ConditionalExpectation conditional_expectation_oracle(const ScenarioSpec& spec,
                                                      const Eigen::VectorXd& input,
                                                      int resolution) {
  if (input.size() != spec.input_dim())
    throw DimensionMismatch("conditional_expectation_oracle: input width mismatch");
  return spec.torus ? torus_oracle(spec, input, resolution) : circle_oracle(spec, input[0], resolution);
}

MonteCarloEstimate conditional_expectation_monte_carlo(const ScenarioSpec& spec,
                                                       const Eigen::VectorXd& input,
                                                       long num_samples, double bin_halfwidth,
                                                       std::uint64_t seed) {
  if (input.size() != spec.input_dim())
    throw DimensionMismatch("conditional_expectation_monte_carlo: input width mismatch");
  const CounterRng base(seed);
  Eigen::RowVectorXd sample_input(spec.input_dim());
  Eigen::RowVectorXd sample_target(spec.target_dim());
  MonteCarloEstimate estimate;
  estimate.expected = Eigen::VectorXd::Zero(spec.target_dim());
  for (long i = 0; i < num_samples; ++i) {
    CounterRng rng = base.derived(static_cast<std::uint64_t>(i));
    const SampleAngles angles = sample_angles(spec, rng);
    fill_sample(spec, angles, sample_input, sample_target);
    if (((sample_input.transpose() - input).cwiseAbs().maxCoeff()) > bin_halfwidth) continue;
    estimate.expected += sample_target.transpose();
    ++estimate.accepted;
  }
  if (estimate.accepted == 0)
    throw std::runtime_error("conditional_expectation_monte_carlo: no samples fell in the bin");
  estimate.expected /= static_cast<double>(estimate.accepted);
  return estimate;
}

}  // namespace manilift
