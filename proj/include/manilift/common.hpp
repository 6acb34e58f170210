#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace manilift {

template <typename Scalar>
using Matrix3 = Eigen::Matrix<Scalar, 3, 3>;
template <typename Scalar>
using Vector2 = Eigen::Matrix<Scalar, 2, 1>;
template <typename Scalar>
using Vector3 = Eigen::Matrix<Scalar, 3, 1>;
template <typename Scalar>
using Vector6 = Eigen::Matrix<Scalar, 6, 1>;
template <typename Scalar>
using VectorX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using MatrixX = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

/// A single pose: one row per joint, one column per ambient coordinate
/// (J x D, with D = 2 or 3). Row 0 is the root joint.
template <typename Scalar>
using PoseMatrix = MatrixX<Scalar>;

/// A sequence of poses sharing the same J and D.
template <typename Scalar>
using PoseSeq = std::vector<PoseMatrix<Scalar>>;

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct InvalidRotation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Thrown by the 6D->SO(3) conversion when the representation is too close
/// to collapse (zero or collinear column vectors).
struct DegenerateRepresentation : std::runtime_error {
  DegenerateRepresentation(const std::string& what, long frame = -1, long joint = -1)
      : std::runtime_error(what), frame(frame), joint(joint) {}
  long frame;
  long joint;
};

struct MetricUnavailable : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrainingDiverged : std::runtime_error {
  TrainingDiverged(const std::string& what, int epoch) : std::runtime_error(what), epoch(epoch) {}
  int epoch;
};

}  // namespace manilift
