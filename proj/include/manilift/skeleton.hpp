#pragma once

#include "manilift/common.hpp"

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace manilift {

/// Joint tree of an articulated figure. Joints are indexed 0..J-1 with the
/// root at index 0; parent(j) < j for every non-root joint, so iterating in
/// index order is a topological traversal. The optional symmetry map pairs
/// left-side joints with their right-side counterparts.
class Skeleton {
 public:
  Skeleton(std::vector<int> parents,
           std::vector<std::pair<int, int>> symmetry = {},
           std::vector<std::string> joint_names = {});

  /// Serial chain 0 -> 1 -> ... -> J-1.
  static Skeleton chain(int joint_count);

  int joint_count() const { return static_cast<int>(parents_.size()); }
  int parent(int joint) const { return parents_[joint]; }
  const std::vector<int>& parents() const { return parents_; }

  bool has_symmetry() const { return !symmetry_.empty(); }
  const std::vector<std::pair<int, int>>& symmetry() const { return symmetry_; }
  const std::vector<std::string>& joint_names() const { return joint_names_; }

  /// Number of parent hops from `joint` to the root.
  int depth(int joint) const;

 private:
  std::vector<int> parents_;  // parents_[0] == -1
  std::vector<std::pair<int, int>> symmetry_;
  std::vector<std::string> joint_names_;
};

/// Distances between each non-root joint and its parent; entry j-1 belongs
/// to the segment ending at joint j.
template <typename Scalar>
VectorX<Scalar> segment_lengths(const PoseMatrix<Scalar>& pose, const Skeleton& skel) {
  if (pose.rows() != skel.joint_count())
    throw DimensionMismatch("segment_lengths: pose has " + std::to_string(pose.rows()) +
                            " joints, skeleton has " + std::to_string(skel.joint_count()));
  const int joints = skel.joint_count();
  VectorX<Scalar> lengths(joints - 1);
  for (int j = 1; j < joints; ++j)
    lengths[j - 1] = (pose.row(j) - pose.row(skel.parent(j))).norm();
  return lengths;
}

/// Orthographic projection: drop one ambient coordinate.
template <typename Scalar>
PoseMatrix<Scalar> project(const PoseMatrix<Scalar>& pose, int drop_axis) {
  const auto dims = pose.cols();
  if (drop_axis < 0 || drop_axis >= dims)
    throw DimensionMismatch("project: drop_axis " + std::to_string(drop_axis) +
                            " out of range for D=" + std::to_string(dims));
  PoseMatrix<Scalar> keypoints(pose.rows(), dims - 1);
  for (Eigen::Index axis = 0, out = 0; axis < dims; ++axis) {
    if (axis == drop_axis) continue;
    keypoints.col(out++) = pose.col(axis);
  }
  return keypoints;
}

template <typename Scalar>
bool all_finite(const PoseMatrix<Scalar>& m) {
  return m.allFinite();
}

}  // namespace manilift
