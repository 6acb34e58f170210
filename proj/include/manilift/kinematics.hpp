#pragma once

#include "manilift/rotations.hpp"
#include "manilift/skeleton.hpp"

#include <vector>

namespace manilift {

/// Reference pose for a serial-chain skeleton: unit offsets along +x,
/// u_j = j * e_1. Rotations absorb direction, so any unit-segment pose works.
template <typename Scalar>
PoseMatrix<Scalar> reference_chain(int joint_count) {
  PoseMatrix<Scalar> pose = PoseMatrix<Scalar>::Zero(joint_count, 3);
  for (int j = 0; j < joint_count; ++j) pose(j, 0) = Scalar(j);
  return pose;
}

/// Reference pose with unit offsets along +x for an arbitrary tree,
/// u_j = u_parent(j) + e_1.
template <typename Scalar>
PoseMatrix<Scalar> reference_for(const Skeleton& skel) {
  PoseMatrix<Scalar> pose = PoseMatrix<Scalar>::Zero(skel.joint_count(), 3);
  for (int j = 1; j < skel.joint_count(); ++j) {
    pose.row(j) = pose.row(skel.parent(j));
    pose(j, 0) += Scalar(1);
  }
  return pose;
}

/// Scale the unit segments of a reference pose by s, keeping the root at the
/// origin: u'_j = u'_parent(j) + s_j (u_j - u_parent(j)).
template <typename Scalar>
PoseMatrix<Scalar> scale_reference(const PoseMatrix<Scalar>& reference,
                                   const VectorX<Scalar>& segments,
                                   const Skeleton& skel) {
  if (reference.rows() != skel.joint_count())
    throw DimensionMismatch("scale_reference: reference/skeleton joint count mismatch");
  if (segments.size() != skel.joint_count() - 1)
    throw DimensionMismatch("scale_reference: expected one segment length per non-root joint");
  PoseMatrix<Scalar> scaled(reference.rows(), reference.cols());
  scaled.row(0) = reference.row(0);
  for (int j = 1; j < skel.joint_count(); ++j) {
    const int par = skel.parent(j);
    scaled.row(j) = scaled.row(par) + segments[j - 1] * (reference.row(j) - reference.row(par));
  }
  return scaled;
}

/// Forward kinematics: compose per-joint relative rotations along the tree
/// and place each joint at the rotated parent offset,
///   R'_0 = R_0,  p_0 = u'_0,
///   R'_j = R_j R'_parent(j),  p_j = R'_j (u'_j - u'_parent(j)) + p_parent(j).
template <typename Scalar>
PoseMatrix<Scalar> forward_kinematics(const PoseMatrix<Scalar>& scaled_reference,
                                      const std::vector<Matrix3<Scalar>>& rotations,
                                      const Skeleton& skel) {
  const int joints = skel.joint_count();
  if (scaled_reference.rows() != joints || scaled_reference.cols() != 3)
    throw DimensionMismatch("forward_kinematics: reference must be J x 3");
  if (static_cast<int>(rotations.size()) != joints)
    throw DimensionMismatch("forward_kinematics: expected one rotation per joint");

  std::vector<Matrix3<Scalar>> global(joints);
  global[0] = rotations[0];
  PoseMatrix<Scalar> pose(joints, 3);
  pose.row(0) = scaled_reference.row(0);
  for (int j = 1; j < joints; ++j) {
    const int par = skel.parent(j);
    global[j] = rotations[j] * global[par];
    const Vector3<Scalar> offset =
        (scaled_reference.row(j) - scaled_reference.row(par)).transpose();
    pose.row(j) = (global[j] * offset).transpose() + pose.row(par);
  }
  return pose;
}

/// Decode a full sequence from shared segment lengths and per-frame per-joint
/// 6D rotation representations. Every decoded frame lies on the manifold
/// defined by the segment lengths; joint order is sequential within a frame,
/// frames are independent of each other.
template <typename Scalar>
PoseSeq<Scalar> decode_pose_sequence(const VectorX<Scalar>& segments,
                                     const std::vector<std::vector<Vector6<Scalar>>>& reps,
                                     const PoseMatrix<Scalar>& reference,
                                     const Skeleton& skel) {
  const PoseMatrix<Scalar> scaled = scale_reference(reference, segments, skel);
  PoseSeq<Scalar> sequence;
  sequence.reserve(reps.size());
  for (std::size_t t = 0; t < reps.size(); ++t) {
    const auto& frame_reps = reps[t];
    if (static_cast<int>(frame_reps.size()) != skel.joint_count())
      throw DimensionMismatch("decode_pose_sequence: expected one 6D rep per joint");
    std::vector<Matrix3<Scalar>> rotations(frame_reps.size());
    for (std::size_t j = 0; j < frame_reps.size(); ++j)
      rotations[j] = rot6d_to_matrix(frame_reps[j], static_cast<long>(t), static_cast<long>(j));
    sequence.push_back(forward_kinematics(scaled, rotations, skel));
  }
  return sequence;
}

}  // namespace manilift
