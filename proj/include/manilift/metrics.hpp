#pragma once

#include "manilift/mcl.hpp"
#include "manilift/skeleton.hpp"

#include <Eigen/SVD>

#include <cmath>
#include <optional>
#include <string>
#include <vector>

namespace manilift {

/// Evaluation summary. All error metrics average over non-root joints; the
/// root contributes nothing under the root-relative protocols. Units follow
/// the inputs (task units for synthetic data, millimetres for HPE data).
struct MetricReport {
  std::optional<double> mpjpe;
  std::optional<double> p_mpjpe;
  std::optional<double> mpsce;
  std::optional<double> mpsse;
  std::optional<double> pck;
  std::optional<double> auc;
  std::optional<double> manifold_distance;
  Eigen::VectorXd per_joint_mpjpe;    // one entry per non-root joint
  Eigen::VectorXd per_segment_mpsce;  // one entry per segment
  int procrustes_fallback_frames = 0;
  std::string units = "task units";
};

template <typename Scalar>
void check_same_shape(const PoseSeq<Scalar>& pred, const PoseSeq<Scalar>& truth,
                      const char* where) {
  if (pred.size() != truth.size())
    throw DimensionMismatch(std::string(where) + ": sequence lengths differ");
  if (pred.empty()) throw DimensionMismatch(std::string(where) + ": empty sequence");
  for (std::size_t t = 0; t < pred.size(); ++t)
    if (pred[t].rows() != truth[t].rows() || pred[t].cols() != truth[t].cols())
      throw DimensionMismatch(std::string(where) + ": pose shapes differ at frame " +
                              std::to_string(t));
}

/// Subtract the root position from every joint, frame by frame.
template <typename Scalar>
PoseSeq<Scalar> root_relative(const PoseSeq<Scalar>& seq) {
  PoseSeq<Scalar> rel(seq.size());
  for (std::size_t t = 0; t < seq.size(); ++t)
    rel[t] = seq[t].rowwise() - seq[t].row(0);
  return rel;
}

/// Per-joint mean position error over the sequence (non-root joints),
/// protocol #1: both sequences are re-expressed relative to their roots.
template <typename Scalar>
VectorX<Scalar> per_joint_position_error(const PoseSeq<Scalar>& pred, const PoseSeq<Scalar>& truth) {
  check_same_shape(pred, truth, "mpjpe");
  const Eigen::Index joints = pred[0].rows();
  if (joints < 2) throw DimensionMismatch("mpjpe: need at least one non-root joint");
  VectorX<Scalar> per_joint = VectorX<Scalar>::Zero(joints - 1);
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const auto pred_rel = pred[t].rowwise() - pred[t].row(0);
    const auto truth_rel = truth[t].rowwise() - truth[t].row(0);
    for (Eigen::Index j = 1; j < joints; ++j)
      per_joint[j - 1] += (pred_rel.row(j) - truth_rel.row(j)).norm();
  }
  return per_joint / Scalar(pred.size());
}

template <typename Scalar>
Scalar mpjpe(const PoseSeq<Scalar>& pred, const PoseSeq<Scalar>& truth) {
  return per_joint_position_error(pred, truth).mean();
}

/// Least-squares similarity alignment (rotation + translation + uniform
/// scale) of one point set onto another, Umeyama's closed form. Returns the
/// transformed source points; `fallback` is set when the cross-covariance is
/// rank-deficient and only the translation could be estimated.
template <typename Scalar>
PoseMatrix<Scalar> similarity_align(const PoseMatrix<Scalar>& source,
                                    const PoseMatrix<Scalar>& target, bool* fallback = nullptr) {
  const Eigen::Index dims = source.cols();
  const Scalar count = Scalar(source.rows());
  const Eigen::RowVectorX<Scalar> mu_src = source.colwise().mean();
  const Eigen::RowVectorX<Scalar> mu_tgt = target.colwise().mean();
  const MatrixX<Scalar> src_c = source.rowwise() - mu_src;
  const MatrixX<Scalar> tgt_c = target.rowwise() - mu_tgt;

  const MatrixX<Scalar> cov = tgt_c.transpose() * src_c / count;
  const Scalar src_var = src_c.squaredNorm() / count;

  Eigen::JacobiSVD<MatrixX<Scalar>> svd(cov, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const VectorX<Scalar>& sing = svd.singularValues();
  const Scalar rank_tol = Scalar(1e-12) * std::max(sing[0], Scalar(1));
  Eigen::Index rank = 0;
  for (Eigen::Index i = 0; i < sing.size(); ++i)
    if (sing[i] > rank_tol) ++rank;

  if (rank < dims - 1 || src_var <= Scalar(0)) {
    if (fallback) *fallback = true;
    return src_c.rowwise() + mu_tgt;  // translation only
  }
  if (fallback) *fallback = false;

  VectorX<Scalar> signs = VectorX<Scalar>::Ones(dims);
  if (svd.matrixU().determinant() * svd.matrixV().determinant() < Scalar(0)) signs[dims - 1] = Scalar(-1);
  const MatrixX<Scalar> rot = svd.matrixU() * signs.asDiagonal() * svd.matrixV().transpose();
  const Scalar scale = sing.dot(signs) / src_var;

  PoseMatrix<Scalar> aligned = scale * (src_c * rot.transpose());
  return aligned.rowwise() + mu_tgt;
}

/// Protocol #2: per-frame similarity Procrustes correction of the prediction
/// before the position error. Rank-deficient frames fall back to
/// translation-only alignment and are counted.
template <typename Scalar>
Scalar p_mpjpe(const PoseSeq<Scalar>& pred, const PoseSeq<Scalar>& truth,
               int* fallback_frames = nullptr) {
  check_same_shape(pred, truth, "p_mpjpe");
  const Eigen::Index joints = pred[0].rows();
  if (joints < 3)
    throw MetricUnavailable("p_mpjpe: needs at least 3 joints for a stable alignment");
  Scalar total = 0;
  int fallbacks = 0;
  for (std::size_t t = 0; t < pred.size(); ++t) {
    bool fell_back = false;
    const PoseMatrix<Scalar> aligned = similarity_align(pred[t], truth[t], &fell_back);
    fallbacks += fell_back ? 1 : 0;
    Scalar frame_err = 0;
    for (Eigen::Index j = 1; j < joints; ++j)
      frame_err += (aligned.row(j) - truth[t].row(j)).norm();
    total += frame_err / Scalar(joints - 1);
  }
  if (fallback_frames) *fallback_frames = fallbacks;
  return total / Scalar(pred.size());
}

/// Segment lengths per frame, arranged L x (J-1).
template <typename Scalar>
MatrixX<Scalar> segment_length_series(const PoseSeq<Scalar>& seq, const Skeleton& skel) {
  MatrixX<Scalar> series(seq.size(), skel.joint_count() - 1);
  for (std::size_t t = 0; t < seq.size(); ++t)
    series.row(t) = segment_lengths(seq[t], skel).transpose();
  return series;
}

/// Mean per segment consistency error: mean over segments of the temporal
/// standard deviation (population normalization) of segment lengths.
template <typename Scalar>
VectorX<Scalar> per_segment_consistency_error(const PoseSeq<Scalar>& seq, const Skeleton& skel) {
  if (seq.empty()) throw DimensionMismatch("mpsce: empty sequence");
  const MatrixX<Scalar> series = segment_length_series(seq, skel);
  const Eigen::RowVectorX<Scalar> mean = series.colwise().mean();
  VectorX<Scalar> per_segment(series.cols());
  for (Eigen::Index j = 0; j < series.cols(); ++j)
    per_segment[j] = std::sqrt((series.col(j).array() - mean[j]).square().mean());
  return per_segment;
}

template <typename Scalar>
Scalar mpsce(const PoseSeq<Scalar>& seq, const Skeleton& skel) {
  return per_segment_consistency_error(seq, skel).mean();
}

/// Mean per segment symmetry error: mean absolute difference between the
/// lengths of left segments and their right counterparts, over frames.
template <typename Scalar>
Scalar mpsse(const PoseSeq<Scalar>& seq, const Skeleton& skel) {
  if (!skel.has_symmetry())
    throw MetricUnavailable("mpsse: skeleton has no left/right symmetry map");
  if (seq.empty()) throw DimensionMismatch("mpsse: empty sequence");
  Scalar total = 0;
  for (const auto& frame : seq) {
    const VectorX<Scalar> lengths = segment_lengths(frame, skel);
    for (const auto& [left, right] : skel.symmetry())
      total += std::abs(lengths[left - 1] - lengths[right - 1]);
  }
  return total / (Scalar(seq.size()) * Scalar(skel.symmetry().size()));
}

/// Fraction of non-root joint predictions within `threshold` of the ground
/// truth (root-relative, boundary counts as correct), plus the mean PCK over
/// a threshold sweep (AUC).
template <typename Scalar>
std::pair<Scalar, Scalar> pck_auc(const PoseSeq<Scalar>& pred, const PoseSeq<Scalar>& truth,
                                  Scalar threshold, const std::vector<Scalar>& sweep) {
  check_same_shape(pred, truth, "pck_auc");
  if (sweep.empty()) throw DimensionMismatch("pck_auc: empty threshold sweep");
  const Eigen::Index joints = pred[0].rows();
  std::vector<Scalar> errors;
  errors.reserve(pred.size() * (joints - 1));
  for (std::size_t t = 0; t < pred.size(); ++t) {
    const auto pred_rel = pred[t].rowwise() - pred[t].row(0);
    const auto truth_rel = truth[t].rowwise() - truth[t].row(0);
    for (Eigen::Index j = 1; j < joints; ++j)
      errors.push_back((pred_rel.row(j) - truth_rel.row(j)).norm());
  }
  const auto fraction_within = [&errors](Scalar thr) {
    std::size_t hits = 0;
    for (Scalar err : errors) hits += err <= thr ? 1 : 0;
    return Scalar(hits) / Scalar(errors.size());
  };
  Scalar auc = 0;
  for (Scalar thr : sweep) auc += fraction_within(thr);
  return {fraction_within(threshold), auc / Scalar(sweep.size())};
}

/// Default AUC sweep, 5 mm to 150 mm in steps of 5 mm.
template <typename Scalar>
std::vector<Scalar> default_pck_sweep() {
  std::vector<Scalar> sweep;
  for (int thr = 5; thr <= 150; thr += 5) sweep.push_back(Scalar(thr));
  return sweep;
}

/// Mean absolute deviation of segment lengths from their known target values;
/// zero exactly when every frame lies on the manifold those lengths define.
template <typename Scalar>
Scalar manifold_distance(const PoseSeq<Scalar>& seq, const VectorX<Scalar>& segments,
                         const Skeleton& skel) {
  if (seq.empty()) throw DimensionMismatch("manifold_distance: empty sequence");
  if (segments.size() != skel.joint_count() - 1)
    throw DimensionMismatch("manifold_distance: one target length per segment required");
  Scalar total = 0;
  for (const auto& frame : seq)
    total += (segment_lengths(frame, skel) - segments).cwiseAbs().mean();
  return total / Scalar(seq.size());
}

}  // namespace manilift
