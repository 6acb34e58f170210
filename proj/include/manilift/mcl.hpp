#pragma once

#include "manilift/skeleton.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace manilift {

inline constexpr double kScoreClamp = 1e-12;

/// K hypothetical pose sequences plus their per-frame score simplex
/// (scores is L x K, each row summing to 1).
template <typename Scalar>
struct HypothesisSet {
  std::vector<PoseSeq<Scalar>> hypotheses;
  MatrixX<Scalar> scores;

  int count() const { return static_cast<int>(hypotheses.size()); }
  int frames() const { return hypotheses.empty() ? 0 : static_cast<int>(hypotheses[0].size()); }

  void validate(Scalar tol = Scalar(1e-9)) const {
    if (hypotheses.empty()) throw DimensionMismatch("HypothesisSet: needs at least one hypothesis");
    const int len = frames();
    for (const auto& hyp : hypotheses)
      if (static_cast<int>(hyp.size()) != len)
        throw DimensionMismatch("HypothesisSet: hypotheses disagree on sequence length");
    if (scores.rows() != len || scores.cols() != count())
      throw DimensionMismatch("HypothesisSet: scores must be L x K");
    for (Eigen::Index t = 0; t < scores.rows(); ++t)
      if (std::abs(scores.row(t).sum() - Scalar(1)) > tol)
        throw DimensionMismatch("HypothesisSet: scores of frame " + std::to_string(t) +
                                " do not sum to 1");
  }
};

struct LossConfig {
  double beta = 0.1;
  Eigen::VectorXd joint_weights;  // empty = uniform

  bool weighted() const { return joint_weights.size() > 0; }
};

/// Mean per-joint Euclidean distance between two poses; with weights, the
/// weight-normalized weighted mean.
template <typename Scalar>
Scalar per_frame_error(const PoseMatrix<Scalar>& pred, const PoseMatrix<Scalar>& target,
                       const Eigen::VectorXd& weights = {}) {
  if (pred.rows() != target.rows() || pred.cols() != target.cols())
    throw DimensionMismatch("per_frame_error: pose shapes differ");
  if (weights.size() > 0 && weights.size() != pred.rows())
    throw DimensionMismatch("per_frame_error: one weight per joint required");
  Scalar total = 0, norm = 0;
  for (Eigen::Index j = 0; j < pred.rows(); ++j) {
    const Scalar w = weights.size() > 0 ? Scalar(weights[j]) : Scalar(1);
    total += w * (pred.row(j) - target.row(j)).norm();
    norm += w;
  }
  return total / norm;
}

/// Index of the winner hypothesis at one frame (argmin of per_frame_error,
/// ties broken by lowest index).
template <typename Scalar>
int winner_index(const HypothesisSet<Scalar>& hyp, const PoseMatrix<Scalar>& target, int frame,
                 const Eigen::VectorXd& weights = {}) {
  int best = 0;
  Scalar best_err = per_frame_error(hyp.hypotheses[0][frame], target, weights);
  for (int k = 1; k < hyp.count(); ++k) {
    const Scalar err = per_frame_error(hyp.hypotheses[k][frame], target, weights);
    if (err < best_err) {
      best = k;
      best_err = err;
    }
  }
  return best;
}

/// One-hot winner indicator over the K hypotheses at one frame.
template <typename Scalar>
VectorX<Scalar> winner_indicator(const HypothesisSet<Scalar>& hyp, const PoseMatrix<Scalar>& target,
                                 int frame, const Eigen::VectorXd& weights = {}) {
  VectorX<Scalar> indicator = VectorX<Scalar>::Zero(hyp.count());
  indicator[winner_index(hyp, target, frame, weights)] = Scalar(1);
  return indicator;
}

/// Winner-takes-all loss: mean over frames of the smallest per-frame error.
template <typename Scalar>
Scalar wta_loss(const HypothesisSet<Scalar>& hyp, const PoseSeq<Scalar>& target,
                const LossConfig& cfg = {}) {
  if (static_cast<int>(target.size()) != hyp.frames())
    throw DimensionMismatch("wta_loss: target length mismatch");
  Scalar total = 0;
  for (int t = 0; t < hyp.frames(); ++t) {
    const int k = winner_index(hyp, target[t], t, cfg.joint_weights);
    total += per_frame_error(hyp.hypotheses[k][t], target[t], cfg.joint_weights);
  }
  return total / Scalar(hyp.frames());
}

/// Scoring loss: mean cross-entropy between the one-hot winner indicator and
/// the predicted scores, i.e. the average of -log score[winner]. Scores are
/// clamped at 1e-12 so an exactly-zero winner score stays finite.
template <typename Scalar>
Scalar scoring_loss(const HypothesisSet<Scalar>& hyp, const PoseSeq<Scalar>& target,
                    const Eigen::VectorXd& weights = {}) {
  if (static_cast<int>(target.size()) != hyp.frames())
    throw DimensionMismatch("scoring_loss: target length mismatch");
  Scalar total = 0;
  for (int t = 0; t < hyp.frames(); ++t) {
    const int k = winner_index(hyp, target[t], t, weights);
    total += -std::log(std::max(hyp.scores(t, k), Scalar(kScoreClamp)));
  }
  return total / Scalar(hyp.frames());
}

/// Composite training loss: wta + beta * scoring.
template <typename Scalar>
Scalar composite_loss(const HypothesisSet<Scalar>& hyp, const PoseSeq<Scalar>& target,
                      const LossConfig& cfg = {}) {
  return wta_loss(hyp, target, cfg) +
         Scalar(cfg.beta) * scoring_loss(hyp, target, cfg.joint_weights);
}

/// Score-weighted convex combination of the hypotheses, the predicted
/// conditional expectation of poses given the input.
template <typename Scalar>
PoseSeq<Scalar> aggregate(const HypothesisSet<Scalar>& hyp) {
  hyp.validate();
  PoseSeq<Scalar> combined(hyp.frames());
  for (int t = 0; t < hyp.frames(); ++t) {
    PoseMatrix<Scalar> frame =
        PoseMatrix<Scalar>::Zero(hyp.hypotheses[0][t].rows(), hyp.hypotheses[0][t].cols());
    for (int k = 0; k < hyp.count(); ++k) frame += hyp.scores(t, k) * hyp.hypotheses[k][t];
    combined[t] = std::move(frame);
  }
  return combined;
}

/// Evaluation-time selection of the hypothesis closest to the ground truth,
/// frame by frame.
template <typename Scalar>
PoseSeq<Scalar> oracle_select(const HypothesisSet<Scalar>& hyp, const PoseSeq<Scalar>& target,
                              const Eigen::VectorXd& weights = {}) {
  if (static_cast<int>(target.size()) != hyp.frames())
    throw DimensionMismatch("oracle_select: target length mismatch");
  PoseSeq<Scalar> selected(hyp.frames());
  for (int t = 0; t < hyp.frames(); ++t)
    selected[t] = hyp.hypotheses[winner_index(hyp, target[t], t, weights)][t];
  return selected;
}

}  // namespace manilift
