#pragma once

#include "manilift/common.hpp"
#include "manilift/mcl.hpp"
#include "manilift/rng.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace manilift {

enum class ModelKind { UnconstrainedRegressor, ConstrainedRegressor, ManiPoseToy };

ModelKind model_kind_from_name(const std::string& name);
std::string model_kind_name(ModelKind kind);

/// Differentiable chart of the task manifold: angles -> non-root joint
/// coordinates. Constrained heads decode through it, so their predictions
/// lie on the manifold for any parameter values.
struct Chart {
  enum class Kind { Circle, Torus };
  Kind kind = Kind::Circle;
  double s0 = 1.0;
  double s1 = 1.0;

  int angle_dim() const { return kind == Kind::Circle ? 1 : 2; }
  int coord_dim() const { return kind == Kind::Circle ? 2 : 6; }

  Eigen::VectorXd decode(const Eigen::VectorXd& angles) const;
  /// d coords / d angles, coord_dim x angle_dim.
  Eigen::MatrixXd jacobian(const Eigen::VectorXd& angles) const;
};

struct ModelSpec {
  ModelKind kind = ModelKind::UnconstrainedRegressor;
  int num_hypotheses = 1;  // K, ManiPose only
  int input_dim = 1;
  std::vector<int> hidden_dims{32, 32};
  Chart chart;
  int target_dim = 2;   // non-root joint coordinates, flattened
  int joint_count = 2;  // J including the root (loss normalization)

  void validate() const;
};

/// Flat parameter storage with named matrix views; keeping everything in one
/// vector makes Adam, finite differences and checkpoints trivial.
struct ParamLayout {
  struct Entry {
    std::string name;
    Eigen::Index rows, cols, offset;
  };
  std::vector<Entry> entries;
  Eigen::Index total = 0;

  int add(std::string name, Eigen::Index rows, Eigen::Index cols);
  Eigen::Map<Eigen::MatrixXd> view(Eigen::VectorXd& flat, int idx) const;
  Eigen::Map<const Eigen::MatrixXd> view(const Eigen::VectorXd& flat, int idx) const;
};

struct Model {
  ModelSpec spec;
  ParamLayout layout;
  Eigen::VectorXd params;
  std::vector<int> hidden_w, hidden_b;
  std::vector<int> head_w, head_b;  // one per hypothesis (or the single head)
  int logit_w = -1, logit_b = -1;   // ManiPose score head
};

/// Build a model with uniform +-1/sqrt(fan-in) initialization.
Model make_model(const ModelSpec& spec, CounterRng& rng);

/// Hidden-layer activations for a batch (one row per sample).
struct ForwardCache {
  std::vector<Eigen::MatrixXd> activations;  // activations[0] is the input
};

Eigen::MatrixXd hidden_forward(const Model& model, const Eigen::MatrixXd& inputs,
                               ForwardCache* cache = nullptr);

/// Raw head outputs for a batch.
struct HeadOutputs {
  std::vector<Eigen::MatrixXd> heads;  // per hypothesis: N x head_dim
  Eigen::MatrixXd logits;              // N x K (ManiPose), empty otherwise
};

HeadOutputs forward(const Model& model, const Eigen::MatrixXd& inputs,
                    ForwardCache* cache = nullptr);

/// Decoded hypothesis coordinates plus the score simplex.
struct ModelHypotheses {
  std::vector<Eigen::MatrixXd> coords;  // K of N x target_dim
  Eigen::MatrixXd scores;               // N x K rows on the simplex
};

ModelHypotheses predict_hypotheses(const Model& model, const Eigen::MatrixXd& inputs);

/// Single prediction per sample: the regression output for single-hypothesis
/// kinds, the score-weighted aggregation for ManiPose.
Eigen::MatrixXd predict(const Model& model, const Eigen::MatrixXd& inputs);

struct LossBreakdown {
  double total = 0;
  double wta = 0;      // == total for the MSE-trained kinds
  double scoring = 0;  // ManiPose only
};

/// Training objective of the model on a batch: mean squared error summed over
/// coordinates for the regressor kinds, wta + beta * scoring for ManiPose.
LossBreakdown model_loss(const Model& model, const Eigen::MatrixXd& inputs,
                         const Eigen::MatrixXd& targets, const LossConfig& cfg);

/// Objective plus its gradient with respect to every parameter, via manual
/// backpropagation through the heads, the chart decoding and the trunk.
LossBreakdown model_loss_grad(const Model& model, const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& targets, const LossConfig& cfg,
                              Eigen::VectorXd& grad);

struct AdamState {
  Eigen::VectorXd first_moment;
  Eigen::VectorXd second_moment;
  long step = 0;
};

AdamState make_adam_state(Eigen::Index size);

/// One bias-corrected Adam update (beta1 0.9, beta2 0.999, eps 1e-8); weight
/// decay is the classic L2 term added to the gradient.
void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state, double lr,
               double weight_decay = 0.0, double beta1 = 0.9, double beta2 = 0.999,
               double eps = 1e-8);

struct PlateauConfig {
  double factor = 0.5;
  int patience = 10;
  double threshold = 1e-4;
};

/// Reduce-on-plateau: halve the rate once `patience` consecutive epochs fail
/// to improve the best seen loss by more than `threshold`.
class PlateauScheduler {
 public:
  PlateauScheduler(double lr, PlateauConfig cfg) : lr_(lr), cfg_(cfg) {}
  double step(double validation_loss);
  double lr() const { return lr_; }

 private:
  double lr_;
  PlateauConfig cfg_;
  double best_ = std::numeric_limits<double>::infinity();
  int bad_epochs_ = 0;
};

struct TrainConfig {
  double learning_rate = 1e-2;
  int batch_size = 100;
  int max_epochs = 50;
  double weight_decay = 0.0;
  PlateauConfig scheduler{};
  std::uint64_t seed = 0;
  double beta = 0.1;  // ManiPose scoring weight
};

struct EpochRecord {
  double train_loss;
  double val_loss;
  double lr;
};

struct TrainResult {
  Model model;  // best-validation parameters
  std::vector<EpochRecord> history;
  int best_epoch = 0;
  double best_val_loss = 0;
  double final_val_loss = 0;
};

/// Deterministic single-threaded training loop: Adam batches, per-epoch
/// validation of the training objective, plateau scheduling, best-validation
/// parameters returned. Throws TrainingDiverged on a non-finite loss.
TrainResult train(const ModelSpec& spec, const Eigen::MatrixXd& train_inputs,
                  const Eigen::MatrixXd& train_targets, const Eigen::MatrixXd& val_inputs,
                  const Eigen::MatrixXd& val_targets, const TrainConfig& cfg);

/// Checkpoint = JSON manifest (schema versioned) + little-endian float64
/// parameter blob next to it.
void save_checkpoint(const Model& model, const std::string& path_prefix);
Model load_checkpoint(const std::string& path_prefix);

}  // namespace manilift
