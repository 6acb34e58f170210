#include "manilift/nets.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

namespace manilift {

using nlohmann::json;

ModelKind model_kind_from_name(const std::string& name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(), ::tolower);
  if (lower == "unconstrained") return ModelKind::UnconstrainedRegressor;
  if (lower == "constrained") return ModelKind::ConstrainedRegressor;
  if (lower == "manipose") return ModelKind::ManiPoseToy;
  throw std::invalid_argument("unknown model kind '" + name +
                              "' (expected unconstrained, constrained or manipose)");
}

std::string model_kind_name(ModelKind kind) {
  switch (kind) {
    case ModelKind::UnconstrainedRegressor: return "unconstrained";
    case ModelKind::ConstrainedRegressor: return "constrained";
    case ModelKind::ManiPoseToy: return "manipose";
  }
  throw std::invalid_argument("model_kind_name: bad enum value");
}

Eigen::VectorXd Chart::decode(const Eigen::VectorXd& angles) const {
  if (angles.size() != angle_dim()) throw DimensionMismatch("Chart::decode: angle count mismatch");
  Eigen::VectorXd coords(coord_dim());
  if (kind == Kind::Circle) {
    coords << s0 * std::cos(angles[0]), s0 * std::sin(angles[0]);
    return coords;
  }
  const double ct = std::cos(angles[0]), st = std::sin(angles[0]);
  const double cp = std::cos(angles[1]), sp = std::sin(angles[1]);
  coords << s0 * ct, 0.0, s0 * st,
      (s0 + s1 * cp) * ct, s1 * sp, (s0 + s1 * cp) * st;
  return coords;
}

Eigen::MatrixXd Chart::jacobian(const Eigen::VectorXd& angles) const {
  if (angles.size() != angle_dim())
    throw DimensionMismatch("Chart::jacobian: angle count mismatch");
  Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(coord_dim(), angle_dim());
  if (kind == Kind::Circle) {
    jac << -s0 * std::sin(angles[0]), s0 * std::cos(angles[0]);
    return jac;
  }
  const double ct = std::cos(angles[0]), st = std::sin(angles[0]);
  const double cp = std::cos(angles[1]), sp = std::sin(angles[1]);
  const double ring = s0 + s1 * cp;
  jac(0, 0) = -s0 * st;
  jac(2, 0) = s0 * ct;
  jac(3, 0) = -ring * st;
  jac(5, 0) = ring * ct;
  jac(3, 1) = -s1 * sp * ct;
  jac(4, 1) = s1 * cp;
  jac(5, 1) = -s1 * sp * st;
  return jac;
}

void ModelSpec::validate() const {
  if (input_dim <= 0 || target_dim <= 0 || joint_count < 2)
    throw std::invalid_argument("ModelSpec: dimensions must be positive");
  for (int dim : hidden_dims)
    if (dim <= 0) throw std::invalid_argument("ModelSpec: hidden dims must be positive");
  if (kind == ModelKind::ManiPoseToy && num_hypotheses < 1)
    throw std::invalid_argument("ModelSpec: ManiPose needs at least one hypothesis");
  if (kind != ModelKind::UnconstrainedRegressor && chart.coord_dim() != target_dim)
    throw std::invalid_argument("ModelSpec: chart coordinates do not match the target dim");
}

int ParamLayout::add(std::string name, Eigen::Index rows, Eigen::Index cols) {
  entries.push_back({std::move(name), rows, cols, total});
  total += rows * cols;
  return static_cast<int>(entries.size()) - 1;
}

Eigen::Map<Eigen::MatrixXd> ParamLayout::view(Eigen::VectorXd& flat, int idx) const {
  const Entry& e = entries[idx];
  return {flat.data() + e.offset, e.rows, e.cols};
}

Eigen::Map<const Eigen::MatrixXd> ParamLayout::view(const Eigen::VectorXd& flat, int idx) const {
  const Entry& e = entries[idx];
  return {flat.data() + e.offset, e.rows, e.cols};
}

namespace {

int head_count(const ModelSpec& spec) {
  return spec.kind == ModelKind::ManiPoseToy ? spec.num_hypotheses : 1;
}

int head_dim(const ModelSpec& spec) {
  return spec.kind == ModelKind::UnconstrainedRegressor ? spec.target_dim
                                                        : spec.chart.angle_dim();
}

Eigen::MatrixXd softmax_rows(const Eigen::MatrixXd& logits) {
  Eigen::MatrixXd probs(logits.rows(), logits.cols());
  for (Eigen::Index n = 0; n < logits.rows(); ++n) {
    const Eigen::RowVectorXd shifted = logits.row(n).array() - logits.row(n).maxCoeff();
    const Eigen::RowVectorXd expd = shifted.array().exp();
    probs.row(n) = expd / expd.sum();
  }
  return probs;
}

}  // namespace

Model make_model(const ModelSpec& spec, CounterRng& rng) {
  spec.validate();
  Model model;
  model.spec = spec;

  int fan_in = spec.input_dim;
  for (std::size_t i = 0; i < spec.hidden_dims.size(); ++i) {
    model.hidden_w.push_back(model.layout.add("hidden_w" + std::to_string(i),
                                              spec.hidden_dims[i], fan_in));
    model.hidden_b.push_back(model.layout.add("hidden_b" + std::to_string(i),
                                              spec.hidden_dims[i], 1));
    fan_in = spec.hidden_dims[i];
  }
  for (int k = 0; k < head_count(spec); ++k) {
    model.head_w.push_back(model.layout.add("head_w" + std::to_string(k), head_dim(spec), fan_in));
    model.head_b.push_back(model.layout.add("head_b" + std::to_string(k), head_dim(spec), 1));
  }
  if (spec.kind == ModelKind::ManiPoseToy) {
    model.logit_w = model.layout.add("logit_w", spec.num_hypotheses, fan_in);
    model.logit_b = model.layout.add("logit_b", spec.num_hypotheses, 1);
  }

  model.params.resize(model.layout.total);
  // Entries come in (weight, bias) pairs; both draw from the weight's
  // +-1/sqrt(fan-in) range.
  for (std::size_t e = 0; e < model.layout.entries.size(); e += 2) {
    const auto& weight = model.layout.entries[e];
    const auto& bias = model.layout.entries[e + 1];
    const double bound = 1.0 / std::sqrt(static_cast<double>(weight.cols));
    for (Eigen::Index i = 0; i < weight.rows * weight.cols; ++i)
      model.params[weight.offset + i] = rng.uniform(-bound, bound);
    for (Eigen::Index i = 0; i < bias.rows; ++i)
      model.params[bias.offset + i] = rng.uniform(-bound, bound);
  }
  return model;
}

Eigen::MatrixXd hidden_forward(const Model& model, const Eigen::MatrixXd& inputs,
                               ForwardCache* cache) {
  if (inputs.cols() != model.spec.input_dim)
    throw DimensionMismatch("hidden_forward: input width mismatch");
  if (cache) {
    cache->activations.clear();
    cache->activations.push_back(inputs);
  }
  Eigen::MatrixXd acts = inputs;
  for (std::size_t i = 0; i < model.hidden_w.size(); ++i) {
    const auto weight = model.layout.view(model.params, model.hidden_w[i]);
    const auto bias = model.layout.view(model.params, model.hidden_b[i]);
    acts = ((acts * weight.transpose()).rowwise() + bias.col(0).transpose()).array().tanh();
    if (cache) cache->activations.push_back(acts);
  }
  return acts;
}

HeadOutputs forward(const Model& model, const Eigen::MatrixXd& inputs, ForwardCache* cache) {
  const Eigen::MatrixXd trunk = hidden_forward(model, inputs, cache);
  HeadOutputs out;
  for (std::size_t k = 0; k < model.head_w.size(); ++k) {
    const auto weight = model.layout.view(model.params, model.head_w[k]);
    const auto bias = model.layout.view(model.params, model.head_b[k]);
    out.heads.push_back((trunk * weight.transpose()).rowwise() + bias.col(0).transpose());
  }
  if (model.logit_w >= 0) {
    const auto weight = model.layout.view(model.params, model.logit_w);
    const auto bias = model.layout.view(model.params, model.logit_b);
    out.logits = (trunk * weight.transpose()).rowwise() + bias.col(0).transpose();
  }
  return out;
}

namespace {

Eigen::MatrixXd decode_rows(const Chart& chart, const Eigen::MatrixXd& angles) {
  Eigen::MatrixXd coords(angles.rows(), chart.coord_dim());
  for (Eigen::Index n = 0; n < angles.rows(); ++n)
    coords.row(n) = chart.decode(angles.row(n).transpose()).transpose();
  return coords;
}

}  // namespace

ModelHypotheses predict_hypotheses(const Model& model, const Eigen::MatrixXd& inputs) {
  const HeadOutputs out = forward(model, inputs);
  ModelHypotheses hyp;
  switch (model.spec.kind) {
    case ModelKind::UnconstrainedRegressor:
      hyp.coords.push_back(out.heads[0]);
      break;
    case ModelKind::ConstrainedRegressor:
      hyp.coords.push_back(decode_rows(model.spec.chart, out.heads[0]));
      break;
    case ModelKind::ManiPoseToy:
      for (const auto& head : out.heads)
        hyp.coords.push_back(decode_rows(model.spec.chart, head));
      break;
  }
  hyp.scores = model.logit_w >= 0 ? softmax_rows(out.logits)
                                  : Eigen::MatrixXd::Ones(inputs.rows(), 1);
  return hyp;
}

Eigen::MatrixXd predict(const Model& model, const Eigen::MatrixXd& inputs) {
  const ModelHypotheses hyp = predict_hypotheses(model, inputs);
  Eigen::MatrixXd combined = Eigen::MatrixXd::Zero(inputs.rows(), model.spec.target_dim);
  for (std::size_t k = 0; k < hyp.coords.size(); ++k)
    combined += hyp.scores.col(k).asDiagonal() * hyp.coords[k];
  return combined;
}

namespace {

/// Mean per-joint Euclidean distance between flattened coordinate rows,
/// normalized by the full joint count (the root contributes zero).
double row_pose_error(const Eigen::RowVectorXd& pred, const Eigen::RowVectorXd& target,
                      int joint_count) {
  const int dims = static_cast<int>(pred.size()) / (joint_count - 1);
  double total = 0;
  for (int j = 0; j + 1 < joint_count; ++j)
    total += (pred.segment(j * dims, dims) - target.segment(j * dims, dims)).norm();
  return total / joint_count;
}

struct EvalWork {
  LossBreakdown loss;
  // Gradients w.r.t. raw head outputs and logits; empty when not requested.
  std::vector<Eigen::MatrixXd> d_heads;
  Eigen::MatrixXd d_logits;
};

EvalWork eval_objective(const Model& model, const HeadOutputs& out, const Eigen::MatrixXd& targets,
                        const LossConfig& cfg, bool with_grad) {
  const ModelSpec& spec = model.spec;
  const Eigen::Index count = targets.rows();
  const double inv_count = 1.0 / static_cast<double>(count);
  EvalWork work;
  if (with_grad) {
    for (const auto& head : out.heads) work.d_heads.push_back(Eigen::MatrixXd::Zero(head.rows(), head.cols()));
    if (out.logits.size() > 0) work.d_logits = Eigen::MatrixXd::Zero(out.logits.rows(), out.logits.cols());
  }

  if (spec.kind == ModelKind::UnconstrainedRegressor) {
    const Eigen::MatrixXd residual = out.heads[0] - targets;
    work.loss.total = work.loss.wta = residual.squaredNorm() * inv_count;
    if (with_grad) work.d_heads[0] = 2.0 * inv_count * residual;
    return work;
  }

  if (spec.kind == ModelKind::ConstrainedRegressor) {
    double total = 0;
    for (Eigen::Index n = 0; n < count; ++n) {
      const Eigen::VectorXd angles = out.heads[0].row(n).transpose();
      const Eigen::VectorXd residual = spec.chart.decode(angles) - targets.row(n).transpose();
      total += residual.squaredNorm();
      if (with_grad)
        work.d_heads[0].row(n) =
            (spec.chart.jacobian(angles).transpose() * (2.0 * inv_count * residual)).transpose();
    }
    work.loss.total = work.loss.wta = total * inv_count;
    return work;
  }

  // ManiPose: winner-takes-all over decoded hypotheses plus the scoring term.
  const int hypotheses = spec.num_hypotheses;
  const Eigen::MatrixXd scores = softmax_rows(out.logits);
  double wta = 0, scoring = 0;
  std::vector<Eigen::VectorXd> angle_rows(hypotheses);
  std::vector<Eigen::RowVectorXd> coord_rows(hypotheses);
  for (Eigen::Index n = 0; n < count; ++n) {
    int winner = 0;
    double best_err = std::numeric_limits<double>::infinity();
    for (int k = 0; k < hypotheses; ++k) {
      angle_rows[k] = out.heads[k].row(n).transpose();
      coord_rows[k] = spec.chart.decode(angle_rows[k]).transpose();
      const double err = row_pose_error(coord_rows[k], targets.row(n), spec.joint_count);
      if (err < best_err) {
        best_err = err;
        winner = k;
      }
    }
    wta += best_err;
    scoring += -std::log(std::max(scores(n, winner), kScoreClamp));
    if (!with_grad) continue;

    const int dims = spec.target_dim / (spec.joint_count - 1);
    Eigen::RowVectorXd d_coords = Eigen::RowVectorXd::Zero(spec.target_dim);
    for (int j = 0; j + 1 < spec.joint_count; ++j) {
      const Eigen::RowVectorXd residual =
          coord_rows[winner].segment(j * dims, dims) - targets.row(n).segment(j * dims, dims);
      const double norm = residual.norm();
      if (norm > 0)
        d_coords.segment(j * dims, dims) =
            residual / (norm * spec.joint_count) * inv_count;
    }
    work.d_heads[winner].row(n) =
        (spec.chart.jacobian(angle_rows[winner]).transpose() * d_coords.transpose()).transpose();
    work.d_logits.row(n) = cfg.beta * inv_count * scores.row(n);
    work.d_logits(n, winner) -= cfg.beta * inv_count;
  }
  work.loss.wta = wta * inv_count;
  work.loss.scoring = scoring * inv_count;
  work.loss.total = work.loss.wta + cfg.beta * work.loss.scoring;
  return work;
}

void backward_trunk(const Model& model, const ForwardCache& cache, const EvalWork& work,
                    Eigen::VectorXd& grad) {
  const auto& acts = cache.activations;
  const Eigen::MatrixXd& trunk = acts.back();
  Eigen::MatrixXd d_trunk = Eigen::MatrixXd::Zero(trunk.rows(), trunk.cols());

  for (std::size_t k = 0; k < model.head_w.size(); ++k) {
    const auto weight = model.layout.view(model.params, model.head_w[k]);
    model.layout.view(grad, model.head_w[k]) = work.d_heads[k].transpose() * trunk;
    model.layout.view(grad, model.head_b[k]).col(0) = work.d_heads[k].colwise().sum().transpose();
    d_trunk += work.d_heads[k] * weight;
  }
  if (model.logit_w >= 0) {
    const auto weight = model.layout.view(model.params, model.logit_w);
    model.layout.view(grad, model.logit_w) = work.d_logits.transpose() * trunk;
    model.layout.view(grad, model.logit_b).col(0) = work.d_logits.colwise().sum().transpose();
    d_trunk += work.d_logits * weight;
  }

  Eigen::MatrixXd d_act = std::move(d_trunk);
  for (int i = static_cast<int>(model.hidden_w.size()) - 1; i >= 0; --i) {
    const Eigen::MatrixXd d_pre = d_act.array() * (1.0 - acts[i + 1].array().square());
    const auto weight = model.layout.view(model.params, model.hidden_w[i]);
    model.layout.view(grad, model.hidden_w[i]) = d_pre.transpose() * acts[i];
    model.layout.view(grad, model.hidden_b[i]).col(0) = d_pre.colwise().sum().transpose();
    d_act = d_pre * weight;
  }
}

}  // namespace

LossBreakdown model_loss(const Model& model, const Eigen::MatrixXd& inputs,
                         const Eigen::MatrixXd& targets, const LossConfig& cfg) {
  if (inputs.rows() != targets.rows() || targets.cols() != model.spec.target_dim)
    throw DimensionMismatch("model_loss: batch shape mismatch");
  const HeadOutputs out = forward(model, inputs);
  return eval_objective(model, out, targets, cfg, /*with_grad=*/false).loss;
}

LossBreakdown model_loss_grad(const Model& model, const Eigen::MatrixXd& inputs,
                              const Eigen::MatrixXd& targets, const LossConfig& cfg,
                              Eigen::VectorXd& grad) {
  if (inputs.rows() != targets.rows() || targets.cols() != model.spec.target_dim)
    throw DimensionMismatch("model_loss_grad: batch shape mismatch");
  ForwardCache cache;
  const HeadOutputs out = forward(model, inputs, &cache);
  const EvalWork work = eval_objective(model, out, targets, cfg, /*with_grad=*/true);
  grad = Eigen::VectorXd::Zero(model.params.size());
  backward_trunk(model, cache, work, grad);
  return work.loss;
}

AdamState make_adam_state(Eigen::Index size) {
  AdamState state;
  state.first_moment = Eigen::VectorXd::Zero(size);
  state.second_moment = Eigen::VectorXd::Zero(size);
  return state;
}

void adam_step(Eigen::VectorXd& params, const Eigen::VectorXd& grad, AdamState& state, double lr,
               double weight_decay, double beta1, double beta2, double eps) {
  if (grad.size() != params.size() || state.first_moment.size() != params.size())
    throw DimensionMismatch("adam_step: size mismatch");
  ++state.step;
  const Eigen::VectorXd effective =
      weight_decay > 0 ? Eigen::VectorXd(grad + weight_decay * params) : grad;
  state.first_moment = beta1 * state.first_moment + (1.0 - beta1) * effective;
  state.second_moment =
      beta2 * state.second_moment + (1.0 - beta2) * effective.cwiseProduct(effective);
  const double bias1 = 1.0 - std::pow(beta1, static_cast<double>(state.step));
  const double bias2 = 1.0 - std::pow(beta2, static_cast<double>(state.step));
  params.array() -= lr * (state.first_moment.array() / bias1) /
                    ((state.second_moment.array() / bias2).sqrt() + eps);
}

double PlateauScheduler::step(double validation_loss) {
  if (validation_loss < best_ - cfg_.threshold) {
    best_ = validation_loss;
    bad_epochs_ = 0;
  } else if (++bad_epochs_ >= cfg_.patience) {
    lr_ *= cfg_.factor;
    bad_epochs_ = 0;
  }
  return lr_;
}

TrainResult train(const ModelSpec& spec, const Eigen::MatrixXd& train_inputs,
                  const Eigen::MatrixXd& train_targets, const Eigen::MatrixXd& val_inputs,
                  const Eigen::MatrixXd& val_targets, const TrainConfig& cfg) {
  if (cfg.learning_rate <= 0 || cfg.batch_size <= 0)
    throw std::invalid_argument("train: learning rate and batch size must be positive");
  CounterRng base(cfg.seed);
  CounterRng init_rng = base.derived(0);
  CounterRng shuffle_rng = base.derived(1);

  Model model = make_model(spec, init_rng);
  AdamState adam = make_adam_state(model.params.size());
  PlateauScheduler scheduler(cfg.learning_rate, cfg.scheduler);
  LossConfig loss_cfg;
  loss_cfg.beta = cfg.beta;

  const Eigen::Index count = train_inputs.rows();
  std::vector<Eigen::Index> order(count);
  for (Eigen::Index i = 0; i < count; ++i) order[i] = i;

  TrainResult result;
  result.best_val_loss = std::numeric_limits<double>::infinity();
  Eigen::VectorXd best_params = model.params;
  Eigen::VectorXd grad;
  Eigen::MatrixXd batch_x, batch_y;
  double lr = cfg.learning_rate;

  for (int epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    for (Eigen::Index i = count - 1; i > 0; --i)
      std::swap(order[i], order[shuffle_rng.next_below(static_cast<std::uint64_t>(i) + 1)]);

    double epoch_loss = 0;
    for (Eigen::Index start = 0; start < count; start += cfg.batch_size) {
      const Eigen::Index size = std::min<Eigen::Index>(cfg.batch_size, count - start);
      batch_x.resize(size, train_inputs.cols());
      batch_y.resize(size, train_targets.cols());
      for (Eigen::Index i = 0; i < size; ++i) {
        batch_x.row(i) = train_inputs.row(order[start + i]);
        batch_y.row(i) = train_targets.row(order[start + i]);
      }
      const LossBreakdown loss = model_loss_grad(model, batch_x, batch_y, loss_cfg, grad);
      if (!std::isfinite(loss.total))
        throw TrainingDiverged("train: non-finite loss at epoch " + std::to_string(epoch), epoch);
      adam_step(model.params, grad, adam, lr, cfg.weight_decay);
      epoch_loss += loss.total * static_cast<double>(size);
    }
    epoch_loss /= static_cast<double>(count);

    const double val_loss = model_loss(model, val_inputs, val_targets, loss_cfg).total;
    if (!std::isfinite(val_loss))
      throw TrainingDiverged("train: non-finite validation loss at epoch " + std::to_string(epoch),
                             epoch);
    result.history.push_back({epoch_loss, val_loss, lr});
    if (val_loss < result.best_val_loss) {
      result.best_val_loss = val_loss;
      result.best_epoch = epoch;
      best_params = model.params;
    }
    lr = scheduler.step(val_loss);
  }

  result.final_val_loss = result.history.empty() ? 0.0 : result.history.back().val_loss;
  model.params = best_params;
  result.model = std::move(model);
  return result;
}

namespace {

constexpr int kCheckpointSchema = 1;

json chart_to_json(const Chart& chart) {
  return {{"kind", chart.kind == Chart::Kind::Circle ? "circle" : "torus"},
          {"s0", chart.s0},
          {"s1", chart.s1}};
}

Chart chart_from_json(const json& j) {
  Chart chart;
  chart.kind = j.at("kind") == "torus" ? Chart::Kind::Torus : Chart::Kind::Circle;
  chart.s0 = j.at("s0").get<double>();
  chart.s1 = j.at("s1").get<double>();
  return chart;
}

}  // namespace

void save_checkpoint(const Model& model, const std::string& path_prefix) {
  json manifest = {
      {"schema_version", kCheckpointSchema},
      {"kind", model_kind_name(model.spec.kind)},
      {"num_hypotheses", model.spec.num_hypotheses},
      {"input_dim", model.spec.input_dim},
      {"hidden_dims", model.spec.hidden_dims},
      {"chart", chart_to_json(model.spec.chart)},
      {"target_dim", model.spec.target_dim},
      {"joint_count", model.spec.joint_count},
      {"param_count", model.params.size()},
      {"blob", path_prefix.substr(path_prefix.find_last_of('/') + 1) + ".params.bin"},
  };
  std::ofstream manifest_out(path_prefix + ".json");
  if (!manifest_out) throw std::runtime_error("save_checkpoint: cannot write " + path_prefix + ".json");
  manifest_out << manifest.dump(2) << "\n";

  std::ofstream blob(path_prefix + ".params.bin", std::ios::binary);
  if (!blob) throw std::runtime_error("save_checkpoint: cannot write parameter blob");
  blob.write(reinterpret_cast<const char*>(model.params.data()),
             static_cast<std::streamsize>(model.params.size() * sizeof(double)));
}

Model load_checkpoint(const std::string& path_prefix) {
  std::ifstream manifest_in(path_prefix + ".json");
  if (!manifest_in) throw std::runtime_error("load_checkpoint: cannot read " + path_prefix + ".json");
  json manifest = json::parse(manifest_in);
  if (manifest.at("schema_version").get<int>() != kCheckpointSchema)
    throw std::runtime_error("load_checkpoint: unsupported schema version");

  ModelSpec spec;
  spec.kind = model_kind_from_name(manifest.at("kind").get<std::string>());
  spec.num_hypotheses = manifest.at("num_hypotheses").get<int>();
  spec.input_dim = manifest.at("input_dim").get<int>();
  spec.hidden_dims = manifest.at("hidden_dims").get<std::vector<int>>();
  spec.chart = chart_from_json(manifest.at("chart"));
  spec.target_dim = manifest.at("target_dim").get<int>();
  spec.joint_count = manifest.at("joint_count").get<int>();

  CounterRng rng(0);
  Model model = make_model(spec, rng);
  if (model.params.size() != manifest.at("param_count").get<Eigen::Index>())
    throw std::runtime_error("load_checkpoint: parameter count mismatch");

  std::ifstream blob(path_prefix + ".params.bin", std::ios::binary);
  if (!blob) throw std::runtime_error("load_checkpoint: cannot read parameter blob");
  blob.read(reinterpret_cast<char*>(model.params.data()),
            static_cast<std::streamsize>(model.params.size() * sizeof(double)));
  if (blob.gcount() != static_cast<std::streamsize>(model.params.size() * sizeof(double)))
    throw std::runtime_error("load_checkpoint: parameter blob truncated");
  return model;
}

}  // namespace manilift
