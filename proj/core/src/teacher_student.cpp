#include "lrlab/teacher_student.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace lrlab {

double activation_value(Activation a, double x) {
  switch (a) {
    case Activation::ErfScaled:
      return std::erf(x / std::numbers::sqrt2);
    case Activation::Relu:
      return x > 0.0 ? x : 0.0;
  }
  return 0.0;
}

double activation_derivative(Activation a, double x) {
  switch (a) {
    case Activation::ErfScaled:
      return std::sqrt(2.0 / std::numbers::pi) * std::exp(-0.5 * x * x);
    case Activation::Relu:
      return x > 0.0 ? 1.0 : 0.0;
  }
  return 0.0;
}

double TwoLayerNet::forward(std::span<const double> x) const {
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(input_dim()));
  double out = 0.0;
  for (int k = 0; k < width(); ++k) {
    const double* wk = w.row(k);
    double pre = 0.0;
    for (int i = 0; i < input_dim(); ++i) pre += wk[i] * x[i];
    out += v[k] * activation_value(activation, pre * inv_sqrt_n);
  }
  return out;
}

void validate(const TSConfig& cfg) {
  if (cfg.input_dim < 1 || cfg.dataset_size < 1 || cfg.teacher_width < 1 ||
      cfg.student_width < 1)
    throw std::invalid_argument("teacher-student: dimensions must be >= 1");
  if (cfg.batch < 1)
    throw std::invalid_argument("teacher-student: batch must be >= 1");
  if (cfg.steps < 0)
    throw std::invalid_argument("teacher-student: steps must be >= 0");
  if (cfg.eval_stride < 1)
    throw std::invalid_argument("teacher-student: eval_stride must be >= 1");
}

TSTask generate_task(const TSConfig& cfg) {
  validate(cfg);
  TSTask task;
  Rng rng(cfg.seed);

  task.teacher.activation = cfg.activation;
  task.teacher.w = Matrix(cfg.teacher_width, cfg.input_dim);
  for (int k = 0; k < cfg.teacher_width; ++k)
    for (int i = 0; i < cfg.input_dim; ++i)
      task.teacher.w(k, i) = rng.normal();
  task.teacher.v.assign(cfg.teacher_width, 1.0);

  task.inputs = Matrix(cfg.dataset_size, cfg.input_dim);
  for (int p = 0; p < cfg.dataset_size; ++p)
    for (int i = 0; i < cfg.input_dim; ++i) task.inputs(p, i) = rng.normal();

  task.targets.resize(cfg.dataset_size);
  for (int p = 0; p < cfg.dataset_size; ++p)
    task.targets[p] = task.teacher.forward(task.inputs.row_span(p));

  task.underparameterized = cfg.student_width < cfg.teacher_width;
  task.overloaded = cfg.dataset_size >=
                    cfg.student_width * static_cast<long>(cfg.input_dim);
  if (task.underparameterized)
    std::fprintf(stderr,
                 "teacher-student: student width %d below teacher width %d; "
                 "the ground state may be unreachable\n",
                 cfg.student_width, cfg.teacher_width);
  if (task.overloaded)
    std::fprintf(stderr,
                 "teacher-student: P = %d not below K N = %ld; interpolation "
                 "is not guaranteed\n",
                 cfg.dataset_size,
                 cfg.student_width * static_cast<long>(cfg.input_dim));
  return task;
}

TwoLayerNet init_student(const TSConfig& cfg, Rng& rng) {
  TwoLayerNet net;
  net.activation = cfg.activation;
  net.w = Matrix(cfg.student_width, cfg.input_dim);
  for (int k = 0; k < cfg.student_width; ++k)
    for (int i = 0; i < cfg.input_dim; ++i) net.w(k, i) = rng.normal();
  net.v.resize(cfg.student_width);
  for (double& v : net.v) v = rng.normal();
  return net;
}

void sgd_step(TwoLayerNet& net, const Matrix& inputs,
              std::span<const double> targets,
              std::span<const int> batch_indices, double eta) {
  const int n = net.input_dim();
  const int k_width = net.width();
  const int b = static_cast<int>(batch_indices.size());
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n));

  std::vector<double> pre(static_cast<std::size_t>(b) * k_width);
  std::vector<double> err(b);
  for (int m = 0; m < b; ++m) {
    const double* x = inputs.row(batch_indices[m]);
    double out = 0.0;
    for (int k = 0; k < k_width; ++k) {
      const double* wk = net.w.row(k);
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += wk[i] * x[i];
      const double a = acc * inv_sqrt_n;
      pre[static_cast<std::size_t>(m) * k_width + k] = a;
      out += net.v[k] * activation_value(net.activation, a);
    }
    err[m] = out - targets[batch_indices[m]];
    if (!std::isfinite(err[m]))
      throw std::runtime_error("teacher-student: diverged (non-finite error)");
  }

  // gradients evaluated at the pre-update parameters
  const std::vector<double> v_old = net.v;
  const double scale = 2.0 * eta / b;
  for (int m = 0; m < b; ++m) {
    const double* x = inputs.row(batch_indices[m]);
    for (int k = 0; k < k_width; ++k) {
      const double a = pre[static_cast<std::size_t>(m) * k_width + k];
      const double gval = activation_value(net.activation, a);
      const double gder = activation_derivative(net.activation, a);
      const double dv = scale * err[m] * gval;
      const double dw = scale * err[m] * v_old[k] * gder * inv_sqrt_n;
      net.v[k] -= dv;
      double* wk = net.w.row(k);
      for (int i = 0; i < n; ++i) wk[i] -= dw * x[i];
    }
  }
}

double dataset_mse(const TwoLayerNet& net, const Matrix& inputs,
                   std::span<const double> targets) {
  double acc = 0.0;
  for (int p = 0; p < inputs.rows(); ++p) {
    const double d = net.forward(inputs.row_span(p)) - targets[p];
    acc += d * d;
  }
  return acc / inputs.rows();
}

Trajectory train_on(const TSConfig& cfg, const TSTask& task) {
  validate(cfg);
  Rng rng(cfg.seed + 0x9e3779b97f4a7c15ULL);  // distinct stream from the task
  TwoLayerNet student = init_student(cfg, rng);

  Trajectory traj({"step", "eta", "mse_train"});
  std::vector<int> batch(cfg.batch);
  const bool full_batch = cfg.batch == cfg.dataset_size;
  if (full_batch)
    for (int i = 0; i < cfg.batch; ++i) batch[i] = i;
  traj.add_row({0.0, cfg.schedule.eta_at(0.0),
                dataset_mse(student, task.inputs, task.targets)});
  for (long s = 1; s <= cfg.steps; ++s) {
    const double t = static_cast<double>(s);  // one step is one time unit
    const double eta = cfg.schedule.eta_at(t);
    if (!full_batch)
      for (int& idx : batch)
        idx = static_cast<int>(rng.uniform_below(cfg.dataset_size));
    sgd_step(student, task.inputs, task.targets, batch, eta);
    if (s % cfg.eval_stride == 0 || s == cfg.steps)
      traj.add_row({t, eta, dataset_mse(student, task.inputs, task.targets)});
  }
  return traj;
}

Trajectory train(const TSConfig& cfg) {
  const TSTask task = generate_task(cfg);
  return train_on(cfg, task);
}

}  // namespace lrlab
