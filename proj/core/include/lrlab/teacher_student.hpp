#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lrlab/matrix.hpp"
#include "lrlab/rng.hpp"
#include "lrlab/schedule.hpp"
#include "lrlab/trajectory.hpp"

namespace lrlab {

enum class Activation { ErfScaled, Relu };

/// Two-layer network S(x) = sum_k v_k g(w_k . x / sqrt(N)).
struct TwoLayerNet {
  Matrix w;               // width x input_dim
  std::vector<double> v;  // second layer
  Activation activation = Activation::ErfScaled;

  int width() const { return w.rows(); }
  int input_dim() const { return w.cols(); }
  double forward(std::span<const double> x) const;
};

double activation_value(Activation a, double x);
double activation_derivative(Activation a, double x);

struct TSConfig {
  int input_dim = 0;      // N
  int dataset_size = 0;   // P
  int teacher_width = 0;  // M
  int student_width = 0;  // K
  int batch = 1;          // B
  Activation activation = Activation::ErfScaled;
  Schedule schedule = Schedule::constant(0.1);
  long steps = 0;
  std::uint64_t seed = 0;
  int eval_stride = 100;
};

void validate(const TSConfig& cfg);

struct TSTask {
  TwoLayerNet teacher;
  Matrix inputs;                // P x N
  std::vector<double> targets;  // P
  bool underparameterized = false;  // K < M warning, run proceeds
  bool overloaded = false;          // P >= K N warning, run proceeds
};

/// Teacher first layer standard normal, second layer all ones; inputs
/// i.i.d. standard normal; targets by forward pass. Deterministic per
/// seed. K < M and P >= K N only warn.
TSTask generate_task(const TSConfig& cfg);

/// Student with standard normal first and second layer.
TwoLayerNet init_student(const TSConfig& cfg, Rng& rng);

/// One SGD step on the batch objective (1/B) sum (S - y)^2, exact
/// gradient through both layers.
void sgd_step(TwoLayerNet& net, const Matrix& inputs,
              std::span<const double> targets,
              std::span<const int> batch_indices, double eta);

/// Full-dataset mse (1/P) sum (S - y)^2.
double dataset_mse(const TwoLayerNet& net, const Matrix& inputs,
                   std::span<const double> targets);

/// Columns: step, eta, mse_train. One SGD step advances t by one unit
/// for schedule purposes; batches drawn uniformly with replacement.
Trajectory train(const TSConfig& cfg);
Trajectory train_on(const TSConfig& cfg, const TSTask& task);

}  // namespace lrlab
