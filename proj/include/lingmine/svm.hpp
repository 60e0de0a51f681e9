#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "lingmine/core.hpp"

namespace lingmine {

struct LinearModel {
  std::vector<double> w;
  double b = 0.0;
  double lambda = 1.0;

  int dim() const { return static_cast<int>(w.size()); }
};

struct TrainSet {
  std::vector<std::vector<double>> X;
  std::vector<int> y;  // +1 (OFF) / -1 (NOT)
};

struct SvmTrainOptions {
  double lambda = 1.0;
  std::size_t max_iters = 10000;
  double tol = 1e-8;
  std::vector<double>* objective_trace = nullptr;  // objective after each accepted step
};

namespace svm_detail {

inline void check_set(const TrainSet& set) {
  if (set.X.empty() || set.X.size() != set.y.size())
    throw data_error("svm: training set is empty or sizes disagree");
  bool pos = false, neg = false;
  const std::size_t dim = set.X[0].size();
  for (std::size_t i = 0; i < set.X.size(); ++i) {
    if (set.X[i].size() != dim) throw data_error("svm: inconsistent feature dimensions");
    for (double v : set.X[i])
      if (!std::isfinite(v)) throw data_error("svm: non-finite feature value");
    if (set.y[i] == 1)
      pos = true;
    else if (set.y[i] == -1)
      neg = true;
    else
      throw data_error("svm: labels must be +1 or -1");
  }
  if (!pos || !neg) throw data_error("svm: training set must contain both classes");
}

inline double margin(const LinearModel& m, const std::vector<double>& x) {
  if (x.size() != m.w.size()) throw data_error("svm: feature dimension mismatch");
  double s = m.b;
  for (std::size_t d = 0; d < x.size(); ++d) s += m.w[d] * x[d];
  return s;
}

}  // namespace svm_detail

// (1/2) sum_i max(0, 1 - y_i (w.x_i + b))^2 + lambda * |w|^2 ; bias unregularized.
inline double loss(const LinearModel& m, const TrainSet& set) {
  double total = 0.0;
  for (std::size_t i = 0; i < set.X.size(); ++i) {
    double h = 1.0 - set.y[i] * svm_detail::margin(m, set.X[i]);
    if (h > 0) total += 0.5 * h * h;
  }
  for (double w : m.w) total += m.lambda * w * w;
  return total;
}

namespace svm_detail {

inline void gradient(const LinearModel& m, const TrainSet& set, std::vector<double>& gw,
                     double& gb) {
  gw.assign(m.w.size(), 0.0);
  gb = 0.0;
  for (std::size_t i = 0; i < set.X.size(); ++i) {
    double h = 1.0 - set.y[i] * margin(m, set.X[i]);
    if (h <= 0) continue;
    double c = -h * set.y[i];
    for (std::size_t d = 0; d < m.w.size(); ++d) gw[d] += c * set.X[i][d];
    gb += c;
  }
  for (std::size_t d = 0; d < m.w.size(); ++d) gw[d] += 2.0 * m.lambda * m.w[d];
}

}  // namespace svm_detail

// Full-batch gradient descent with Armijo backtracking. Deterministic; the
// objective never increases on an accepted step.
inline LinearModel train_svm(const TrainSet& set, const SvmTrainOptions& opt = {}) {
  svm_detail::check_set(set);
  if (opt.lambda < 0) throw config_error("svm: lambda must be >= 0");

  LinearModel m;
  m.w.assign(set.X[0].size(), 0.0);
  m.lambda = opt.lambda;

  std::vector<double> gw;
  double gb = 0.0;
  double f = loss(m, set);
  double step = 1.0;
  const double armijo_c = 1e-4;
  if (opt.objective_trace) opt.objective_trace->push_back(f);

  for (std::size_t iter = 0; iter < opt.max_iters; ++iter) {
    svm_detail::gradient(m, set, gw, gb);
    double gnorm2 = gb * gb;
    for (double g : gw) gnorm2 += g * g;
    if (gnorm2 == 0.0) break;

    double t = step * 2.0;  // warm-start from the last accepted step
    LinearModel trial = m;
    double f_trial = f;
    bool accepted = false;
    while (t > 1e-20) {
      for (std::size_t d = 0; d < m.w.size(); ++d) trial.w[d] = m.w[d] - t * gw[d];
      trial.b = m.b - t * gb;
      f_trial = loss(trial, set);
      if (f_trial <= f - armijo_c * t * gnorm2) {
        accepted = true;
        break;
      }
      t *= 0.5;
    }
    if (!accepted) break;
    step = t;
    double rel = std::abs(f - f_trial) / std::max(1.0, std::abs(f));
    m = trial;
    f = f_trial;
    if (opt.objective_trace) opt.objective_trace->push_back(f);
    if (rel < opt.tol) break;
  }
  return m;
}

// Margin >= 0 maps to OFF; ties go to the offensive class.
inline Label predict(const LinearModel& m, const std::vector<double>& x) {
  return svm_detail::margin(m, x) >= 0.0 ? Label::OFF : Label::NOT;
}

inline double decision_value(const LinearModel& m, const std::vector<double>& x) {
  return svm_detail::margin(m, x);
}

}  // namespace lingmine
