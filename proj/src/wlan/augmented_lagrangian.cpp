#include "sdwn/wlan/augmented_lagrangian.hpp"

#include <algorithm>
#include <cmath>

namespace sdwn::wlan {

namespace {

struct Merit {
  double value = 0.0;
  Eigen::VectorXd gradient;
};

// Minimization form of the PHR augmented Lagrangian for g(x) >= 0.
Merit merit(const Evaluation& e, const Eigen::VectorXd& lambda, double rho) {
  Merit m;
  m.value = -e.objective;
  m.gradient = -e.gradient;
  for (Eigen::Index k = 0; k < e.constraints.size(); ++k) {
    const double shifted = std::max(0.0, lambda(k) - rho * e.constraints(k));
    m.value += (shifted * shifted - lambda(k) * lambda(k)) / (2.0 * rho);
    if (shifted > 0.0) m.gradient -= shifted * e.jacobian.row(k).transpose();
  }
  return m;
}

double violation(const Evaluation& e) {
  double v = 0.0;
  for (Eigen::Index k = 0; k < e.constraints.size(); ++k) v = std::max(v, -e.constraints(k));
  return v;
}

}  // namespace

AlResult maximize_augmented_lagrangian(const BoxProblem& problem, Eigen::VectorXd x0,
                                       const AlSettings& settings) {
  const auto project = [&](const Eigen::VectorXd& v) -> Eigen::VectorXd {
    return v.cwiseMax(problem.lower).cwiseMin(problem.upper);
  };
  const auto k_count = static_cast<Eigen::Index>(problem.constraint_count);

  AlResult r;
  r.x = project(x0);
  problem.evaluate(r.x, r.at);
  Eigen::VectorXd lambda = Eigen::VectorXd::Zero(k_count);
  double rho = settings.initial_penalty;
  double step = settings.initial_step;
  double prev_violation = violation(r.at);

  if (k_count == 0) rho = 1.0;  // merit reduces to -f

  for (int outer = 0; outer < settings.max_outer_iterations; ++outer) {
    Merit m = merit(r.at, lambda, rho);
    bool stationary = false;
    while (r.iterations < settings.max_iterations) {
      const Eigen::VectorXd unit = project(r.x - m.gradient);
      if ((unit - r.x).lpNorm<Eigen::Infinity>() <= settings.stationarity_tolerance) {
        stationary = true;
        break;
      }
      ++r.iterations;
      double s = std::min(step * 2.0, 1e6);
      Evaluation trial_eval;
      Eigen::VectorXd trial;
      Merit trial_merit;
      bool accepted = false;
      for (int bt = 0; bt < 60; ++bt) {
        trial = project(r.x - s * m.gradient);
        const Eigen::VectorXd d = trial - r.x;
        if (d.lpNorm<Eigen::Infinity>() == 0.0) break;
        problem.evaluate(trial, trial_eval);
        trial_merit = merit(trial_eval, lambda, rho);
        if (trial_merit.value <= m.value + m.gradient.dot(d) + d.squaredNorm() / (2.0 * s)) {
          accepted = true;
          break;
        }
        s *= 0.5;
      }
      if (!accepted) {
        stationary = true;  // no representable descent step left
        break;
      }
      step = s;
      r.x = std::move(trial);
      r.at = std::move(trial_eval);
      m = std::move(trial_merit);
    }

    const double v = violation(r.at);
    if (k_count == 0 || (v <= settings.constraint_tolerance && stationary)) {
      r.converged = stationary;
      break;
    }
    if (r.iterations >= settings.max_iterations) break;
    for (Eigen::Index k = 0; k < k_count; ++k) {
      lambda(k) = std::max(0.0, lambda(k) - rho * r.at.constraints(k));
    }
    if (v > 0.25 * prev_violation) rho = std::min(rho * 10.0, settings.max_penalty);
    prev_violation = v;
  }
  r.max_violation = violation(r.at);
  return r;
}

}  // namespace sdwn::wlan
