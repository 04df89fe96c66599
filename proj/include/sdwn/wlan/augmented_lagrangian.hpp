#pragma once

#include <functional>

#include <Eigen/Dense>

namespace sdwn::wlan {

/// Values and first derivatives of a smooth problem at one point.
struct Evaluation {
  double objective = 0.0;
  Eigen::VectorXd gradient;     // d objective / dx
  Eigen::VectorXd constraints;  // g_k(x), feasible when >= 0
  Eigen::MatrixXd jacobian;     // constraints x dim
};

/// maximize f(x) subject to g(x) >= 0 and lower <= x <= upper.
struct BoxProblem {
  Eigen::VectorXd lower;
  Eigen::VectorXd upper;
  std::size_t constraint_count = 0;
  std::function<void(const Eigen::VectorXd&, Evaluation&)> evaluate;

  std::size_t dim() const { return static_cast<std::size_t>(lower.size()); }
};

struct AlSettings {
  int max_iterations = 20000;       // projected-gradient steps, all outer rounds together
  int max_outer_iterations = 40;
  double initial_step = 1.0;
  double constraint_tolerance = 1e-5;
  double stationarity_tolerance = 1e-7;
  double initial_penalty = 100.0;
  double max_penalty = 1e9;
};

struct AlResult {
  Eigen::VectorXd x;
  Evaluation at;
  double max_violation = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// Augmented-Lagrangian outer loop (PHR multipliers for inequalities) around
/// projected gradient ascent with Armijo backtracking on the box.
AlResult maximize_augmented_lagrangian(const BoxProblem& problem, Eigen::VectorXd x0,
                                       const AlSettings& settings);

}  // namespace sdwn::wlan
