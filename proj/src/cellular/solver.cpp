#include "sdwn/cellular/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <optional>

#include "sdwn/cellular/baseline.hpp"

namespace sdwn::cellular {

void CellularSolverOptions::validate() const {
  if (power_levels <= 0 || max_outer_iterations <= 0 || !(convergence_tolerance > 0.0) ||
      !(reservation_tolerance > 0.0) || !(scaling_tolerance > 0.0) || !(pf_floor > 0.0)) {
    throw ConfigError("cellular solver options must all be strictly positive");
  }
}

void CellularProblem::validate() const {
  gains.validate();
  if (budgets.size() != gains.bss()) throw ConfigError("cellular problem: one power budget per BS required");
  for (double p : budgets) {
    if (!(p > 0.0) || !std::isfinite(p)) throw ConfigError("cellular problem: power budgets must be positive");
  }
  if (!(noise_power > 0.0)) throw ConfigError("cellular problem: noise power must be positive");
  validate_cellular_slices(slices, gains.users());
  for (const auto& w : warm_starts) {
    if (w.users() != gains.users() || w.bss() != gains.bss() || w.subcarriers() != gains.subcarriers()) {
      throw ConfigError("cellular problem: warm start dimensions differ from the gain tensor");
    }
    w.validate(budgets);
  }
}

double cellular_utility(const Eigen::VectorXd& rates, CellularObjective objective, double pf_floor) {
  if (objective == CellularObjective::sum_rate) return rates.sum();
  double u = 0.0;
  for (Eigen::Index i = 0; i < rates.size(); ++i) u += std::log(pf_floor + rates(i));
  return u;
}

bool meets_reservations(const Eigen::VectorXd& rates, const std::vector<SliceSpec>& slices, double scale,
                        double tolerance) {
  for (const auto& s : slices) {
    double t = 0.0;
    for (std::size_t u : s.user_ids) t += rates(static_cast<Eigen::Index>(u));
    if (t < scale * s.reservation - tolerance) return false;
  }
  return true;
}

namespace {

// Weight on total rate while maximizing reservation slack, so ties among
// equally feasible points still prefer more throughput.
constexpr double kSlackTieWeight = 1e-3;
constexpr double kPenaltySchedule[] = {10.0, 1e3};

enum class Mode { objective, slack };

struct Tracker {
  const std::vector<SliceSpec>* slices = nullptr;
  CellularObjective objective = CellularObjective::sum_rate;
  double pf_floor = 2.0;
  double scale = 1.0;
  double tolerance = 1e-3;
  std::optional<CellularAllocation> best;
  Eigen::VectorXd best_rates;
  double best_utility = -std::numeric_limits<double>::infinity();

  void offer(const CellularAllocation& a, const Eigen::VectorXd& r) {
    if (!meets_reservations(r, *slices, scale, tolerance)) return;
    const double u = cellular_utility(r, objective, pf_floor);
    if (!best || u > best_utility + 1e-12 * std::max(1.0, std::abs(best_utility))) {
      best = a;
      best_rates = r;
      best_utility = u;
    }
  }
};

class Engine {
 public:
  Engine(const CellularProblem& problem, const CellularSolverOptions& options, double scale, double mu,
         Mode mode, Tracker& tracker)
      : p_(problem), o_(options), scale_(scale), mu_(mu), mode_(mode), tracker_(tracker),
        slice_of_(problem.gains.users(), -1) {
    for (std::size_t k = 0; k < p_.slices.size(); ++k) {
      for (std::size_t u : p_.slices[k].user_ids) slice_of_[u] = static_cast<int>(k);
    }
  }

  void run(CellularAllocation a) {
    tracker_.offer(a, rates(a));
    double v = resource_step(a);
    for (int outer = 0; outer < o_.max_outer_iterations; ++outer) {
      if (!association_step(a, v)) break;
    }
  }

 private:
  Eigen::VectorXd rates(const CellularAllocation& a) const { return user_rates(a, p_.gains, p_.noise_power); }

  Eigen::VectorXd slice_totals(const Eigen::VectorXd& r) const {
    Eigen::VectorXd t = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(p_.slices.size()));
    for (std::size_t k = 0; k < p_.slices.size(); ++k) {
      for (std::size_t u : p_.slices[k].user_ids) t(static_cast<Eigen::Index>(k)) += r(static_cast<Eigen::Index>(u));
    }
    return t;
  }

  double value(const Eigen::VectorXd& r) const {
    double v = mode_ == Mode::objective ? cellular_utility(r, o_.objective, o_.pf_floor) : kSlackTieWeight * r.sum();
    if (mu_ > 0.0) {
      const Eigen::VectorXd t = slice_totals(r);
      for (std::size_t k = 0; k < p_.slices.size(); ++k) {
        v -= mu_ * std::max(0.0, scale_ * p_.slices[k].reservation - t(static_cast<Eigen::Index>(k)));
      }
    }
    return v;
  }

  double evaluate(const CellularAllocation& a) const {
    const Eigen::VectorXd r = rates(a);
    tracker_.offer(a, r);
    return value(r);
  }

  double marginal_weight(double rate, bool slice_short) const {
    double w = 0.0;
    if (mode_ == Mode::slack) {
      w = kSlackTieWeight;
    } else if (o_.objective == CellularObjective::sum_rate) {
      w = 1.0;
    } else {
      w = 1.0 / (o_.pf_floor + rate);
    }
    return slice_short ? w + mu_ : w;
  }

  // Weighted water-filling at BS b with every other BS frozen. Subcarriers that
  // end with zero power are released.
  void water_fill(CellularAllocation& a, std::size_t b) const {
    const auto bi = static_cast<Eigen::Index>(b);
    const std::size_t n_sc = a.subcarriers();
    const double budget = p_.budgets[b];
    std::vector<std::size_t> held;
    std::vector<double> h(n_sc, 0.0);
    for (std::size_t n = 0; n < n_sc; ++n) {
      const int u = a.owner(bi, static_cast<Eigen::Index>(n));
      if (u == kUnassigned) continue;
      double interference = p_.noise_power;
      for (std::size_t o = 0; o < a.bss(); ++o) {
        if (o != b) {
          interference += a.power(static_cast<Eigen::Index>(o), static_cast<Eigen::Index>(n)) *
                          p_.gains(static_cast<std::size_t>(u), o, n);
        }
      }
      h[n] = p_.gains(static_cast<std::size_t>(u), b, n) / interference;
      held.push_back(n);
    }
    if (held.empty()) {
      a.power.row(bi).setZero();
      return;
    }

    // Slice totals without this BS's contribution, which is recomputed below.
    Eigen::VectorXd r = rates(a);
    Eigen::VectorXd own = Eigen::VectorXd::Zero(r.size());
    for (std::size_t n : held) {
      const int u = a.owner(bi, static_cast<Eigen::Index>(n));
      own(u) += std::log2(1.0 + a.power(bi, static_cast<Eigen::Index>(n)) * h[n]);
    }
    const Eigen::VectorXd base_rates = r - own;

    const int rounds = (mode_ == Mode::objective && o_.objective == CellularObjective::sum_rate && mu_ == 0.0) ? 1 : 8;
    std::vector<double> p(n_sc, 0.0);
    for (std::size_t n : held) p[n] = a.power(bi, static_cast<Eigen::Index>(n));
    for (int round = 0; round < rounds; ++round) {
      Eigen::VectorXd cur = base_rates;
      for (std::size_t n : held) cur(a.owner(bi, static_cast<Eigen::Index>(n))) += std::log2(1.0 + p[n] * h[n]);
      const Eigen::VectorXd totals = slice_totals(cur);
      std::vector<double> w(n_sc, 0.0);
      for (std::size_t n : held) {
        const int u = a.owner(bi, static_cast<Eigen::Index>(n));
        const int k = slice_of_[static_cast<std::size_t>(u)];
        const bool short_k = mu_ > 0.0 && k >= 0 &&
                             totals(k) < scale_ * p_.slices[static_cast<std::size_t>(k)].reservation;
        w[n] = marginal_weight(cur(u), short_k);
      }
      p = fill_levels(held, w, h, budget);
    }

    double used = 0.0;
    for (std::size_t n : held) used += p[n];
    const double shrink = used > budget ? budget / used : 1.0;
    for (std::size_t n : held) {
      const auto ni = static_cast<Eigen::Index>(n);
      const double pn = p[n] * shrink;
      if (pn > 0.0) {
        a.power(bi, ni) = pn;
      } else {
        a.power(bi, ni) = 0.0;
        a.owner(bi, ni) = kUnassigned;
      }
    }
  }

  // Exact solution of max sum w_n log2(1 + p_n h_n) s.t. sum p_n <= budget:
  // p_n = max(0, w_n L - 1/h_n) with the water level L from the active set.
  static std::vector<double> fill_levels(const std::vector<std::size_t>& held, const std::vector<double>& w,
                                         const std::vector<double>& h, double budget) {
    std::vector<double> p(w.size(), 0.0);
    std::vector<std::size_t> usable;
    for (std::size_t n : held) {
      if (w[n] > 0.0 && h[n] > 0.0) usable.push_back(n);
    }
    if (usable.empty()) return p;
    // Level at which subcarrier n switches on.
    const auto threshold = [&](std::size_t n) { return 1.0 / (w[n] * h[n]); };
    std::stable_sort(usable.begin(), usable.end(),
                     [&](std::size_t x, std::size_t y) { return threshold(x) < threshold(y); });
    double level = 0.0;
    double sum_w = 0.0;
    double sum_inv_h = 0.0;
    for (std::size_t k = 0; k < usable.size(); ++k) {
      sum_w += w[usable[k]];
      sum_inv_h += 1.0 / h[usable[k]];
      level = (budget + sum_inv_h) / sum_w;
      if (k + 1 == usable.size() || level <= threshold(usable[k + 1])) break;
    }
    for (std::size_t n : usable) p[n] = std::max(0.0, w[n] * level - 1.0 / h[n]);
    return p;
  }

  double resource_step(CellularAllocation& a) const {
    double v = evaluate(a);
    const std::size_t n_sc = a.subcarriers();
    for (int sweep = 0; sweep < o_.max_outer_iterations; ++sweep) {
      const double start = v;
      for (std::size_t b = 0; b < a.bss(); ++b) {
        const auto bi = static_cast<Eigen::Index>(b);
        for (std::size_t n = 0; n < n_sc; ++n) {
          const auto ni = static_cast<Eigen::Index>(n);
          const int current = a.owner(bi, ni);
          std::vector<int> candidates{current};
          if (current != kUnassigned) candidates.push_back(kUnassigned);
          for (std::size_t u = 0; u < a.users(); ++u) {
            if (a.association[u] == static_cast<int>(b) && static_cast<int>(u) != current) {
              candidates.push_back(static_cast<int>(u));
            }
          }
          std::optional<CellularAllocation> best;
          double best_v = -std::numeric_limits<double>::infinity();
          for (int c : candidates) {
            // Second variant also clears subcarrier n at every other BS, a
            // coordinated move single-slot changes cannot reach.
            for (int exclusive = 0; exclusive < (c == kUnassigned ? 1 : 2); ++exclusive) {
              CellularAllocation trial = a;
              trial.owner(bi, ni) = c;
              if (c == kUnassigned) {
                trial.power(bi, ni) = 0.0;
              } else if (trial.power(bi, ni) <= 0.0) {
                trial.power(bi, ni) = p_.budgets[b] / static_cast<double>(n_sc);
              }
              if (exclusive == 1) {
                bool cleared = false;
                for (std::size_t o = 0; o < a.bss(); ++o) {
                  const auto oi = static_cast<Eigen::Index>(o);
                  if (o == b || trial.owner(oi, ni) == kUnassigned) continue;
                  trial.owner(oi, ni) = kUnassigned;
                  trial.power(oi, ni) = 0.0;
                  water_fill(trial, o);
                  cleared = true;
                }
                if (!cleared) continue;
              }
              water_fill(trial, b);
              const double tv = evaluate(trial);
              if (!best || tv > best_v + 1e-12 * std::max(1.0, std::abs(best_v))) {
                best = std::move(trial);
                best_v = tv;
              }
            }
          }
          a = std::move(*best);
          v = best_v;
        }
      }
      if (v - start <= o_.convergence_tolerance * std::max(1.0, std::abs(v))) break;
    }
    return v;
  }

  bool association_step(CellularAllocation& a, double& v) const {
    bool changed = false;
    for (std::size_t u = 0; u < a.users(); ++u) {
      const int home = a.association[u];
      std::optional<CellularAllocation> best;
      double best_v = v;
      for (std::size_t b = 0; b < a.bss(); ++b) {
        if (static_cast<int>(b) == home) continue;
        CellularAllocation trial = a;
        if (home != kUnassigned) {
          const auto hi = static_cast<Eigen::Index>(home);
          for (Eigen::Index n = 0; n < trial.owner.cols(); ++n) {
            if (trial.owner(hi, n) == static_cast<int>(u)) {
              trial.owner(hi, n) = kUnassigned;
              trial.power(hi, n) = 0.0;
            }
          }
          water_fill(trial, static_cast<std::size_t>(home));
        }
        trial.association[u] = static_cast<int>(b);
        const double tv = resource_step(trial);
        if (tv > best_v + o_.convergence_tolerance * std::max(1.0, std::abs(best_v))) {
          best = std::move(trial);
          best_v = tv;
        }
      }
      if (best) {
        a = std::move(*best);
        v = best_v;
        changed = true;
      }
    }
    return changed;
  }

  const CellularProblem& p_;
  const CellularSolverOptions& o_;
  double scale_;
  double mu_;
  Mode mode_;
  Tracker& tracker_;
  std::vector<int> slice_of_;
};

std::vector<CellularAllocation> starts_for(const CellularProblem& problem) {
  std::vector<CellularAllocation> starts{max_snr_cellular(problem.gains, problem.budgets, problem.noise_power)};
  for (const auto& w : problem.warm_starts) starts.push_back(w);
  return starts;
}

Tracker make_tracker(const CellularProblem& problem, const CellularSolverOptions& options, double scale) {
  Tracker t;
  t.slices = &problem.slices;
  t.objective = options.objective;
  t.pf_floor = options.pf_floor;
  t.scale = scale;
  t.tolerance = options.reservation_tolerance;
  return t;
}

bool has_reservations(const CellularProblem& problem) {
  return std::any_of(problem.slices.begin(), problem.slices.end(), [](const SliceSpec& s) { return s.reservation > 0.0; });
}

// Reservation feasibility at `scale` by slack maximization; feasible points
// found along the way are left in `tracker`.
bool feasible_at(const CellularProblem& problem, const CellularSolverOptions& options, double scale,
                 Tracker& tracker) {
  for (const auto& s : starts_for(problem)) {
    Engine(problem, options, scale, 1.0, Mode::slack, tracker).run(s);
    if (tracker.best) return true;
  }
  return false;
}

}  // namespace

CellularSolution solve_joint_allocation(const CellularProblem& problem, const CellularSolverOptions& options) {
  problem.validate();
  options.validate();
  CellularSolution out;
  Tracker tracker = make_tracker(problem, options, 1.0);
  const auto starts = starts_for(problem);

  if (!has_reservations(problem)) {
    for (const auto& s : starts) Engine(problem, options, 1.0, 0.0, Mode::objective, tracker).run(s);
  } else {
    for (double mu : kPenaltySchedule) {
      for (const auto& s : starts) Engine(problem, options, 1.0, mu, Mode::objective, tracker).run(s);
      if (tracker.best) break;
    }
    if (!tracker.best && feasible_at(problem, options, 1.0, tracker)) {
      // Slack search found a feasible point the penalty runs missed; polish from it.
      const CellularAllocation seed = *tracker.best;
      Engine(problem, options, 1.0, kPenaltySchedule[1], Mode::objective, tracker).run(seed);
    }
  }

  if (tracker.best) {
    out.status = CellularStatus::optimal;
    out.allocation = *tracker.best;
    out.allocation.validate(problem.budgets);
    out.rates = tracker.best_rates;
    out.total_rate = out.rates.sum();
    out.utility = tracker.best_utility;
    return out;
  }

  double lo = 0.0;
  double hi = 1.0;
  while (hi - lo > options.scaling_tolerance) {
    const double mid = 0.5 * (lo + hi);
    Tracker probe = make_tracker(problem, options, mid);
    if (feasible_at(problem, options, mid, probe)) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  out.status = CellularStatus::infeasible;
  out.scaling_factor = lo;
  return out;
}

}  // namespace sdwn::cellular
