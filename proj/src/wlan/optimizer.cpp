#include "sdwn/wlan/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>

#include "sdwn/core/random.hpp"
#include "sdwn/wlan/augmented_lagrangian.hpp"

namespace sdwn::wlan {

void WlanSolverOptions::validate() const {
  if (max_iterations <= 0 || !(step_size > 0.0) || !(feasibility_tolerance > 0.0) ||
      !(convergence_tolerance > 0.0) || multistart_count <= 0 || !(oracle_grid_step > 0.0) ||
      !(scaling_tolerance > 0.0)) {
    throw ConfigError("wlan solver options must all be strictly positive");
  }
  if (feasibility_tolerance > 1e-4) {
    throw ConfigError("wlan solver: feasibility_tolerance must not exceed 1e-4");
  }
}

void WlanProblem::validate() const {
  if ((rates.array() < 0.0).any() || !rates.allFinite()) {
    throw ConfigError("wlan problem: rates must be finite and non-negative");
  }
  validate_wlan_slices(slices, static_cast<std::size_t>(rates.rows()));
  for (const auto& w : warm_starts) {
    if (w.tau.rows() != rates.rows() || w.tau.cols() != rates.cols()) {
      throw ConfigError("wlan problem: warm start dimensions differ from rates");
    }
    w.validate();
  }
}

std::vector<SliceSpec> scale_reservations(std::vector<SliceSpec> slices, double factor) {
  for (auto& s : slices) s.reservation *= factor;
  return slices;
}

double max_total_airtime(const Eigen::MatrixXd& rates) {
  if (rates.cols() == 0) return 0.0;
  Eigen::Index covered = 0;
  for (Eigen::Index a = 0; a < rates.cols(); ++a) {
    if ((rates.col(a).array() > 0.0).any()) ++covered;
  }
  return static_cast<double>(covered) / static_cast<double>(rates.cols());
}

namespace {

constexpr double kSoftCorner = 0.05;
constexpr double kWitnessNudge = 0.02;
// Iterates stay below 1 - kCeilingGap: at tau = 1 every other user at that AP
// has a zero gradient and the penalty cannot pull the point back.
constexpr double kCeilingGap = 1e-3;
constexpr int kNoSlice = -1;

struct Member {
  std::size_t user;
  double rate;
  int slice;
};

struct ApGroup {
  std::size_t ap;
  std::size_t offset;  // first variable index
  std::vector<Member> members;
};

struct Guarantee {
  int slice;
  double target;
  int ap;  // -1: network average
};

// Variables are the covered (user, AP) pairs, grouped by AP, users ascending.
class Model {
 public:
  Model(const WlanProblem& problem, AirtimeScope scope)
      : users_(static_cast<std::size_t>(problem.rates.rows())),
        aps_(static_cast<std::size_t>(problem.rates.cols())) {
    std::vector<int> slice_of(users_, kNoSlice);
    for (std::size_t k = 0; k < problem.slices.size(); ++k) {
      for (std::size_t u : problem.slices[k].user_ids) slice_of[u] = static_cast<int>(k);
    }
    rate_scale_ = problem.rates.size() > 0 ? problem.rates.maxCoeff() : 0.0;
    if (!(rate_scale_ > 0.0)) rate_scale_ = 1.0;
    for (std::size_t a = 0; a < aps_; ++a) {
      ApGroup g{a, vars_, {}};
      for (std::size_t i = 0; i < users_; ++i) {
        const double r = problem.rates(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(a));
        if (r > 0.0) g.members.push_back({i, r, slice_of[i]});
      }
      vars_ += g.members.size();
      groups_.push_back(std::move(g));
    }
    for (std::size_t k = 0; k < problem.slices.size(); ++k) {
      const double beta = problem.slices[k].reservation;
      if (!(beta > 0.0)) continue;
      if (scope == AirtimeScope::network_average) {
        guarantees_.push_back({static_cast<int>(k), beta, -1});
      } else {
        for (std::size_t a = 0; a < aps_; ++a) {
          guarantees_.push_back({static_cast<int>(k), beta, static_cast<int>(a)});
        }
      }
    }
  }

  std::size_t vars() const { return vars_; }
  std::size_t users() const { return users_; }
  std::size_t aps() const { return aps_; }
  const std::vector<ApGroup>& groups() const { return groups_; }
  const std::vector<Guarantee>& guarantees() const { return guarantees_; }

  TauMatrix to_tau(const Eigen::VectorXd& x) const {
    TauMatrix t = TauMatrix::zeros(users_, aps_);
    for (const auto& g : groups_) {
      for (std::size_t m = 0; m < g.members.size(); ++m) {
        t(g.members[m].user, g.ap) = std::clamp(x(static_cast<Eigen::Index>(g.offset + m)), 0.0, 1.0);
      }
    }
    return t;
  }

  Eigen::VectorXd from_tau(const TauMatrix& t) const {
    Eigen::VectorXd x(static_cast<Eigen::Index>(vars_));
    for (const auto& g : groups_) {
      for (std::size_t m = 0; m < g.members.size(); ++m) {
        x(static_cast<Eigen::Index>(g.offset + m)) = t(g.members[m].user, g.ap);
      }
    }
    return x;
  }

  // Objective (throughput / rate_scale) and guarantee slacks for the first
  // vars() entries of x; `shift_index` >= 0 subtracts x(shift_index) from every
  // slack (epigraph variable of the max-min problem).
  void evaluate(const Eigen::VectorXd& x, Evaluation& e, bool objective_is_shift,
                double reservation_scale) const {
    const auto dim = x.size();
    const auto k_count = static_cast<Eigen::Index>(guarantees_.size());
    e.gradient = Eigen::VectorXd::Zero(dim);
    e.constraints = Eigen::VectorXd::Zero(k_count);
    e.jacobian = Eigen::MatrixXd::Zero(k_count, dim);
    e.objective = 0.0;

    std::vector<double> weights;
    std::vector<double> grad;
    for (const auto& g : groups_) {
      const std::size_t n = g.members.size();
      if (n == 0) continue;
      const double* tau = x.data() + g.offset;
      prepare(tau, n);
      if (!objective_is_shift) {
        weights.assign(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) weights[m] = g.members[m].rate / rate_scale_;
        grad.assign(n, 0.0);
        e.objective += weighted_success(tau, weights.data(), n, grad.data());
        for (std::size_t m = 0; m < n; ++m) e.gradient(static_cast<Eigen::Index>(g.offset + m)) += grad[m];
      }
      for (Eigen::Index c = 0; c < k_count; ++c) {
        const Guarantee& q = guarantees_[static_cast<std::size_t>(c)];
        if (q.ap >= 0 && static_cast<std::size_t>(q.ap) != g.ap) continue;
        const double w = q.ap >= 0 ? 1.0 : 1.0 / static_cast<double>(aps_);
        weights.assign(n, 0.0);
        bool any = false;
        for (std::size_t m = 0; m < n; ++m) {
          if (g.members[m].slice == q.slice) {
            weights[m] = w;
            any = true;
          }
        }
        if (!any) continue;
        grad.assign(n, 0.0);
        e.constraints(c) += weighted_success(tau, weights.data(), n, grad.data());
        for (std::size_t m = 0; m < n; ++m) e.jacobian(c, static_cast<Eigen::Index>(g.offset + m)) += grad[m];
      }
    }
    for (Eigen::Index c = 0; c < k_count; ++c) {
      e.constraints(c) -= reservation_scale * guarantees_[static_cast<std::size_t>(c)].target;
    }
    if (objective_is_shift) {
      const Eigen::Index t = dim - 1;
      e.objective = x(t);
      e.gradient(t) = 1.0;
      for (Eigen::Index c = 0; c < k_count; ++c) {
        e.constraints(c) -= x(t);
        e.jacobian(c, t) = -1.0;
      }
    }
  }

  double rate_scale() const { return rate_scale_; }

 private:
  // Prefix/suffix products of (1 - tau) for the current AP group.
  void prepare(const double* tau, std::size_t n) const {
    pre_q_.assign(n + 1, 1.0);
    suf_q_.assign(n + 1, 1.0);
    for (std::size_t k = 0; k < n; ++k) pre_q_[k + 1] = pre_q_[k] * (1.0 - tau[k]);
    for (std::size_t k = n; k-- > 0;) suf_q_[k] = suf_q_[k + 1] * (1.0 - tau[k]);
  }

  // S = sum_i w_i tau_i prod_{j != i} (1 - tau_j) and dS/dtau in O(n).
  double weighted_success(const double* tau, const double* w, std::size_t n, double* grad) const {
    pre_s_.assign(n + 1, 0.0);
    suf_s_.assign(n + 1, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
      pre_s_[k + 1] = pre_s_[k] * (1.0 - tau[k]) + w[k] * tau[k] * pre_q_[k];
    }
    for (std::size_t k = n; k-- > 0;) {
      suf_s_[k] = suf_s_[k + 1] * (1.0 - tau[k]) + w[k] * tau[k] * suf_q_[k + 1];
    }
    for (std::size_t m = 0; m < n; ++m) {
      const double others_idle = pre_q_[m] * suf_q_[m + 1];
      const double others_success = pre_s_[m] * suf_q_[m + 1] + pre_q_[m] * suf_s_[m + 1];
      grad[m] = w[m] * others_idle - others_success;
    }
    return pre_s_[n];
  }

  std::size_t users_;
  std::size_t aps_;
  std::size_t vars_ = 0;
  double rate_scale_ = 1.0;
  std::vector<ApGroup> groups_;
  std::vector<Guarantee> guarantees_;
  mutable std::vector<double> pre_q_, suf_q_, pre_s_, suf_s_;
};

std::uint64_t instance_hash(const WlanProblem& p) {
  std::uint64_t h = derive_seed(static_cast<std::uint64_t>(p.rates.rows()),
                                static_cast<std::uint64_t>(p.rates.cols()));
  const auto mix_double = [&h](double v) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    h = derive_seed(h, bits);
  };
  for (Eigen::Index i = 0; i < p.rates.size(); ++i) mix_double(p.rates.data()[i]);
  for (const auto& s : p.slices) {
    mix_double(s.reservation);
    for (std::size_t u : s.user_ids) h = derive_seed(h, u);
  }
  return h;
}

// One soft corner: `choice[g]` is the member index granted the channel at
// group g, or -1 to leave the AP idle.
Eigen::VectorXd soft_corner(const Model& model, const std::vector<int>& choice) {
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vars()));
  const auto& groups = model.groups();
  for (std::size_t gi = 0; gi < groups.size(); ++gi) {
    const auto& g = groups[gi];
    const std::size_t n = g.members.size();
    if (n == 0) continue;
    for (std::size_t m = 0; m < n; ++m) {
      x(static_cast<Eigen::Index>(g.offset + m)) = kSoftCorner / static_cast<double>(n);
    }
    if (choice[gi] >= 0) {
      x(static_cast<Eigen::Index>(g.offset + static_cast<std::size_t>(choice[gi]))) = 1.0 - kSoftCorner;
    }
  }
  return x;
}

int best_member(const ApGroup& g, int slice) {
  int best = -1;
  for (std::size_t m = 0; m < g.members.size(); ++m) {
    if (slice != kNoSlice && g.members[m].slice != slice) continue;
    if (best < 0 || g.members[m].rate > g.members[static_cast<std::size_t>(best)].rate) {
      best = static_cast<int>(m);
    }
  }
  return best;
}

std::vector<Eigen::VectorXd> structured_starts(const Model& model, const WlanProblem& problem,
                                               double reservation_scale) {
  std::vector<Eigen::VectorXd> starts;
  const auto& groups = model.groups();

  // Monopoly: each AP granted to its best-rate user (lowest id on ties).
  std::vector<int> choice(groups.size(), -1);
  for (std::size_t gi = 0; gi < groups.size(); ++gi) choice[gi] = best_member(groups[gi], kNoSlice);
  starts.push_back(soft_corner(model, choice));

  // Slice-aware corner: hand APs to the SP with the largest outstanding
  // reservation (in AP units) that has a covered user there.
  if (!model.guarantees().empty()) {
    std::vector<double> deficit(problem.slices.size(), 0.0);
    for (std::size_t k = 0; k < problem.slices.size(); ++k) {
      deficit[k] = reservation_scale * problem.slices[k].reservation * static_cast<double>(model.aps());
    }
    for (std::size_t gi = 0; gi < groups.size(); ++gi) {
      int pick_slice = kNoSlice;
      for (std::size_t k = 0; k < deficit.size(); ++k) {
        if (deficit[k] <= 0.0 || best_member(groups[gi], static_cast<int>(k)) < 0) continue;
        if (pick_slice == kNoSlice || deficit[k] > deficit[static_cast<std::size_t>(pick_slice)]) {
          pick_slice = static_cast<int>(k);
        }
      }
      choice[gi] = best_member(groups[gi], pick_slice);
      if (pick_slice != kNoSlice) deficit[static_cast<std::size_t>(pick_slice)] -= 1.0;
    }
    starts.push_back(soft_corner(model, choice));
  }

  // Symmetric association point: each user at its best-rate AP, tau = 1/n_a.
  std::vector<int> home(model.users(), -1);
  std::vector<double> home_rate(model.users(), 0.0);
  for (const auto& g : groups) {
    for (const auto& m : g.members) {
      if (m.rate > home_rate[m.user]) {
        home_rate[m.user] = m.rate;
        home[m.user] = static_cast<int>(g.ap);
      }
    }
  }
  Eigen::VectorXd x = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vars()));
  for (const auto& g : groups) {
    std::size_t load = 0;
    for (const auto& m : g.members) load += home[m.user] == static_cast<int>(g.ap) ? 1 : 0;
    for (std::size_t m = 0; m < g.members.size(); ++m) {
      if (home[g.members[m].user] == static_cast<int>(g.ap)) {
        x(static_cast<Eigen::Index>(g.offset + m)) = 1.0 / static_cast<double>(load);
      }
    }
  }
  starts.push_back(std::move(x));
  return starts;
}

std::vector<Eigen::VectorXd> random_starts(const Model& model, std::uint64_t seed, int count) {
  std::vector<Eigen::VectorXd> starts;
  Rng rng(seed);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int s = 0; s < count; ++s) {
    Eigen::VectorXd x(static_cast<Eigen::Index>(model.vars()));
    for (const auto& g : model.groups()) {
      const double cap = std::min(1.0, 2.0 / static_cast<double>(std::max<std::size_t>(1, g.members.size())));
      for (std::size_t m = 0; m < g.members.size(); ++m) {
        x(static_cast<Eigen::Index>(g.offset + m)) = cap * u(rng);
      }
    }
    starts.push_back(std::move(x));
  }
  return starts;
}

AlSettings al_settings(const WlanSolverOptions& o) {
  AlSettings s;
  s.max_iterations = o.max_iterations;
  s.initial_step = o.step_size;
  s.constraint_tolerance = 0.1 * o.feasibility_tolerance;
  s.stationarity_tolerance = o.convergence_tolerance;
  return s;
}

struct Candidate {
  Eigen::VectorXd x;
  double objective = -std::numeric_limits<double>::infinity();
  bool valid = false;
};

// Higher objective wins; near-ties go to the lexicographically larger tau in
// user-major order, which favors lower user ids holding the channel.
bool better(const Model& model, const Eigen::VectorXd& x, double f, const Candidate& incumbent) {
  if (!incumbent.valid) return true;
  const double tol = 1e-9 * std::max(1.0, std::abs(incumbent.objective));
  if (f > incumbent.objective + tol) return true;
  if (f < incumbent.objective - tol) return false;
  const TauMatrix a = model.to_tau(x);
  const TauMatrix b = model.to_tau(incumbent.x);
  for (std::size_t i = 0; i < a.users(); ++i) {
    for (std::size_t ap = 0; ap < a.aps(); ++ap) {
      if (a(i, ap) != b(i, ap)) return a(i, ap) > b(i, ap);
    }
  }
  return false;
}

Eigen::VectorXd snap_to_ceiling(Eigen::VectorXd x) {
  for (Eigen::Index j = 0; j < x.size(); ++j) {
    if (x(j) >= 1.0 - kCeilingGap - 1e-12) x(j) = 1.0;
  }
  return x;
}

std::vector<Eigen::VectorXd> all_starts(const Model& model, const WlanProblem& problem,
                                        const WlanSolverOptions& options, double reservation_scale,
                                        const std::vector<Eigen::VectorXd>& extra) {
  std::vector<Eigen::VectorXd> starts = structured_starts(model, problem, reservation_scale);
  for (const auto& w : problem.warm_starts) starts.push_back(model.from_tau(w));
  for (const auto& e : extra) starts.push_back(e);
  const int random_count = std::max(0, options.multistart_count - static_cast<int>(starts.size()));
  for (auto& r : random_starts(model, derive_seed(instance_hash(problem), "restarts"), random_count)) {
    starts.push_back(std::move(r));
  }
  return starts;
}

std::pair<double, Eigen::VectorXd> solve_max_min_slack(const Model& model, const WlanProblem& problem,
                                                       const WlanSolverOptions& options,
                                                       double reservation_scale) {
  const auto n = static_cast<Eigen::Index>(model.vars());
  if (model.guarantees().empty()) {
    return {std::numeric_limits<double>::infinity(), Eigen::VectorXd::Zero(n)};
  }
  BoxProblem bp;
  bp.lower = Eigen::VectorXd::Zero(n + 1);
  bp.upper = Eigen::VectorXd::Constant(n + 1, 1.0 - kCeilingGap);
  bp.lower(n) = -2.0;
  bp.upper(n) = 2.0;
  bp.constraint_count = model.guarantees().size();
  bp.evaluate = [&](const Eigen::VectorXd& x, Evaluation& e) {
    model.evaluate(x, e, true, reservation_scale);
  };

  Candidate best;
  const AlSettings settings = al_settings(options);
  for (const auto& s : all_starts(model, problem, options, reservation_scale, {})) {
    Eigen::VectorXd x0(n + 1);
    x0.head(n) = s;
    x0(n) = 0.0;
    Evaluation e0;
    model.evaluate(x0, e0, true, reservation_scale);
    const double start_slack = e0.constraints.minCoeff();
    if (better(model, s, start_slack, best)) best = {s, start_slack, true};
    x0(n) = std::clamp(start_slack, -2.0, 2.0);
    const AlResult r = maximize_augmented_lagrangian(bp, x0, settings);
    for (Eigen::VectorXd xr : {r.x, snap_to_ceiling(r.x)}) {
      xr(n) = 0.0;
      Evaluation e;
      model.evaluate(xr, e, true, reservation_scale);
      const double slack = e.constraints.minCoeff();
      if (better(model, xr.head(n), slack, best)) best = {xr.head(n), slack, true};
    }
  }
  return {best.objective, best.x};
}

// Upper bound on the feasible reservation scaling from coverage alone.
double scaling_upper_bound(const Model& model, const WlanProblem& problem, AirtimeScope scope) {
  const auto aps = static_cast<double>(model.aps());
  double bound = 1.0;
  double reserved_sum = 0.0;
  std::vector<bool> ap_covered(model.aps(), false);
  for (std::size_t k = 0; k < problem.slices.size(); ++k) {
    const double beta = problem.slices[k].reservation;
    if (!(beta > 0.0)) continue;
    reserved_sum += beta;
    std::size_t covered = 0;
    for (const auto& g : model.groups()) {
      const bool has = best_member(g, static_cast<int>(k)) >= 0;
      if (has) {
        ++covered;
        ap_covered[g.ap] = true;
      }
    }
    const double reach = scope == AirtimeScope::network_average
                             ? static_cast<double>(covered) / aps
                             : (covered == model.aps() ? 1.0 : 0.0);
    bound = std::min(bound, reach / beta);
  }
  if (reserved_sum > 0.0) {
    const double total_reach =
        scope == AirtimeScope::network_average
            ? static_cast<double>(std::count(ap_covered.begin(), ap_covered.end(), true)) / aps
            : 1.0;
    bound = std::min(bound, total_reach / reserved_sum);
  }
  return std::max(0.0, bound);
}

}  // namespace

std::pair<double, TauMatrix> max_min_slack(const WlanProblem& problem,
                                           const WlanSolverOptions& options) {
  problem.validate();
  options.validate();
  const Model model(problem, options.scope);
  auto [slack, x] = solve_max_min_slack(model, problem, options, 1.0);
  return {slack, model.to_tau(x)};
}

FeasibilityResult feasibility_check(const WlanProblem& problem, const WlanSolverOptions& options) {
  problem.validate();
  options.validate();
  const Model model(problem, options.scope);
  FeasibilityResult out;
  out.witness = TauMatrix::zeros(model.users(), model.aps());
  if (model.guarantees().empty()) {
    out.feasible = true;
    out.min_slack = std::numeric_limits<double>::infinity();
    return out;
  }
  const double eps = options.feasibility_tolerance;
  auto [slack, x] = solve_max_min_slack(model, problem, options, 1.0);
  out.min_slack = slack;
  if (slack >= -eps) {
    out.feasible = true;
    out.witness = model.to_tau(x);
    return out;
  }

  out.feasible = false;
  double lo = 0.0;
  double hi = std::min(1.0, scaling_upper_bound(model, problem, options.scope));
  Eigen::VectorXd lo_witness = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.vars()));
  if (hi > 0.0 && hi < 1.0) {
    auto [s_hi, x_hi] = solve_max_min_slack(model, problem, options, hi);
    if (s_hi >= -eps) {
      lo = hi;
      lo_witness = x_hi;
    }
  }
  while (hi - lo > options.scaling_tolerance) {
    const double mid = 0.5 * (lo + hi);
    auto [s_mid, x_mid] = solve_max_min_slack(model, problem, options, mid);
    if (s_mid >= -eps) {
      lo = mid;
      lo_witness = x_mid;
    } else {
      hi = mid;
    }
  }
  out.scaling_factor = lo;
  out.witness = model.to_tau(lo_witness);
  return out;
}

WlanSolution optimize_tau(const WlanProblem& problem, const WlanSolverOptions& options) {
  const FeasibilityResult feas = feasibility_check(problem, options);
  WlanSolution out;
  if (!feas.feasible) {
    out.status = WlanStatus::infeasible;
    out.scaling_factor = feas.scaling_factor;
    return out;
  }

  const Model model(problem, options.scope);
  const auto n = static_cast<Eigen::Index>(model.vars());
  const double eps = options.feasibility_tolerance;
  BoxProblem bp;
  bp.lower = Eigen::VectorXd::Zero(n);
  bp.upper = Eigen::VectorXd::Constant(n, 1.0 - kCeilingGap);
  bp.constraint_count = model.guarantees().size();
  // Guarantees are measured relative to their targets so that starving a slice
  // with a small reservation costs as much as starving one with a large one.
  double max_target = 0.0;
  for (const auto& q : model.guarantees()) max_target = std::max(max_target, q.target);
  bp.evaluate = [&](const Eigen::VectorXd& x, Evaluation& e) {
    model.evaluate(x, e, false, 1.0);
    for (Eigen::Index c = 0; c < e.constraints.size(); ++c) {
      const double w = 1.0 / model.guarantees()[static_cast<std::size_t>(c)].target;
      e.constraints(c) *= w;
      e.jacobian.row(c) *= w;
    }
  };

  AlSettings settings = al_settings(options);
  if (max_target > 0.0) settings.constraint_tolerance /= max_target;
  Candidate best;
  const auto consider = [&](const Eigen::VectorXd& x) {
    Evaluation e;
    model.evaluate(x, e, false, 1.0);
    const bool feasible = e.constraints.size() == 0 || e.constraints.minCoeff() >= -eps;
    if (feasible && better(model, x, e.objective, best)) best = {x, e.objective, true};
  };

  // The witness may sit on a saddle (e.g. the symmetric point), so nudged copies go in too.
  const Eigen::VectorXd witness = model.from_tau(feas.witness);
  std::vector<Eigen::VectorXd> extra{witness};
  Rng nudge_rng(derive_seed(instance_hash(problem), "nudge"));
  std::uniform_real_distribution<double> nudge(-kWitnessNudge, kWitnessNudge);
  for (int k = 0; k < 2; ++k) {
    Eigen::VectorXd x = witness;
    for (Eigen::Index j = 0; j < x.size(); ++j) x(j) = std::clamp(x(j) + nudge(nudge_rng), 0.0, 1.0);
    extra.push_back(std::move(x));
  }
  const std::vector<Eigen::VectorXd> starts = all_starts(model, problem, options, 1.0, extra);
  for (const auto& s : starts) {
    consider(s.cwiseMax(0.0).cwiseMin(1.0));
    const AlResult r = maximize_augmented_lagrangian(bp, s, settings);
    consider(r.x);
    consider(snap_to_ceiling(r.x));
  }
  out.starts_run = static_cast<int>(starts.size());
  // The feasibility witness is always a candidate, so best is valid.
  out.tau = model.to_tau(best.x);
  out.objective = wlan_throughput(out.tau, problem.rates, problem.slices).total();
  return out;
}

}  // namespace sdwn::wlan
