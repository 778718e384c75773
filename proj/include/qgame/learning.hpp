// Copyright 2026 The qgame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// No-regret learners over density matrices and the repeated-game runner.
//
// Feedback is full information: after every round each player receives the
// exact gain matrix Theta_i((rho_{-i}^t)^T), computed from the strategies all
// players committed to in that round.

#pragma once

#include "qgame/equilibria.hpp"
#include "qgame/games.hpp"
#include "qgame/tensor.hpp"

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <string>

namespace qgame {

class Schedule {
 public:
  enum class Kind { fixed, doubling };

  static Schedule fixed(double eta) {
    if (!(eta > 0.0) || !std::isfinite(eta)) throw InvalidArgument("Schedule: step size must be positive");
    return Schedule(Kind::fixed, eta, 0);
  }

  /// Epoch e lasts base * 2^e rounds and restarts the learner with
  /// eta_e = sqrt(ln d / (base * 2^e)).
  static Schedule doubling(std::size_t base_epoch_length = 8) {
    if (base_epoch_length == 0) throw InvalidArgument("Schedule: epoch length must be positive");
    return Schedule(Kind::doubling, 0.0, base_epoch_length);
  }

  Kind kind() const { return kind_; }
  double fixed_eta() const { return eta_; }
  std::size_t base_epoch_length() const { return base_; }

  std::size_t epoch_length(std::size_t epoch) const {
    return kind_ == Kind::fixed ? 0 : base_ << epoch;
  }

  double eta(std::size_t epoch, std::size_t dim) const {
    if (kind_ == Kind::fixed) return eta_;
    return std::sqrt(std::log(static_cast<double>(dim)) / static_cast<double>(epoch_length(epoch)));
  }

  std::string describe() const {
    char buf[64];
    if (kind_ == Kind::fixed) {
      std::snprintf(buf, sizeof buf, "fixed:%.17g", eta_);
    } else {
      std::snprintf(buf, sizeof buf, "doubling:%zu", base_);
    }
    return buf;
  }

 private:
  Schedule(Kind kind, double eta, std::size_t base) : kind_(kind), eta_(eta), base_(base) {}

  Kind kind_;
  double eta_;
  std::size_t base_;
};

/// Worst-case average external regret after t rounds for gains with
/// eigenvalues in [-1, 1]: eta + ln d / (eta t) for a fixed step size. Under
/// the doubling schedule every completed epoch contributes
/// eta_e T_e + ln d / eta_e = 2 sqrt(T_e ln d) and the running epoch
/// eta_e L + ln d / eta_e for its L rounds so far.
inline double regret_bound(const Schedule& schedule, std::size_t dim, std::size_t t) {
  if (t == 0) throw InvalidArgument("regret_bound: need t >= 1");
  const double log_d = std::log(static_cast<double>(dim));
  const double td = static_cast<double>(t);
  if (schedule.kind() == Schedule::Kind::fixed) {
    const double eta = schedule.fixed_eta();
    return eta + log_d / (eta * td);
  }
  double total = 0.0;
  std::size_t remaining = t;
  for (std::size_t e = 0; remaining > 0; ++e) {
    const std::size_t len = schedule.epoch_length(e);
    const std::size_t played = std::min(len, remaining);
    const double eta = schedule.eta(e, dim);
    total += eta * static_cast<double>(played) + log_d / eta;
    remaining -= played;
  }
  return total / td;
}

enum class LearnerKind { mmwu, ftrl_frobenius };

inline std::string_view to_string(LearnerKind kind) {
  return kind == LearnerKind::mmwu ? "mmwu" : "ftrl";
}

struct LearnerState {
  std::size_t player = 0;
  std::size_t dim = 0;
  HermitianMatrix cumulative_gain;  // since the start of the current epoch
  std::size_t steps = 0;            // gains observed in total
  std::size_t epoch = 0;
  std::size_t epoch_steps = 0;
  Schedule schedule;
  LearnerKind kind = LearnerKind::mmwu;

  double eta() const { return schedule.eta(epoch, dim); }
};

inline LearnerState make_learner_state(std::size_t player, std::size_t dim, Schedule schedule,
                                       LearnerKind kind = LearnerKind::mmwu) {
  if (dim < 1) throw InvalidArgument("make_learner_state: dimension must be positive");
  return LearnerState{player, dim, HermitianMatrix::zero(dim), 0, 0, 0, schedule, kind};
}

/// The strategy a learner plays given its state: exp(eta S) / Tr for MMWU,
/// the density-matrix projection of eta S for Frobenius FTRL.
inline DensityMatrix current_strategy(const LearnerState& s) {
  const HermitianMatrix scaled = s.cumulative_gain * s.eta();
  return s.kind == LearnerKind::mmwu ? normalized_exp(scaled) : project_to_density(scaled);
}

inline LearnerState absorb_gain(LearnerState s, const HermitianMatrix& gain) {
  if (gain.dim() != s.dim) throw DimensionMismatch("learner: gain dimension");
  s.cumulative_gain += gain;
  ++s.steps;
  ++s.epoch_steps;
  if (s.schedule.kind() == Schedule::Kind::doubling &&
      s.epoch_steps == s.schedule.epoch_length(s.epoch)) {
    ++s.epoch;
    s.epoch_steps = 0;
    s.cumulative_gain = HermitianMatrix::zero(s.dim);
  }
  return s;
}

/// One matrix multiplicative weights update: adds the gain to the cumulative
/// sum and returns the next strategy with the new state.
inline std::pair<DensityMatrix, LearnerState> mmwu_step(LearnerState s, const HermitianMatrix& gain) {
  s.kind = LearnerKind::mmwu;
  s = absorb_gain(std::move(s), gain);
  DensityMatrix next = current_strategy(s);
  return {std::move(next), std::move(s)};
}

inline std::pair<DensityMatrix, LearnerState> ftrl_frobenius_step(LearnerState s,
                                                                  const HermitianMatrix& gain) {
  s.kind = LearnerKind::ftrl_frobenius;
  s = absorb_gain(std::move(s), gain);
  DensityMatrix next = current_strategy(s);
  return {std::move(next), std::move(s)};
}

/// A player in the repeated game. strategy() is what the player commits to
/// for the upcoming round; observe() delivers that round's feedback.
class Learner {
 public:
  virtual ~Learner() = default;
  virtual std::size_t dim() const = 0;
  virtual const DensityMatrix& strategy() const = 0;
  virtual void observe(const HermitianMatrix& gain, std::span<const DensityMatrix> profile) = 0;
  virtual std::string kind() const = 0;
};

class RegretLearner : public Learner {
 public:
  explicit RegretLearner(LearnerState state)
      : state_(std::move(state)), current_(current_strategy(state_)) {}

  std::size_t dim() const override { return state_.dim; }
  const DensityMatrix& strategy() const override { return current_; }
  void observe(const HermitianMatrix& gain, std::span<const DensityMatrix>) override {
    auto [next, state] = state_.kind == LearnerKind::mmwu ? mmwu_step(std::move(state_), gain)
                                                          : ftrl_frobenius_step(std::move(state_), gain);
    state_ = std::move(state);
    current_ = std::move(next);
  }
  std::string kind() const override { return std::string(to_string(state_.kind)); }
  const LearnerState& state() const { return state_; }

 private:
  LearnerState state_;
  DensityMatrix current_;
};

/// Plays the same state every round.
class FixedLearner : public Learner {
 public:
  explicit FixedLearner(DensityMatrix state) : state_(std::move(state)) {}
  std::size_t dim() const override { return state_.dim(); }
  const DensityMatrix& strategy() const override { return state_; }
  void observe(const HermitianMatrix&, std::span<const DensityMatrix>) override {}
  std::string kind() const override { return "fixed"; }

 private:
  DensityMatrix state_;
};

inline std::unique_ptr<Learner> make_mmwu(std::size_t player, std::size_t dim, Schedule schedule) {
  return std::make_unique<RegretLearner>(make_learner_state(player, dim, schedule, LearnerKind::mmwu));
}

inline std::unique_ptr<Learner> make_ftrl(std::size_t player, std::size_t dim, Schedule schedule) {
  return std::make_unique<RegretLearner>(
      make_learner_state(player, dim, schedule, LearnerKind::ftrl_frobenius));
}

/// Separable joint state sum_j weights[j] (x)_i components[j][i].
struct SeparableDecomposition {
  std::vector<double> weights;
  std::vector<std::vector<DensityMatrix>> components;

  void validate() const {
    if (weights.empty() || weights.size() != components.size()) {
      throw InvalidArgument("SeparableDecomposition: one weight per component required");
    }
    double total = 0.0;
    for (double w : weights) {
      if (!(w >= 0.0)) throw InvalidArgument("SeparableDecomposition: negative weight");
      total += w;
    }
    if (std::abs(total - 1.0) > tol::kAlgebra) {
      throw InvalidArgument("SeparableDecomposition: weights do not sum to 1");
    }
    const auto& first = components.front();
    if (first.size() < 2) throw InvalidArgument("SeparableDecomposition: need at least two players");
    for (const auto& c : components) {
      if (c.size() != first.size()) throw InvalidArgument("SeparableDecomposition: player count");
      for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i].dim() != first[i].dim()) throw DimensionMismatch("SeparableDecomposition: dims");
      }
    }
  }

  DensityMatrix joint_state() const {
    validate();
    ComplexMatrix sum;
    for (std::size_t j = 0; j < weights.size(); ++j) {
      const ComplexMatrix term = weights[j] * tensor_product(components[j]).matrix();
      sum = j == 0 ? term : ComplexMatrix(sum + term);
    }
    return DensityMatrix(HermitianMatrix(sum));
  }
};

inline constexpr double kScriptDeviationThreshold = 1e-9;

/// Replays a separable decomposition so the empirical frequency of component
/// j tracks weights[j]: round t plays argmax_j (weights[j] t - count_j), ties
/// to the lowest index. If any opponent is ever seen playing something other
/// than the scripted component, the learner switches to MMWU with a fresh
/// doubling schedule for the rest of the game.
class ScriptedQcceLearner : public Learner {
 public:
  ScriptedQcceLearner(std::shared_ptr<const SeparableDecomposition> script, std::size_t player,
                      Schedule fallback = Schedule::doubling())
      : script_(std::move(script)),
        player_(player),
        fallback_schedule_(fallback),
        counts_(script_->weights.size(), 0),
        component_(next_component()),
        current_(script_->components[component_][player_]) {}

  std::size_t dim() const override { return current_.dim(); }
  const DensityMatrix& strategy() const override { return current_; }

  void observe(const HermitianMatrix& gain, std::span<const DensityMatrix> profile) override {
    ++rounds_;
    if (fallback_) {
      auto [next, state] = mmwu_step(std::move(*fallback_), gain);
      fallback_ = std::move(state);
      current_ = std::move(next);
      return;
    }
    const auto& expected = script_->components[component_];
    for (std::size_t k = 0; k < profile.size(); ++k) {
      if (k == player_) continue;
      if (max_abs(profile[k].matrix() - expected.at(k).matrix()) > kScriptDeviationThreshold) {
        deviation_round_ = rounds_;
        fallback_ = make_learner_state(player_, dim(), fallback_schedule_, LearnerKind::mmwu);
        current_ = current_strategy(*fallback_);
        return;
      }
    }
    ++counts_[component_];
    component_ = next_component();
    current_ = script_->components[component_][player_];
  }

  std::string kind() const override { return "scripted"; }
  bool deviated() const { return fallback_.has_value(); }
  /// Round in which a deviation was first observed (1-based), 0 if none.
  std::size_t deviation_round() const { return deviation_round_; }
  const std::vector<std::size_t>& counts() const { return counts_; }

 private:
  std::size_t next_component() const {
    const double t = static_cast<double>(rounds_ + 1);
    std::size_t best = 0;
    double best_score = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < counts_.size(); ++j) {
      const double score = script_->weights[j] * t - static_cast<double>(counts_[j]);
      if (score > best_score) {
        best = j;
        best_score = score;
      }
    }
    return best;
  }

  std::shared_ptr<const SeparableDecomposition> script_;
  std::size_t player_;
  Schedule fallback_schedule_;
  std::vector<std::size_t> counts_;
  std::size_t rounds_ = 0;
  std::size_t component_;
  DensityMatrix current_;
  std::optional<LearnerState> fallback_;
  std::size_t deviation_round_ = 0;
};

inline std::vector<std::unique_ptr<Learner>> scripted_qcce_learners(
    std::shared_ptr<const SeparableDecomposition> script, Schedule fallback = Schedule::doubling()) {
  script->validate();
  std::vector<std::unique_ptr<Learner>> out;
  for (std::size_t i = 0; i < script->components.front().size(); ++i) {
    out.push_back(std::make_unique<ScriptedQcceLearner>(script, i, fallback));
  }
  return out;
}

struct RecordOptions {
  std::size_t checkpoint_stride = 1;
  std::size_t strategy_stride = 0;  // keep every n-th round's profile; 0 keeps none
  bool certify = true;              // equilibrium gaps at checkpoints
};

struct Checkpoint {
  std::size_t t = 0;
  std::vector<double> utilities;       // realized in round t
  std::vector<double> average_regret;  // external regret / t
  std::vector<double> qcce_gaps;       // time-averaged joint state
  std::vector<double> qne_gaps;        // product of time-averaged marginals
  RealVector joint_eigenvalues;        // round-t joint state, descending
  std::vector<DensityMatrix> strategies;
  std::vector<DensityMatrix> average_marginals;
};

struct Trajectory {
  RegisterLayout layout;
  std::uint64_t seed = 0;
  std::size_t steps = 0;
  ComplexMatrix joint_sum;                  // sum_t (x)_i rho_i^t
  std::vector<ComplexMatrix> marginal_sums;  // sum_t rho_i^t
  std::vector<std::vector<double>> utilities;  // [t-1][i]
  std::vector<double> cumulative_payoff;
  std::vector<HermitianMatrix> cumulative_gain;
  std::vector<std::pair<std::size_t, std::vector<DensityMatrix>>> strategies;
  std::vector<Checkpoint> checkpoints;

  DensityMatrix average_joint(double tolerance = tol::kLearned) const {
    return DensityMatrix(HermitianMatrix(ComplexMatrix(joint_sum / static_cast<double>(steps))),
                         tolerance);
  }
  DensityMatrix average_marginal(std::size_t i, double tolerance = tol::kLearned) const {
    return DensityMatrix(
        HermitianMatrix(ComplexMatrix(marginal_sums.at(i) / static_cast<double>(steps))), tolerance);
  }
  std::vector<DensityMatrix> average_marginals() const {
    std::vector<DensityMatrix> out;
    for (std::size_t i = 0; i < layout.size(); ++i) out.push_back(average_marginal(i));
    return out;
  }
};

/// lambda_max(sum_t G_i^t) - sum_t <rho_i^t, G_i^t>, optionally divided by T.
inline double external_regret(const Trajectory& traj, std::size_t i, bool average = true) {
  if (traj.steps == 0) throw InvalidArgument("external_regret: empty trajectory");
  const double r = lambda_max(traj.cumulative_gain.at(i)) - traj.cumulative_payoff.at(i);
  return average ? r / static_cast<double>(traj.steps) : r;
}

struct RegretReport {
  std::vector<double> average_regret;
  std::size_t horizon = 0;
  std::vector<double> bound;  // per player, from each player's schedule
};

inline RegretReport regret_report(const Trajectory& traj, std::span<const Schedule> schedules) {
  RegretReport r{{}, traj.steps, {}};
  for (std::size_t i = 0; i < traj.layout.size(); ++i) {
    r.average_regret.push_back(external_regret(traj, i));
    r.bound.push_back(regret_bound(schedules[i], traj.layout.dim(i), traj.steps));
  }
  return r;
}

/// Plays T synchronous rounds: every learner commits to a strategy, all gain
/// matrices are computed from that profile, then every learner observes.
inline Trajectory run_game(const QuantumGame& g, std::span<const std::unique_ptr<Learner>> learners,
                           std::size_t rounds, std::uint64_t seed = 0,
                           const RecordOptions& options = {}) {
  const auto& layout = g.layout();
  const std::size_t k = g.players();
  if (rounds == 0) throw InvalidArgument("run_game: need at least one round");
  if (learners.size() != k) throw InvalidArgument("run_game: one learner per player required");
  for (std::size_t i = 0; i < k; ++i) {
    if (learners[i]->dim() != layout.dim(i)) throw DimensionMismatch("run_game: learner dimension");
  }
  if (options.checkpoint_stride == 0) throw InvalidArgument("run_game: checkpoint stride must be >= 1");

  const std::size_t joint_dim = layout.joint_dim();
  Trajectory traj{layout, seed, 0, ComplexMatrix::Zero(joint_dim, joint_dim), {}, {}, {}, {}, {}, {}};
  for (std::size_t i = 0; i < k; ++i) {
    traj.marginal_sums.push_back(ComplexMatrix::Zero(layout.dim(i), layout.dim(i)));
    traj.cumulative_gain.push_back(HermitianMatrix::zero(layout.dim(i)));
  }
  traj.cumulative_payoff.assign(k, 0.0);
  traj.utilities.reserve(rounds);

  std::vector<DensityMatrix> profile;
  std::vector<HermitianMatrix> gains;
  for (std::size_t t = 1; t <= rounds; ++t) {
    profile.clear();
    for (const auto& l : learners) profile.push_back(l->strategy());
    gains.clear();
    std::vector<double> u(k);
    ComplexMatrix joint = profile[0].matrix();
    for (std::size_t i = 0; i < k; ++i) {
      gains.push_back(gain_matrix(g, i, profile));
      u[i] = hs_inner(profile[i].hermitian(), gains[i]);
      if (i > 0) joint = kron(joint, profile[i].matrix());
      traj.marginal_sums[i] += profile[i].matrix();
      traj.cumulative_gain[i] += gains[i];
      traj.cumulative_payoff[i] += u[i];
    }
    traj.joint_sum += joint;
    traj.steps = t;
    traj.utilities.push_back(u);
    if (options.strategy_stride != 0 && t % options.strategy_stride == 0) {
      traj.strategies.emplace_back(t, profile);
    }
    for (std::size_t i = 0; i < k; ++i) learners[i]->observe(gains[i], profile);

    if (t % options.checkpoint_stride == 0 || t == rounds) {
      Checkpoint c;
      c.t = t;
      c.utilities = u;
      for (std::size_t i = 0; i < k; ++i) c.average_regret.push_back(external_regret(traj, i));
      c.joint_eigenvalues = eigenvalues(HermitianMatrix(joint));
      c.strategies = profile;
      c.average_marginals = traj.average_marginals();
      if (options.certify) {
        c.qcce_gaps = is_qcce(g, traj.average_joint()).gaps;
        c.qne_gaps = is_qne(g, std::span<const DensityMatrix>(c.average_marginals)).gaps;
      }
      traj.checkpoints.push_back(std::move(c));
    }
  }
  return traj;
}

enum class SettingKind { general, zero_sum, polymatrix };

struct HorizonSetting {
  SettingKind kind = SettingKind::general;
  std::size_t dim = 2;      // largest register dimension
  std::size_t players = 2;  // polymatrix only
};

struct Horizon {
  double eta;
  std::size_t steps;
};

/// Fixed MMWU step size and horizon after which time-averaged play is
/// guaranteed eps-close to equilibrium (utilities in [-1, 1]):
///   general     eta = eps/2,      T = ceil(4 ln d / eps^2),      eps <= 2
///   zero-sum    eta = eps/4,      T = ceil(16 ln d / eps^2),     eps <= 4
///   polymatrix  eta = eps/(2k),   T = ceil(4 k^2 ln d / eps^2),  eps <= 2k
inline Horizon horizon_for_epsilon(const HorizonSetting& setting, double eps) {
  if (setting.dim < 2) throw InvalidArgument("horizon_for_epsilon: dimension must be >= 2");
  const double log_d = std::log(static_cast<double>(setting.dim));
  double eta = 0.0, scale = 0.0, cap = 0.0;
  switch (setting.kind) {
    case SettingKind::general:
      eta = eps / 2.0, scale = 4.0, cap = 2.0;
      break;
    case SettingKind::zero_sum:
      eta = eps / 4.0, scale = 16.0, cap = 4.0;
      break;
    case SettingKind::polymatrix: {
      if (setting.players < 2) throw InvalidArgument("horizon_for_epsilon: need k >= 2");
      const double k = static_cast<double>(setting.players);
      eta = eps / (2.0 * k), scale = 4.0 * k * k, cap = 2.0 * k;
      break;
    }
  }
  if (!(eps > 0.0) || eps > cap) throw InvalidArgument("horizon_for_epsilon: epsilon out of range");
  return {eta, static_cast<std::size_t>(std::ceil(scale * log_d / (eps * eps)))};
}

}  // namespace qgame
