#pragma once

#include "availkit/analytic.hpp"
#include "availkit/error.hpp"
#include "availkit/model.hpp"
#include "availkit/probability.hpp"
#include "availkit/structure.hpp"

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <thread>
#include <vector>

namespace availkit::oracle {

// ---------------------------------------------------------------------------
// Exhaustive joint-state enumeration.

struct ExhaustiveOptions {
  std::size_t max_events = 20;
};

namespace detail {

template <class T>
T enumerate(const StructureFunction& f, const std::vector<T>& p) {
  const std::size_t n = p.size();
  std::vector<char> state(n, 0);
  T total(0);
  // Depth-first over assignments so each weight is one multiplication
  // away from its parent's.
  auto visit = [&](auto&& self, std::size_t i, const T& weight) -> void {
    if (i == n) {
      if (f([&](std::size_t e) { return state[e] != 0; })) total += weight;
      return;
    }
    state[i] = 1;
    self(self, i + 1, weight * p[i]);
    state[i] = 0;
    self(self, i + 1, weight * (T(1) - p[i]));
  };
  visit(visit, 0, T(1));
  return total;
}

}  // namespace detail

/// Probability that the model's root is true, summed over all 2^n joint
/// leaf assignments. `leaf_probs[e]` is the probability leaf e is true:
/// up for an ABD, down for a fault tree. Shared leaves and every gate are
/// handled literally.
inline Probability exhaustive_probability(const SystemModel& model,
                                          const std::map<std::string, Probability>& leaf_probs,
                                          const ExhaustiveOptions& opt = {}) {
  analytic::detail::require_valid_model(model);
  StructureFunction f(model);
  const auto& events = f.events();
  if (events.size() > opt.max_events)
    throw LimitExceeded("exhaustive enumeration refused: " + std::to_string(events.size()) +
                        " basic events exceeds the limit of " + std::to_string(opt.max_events));
  std::vector<const Probability*> p;
  for (const auto& e : events) {
    auto it = leaf_probs.find(e);
    if (it == leaf_probs.end()) throw ResolutionError("no probability for event '" + e + "'");
    p.push_back(&it->second);
  }
  if (std::all_of(p.begin(), p.end(), [](const Probability* q) { return q->exact(); })) {
    std::vector<Rational> exact;
    for (const auto* q : p) exact.push_back(q->rational());
    return Probability(detail::enumerate(f, exact));
  }
  std::vector<double> approx;
  for (const auto* q : p) approx.push_back(q->value());
  return Probability(detail::enumerate(f, approx));
}

/// Long-run leaf probabilities: availabilities for an ABD, unavailabilities for a fault tree.
inline std::map<std::string, Probability> steady_leaf_probabilities(const SystemModel& model) {
  std::map<std::string, Probability> out;
  for (const auto& id : basic_events(model)) {
    const auto& r = model.rates(id);
    out.emplace(id, model.is_abd() ? analytic::steady_availability(r)
                                   : analytic::steady_unavailability(r));
  }
  return out;
}

inline std::map<std::string, Probability> point_leaf_probabilities(const SystemModel& model,
                                                                   double t) {
  std::map<std::string, Probability> out;
  for (const auto& id : basic_events(model)) {
    const auto& r = model.rates(id);
    out.emplace(id, model.is_abd() ? analytic::inst_availability(r, t)
                                   : analytic::inst_unavailability(r, t));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Alternating renewal trajectories.

enum class ComponentState { up, down };

class TrajectoryTooShort : public Error {
 public:
  using Error::Error;
};

/// One component history: up for T_1, down for D_1, up for T_2, ...
/// Cycle k starts at S_k = sum of (T_i + D_i) for i < k, with S_1 = 0.
struct RenewalTrajectory {
  std::vector<double> up_durations;
  std::vector<double> down_durations;

  std::vector<double> cycle_starts() const {
    std::vector<double> s;
    s.reserve(up_durations.size());
    double at = 0;
    for (std::size_t k = 0; k < up_durations.size(); ++k) {
      s.push_back(at);
      at += up_durations[k] + (k < down_durations.size() ? down_durations[k] : 0.0);
    }
    return s;
  }

  /// End of the recorded history.
  double covered() const {
    return std::accumulate(up_durations.begin(), up_durations.end(), 0.0) +
           std::accumulate(down_durations.begin(), down_durations.end(), 0.0);
  }
};

/// Up iff S_k <= t < S_k + T_k for some cycle k.
inline ComponentState state_at(const RenewalTrajectory& traj, double t) {
  if (!(t >= 0)) throw InvalidArgument("time must be non-negative");
  double start = 0;
  for (std::size_t k = 0; k < traj.up_durations.size(); ++k) {
    double up_end = start + traj.up_durations[k];
    if (t < up_end) return ComponentState::up;
    if (k >= traj.down_durations.size()) break;
    double down_end = up_end + traj.down_durations[k];
    if (t < down_end) return ComponentState::down;
    start = down_end;
  }
  throw TrajectoryTooShort("trajectory ends before t = " + std::to_string(t));
}

/// Counter-based random stream: every draw is a pure function of
/// (seed, trial, component, draw index), so results do not depend on how
/// trials are scheduled across threads. Each coordinate is folded into the
/// key through the SplitMix64 finalizer.
class CounterRng {
 public:
  explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

  static std::uint64_t mix(std::uint64_t z) {
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t trial, std::uint64_t component, std::uint64_t draw) const {
    std::uint64_t h = mix(seed_);
    h = mix(h ^ trial);
    h = mix(h ^ component);
    return mix(h ^ draw);
  }

  /// Uniform on the open interval (0, 1).
  double uniform(std::uint64_t trial, std::uint64_t component, std::uint64_t draw) const {
    return (static_cast<double>(bits(trial, component, draw) >> 11) + 0.5) * 0x1.0p-53;
  }

  /// Inverse transform: -ln(u) / rate.
  double exponential(double rate, std::uint64_t trial, std::uint64_t component,
                     std::uint64_t draw) const {
    return -std::log(uniform(trial, component, draw)) / rate;
  }

 private:
  std::uint64_t seed_;
};

/// Samples a trajectory covering [0, until]: up durations at draw indices
/// 2i, down durations at 2i + 1.
inline RenewalTrajectory sample_trajectory(const RatePair& rates, const CounterRng& rng,
                                           std::uint64_t trial, std::uint64_t component,
                                           double until) {
  double lambda = to_double(rates.lambda), mu = to_double(rates.mu);
  RenewalTrajectory traj;
  double at = 0;
  std::uint64_t cycle = 0;
  while (at <= until) {
    double up = rng.exponential(lambda, trial, component, 2 * cycle);
    double down = rng.exponential(mu, trial, component, 2 * cycle + 1);
    traj.up_durations.push_back(up);
    traj.down_durations.push_back(down);
    at += up + down;
    ++cycle;
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Monte-Carlo estimators.

struct SimConfig {
  std::size_t trials = 1000;
  double horizon = 1e4;
  std::uint64_t seed = 0;
  unsigned threads = 1;
};

struct Estimate {
  double mean = 0;
  double standard_error = 0;
  std::size_t trials = 0;
};

namespace detail {

/// Runs `trial(i)` for every index, spread over threads, and reduces in
/// index order so the estimate is independent of the thread count.
template <class Trial>
Estimate run_trials(const SimConfig& cfg, const Trial& trial) {
  std::vector<double> values(cfg.trials);
  unsigned workers = std::max(1u, std::min<unsigned>(cfg.threads, static_cast<unsigned>(cfg.trials)));
  if (workers == 1) {
    for (std::size_t i = 0; i < cfg.trials; ++i) values[i] = trial(i);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::size_t i = w; i < cfg.trials; i += workers) values[i] = trial(i);
      });
    }
    for (auto& t : pool) t.join();
  }
  double n = static_cast<double>(cfg.trials);
  double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values) ss += (v - mean) * (v - mean);
  double se = cfg.trials > 1 ? std::sqrt(ss / (n - 1) / n) : 0.0;
  return {mean, se, cfg.trials};
}

inline std::vector<RatePair> event_rates(const SystemModel& model, const StructureFunction& f) {
  std::vector<RatePair> out;
  for (const auto& e : f.events()) out.push_back(model.rates(e));
  return out;
}

}  // namespace detail

/// Fraction of trials in which the top quantity holds at time t.
inline Estimate mc_point_availability(const SystemModel& model, double t, const SimConfig& cfg) {
  analytic::detail::require_valid_model(model);
  analytic::detail::require_time(t);
  if (cfg.trials == 0) throw InvalidArgument("trials must be at least 1");
  StructureFunction f(model);
  auto rates = detail::event_rates(model, f);
  CounterRng rng(cfg.seed);
  return detail::run_trials(cfg, [&](std::size_t trial) {
    std::vector<char> up(rates.size());
    for (std::size_t c = 0; c < rates.size(); ++c) {
      auto traj = sample_trajectory(rates[c], rng, trial, c, t);
      up[c] = state_at(traj, t) == ComponentState::up;
    }
    return f.measured(up) ? 1.0 : 0.0;
  });
}

/// Time-average of the top quantity over [0, horizon], by exact interval
/// bookkeeping over every component transition.
inline Estimate mc_steady_availability(const SystemModel& model, const SimConfig& cfg) {
  analytic::detail::require_valid_model(model);
  if (cfg.trials == 0) throw InvalidArgument("trials must be at least 1");
  if (!(cfg.horizon > 0) || !std::isfinite(cfg.horizon))
    throw InvalidArgument("horizon must be positive and finite");
  StructureFunction f(model);
  auto rates = detail::event_rates(model, f);
  CounterRng rng(cfg.seed);

  struct Transition {
    double time;
    std::size_t component;
    bool up;
  };

  return detail::run_trials(cfg, [&](std::size_t trial) {
    std::vector<Transition> changes;
    for (std::size_t c = 0; c < rates.size(); ++c) {
      auto traj = sample_trajectory(rates[c], rng, trial, c, cfg.horizon);
      double at = 0;
      for (std::size_t k = 0; k < traj.up_durations.size() && at < cfg.horizon; ++k) {
        at += traj.up_durations[k];
        if (at >= cfg.horizon) break;
        changes.push_back({at, c, false});
        at += traj.down_durations[k];
        if (at >= cfg.horizon) break;
        changes.push_back({at, c, true});
      }
    }
    std::sort(changes.begin(), changes.end(), [](const Transition& a, const Transition& b) {
      return a.time < b.time || (a.time == b.time && a.component < b.component);
    });

    std::vector<char> up(rates.size(), 1);
    bool holds = f.measured(up);
    double last = 0, held = 0;
    for (std::size_t i = 0; i < changes.size();) {
      double now = changes[i].time;
      if (holds) held += now - last;
      for (; i < changes.size() && changes[i].time == now; ++i)
        up[changes[i].component] = changes[i].up;
      holds = f.measured(up);
      last = now;
    }
    if (holds) held += cfg.horizon - last;
    return held / cfg.horizon;
  });
}

}  // namespace availkit::oracle
