#pragma once

#include "availkit/cutsets.hpp"
#include "availkit/error.hpp"
#include "availkit/model.hpp"
#include "availkit/probability.hpp"

#include <cmath>
#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace availkit::analytic {

enum class Method { closed_form, compositional, inclusion_exclusion };

inline std::string_view method_name(Method m) {
  switch (m) {
    case Method::closed_form: return "closed-form";
    case Method::compositional: return "compositional";
    case Method::inclusion_exclusion: return "inclusion-exclusion";
  }
  return "?";
}

struct AnalysisResult {
  Probability probability;
  Method method;
  std::optional<double> time;  // absent for steady state
};

// ---------------------------------------------------------------------------
// Scalar formula kernels, shared by the exact and float paths.

template <class T>
T steady_avail(const RatePair& r) {
  return scalar_from<T>(r.mu / (r.mu + r.lambda));
}

template <class T>
T steady_unavail(const RatePair& r) {
  return scalar_from<T>(r.lambda / (r.lambda + r.mu));
}

template <class T>
T all_of(std::span<const T> p) {
  T acc(1);
  for (const auto& v : p) acc *= v;
  return acc;
}

template <class T>
T none_of(std::span<const T> p) {
  T acc(1);
  for (const auto& v : p) acc *= T(1) - v;
  return acc;
}

template <class T>
T any_of(std::span<const T> p) {
  return T(1) - none_of(p);
}

/// Complemented group all absent, plain group all present.
template <class T>
T nand_of(std::span<const T> negated, std::span<const T> plain) {
  return none_of(negated) * all_of(plain);
}

template <class T>
T exactly_one(const T& a, const T& b) {
  return (T(1) - a) * b + a * (T(1) - b);
}

namespace detail {

inline void require_time(double t) {
  if (!(t >= 0) || !std::isfinite(t))
    throw InvalidArgument("time must be finite and non-negative, got " + std::to_string(t));
}

inline void require_rates(std::span<const RatePair> rs) {
  for (const auto& r : rs) r.require_valid();
}

inline void require_nonempty(std::span<const RatePair> rs, const char* what) {
  if (rs.empty()) throw InvalidArgument(std::string(what) + " needs at least one input");
}

template <class F>
std::vector<Rational> map_rates(std::span<const RatePair> rs, F&& f) {
  std::vector<Rational> out;
  out.reserve(rs.size());
  for (const auto& r : rs) out.push_back(f(r));
  return out;
}

inline std::vector<Rational> avails(std::span<const RatePair> rs) {
  require_rates(rs);
  return map_rates(rs, steady_avail<Rational>);
}

inline std::vector<Rational> unavails(std::span<const RatePair> rs) {
  require_rates(rs);
  return map_rates(rs, steady_unavail<Rational>);
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Component level.

/// mu / (mu + lambda), exact.
inline Probability steady_availability(const RatePair& r) {
  r.require_valid();
  return Probability(steady_avail<Rational>(r));
}

inline Probability steady_unavailability(const RatePair& r) {
  r.require_valid();
  return Probability(steady_unavail<Rational>(r));
}

/// mu/(mu+lambda) + lambda/(mu+lambda) * exp(-(lambda+mu) t).
inline Probability inst_availability(const RatePair& r, double t) {
  r.require_valid();
  detail::require_time(t);
  double lambda = to_double(r.lambda), mu = to_double(r.mu);
  double q = lambda / (lambda + mu);
  // Written as 1 - q (1 - e^{-(lambda+mu) t}) so that t = 0 gives exactly 1.
  return Probability(1.0 + q * std::expm1(-(lambda + mu) * t));
}

/// lambda/(mu+lambda) - lambda/(mu+lambda) * exp(-(lambda+mu) t).
inline Probability inst_unavailability(const RatePair& r, double t) {
  r.require_valid();
  detail::require_time(t);
  double lambda = to_double(r.lambda), mu = to_double(r.mu);
  double q = lambda / (lambda + mu);
  // -expm1 keeps full relative precision near t = 0.
  return Probability(q * -std::expm1(-(lambda + mu) * t));
}

/// exp(-lambda t): probability an exponential lifetime exceeds t.
inline Probability reliability_exp(double lambda, double t) {
  if (!(lambda > 0) || !std::isfinite(lambda))
    throw InvalidArgument("failure rate must be positive and finite");
  detail::require_time(t);
  return Probability(std::exp(-lambda * t));
}

inline Probability reliability_exp(const Rational& lambda, double t) {
  return reliability_exp(to_double(lambda), t);
}

// ---------------------------------------------------------------------------
// Block diagram structures (steady state, exact).

/// Product of availabilities; the empty series is always available.
inline Probability series_steady(std::span<const RatePair> rs) {
  auto a = detail::avails(rs);
  return Probability(all_of<Rational>(a));
}

/// One minus the product of unavailabilities; the empty parallel is never available.
inline Probability parallel_steady(std::span<const RatePair> rs) {
  auto a = detail::avails(rs);
  if (a.empty()) return Probability(Rational(0));
  return Probability(any_of<Rational>(a));
}

/// Series of parallel stages.
inline Probability series_parallel_steady(const std::vector<std::vector<RatePair>>& stages) {
  if (stages.empty()) throw InvalidArgument("series-parallel structure needs at least one stage");
  std::vector<Rational> stage_avail;
  for (const auto& stage : stages) {
    detail::require_nonempty(stage, "series-parallel stage");
    stage_avail.push_back(parallel_steady(stage).rational());
  }
  return Probability(all_of<Rational>(stage_avail));
}

/// Parallel of series branches.
inline Probability parallel_series_steady(const std::vector<std::vector<RatePair>>& branches) {
  if (branches.empty())
    throw InvalidArgument("parallel-series structure needs at least one branch");
  std::vector<Rational> branch_avail;
  for (const auto& branch : branches) {
    detail::require_nonempty(branch, "parallel-series branch");
    branch_avail.push_back(series_steady(branch).rational());
  }
  return Probability(any_of<Rational>(branch_avail));
}

// ---------------------------------------------------------------------------
// Fault tree gates over basic components (steady state, exact).

inline Probability and_gate_unavail(std::span<const RatePair> rs) {
  detail::require_nonempty(rs, "and gate");
  return Probability(all_of<Rational>(detail::unavails(rs)));
}

inline Probability or_gate_unavail(std::span<const RatePair> rs) {
  detail::require_nonempty(rs, "or gate");
  return Probability(any_of<Rational>(detail::unavails(rs)));
}

inline Probability nor_gate_unavail(std::span<const RatePair> rs) {
  detail::require_nonempty(rs, "nor gate");
  return Probability(none_of<Rational>(detail::unavails(rs)));
}

/// Availabilities of the negated group times unavailabilities of the plain group.
inline Probability nand_gate_unavail(std::span<const RatePair> negated,
                                     std::span<const RatePair> plain) {
  detail::require_nonempty(negated, "nand gate negated group");
  detail::require_nonempty(plain, "nand gate plain group");
  return Probability(nand_of<Rational>(detail::unavails(negated), detail::unavails(plain)));
}

inline Probability xor_gate_unavail(const RatePair& a, const RatePair& b) {
  a.require_valid();
  b.require_valid();
  return Probability(exactly_one(steady_unavail<Rational>(a), steady_unavail<Rational>(b)));
}

/// Complement of the input's unavailability: mu / (lambda + mu).
inline Probability not_gate_unavail(const RatePair& a) {
  a.require_valid();
  return Probability(Rational(1 - steady_unavail<Rational>(a)));
}

// ---------------------------------------------------------------------------
// Inclusion-exclusion over cut sets.

struct PieOptions {
  std::size_t max_cutsets = 20;
};

namespace detail {

/// Sum over nonempty subsets J of (-1)^(|J|-1) * prod of p over union(J).
/// Subsets are enumerated as increasing index sequences, each product
/// extended only by the events the new cut set adds to the union.
template <class T>
T inclusion_exclusion(const std::vector<std::vector<std::size_t>>& sets, const std::vector<T>& p) {
  std::vector<int> in_union(p.size(), 0);
  T total(0);
  std::function<void(std::size_t, const T&, bool)> extend = [&](std::size_t from, const T& prod,
                                                                bool odd) {
    for (std::size_t j = from; j < sets.size(); ++j) {
      T next = prod;
      for (std::size_t e : sets[j])
        if (in_union[e]++ == 0) next *= p[e];
      if (!odd)
        total += next;
      else
        total -= next;
      extend(j + 1, next, !odd);
      for (std::size_t e : sets[j]) --in_union[e];
    }
  };
  extend(0, T(1), false);
  return total;
}

}  // namespace detail

/// Probability that at least one cut set fully occurs, for independent events.
inline Probability pie_probability(const cutsets::CutSetCollection& cs,
                                   const std::map<std::string, Probability>& probs,
                                   const PieOptions& opt = {}) {
  std::size_t m = cs.sets.size();
  if (m > opt.max_cutsets) {
    throw LimitExceeded("inclusion-exclusion over " + std::to_string(m) + " cut sets needs 2^" +
                        std::to_string(m) + "-1 = " +
                        (m < 64 ? std::to_string((std::uint64_t{1} << m) - 1) : std::string("huge")) +
                        " terms, above the limit of " + std::to_string(opt.max_cutsets) +
                        " cut sets");
  }
  std::map<std::string, std::size_t> index;
  std::vector<const Probability*> used;
  std::vector<std::vector<std::size_t>> sets;
  for (const auto& s : cs.sets) {
    std::vector<std::size_t> ids;
    for (const auto& e : s) {
      auto [it, fresh] = index.emplace(e, used.size());
      if (fresh) {
        auto found = probs.find(e);
        if (found == probs.end()) throw ResolutionError("no probability for event '" + e + "'");
        used.push_back(&found->second);
      }
      ids.push_back(it->second);
    }
    std::sort(ids.begin(), ids.end());
    ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
    sets.push_back(std::move(ids));
  }
  bool exact = std::all_of(used.begin(), used.end(), [](const Probability* p) { return p->exact(); });
  if (exact) {
    std::vector<Rational> p;
    for (const auto* q : used) p.push_back(q->rational());
    return Probability(detail::inclusion_exclusion(sets, p));
  }
  std::vector<double> p;
  for (const auto* q : used) p.push_back(q->value());
  return Probability(detail::inclusion_exclusion(sets, p));
}

// ---------------------------------------------------------------------------
// Whole-model evaluation.

struct EvaluateOptions {
  PieOptions pie{};
  cutsets::ExpandOptions expand{};
};

namespace detail {

inline void require_valid_model(const SystemModel& model) {
  auto diags = validate(model);
  if (diags.empty()) return;
  std::string msg = "model '" + model.name + "' is invalid:";
  for (const auto& d : diags) msg += "\n  " + d.path + ": " + d.message;
  throw InvalidArgument(msg);
}

template <class T, class Leaf>
T compose(const Block& b, const Leaf& leaf) {
  if (b.kind == Block::Kind::unit) return leaf(b.id);
  std::vector<T> kids;
  for (const auto& c : b.children) kids.push_back(compose<T>(c, leaf));
  return b.kind == Block::Kind::series ? all_of<T>(kids) : any_of<T>(kids);
}

template <class T, class Leaf>
T compose(const Gate& g, const Leaf& leaf) {
  if (g.kind == Gate::Kind::basic) return leaf(g.id);
  std::vector<T> in, neg;
  for (const auto& c : g.inputs) in.push_back(compose<T>(c, leaf));
  for (const auto& c : g.negated) neg.push_back(compose<T>(c, leaf));
  switch (g.kind) {
    case Gate::Kind::and_: return all_of<T>(in);
    case Gate::Kind::or_: return any_of<T>(in);
    case Gate::Kind::nor: return none_of<T>(in);
    case Gate::Kind::nand: return nand_of<T>(neg, in);
    case Gate::Kind::xor_: return exactly_one(in[0], in[1]);
    case Gate::Kind::not_: return T(1) - in[0];
    case Gate::Kind::basic: break;
  }
  return T(0);
}

inline bool root_is_leaf(const SystemModel& m) {
  return m.is_abd() ? m.abd().kind == Block::Kind::unit : m.ft().kind == Gate::Kind::basic;
}

}  // namespace detail

/// Long-run value of the model's top quantity: availability for an ABD,
/// unavailability for a fault tree.
///
/// Independent leaves are composed structurally. With shared leaves, ABDs
/// and coherent trees go through minimal cut sets and inclusion-exclusion;
/// any other shared-leaf tree throws RequiresOracle.
inline AnalysisResult evaluate_steady(const SystemModel& model, const EvaluateOptions& opt = {}) {
  detail::require_valid_model(model);
  if (leaves_distinct(model)) {
    Rational value = std::visit(
        [&](const auto& root) {
          if (model.is_abd())
            return detail::compose<Rational>(root, [&](const std::string& id) {
              return steady_avail<Rational>(model.rates(id));
            });
          return detail::compose<Rational>(root, [&](const std::string& id) {
            return steady_unavail<Rational>(model.rates(id));
          });
        },
        model.body);
    Method how = detail::root_is_leaf(model) ? Method::closed_form : Method::compositional;
    return {Probability(std::move(value)), how, std::nullopt};
  }
  if (model.is_ft() && !is_coherent(model.ft()))
    throw RequiresOracle("model '" + model.name +
                         "' shares leaves in a non-coherent tree; only the oracles apply");

  auto mcs = cutsets::minimize(cutsets::model_cutsets(model, opt.expand));
  std::map<std::string, Probability> q;
  for (const auto& id : basic_events(model)) q.emplace(id, steady_unavailability(model.rates(id)));
  Probability top = pie_probability(mcs, q, opt.pie);
  if (model.is_abd()) top = top.complement();
  return {top, Method::inclusion_exclusion, std::nullopt};
}

/// Top quantity at time t (all components up at t = 0). Requires distinct leaves.
inline AnalysisResult evaluate_point(const SystemModel& model, double t) {
  detail::require_valid_model(model);
  detail::require_time(t);
  if (!leaves_distinct(model))
    throw RequiresOracle("model '" + model.name +
                         "' shares leaves; point-in-time results need the oracles");
  double value = std::visit(
      [&](const auto& root) {
        if (model.is_abd())
          return detail::compose<double>(root, [&](const std::string& id) {
            return inst_availability(model.rates(id), t).value();
          });
        return detail::compose<double>(root, [&](const std::string& id) {
          return inst_unavailability(model.rates(id), t).value();
        });
      },
      model.body);
  Method how = detail::root_is_leaf(model) ? Method::closed_form : Method::compositional;
  return {Probability(value), how, t};
}

}  // namespace availkit::analytic
