#pragma once

// Command-line front end. Needs the vendored CLI11.hpp and json.hpp on the
// include path; the rest of the library does not.

#include "availkit/analytic.hpp"
#include "availkit/casestudy.hpp"
#include "availkit/cutsets.hpp"
#include "availkit/modelfile.hpp"
#include "availkit/oracle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace availkit::cli {

inline constexpr std::string_view kVersion = "1.0.0";

/// Process exit codes.
enum Exit : int {
  kOk = 0,
  kVerdictFail = 1,   // compare/casestudy found a disagreement
  kInputError = 2,    // unreadable file, parse/validation failure, bad flag
  kNotApplicable = 3  // no analytic method applies to the model
};

class InputError : public Error {
 public:
  using Error::Error;
};

using Json = nlohmann::ordered_json;

struct Options {
  std::string file;
  std::vector<double> at;
  bool exact = false;
  bool json = false;
  std::size_t trials = 200;
  std::optional<double> horizon;
  std::uint64_t seed = 7;
  unsigned threads = 1;
  bool minimize = false;
  std::string out;
};

namespace detail {

inline std::string time_label(double t) {
  std::ostringstream os;
  os << std::setprecision(12) << t;
  return os.str();
}

inline std::string row_time(const std::optional<double>& t) {
  return t ? "t=" + time_label(*t) : std::string("steady");
}

inline Json json_time(const std::optional<double>& t) {
  return t ? Json(time_label(*t)) : Json("steady");
}

inline std::string quantity(const SystemModel& m) {
  return m.is_abd() ? "availability" : "unavailability";
}

inline SystemModel load(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  return modelfile::parse_model(buf.str());
}

inline Json header(std::string_view command, const SystemModel& m) {
  Json j;
  j["tool"] = "availkit";
  j["version"] = kVersion;
  j["command"] = command;
  j["model"] = m.name;
  j["structure"] = m.is_abd() ? "abd" : "ft";
  j["quantity"] = quantity(m);
  return j;
}

inline void print_header(std::ostream& out, const SystemModel& m) {
  out << "model      " << m.name << "\n"
      << "structure  " << (m.is_abd() ? "abd" : "ft") << " (" << m.components.size()
      << " components, " << basic_events(m).size() << " basic events)\n"
      << "quantity   " << quantity(m) << "\n";
}

inline void print_table(std::ostream& out, const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width;
  for (const auto& r : rows)
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (width.size() <= i) width.push_back(0);
      width[i] = std::max(width[i], r[i].size());
    }
  for (const auto& r : rows) {
    std::string line;
    for (std::size_t i = 0; i < r.size(); ++i) {
      line += r[i];
      if (i + 1 < r.size()) line += std::string(width[i] - r[i].size() + 2, ' ');
    }
    out << line << "\n";
  }
}

inline std::string dec(double v) { return format_significant(v); }

inline oracle::SimConfig sim_config(const Options& o) {
  return {o.trials, o.horizon.value_or(1e4), o.seed, o.threads};
}

inline bool agree(const Probability& a, const Probability& b) {
  if (a.exact() && b.exact()) return a.rational() == b.rational();
  return std::abs(a.value() - b.value()) <= 1e-12;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline int cmd_analyze(const Options& o, std::ostream& out) {
  if (o.exact && !o.at.empty())
    throw InputError("--exact cannot be combined with --at: point-in-time values are not rational");
  SystemModel m = detail::load(o.file);
  std::vector<analytic::AnalysisResult> results;
  results.push_back(analytic::evaluate_steady(m));
  for (double t : o.at) results.push_back(analytic::evaluate_point(m, t));
  if (o.exact && !results.front().probability.exact())
    throw InputError("no exact form is available for this model");

  if (o.json) {
    Json j = detail::header("analyze", m);
    j["results"] = Json::array();
    for (const auto& r : results) {
      Json row;
      row["time"] = detail::json_time(r.time);
      row["value"] = r.probability.decimal();
      row["exact"] = r.probability.exact() ? Json(rational_string(r.probability.rational())) : Json();
      row["method"] = analytic::method_name(r.method);
      j["results"].push_back(row);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  detail::print_header(out, m);
  out << "\n";
  std::vector<std::vector<std::string>> rows;
  rows.push_back(o.exact ? std::vector<std::string>{"time", "value", "exact", "method"}
                         : std::vector<std::string>{"time", "value", "method"});
  for (const auto& r : results) {
    std::vector<std::string> row{detail::row_time(r.time), r.probability.decimal()};
    if (o.exact) row.push_back(rational_string(r.probability.rational()));
    row.emplace_back(analytic::method_name(r.method));
    rows.push_back(std::move(row));
  }
  detail::print_table(out, rows);
  return kOk;
}

inline int cmd_simulate(const Options& o, std::ostream& out) {
  if (o.at.empty() && !o.horizon)
    throw InputError("nothing to simulate: pass --at and/or --horizon");
  if (o.trials == 0) throw InputError("--trials must be at least 1");
  if (o.horizon && !(*o.horizon > 0)) throw InputError("--horizon must be positive");
  SystemModel m = detail::load(o.file);
  auto cfg = detail::sim_config(o);

  struct Row {
    std::optional<double> time;
    oracle::Estimate est;
  };
  std::vector<Row> rows;
  if (o.horizon) rows.push_back({std::nullopt, oracle::mc_steady_availability(m, cfg)});
  for (double t : o.at) rows.push_back({t, oracle::mc_point_availability(m, t, cfg)});

  if (o.json) {
    Json j = detail::header("simulate", m);
    j["seed"] = std::to_string(o.seed);
    j["trials"] = o.trials;
    j["horizon"] = o.horizon ? Json(detail::time_label(*o.horizon)) : Json();
    j["results"] = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["time"] = detail::json_time(r.time);
      row["mean"] = detail::dec(r.est.mean);
      row["standard_error"] = detail::dec(r.est.standard_error);
      row["trials"] = r.est.trials;
      j["results"].push_back(row);
    }
    out << j.dump(2) << "\n";
    return kOk;
  }
  detail::print_header(out, m);
  out << "seed       " << o.seed << "\n"
      << "trials     " << o.trials << "\n";
  if (o.horizon) out << "horizon    " << detail::time_label(*o.horizon) << "\n";
  out << "\n";
  std::vector<std::vector<std::string>> table{{"time", "mean", "std-error"}};
  for (const auto& r : rows)
    table.push_back({detail::row_time(r.time), detail::dec(r.est.mean),
                     detail::dec(r.est.standard_error)});
  detail::print_table(out, table);
  return kOk;
}

/// One line of a comparison: every applicable route for one time point.
struct Comparison {
  std::optional<double> time;
  std::optional<Probability> analytic;
  std::string method;  // analytic method, or why it is missing
  std::optional<Probability> pie;
  std::optional<Probability> exhaustive;
  oracle::Estimate simulation;
  std::optional<double> abs_diff;
  std::string verdict;
};

/// Runs analytic, inclusion-exclusion, exhaustive and Monte-Carlo routes
/// side by side. The verdict passes when the deterministic routes agree
/// (exactly, or to 1e-12 in float) and the simulation is within four
/// standard errors of them.
inline std::vector<Comparison> compare_model(const SystemModel& m, const Options& o) {
  auto cfg = detail::sim_config(o);
  bool coherent = m.is_abd() || is_coherent(m.ft());
  std::optional<cutsets::CutSetCollection> mcs;
  if (coherent) {
    try {
      mcs = cutsets::minimize(cutsets::model_cutsets(m));
    } catch (const LimitExceeded&) {
    }
  }
  bool enumerable = basic_events(m).size() <= oracle::ExhaustiveOptions{}.max_events;

  std::vector<std::optional<double>> times{std::nullopt};
  for (double t : o.at) times.push_back(t);

  std::vector<Comparison> rows;
  for (const auto& t : times) {
    Comparison c;
    c.time = t;
    try {
      auto r = t ? analytic::evaluate_point(m, *t) : analytic::evaluate_steady(m);
      c.analytic = r.probability;
      c.method = analytic::method_name(r.method);
    } catch (const RequiresOracle&) {
      c.method = "n/a (oracle only)";
    } catch (const LimitExceeded&) {
      c.method = "n/a (limit exceeded)";
    }
    auto leaf = t ? oracle::point_leaf_probabilities(m, *t) : oracle::steady_leaf_probabilities(m);
    if (mcs && mcs->size() <= analytic::PieOptions{}.max_cutsets) {
      std::map<std::string, Probability> q;
      for (const auto& [id, p] : leaf) q.emplace(id, m.is_abd() ? p.complement() : p);
      Probability top = analytic::pie_probability(*mcs, q);
      c.pie = m.is_abd() ? top.complement() : top;
    }
    if (enumerable) c.exhaustive = oracle::exhaustive_probability(m, leaf);
    c.simulation = t ? oracle::mc_point_availability(m, *t, cfg) : oracle::mc_steady_availability(m, cfg);

    std::optional<Probability> reference = c.analytic ? c.analytic : c.exhaustive ? c.exhaustive : c.pie;
    if (!reference) {
      c.verdict = "n/a";
    } else {
      bool consistent = true;
      for (const auto* other : {&c.analytic, &c.pie, &c.exhaustive})
        if (*other && !detail::agree(**other, *reference)) consistent = false;
      double diff = std::abs(reference->value() - c.simulation.mean);
      c.abs_diff = diff;
      double band = c.simulation.standard_error > 0 ? 4 * c.simulation.standard_error : 1e-12;
      c.verdict = consistent && diff <= band ? "PASS" : "FAIL";
    }
    rows.push_back(std::move(c));
  }
  return rows;
}

inline std::string overall_verdict(const std::vector<Comparison>& rows) {
  bool any_pass = false;
  for (const auto& r : rows) {
    if (r.verdict == "FAIL") return "FAIL";
    any_pass = any_pass || r.verdict == "PASS";
  }
  return any_pass ? "PASS" : "n/a";
}

inline int report_comparison(std::string_view command, const SystemModel& m, const Options& o,
                             std::ostream& out, const std::string& fixture = {}) {
  if (o.trials == 0) throw InputError("--trials must be at least 1");
  if (o.horizon && !(*o.horizon > 0)) throw InputError("--horizon must be positive");
  auto rows = compare_model(m, o);
  std::string verdict = overall_verdict(rows);
  auto maybe = [](const std::optional<Probability>& p) {
    return p ? Json(p->decimal()) : Json();
  };

  if (o.json) {
    Json j = detail::header(command, m);
    if (!fixture.empty()) j["fixture"] = fixture;
    j["seed"] = std::to_string(o.seed);
    j["trials"] = o.trials;
    j["horizon"] = detail::time_label(o.horizon.value_or(1e4));
    j["results"] = Json::array();
    for (const auto& r : rows) {
      Json row;
      row["time"] = detail::json_time(r.time);
      row["analytic"] = maybe(r.analytic);
      row["exact"] = r.analytic && r.analytic->exact()
                         ? Json(rational_string(r.analytic->rational())) : Json();
      row["method"] = r.method;
      row["pie"] = maybe(r.pie);
      row["exhaustive"] = maybe(r.exhaustive);
      row["simulation"] = detail::dec(r.simulation.mean);
      row["standard_error"] = detail::dec(r.simulation.standard_error);
      row["abs_diff"] = r.abs_diff ? Json(detail::dec(*r.abs_diff)) : Json();
      row["verdict"] = r.verdict;
      j["results"].push_back(row);
    }
    j["verdict"] = verdict;
    out << j.dump(2) << "\n";
  } else {
    detail::print_header(out, m);
    if (!fixture.empty()) out << "fixture    " << fixture << "\n";
    out << "seed       " << o.seed << "\n"
        << "trials     " << o.trials << "\n"
        << "horizon    " << detail::time_label(o.horizon.value_or(1e4)) << "\n\n";
    auto text = [](const std::optional<Probability>& p) { return p ? p->decimal() : std::string("n/a"); };
    std::vector<std::vector<std::string>> table{
        {"time", "analytic", "method", "pie", "exhaustive", "simulation", "std-error", "|diff|", "verdict"}};
    for (const auto& r : rows)
      table.push_back({detail::row_time(r.time), r.analytic ? r.analytic->decimal() : "n/a",
                       r.method, text(r.pie), text(r.exhaustive), detail::dec(r.simulation.mean),
                       detail::dec(r.simulation.standard_error),
                       r.abs_diff ? detail::dec(*r.abs_diff) : "n/a", r.verdict});
    detail::print_table(out, table);
    out << "\nverdict    " << verdict << "\n";
  }
  return verdict == "FAIL" ? kVerdictFail : kOk;
}

inline int cmd_compare(const Options& o, std::ostream& out) {
  return report_comparison("compare", detail::load(o.file), o, out);
}

inline int cmd_cutsets(const Options& o, std::ostream& out) {
  SystemModel m = detail::load(o.file);
  if (!m.is_ft()) throw NonCoherentTree("cut sets need a fault tree; '" + o.file + "' is an ABD");
  auto cs = cutsets::expand_to_cutsets(m.ft());
  if (o.minimize) cs = cutsets::minimize(cs);
  if (o.json) {
    Json j = detail::header("cutsets", m);
    j["minimized"] = cs.minimized;
    j["count"] = cs.size();
    j["cutsets"] = cs.sets;
    out << j.dump(2) << "\n";
    return kOk;
  }
  detail::print_header(out, m);
  out << (cs.minimized ? "minimal cut sets " : "cut sets ") << cs.size() << "\n\n";
  for (const auto& s : cs.sets) out << cutsets::to_string(s) << "\n";
  return kOk;
}

inline int cmd_casestudy(const std::string& name, const Options& o, std::ostream& out) {
  auto text = casestudy::fixture(name);
  if (!text) {
    std::string known;
    for (auto n : casestudy::names()) known += (known.empty() ? "" : ", ") + std::string(n);
    throw InputError("unknown case study '" + name + "' (known: " + known + ")");
  }
  std::string path = o.out.empty() ? name + ".avm" : o.out;
  {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw InputError("cannot write '" + path + "'");
    f << *text;
  }
  return report_comparison("casestudy", detail::load(path), o, out, path);
}

// ---------------------------------------------------------------------------

namespace detail {

template <class F>
int guarded(const std::string& file, std::ostream& err, F&& body) {
  try {
    return body();
  } catch (const modelfile::ParseError& e) {
    for (const auto& d : e.diagnostics()) {
      err << file;
      if (d.span) err << ":" << d.span->line << ":" << d.span->column;
      err << ": " << d.message << "\n";
    }
    return kInputError;
  } catch (const RequiresOracle& e) {
    err << "error: " << e.what() << "\nhint: run `availkit simulate` or `availkit compare`\n";
    return kNotApplicable;
  } catch (const NonCoherentTree& e) {
    err << "error: " << e.what() << "\n";
    return kNotApplicable;
  } catch (const LimitExceeded& e) {
    err << "error: " << e.what() << "\n";
    return kNotApplicable;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

inline unsigned default_threads() {
  const char* env = std::getenv("AVAILKIT_THREADS");
  if (!env || !*env) return 1;
  char* end = nullptr;
  unsigned long n = std::strtoul(env, &end, 10);
  if (*end != '\0' || n == 0) return 1;
  return static_cast<unsigned>(n);
}

}  // namespace detail

/// Entry point shared by the binary and the tests.
inline int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Availability analysis of block diagrams and unavailability fault trees",
               "availkit"};
  app.set_version_flag("--version", std::string(kVersion));
  app.require_subcommand(1);

  Options o;
  o.threads = detail::default_threads();
  std::string study;

  auto positive_time = CLI::Range(0.0, std::numeric_limits<double>::max());
  auto sim_flags = [&](CLI::App* sub) {
    sub->add_option("--trials", o.trials, "Monte-Carlo trials")->capture_default_str();
    sub->add_option("--horizon", o.horizon, "Simulated time span for the long-run estimate");
    sub->add_option("--seed", o.seed, "Random seed")->capture_default_str();
    sub->add_option("--threads", o.threads, "Worker threads (default: $AVAILKIT_THREADS or 1)")
        ->check(CLI::PositiveNumber);
  };
  auto at_flag = [&](CLI::App* sub) {
    sub->add_option("--at", o.at, "Comma-separated time points")->delimiter(',')->check(positive_time);
  };

  auto* analyze = app.add_subcommand("analyze", "Closed-form steady-state and point values");
  analyze->add_option("file", o.file, "Model file (.avm)")->required();
  at_flag(analyze);
  analyze->add_flag("--exact", o.exact, "Print exact rationals; refuse time-dependent requests");
  analyze->add_flag("--json", o.json, "Machine-readable report");

  auto* simulate = app.add_subcommand("simulate", "Monte-Carlo renewal simulation");
  simulate->add_option("file", o.file, "Model file (.avm)")->required();
  at_flag(simulate);
  sim_flags(simulate);
  simulate->add_flag("--json", o.json, "Machine-readable report");

  auto* compare = app.add_subcommand("compare", "Analytic, exhaustive and simulated values side by side");
  compare->add_option("file", o.file, "Model file (.avm)")->required();
  at_flag(compare);
  sim_flags(compare);
  compare->add_flag("--json", o.json, "Machine-readable report");

  auto* cuts = app.add_subcommand("cutsets", "Cut sets of a coherent fault tree");
  cuts->add_option("file", o.file, "Model file (.avm)")->required();
  cuts->add_flag("--minimize", o.minimize, "Reduce to minimal cut sets");
  cuts->add_flag("--json", o.json, "Machine-readable report");

  auto* cases = app.add_subcommand("casestudy", "Write a built-in model and compare it");
  cases->add_option("name", study, "dfh3-abd | dfh3-ft")->required();
  cases->add_option("--out", o.out, "Where to write the fixture (default: <name>.avm)");
  at_flag(cases);
  sim_flags(cases);
  cases->add_flag("--json", o.json, "Machine-readable report");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  const std::string& label = study.empty() ? o.file : study;
  return detail::guarded(label, err, [&] {
    if (*analyze) return cmd_analyze(o, out);
    if (*simulate) return cmd_simulate(o, out);
    if (*compare) return cmd_compare(o, out);
    if (*cuts) return cmd_cutsets(o, out);
    return cmd_casestudy(study, o, out);
  });
}

}  // namespace availkit::cli
