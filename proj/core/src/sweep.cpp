#include "swimlab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <set>
#include <sstream>
#include <thread>

#include "swimlab/error.hpp"
#include "swimlab/pipeline.hpp"
#include "swimlab/records_io.hpp"

namespace swimlab {
namespace {

std::string fnv_hex(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char ch : s) {
    h ^= ch;
    h *= 1099511628211ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::string grid_hash(const ParameterSpace& space) {
  std::string s;
  char buf[32];
  for (const auto& p : space.parameters) {
    s += p.name + "=";
    for (double v : p.values) {
      std::snprintf(buf, sizeof buf, "%.17g;", v);
      s += buf;
    }
    s += "|";
  }
  return fnv_hex(s);
}

unsigned worker_count(unsigned requested, std::size_t jobs) {
  unsigned w = requested == 0 ? std::max(1u, std::thread::hardware_concurrency()) : requested;
  return static_cast<unsigned>(std::min<std::size_t>(w, std::max<std::size_t>(jobs, 1)));
}

// Evaluates every job on a small pool; results land in slot order.
std::vector<PointResult> run_jobs(const std::vector<std::vector<double>>& jobs,
                                  const PointEvaluator& evaluate, unsigned workers) {
  std::vector<PointResult> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto body = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) {
      try {
        out[i] = evaluate(jobs[i]);
      } catch (const std::exception& e) {
        out[i] = PointResult{};
        out[i].failed = true;
        out[i].error = e.what();
      }
      out[i].values = jobs[i];
    }
  };
  const unsigned w = worker_count(workers, jobs.size());
  if (w <= 1) {
    body();
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(w);
  for (unsigned k = 0; k < w; ++k) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  return out;
}

void finish(SweepResult& r) {
  r.failures = 0;
  r.ranking.clear();
  for (std::size_t i = 0; i < r.points.size(); ++i) {
    if (r.points[i].failed) {
      ++r.failures;
    } else {
      r.ranking.push_back(i);
    }
  }
  std::stable_sort(r.ranking.begin(), r.ranking.end(), [&](std::size_t a, std::size_t b) {
    return r.points[a].objective > r.points[b].objective;
  });
}

std::size_t flat_index(const ParameterSpace& s, const std::vector<std::size_t>& idx) {
  std::size_t flat = 0;
  for (std::size_t p = 0; p < s.parameters.size(); ++p)
    flat = flat * s.parameters[p].values.size() + idx[p];
  return flat;
}

}  // namespace

std::size_t ParameterSpace::size() const {
  std::size_t n = 1;
  for (const auto& p : parameters) {
    if (p.values.empty()) return 0;
    if (n > std::numeric_limits<std::size_t>::max() / p.values.size())
      return std::numeric_limits<std::size_t>::max();
    n *= p.values.size();
  }
  return n;
}

std::vector<double> ParameterSpace::point(std::size_t index) const {
  std::vector<double> v(parameters.size());
  for (std::size_t p = parameters.size(); p > 0; --p) {
    const auto& vals = parameters[p - 1].values;
    v[p - 1] = vals[index % vals.size()];
    index /= vals.size();
  }
  return v;
}

void ParameterSpace::validate() const {
  std::set<std::string> names;
  for (const auto& p : parameters) {
    if (p.values.empty()) throw ValidationError("sweep parameter " + p.name + " has no values");
    if (!names.insert(p.name).second) throw ValidationError("sweep parameter " + p.name + " repeated");
  }
}

double objective_value(Objective objective, const SwimMetrics& m) {
  switch (objective) {
    case Objective::tail_velocity: return m.caudal_velocity;
    case Objective::thrust: return m.thrust;
    case Objective::traveling_index: return m.traveling_index;
  }
  return m.thrust;
}

PointResult evaluate_point(const RunConfig& base, const std::vector<SweepParameter>& parameters,
                           const std::vector<double>& values, Objective objective) {
  PointResult r;
  r.values = values;
  try {
    if (values.size() != parameters.size())
      throw ValidationError("parameter value count does not match the space");
    RunConfig c = base;
    for (std::size_t i = 0; i < parameters.size(); ++i) set_parameter(c, parameters[i].name, values[i]);
    const RunOutputs run = run_simulation(c);
    r.metrics = run.analysis.metrics;
    r.objective = objective_value(objective, r.metrics);
  } catch (const std::exception& e) {
    r.failed = true;
    r.error = e.what();
  }
  return r;
}

SweepResult grid_sweep(const ParameterSpace& space, const PointEvaluator& evaluate,
                       const SweepOptions& options) {
  space.validate();
  SweepResult r;
  for (const auto& p : space.parameters) r.parameter_names.push_back(p.name);
  r.grid_size = space.size();
  r.grid_hash = grid_hash(space);
  r.model_version = version();

  if (r.grid_size <= kExhaustiveLimit) {
    if (r.grid_size > options.budget) {
      std::ostringstream os;
      os << "grid of " << r.grid_size << " points exceeds the evaluation budget of "
         << options.budget;
      throw ValidationError(os.str());
    }
    r.strategy = "exhaustive";
    std::vector<std::vector<double>> jobs;
    jobs.reserve(r.grid_size);
    for (std::size_t i = 0; i < r.grid_size; ++i) jobs.push_back(space.point(i));
    r.points = run_jobs(jobs, evaluate, options.workers);
    for (std::size_t i = 0; i < r.points.size(); ++i) r.points[i].index = i;
    finish(r);
    return r;
  }

  r.strategy = "coordinate_descent";
  const std::size_t n_p = space.parameters.size();
  std::vector<std::size_t> cur = options.start;
  if (cur.empty()) cur.assign(n_p, 0);
  if (cur.size() != n_p) throw ValidationError("coordinate-descent start has the wrong size");
  for (std::size_t p = 0; p < n_p; ++p)
    if (cur[p] >= space.parameters[p].values.size())
      throw ValidationError("coordinate-descent start outside the grid");

  std::map<std::size_t, PointResult> seen;
  auto value_of = [&](const std::vector<std::size_t>& idx) {
    std::vector<double> v(n_p);
    for (std::size_t p = 0; p < n_p; ++p) v[p] = space.parameters[p].values[idx[p]];
    return v;
  };
  auto score = [&](std::size_t flat) {
    const auto& pr = seen.at(flat);
    return pr.failed ? -std::numeric_limits<double>::infinity() : pr.objective;
  };
  auto evaluate_batch = [&](const std::vector<std::vector<std::size_t>>& cands) {
    std::vector<std::vector<double>> jobs;
    std::vector<std::size_t> flats;
    for (const auto& c : cands) {
      const std::size_t f = flat_index(space, c);
      if (seen.count(f) || std::find(flats.begin(), flats.end(), f) != flats.end()) continue;
      if (seen.size() + jobs.size() >= options.budget) break;
      jobs.push_back(value_of(c));
      flats.push_back(f);
    }
    auto res = run_jobs(jobs, evaluate, options.workers);
    for (std::size_t k = 0; k < res.size(); ++k) {
      res[k].index = flats[k];
      seen.emplace(flats[k], std::move(res[k]));
    }
  };

  evaluate_batch({cur});
  bool improved = true;
  while (improved && seen.size() < options.budget) {
    improved = false;
    for (std::size_t p = 0; p < n_p && seen.size() < options.budget; ++p) {
      std::vector<std::vector<std::size_t>> line;
      for (std::size_t k = 0; k < space.parameters[p].values.size(); ++k) {
        auto c = cur;
        c[p] = k;
        line.push_back(c);
      }
      evaluate_batch(line);
      std::size_t best = cur[p];
      double best_score = score(flat_index(space, cur));
      for (std::size_t k = 0; k < line.size(); ++k) {
        const std::size_t f = flat_index(space, line[k]);
        if (seen.count(f) && score(f) > best_score) {
          best = k;
          best_score = score(f);
        }
      }
      if (best != cur[p]) {
        cur[p] = best;
        improved = true;
      }
    }
  }
  for (auto& [f, pr] : seen) r.points.push_back(std::move(pr));
  finish(r);
  return r;
}

SweepResult grid_sweep(const RunConfig& base, const ParameterSpace& space, Objective objective,
                       const SweepOptions& options) {
  SweepOptions opts = options;
  if (opts.start.empty() && space.size() > kExhaustiveLimit) {
    // Start from the grid values closest to the base configuration.
    for (const auto& p : space.parameters) {
      const double v = get_parameter(base, p.name);
      std::size_t best = 0;
      for (std::size_t k = 1; k < p.values.size(); ++k)
        if (std::abs(p.values[k] - v) < std::abs(p.values[best] - v)) best = k;
      opts.start.push_back(best);
    }
  }
  const auto params = space.parameters;
  SweepResult r = grid_sweep(
      space,
      [&](const std::vector<double>& v) { return evaluate_point(base, params, v, objective); },
      opts);
  r.config_hash = config_hash(base);
  r.seed = base.sweep ? base.sweep->seed : 0;
  return r;
}

PhaseSearchResult phase_search(const RunConfig& base, double frequency_hz, double resolution_deg,
                               std::size_t top_k, const SweepOptions& options) {
  if (!(resolution_deg > 0.0) ||
      std::abs(360.0 / resolution_deg - std::round(360.0 / resolution_deg)) > 1e-9)
    throw ValidationError("phase resolution must divide 360 degrees");
  const auto steps = static_cast<std::size_t>(std::llround(360.0 / resolution_deg));
  std::vector<double> values;
  for (std::size_t k = 0; k < steps; ++k) values.push_back(static_cast<double>(k) * resolution_deg);

  RunConfig cfg = base;
  set_parameter(cfg, "actuation.frequency_hz", frequency_hz);
  set_parameter(cfg, "phase.L1", 0.0);
  set_parameter(cfg, "phase.L2", 0.0);
  set_parameter(cfg, "phase.L3", 0.0);

  ParameterSpace space;
  space.parameters = {{"phase.L1", values}, {"phase.L3", values}};
  PhaseSearchResult out;
  out.sweep = grid_sweep(cfg, space, Objective::thrust, options);
  for (std::size_t i = 0; i < out.sweep.ranking.size() && out.top.size() < top_k; ++i)
    out.top.push_back(out.sweep.points[out.sweep.ranking[i]]);
  if (out.top.empty()) throw Error(ErrorKind::convergence, "every phase pattern failed to simulate");
  RunConfig best = cfg;
  set_parameter(best, "phase.L1", out.top.front().values[0]);
  set_parameter(best, "phase.L3", out.top.front().values[1]);
  out.best = make_program(best.actuation);
  return out;
}

}  // namespace swimlab
