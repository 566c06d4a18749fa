#include "symstiefel/experiment.hpp"

#include "symstiefel/matrix_market.hpp"

#include <json.hpp>

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace symstiefel {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" + v + "'");
  }
  return out;
}

long long to_int(const std::string& key, const std::string& v) {
  std::size_t used = 0;
  long long out = 0;
  try {
    out = std::stoll(v, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != v.size()) {
    throw std::invalid_argument("config key '" + key + "': expected an integer, got '" + v + "'");
  }
  return out;
}

// Shortest text that parses back to the same double.
std::string fmt(double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

json summary_json(const RunConfig& config, const RunResult& r) {
  const SolveReport& rep = r.report;
  const IterationRecord& last = rep.last();
  json j;
  j["fval"] = last.fval;
  j["gradf"] = last.gradf;
  j["feasi"] = last.feasi;
  j["iter"] = last.iter;
  j["time"] = rep.seconds;
  j["termination"] = to_string(rep.termination);
  j["converged"] = rep.converged();
  j["degraded"] = rep.degraded;
  j["function_evals"] = rep.function_evals;
  j["gradient_evals"] = rep.gradient_evals;
  j["total_backtracks"] = rep.total_backtracks;
  j["warnings"] = rep.warnings;
  j["seed"] = config.seed;
  j["config"] = config.echo();
  const ProblemDescriptor& d = r.instance.problem.descriptor;
  j["problem"] = {{"kind", d.kind},     {"generator", d.generator}, {"source", d.source},
                  {"notes", d.notes},   {"n", r.instance.problem.n}, {"p", r.instance.problem.p}};
  if (r.eigen) {
    json e;
    e["estimates"] = r.eigen->values;
    e["smallest"] = r.eigen->smallest;
    e["pairing_residual"] = r.eigen->pairing_residual;
    if (!r.oracle.empty()) {
      e["oracle"] = r.oracle;
      e["smallest_rel_error"] = std::abs(r.eigen->smallest - r.oracle.front()) / r.oracle.front();
    }
    j["symplectic_eigenvalues"] = e;
  }
  return j;
}

void write_error(const fs::path& dir, const std::string& type, const std::string& message) {
  json j = {{"error", message}, {"type", type}};
  std::error_code ec;
  fs::create_directories(dir, ec);
  std::ofstream out(dir / "error.json", std::ios::binary);
  if (out) out << j.dump(2) << "\n";
}

template <class Fn>
int guarded(const RunConfig& config, Fn&& fn) {
  try {
    return fn();
  } catch (const MatrixMarketError& e) {
    write_error(config.out, "ingestion", e.what());
  } catch (const DimensionError& e) {
    write_error(config.out, "dimension", e.what());
  } catch (const std::invalid_argument& e) {
    write_error(config.out, "config", e.what());
  } catch (const std::exception& e) {
    write_error(config.out, "runtime", e.what());
  }
  return 2;
}

}  // namespace

void RunConfig::set(const std::string& raw_key, const std::string& raw_value) {
  std::string key = trim(raw_key);
  for (char& c : key) {
    if (c == '_') c = '-';
  }
  const std::string v = trim(raw_value);
  if (key == "problem") {
    problem = v;
  } else if (key == "n") {
    n = to_int(key, v);
  } else if (key == "p") {
    p = to_int(key, v);
  } else if (key == "seed") {
    const long long s = to_int(key, v);
    if (s < 0) throw std::invalid_argument("seed must be non-negative");
    seed = static_cast<std::uint64_t>(s);
  } else if (key == "init") {
    init = static_cast<int>(to_int(key, v));
  } else if (key == "scale") {
    scale = to_double(key, v);
  } else if (key == "lambda") {
    lambda = to_double(key, v);
  } else if (key == "matrix") {
    matrix = v;
  } else if (key == "samples") {
    samples = to_int(key, v);
  } else if (key == "spread") {
    spread = to_double(key, v);
  } else if (key == "input") {
    input = v;
  } else if (key == "variant") {
    variant = v;
  } else if (key == "rho") {
    rho = to_double(key, v);
  } else if (key == "retraction") {
    retraction = v;
  } else if (key == "step-rule") {
    step_rule = v;
  } else if (key == "alpha") {
    alpha = to_double(key, v);
  } else if (key == "beta") {
    beta = to_double(key, v);
  } else if (key == "delta") {
    delta = to_double(key, v);
  } else if (key == "max-iter") {
    max_iter = static_cast<int>(to_int(key, v));
  } else if (key == "eps-grad") {
    eps_grad = to_double(key, v);
  } else if (key == "eps-x") {
    eps_x = to_double(key, v);
  } else if (key == "eps-f") {
    eps_f = to_double(key, v);
  } else if (key == "step-test") {
    if (v == "on" || v == "1" || v == "true") {
      step_test = true;
    } else if (v == "off" || v == "0" || v == "false") {
      step_test = false;
    } else {
      throw std::invalid_argument("config key 'step-test': expected on or off, got '" + v + "'");
    }
  } else if (key == "out") {
    out = v;
  } else {
    throw std::invalid_argument("unknown config key '" + raw_key + "'");
  }
}

void RunConfig::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument(path + ":" + std::to_string(number) + ": expected key = value");
    }
    set(line.substr(0, eq), line.substr(eq + 1));
  }
}

void RunConfig::validate() const {
  if (problem != "nearest" && problem != "mean" && problem != "brockett" && problem != "sympeig") {
    throw std::invalid_argument("unknown problem '" + problem +
                                "' (expected nearest, mean, brockett, sympeig)");
  }
  if (input.empty()) {
    if (n < 1 || p < 1 || p > n) throw std::invalid_argument("need 1 <= p <= n");
  } else if (!fs::exists(input)) {
    throw std::invalid_argument("input file '" + input + "' does not exist");
  }
  if (p < 1) throw std::invalid_argument("p must be positive");
  if (rho && !(*rho > 0.0)) throw std::invalid_argument("rho must be positive");
  if (!(scale > 0.0)) throw std::invalid_argument("scale must be positive");
  if (samples < 1) throw std::invalid_argument("samples must be positive");
  if (!(spread >= 0.0)) throw std::invalid_argument("spread must be non-negative");
  (void)init_strategy_from_int(init);
  if (problem == "sympeig" && input.empty()) (void)gallery_from_string(matrix);
  (void)solver_options();
}

SolverOptions RunConfig::solver_options() const {
  SolverOptions o;
  o.metric = MetricSpec::defaults(orthonormalization_from_string(variant));
  if (rho) o.metric.rho = *rho;
  o.metric.validate();
  o.retraction = retraction_from_string(retraction);
  o.line_search.step_rule = step_rule_from_string(step_rule);
  o.line_search.alpha = alpha;
  o.line_search.beta = beta;
  o.line_search.delta = delta;
  o.line_search.validate();
  o.stop.max_iter = max_iter;
  o.stop.eps_grad = eps_grad;
  o.stop.eps_x = eps_x;
  o.stop.eps_f = eps_f;
  o.stop.step_test = step_test;
  o.stop.validate();
  return o;
}

std::map<std::string, std::string> RunConfig::echo() const {
  const SolverOptions o = solver_options();
  return {
      {"problem", problem},
      {"n", std::to_string(n)},
      {"p", std::to_string(p)},
      {"seed", std::to_string(seed)},
      {"init", std::to_string(init)},
      {"scale", fmt(scale)},
      {"lambda", fmt(lambda)},
      {"matrix", matrix},
      {"samples", std::to_string(samples)},
      {"spread", fmt(spread)},
      {"input", input},
      {"variant", variant},
      {"rho", fmt(o.metric.rho)},
      {"retraction", to_string(o.retraction)},
      {"step-rule", to_string(o.line_search.step_rule)},
      {"alpha", fmt(alpha)},
      {"beta", fmt(beta)},
      {"delta", fmt(delta)},
      {"max-iter", std::to_string(max_iter)},
      {"eps-grad", fmt(eps_grad)},
      {"eps-x", fmt(eps_x)},
      {"eps-f", fmt(eps_f)},
      {"step-test", step_test ? "on" : "off"},
  };
}

Instance build_instance(const RunConfig& config) {
  config.validate();
  Instance inst;
  Index n = config.n;
  const Index p = config.p;
  // Instance data and the starting point draw from separate streams.
  const std::uint64_t data_seed = config.seed;
  const std::uint64_t start_seed = config.seed ^ 0x9e3779b97f4a7c15ULL;

  if (config.problem == "nearest") {
    Matrix target;
    std::string generator;
    if (!config.input.empty()) {
      const Matrix raw = read_matrix_market(config.input);
      if (raw.rows() % 2 != 0) {
        throw DimensionError("nearest: input has an odd row count " + shape_string(raw));
      }
      if (raw.cols() < 2 * p) {
        throw DimensionError("nearest: input has fewer than 2p columns " + shape_string(raw));
      }
      target = normalize_max_abs(raw).leftCols(2 * p);
      generator = "file";
    } else {
      target = scale_by_spectral_norm(rand_gaussian(2 * n, 2 * p, data_seed), config.scale);
      generator = "gaussian";
    }
    n = target.rows() / 2;
    inst.problem = nearest_symplectic(target);
    inst.problem.descriptor.generator = generator;
  } else if (config.problem == "mean") {
    const Matrix center = rand_symplectic(n, p, InitStrategy::LocalExponential, data_seed);
    const auto cloud = sample_cloud(center, config.samples, config.spread, data_seed + 1);
    inst.problem = extrinsic_mean(cloud);
    inst.problem.descriptor.generator = "cloud";
  } else if (config.problem == "brockett") {
    Matrix a;
    if (!config.input.empty()) {
      a = read_matrix_market(config.input);
      inst.problem.descriptor.generator = "file";
    } else {
      a = spd_with_decay(n, config.lambda, data_seed);
    }
    n = a.rows() / 2;
    ProblemDescriptor keep = inst.problem.descriptor;
    inst.problem = brockett_trace(a, p);
    inst.problem.descriptor.generator = keep.generator.empty() ? "spd_with_decay" : keep.generator;
  } else {
    std::string generator;
    if (!config.input.empty()) {
      inst.spd = read_matrix_market(config.input);
      generator = "file";
    } else {
      const GalleryMatrix which = gallery_from_string(config.matrix);
      inst.spd = gallery(which, 2 * n);
      generator = to_string(which);
    }
    n = inst.spd.rows() / 2;
    inst.problem = symplectic_eig_smallest(inst.spd, p);
    inst.problem.descriptor.generator = generator;
  }
  inst.problem.descriptor.seed = config.seed;
  inst.problem.descriptor.source = config.input;
  inst.x0 = rand_symplectic(n, p, init_strategy_from_int(config.init), start_seed);
  return inst;
}

RunResult execute(const RunConfig& config) {
  RunResult r;
  r.instance = build_instance(config);
  r.report = solve(r.instance.problem, r.instance.x0, config.solver_options());
  if (config.problem == "sympeig") {
    r.eigen = extract_eigenvalues(r.instance.spd, r.report.x);
    if (r.instance.spd.rows() <= kOracleMaxSize) {
      const auto all = symplectic_eig_oracle(r.instance.spd);
      r.oracle.assign(all.begin(), all.begin() + r.instance.problem.p);
    }
  }
  return r;
}

std::string trajectory_csv(const SolveReport& report, const std::string& label) {
  std::string out = label.empty() ? "" : "label,";
  out += "iter,fval,gradf,feasi,t_k,backtracks\n";
  const std::string prefix = label.empty() ? "" : csv_field(label) + ",";
  for (const IterationRecord& row : report.rows) {
    out += prefix + std::to_string(row.iter) + "," + fmt(row.fval) + "," + fmt(row.gradf) + "," +
           fmt(row.feasi) + "," + fmt(row.step) + "," + std::to_string(row.backtracks) + "\n";
  }
  return out;
}

int run_experiment(const RunConfig& config) {
  return guarded(config, [&] {
    const RunResult r = execute(config);
    const fs::path dir(config.out);
    fs::create_directories(dir);
    write_text(dir / "trajectory.csv", trajectory_csv(r.report));
    write_text(dir / "summary.json", summary_json(config, r).dump(2) + "\n");
    write_matrix_market((dir / "final_point.mtx").string(), r.report.x);
    return r.report.converged() ? 0 : 1;
  });
}

int run_sweep(const RunConfig& config) {
  return guarded(config, [&] {
    const fs::path dir(config.out);
    fs::create_directories(dir);
    std::string csv = "rho,fval,gradf,feasi,iter,termination\n";
    json rows = json::array();
    bool all_converged = true;
    for (int e = -3; e <= 3; ++e) {
      RunConfig c = config;
      c.rho = std::ldexp(1.0, e);
      c.out = (dir / ("rho_2^" + std::to_string(e))).string();
      const RunResult r = execute(c);
      fs::create_directories(c.out);
      write_text(fs::path(c.out) / "trajectory.csv", trajectory_csv(r.report));
      const json s = summary_json(c, r);
      write_text(fs::path(c.out) / "summary.json", s.dump(2) + "\n");
      const IterationRecord& last = r.report.last();
      csv += fmt(*c.rho) + "," + fmt(last.fval) + "," + fmt(last.gradf) + "," + fmt(last.feasi) +
             "," + std::to_string(last.iter) + "," + to_string(r.report.termination) + "\n";
      rows.push_back({{"rho", *c.rho},           {"fval", last.fval},
                      {"gradf", last.gradf},     {"feasi", last.feasi},
                      {"iter", last.iter},       {"time", r.report.seconds},
                      {"termination", to_string(r.report.termination)}});
      all_converged = all_converged && r.report.converged();
    }
    write_text(dir / "sweep.csv", csv);
    write_text(dir / "sweep.json", json{{"seed", config.seed}, {"runs", rows}}.dump(2) + "\n");
    return all_converged ? 0 : 1;
  });
}

std::vector<std::string> compare_axes() { return {"variant", "retraction", "step-rule", "alpha"}; }

int run_compare(const RunConfig& config, const std::string& axis) {
  return guarded(config, [&] {
    std::vector<std::string> values;
    if (axis == "variant") {
      values = {"I", "II"};
    } else if (axis == "retraction") {
      values = {"qgeo", "cayley"};
    } else if (axis == "step-rule") {
      values = {"bb1", "bb2", "abb", "ratio"};
    } else if (axis == "alpha") {
      values = {"0", "0.85"};
    } else {
      throw std::invalid_argument("unknown compare axis '" + axis +
                                  "' (expected variant, retraction, step-rule, alpha)");
    }
    const fs::path dir(config.out);
    fs::create_directories(dir);
    std::string merged;
    json runs = json::array();
    bool all_converged = true;
    for (const std::string& v : values) {
      RunConfig c = config;
      c.set(axis, v);
      // A variant switch also switches the default rho unless one was given.
      const RunResult r = execute(c);
      const std::string label = axis + "=" + v;
      std::string csv = trajectory_csv(r.report, label);
      if (!merged.empty()) csv.erase(0, csv.find('\n') + 1);
      merged += csv;
      json s = summary_json(c, r);
      s["label"] = label;
      runs.push_back(std::move(s));
      all_converged = all_converged && r.report.converged();
    }
    write_text(dir / "compare.csv", merged);
    write_text(dir / "compare.json",
               json{{"axis", axis}, {"seed", config.seed}, {"runs", runs}}.dump(2) + "\n");
    return all_converged ? 0 : 1;
  });
}

}  // namespace symstiefel
