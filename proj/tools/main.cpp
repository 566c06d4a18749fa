// Batch experiment runner: symstiefel <solve|sweep|compare|sympeig> [flags]
#include "symstiefel/experiment.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>

namespace {

// Flags registered on every verb. Values are collected as strings and handed
// to RunConfig::set after the config file, so the command line wins.
struct Overrides {
  std::string config_file;
  std::map<std::string, std::string> values;
};

void add_common(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--config", o.config_file, "flat key = value config file")
      ->check(CLI::ExistingFile);
  const char* keys[][2] = {
      {"problem", "nearest | mean | brockett | sympeig"},
      {"n", "half row count"},
      {"p", "half column count"},
      {"rho", "metric parameter (default 0.5 for I, 1 for II)"},
      {"variant", "orthonormalization condition: I | II"},
      {"retraction", "qgeo | cayley | cayley-dense"},
      {"alpha", "non-monotone weight, 0 gives Armijo"},
      {"step-rule", "bb1 | bb2 | abb | ratio"},
      {"seed", "random seed"},
      {"init", "initial point strategy 1, 2 or 3"},
      {"input", "MatrixMarket file replacing the generator"},
      {"out", "output directory"},
      {"max-iter", "iteration limit"},
      {"eps-grad", "gradient-norm tolerance"},
      {"eps-x", "step tolerance"},
      {"eps-f", "relative function-change tolerance"},
      {"step-test", "on | off: the combined step and function-change stopping test"},
      {"lambda", "brockett eigenvalue decay"},
      {"scale", "nearest target scale factor"},
      {"matrix", "sympeig gallery: lehmer | wilkinson_sq | companion_sq | central_diff"},
      {"samples", "mean: number of samples"},
      {"spread", "mean: sample spread"},
  };
  for (const auto& [key, help] : keys) {
    cmd->add_option_function<std::string>(
        std::string("--") + key,
        [&o, k = std::string(key)](const std::string& v) { o.values[k] = v; }, help);
  }
}

symstiefel::RunConfig make_config(const Overrides& o, const char* default_problem) {
  symstiefel::RunConfig c;
  if (default_problem) c.problem = default_problem;
  if (!o.config_file.empty()) c.load_file(o.config_file);
  for (const auto& [k, v] : o.values) c.set(k, v);
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Riemannian optimization on the symplectic Stiefel manifold"};
  app.require_subcommand(1);

  Overrides solve_o, sweep_o, compare_o, eig_o;
  std::string axis = "variant";
  auto* solve = app.add_subcommand("solve", "run one instance");
  add_common(solve, solve_o);
  auto* sweep = app.add_subcommand("sweep", "run one instance for rho = 2^-3 .. 2^3");
  add_common(sweep, sweep_o);
  auto* compare = app.add_subcommand("compare", "run one instance under several settings");
  add_common(compare, compare_o);
  compare->add_option("--axis", axis, "variant | retraction | step-rule | alpha")
      ->check(CLI::IsMember(symstiefel::compare_axes()));
  auto* eig = app.add_subcommand("sympeig", "smallest symplectic eigenvalues of an SPD matrix");
  add_common(eig, eig_o);

  CLI11_PARSE(app, argc, argv);

  int status = 2;
  std::string out;
  try {
    if (*solve) {
      const auto c = make_config(solve_o, nullptr);
      out = c.out;
      status = symstiefel::run_experiment(c);
    } else if (*sweep) {
      const auto c = make_config(sweep_o, nullptr);
      out = c.out;
      status = symstiefel::run_sweep(c);
    } else if (*compare) {
      const auto c = make_config(compare_o, nullptr);
      out = c.out;
      status = symstiefel::run_compare(c, axis);
    } else {
      const auto c = make_config(eig_o, "sympeig");
      out = c.out;
      status = symstiefel::run_experiment(c);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  if (status == 2) {
    std::cerr << "error: see " << out << "/error.json\n";
  } else if (status == 1) {
    std::cerr << "solver did not converge; see " << out << "\n";
  }
  return status;
}
