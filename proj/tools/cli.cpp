#include "cli.hpp"

#include <CLI11.hpp>

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "network.hpp"
#include "qhorn/dynamics.hpp"
#include "qhorn/errors.hpp"
#include "qhorn/horn/parser.hpp"
#include "qhorn/horn/solver.hpp"
#include "qhorn/qwalk.hpp"
#include "qhorn/slh.hpp"
#include "qhorn_acceptance/criteria.hpp"

#ifndef QHORN_FIXTURE_DIR
#define QHORN_FIXTURE_DIR "fixtures"
#endif

namespace qhorn::cli {

namespace {

// Thrown for unreadable inputs and unwritable outputs.
struct FileError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FileError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_output(const RunConfig& cfg, const std::string& text, std::ostream& out) {
  if (cfg.output.empty() || cfg.output == "-") {
    out << text;
    return;
  }
  std::ofstream f(cfg.output, std::ios::binary);
  if (!f) throw FileError("cannot write " + cfg.output);
  f << text;
  if (!f) throw FileError("write failed for " + cfg.output);
}

std::string complex_cell(linalg::cplx c) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g%+.10gj", c.real(), c.imag());
  return buf;
}

int cmd_prove(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  const std::string& file = cfg.inputs.at(0);
  const std::string src = read_file(file);
  horn::Program prog;
  try {
    prog = horn::parse_program(src);
  } catch (const ParseError& e) {
    err << file << ":" << e.what() << "\n";
    return EXIT_ERROR;
  }
  const horn::Engine engine(std::move(prog), {}, cfg.seed);
  const horn::SolveResult r = engine.solve(cfg.goal);
  out << "outcome: " << horn::outcome_name(r.outcome) << "\n";
  if (!r.reason.empty()) out << "reason: " << r.reason << "\n";
  for (const auto& [name, value] : r.bindings) out << "  " << name << " = " << value << "\n";
  for (const auto& line : r.final_state.records) out << "record: " << line << "\n";
  for (const auto& eq : r.contradictions) out << "contradiction: " << eq << "\n";
  if (cfg.trace) out << "trace:\n" << r.trace.to_text();
  return horn::exit_code(r.outcome);
}

int cmd_walk(const RunConfig& cfg, std::ostream& out) {
  write_output(cfg, walk_csv(cfg.steps), out);
  return EXIT_OK;
}

int cmd_slh(const RunConfig& cfg, std::ostream& out) {
  const Network net = load_network(read_file(cfg.inputs.at(0)));
  out << slh::describe(net.triple);
  if (cfg.cutoff) {
    const auto num = slh::evaluate(net.triple, *cfg.cutoff);
    if (cfg.matrices) {
      out << slh::describe_numeric(num);
    } else {
      out << "space:";
      for (const auto& f : num.space.factors) out << " " << f.label();
      out << " (dim " << num.space.dim() << ")\n";
    }
    char buf[128];
    std::snprintf(buf, sizeof buf, "scattering unitarity residual: %.3g\nhamiltonian hermiticity residual: %.3g\n",
                  slh::scattering_unitarity_residual(num), slh::hamiltonian_hermiticity_residual(num));
    out << buf;
  }
  return EXIT_OK;
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  slh::JCParams p = slh::JCParams::reference();
  p.alpha = cfg.alpha;
  p.kappa = cfg.kappa;
  p.gamma = cfg.gamma;
  p.g = cfg.g;
  const auto tr = dynamics::run_jc_cascade(p, cfg.initial, cfg.t_max, cfg.dt);
  std::ostringstream os;
  os << "t,trace,purity,concurrence";
  if (cfg.rho)
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) os << ",rho_" << i << j;
  os << "\n";
  char buf[160];
  for (std::size_t k = 0; k < tr.times.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.10g,%.12g,%.12g,%.12g", tr.times[k], tr.trace[k], tr.purity[k],
                  tr.concurrence.empty() ? 0.0 : tr.concurrence[k]);
    os << buf;
    if (cfg.rho)
      for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j) os << "," << complex_cell(tr.states[k](i, j));
    os << "\n";
  }
  write_output(cfg, os.str(), out);
  return EXIT_OK;
}

acceptance::Options acceptance_options(const RunConfig& cfg) {
  acceptance::Options o;
  o.fixture_dir = cfg.fixture_dir.empty() ? std::string(QHORN_FIXTURE_DIR) : cfg.fixture_dir;
  o.seed = cfg.seed;
  return o;
}

int cmd_fock_check(const RunConfig& cfg, std::ostream& out) {
  const auto r = acceptance::run_criterion(5, acceptance_options(cfg));
  out << acceptance::format_line(r) << "\n";
  return r.pass ? EXIT_OK : EXIT_REFUTED;
}

int cmd_selftest(const RunConfig& cfg, std::ostream& out) {
  const auto o = acceptance_options(cfg);
  int passed = 0;
  const int total = acceptance::CRITERION_COUNT - 1;
  for (int id = 1; id <= total; ++id) {
    const auto r = acceptance::run_criterion(id, o);
    out << acceptance::format_line(r) << std::endl;
    passed += r.pass ? 1 : 0;
  }
  out << "selftest: " << passed << "/" << total << " criteria passed\n";
  return passed == total ? EXIT_OK : EXIT_REFUTED;
}

}  // namespace

std::string format_csv_number(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  std::string s = buf;
  if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
  return s;
}

std::string walk_csv(std::size_t steps) {
  const auto p = qwalk::position_distribution(qwalk::hadamard_walk(steps));
  std::ostringstream os;
  os << "x,prob\n";
  const auto n = static_cast<long long>(steps);
  for (std::size_t i = 0; i < p.size(); ++i)
    os << static_cast<long long>(i) - n << "," << format_csv_number(p[i]) << "\n";
  return os.str();
}

int run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  try {
    if (cfg.subcommand == "prove") return cmd_prove(cfg, out, err);
    if (cfg.subcommand == "walk") return cmd_walk(cfg, out);
    if (cfg.subcommand == "slh-compose") return cmd_slh(cfg, out);
    if (cfg.subcommand == "simulate") return cmd_simulate(cfg, out);
    if (cfg.subcommand == "fock-check") return cmd_fock_check(cfg, out);
    if (cfg.subcommand == "selftest") return cmd_selftest(cfg, out);
    err << "qhorn: unknown subcommand " << cfg.subcommand << "\n";
    return EXIT_USAGE;
  } catch (const FileError& e) {
    err << "qhorn: " << e.what() << "\n";
    return EXIT_NOINPUT;
  } catch (const std::exception& e) {
    err << "qhorn: error: " << e.what() << "\n";
    return EXIT_ERROR;
  }
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  if (const char* env = std::getenv("QHORN_SEED")) {
    char* end = nullptr;
    errno = 0;
    const unsigned long long v = std::strtoull(env, &end, 10);
    if (*env == '\0' || *end != '\0' || errno != 0 || *env == '-') {
      err << "qhorn: QHORN_SEED must be a nonnegative integer\n";
      return EXIT_USAGE;
    }
    cfg.seed = v;
  }

  CLI::App app{"Quantum Horn clause toolkit"};
  app.require_subcommand(1);
  app.add_option("--seed", cfg.seed, "Random seed (default 20240611, or QHORN_SEED)");
  app.fallthrough();

  auto* prove = app.add_subcommand("prove", "Prove a goal against a .qh program");
  prove->add_option("file", cfg.inputs, "Program file")->required()->expected(1);
  prove->add_option("--goal", cfg.goal, "Goal, e.g. \"herald(nv1, nv2, p1, p2)\"")->required();
  prove->add_flag("--trace", cfg.trace, "Print the proof trace");

  auto* walk = app.add_subcommand("walk", "Hadamard walk position distribution as CSV");
  walk->add_option("--steps", cfg.steps, "Number of steps")->required();
  walk->add_option("--out", cfg.output, "Output CSV (default stdout)");

  auto* slh_cmd = app.add_subcommand("slh", "SLH network tools");
  slh_cmd->require_subcommand(1);
  auto* compose = slh_cmd->add_subcommand("compose", "Compose a JSON network description");
  compose->add_option("network", cfg.inputs, "Network JSON file")->required()->expected(1);
  compose->add_option("--cutoff", cfg.cutoff, "Evaluate numerically at this Fock cutoff")
      ->check(CLI::Range(std::size_t{1}, std::size_t{12}));
  compose->add_flag("--matrices", cfg.matrices, "Print the numeric matrices too");

  auto* sim = app.add_subcommand("simulate", "Integrate a master equation");
  sim->add_option("--model", cfg.model, "Model")->check(CLI::IsMember({"jc-cascade"}));
  sim->add_option("--initial", cfg.initial, "Initial two-atom state")->check(CLI::IsMember({"ee", "eg", "ge", "gg"}));
  sim->add_option("--tmax", cfg.t_max, "End time")->check(CLI::NonNegativeNumber);
  sim->add_option("--dt", cfg.dt, "Step size")->check(CLI::PositiveNumber);
  sim->add_option("--alpha", cfg.alpha, "Laser amplitude");
  sim->add_option("--kappa", cfg.kappa, "Cavity decay rate")->check(CLI::PositiveNumber);
  sim->add_option("--gamma", cfg.gamma, "Atomic decay rate")->check(CLI::NonNegativeNumber);
  sim->add_option("--g", cfg.g, "Atom-mode coupling");
  sim->add_option("--out", cfg.output, "Output CSV (default stdout)");
  sim->add_flag("--rho", cfg.rho, "Append the density matrix entries");

  auto* fock = app.add_subcommand("fock", "Fock-space checks");
  fock->require_subcommand(1);
  auto* fock_check = fock->add_subcommand("check", "Run the Fock layer acceptance checks");
  fock_check->add_option("--fixtures", cfg.fixture_dir, "Fixture directory");

  auto* self = app.add_subcommand("selftest", "Run acceptance criteria 1-9");
  self->add_option("--fixtures", cfg.fixture_dir, "Fixture directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    app.exit(e, out, err);
    return EXIT_OK;
  } catch (const CLI::CallForAllHelp& e) {
    app.exit(e, out, err);
    return EXIT_OK;
  } catch (const CLI::ParseError& e) {
    err << "qhorn: " << e.what() << "\n";
    err << "run 'qhorn --help' for usage\n";
    return EXIT_USAGE;
  }

  if (prove->parsed())
    cfg.subcommand = "prove";
  else if (walk->parsed())
    cfg.subcommand = "walk";
  else if (compose->parsed())
    cfg.subcommand = "slh-compose";
  else if (sim->parsed())
    cfg.subcommand = "simulate";
  else if (fock_check->parsed())
    cfg.subcommand = "fock-check";
  else if (self->parsed())
    cfg.subcommand = "selftest";
  return run(cfg, out, err);
}

}  // namespace qhorn::cli
