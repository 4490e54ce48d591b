// gqd: geometric discord of two-qubit states from the command line.
//
// Exit codes: 0 success, 1 domain error (message on stderr), 2 usage error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "gqd/geodiscord.hpp"
#include "gqd/models.hpp"
#include "gqd/qst.hpp"
#include "gqd/states.hpp"
#include "gqd/sweep.hpp"
#include "gqd/verify.hpp"

namespace {

using namespace gqd;

std::string num(double v) { return detail::format_real(v); }

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

std::string vec(const Vec3& v) { return num(v[0]) + " " + num(v[1]) + " " + num(v[2]); }

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw Error("cannot read " + path);
  std::stringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

Method parse_method(const std::string& s) { return s == "grid" ? Method::Grid : Method::Alternating; }

/// Analysis lines, each prefixed with `prefix`.
void print_analysis(std::ostream& os, const DensityMatrix& rho, Method method, const std::string& prefix) {
  const BlochForm b = bloch_decompose(rho);
  const GResult g = geometric_measure(b, method);
  os << prefix << "shape: " << to_string(classify(rho)) << "\n";
  os << prefix << "method: " << to_string(method) << "\n";
  os << prefix << "G: " << num(g.g) << "\n";
  os << prefix << "G_raw: " << num(g.g_raw) << "\n";
  os << prefix << "lambda_max: " << num(g.opt.lambda_max) << "\n";
  os << prefix << "total: " << num(g.total) << "\n";
  os << prefix << "k: " << vec(g.opt.axes.k()) << "\n";
  os << prefix << "l: " << vec(g.opt.axes.l()) << "\n";
  os << prefix << "iterations: " << g.opt.iterations << "\n";
  os << prefix << "converged: " << (g.opt.converged ? "true" : "false") << "\n";
  os << prefix << "restarts: " << g.opt.restarts_used << "\n";
  os << prefix << "x: " << vec(b.x) << "\n";
  os << prefix << "y: " << vec(b.y) << "\n";
  for (std::size_t i = 0; i < 3; ++i)
    os << prefix << "T" << i + 1 << ": " << num(b.t(i, 0)) << " " << num(b.t(i, 1)) << " " << num(b.t(i, 2)) << "\n";
  os << prefix << "summary: G = " << short_num(g.g) << ", lambda_max = " << short_num(g.opt.lambda_max) << "\n";
}

void print_condition6(std::ostream& os, const Condition6Report& rep) {
  os << "# condition clauses (tolerance " << num(rep.tolerance) << "):\n";
  for (std::size_t i = 0; i < 5; ++i) {
    os << "#   " << (rep.verbatim_satisfied[i] ? "pass" : "FAIL") << "  " << Condition6Report::kClauseNames[i]
       << "  residual " << num(rep.clause_residuals[i]) << "\n";
  }
  if (rep.radicand_negative) os << "#   radicand negative: " << num(rep.radicand) << "\n";
  if (rep.alternate_branch_evaluated) {
    os << "#   alternate branch (+sqrt): " << (rep.alternate_branch_satisfied ? "pass" : "FAIL") << "  residual "
       << num(rep.alternate_branch_residual) << "\n";
  }
  os << "# all clauses: " << (rep.all_verbatim() ? "pass" : "FAIL") << "\n";
  os << "# R matrices equal (Hadamard frame): " << (rep.r_matrices_equal ? "true" : "false") << "  max deviation "
     << num(rep.max_r_deviation) << "\n";
  os << "# R literal entrywise deviation: " << num(rep.literal_r_deviation) << "\n";
  os << "# T22 trace formula 2(p7-p6): " << num(rep.t22_trace_formula) << "  printed 2(p6-p7): " << num(rep.t22_printed)
     << "\n";
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_path);
  if (!f) throw Error("cannot write " + out_path);
  f << text;
  if (!f) throw Error("write failed: " + out_path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Geometric measure of quantum discord for two-qubit states"};
  app.require_subcommand(1);

  // analyze
  auto* analyze = app.add_subcommand("analyze", "G, lambda_max, optimal axes and Bloch form of a state file");
  std::string analyze_input, analyze_method = "alternating";
  analyze->add_option("--input", analyze_input, "qst1 state file")->required();
  analyze->add_option("--method", analyze_method, "maximizer")->check(CLI::IsMember({"alternating", "grid"}));

  // convert
  auto* convert = app.add_subcommand("convert", "Hadamard-convert between CS and X parameterizations");
  std::string convert_input, convert_to, convert_out;
  double convert_tol = 1e-10;
  convert->add_option("--input", convert_input, "qst1 state file")->required();
  convert->add_option("--to", convert_to, "target family")->required()->check(CLI::IsMember({"x", "cs"}));
  convert->add_option("--output", convert_out, "write the converted state here instead of stdout");
  convert->add_option("--tol", convert_tol, "tolerance for the condition report");

  // model
  auto* model = app.add_subcommand("model", "Emit a physical-model state in qst1 format");
  model->require_subcommand(1);
  auto* nano = model->add_subcommand("nanopore", "spin pair in a nanopore");
  NanoporeParams np;
  bool nano_analyze = false;
  std::string nano_method = "alternating";
  nano->add_option("--beta", np.beta)->required();
  nano->add_option("--n", np.n_spins, "number of spins N")->required();
  nano->add_option("--coupling", np.coupling, "dipolar coupling D")->required();
  nano->add_option("--time", np.time)->required();
  nano->add_flag("--analyze", nano_analyze, "append the analysis as comment lines");
  nano->add_option("--method", nano_method)->check(CLI::IsMember({"alternating", "grid"}));

  auto* xxz = model->add_subcommand("xxz-dm", "XXZ chain with DM interaction, thermal state");
  XxzDmParams xp;
  bool xxz_analyze = false, xxz_closed = false, xxz_oracle = false;
  std::string xxz_method = "alternating";
  xxz->add_option("--j", xp.j)->required();
  xxz->add_option("--jz", xp.jz)->required();
  xxz->add_option("--dx", xp.dx)->required();
  xxz->add_option("--temp", xp.temperature)->required();
  auto* closed_flag = xxz->add_flag("--closed", xxz_closed, "use the printed closed form");
  auto* oracle_flag = xxz->add_flag("--oracle", xxz_oracle, "use exp(-H/T)/Z (default)");
  closed_flag->excludes(oracle_flag);
  xxz->add_flag("--analyze", xxz_analyze, "append the analysis as comment lines");
  xxz->add_option("--method", xxz_method)->check(CLI::IsMember({"alternating", "grid"}));

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Evaluate G over a parameter grid and write CSV");
  std::string sweep_spec, sweep_out;
  int sweep_jobs = 0;
  sweep->add_option("--spec", sweep_spec, "sweep spec file")->required();
  sweep->add_option("--out", sweep_out, "CSV output file")->required();
  sweep->add_option("--jobs", sweep_jobs, "worker threads (overrides the spec)")->check(CLI::PositiveNumber);

  // verify
  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  int verify_samples = 100;
  std::uint64_t verify_seed = 7;
  verify->add_option("--samples", verify_samples)->check(CLI::PositiveNumber);
  verify->add_option("--seed", verify_seed);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) {
      const ParsedState s = parse_state(read_file(analyze_input));
      print_analysis(std::cout, s.rho, parse_method(analyze_method), "");
    } else if (*convert) {
      const ParsedState s = parse_state(read_file(convert_input));
      std::ostringstream os;
      if (convert_to == "x") {
        const CsParams p = s.cs ? *s.cs : extract_cs_params(s.rho);
        const XParams q = derive_x_from_cs(p);
        print_condition6(os, check_condition6(p, q, convert_tol));
        os << format_state(q);
      } else {
        const XParams q = s.x ? *s.x : extract_x_params(s.rho);
        const CsParams p = derive_cs_from_x(q);
        print_condition6(os, check_condition6(p, q, convert_tol));
        os << format_state(p);
      }
      emit(os.str(), convert_out);
    } else if (*nano) {
      const DensityMatrix rho = nanopore_state(np);
      std::cout << format_state(rho);
      if (nano_analyze) print_analysis(std::cout, rho, parse_method(nano_method), "# ");
    } else if (*xxz) {
      const DensityMatrix rho = xxz_closed ? xxz_dm_thermal_closed(xp) : xxz_dm_thermal_oracle(xp);
      std::cout << format_state(rho);
      if (xxz_analyze) print_analysis(std::cout, rho, parse_method(xxz_method), "# ");
    } else if (*sweep) {
      SweepSpec spec = load_sweep_spec(sweep_spec);
      if (sweep_jobs > 0) spec.jobs = sweep_jobs;
      const SweepTable table = run_sweep(spec);
      std::ofstream f(sweep_out, std::ios::binary);
      if (!f) throw Error("cannot write " + sweep_out);
      emit_csv(table, f);
      std::size_t invalid = 0;
      for (const auto& r : table.rows) invalid += r.valid ? 0 : 1;
      std::cerr << "wrote " << table.rows.size() << " rows (" << invalid << " invalid) to " << sweep_out << "\n";
    } else if (*verify) {
      const auto results = run_invariant_suite(verify_samples, verify_seed);
      bool all = true;
      for (const auto& c : results) {
        all = all && c.passed;
        std::printf("%-4s  %-10s  %-52s  worst %-12.3e  tol %.0e\n", c.passed ? "PASS" : "FAIL", c.module.c_str(),
                    c.name.c_str(), c.worst, c.tolerance);
      }
      std::printf("%s\n", all ? "all invariants hold" : "invariant failures");
      return all ? 0 : 1;
    }
  } catch (const gqd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
