#include "branchsys/cli.hpp"

#include "branchsys/branching.hpp"
#include "branchsys/condition_k.hpp"
#include "branchsys/json_io.hpp"
#include "branchsys/representation.hpp"
#include "branchsys/transfer.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

namespace branchsys {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

// Midpoints of K equal cells over the hull of X.
std::vector<Rational> sample_points(const IntervalSet& x, int samples) {
  std::vector<Rational> pts;
  if (x.empty() || samples <= 0) return pts;
  const Interval hull = x.hull();
  for (int j = 0; j < samples; ++j) {
    pts.push_back(hull.lo + hull.length() * Rational(2 * j + 1, 2 * samples));
  }
  return pts;
}

DirectedGraph load_graph_file(const std::string& path) {
  const Json j = parse_json_document(read_file(path));
  if (j.is_object() && j.contains("graph")) return graph_from_json(j["graph"], "/graph", {});
  return graph_from_json(j, "", {});
}

BranchingSystem load_system_file(const std::string& path) {
  return load_system(read_file(path));
}

PPoly load_ppoly_file(const std::string& path) {
  return ppoly_from_json(parse_json_document(read_file(path)));
}

IntervalSet parse_set(const std::string& text) {
  std::vector<Interval> parts;
  std::stringstream ss(text);
  std::string chunk;
  while (std::getline(ss, chunk, ';')) {
    const auto comma = chunk.find(',');
    if (comma == std::string::npos) throw InputError("set '" + text + "' needs \"lo,hi\" pairs");
    Rational lo = parse_rational(chunk.substr(0, comma));
    Rational hi = parse_rational(chunk.substr(comma + 1));
    if (!(lo < hi)) throw InputError("empty interval in set '" + text + "'");
    parts.emplace_back(std::move(lo), std::move(hi));
  }
  return IntervalSet(std::move(parts));
}

void emit(std::ostream& out, const Json& j) { out << j.dump(2) << '\n'; }

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Branching systems, graph C*-algebra representations and transfer operators",
               "branchsys"};
  app.require_subcommand(1);

  std::string input, output, word, func, set_text;
  int trials = 20, degree = 3, samples = 1000, iters = 10;
  double tol = 1e-9;
  std::uint64_t seed = 42;

  auto* check_k = app.add_subcommand("check-k", "Decide condition (K) for a graph");
  check_k->add_option("graph", input, "Graph JSON (or a system file)")->required();

  auto* build = app.add_subcommand("build", "Build the default branching system of a graph");
  build->add_option("graph", input, "Graph JSON")->required();
  build->add_option("-o,--output", output, "Write the system JSON here");

  auto* validate_cmd = app.add_subcommand("validate", "Check the branching-system conditions");
  validate_cmd->add_option("system", input, "System JSON")->required();

  auto* verify = app.add_subcommand("verify", "Verify the generator relations");
  verify->add_option("system", input, "System JSON")->required();
  verify->add_option("--trials", trials, "Random probe functions")->capture_default_str();
  verify->add_option("--degree", degree, "Maximum probe degree")->capture_default_str();
  verify->add_option("--tol", tol, "L2 residual tolerance")->capture_default_str();
  verify->add_option("--seed", seed, "Random seed")->capture_default_str();

  auto* apply = app.add_subcommand("apply", "Apply an operator word to a function");
  apply->add_option("system", input, "System JSON")->required();
  apply->add_option("--word", word, "Tokens S_<e>, S_<e>*, P_<v>")->required();
  apply->add_option("--func", func, "Function JSON")->required();
  apply->add_option("-o,--output", output, "Sample TSV");
  apply->add_option("--samples", samples, "Sample count")->capture_default_str();

  auto* pf = app.add_subcommand("pf", "Iterate the Perron-Frobenius operator");
  pf->add_option("system", input, "System JSON")->required();
  pf->add_option("--func", func, "Initial function JSON (default: normalized indicator of the R's)");
  pf->add_option("--iters", iters, "Number of steps")->capture_default_str();
  pf->add_option("-o,--output", output, "Trajectory TSV");
  pf->add_option("--samples", samples, "Samples per step")->capture_default_str();

  auto* thm44 = app.add_subcommand("thm44", "Compare P_F(phi^2) with the sum of (S_e^* phi)^2");
  thm44->add_option("system", input, "System JSON")->required();
  thm44->add_option("--func", func, "Function JSON")->required();
  thm44->add_option("--tol", tol, "L1 tolerance")->capture_default_str();

  auto* duality = app.add_subcommand("duality", "Check the Perron-Frobenius integral identity");
  duality->add_option("system", input, "System JSON")->required();
  duality->add_option("--func", func, "Function JSON")->required();
  duality->add_option("--set", set_text, "Set A as \"lo,hi[;lo,hi...]\"")->required();
  duality->add_option("--tol", tol, "Absolute tolerance")->capture_default_str();

  auto* export_cmd = app.add_subcommand("export", "Export the interval layout and samples of F");
  export_cmd->add_option("system", input, "System JSON")->required();
  export_cmd->add_option("--samples", samples, "Samples of F")->capture_default_str();
  export_cmd->add_option("-o,--output", output, "Layout TSV")->required();

  std::vector<const char*> argv{"branchsys"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << '\n';
    return kExitInputError;
  }

  try {
    if (*check_k) {
      const KReport r = check_condition_K(load_graph_file(input));
      emit(out, to_json(r));
      return r.satisfied ? kExitOk : kExitFailed;
    }
    if (*build) {
      const std::string text = save_system(build_default(load_graph_file(input))) + "\n";
      if (output.empty()) {
        out << text;
      } else {
        write_file(output, text);
        emit(out, {{"written", output}});
      }
      return kExitOk;
    }
    if (*validate_cmd) {
      const auto violations = validate(load_system_file(input));
      emit(out, {{"valid", violations.empty()}, {"violations", to_json(violations)}});
      return violations.empty() ? kExitOk : kExitFailed;
    }
    if (*verify) {
      const auto report =
          verify_relations(load_system_file(input), {trials, degree, tol, seed});
      emit(out, to_json(report));
      return report.pass ? kExitOk : kExitFailed;
    }
    if (*apply) {
      const auto bs = load_system_file(input);
      const PPoly result = apply_word(bs, parse_word(word), load_ppoly_file(func));
      if (!output.empty()) {
        std::string tsv = "x\tre\tim\n";
        for (const auto& x : sample_points(bs.X, samples)) {
          const Complex v = result.eval(x);
          tsv += num(to_double(x)) + "\t" + num(v.real()) + "\t" + num(v.imag()) + "\n";
        }
        write_file(output, tsv);
      }
      emit(out, to_json(result));
      return kExitOk;
    }
    if (*pf) {
      const TransferOperator t(nonsingular_map(load_system_file(input)));
      const PPoly psi0 = func.empty() ? default_initial_density(t.system()) : load_ppoly_file(func);
      const Trajectory traj = iterate_PF(t, psi0, iters);
      Json steps = Json::array();
      std::string tsv = "step\tx\tre\tim\ttotal_mass\ty_mass\n";
      const auto pts = sample_points(t.system().base.X, samples);
      for (std::size_t k = 0; k < traj.states.size(); ++k) {
        steps.push_back({{"step", k},
                         {"mass", traj.mass[k]},
                         {"y_mass", traj.y_mass[k]},
                         {"pieces", traj.states[k].pieces().size()}});
        for (const auto& x : pts) {
          const Complex v = traj.states[k].eval(x);
          tsv += std::to_string(k) + "\t" + num(to_double(x)) + "\t" + num(v.real()) + "\t" +
                 num(v.imag()) + "\t" + num(traj.mass[k]) + "\t" + num(traj.y_mass[k]) + "\n";
        }
      }
      if (!output.empty()) write_file(output, tsv);
      emit(out, {{"steps", std::move(steps)}});
      return kExitOk;
    }
    if (*thm44) {
      const TransferOperator t(nonsingular_map(load_system_file(input)));
      const auto r = verify_square_identity(t, load_ppoly_file(func), tol);
      emit(out, {{"l1_gap", r.l1_gap}, {"tol", tol}, {"pass", r.pass}});
      return r.pass ? kExitOk : kExitFailed;
    }
    if (*duality) {
      const TransferOperator t(nonsingular_map(load_system_file(input)));
      const IntervalSet a = parse_set(set_text);
      const IntervalSet outside = a.subtract(t.system().base.X);
      if (!outside.empty()) throw InputError("set leaves X on " + to_string(outside));
      const auto r = verify_duality(t, load_ppoly_file(func), a, tol);
      emit(out, to_json(r));
      return r.pass && r.oracle_agrees ? kExitOk : kExitFailed;
    }
    if (*export_cmd) {
      const NonsingularSystem ns = nonsingular_map(load_system_file(input));
      const auto& bs = ns.base;
      std::string tsv = "kind\tid\tx0\tx1\n";
      auto rows = [&](const char* kind, const std::string& id, const IntervalSet& s) {
        for (const auto& iv : s.parts()) {
          tsv += std::string(kind) + "\t" + id + "\t" + num(to_double(iv.lo)) + "\t" +
                 num(to_double(iv.hi)) + "\n";
        }
      };
      rows("X", "X", bs.X);
      for (std::size_t e = 0; e < bs.R.size(); ++e) rows("R", bs.graph.edges()[e].id, bs.R[e]);
      for (std::size_t v = 0; v < bs.D.size(); ++v) rows("D", bs.graph.vertices()[v], bs.D[v]);
      rows("Y", "Y", ns.Y);
      for (const auto& x : sample_points(bs.X, samples)) {
        if (!bs.X.contains(x)) continue;
        std::string branch = "Y";
        for (std::size_t e = 0; e < bs.R.size(); ++e) {
          if (bs.R[e].contains(x)) branch = bs.graph.edges()[e].id;
        }
        tsv += "F\t" + branch + "\t" + num(to_double(x)) + "\t" + num(to_double(ns.apply(x))) +
               "\n";
      }
      write_file(output, tsv);
      emit(out, {{"written", output}});
      return kExitOk;
    }
  } catch (const InvalidSystem& e) {
    err << "error: " << e.what() << '\n';
    emit(out, {{"error", e.what()}, {"violations", to_json(e.violations())}});
    return kExitInputError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitInputError;
}

}  // namespace branchsys
