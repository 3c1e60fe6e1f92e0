#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "coral/core_extract.hpp"
#include "coral/optimizer.hpp"
#include "coral/options.hpp"
#include "coral/report.hpp"
#include "coral/xcsp.hpp"

namespace {

using namespace coral;

OptionTable makeOptions() {
  OptionTable t;
  t.add("t", "", "time limit in ms, or seconds with a suffix (-t=10s)");
  t.add("varh", "WdegOnDom",
        "variable ordering: Input, Dom, DDegOnDom, Wdeg, WdegOnDom, VarWeight, Rand");
  t.add("anti_varh", "0", "invert the variable ordering");
  t.add("valh", "First", "value ordering: First, Last, Rand, Bivs");
  t.add("wt", "cacd", "conflict weighting: unit, cacd, chs");
  t.add("lc", "1", "last-conflict reasoning (0/1)");
  t.add("sos", "1", "solution saving during optimization (0/1)");
  t.add("p", "ac", "propagation: ac (arc consistency) or fc (forward checking)");
  t.add("r", "geo", "restart policy: geo, luby, or no");
  t.add("r_base", "100", "restart cutoff base, in wrong decisions per run");
  t.add("r_factor", "1.1", "geometric restart growth factor");
  t.add("ng", "1", "record nogoods from the branch at each restart (0/1)");
  t.add("s", "1", "solutions sought: 1 (stop at first) or all (exhaustive count)");
  t.add("os", "decreasing",
        "optimization strategy: decreasing, increasing, dichotomic");
  t.add("table", "ct", "table propagator: ct, str2, str1, generic");
  t.add("seed", "", "random seed (default: CORAL_SEED env var, else 0)");
  t.add("nodes", "", "node limit");
  return t;
}

void printUsage(std::ostream& os, const OptionTable& t) {
  os << "usage: coral <instance.xml> [options]   solve an XCSP3 instance\n"
        "       coral verify <instance.xml> <solution-file>\n"
        "       coral core <instance.xml> [options]   extract an unsat core\n"
        "\noptions:\n"
     << t.listing();
}

struct Config {
  SolverOptions solver;
  bool countAll = false;
  OptimizeStrategy strategy = OptimizeStrategy::Decreasing;
  BuildOptions build;
};

bool fillConfig(const OptionTable& t, Config* cfg, std::string* err) {
  SolverOptions& o = cfg->solver;
  if (!t.get("t").empty() && !parseDuration(t.get("t"), &o.timeLimitMs)) {
    *err = "malformed duration '" + t.get("t") + "'";
    return false;
  }
  if (!varhFromName(t.get("varh"), &o.varh)) {
    *err = "unknown variable ordering '" + t.get("varh") + "'";
    return false;
  }
  o.antiVarh = t.getBool("anti_varh");
  if (!valhFromName(t.get("valh"), &o.valh)) {
    *err = "unknown value ordering '" + t.get("valh") + "'";
    return false;
  }
  if (!weightModeFromName(t.get("wt"), &o.weightMode)) {
    *err = "unknown weighting '" + t.get("wt") + "'";
    return false;
  }
  o.lastConflict = t.getBool("lc");
  o.solutionSaving = t.getBool("sos");
  const std::string& p = t.get("p");
  if (p == "ac") o.propagation = PropagationKind::AC;
  else if (p == "fc") o.propagation = PropagationKind::FC;
  else {
    *err = "unknown propagation '" + p + "'";
    return false;
  }
  const std::string& r = t.get("r");
  if (r == "geo") o.restarts.kind = RestartPolicy::Kind::Geometric;
  else if (r == "luby") o.restarts.kind = RestartPolicy::Kind::Luby;
  else if (r == "no") o.restarts.kind = RestartPolicy::Kind::None;
  else {
    *err = "unknown restart policy '" + r + "'";
    return false;
  }
  try {
    o.restarts.base = std::stoll(t.get("r_base"));
    o.restarts.factor = std::stod(t.get("r_factor"));
    if (!t.get("nodes").empty()) o.nodeLimit = std::stoll(t.get("nodes"));
  } catch (...) {
    *err = "malformed numeric option";
    return false;
  }
  o.nogoods = t.getBool("ng");
  const std::string& s = t.get("s");
  if (s == "all") cfg->countAll = true;
  else if (s != "1") {
    *err = "-s takes 1 or all";
    return false;
  }
  if (!strategyFromName(t.get("os"), &cfg->strategy)) {
    *err = "unknown optimization strategy '" + t.get("os") + "'";
    return false;
  }
  const std::string& tb = t.get("table");
  if (tb == "ct") cfg->build.table = TablePropagator::CT;
  else if (tb == "str2") cfg->build.table = TablePropagator::STR2;
  else if (tb == "str1") cfg->build.table = TablePropagator::STR1;
  else if (tb == "generic") cfg->build.table = TablePropagator::Generic;
  else {
    *err = "unknown table propagator '" + tb + "'";
    return false;
  }
  std::string seedText;
  if (t.wasSet("seed")) {
    seedText = t.get("seed");
  } else if (const char* env = std::getenv("CORAL_SEED")) {
    seedText = env;
  }
  if (!seedText.empty()) {
    try {
      o.seed = std::stoull(seedText);
    } catch (...) {
      *err = "malformed seed '" + seedText + "'";
      return false;
    }
  }
  return true;
}

bool readFile(const std::string& path, std::string* out, std::string* err) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    *err = "cannot read '" + path + "'";
    return false;
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  *out = ss.str();
  return true;
}

// Shared front part of solve/core: options, instance, problem.
int loadInstance(const std::string& path, const std::vector<std::string>& optArgs,
                 const OptionTable& base, Config* cfg, BuiltInstance* built,
                 OptionTable* opts) {
  *opts = base;
  std::string err;
  if (!opts->parse(optArgs, &err)) {
    std::cerr << "error: " << err << "\n";
    printUsage(std::cerr, base);
    return 1;
  }
  if (!fillConfig(*opts, cfg, &err)) {
    std::cerr << "error: " << err << "\n";
    return 1;
  }
  std::string xml;
  if (!readFile(path, &xml, &err)) {
    std::cerr << "error: " << err << "\n";
    return 2;
  }
  try {
    *built = buildProblem(parseInstance(xml), cfg->build);
  } catch (const ParseError& e) {
    std::cerr << "error: " << path << ": " << e.what() << "\n";
    return 2;
  }
  return 0;
}

void printConfigHeader(const OptionTable& t, const Problem& pb,
                       const Config& cfg) {
  std::cout << "c coral 0.1\n";
  std::cout << "c config varh=" << varhName(cfg.solver.varh)
            << " anti_varh=" << (cfg.solver.antiVarh ? 1 : 0)
            << " valh=" << valhName(cfg.solver.valh)
            << " wt=" << weightModeName(cfg.solver.weightMode)
            << " p=" << t.get("p") << " r=" << t.get("r")
            << " ng=" << (cfg.solver.nogoods ? 1 : 0)
            << " lc=" << (cfg.solver.lastConflict ? 1 : 0)
            << " sos=" << (cfg.solver.solutionSaving ? 1 : 0)
            << " table=" << t.get("table") << " seed=" << cfg.solver.seed
            << "\n";
  if (cfg.solver.timeLimitMs >= 0)
    std::cout << "c time-limit-ms " << cfg.solver.timeLimitMs << "\n";
  Features f = pb.features();
  std::cout << "c instance vars=" << f.nVars << " ctrs=" << f.nCtrs
            << " maxdom=" << f.maxDomSize
            << (f.hasObjective ? " objective=yes" : "") << "\n";
  if (f.hasObjective)
    std::cout << "c strategy " << strategyName(cfg.strategy) << "\n";
}

int solveMain(const std::vector<std::string>& args, const OptionTable& base) {
  const std::string& path = args[0];
  Config cfg;
  BuiltInstance built;
  OptionTable opts;
  int rc = loadInstance(path, {args.begin() + 1, args.end()}, base, &cfg, &built,
                        &opts);
  if (rc != 0) return rc;
  Problem& pb = *built.problem;
  printConfigHeader(opts, pb, cfg);
  if (built.droppedRows > 0)
    std::cout << "c dropped-tuples " << built.droppedRows << "\n";

  bool cop = pb.objective != nullptr;
  std::function<void(const std::vector<int>&, long long)> onSol;
  if (cop)
    onSol = [](const std::vector<int>&, long long cost) {
      std::cout << "o " << cost << std::endl;
    };
  SolveReport rep = solveProblem(pb, cfg.solver, cfg.countAll, cfg.strategy, onSol);
  emitReport(std::cout, pb, rep, cfg.countAll && !cop);
  return 0;
}

int verifyMain(const std::vector<std::string>& args, const OptionTable& base) {
  if (args.size() != 2) {
    std::cerr << "usage: coral verify <instance.xml> <solution-file>\n";
    return 1;
  }
  std::string xml, sol, err;
  if (!readFile(args[0], &xml, &err) || !readFile(args[1], &sol, &err)) {
    std::cerr << "error: " << err << "\n";
    return 2;
  }
  BuiltInstance built;
  try {
    built = buildProblem(parseInstance(xml), BuildOptions{});
  } catch (const ParseError& e) {
    std::cerr << "error: " << args[0] << ": " << e.what() << "\n";
    return 2;
  }
  (void)base;
  // Pick the "v" line if the file is a full report; else take it whole.
  std::string line, chosen;
  std::istringstream in(sol);
  while (std::getline(in, line)) {
    if (line == "v" || line.rfind("v ", 0) == 0) {
      chosen = line;
      break;
    }
  }
  if (chosen.empty()) chosen = sol;
  std::vector<std::pair<std::string, long long>> vals;
  if (!parseValueLine(chosen, &vals, &err)) {
    std::cerr << "error: " << err << "\n";
    return 2;
  }
  if (!verifyInstantiation(*built.problem, vals, &err)) {
    std::cout << "FAILED: " << err << "\n";
    return 1;
  }
  std::cout << "OK\n";
  return 0;
}

int coreMain(const std::vector<std::string>& args, const OptionTable& base) {
  if (args.empty() || args[0][0] == '-') {
    std::cerr << "usage: coral core <instance.xml> [options]\n";
    return 1;
  }
  Config cfg;
  BuiltInstance built;
  OptionTable opts;
  int rc = loadInstance(args[0], {args.begin() + 1, args.end()}, base, &cfg,
                        &built, &opts);
  if (rc != 0) return rc;
  Problem& pb = *built.problem;
  if (pb.objective != nullptr) {
    std::cerr << "error: core extraction expects a CSP (no objective)\n";
    return 1;
  }
  CoreResult res = extractCore(pb, cfg.solver);
  if (res.satisfiable) {
    std::cerr << "error: instance is satisfiable\n";
    return 1;
  }
  std::cout << "c core-size " << res.core.size() << "\n";
  std::cout << "c minimal " << (res.interrupted ? "no (budget exhausted)" : "yes")
            << "\n";
  std::cout << "core";
  for (int id : res.core) std::cout << " " << pb.ctr(id).name;
  std::cout << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv + 1, argv + argc);
  OptionTable base = makeOptions();
  if (args.empty()) {
    printUsage(std::cout, base);
    return 0;
  }
  if (args[0] == "verify")
    return verifyMain({args.begin() + 1, args.end()}, base);
  if (args[0] == "core")
    return coreMain({args.begin() + 1, args.end()}, base);
  if (args[0][0] == '-') {
    std::cerr << "error: expected an instance path before options\n";
    printUsage(std::cerr, base);
    return 1;
  }
  return solveMain(args, base);
}
