#include "arbor/arboreal.hpp"
#include "arbor/cli.hpp"
#include "arbor/errors.hpp"
#include "arbor/freewick.hpp"
#include "arbor/gausscumulant.hpp"
#include "arbor/guemc.hpp"
#include "arbor/mapcount.hpp"
#include "arbor/splicing.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

using namespace arbor;
using json = nlohmann::ordered_json;

namespace {

struct Options
{
  std::string theta;
  std::string gamma = "constant";
  std::string nu;
  std::string instance;
  int n = 0;
  int k = 0;
  int N = 1;
  std::string tree;
  std::string functions;
  std::string format = "json";
  std::string check;
  std::string config;
  std::vector<int> grid{25, 50, 100};
  long samples = 10000;
  std::uint64_t seed = 1;
  int workers = default_workers();
  int word_cap = default_word_cap;
  std::string output;
};

std::optional<int> optional_n(const Options& o)
{
  return o.n > 0 ? std::optional<int>(o.n) : std::nullopt;
}

InstanceSpec instance_from(const Options& o)
{
  if (!o.instance.empty())
    return load_instance(o.instance, o.gamma, optional_n(o));
  if (o.theta.empty())
    throw std::invalid_argument("an instance is required: pass --theta or --instance");
  return make_instance(o.theta, o.gamma, optional_n(o), o.nu);
}

void emit(const Options& o, const std::string& text)
{
  if (o.output.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(o.output);
  if (!out)
    throw std::runtime_error("cannot write " + o.output);
  out << text;
}

std::vector<RationalPolynomial> function_list(const std::string& text, VariableSpace space)
{
  std::vector<RationalPolynomial> fs;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ';'))
    fs.push_back(parse_polynomial(item, space));
  if (fs.empty())
    throw std::invalid_argument("--functions is empty");
  return fs;
}

json identity_json(const IdentityCheck& c)
{
  return {{"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}, {"holds", c.holds}};
}

int run_count(const Options& o)
{
  InstanceSpec inst = instance_from(o);
  MapCountReport r = count_map0(MapInstance(inst.theta, inst.gamma));
  if (o.format == "csv")
    emit(o, count_csv(inst, r));
  else
    emit(o, count_json(inst, r).dump(2) + "\n");
  return exit_pass;
}

int run_verify(const Options& o)
{
  json report;
  report["check"] = o.check;
  bool pass = false;
  if (o.check == "main") {
    InstanceSpec inst = instance_from(o);
    MainTheoremCheck c = main_theorem_check(inst.theta, inst.gamma, o.word_cap);
    report["result"] = main_check_json(inst.theta, inst.gamma, c);
    pass = c.equal;
  } else if (o.check == "malliavin") {
    auto fs = function_list(o.functions, VariableSpace::Vector);
    if (o.k > 0 && o.k != static_cast<int>(fs.size()))
      throw std::invalid_argument("--k does not match the number of functions");
    if (o.n > 0 && column_count(fs) > o.n)
      throw std::invalid_argument("a function uses a variable beyond x" + std::to_string(o.n));
    IdentityCheck c = malliavin_check(fs);
    report["result"] = identity_json(c);
    pass = c.holds;
  } else if (o.check == "bkar" || o.check == "connected-bkar") {
    if (o.k < 1)
      throw std::invalid_argument("--k is required");
    RationalPolynomial f = parse_polynomial(o.functions, VariableSpace::Symmetric);
    IdentityCheck c = o.check == "bkar" ? bkar_check(f, o.k) : connected_bkar_check(f, o.k);
    report["result"] = identity_json(c);
    pass = c.holds;
  } else if (o.check == "kirchhoff") {
    if (o.k < 1)
      throw std::invalid_argument("--k is required");
    KirchhoffCheck c = kirchhoff_check(o.k);
    report["result"] = {{"k", o.k}, {"trees", c.tree_count}, {"holds", c.holds}};
    pass = c.holds;
  } else if (o.check == "splice-count") {
    InstanceSpec inst = instance_from(o);
    VertexLabeling nu = inst.nu ? *inst.nu : VertexLabeling::by_cycles(inst.theta);
    SpliceCountCheck c = splice_count_check(nu);
    report["result"] = {{"enumerated", c.lhs.get_str()}, {"closed_form", c.rhs.get_str()}, {"holds", c.holds}};
    pass = c.holds;
  } else if (o.check == "ghastly") {
    InstanceSpec inst = instance_from(o);
    VertexLabeling nu = inst.nu ? *inst.nu : VertexLabeling::by_cycles(inst.theta);
    std::vector<Forest> trees;
    if (o.tree.empty())
      trees = spanning_trees(nu.vertex_count());
    else
      trees.push_back(Forest::parse(o.tree, nu.vertex_count()));
    pass = true;
    report["result"] = instance_json(inst.theta, inst.gamma);
    report["result"]["N"] = o.N;
    report["result"]["trees"] = json::array();
    for (const auto& t : trees) {
      GhastlyCheck c = ghastly_identity_check(inst.theta, inst.gamma, nu, t, o.N);
      report["result"]["trees"].push_back({{"tree", t.to_string()}, {"terms", c.lhs.size()}, {"holds", c.holds}});
      pass = pass && c.holds;
    }
  } else if (o.check == "exact-and-scary") {
    InstanceSpec inst = instance_from(o);
    ExactAndScaryCheck c = exact_and_scary_check(inst.theta, inst.gamma, o.N);
    report["result"] = instance_json(inst.theta, inst.gamma);
    report["result"]["N"] = o.N;
    report["result"]["lhs"] = to_string(c.lhs);
    report["result"]["rhs"] = to_string(c.rhs);
    report["result"]["holds"] = c.holds;
    pass = c.holds;
  } else if (o.check == "bounds") {
    InstanceSpec inst = instance_from(o);
    VertexLabeling nu = inst.nu ? *inst.nu : VertexLabeling::by_cycles(inst.theta);
    ArbBoundCheck a = arb_bound_check(inst.theta, inst.gamma, nu);
    report["result"] = instance_json(inst.theta, inst.gamma);
    report["result"]["arb"] = {{"value", to_string(a.value)}, {"bound", to_string(a.bound)}, {"holds", a.holds}};
    pass = a.holds;
    if (inst.gamma.is_constant()) {
      BoundCheck b = check_kahuna_bound(MapInstance(inst.theta, inst.gamma));
      report["result"]["planar"] = {{"count", to_string(b.lhs)}, {"bound", to_string(b.rhs)}, {"holds", b.holds}};
      pass = pass && b.holds;
    }
  } else {
    throw std::invalid_argument("unknown check '" + o.check +
                                "'; expected main, malliavin, bkar, connected-bkar, kirchhoff, splice-count, "
                                "ghastly, exact-and-scary or bounds");
  }
  report["pass"] = pass;
  emit(o, report.dump(2) + "\n");
  return pass ? exit_pass : exit_check_failed;
}

void write_file(const std::string& path, const std::string& text)
{
  std::ofstream out(path);
  if (!out)
    throw std::runtime_error("cannot write " + path);
  out << text;
}

int run_sweep_command(const Options& o)
{
  std::ifstream in(o.config);
  if (!in)
    throw std::invalid_argument("cannot read config " + o.config);
  std::stringstream buf;
  buf << in.rdbuf();
  SweepConfig cfg = parse_sweep_config(buf.str());
  SweepResult r = run_sweep(cfg);
  if (!cfg.csv_path.empty())
    write_file(cfg.csv_path, r.csv);
  if (!cfg.json_path.empty())
    write_file(cfg.json_path, r.json.dump(2) + "\n");
  if (o.format == "csv")
    emit(o, r.csv);
  else
    emit(o, r.json.dump(2) + "\n");
  return r.all_hold ? exit_pass : exit_check_failed;
}

int run_mc(const Options& o)
{
  if (o.samples < 2)
    throw CLI::ValidationError("--samples", "must be at least 2");
  for (int N : o.grid)
    if (N < 1)
      throw CLI::ValidationError("--N", "dimensions must be positive");
  InstanceSpec inst = instance_from(o);
  ConvergenceReport r = convergence_report(inst.theta, inst.gamma, o.grid, o.samples, o.seed, o.workers);
  emit(o, convergence_json(inst.theta, inst.gamma, r).dump(2) + "\n");
  return exit_pass;
}

void instance_flags(CLI::App* cmd, Options& o)
{
  cmd->add_option("--theta", o.theta, "permutation in cycle notation, e.g. '(1 2)(3 4)'");
  cmd->add_option("--gamma", o.gamma, "coloring: 'constant' or a comma list such as 1,2,1,2")->capture_default_str();
  cmd->add_option("--n", o.n, "number of points when fixed points are omitted; for malliavin, vector dimension");
  cmd->add_option("--nu", o.nu, "vertex labeling as a comma list, constant on cycles of theta");
  cmd->add_option("--instance", o.instance, "instance document path or inline cycle notation");
}

} // namespace

int main(int argc, char** argv)
{
  Options o;
  CLI::App app{"Planar map counts, tree formulas for Gaussian cumulants and GUE checks"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--workers", o.workers, "worker threads (default from ARBOR_WORKERS, else 1)")
      ->check(CLI::PositiveNumber);
  app.add_option("-o,--output", o.output, "write the report to a file instead of stdout");

  auto* count = app.add_subcommand("count", "count color-preserving maps by genus");
  instance_flags(count, o);
  count->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* verify = app.add_subcommand("verify", "run an identity check; exit 0 iff it holds");
  verify->add_option("check", o.check,
                     "main, malliavin, bkar, connected-bkar, kirchhoff, splice-count, ghastly, exact-and-scary, bounds")
      ->required();
  instance_flags(verify, o);
  verify->add_option("--k", o.k, "number of functions or matrix size");
  verify->add_option("--functions", o.functions,
                     "polynomials separated by ';' (x1, x2, ... for malliavin; Q[i,j] for bkar checks)");
  verify->add_option("--N", o.N, "matrix dimension for the finite-N checks (1 or 2)");
  verify->add_option("--tree", o.tree, "spanning tree such as 1-2,2-3 (default: all trees)");
  verify->add_option("--word-cap", o.word_cap, "longest word for semicircular moments")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "coefficient tables and bound comparisons over shapes");
  sweep->add_option("config", o.config, "sweep configuration file")->required();
  sweep->add_option("--format", o.format, "json or csv")->check(CLI::IsMember({"json", "csv"}));

  auto* mc = app.add_subcommand("mc", "Monte-Carlo GUE cumulant estimates over a grid of N");
  instance_flags(mc, o);
  mc->add_option("--N", o.grid, "matrix dimensions")->capture_default_str();
  mc->add_option("--samples", o.samples, "draws per dimension")->capture_default_str();
  mc->add_option("--seed", o.seed, "generator seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? exit_pass : exit_usage;
  }

  try {
    if (*count)
      return run_count(o);
    if (*verify)
      return run_verify(o);
    if (*sweep)
      return run_sweep_command(o);
    return run_mc(o);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return exit_usage;
  } catch (const CapExceeded& e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return exit_cap;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_usage;
  }
}
