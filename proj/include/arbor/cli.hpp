#ifndef ARBOR_CLI_HPP
#define ARBOR_CLI_HPP

#include "arbor/freewick.hpp"
#include "arbor/guemc.hpp"
#include "arbor/mapcount.hpp"
#include "arbor/permutations.hpp"
#include "arbor/splicing.hpp"

#include "json.hpp"

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace arbor {

enum ExitCode { exit_pass = 0, exit_check_failed = 1, exit_usage = 2, exit_cap = 3 };

class ParseError : public std::invalid_argument
{
public:
  ParseError(const std::string& what, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

private:
  int line_;
  int column_;
};

struct InstanceSpec
{
  Permutation theta;
  Coloring gamma;
  std::optional<VertexLabeling> nu;
};

// theta in cycle notation (points 1..n; fixed points may be omitted when n is given), gamma as
// "constant" or a comma list, nu as a comma list of 1-based vertices.
InstanceSpec make_instance(const std::string& theta, const std::string& gamma, std::optional<int> n = std::nullopt,
                           const std::string& nu = "");

// Instance document: one "key = value" per line for theta, gamma, n and nu; '#' starts a comment.
InstanceSpec parse_instance_document(const std::string& text);

// `--instance` accepts a path to an instance document or inline cycle notation.
InstanceSpec load_instance(const std::string& arg, const std::string& gamma, std::optional<int> n);

// Sweep configuration, a flat key = value document:
//   shapes      = 2; 4; 2,2     cycle-length shapes separated by ';' (empty for none)
//   max_order   = 4             largest multiplicity per shape component
//   degree_cap  = 12            largest n to enumerate
//   csv         = table.csv     optional output paths
//   json        = table.json
struct SweepConfig
{
  std::vector<std::vector<int>> shapes;
  int max_order = 2;
  int degree_cap = default_degree_cap;
  std::string csv_path;
  std::string json_path;
};

SweepConfig parse_sweep_config(const std::string& text);

struct SweepResult
{
  nlohmann::ordered_json json;
  std::string csv;
  bool all_hold = true;
};

SweepResult run_sweep(const SweepConfig& config);

nlohmann::ordered_json instance_json(const Permutation& theta, const Coloring& gamma);
nlohmann::ordered_json count_json(const InstanceSpec& inst, const MapCountReport& r);
std::string count_csv(const InstanceSpec& inst, const MapCountReport& r);
nlohmann::ordered_json words_json(const std::vector<SplicingWord>& words);
nlohmann::ordered_json main_check_json(const Permutation& theta, const Coloring& gamma, const MainTheoremCheck& c);
nlohmann::ordered_json convergence_json(const Permutation& theta, const Coloring& gamma, const ConvergenceReport& r);

// Worker count from the ARBOR_WORKERS environment variable, defaulting to 1.
int default_workers();

} // namespace arbor

#endif
