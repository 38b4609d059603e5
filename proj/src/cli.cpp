#include "arbor/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>

namespace arbor {

ParseError::ParseError(const std::string& what, int line, int column)
    : std::invalid_argument("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " + what),
      line_(line), column_(column)
{
}

namespace {

std::string trim(const std::string& s)
{
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos)
    return "";
  auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

struct KeyValue
{
  std::string value;
  int line;
  int column;  // of the value
};

std::map<std::string, KeyValue> parse_key_values(const std::string& text, const std::vector<std::string>& allowed)
{
  std::map<std::string, KeyValue> out;
  std::istringstream in(text);
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    std::string body = raw.substr(0, raw.find('#'));
    if (trim(body).empty())
      continue;
    auto eq = body.find('=');
    if (eq == std::string::npos) {
      auto first = body.find_first_not_of(" \t");
      throw ParseError("expected 'key = value'", line, static_cast<int>(first) + 1);
    }
    std::string key = trim(body.substr(0, eq));
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end())
      throw ParseError("unknown key '" + key + "'", line, static_cast<int>(body.find_first_not_of(" \t")) + 1);
    if (out.count(key))
      throw ParseError("duplicate key '" + key + "'", line, 1);
    std::string rest = body.substr(eq + 1);
    auto vstart = rest.find_first_not_of(" \t");
    int column = static_cast<int>(eq) + 2 + (vstart == std::string::npos ? 0 : static_cast<int>(vstart));
    out[key] = {trim(rest), line, column};
  }
  return out;
}

int parse_positive(const KeyValue& kv, const std::string& key)
{
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(kv.value, &used);
  } catch (const std::exception&) {
    throw ParseError(key + " must be a positive integer", kv.line, kv.column);
  }
  if (used != kv.value.size() || v < 1)
    throw ParseError(key + " must be a positive integer", kv.line, kv.column);
  return v;
}

// Rethrows a column-carrying error from a value parser with the document position added.
template<class F>
auto at_position(const KeyValue& kv, F&& f)
{
  try {
    return f();
  } catch (const std::invalid_argument& e) {
    std::string msg = e.what();
    int col = kv.column;
    auto p = msg.find("column ");
    if (p != std::string::npos)
      col += std::atoi(msg.c_str() + p + 7) - 1;
    throw ParseError(msg, kv.line, col);
  }
}

} // namespace

InstanceSpec make_instance(const std::string& theta, const std::string& gamma, std::optional<int> n,
                           const std::string& nu)
{
  InstanceSpec s{Permutation::parse(theta, n), {}, std::nullopt};
  s.gamma = Coloring::parse(gamma.empty() ? "constant" : gamma, s.theta.size());
  if (!trim(nu).empty()) {
    std::string normalized = nu;
    std::replace(normalized.begin(), normalized.end(), ',', ' ');
    std::istringstream in(normalized);
    std::vector<int> labels;
    std::string tok;
    int k = 0;
    while (in >> tok) {
      int v = 0;
      try {
        v = std::stoi(tok);
      } catch (const std::exception&) {
        throw std::invalid_argument("nu: '" + tok + "' is not a vertex number");
      }
      if (v < 1)
        throw std::invalid_argument("nu: vertices are numbered from 1");
      labels.push_back(v - 1);
      k = std::max(k, v);
    }
    if (static_cast<int>(labels.size()) != s.theta.size())
      throw std::invalid_argument("nu has " + std::to_string(labels.size()) + " entries but n = " +
                                  std::to_string(s.theta.size()));
    s.nu = VertexLabeling(std::move(labels), k);
    if (!s.nu->is_theta_invariant(s.theta))
      throw std::invalid_argument("nu is not constant on the cycles of theta");
  }
  return s;
}

InstanceSpec parse_instance_document(const std::string& text)
{
  auto kv = parse_key_values(text, {"theta", "gamma", "n", "nu"});
  if (!kv.count("theta"))
    throw ParseError("missing 'theta'", 1, 1);
  std::optional<int> n;
  if (kv.count("n"))
    n = parse_positive(kv["n"], "n");
  Permutation theta = at_position(kv["theta"], [&] { return Permutation::parse(kv["theta"].value, n); });
  InstanceSpec s{theta, Coloring::constant(theta.size()), std::nullopt};
  if (kv.count("gamma"))
    s.gamma = at_position(kv["gamma"], [&] { return Coloring::parse(kv["gamma"].value, theta.size()); });
  if (kv.count("nu"))
    s.nu = at_position(kv["nu"], [&] {
      return make_instance(theta.to_string(), "constant", theta.size(), kv["nu"].value).nu;
    });
  return s;
}

InstanceSpec load_instance(const std::string& arg, const std::string& gamma, std::optional<int> n)
{
  std::error_code ec;
  if (!arg.empty() && arg.front() != '(' && std::filesystem::is_regular_file(arg, ec)) {
    std::ifstream in(arg);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_instance_document(buf.str());
  }
  return make_instance(arg, gamma, n);
}

SweepConfig parse_sweep_config(const std::string& text)
{
  auto kv = parse_key_values(text, {"shapes", "max_order", "degree_cap", "csv", "json"});
  SweepConfig c;
  if (kv.count("shapes")) {
    const KeyValue& s = kv["shapes"];
    std::size_t pos = 0;
    const std::string& v = s.value;
    while (pos <= v.size() && !trim(v).empty()) {
      auto end = v.find(';', pos);
      if (end == std::string::npos)
        end = v.size();
      std::string item = v.substr(pos, end - pos);
      std::vector<int> shape;
      std::size_t ipos = 0;
      while (ipos <= item.size()) {
        auto comma = item.find(',', ipos);
        if (comma == std::string::npos)
          comma = item.size();
        std::string raw = item.substr(ipos, comma - ipos);
        std::string part = trim(raw);
        auto lead = raw.find_first_not_of(" \t");
        int column = s.column + static_cast<int>(pos + ipos + (lead == std::string::npos ? 0 : lead));
        if (part.empty() || part.find_first_not_of("0123456789") != std::string::npos)
          throw ParseError("shape entries must be positive cycle lengths", s.line, column);
        int len = std::stoi(part);
        if (len < 1)
          throw ParseError("shape entries must be positive cycle lengths", s.line, column);
        shape.push_back(len);
        ipos = comma + 1;
      }
      c.shapes.push_back(shape);
      pos = end + 1;
      if (end == v.size())
        break;
    }
  }
  if (kv.count("max_order"))
    c.max_order = parse_positive(kv["max_order"], "max_order");
  if (kv.count("degree_cap"))
    c.degree_cap = parse_positive(kv["degree_cap"], "degree_cap");
  if (kv.count("csv"))
    c.csv_path = kv["csv"].value;
  if (kv.count("json"))
    c.json_path = kv["json"].value;
  return c;
}

namespace {

std::string join(const std::vector<int>& v, char sep)
{
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i)
      s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

} // namespace

SweepResult run_sweep(const SweepConfig& config)
{
  SweepResult r;
  r.json = nlohmann::ordered_json::object();
  r.json["max_order"] = config.max_order;
  r.json["degree_cap"] = config.degree_cap;
  r.json["rows"] = nlohmann::ordered_json::array();
  std::ostringstream csv;
  csv << "shape,orders,n,planar,coefficient,majorant,below_majorant,bound_lhs,bound_rhs,bound_holds\n";
  for (const auto& shape : config.shapes) {
    std::vector<int> max_orders(shape.size(), config.max_order);
    for (const auto& row : generating_table(shape, max_orders, config.degree_cap)) {
      std::vector<int> lengths;
      for (std::size_t i = 0; i < shape.size(); ++i)
        for (int c = 0; c < row.orders[i]; ++c)
          lengths.push_back(shape[i]);
      Permutation theta = permutation_with_cycle_lengths(lengths);
      BoundCheck b = check_kahuna_bound(MapInstance(theta, Coloring::constant(theta.size())));
      r.all_hold = r.all_hold && b.holds && row.below_majorant;
      nlohmann::ordered_json j;
      j["shape"] = shape;
      j["orders"] = row.orders;
      j["n"] = row.degree;
      j["theta"] = theta.to_string();
      j["planar"] = row.planar;
      j["coefficient"] = to_string(row.coefficient);
      j["majorant"] = to_string(row.majorant);
      j["below_majorant"] = row.below_majorant;
      j["bound"] = {{"lhs", to_string(b.lhs)}, {"rhs", to_string(b.rhs)}, {"holds", b.holds}};
      r.json["rows"].push_back(j);
      csv << '"' << join(shape, ',') << "\",\"" << join(row.orders, ',') << "\"," << row.degree << ','
          << row.planar << ',' << to_string(row.coefficient) << ',' << to_string(row.majorant) << ','
          << (row.below_majorant ? "true" : "false") << ',' << to_string(b.lhs) << ',' << to_string(b.rhs) << ','
          << (b.holds ? "true" : "false") << '\n';
    }
  }
  r.csv = csv.str();
  return r;
}

nlohmann::ordered_json instance_json(const Permutation& theta, const Coloring& gamma)
{
  nlohmann::ordered_json j;
  j["theta"] = theta.to_string();
  j["gamma"] = gamma.to_string();
  return j;
}

nlohmann::ordered_json count_json(const InstanceSpec& inst, const MapCountReport& r)
{
  nlohmann::ordered_json j = instance_json(inst.theta, inst.gamma);
  j["total"] = r.total;
  j["planar"] = r.planar;
  nlohmann::ordered_json hist = nlohmann::ordered_json::object();
  for (const auto& [g, c] : r.genus_histogram)
    hist[std::to_string(g)] = c;
  j["genus_histogram"] = hist;
  return j;
}

std::string count_csv(const InstanceSpec& inst, const MapCountReport& r)
{
  std::ostringstream os;
  os << "theta,gamma,total,planar,genus,count\n";
  for (const auto& [g, c] : r.genus_histogram)
    os << '"' << inst.theta.to_string() << "\",\"" << inst.gamma.to_string() << "\"," << r.total << ',' << r.planar
       << ',' << g << ',' << c << '\n';
  if (r.genus_histogram.empty())
    os << '"' << inst.theta.to_string() << "\",\"" << inst.gamma.to_string() << "\",0,0,,\n";
  return os.str();
}

nlohmann::ordered_json words_json(const std::vector<SplicingWord>& words)
{
  nlohmann::ordered_json out = nlohmann::ordered_json::array();
  for (const auto& w : words) {
    nlohmann::ordered_json word;
    word["tau"] = w.tau.to_string();
    word["letters"] = nlohmann::ordered_json::array();
    for (const auto& l : w.letters)
      word["letters"].push_back(
          {{"index", l.index + 1}, {"vertex", l.vertex + 1}, {"color", l.color + 1}, {"kept", l.kept}});
    out.push_back(word);
  }
  return out;
}

nlohmann::ordered_json main_check_json(const Permutation& theta, const Coloring& gamma, const MainTheoremCheck& c)
{
  nlohmann::ordered_json j = instance_json(theta, gamma);
  j["lhs_count"] = c.lhs_count;
  j["rhs_value"] = to_string(c.rhs_value);
  j["equal"] = c.equal;
  j["per_tree_breakdown"] = nlohmann::ordered_json::array();
  for (const auto& t : c.arb.per_tree)
    j["per_tree_breakdown"].push_back(
        {{"tree", t.tree.to_string()}, {"words", t.word_count}, {"value", to_string(t.value)}});
  return j;
}

nlohmann::ordered_json convergence_json(const Permutation& theta, const Coloring& gamma, const ConvergenceReport& r)
{
  nlohmann::ordered_json j = instance_json(theta, gamma);
  j["target"] = r.target;
  j["rows"] = nlohmann::ordered_json::array();
  for (const auto& e : r.rows)
    j["rows"].push_back({{"N", e.N},
                         {"samples", e.samples},
                         {"seed", e.seed},
                         {"estimate", e.estimate},
                         {"imaginary", e.imaginary},
                         {"standard_error", e.standard_error}});
  j["tolerance_in_se"] = r.tolerance_in_se;
  j["within_tolerance"] = r.within_tolerance;
  j["improves"] = r.improves;
  return j;
}

int default_workers()
{
  if (const char* env = std::getenv("ARBOR_WORKERS")) {
    int w = std::atoi(env);
    if (w >= 1)
      return w;
  }
  return 1;
}

} // namespace arbor
