// tcoal: command-line front end for the ternary coalescent library.
//
// Exit codes: 0 success, 1 verification failure, 2 usage error, 3 I/O error.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "tcoal/ctmc.hpp"
#include "tcoal/exact_laws.hpp"
#include "tcoal/forest.hpp"
#include "tcoal/oracle.hpp"
#include "tcoal/partition.hpp"
#include "tcoal/stats.hpp"
#include "tcoal/verify.hpp"
#include "tcoal/walk.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace tcoal;

constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitIo = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_output(const std::string& path, const std::string& content) {
  if (path.empty() || path == "-") {
    std::cout << content;
    std::cout.flush();
    if (!std::cout) throw IoError("cannot write to stdout");
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open " + path);
  out << content;
  out.close();
  if (!out) throw IoError("cannot write " + path);
}

std::string format_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

// CSV with a '#' comment line carrying the version and resolved config.
class CsvTable {
 public:
  CsvTable(const json& config, std::vector<std::string> columns) {
    out_ << "# " << kVersion << " config=" << config.dump() << '\n';
    for (std::size_t i = 0; i < columns.size(); ++i) out_ << (i ? "," : "") << columns[i];
    out_ << '\n';
  }

  void row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
    out_ << '\n';
  }

  // Appends numerator, denominator, rational and float columns.
  void row(std::vector<std::string> cells, const Rational& q) {
    cells.push_back(q.get_num().get_str());
    cells.push_back(q.get_den().get_str());
    cells.push_back(to_string(q));
    cells.push_back(format_double(q.get_d()));
    row(cells);
  }

  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string quoted(const std::string& s) { return '"' + s + '"'; }

MassPartition parse_masses(const std::string& text) {
  std::vector<Mass> values;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(item, &used);
      if (used != item.size()) throw std::invalid_argument(item);
      values.push_back(v);
    } catch (const std::logic_error&) {
      throw UsageError("bad mass list: " + text);
    }
  }
  return rank(values);
}

BlockPartition parse_blocks(const std::string& text) {
  BlockPartition blocks;
  std::istringstream in(text);
  std::string block;
  while (std::getline(in, block, '|')) {
    std::vector<int> labels;
    std::istringstream bs(block);
    std::string label;
    while (std::getline(bs, label, ',')) {
      try {
        labels.push_back(std::stoi(label));
      } catch (const std::logic_error&) {
        throw UsageError("bad block list: " + text);
      }
    }
    blocks.push_back(labels);
  }
  return blocks;
}

void require_odd(std::int64_t N) {
  if (N < 1 || N % 2 == 0) throw UsageError("N must be odd");
}

// --- simulate ---------------------------------------------------------------

struct SimulateArgs {
  std::optional<std::int64_t> units;
  std::string initial;
  int arity = 3;
  std::uint64_t seed = kDefaultSeed;
  std::optional<double> t_max;
  std::string out;
};

int cmd_simulate(const SimulateArgs& a) {
  if (a.units.has_value() == !a.initial.empty())
    throw UsageError("give exactly one of --units and --initial");
  if (a.arity < 3) throw UsageError("arity must be at least 3");
  MassPartition start;
  if (a.units) {
    if (a.arity == 3) require_odd(*a.units);
    if (*a.units < 1 || (*a.units - 1) % (a.arity - 1) != 0)
      throw UsageError("N must be 1 modulo arity-1");
    start = MassPartition::units(static_cast<std::size_t>(*a.units));
  } else {
    start = parse_masses(a.initial);
  }
  if (a.t_max && !(*a.t_max > 0.0)) throw UsageError("t_max must be positive");
  json config;
  config["command"] = "simulate";
  if (a.units) {
    config["units"] = *a.units;
  } else {
    config["initial"] = start.masses();
  }
  config["arity"] = a.arity;
  config["seed"] = a.seed;
  config["t_max"] = a.t_max ? json(*a.t_max) : json(nullptr);
  const Trajectory tr = simulate(start, KernelSpec::of_arity(a.arity), a.seed, a.t_max);
  write_output(a.out, trajectory_jsonl(tr, config));
  return 0;
}

// --- exact ------------------------------------------------------------------

struct ExactArgs {
  std::string law;
  std::int64_t N = 0;
  std::int64_t M = 0;
  std::int64_t l = 0;
  std::int64_t m = 0;
  std::int64_t s = 0;
  std::int64_t k = -1;
  std::int64_t j = 1;
  std::int64_t m_max = 0;
  int arity = 3;
  double t = 0.0;
  std::string initial;
  std::string blocks;
  std::string out;
};

int cmd_exact(const ExactArgs& a) {
  json config;
  config["command"] = "exact";
  config["law"] = a.law;
  std::string text;
  if (a.law == "skeleton") {
    require_odd(a.N);
    if (a.l < 0 || a.l > (a.N - 1) / 2) throw UsageError("l out of range");
    config["N"] = a.N;
    config["l"] = a.l;
    CsvTable t(config, {"state", "numerator", "denominator", "rational", "value"});
    for (const auto& p : skeleton_support(a.N, a.l))
      t.row({quoted(p.key())}, skeleton_marginal(a.N, a.l, p));
    text = t.str();
  } else if (a.law == "mu") {
    if (a.s < 3 || a.s % 2 == 0) throw UsageError("s must be odd and at least 3");
    config["s"] = a.s;
    CsvTable t(config, {"split", "numerator", "denominator", "rational", "value"});
    for (const Triple& r : dislocation_support(a.s)) {
      const std::string key = std::to_string(r[0]) + "," + std::to_string(r[1]) + "," +
                              std::to_string(r[2]);
      t.row({quoted(key)}, dislocation_pmf(a.s, r));
    }
    text = t.str();
  } else if (a.law == "hitting") {
    if (a.k == 0) throw UsageError("k must be nonzero");
    const std::int64_t last = a.m_max > 0 ? a.m_max : (a.m > 0 ? a.m : 0);
    const std::int64_t first = a.m_max > 0 ? 1 : last;
    if (last < 1) throw UsageError("give --m or --m-max");
    config["k"] = a.k;
    config["m_first"] = first;
    config["m_last"] = last;
    CsvTable t(config, {"m", "numerator", "denominator", "rational", "value"});
    for (std::int64_t m = first; m <= last; ++m)
      t.row({std::to_string(m)}, hitting_time_pmf(a.k, m));
    text = t.str();
  } else if (a.law == "forest-count" || a.law == "plane-count") {
    require_odd(a.N);
    if (a.m < 1 || a.m > a.N) throw UsageError("need 1 <= m <= N");
    if (a.m % 2 == 0) throw UsageError("F(m,N) empty for even m");
    config["m"] = a.m;
    config["N"] = a.N;
    const BigInt c = a.law == "forest-count" ? forest_count(a.m, a.N)
                                             : plane_forest_count(a.m, a.N);
    CsvTable t(config, {"m", "N", "count"});
    t.row({std::to_string(a.m), std::to_string(a.N), c.get_str()});
    text = t.str();
  } else if (a.law == "rates") {
    require_odd(a.N);
    const std::int64_t M = a.M > 0 ? a.M : a.N;
    if (M < a.N) throw UsageError("need M >= N");
    config["M"] = M;
    config["N"] = a.N;
    CsvTable t(config, {"k", "numerator", "denominator", "rational", "value"});
    for (std::int64_t k = 1; k <= (a.N - 1) / 2; ++k)
      t.row({std::to_string(k)}, total_rate(M, a.N, k));
    text = t.str();
  } else if (a.law == "particle-count") {
    require_odd(a.N);
    const std::int64_t M = a.M > 0 ? a.M : a.N;
    if (M < a.N) throw UsageError("need M >= N");
    if (a.t < 0) throw UsageError("t must be nonnegative");
    config["M"] = M;
    config["N"] = a.N;
    config["t"] = a.t;
    CsvTable t(config, {"l", "particles", "value"});
    for (std::int64_t l = 0; l <= (a.N - 1) / 2; ++l) {
      t.row({std::to_string(l), std::to_string(a.N - 2 * l),
             format_double(particle_count_pmf(M, a.N, l, a.t))});
    }
    text = t.str();
  } else if (a.law == "kary-count") {
    if (a.arity < 3 || a.j < 1 || a.m < 1) throw UsageError("need arity >= 3, j >= 1, m >= 1");
    config["arity"] = a.arity;
    config["j"] = a.j;
    config["m"] = a.m;
    CsvTable t(config, {"arity", "j", "m", "numerator", "denominator", "rational", "value"});
    t.row({std::to_string(a.arity), std::to_string(a.j), std::to_string(a.m)},
          kary_first_passage_count(a.arity, a.j, a.m));
    text = t.str();
  } else if (a.law == "block") {
    if (a.blocks.empty()) throw UsageError("give --blocks, e.g. 1,2,3|4|5");
    MassPartition r;
    if (!a.initial.empty()) {
      r = parse_masses(a.initial);
    } else {
      require_odd(a.N);
      r = MassPartition::units(static_cast<std::size_t>(a.N));
    }
    const BlockPartition blocks = canonical(parse_blocks(a.blocks));
    config["initial"] = r.masses();
    config["blocks"] = block_key(blocks);
    config["t"] = a.t;
    const Rational p = block_coagulation_prob(r, blocks);
    CsvTable t(config, {"blocks", "numerator", "denominator", "rational", "value",
                        "event_probability_at_t"});
    t.row({quoted(block_key(blocks)), p.get_num().get_str(), p.get_den().get_str(),
           to_string(p), format_double(p.get_d()),
           format_double(partition_event_prob(r, blocks, a.t))});
    text = t.str();
  } else {
    throw UsageError("unknown law " + a.law);
  }
  write_output(a.out, text);
  return 0;
}

// --- verify -----------------------------------------------------------------

struct VerifyArgs {
  std::vector<std::string> only;
  std::int64_t n = 3;
  std::uint64_t seed = kDefaultSeed;
  std::size_t samples = 100000;
  bool inject_fault = false;
  std::string out;
};

int cmd_verify(const VerifyArgs& a) {
  VerifyOptions opt;
  for (const auto& s : a.only) opt.only.insert(s);
  for (const auto& s : opt.only) {
    if (std::find(all_sections().begin(), all_sections().end(), s) == all_sections().end())
      throw UsageError("unknown section " + s);
  }
  if (a.n < 1 || a.n > kMaxConfigurationN) throw UsageError("n must be between 1 and 3");
  if (a.samples < 100) throw UsageError("samples must be at least 100");
  opt.n = a.n;
  opt.seed = a.seed;
  opt.samples = a.samples;
  opt.inject_fault = a.inject_fault;
  json config;
  config["command"] = "verify";
  config["only"] = std::vector<std::string>(opt.only.begin(), opt.only.end());
  config["n"] = opt.n;
  config["seed"] = opt.seed;
  config["retry_seed"] = opt.retry_seed;
  config["samples"] = opt.samples;
  config["inject_fault"] = opt.inject_fault;
  const auto results = run_verification(opt);
  const json report = verify_report(results, config);
  write_output(a.out, report.dump(2) + "\n");
  if (!a.out.empty() && a.out != "-") {
    for (const auto& r : results)
      std::cout << (r.pass ? "PASS " : "FAIL ") << "[" << r.section << "] " << r.name << ": "
                << r.detail << '\n';
  }
  return report["all_pass"].get<bool>() ? 0 : kExitVerifyFailed;
}

// --- converge ---------------------------------------------------------------

struct ConvergeArgs {
  std::vector<std::int64_t> Ns{501, 2001};
  std::vector<double> ts{0.0, 1.0};
  std::size_t replicas = 1000;
  std::uint64_t seed = kDefaultSeed;
  bool against_binary = false;
  std::int64_t binary_n = 1000;
  std::string out;
};

int cmd_converge(const ConvergeArgs& a) {
  if (a.Ns.empty()) throw UsageError("empty N list");
  if (a.ts.empty()) throw UsageError("empty t list");
  for (auto N : a.Ns) {
    require_odd(N);
    if (N < 3) throw UsageError("N must be at least 3");
  }
  std::vector<double> positive;
  for (double t : a.ts) {
    if (!std::isfinite(t)) throw UsageError("t values must be finite");
    if (t > 0.0) positive.push_back(t);
  }
  if (a.replicas < 20) throw UsageError("replicas must be at least 20");
  if (a.binary_n < 2) throw UsageError("binary-n must be at least 2");
  json config;
  config["command"] = "converge";
  config["N"] = a.Ns;
  config["t"] = a.ts;
  config["replicas"] = a.replicas;
  config["seed"] = a.seed;
  config["against_binary"] = a.against_binary;
  config["binary_n"] = a.against_binary ? json(a.binary_n) : json(nullptr);
  ConvergenceReport report = marginal_convergence_experiment(
      a.Ns, a.ts, a.replicas, a.seed, a.against_binary ? a.binary_n : 0);
  // Particle scaling needs positive times; the marginals take any real t.
  if (!positive.empty())
    report.scaling = particle_scaling_experiment(a.Ns, positive, a.replicas, a.seed);
  write_output(a.out, report_json(report, config).dump(2) + "\n");
  return 0;
}

// --- chain / tree -----------------------------------------------------------

struct ChainArgs {
  std::string direction = "build";
  std::int64_t n = 1;
  int arity = 3;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int cmd_chain(const ChainArgs& a) {
  if (a.n < 0) throw UsageError("n must be nonnegative");
  if (a.arity < 3) throw UsageError("arity must be at least 3");
  ChainDirection dir;
  try {
    dir = parse_direction(a.direction);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  json config;
  config["command"] = "chain";
  config["direction"] = a.direction;
  config["n"] = a.n;
  config["arity"] = a.arity;
  config["seed"] = a.seed;
  write_output(a.out, chain_jsonl(run_chain(dir, a.n, a.arity, a.seed), config));
  return 0;
}

struct TreeArgs {
  std::int64_t N = 1;
  std::uint64_t seed = kDefaultSeed;
  std::string out;
};

int cmd_tree(const TreeArgs& a) {
  require_odd(a.N);
  if (a.N > 1000001) throw UsageError("N too large");
  Rng rng(a.seed);
  const LabeledBinaryForest tree = sample_uniform_tree(static_cast<int>(a.N), rng);
  const PlaneForest plane = to_plane(tree, rng);
  json config;
  config["command"] = "tree";
  config["N"] = a.N;
  config["seed"] = a.seed;
  json j;
  j["type"] = "tree";
  j["version"] = kVersion;
  j["config"] = config;
  j["labeled"] = tree;
  j["plane"] = plane;
  j["lukasiewicz"] = lukasiewicz_encode(plane).values;
  write_output(a.out, j.dump() + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ternary and k-ary coalescent: simulation, exact laws and verification", "tcoal"};
  app.set_version_flag("--version", std::string(kVersion));
  app.set_config("--config", "", "TOML/INI file with defaults; command-line flags win");
  app.require_subcommand(1);

  SimulateArgs sim;
  auto* s = app.add_subcommand("simulate", "Gillespie simulation; JSON-lines trajectory");
  s->add_option("--units", sim.units, "Start from N unit masses");
  s->add_option("--initial", sim.initial, "Start from a comma-separated mass list");
  s->add_option("--arity", sim.arity, "Kernel arity k >= 3")->capture_default_str();
  s->add_option("--seed", sim.seed, "Random seed")->capture_default_str();
  s->add_option("--t-max", sim.t_max, "Stop at this time");
  s->add_option("--out", sim.out, "Output file (default stdout)");

  ExactArgs ex;
  auto* e = app.add_subcommand("exact", "Exact laws as CSV");
  e->add_option("law", ex.law,
                "skeleton | mu | hitting | forest-count | plane-count | rates | "
                "particle-count | kary-count | block")
      ->required();
  e->add_option("--N", ex.N, "Number of initial particles");
  e->add_option("--M", ex.M, "Total mass (default N)");
  e->add_option("--l", ex.l, "Number of coagulations");
  e->add_option("--m", ex.m, "Components (counts) or time (hitting, kary-count)");
  e->add_option("--m-max", ex.m_max, "Tabulate the hitting pmf for m = 1..m-max");
  e->add_option("--s", ex.s, "Mass to split (mu)");
  e->add_option("--k", ex.k, "Level for the hitting time")->capture_default_str();
  e->add_option("--j", ex.j, "Level for the k-ary count")->capture_default_str();
  e->add_option("--arity", ex.arity, "Arity for kary-count")->capture_default_str();
  e->add_option("--t", ex.t, "Time");
  e->add_option("--initial", ex.initial, "Initial masses for block");
  e->add_option("--blocks", ex.blocks, "Block partition, e.g. 1,2,3|4|5");
  e->add_option("--out", ex.out, "Output file (default stdout)");

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify", "Run the invariant suite; JSON report");
  v->add_option("--only", ver.only, "Sections to run (comma separated)")->delimiter(',');
  v->add_option("--n", ver.n, "Largest n for the exact duality checks")->capture_default_str();
  v->add_option("--seed", ver.seed, "Seed for statistical checks")->capture_default_str();
  v->add_option("--samples", ver.samples, "Samples per statistical check")->capture_default_str();
  v->add_flag("--inject-fault", ver.inject_fault, "Perturb a rate (negative control)");
  v->add_option("--out", ver.out, "Output file (default stdout)");

  ConvergeArgs con;
  auto* c = app.add_subcommand("converge", "Desk-scale convergence experiments; JSON report");
  c->add_option("--N", con.Ns, "Comma-separated odd N values")->capture_default_str()->delimiter(',');
  c->add_option("--t", con.ts, "Comma-separated times")->capture_default_str()->delimiter(',');
  c->add_option("--replicas", con.replicas, "Replicas per (N, t)")->capture_default_str();
  c->add_option("--seed", con.seed, "Random seed")->capture_default_str();
  c->add_flag("--against-binary", con.against_binary, "Compare with the binary additive oracle");
  c->add_option("--binary-n", con.binary_n, "Atoms of the binary oracle")->capture_default_str();
  c->add_option("--out", con.out, "Output file (default stdout)");

  ChainArgs ch;
  auto* h = app.add_subcommand("chain", "Walk-representation chain; JSON-lines");
  h->add_option("--direction", ch.direction, "build | destroy")->capture_default_str();
  h->add_option("--n", ch.n, "Chain length n")->capture_default_str();
  h->add_option("--arity", ch.arity, "Arity k >= 3")->capture_default_str();
  h->add_option("--seed", ch.seed, "Random seed")->capture_default_str();
  h->add_option("--out", ch.out, "Output file (default stdout)");

  TreeArgs tr;
  auto* t = app.add_subcommand("tree", "Uniform labeled binary tree; JSON");
  t->add_option("--N", tr.N, "Odd number of vertices")->required();
  t->add_option("--seed", tr.seed, "Random seed")->capture_default_str();
  t->add_option("--out", tr.out, "Output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForAllHelp& err) {
    return app.exit(err);
  } catch (const CLI::CallForVersion& err) {
    return app.exit(err);
  } catch (const CLI::ParseError& err) {
    app.exit(err);
    return kExitUsage;
  }

  try {
    if (*s) return cmd_simulate(sim);
    if (*e) return cmd_exact(ex);
    if (*v) return cmd_verify(ver);
    if (*c) return cmd_converge(con);
    if (*h) return cmd_chain(ch);
    if (*t) return cmd_tree(tr);
  } catch (const IoError& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitIo;
  } catch (const UsageError& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& err) {
    std::cerr << "usage error: " << err.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
