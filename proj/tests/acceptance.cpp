// Acceptance runner: `acceptance_test [criterion...] [--cli PATH]`.
// Prints one line per check and one PASS/FAIL line per criterion.

#include <chrono>
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "tcoal/verify.hpp"

namespace {

using namespace tcoal;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

// Runs each CLI command twice into separate files and compares bytes.
CheckResult cli_determinism(const std::string& cli) {
  const std::vector<std::string> commands = {
      "simulate --units 101 --seed 7",
      "simulate --initial 5,3,3,1,1 --arity 3 --seed 11 --t-max 0.05",
      "simulate --units 31 --arity 4 --seed 3",
      "exact skeleton --N 9 --l 2",
      "exact mu --s 9",
      "exact particle-count --N 11 --t 0.3",
      "chain --direction destroy --n 6 --seed 5",
      "chain --direction build --n 4 --arity 5 --seed 5",
      "tree --N 21 --seed 9",
      "converge --N 51,101 --t 1 --replicas 100 --against-binary --binary-n 50",
      "verify --only counting,kary --samples 2000",
  };
  CheckResult r;
  r.criterion = 8;
  r.section = "determinism";
  r.name = "CLI outputs byte-identical across reruns";
  r.pass = true;
  int index = 0;
  for (const auto& cmd : commands) {
    std::string outputs[2];
    for (int run = 0; run < 2; ++run) {
      const std::string path = "det_" + std::to_string(index) + "_" + std::to_string(run) + ".out";
      const std::string line = cli + " " + cmd + " --out " + path + " > /dev/null";
      const int status = std::system(line.c_str());
      if (status == -1 || !WIFEXITED(status) || WEXITSTATUS(status) > 1) {
        r.pass = false;
        r.detail += "command failed: " + cmd + "; ";
      }
      outputs[run] = read_file(path);
    }
    if (outputs[0].empty() || outputs[0] != outputs[1]) {
      r.pass = false;
      r.detail += "outputs differ: " + cmd + "; ";
    }
    ++index;
  }
  if (r.pass) r.detail = std::to_string(commands.size()) + " commands identical";
  return r;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> criteria;
  std::string cli;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--cli" && i + 1 < argc) {
      cli = argv[++i];
    } else {
      const int c = std::atoi(arg.c_str());
      if (c < 1 || c > 8) {
        std::cerr << "usage: acceptance_test [1-8 ...] [--cli PATH]\n";
        return 2;
      }
      criteria.push_back(c);
    }
  }
  if (criteria.empty()) criteria = {1, 2, 3, 4, 5, 6, 7, 8};

  VerifyOptions opt;
  opt.n = 3;
  opt.samples = 100000;
  bool all_pass = true;
  for (int c : criteria) {
    const std::string& section = all_sections().at(static_cast<std::size_t>(c - 1));
    const auto start = std::chrono::steady_clock::now();
    std::vector<CheckResult> results;
    try {
      results = check_section(section, opt);
      if (c == 8 && !cli.empty()) results.push_back(cli_determinism(cli));
    } catch (const std::exception& e) {
      CheckResult failed;
      failed.name = "exception";
      failed.detail = e.what();
      results.push_back(failed);
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    bool pass = !results.empty();
    for (const auto& r : results) {
      std::cout << "  " << (r.pass ? "ok   " : "FAIL ") << r.name << ": " << r.detail << '\n';
      pass = pass && r.pass;
    }
    std::cout << "criterion " << c << " (" << section << "): " << (pass ? "PASS" : "FAIL")
              << " [" << seconds << " s]" << std::endl;
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
