#ifndef TCOAL_VERIFY_HPP_
#define TCOAL_VERIFY_HPP_

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"
#include "tcoal/rng.hpp"

namespace tcoal {

// Second fixed seed used when a statistical check fails at the first one.
inline constexpr std::uint64_t kRetrySeed = 987654321;

struct VerifyOptions {
  std::set<std::string> only;  // empty: default sections
  std::int64_t n = 3;          // largest n for the exact configuration-chain laws
  std::uint64_t seed = kDefaultSeed;
  std::uint64_t retry_seed = kRetrySeed;
  std::size_t samples = 100000;
  bool inject_fault = false;  // perturbs the kernel constant used by the oracles
};

struct CheckResult {
  int criterion = 0;
  std::string section;
  std::string name;
  bool pass = false;
  std::string detail;
  nlohmann::ordered_json data;
};

// Section names, in criterion order.
const std::vector<std::string>& all_sections();
// Sections run when VerifyOptions::only is empty. The desk-scale limit
// experiments ("scaling", "convergence") run only when asked for.
const std::vector<std::string>& default_sections();

std::vector<CheckResult> check_exact_laws(const VerifyOptions& opt);
std::vector<CheckResult> check_duality(const VerifyOptions& opt);
std::vector<CheckResult> check_representations(const VerifyOptions& opt);
std::vector<CheckResult> check_counting(const VerifyOptions& opt);
std::vector<CheckResult> check_scaling(const VerifyOptions& opt);
std::vector<CheckResult> check_convergence(const VerifyOptions& opt);
std::vector<CheckResult> check_kary(const VerifyOptions& opt);
std::vector<CheckResult> check_determinism(const VerifyOptions& opt);

std::vector<CheckResult> check_section(const std::string& section, const VerifyOptions& opt);
std::vector<CheckResult> run_verification(const VerifyOptions& opt);

nlohmann::ordered_json verify_report(const std::vector<CheckResult>& results,
                                     const nlohmann::ordered_json& config);

}  // namespace tcoal

#endif  // TCOAL_VERIFY_HPP_
