#include "tcoal/partition.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace tcoal {

MassPartition::MassPartition(std::vector<Mass> masses) : masses_(std::move(masses)) {
  if (masses_.empty()) throw std::invalid_argument("empty partition");
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (masses_[i] < 1) throw std::invalid_argument("masses must be positive");
    if (i > 0 && masses_[i] > masses_[i - 1])
      throw std::invalid_argument("masses must be non-increasing");
  }
}

MassPartition MassPartition::units(std::size_t count) {
  return MassPartition(std::vector<Mass>(count, 1));
}

Mass MassPartition::total_mass() const {
  return std::accumulate(masses_.begin(), masses_.end(), Mass{0});
}

std::string MassPartition::key() const {
  std::string out;
  for (std::size_t i = 0; i < masses_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(masses_[i]);
  }
  return out;
}

MassPartition rank(std::span<const Mass> values) {
  if (values.empty()) throw std::invalid_argument("empty partition");
  std::vector<Mass> v(values.begin(), values.end());
  if (std::any_of(v.begin(), v.end(), [](Mass m) { return m < 1; }))
    throw std::invalid_argument("masses must be positive");
  std::stable_sort(v.begin(), v.end(), std::greater<>());
  return MassPartition(std::move(v));
}

MassPartition merge_indices(const MassPartition& p,
                            std::span<const std::size_t> indices) {
  if (indices.size() < 2)
    throw std::invalid_argument("merge needs at least two indices");
  std::vector<bool> chosen(p.size(), false);
  Mass merged = 0;
  for (std::size_t i : indices) {
    if (i >= p.size()) throw std::out_of_range("merge index out of range");
    if (chosen[i]) throw std::invalid_argument("duplicate merge index");
    chosen[i] = true;
    merged += p[i];
  }
  std::vector<Mass> out;
  out.reserve(p.size() - indices.size() + 1);
  bool placed = false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (chosen[i]) continue;
    if (!placed && p[i] < merged) {
      out.push_back(merged);
      placed = true;
    }
    out.push_back(p[i]);
  }
  if (!placed) out.push_back(merged);
  return MassPartition(std::move(out));
}

BigInt multiplicity_gamma(const MassPartition& p) {
  if (p.empty()) throw std::invalid_argument("empty partition");
  BigInt g = factorial(p.size());
  std::size_t run = 1;
  for (std::size_t i = 1; i <= p.size(); ++i) {
    if (i < p.size() && p[i] == p[i - 1]) {
      ++run;
    } else {
      g /= factorial(run);
      run = 1;
    }
  }
  return g;
}

double RescaledPartition::sum() const {
  return std::accumulate(values.begin(), values.end(), 0.0);
}

RescaledPartition rescale(const MassPartition& p, Mass total) {
  if (total <= 0) throw std::invalid_argument("rescale: N must be positive");
  if (p.total_mass() > total)
    throw std::invalid_argument("rescale: total mass exceeds N");
  RescaledPartition r;
  r.values.reserve(p.size());
  const auto n = static_cast<double>(total);
  for (Mass m : p.masses()) r.values.push_back(static_cast<double>(m) / n);
  return r;
}

MassPartition partition_from_key(const std::string& key) {
  std::vector<Mass> v;
  std::stringstream ss(key);
  std::string item;
  while (std::getline(ss, item, ',')) v.push_back(std::stoll(item));
  return MassPartition(std::move(v));
}

void to_json(nlohmann::json& j, const MassPartition& p) { j = p.masses(); }

void from_json(const nlohmann::json& j, MassPartition& p) {
  p = MassPartition(j.get<std::vector<Mass>>());
}

void to_json(nlohmann::ordered_json& j, const MassPartition& p) { j = p.masses(); }

}  // namespace tcoal
