#include "tcoal/exact_laws.hpp"

#include <mpfr.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <stdexcept>

namespace tcoal {
namespace {

bool is_odd(Mass x) { return x % 2 != 0; }

void require_odd_count(Mass N) {
  if (N < 1 || !is_odd(N)) throw std::invalid_argument("N must be odd");
}

// Exact rates alpha(1), ..., alpha(count).
std::vector<Rational> rates(Mass M, Mass N, std::int64_t count) {
  std::vector<Rational> a;
  a.reserve(count);
  for (std::int64_t k = 1; k <= count; ++k) a.push_back(total_rate(M, N, k));
  for (std::size_t i = 1; i < a.size(); ++i) {
    if (!(a[i] < a[i - 1]))
      throw std::domain_error("hypoexponential requires distinct rates");
  }
  return a;
}

// Minimal RAII holder for an MPFR value.
class MpfrValue {
 public:
  explicit MpfrValue(mpfr_prec_t bits) { mpfr_init2(v_, bits); }
  ~MpfrValue() { mpfr_clear(v_); }
  MpfrValue(const MpfrValue&) = delete;
  MpfrValue& operator=(const MpfrValue&) = delete;
  mpfr_ptr get() { return v_; }

 private:
  mpfr_t v_;
};

// sum_j coeff[j] * exp(-rate[j] * t) at enough precision that the cancellation
// between terms costs nothing visible in the double result.
double exp_sum_exact(const std::vector<Rational>& coeff,
                     const std::vector<Rational>& rate, double t) {
  long magnitude = 0;
  for (const auto& c : coeff) {
    if (c == 0) continue;
    const long bits = static_cast<long>(mpz_sizeinbase(c.get_num_mpz_t(), 2)) -
                      static_cast<long>(mpz_sizeinbase(c.get_den_mpz_t(), 2));
    magnitude = std::max(magnitude, bits + 1);
  }
  const mpfr_prec_t prec = 96 + magnitude;
  MpfrValue acc(prec), term(prec), arg(prec), tt(prec);
  mpfr_set_zero(acc.get(), 1);
  mpfr_set_d(tt.get(), t, MPFR_RNDN);
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    mpfr_set_q(arg.get(), rate[j].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(arg.get(), arg.get(), tt.get(), MPFR_RNDN);
    mpfr_neg(arg.get(), arg.get(), MPFR_RNDN);
    mpfr_exp(term.get(), arg.get(), MPFR_RNDN);
    mpfr_set_q(arg.get(), coeff[j].get_mpq_t(), MPFR_RNDN);
    mpfr_mul(term.get(), term.get(), arg.get(), MPFR_RNDN);
    mpfr_add(acc.get(), acc.get(), term.get(), MPFR_RNDN);
  }
  return mpfr_get_d(acc.get(), MPFR_RNDN);
}

// Same sum in long double with Neumaier compensation.
double exp_sum_float(const std::vector<long double>& coeff,
                     const std::vector<long double>& rate, double t) {
  long double sum = 0, comp = 0;
  for (std::size_t j = 0; j < coeff.size(); ++j) {
    const long double x = coeff[j] * std::exp(-rate[j] * t);
    const long double s = sum + x;
    if (std::fabs(sum) >= std::fabs(x)) {
      comp += (sum - s) + x;
    } else {
      comp += (x - s) + sum;
    }
    sum = s;
  }
  return static_cast<double>(sum + comp);
}

// Coefficients of the survival-type sum  sum_j c_j exp(-a_j t)  where
//   c_j = scale_j * prod_{k != j} a_k / (a_k - a_j).
template <typename T>
std::vector<T> hypo_coefficients(const std::vector<T>& a, bool density_form) {
  const std::size_t n = a.size();
  std::vector<T> c(n);
  for (std::size_t j = 0; j < n; ++j) {
    T prod = 1;
    for (std::size_t k = 0; k < n; ++k) {
      if (k != j) prod *= a[k] / (a[k] - a[j]);
    }
    c[j] = density_form ? T(prod * a[j] / a[n - 1]) : prod;
  }
  return c;
}

void generate_partitions(Mass remaining, std::size_t parts, Mass max_part, Mass step,
                         std::vector<Mass>& current, std::vector<MassPartition>& out) {
  if (parts == 0) {
    if (remaining == 0) out.emplace_back(current);
    return;
  }
  // Every remaining part is at least 1.
  Mass top = std::min(max_part, remaining - static_cast<Mass>(parts - 1));
  // Align down to the lattice 1 + step * j.
  if (top < 1) return;
  top -= (top - 1) % step;
  for (Mass v = top; v >= 1; v -= step) {
    if (v * static_cast<Mass>(parts) < remaining) break;
    current.push_back(v);
    generate_partitions(remaining - v, parts - 1, v, step, current, out);
    current.pop_back();
  }
}

// C(s, (s+1)/2) / s for odd s: the hitting-time weight without 2^-s.
Rational hitting_weight(Mass s) { return make_rational(binomial(s, (s + 1) / 2), s); }

}  // namespace

Rational total_rate(Mass M, Mass N, std::int64_t k) {
  require_odd_count(N);
  if (M < N) throw std::invalid_argument("total mass must be at least N");
  if (k < 1 || k > (N - 1) / 2) throw std::out_of_range("no k-th coagulation");
  BigInt v = BigInt(M + N + 2 - 2 * k) * (N + 1 - 2 * k) * (N - 2 * k);
  return make_rational(v, 2);
}

Rational mono_rate(Mass N, std::int64_t i) {
  require_odd_count(N);
  if (i < 1 || i > (N - 1) / 2) throw std::out_of_range("no k-th coagulation");
  return Rational(BigInt(N + 1 - i) * (N + 1 - 2 * i) * (N - 2 * i));
}

Rational hitting_time_pmf(std::int64_t k, std::int64_t m) {
  if (k == 0) throw std::invalid_argument("hitting level must be nonzero");
  if (m < 1) throw std::invalid_argument("hitting time must be positive");
  const std::int64_t a = k < 0 ? -k : k;
  if (m < a || (m - a) % 2 != 0) return 0;
  BigInt pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(m));
  return make_rational(BigInt(a) * binomial(m, (m + a) / 2), BigInt(m) * pow2);
}

double hitting_time_asymptotic(std::int64_t n) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  const double nd = static_cast<double>(n);
  return 0.5 / std::sqrt(std::numbers::pi * nd * nd * nd);
}

double particle_count_pmf(Mass M, Mass N, std::int64_t l, double t) {
  require_odd_count(N);
  const std::int64_t n = (N - 1) / 2;
  if (l < 0 || l > n) throw std::out_of_range("l out of range");
  if (!(t >= 0.0)) throw std::invalid_argument("t must be nonnegative");
  if (M < N) throw std::invalid_argument("total mass must be at least N");
  if (n == 0) return 1.0;

  // l < n:  sum_{j<=l+1} alpha_j e^{-alpha_j t} / alpha_{l+1} prod ...
  // l = n:  1 - P(T_n > t), the survival of the full hypoexponential sum.
  const bool last = (l == n);
  const std::int64_t count = last ? n : l + 1;
  if (count <= 30) {
    auto a = rates(M, N, count);
    auto c = hypo_coefficients(a, !last);
    const double s = exp_sum_exact(c, a, t);
    return std::clamp(last ? 1.0 - s : s, 0.0, 1.0);
  }
  auto exact = rates(M, N, count);
  std::vector<long double> a;
  a.reserve(exact.size());
  for (const auto& q : exact) a.push_back(static_cast<long double>(q.get_d()));
  auto c = hypo_coefficients(a, !last);
  const double s = exp_sum_float(c, a, t);
  return std::clamp(last ? 1.0 - s : s, 0.0, 1.0);
}

std::vector<MassPartition> partitions_into(Mass total, std::size_t parts, Mass step) {
  std::vector<MassPartition> out;
  if (parts == 0 || total < static_cast<Mass>(parts)) return out;
  std::vector<Mass> current;
  generate_partitions(total, parts, total, step, current, out);
  return out;
}

std::vector<MassPartition> skeleton_support(Mass N, std::int64_t l) {
  require_odd_count(N);
  if (l < 0 || l > (N - 1) / 2) throw std::out_of_range("l out of range");
  return partitions_into(N, static_cast<std::size_t>(N - 2 * l), 2);
}

Rational skeleton_marginal(Mass N, std::int64_t l, const MassPartition& p) {
  require_odd_count(N);
  if (l < 0 || l > (N - 1) / 2) throw std::out_of_range("l out of range");
  if (p.total_mass() != N || static_cast<Mass>(p.size()) != N - 2 * l ||
      std::any_of(p.masses().begin(), p.masses().end(),
                  [](Mass s) { return !is_odd(s); }))
    throw std::invalid_argument("parity/mass mismatch");
  Rational v = Rational(multiplicity_gamma(p)) * make_rational(N, N - 2 * l) /
               Rational(binomial(N, l));
  for (Mass s : p.masses()) v *= hitting_weight(s);
  v.canonicalize();
  return v;
}

Rational dislocation_pmf(Mass s, Triple r) {
  if (s < 3 || !is_odd(s)) throw std::invalid_argument("mu_s needs odd s >= 3");
  for (Mass x : r) {
    if (x < 1) throw std::invalid_argument("malformed triple");
  }
  if (r[0] + r[1] + r[2] != s) return 0;
  for (Mass x : r) {
    if (!is_odd(x)) return 0;
  }
  const std::set<Mass> distinct(r.begin(), r.end());
  const int gamma = distinct.size() == 3 ? 6 : distinct.size() == 2 ? 3 : 1;
  Rational v = Rational(gamma) * make_rational(s, 3);
  for (Mass x : r) v *= hitting_weight(x);
  v /= Rational(binomial(s, (s + 3) / 2));
  v.canonicalize();
  return v;
}

std::vector<Triple> dislocation_support(Mass s) {
  if (s < 3 || !is_odd(s)) throw std::invalid_argument("mu_s needs odd s >= 3");
  std::vector<Triple> out;
  for (const auto& p : partitions_into(s, 3, 2)) out.push_back({p[0], p[1], p[2]});
  return out;
}

BlockPartition canonical(BlockPartition blocks) {
  for (auto& b : blocks) std::sort(b.begin(), b.end());
  std::sort(blocks.begin(), blocks.end(),
            [](const auto& x, const auto& y) { return x.front() < y.front(); });
  return blocks;
}

std::string block_key(const BlockPartition& blocks) {
  std::string out;
  for (const auto& b : canonical(blocks)) {
    if (!out.empty()) out += '|';
    for (std::size_t i = 0; i < b.size(); ++i) {
      if (i) out += ',';
      out += std::to_string(b[i]);
    }
  }
  return out;
}

Rational block_coagulation_prob(const MassPartition& r, const BlockPartition& blocks) {
  const auto N = static_cast<Mass>(r.size());
  require_odd_count(N);
  std::vector<bool> seen(N + 1, false);
  std::size_t covered = 0;
  for (const auto& b : blocks) {
    if (b.empty()) throw std::invalid_argument("empty block");
    if (!is_odd(static_cast<Mass>(b.size())))
      throw std::invalid_argument("blocks must have odd cardinality");
    for (int i : b) {
      if (i < 1 || i > N || seen[i])
        throw std::invalid_argument("blocks must partition {1..N}");
      seen[i] = true;
      ++covered;
    }
  }
  if (static_cast<Mass>(covered) != N)
    throw std::invalid_argument("blocks must partition {1..N}");
  const std::int64_t l = (N - static_cast<Mass>(blocks.size())) / 2;
  const Mass M = r.total_mass();

  Rational v = Rational(factorial(l));
  for (std::int64_t k = 1; k <= l; ++k) v /= total_rate(M, N, k);
  for (const auto& b : blocks) {
    Mass rb = 0;
    for (int i : b) rb += r[i - 1];
    const std::int64_t half = (static_cast<std::int64_t>(b.size()) - 1) / 2;
    // Gamma((rb+|B|+2)/2) / Gamma((rb+3)/2) = prod_{i<half} ((rb+3)/2 + i).
    Rational ratio = 1;
    for (std::int64_t i = 0; i < half; ++i) ratio *= make_rational(rb + 3 + 2 * i, 2);
    v *= ratio * Rational(factorial(b.size() - 1)) / Rational(factorial(half));
  }
  v.canonicalize();
  return v;
}

double partition_event_prob(const MassPartition& r, const BlockPartition& blocks,
                            double t) {
  const auto N = static_cast<Mass>(r.size());
  const Rational p = block_coagulation_prob(r, blocks);
  const std::int64_t l = (N - static_cast<Mass>(blocks.size())) / 2;
  return particle_count_pmf(r.total_mass(), N, l, t) * p.get_d();
}

BigInt forest_count(Mass m, Mass N) {
  if (N < 1 || !is_odd(N)) throw std::invalid_argument("N must be odd");
  if (!is_odd(m)) throw std::invalid_argument("F(m,N) empty for even m");
  if (m < 1 || m > N) throw std::out_of_range("need 1 <= m <= N");
  const std::int64_t n = (N - 1) / 2;
  const std::int64_t k = (m + 1) / 2;
  Rational v;
  if (k == 1) {
    // 2^-n (2n+1)! n! C_n
    BigInt catalan = binomial(2 * n, n) / (n + 1);
    v = Rational(factorial(2 * n + 1) * factorial(n) * catalan);
    BigInt pow2;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(n));
    v /= Rational(pow2);
  } else {
    // 2^{k-(n+1)} n (2n+1)! (2n-1)! (k-2)! / ((n+k)! (k-1)! (2k-3)!)
    v = Rational(BigInt(n) * factorial(2 * n + 1) * factorial(2 * n - 1) *
                 factorial(k - 2)) /
        Rational(factorial(n + k) * factorial(k - 1) * factorial(2 * k - 3));
    BigInt pow2;
    const std::int64_t e = n + 1 - k;
    mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(e));
    v /= Rational(pow2);
  }
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("forest count is not an integer");
  return v.get_num();
}

BigInt plane_forest_count(Mass m, Mass N) {
  const BigInt labeled = forest_count(m, N);
  const std::int64_t internal = (N - m) / 2;
  BigInt pow2;
  mpz_ui_pow_ui(pow2.get_mpz_t(), 2, static_cast<unsigned long>(internal));
  Rational v = Rational(pow2 * factorial(m) * labeled) /
               Rational(factorial(N) * factorial(internal));
  v.canonicalize();
  if (v.get_den() != 1) throw std::logic_error("plane forest count is not an integer");
  return v.get_num();
}

Rational kary_first_passage_count(int arity, std::int64_t j, std::int64_t m) {
  if (arity < 3) throw std::invalid_argument("arity must be at least 3");
  if (j < 1 || m < 1) throw std::invalid_argument("need j >= 1 and m >= 1");
  const std::int64_t down_excess = m - j;
  if (down_excess < 0 || down_excess % (arity - 1) != 0) return 0;
  const std::int64_t ups = down_excess / (arity - 1);
  Rational v = make_rational(BigInt(j) * binomial(m, ups), BigInt(m));
  v.canonicalize();
  return v;
}

}  // namespace tcoal
