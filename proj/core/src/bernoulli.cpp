#include "cmv/bernoulli.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <vector>

#include "cmv/errors.hpp"

namespace cmv {

namespace {

struct RationalCache {
  std::shared_mutex mutex;
  std::vector<mpq_class> values{mpq_class(1), mpq_class(-1, 2)};
};

RationalCache& rational_cache() {
  static RationalCache cache;
  return cache;
}

void extend_rationals(std::vector<mpq_class>& b, int n) {
  // B_m = -1/(m+1) * sum_{k<m} C(m+1, k) B_k; odd B_k vanish for k >= 3.
  for (int m = static_cast<int>(b.size()); m <= n; ++m) {
    if (m % 2 == 1) {
      b.emplace_back(0);
      continue;
    }
    mpz_class binom = 1;  // C(m+1, 0)
    mpq_class sum = 0;
    for (int k = 0; k < m; ++k) {
      if (k == 1 || k % 2 == 0) sum += mpq_class(binom) * b[static_cast<std::size_t>(k)];
      binom = binom * (m + 1 - k) / (k + 1);
    }
    mpq_class value = -sum / (m + 1);
    value.canonicalize();
    b.push_back(value);
  }
}

struct RealCache {
  std::shared_mutex mutex;
  std::map<mpfr_prec_t, std::vector<BigReal>> plain;
  std::map<mpfr_prec_t, std::vector<BigReal>> over_factorial;
};

RealCache& real_cache() {
  static RealCache cache;
  return cache;
}

BigReal cached_real(int n, bool divide_by_factorial) {
  RealCache& cache = real_cache();
  auto& table = divide_by_factorial ? cache.over_factorial : cache.plain;
  const mpfr_prec_t bits = working_bits();
  {
    std::shared_lock lock(cache.mutex);
    auto it = table.find(bits);
    if (it != table.end() && static_cast<int>(it->second.size()) > n) {
      return it->second[static_cast<std::size_t>(n)];
    }
  }
  // Fill outside the lock, then publish; concurrent fills produce identical values.
  const int target = n < 64 ? 64 : n + n / 2;
  std::vector<BigReal> fresh;
  fresh.reserve(static_cast<std::size_t>(target) + 1);
  mpz_class fact = 1;
  for (int k = 0; k <= target; ++k) {
    if (k > 0) fact *= k;
    mpq_class q = bernoulli_rational(k);
    if (divide_by_factorial) q /= fact;
    fresh.emplace_back(q);
  }
  BigReal out = fresh[static_cast<std::size_t>(n)];
  std::unique_lock lock(cache.mutex);
  auto& slot = table[bits];
  if (slot.size() < fresh.size()) slot = std::move(fresh);
  return out;
}

}  // namespace

mpq_class bernoulli_rational(int n) {
  if (n < 0) throw DomainError("Bernoulli index must be nonnegative, got " + std::to_string(n));
  RationalCache& cache = rational_cache();
  {
    std::shared_lock lock(cache.mutex);
    if (static_cast<int>(cache.values.size()) > n) return cache.values[static_cast<std::size_t>(n)];
  }
  std::unique_lock lock(cache.mutex);
  extend_rationals(cache.values, n);
  return cache.values[static_cast<std::size_t>(n)];
}

BigReal bernoulli(int n) { return cached_real(n, false); }

BigReal bernoulli_over_factorial(int n) { return cached_real(n, true); }

}  // namespace cmv
