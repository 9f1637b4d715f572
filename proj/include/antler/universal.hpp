#pragma once

#include <cmath>
#include <set>
#include <string>
#include <vector>

#include "antler/errors.hpp"
#include "antler/rng.hpp"

namespace antler {

enum class UniversalBackend { Exhaustive, Random, RandomVerified };

inline const char* backend_name(UniversalBackend b) {
  switch (b) {
    case UniversalBackend::Exhaustive: return "exhaustive";
    case UniversalBackend::Random: return "random";
    case UniversalBackend::RandomVerified: return "random_verified";
  }
  return "?";
}

// Family of subsets of a ground set such that every subset S of at most k
// ground elements has all 2^|S| traces {S n U : U in family}.
struct UniversalFamily {
  std::vector<int> ground;  // element ids, fixed order
  std::vector<std::set<int>> sets;
  int n = 0;
  int k = 0;
  UniversalBackend backend = UniversalBackend::Exhaustive;
  long double failure_probability = 0.0L;  // 0 for verified backends
};

struct UniversalLimits {
  int exhaustive_cap = 20;
  int verify_n_cap = 16;
  int verify_k_cap = 4;
  double random_constant = 8.0;
  int verified_retries = 16;
};

// Exhaustive check of the defining trace property; capped because the
// check enumerates all small subsets and all their traces.
inline bool verify_universal(const UniversalFamily& fam, const UniversalLimits& lim = {}) {
  if (fam.n > lim.verify_n_cap || fam.k > lim.verify_k_cap)
    throw refusal_error("verify_universal: parameters beyond cap");
  const int n = fam.n;
  // combinations of ground indices of each size 0..k
  for (int size = 0; size <= fam.k; ++size) {
    if (size > n) break;
    std::vector<int> comb(size);
    for (int i = 0; i < size; ++i) comb[i] = i;
    while (true) {
      const unsigned want = 1u << size;
      std::vector<bool> seen(want, false);
      unsigned found = 0;
      for (const auto& u : fam.sets) {
        unsigned trace = 0;
        for (int i = 0; i < size; ++i)
          if (u.count(fam.ground[comb[i]])) trace |= 1u << i;
        if (!seen[trace]) {
          seen[trace] = true;
          if (++found == want) break;
        }
      }
      if (found != want) return false;
      int i = size - 1;
      while (i >= 0 && comb[i] == n - size + i) --i;
      if (i < 0) break;
      ++comb[i];
      for (int j = i + 1; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return true;
}

// Builds an (n, k)-universal family over the given ground elements.
//   exhaustive       all 2^n subsets; refused above the size cap
//   random           m = ceil(c 2^k k ln n) uniform subsets, with the
//                    union-bound failure probability recorded
//   random_verified  random + verify_universal, retried with fresh seeds
inline UniversalFamily build_universal(const std::vector<int>& ground, int k,
                                       UniversalBackend backend, std::uint64_t seed,
                                       const UniversalLimits& lim = {}) {
  const int n = static_cast<int>(ground.size());
  if (k < 0 || k > n) throw std::invalid_argument("build_universal: need |D| >= k >= 0");

  UniversalFamily fam;
  fam.ground = ground;
  fam.n = n;
  fam.k = k;
  fam.backend = backend;

  if (backend == UniversalBackend::Exhaustive) {
    if (n > lim.exhaustive_cap)
      throw refusal_error("build_universal: exhaustive backend capped at n <= " +
                          std::to_string(lim.exhaustive_cap));
    fam.sets.reserve(std::size_t{1} << n);
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
      std::set<int> s;
      for (int i = 0; i < n; ++i)
        if (mask >> i & 1) s.insert(ground[i]);
      fam.sets.push_back(std::move(s));
    }
    fam.failure_probability = 0.0L;
    return fam;
  }

  auto build_random = [&](std::uint64_t s) {
    const double ln_n = std::log(static_cast<double>(std::max(n, 2)));
    long long m = static_cast<long long>(
        std::ceil(lim.random_constant * std::ldexp(1.0, k) * k * ln_n));
    m = std::max(m, 1LL);  // k = 0 still needs one set
    UniversalFamily f = fam;
    f.backend = UniversalBackend::Random;
    Rng rng(s);
    for (long long i = 0; i < m; ++i) {
      std::set<int> u;
      for (int j = 0; j < n; ++j)
        if (rng.next_u64() & 1) u.insert(ground[j]);
      f.sets.push_back(std::move(u));
    }
    // union bound: n^k 2^k (1 - 2^-k)^m
    long double lg = k * std::log(static_cast<long double>(std::max(n, 1))) +
                     k * std::log(2.0L) +
                     m * std::log1p(-std::ldexp(1.0L, -k));
    f.failure_probability = std::min<long double>(1.0L, std::exp(lg));
    return f;
  };

  if (backend == UniversalBackend::Random) return build_random(seed);

  // random_verified
  for (int attempt = 0; attempt < lim.verified_retries; ++attempt) {
    UniversalFamily f = build_random(seed + static_cast<std::uint64_t>(attempt));
    if (verify_universal(f, lim)) {
      f.backend = UniversalBackend::RandomVerified;
      f.failure_probability = 0.0L;
      return f;
    }
  }
  throw budget_exhausted("build_universal: random_verified exhausted retries");
}

}  // namespace antler
