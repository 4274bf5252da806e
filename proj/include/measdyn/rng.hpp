#pragma once

// Deterministic RNG for sampling in tests and scenarios. splitmix64 with
// rejection sampling keeps every draw reproducible across platforms, which
// the byte-identical report guarantee depends on (std:: distributions are
// implementation defined and would break that).

#include <algorithm>
#include <cstdint>
#include <string>
#include <vector>

#include "measdyn/rational.hpp"

namespace measdyn {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound), bias-free by rejection.
  std::uint64_t below(std::uint64_t bound) {
    if (bound == 0) throw Error("rng bound must be positive");
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v;
    do {
      v = next();
    } while (v >= limit);
    return v % bound;
  }

  long range(long lo, long hi) {  // inclusive ends
    if (hi < lo) throw Error("rng range is empty");
    return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1)));
  }

  bool flip() { return (next() & 1) != 0; }

  // k distinct values from [0, n): partial Fisher-Yates over an index pool.
  std::vector<int> distinct(int n, int k) {
    if (k > n) throw Error("rng cannot draw more distinct values than exist");
    std::vector<int> pool(n);
    for (int i = 0; i < n; ++i) pool[i] = i;
    std::vector<int> out;
    out.reserve(k);
    for (int i = 0; i < k; ++i) {
      const int j = i + static_cast<int>(below(static_cast<std::uint64_t>(n - i)));
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return out;
  }

  // Positive rational weights with common denominator `den` summing to one,
  // via a random composition of den into `parts` positive integers.
  std::vector<Rat> weights(int parts, long den) {
    if (parts < 1) throw Error("need at least one weight");
    if (den < parts) throw Error("weight denominator smaller than support size");
    std::vector<int> cuts = distinct(static_cast<int>(den - 1), parts - 1);
    for (int& c : cuts) ++c;  // cut positions in [1, den-1]
    cuts.push_back(0);
    cuts.push_back(static_cast<int>(den));
    std::sort(cuts.begin(), cuts.end());
    std::vector<Rat> out;
    out.reserve(parts);
    for (int i = 1; i < static_cast<int>(cuts.size()); ++i)
      out.push_back(rat(cuts[i] - cuts[i - 1], den));
    return out;
  }

  // Independent stream for a named sub-task; order of sub-task execution then
  // cannot perturb sibling draws (needed for --jobs determinism).
  Rng fork(const std::string& tag) const {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const char c : tag) {
      h ^= static_cast<unsigned char>(c);
      h *= 0x100000001b3ULL;
    }
    return Rng(state_ ^ h);
  }

 private:
  std::uint64_t state_;
};

}  // namespace measdyn
