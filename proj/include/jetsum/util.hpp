#pragma once

#include <cstdint>
#include <cstdlib>
#include <functional>
#include <numeric>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "jetsum/errors.hpp"

namespace jetsum {

using u16 = std::uint16_t;
using u64 = std::uint64_t;
using i64 = std::int64_t;
using u128 = unsigned __int128;
using i128 = __int128;

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw CountOverflow("integer accumulator overflow in add");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw CountOverflow("integer accumulator overflow in mul");
  return r;
}

inline u64 checked_pow_u64(u64 base, unsigned exp) {
  u64 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > UINT64_MAX / base) throw CountOverflow("power exceeds 64-bit range");
    r *= base;
  }
  return r;
}

inline i64 checked_pow_i64(i64 base, unsigned exp) {
  i64 r = 1;
  for (unsigned i = 0; i < exp; ++i) r = checked_mul(r, base);
  return r;
}

// base^exp saturating at a sentinel "too big" value; used for budget checks
// where the exact count above the budget is irrelevant.
inline u128 pow_u128_sat(u64 base, unsigned exp) {
  constexpr u128 cap = ~u128{0} >> 1;
  u128 r = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 && r > cap / base) return cap;
    r *= base;
  }
  return r;
}

std::string u128_to_string(u128 v);
inline std::string u128_to_string(u128 v) {
  if (v == 0) return "0";
  std::string s;
  while (v > 0) {
    s.insert(s.begin(), char('0' + int(v % 10)));
    v /= 10;
  }
  return s;
}

// ---------------------------------------------------------------------------
// Enumeration budget. Every exhaustive operation checks its point count here
// before touching the first point.

struct Budget {
  u64 max_points = 1'000'000'000ULL;

  static Budget from_env() {
    Budget b;
    if (const char* s = std::getenv("JETSUM_BUDGET")) {
      char* end = nullptr;
      unsigned long long v = std::strtoull(s, &end, 10);
      if (end && *end == '\0' && v > 0) b.max_points = v;
    }
    return b;
  }

  void require(u128 points, const char* what) const {
    if (points > u128(max_points)) {
      u64 needed = points > u128(UINT64_MAX) ? UINT64_MAX : u64(points);
      throw BudgetExceeded(std::string(what) + ": " + u128_to_string(points) +
                               " points exceed budget " + std::to_string(max_points),
                           needed, max_points);
    }
  }
};

// ---------------------------------------------------------------------------
// Exact rational on 64-bit parts. Desk-scale only: every operation checks for
// overflow through 128-bit intermediates.

class Rat64 {
 public:
  Rat64() : num_(0), den_(1) {}
  Rat64(i64 n) : num_(n), den_(1) {}
  Rat64(i64 n, i64 d) : num_(n), den_(d) { normalize(); }

  i64 num() const { return num_; }
  i64 den() const { return den_; }

  friend Rat64 operator+(const Rat64& a, const Rat64& b) {
    return from_i128(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rat64 operator-(const Rat64& a, const Rat64& b) {
    return from_i128(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rat64 operator*(const Rat64& a, const Rat64& b) {
    return from_i128(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend bool operator==(const Rat64& a, const Rat64& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator<(const Rat64& a, const Rat64& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator<=(const Rat64& a, const Rat64& b) {
    return i128(a.num_) * b.den_ <= i128(b.num_) * a.den_;
  }
  bool negative() const { return num_ < 0; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return double(num_) / double(den_); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  static Rat64 from_i128(i128 n, i128 d) {
    if (d < 0) { n = -n; d = -d; }
    i128 g = gcd128(n < 0 ? -n : n, d);
    if (g > 1) { n /= g; d /= g; }
    if (n > INT64_MAX || n < INT64_MIN || d > INT64_MAX)
      throw CountOverflow("rational arithmetic overflow");
    Rat64 r;
    r.num_ = i64(n);
    r.den_ = i64(d);
    return r;
  }
  static i128 gcd128(i128 a, i128 b) {
    while (b != 0) { i128 t = a % b; a = b; b = t; }
    return a == 0 ? 1 : a;
  }
  void normalize() {
    if (den_ == 0) throw std::invalid_argument("zero denominator");
    *this = from_i128(num_, den_);
  }
  i64 num_;
  i64 den_;
};

// ---------------------------------------------------------------------------
// Deterministic seeding. One master seed; every sampling site derives its own
// stream from the master seed and a fixed label, so suites never share state.

inline u64 splitmix64(u64& state) {
  u64 z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline u64 derive_seed(u64 master, std::string_view label) {
  u64 h = 0xcbf29ce484222325ULL;
  for (char c : label) {
    h ^= u64(static_cast<unsigned char>(c));
    h *= 0x100000001b3ULL;
  }
  u64 s = master ^ h;
  return splitmix64(s);
}

// ---------------------------------------------------------------------------
// Little-endian base-q odometer over a fixed digit count. Digit 0 moves
// fastest; index i maps to the base-q expansion of i.

struct DigitBox {
  int q = 0;
  int ndigits = 0;

  u128 total() const { return pow_u128_sat(u64(q), unsigned(ndigits)); }

  void decode(u64 idx, u16* out) const {
    for (int i = 0; i < ndigits; ++i) {
      out[i] = u16(idx % u64(q));
      idx /= u64(q);
    }
  }

  // In-place increment; returns false when the odometer wraps to all zeros.
  bool next(u16* d) const {
    for (int i = 0; i < ndigits; ++i) {
      if (++d[i] < q) return true;
      d[i] = 0;
    }
    return false;
  }
};

// ---------------------------------------------------------------------------
// Deterministic shard-and-merge. Workers process contiguous index ranges and
// partial results are merged in shard order, so the outcome is independent of
// the worker count.

inline std::vector<std::pair<u64, u64>> split_range(u64 total, int shards) {
  if (shards < 1) shards = 1;
  std::vector<std::pair<u64, u64>> out;
  u64 base = total / u64(shards), rem = total % u64(shards);
  u64 lo = 0;
  for (int s = 0; s < shards; ++s) {
    u64 len = base + (u64(s) < rem ? 1 : 0);
    out.emplace_back(lo, lo + len);
    lo += len;
  }
  return out;
}

template <typename T, typename Work, typename Merge>
T sharded_reduce(u64 total, int workers, T init, Work work, Merge merge) {
  auto ranges = split_range(total, workers);
  if (workers <= 1) {
    T acc = std::move(init);
    for (auto [lo, hi] : ranges)
      if (lo < hi) acc = merge(std::move(acc), work(lo, hi));
    return acc;
  }
  std::vector<T> parts(ranges.size(), init);
  std::vector<std::thread> threads;
  std::vector<std::exception_ptr> errors(ranges.size());
  for (std::size_t s = 0; s < ranges.size(); ++s) {
    threads.emplace_back([&, s] {
      try {
        if (ranges[s].first < ranges[s].second)
          parts[s] = work(ranges[s].first, ranges[s].second);
      } catch (...) {
        errors[s] = std::current_exception();
      }
    });
  }
  for (auto& t : threads) t.join();
  for (auto& e : errors)
    if (e) std::rethrow_exception(e);
  T acc = std::move(init);
  for (auto& p : parts) acc = merge(std::move(acc), std::move(p));
  return acc;
}

}  // namespace jetsum
