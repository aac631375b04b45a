#include "bfnorm/spectra.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace bfnorm {

std::map<std::int32_t, std::uint32_t> WalshSpectrum::multiplicities() const {
  std::map<std::int32_t, std::uint32_t> out;
  for (auto v : values) ++out[v];
  return out;
}

WalshSpectrum walsh_transform(const BoolFun& f) {
  WalshSpectrum s;
  s.m = f.num_vars();
  const std::size_t n = f.num_bits();
  s.values.resize(n);
  for (std::uint32_t x = 0; x < n; ++x) s.values[x] = f.get(x) ? -1 : 1;
  for (std::size_t h = 1; h < n; h <<= 1)
    for (std::size_t i = 0; i < n; i += 2 * h)
      for (std::size_t j = i; j < i + h; ++j) {
        const std::int32_t a = s.values[j];
        const std::int32_t b = s.values[j + h];
        s.values[j] = a + b;
        s.values[j + h] = a - b;
      }
  return s;
}

bool is_bent(const BoolFun& f) {
  if (f.num_vars() % 2) throw Error("bentness requires an even number of variables");
  const std::int32_t target = std::int32_t{1} << (f.num_vars() / 2);
  const auto s = walsh_transform(f);
  return std::all_of(s.values.begin(), s.values.end(), [&](std::int32_t v) { return v == target || v == -target; });
}

BoolFun dual_bent(const BoolFun& f) {
  if (!is_bent(f)) throw Error("dual requires a bent function");
  const auto s = walsh_transform(f);
  BoolFun dual(f.num_vars());
  for (std::uint32_t u = 0; u < s.values.size(); ++u)
    if (s.values[u] < 0) dual.set(u, true);
  return dual;
}

BoolFun random_maiorana_mcfarland(int m, std::uint64_t seed, bool scramble) {
  if (m < 2 || m % 2) throw Error("Maiorana-McFarland construction needs even m >= 2");
  const int half = m / 2;
  const std::uint32_t n = std::uint32_t{1} << half;
  std::mt19937_64 rng(seed);
  std::vector<std::uint32_t> pi(n);
  std::iota(pi.begin(), pi.end(), 0u);
  // Explicit Fisher-Yates keeps the result independent of the library's shuffle.
  for (std::uint32_t i = n - 1; i > 0; --i) std::swap(pi[i], pi[rng() % (i + 1)]);
  std::vector<bool> g(n);
  for (std::uint32_t y = 0; y < n; ++y) g[y] = rng() & 1;
  BoolFun f(m);
  for (std::uint32_t y = 0; y < n; ++y)
    for (std::uint32_t x = 0; x < n; ++x)
      if ((std::popcount(x & pi[y]) & 1) ^ g[y]) f.set(x | (y << half), true);
  if (!scramble) return f;
  return apply_affine(f, AffineTransform::random(m, rng()));
}

}  // namespace bfnorm
