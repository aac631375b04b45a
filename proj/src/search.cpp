#include "bfnorm/search.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace bfnorm {

namespace {

constexpr std::array<ClassCount, 8> kClassCounts = {{
    {1, 5, 5, 206},
    {1, 6, 6, 7'888'299},
    {1, 3, 7, 1'890},
    {4, 7, 7, 68'443},
    {2, 3, 8, 20'748},
    {4, 4, 8, 999},
    {2, 4, 7, 118'140'881'980},
    {5, 7, 7, 12},
}};

unsigned __int128 checked_mul(unsigned __int128 a, unsigned __int128 b) {
  unsigned __int128 out;
  if (__builtin_mul_overflow(a, b, &out)) throw Error("work factor overflows 128 bits");
  return out;
}

}  // namespace

std::string to_string(EntryMode mode) { return mode == EntryMode::Exact ? "Exact" : "LowerBound"; }

std::span<const ClassCount> known_class_counts() { return kClassCounts; }

std::optional<std::uint64_t> known_class_count(int s, int t, int m) {
  for (const auto& c : kClassCounts)
    if (c.s == s && c.t == t && c.m == m) return c.count;
  return std::nullopt;
}

std::string to_decimal(unsigned __int128 v) {
  if (v == 0) return "0";
  std::string out;
  while (v) {
    out += static_cast<char>('0' + static_cast<int>(v % 10));
    v /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

std::string WorkFactor::value_string() const { return to_decimal(value); }

WorkFactor work_factor(int r, int s, int t, int m, std::uint64_t class_count) {
  if (class_count == 0) throw Error("class count must be positive");
  if (m < 1 || m > kMaxVars || r < 0 || r > m) throw Error("work factor requires 0 <= r <= m <= 16");
  WorkFactor w{r, s, t, m, class_count, 0, 0.0};
  unsigned __int128 v = class_count;
  v = checked_mul(v, static_cast<unsigned __int128>(1) << (m - r));
  v = checked_mul(v, gaussian_binomial(m, r));
  v = checked_mul(v, static_cast<unsigned __int128>(r) << r);
  w.value = v;
  w.log2 = std::log2(static_cast<long double>(v));
  return w;
}

DTableEntry random_lower_bound(int m, int r, DegreeBand band, std::uint64_t trials, std::uint64_t seed,
                               const FlatTable& table, std::span<const BoolFun> bases, bool degree_exactly_t) {
  if (trials < 1) throw Error("random search needs at least one trial");
  band.validate(m);
  if (table.ambient_dim() != m || table.dim() != r) throw Error("flat table does not match (m, r)");
  for (const auto& b : bases)
    if (b.num_vars() != m) throw Error("base function has the wrong number of variables");

  DTableEntry entry;
  entry.m = m;
  entry.r = r;
  entry.k = band.t;
  entry.degree_exactly_k = degree_exactly_t;
  entry.mode = EntryMode::LowerBound;
  entry.seed = seed;
  entry.value = -1;
  std::uint64_t counted = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    BoolFun f = random_in_band(m, band, mix_seed(seed ^ mix_seed(i)));
    if (!bases.empty()) f ^= bases[i % bases.size()];
    if (degree_exactly_t && degree(f) != band.t) continue;
    ++counted;
    const int d = r_degree(f, r, table);
    if (d > entry.value) {
      entry.value = d;
      entry.witness = f;
    }
  }
  entry.functions_scanned = trials;
  if (entry.value < 0) entry.value = 0;
  entry.note = "random search over B(" + std::to_string(band.s) + "," + std::to_string(band.t) + "," +
               std::to_string(m) + ")" + (bases.empty() ? "" : " shifted by " + std::to_string(bases.size()) + " base functions") +
               ", " + std::to_string(counted) + " of " + std::to_string(trials) + " samples counted";
  return entry;
}

}  // namespace bfnorm
