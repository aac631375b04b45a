#include "bfnorm/core.hpp"

#include <algorithm>
#include <random>

namespace bfnorm {

namespace {

constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

// Indices whose popcount is at least d, for d = 0..6.
constexpr std::uint64_t weight_at_least_mask(int d) {
  std::uint64_t mask = 0;
  for (int i = 0; i < 64; ++i)
    if (std::popcount(static_cast<unsigned>(i)) >= d) mask |= std::uint64_t{1} << i;
  return mask;
}

constexpr std::uint64_t kWeightAtLeast[7] = {
    weight_at_least_mask(0), weight_at_least_mask(1), weight_at_least_mask(2),
    weight_at_least_mask(3), weight_at_least_mask(4), weight_at_least_mask(5),
    weight_at_least_mask(6),
};

template <class Table>
int max_weight_index(const Table& t) {
  int best = 0;
  const auto words = t.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    if (!words[w]) continue;
    const int high = std::popcount(static_cast<std::uint64_t>(w));
    const int low = anf_word_degree(words[w]);
    best = std::max(best, high + low);
  }
  return best;
}

}  // namespace

void DegreeBand::validate(int m) const {
  if (s < 0 || t < 0 || s > m || t > m)
    throw Error("degree band " + std::to_string(s) + ":" + std::to_string(t) +
                " out of range for m=" + std::to_string(m));
}

std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t moebius_word(std::uint64_t word, int r) {
  const int steps = std::min(r, 6);
  for (int i = 0; i < steps; ++i) word ^= (word & kLowHalf[i]) << (1u << i);
  return word;
}

int anf_word_degree(std::uint64_t anf) {
  int d = 0;
  while (d < 6 && (anf & kWeightAtLeast[d + 1])) ++d;
  return d;
}

void moebius_in_place(std::span<std::uint64_t> words, int m) {
  for (auto& w : words) w = moebius_word(w, m);
  for (std::size_t stride = 1; stride < words.size(); stride <<= 1)
    for (std::size_t base = 0; base < words.size(); base += 2 * stride)
      for (std::size_t j = base; j < base + stride; ++j) words[j + stride] ^= words[j];
}

BoolFun anf_to_truth_table(const Anf& a) {
  BoolFun f(a.num_vars());
  std::copy(a.words().begin(), a.words().end(), f.words().begin());
  moebius_in_place(f.words(), f.num_vars());
  return f;
}

Anf truth_table_to_anf(const BoolFun& f) {
  Anf a(f.num_vars());
  std::copy(f.words().begin(), f.words().end(), a.words().begin());
  moebius_in_place(a.words(), a.num_vars());
  return a;
}

int degree(const Anf& a) { return max_weight_index(a); }
int degree(const BoolFun& f) { return degree(truth_table_to_anf(f)); }

int valuation(const Anf& a) {
  if (a.is_zero()) throw Error("valuation undefined for null function");
  int best = a.num_vars();
  for (std::uint32_t i = 0; i < a.num_bits(); ++i)
    if (a.get(i)) best = std::min(best, std::popcount(i));
  return best;
}
int valuation(const BoolFun& f) { return valuation(truth_table_to_anf(f)); }

bool evaluate(const Anf& a, std::uint32_t x) {
  bool value = false;
  // Walk all submasks of x.
  for (std::uint32_t s = x;; s = (s - 1) & x) {
    value ^= a.get(s);
    if (s == 0) break;
  }
  return value;
}

Anf random_anf_in_band(int m, DegreeBand band, std::uint64_t seed) {
  band.validate(m);
  Anf a(m);
  if (band.is_zero_space()) return a;
  std::mt19937_64 rng(seed);
  std::uint64_t pool = 0;
  int left = 0;
  for (std::uint32_t mask = 0; mask < a.num_bits(); ++mask) {
    if (!band.contains_size(std::popcount(mask))) continue;
    if (left == 0) {
      pool = rng();
      left = 64;
    }
    a.set(mask, pool & 1);
    pool >>= 1;
    --left;
  }
  return a;
}

BoolFun random_in_band(int m, DegreeBand band, std::uint64_t seed) {
  return anf_to_truth_table(random_anf_in_band(m, band, seed));
}

int gf2_rank(std::span<const std::uint32_t> vectors) {
  std::uint32_t by_lead[32] = {};
  int rank = 0;
  for (std::uint32_t v : vectors) {
    while (v) {
      const int lead = std::bit_width(v) - 1;
      if (!by_lead[lead]) {
        by_lead[lead] = v;
        ++rank;
        break;
      }
      v ^= by_lead[lead];
    }
  }
  return rank;
}

AffineTransform AffineTransform::identity(int m) {
  AffineTransform g;
  g.m = m;
  g.columns.resize(m);
  for (int j = 0; j < m; ++j) g.columns[j] = std::uint32_t{1} << j;
  return g;
}

AffineTransform AffineTransform::random(int m, std::uint64_t seed, bool with_output_affine) {
  if (m < 1 || m > kMaxVars) throw Error("invalid variable count for affine transform");
  std::mt19937_64 rng(seed);
  const std::uint32_t full = (std::uint32_t{1} << m) - 1;
  AffineTransform g;
  g.m = m;
  g.columns.resize(m);
  do {
    for (auto& c : g.columns) c = static_cast<std::uint32_t>(rng()) & full;
  } while (!g.is_invertible());
  g.translation = static_cast<std::uint32_t>(rng()) & full;
  if (with_output_affine) {
    g.output_linear = static_cast<std::uint32_t>(rng()) & full;
    g.output_constant = rng() & 1;
  }
  return g;
}

std::uint32_t AffineTransform::map_point(std::uint32_t x) const {
  std::uint32_t y = translation;
  for (int j = 0; j < m; ++j)
    if ((x >> j) & 1) y ^= columns[j];
  return y;
}

bool AffineTransform::is_invertible() const {
  return static_cast<int>(columns.size()) == m && gf2_rank(columns) == m;
}

AffineTransform AffineTransform::compose(const AffineTransform& first, const AffineTransform& second) {
  if (first.m != second.m) throw Error("affine transforms act on different dimensions");
  // h1(x) = f(A1 x + b1) + c1.x + d1, h2(x) = h1(A2 x + b2) + c2.x + d2.
  const int m = first.m;
  AffineTransform g;
  g.m = m;
  g.columns.resize(m);
  auto linear1 = [&](std::uint32_t x) { return first.map_point(x) ^ first.translation; };
  for (int j = 0; j < m; ++j) g.columns[j] = linear1(second.columns[j]);
  g.translation = first.map_point(second.translation);
  // c = A2^T c1 + c2: bit j is c1 . (column j of A2).
  std::uint32_t c = second.output_linear;
  for (int j = 0; j < m; ++j)
    if (std::popcount(first.output_linear & second.columns[j]) & 1) c ^= std::uint32_t{1} << j;
  g.output_linear = c;
  g.output_constant = first.output_constant ^ second.output_constant ^
                      (std::popcount(first.output_linear & second.translation) & 1);
  return g;
}

BoolFun apply_affine(const BoolFun& f, const AffineTransform& g) {
  if (g.m != f.num_vars()) throw Error("affine transform dimension does not match function");
  if (!g.is_invertible()) throw Error("affine transform matrix is singular");
  BoolFun out(f.num_vars());
  for (std::uint32_t x = 0; x < f.num_bits(); ++x) {
    const bool v = f.get(g.map_point(x)) ^ (std::popcount(g.output_linear & x) & 1) ^ g.output_constant;
    if (v) out.set(x, true);
  }
  return out;
}

BoolFun permute_variables(const BoolFun& f, std::span<const int> perm) {
  const int m = f.num_vars();
  if (static_cast<int>(perm.size()) != m)
    throw Error("permutation must list exactly " + std::to_string(m) + " variables");
  std::vector<bool> seen(m, false);
  for (int p : perm) {
    if (p < 1 || p > m || seen[p - 1]) throw Error("invalid variable permutation");
    seen[p - 1] = true;
  }
  BoolFun out(m);
  for (std::uint32_t x = 0; x < f.num_bits(); ++x) {
    if (!f.get(x)) continue;
    std::uint32_t y = 0;
    for (int i = 0; i < m; ++i)
      if ((x >> i) & 1) y |= std::uint32_t{1} << (perm[i] - 1);
    out.set(y, true);
  }
  return out;
}

BoolFun linear_function(int m, std::uint32_t u) {
  BoolFun f(m);
  for (std::uint32_t x = 0; x < f.num_bits(); ++x)
    if (std::popcount(u & x) & 1) f.set(x, true);
  return f;
}

}  // namespace bfnorm
