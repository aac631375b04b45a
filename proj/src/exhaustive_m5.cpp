#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <thread>

#include "bfnorm/search.hpp"

namespace bfnorm {

namespace {

constexpr int kVars = 5;
constexpr std::uint32_t kPoints = 32;
constexpr int kMonomials = 26;  // monomials of size >= 2 in five variables
constexpr std::uint64_t kFunctions = std::uint64_t{1} << kMonomials;
// Early-exit functions are also cross-checked at this stride.
constexpr std::uint64_t kSampleStride = std::uint64_t{1} << 12;

constexpr std::uint32_t kLowHalf32[5] = {0x55555555u, 0x33333333u, 0x0f0f0f0fu, 0x00ff00ffu, 0x0000ffffu};

std::uint32_t translate32(std::uint32_t tt, std::uint32_t w) {
  for (int k = 0; k < kVars; ++k) {
    if (!((w >> k) & 1)) continue;
    const unsigned s = 1u << k;
    tt = ((tt & kLowHalf32[k]) << s) | ((tt >> s) & kLowHalf32[k]);
  }
  return tt;
}

struct Verdict {
  int deg3_class;  // 0, 1, or 2 meaning ">= 2"
  bool deg2_zero;
  bool early_exit;
};

/*! Bit-sliced classifier for five-variable truth tables.

  For a 2-space W = {0, u, v, u^v}, the points a with a + W constant are the
  zeros of D_u | D_v | D_{u^v}.  Each constant coset contributes four points,
  so a pair of equal-valued constant cosets shows up as >= 8 points of one
  value (deg_3 = 0) and one of each value as points of both values
  (deg_3 <= 1).  Any constant coset at all means deg_2 = 0.
*/
class M5Kernel {
public:
  M5Kernel() {
    int n = 0;
    for (int w = 2; w <= kVars; ++w)
      for (std::uint32_t mask = 0; mask < kPoints; ++mask)
        if (std::popcount(mask) == w) masks_[n++] = mask;
    for (int b = 0; b < kMonomials; ++b) {
      std::uint32_t tt = 0;
      for (std::uint32_t x = 0; x < kPoints; ++x)
        if ((x & masks_[b]) == masks_[b]) tt |= 1u << x;
      mono_tt_[b] = tt;
      for (std::uint32_t w = 0; w < kPoints; ++w) mono_deriv_[b][w] = tt ^ translate32(tt, w);
    }
    for (const auto& v : enumerate_subspaces(kVars, 2)) {
      const auto b = v.basis();
      spaces_.push_back({b[0], b[1], b[0] ^ b[1]});
    }
  }

  std::uint32_t monomial_mask(int bit) const { return masks_[bit]; }

  static int degree_of(std::uint32_t coeffs) {
    if (coeffs >> 25) return 5;
    if (coeffs >> 20) return 4;
    if (coeffs >> 10) return 3;
    return coeffs ? 2 : 0;
  }

  std::uint32_t truth_table(std::uint32_t coeffs) const {
    std::uint32_t tt = 0;
    for (int b = 0; b < kMonomials; ++b)
      if ((coeffs >> b) & 1) tt ^= mono_tt_[b];
    return tt;
  }

  static void derivatives(std::uint32_t tt, std::uint32_t* d) {
    for (std::uint32_t w = 0; w < kPoints; ++w) d[w] = tt ^ translate32(tt, w);
  }

  void flip_monomial(int bit, std::uint32_t& tt, std::uint32_t* d) const {
    tt ^= mono_tt_[bit];
    for (std::uint32_t w = 0; w < kPoints; ++w) d[w] ^= mono_deriv_[bit][w];
  }

  Verdict classify(std::uint32_t tt, const std::uint32_t* d) const {
    bool weak = false;
    bool deg2_zero = false;
    for (const auto& s : spaces_) {
      const std::uint32_t constant = ~(d[s[0]] | d[s[1]] | d[s[2]]);
      if (!constant) continue;
      deg2_zero = true;
      const int ones = std::popcount(constant & tt);
      const int zeros = std::popcount(constant & ~tt);
      if (ones >= 8 || zeros >= 8) return {0, true, true};
      if (ones && zeros) weak = true;
    }
    return {weak ? 1 : 2, deg2_zero, false};
  }

private:
  std::uint32_t masks_[kMonomials] = {};
  std::uint32_t mono_tt_[kMonomials] = {};
  std::uint32_t mono_deriv_[kMonomials][kPoints] = {};
  std::vector<std::array<std::uint32_t, 3>> spaces_;
};

BoolFun from_word(std::uint32_t tt) {
  BoolFun f(kVars);
  f.words()[0] = tt;
  return f;
}

struct WorkerState {
  std::uint64_t full_scans = 0;
  std::uint64_t naive_verified = 0;
  std::uint64_t naive_mismatches = 0;
  std::uint64_t deg3_histogram[6][3] = {};
  std::uint64_t deg2_histogram[6][2] = {};
  // Largest exact r-degree seen per degree class, with the first (lowest
  // coefficient vector) function attaining it.
  int max_deg3[6] = {};
  int max_deg2[6] = {};
  std::uint32_t arg_deg3[6] = {};
  std::uint32_t arg_deg2[6] = {};
};

void record_max(int value, std::uint32_t coeffs, int& best, std::uint32_t& arg) {
  if (value > best || (value == best && value > 0 && coeffs < arg)) {
    best = value;
    arg = coeffs;
  }
}

void scan_range(const M5Kernel& kernel, const FlatTable& table3, const FlatTable& table2, std::uint64_t lo,
                std::uint64_t hi, WorkerState& st, std::atomic<std::uint64_t>& done,
                const std::function<void(std::uint64_t)>& tick) {
  if (lo >= hi) return;
  std::uint32_t coeffs = static_cast<std::uint32_t>(lo ^ (lo >> 1));
  std::uint32_t tt = kernel.truth_table(coeffs);
  std::uint32_t d[kPoints];
  M5Kernel::derivatives(tt, d);
  for (std::uint64_t i = lo;;) {
    const Verdict v = kernel.classify(tt, d);
    const int k = M5Kernel::degree_of(coeffs);
    ++st.deg3_histogram[k][v.deg3_class];
    ++st.deg2_histogram[k][v.deg2_zero ? 0 : 1];
    if (!v.early_exit) ++st.full_scans;
    if (!v.early_exit || i % kSampleStride == 0) {
      const BoolFun f = from_word(tt);
      const int d3 = r_degree(f, 3, table3);
      const int d2 = r_degree(f, 2, table2);
      ++st.naive_verified;
      const bool ok3 = v.deg3_class == 2 ? d3 >= 2 : d3 == v.deg3_class;
      const bool ok2 = v.deg2_zero ? d2 == 0 : d2 >= 1;
      if (!ok3 || !ok2) ++st.naive_mismatches;
      record_max(d3, coeffs, st.max_deg3[k], st.arg_deg3[k]);
      record_max(d2, coeffs, st.max_deg2[k], st.arg_deg2[k]);
    }
    if (++i == hi) break;
    const int bit = std::countr_zero(i);
    coeffs ^= 1u << bit;
    kernel.flip_monomial(bit, tt, d);
    if ((i & 0xfffff) == 0) {
      done.fetch_add(0x100000);
      if (tick) tick(done.load());
    }
  }
}

// First f + l (f in B(2,5,5) of degree k, l linear) with deg_3 exactly 1,
// confirmed by r_degree.
std::optional<BoolFun> find_weak_witness(const M5Kernel& kernel, const FlatTable& table3, int k) {
  constexpr std::uint32_t kMaxCandidates = 1u << 16;
  std::uint32_t tried = 0;
  for (std::uint32_t coeffs = 1; coeffs < kFunctions && tried < kMaxCandidates; ++coeffs) {
    if (M5Kernel::degree_of(coeffs) != k) continue;
    ++tried;
    const std::uint32_t base = kernel.truth_table(coeffs);
    for (std::uint32_t u = 1; u < kPoints; ++u) {
      std::uint32_t lin = 0;
      for (std::uint32_t x = 0; x < kPoints; ++x)
        if (std::popcount(x & u) & 1) lin |= 1u << x;
      const std::uint32_t tt = base ^ lin;
      std::uint32_t d[kPoints];
      M5Kernel::derivatives(tt, d);
      if (kernel.classify(tt, d).deg3_class != 1) continue;
      BoolFun f = from_word(tt);
      if (r_degree(f, 3, table3) == 1) return f;
    }
  }
  return std::nullopt;
}

BoolFun monomial_function(int k) {
  Anf a(kVars);
  a.set((1u << k) - 1, true);
  return anf_to_truth_table(a);
}

}  // namespace

ExhaustiveM5Result exhaustive_m5_rows(unsigned threads, const std::function<void(double)>& progress) {
  const auto start = std::chrono::steady_clock::now();
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  const M5Kernel kernel;
  const FlatTable table3 = build_flat_table(kVars, 3);
  const FlatTable table2 = build_flat_table(kVars, 2);

  std::vector<WorkerState> states(threads);
  std::atomic<std::uint64_t> done{0};
  std::mutex progress_mutex;
  auto tick = [&](std::uint64_t n) {
    if (!progress) return;
    std::lock_guard lock(progress_mutex);
    progress(static_cast<double>(n) / static_cast<double>(kFunctions));
  };
  {
    std::vector<std::thread> pool;
    const std::uint64_t chunk = (kFunctions + threads - 1) / threads;
    for (unsigned t = 0; t < threads; ++t) {
      const std::uint64_t lo = std::min(kFunctions, t * chunk);
      const std::uint64_t hi = std::min(kFunctions, lo + chunk);
      pool.emplace_back(scan_range, std::cref(kernel), std::cref(table3), std::cref(table2), lo, hi,
                        std::ref(states[t]), std::ref(done), std::cref(tick));
    }
    for (auto& th : pool) th.join();
  }

  ExhaustiveM5Result result;
  WorkerState total;
  for (const auto& st : states) {
    total.full_scans += st.full_scans;
    total.naive_verified += st.naive_verified;
    total.naive_mismatches += st.naive_mismatches;
    for (int k = 0; k < 6; ++k) {
      for (int c = 0; c < 3; ++c) total.deg3_histogram[k][c] += st.deg3_histogram[k][c];
      for (int c = 0; c < 2; ++c) total.deg2_histogram[k][c] += st.deg2_histogram[k][c];
      record_max(st.max_deg3[k], st.arg_deg3[k], total.max_deg3[k], total.arg_deg3[k]);
      record_max(st.max_deg2[k], st.arg_deg2[k], total.max_deg2[k], total.arg_deg2[k]);
    }
  }
  result.functions_scanned = kFunctions;
  result.full_scans = total.full_scans;
  result.naive_verified = total.naive_verified;
  result.naive_mismatches = total.naive_mismatches;
  std::copy(&total.deg3_histogram[0][0], &total.deg3_histogram[0][0] + 18, &result.deg3_histogram[0][0]);
  std::copy(&total.deg2_histogram[0][0], &total.deg2_histogram[0][0] + 12, &result.deg2_histogram[0][0]);

  // deg_3 >= 2 anywhere in B(2,5,5) (hence in B(5)).
  bool any_deg3_ge2 = false;
  bool any_deg2_ge1 = false;
  for (int k = 2; k <= 5; ++k) {
    any_deg3_ge2 |= total.deg3_histogram[k][2] > 0;
    any_deg2_ge1 |= total.deg2_histogram[k][1] > 0;
  }

  // Degree <= 1: the 64 affine functions, checked directly.
  int affine_max3 = 0, affine_max2 = 0;
  for (std::uint32_t u = 0; u < kPoints; ++u) {
    const BoolFun f = linear_function(kVars, u);
    affine_max3 = std::max(affine_max3, r_degree(f, 3, table3));
    affine_max2 = std::max(affine_max2, r_degree(f, 2, table2));
  }
  const std::string scope =
      "exhaustive over B(2,5,5) (2^26 functions), extended to B(5) by invariance of deg_3 >= 2 under affine shifts";

  for (int r : {3, 2}) {
    for (int k = 1; k <= 5; ++k) {
      DTableEntry e;
      e.m = kVars;
      e.r = r;
      e.k = k;
      e.degree_exactly_k = true;
      e.mode = EntryMode::Exact;
      if (k == 1) {
        e.functions_scanned = 2 * kPoints;
        e.value = r == 3 ? affine_max3 : affine_max2;
        e.witness = linear_function(kVars, 1);
        e.note = "all affine functions checked directly";
        result.entries.push_back(std::move(e));
        continue;
      }
      e.functions_scanned = 0;
      for (int c = 0; c < 3; ++c) e.functions_scanned += total.deg3_histogram[k][c];
      if (r == 3) {
        if (total.deg3_histogram[k][2]) {
          e.value = total.max_deg3[k];
          e.witness = from_word(kernel.truth_table(total.arg_deg3[k]));
          e.note = scope;
        } else if (auto w = find_weak_witness(kernel, table3, k)) {
          e.value = 1;
          e.witness = std::move(w);
          e.note = scope + "; witness of deg_3 = 1 found among affine shifts";
        } else {
          e.value = 0;
          e.mode = EntryMode::LowerBound;
          e.note = scope + "; no deg_3 = 1 witness found, value 0 not certified";
        }
      } else {
        if (!any_deg3_ge2) {
          // An affine restriction to a 3-flat is constant on a 2-subflat.
          e.value = 0;
          e.witness = monomial_function(k);
          e.note = scope + "; deg_3 <= 1 everywhere implies deg_2 = 0";
        } else {
          e.value = any_deg2_ge1 ? total.max_deg2[k] : 0;
          e.mode = EntryMode::LowerBound;
          e.note = "deg_3 >= 2 occurs, deg_2 not certified on all of B(5)";
        }
      }
      result.entries.push_back(std::move(e));
    }
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return result;
}

}  // namespace bfnorm
