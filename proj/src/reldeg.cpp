#include "bfnorm/reldeg.hpp"

#include <algorithm>

namespace bfnorm {

namespace {

constexpr std::uint64_t kLowHalf[6] = {
    0x5555555555555555ULL, 0x3333333333333333ULL, 0x0f0f0f0f0f0f0f0fULL,
    0x00ff00ff00ff00ffULL, 0x0000ffff0000ffffULL, 0x00000000ffffffffULL,
};

// Largest m for which all 2^m derivatives are precomputed (2^{2m} bits).
constexpr int kDerivativeMaxVars = 10;

void check_table(const BoolFun& f, const FlatTable& table, int expected_r) {
  if (table.ambient_dim() != f.num_vars())
    throw Error("flat table is for m=" + std::to_string(table.ambient_dim()) + ", function has m=" +
                std::to_string(f.num_vars()));
  if (expected_r >= 0 && table.dim() != expected_r)
    throw Error("flat table has r=" + std::to_string(table.dim()) + ", expected r=" + std::to_string(expected_r));
}

int window_degree(const BoolFun& f, std::uint32_t rep, std::span<const std::uint32_t> offsets, int r) {
  if (r <= 6) return anf_word_degree(moebius_word(gather_word(f, rep, offsets), r));
  BoolFun g(r);
  for (std::size_t j = 0; j < offsets.size(); ++j)
    if (f.get(rep ^ offsets[j])) g.set(static_cast<std::uint32_t>(j), true);
  return degree(g);
}

// -1: not constant; otherwise the constant value.
int coset_constant(const BoolFun& f, std::uint32_t rep, std::span<const std::uint32_t> offsets) {
  if (offsets.size() <= 64) {
    const std::uint64_t w = gather_word(f, rep, offsets);
    const std::uint64_t full = offsets.size() == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << offsets.size()) - 1;
    if (w == 0) return 0;
    if (w == full) return 1;
    return -1;
  }
  const bool first = f.get(rep);
  for (auto o : offsets)
    if (f.get(rep ^ o) != first) return -1;
  return first;
}

// g(x) = f(x ^ w), on raw words.
void translate_words(std::span<const std::uint64_t> in, std::span<std::uint64_t> out, std::uint32_t w) {
  const std::size_t word_shift = w >> 6;
  for (std::size_t i = 0; i < in.size(); ++i) {
    std::uint64_t x = in[i ^ word_shift];
    for (int k = 0; k < 6; ++k) {
      if (!((w >> k) & 1)) continue;
      const unsigned s = 1u << k;
      x = ((x & kLowHalf[k]) << s) | ((x >> s) & kLowHalf[k]);
    }
    out[i] = x;
  }
}

/*! Builds the r-flat made of two cosets a + W and b + W and fills the
    report.  The witness degree is recomputed from the restriction. */
NormalityReport paired_report(const BoolFun& f, const FlatTable& table, std::size_t space, std::uint32_t a,
                              std::uint32_t b, NormalityStatus status) {
  auto basis = table.basis(space);
  std::vector<std::uint32_t> gens(basis.begin(), basis.end());
  gens.push_back(a ^ b);
  AffineFlat flat(LinearSubspace::span(f.num_vars(), gens), a);
  NormalityReport report;
  report.status = status;
  report.r_used = table.dim() + 1;
  report.witness_degree = rel_degree(f, flat);
  report.min_rel_degree = status == NormalityStatus::Normal ? 0 : 1;
  report.witness = std::move(flat);
  return report;
}

NormalityReport abnormal_report(int r) {
  NormalityReport report;
  report.status = NormalityStatus::Abnormal;
  report.r_used = r;
  report.min_rel_degree = 2;
  report.min_rel_degree_exact = false;
  return report;
}

struct PairChoice {
  bool found = false;
  std::uint32_t a = 0;
  std::uint32_t b = 0;
};

// Scans coset states in rep order.  `equal` selects the first two constant
// cosets with the same value; otherwise the first constant coset and the first
// later one with the other value.
template <class StateFn>
PairChoice choose_pair(std::span<const std::uint32_t> reps, StateFn state, bool equal) {
  std::optional<std::uint32_t> first_of[2];
  std::optional<std::uint32_t> first_any;
  int first_value = -1;
  for (auto rep : reps) {
    const int v = state(rep);
    if (v < 0) continue;
    if (equal) {
      if (first_of[v]) return {true, *first_of[v], rep};
      first_of[v] = rep;
    } else {
      if (!first_any) {
        first_any = rep;
        first_value = v;
      } else if (v != first_value) {
        return {true, *first_any, rep};
      }
    }
  }
  return {};
}

}  // namespace

std::string to_string(NormalityStatus status) {
  switch (status) {
    case NormalityStatus::Normal: return "Normal";
    case NormalityStatus::WeaklyNormal: return "WeaklyNormal";
    case NormalityStatus::Abnormal: return "Abnormal";
  }
  return "?";
}

BoolFun restrict(const BoolFun& f, const AffineFlat& flat) {
  if (flat.ambient_dim() != f.num_vars()) throw Error("flat and function dimensions differ");
  const auto pts = flat_points(flat);
  BoolFun g(flat.dim());
  for (std::size_t j = 0; j < pts.size(); ++j)
    if (f.get(pts[j])) g.set(static_cast<std::uint32_t>(j), true);
  return g;
}

int rel_degree(const BoolFun& f, const AffineFlat& flat) { return degree(restrict(f, flat)); }

RDegreeResult r_degree_scan(const BoolFun& f, const FlatTable& table) {
  check_table(f, table, -1);
  const int r = table.dim();
  RDegreeResult best;
  best.degree = r + 1;
  for (std::size_t i = 0; i < table.space_count(); ++i) {
    const auto offsets = table.offsets(i);
    const auto reps = table.reps(i);
    for (std::size_t j = 0; j < reps.size(); ++j) {
      ++best.flats_scanned;
      const int d = window_degree(f, reps[j], offsets, r);
      if (d < best.degree) {
        best.degree = d;
        best.space_index = i;
        best.coset_index = j;
        if (d == 0) return best;
      }
    }
  }
  return best;
}

int r_degree(const BoolFun& f, int r, const FlatTable& table) {
  check_table(f, table, r);
  return r_degree_scan(f, table).degree;
}

NormalityReport classify_normality_naive(const BoolFun& f, const FlatTable& table_r) {
  const int r = normality_dim(f.num_vars());
  check_table(f, table_r, r);
  const auto scan = r_degree_scan(f, table_r);
  NormalityReport report;
  report.r_used = r;
  report.min_rel_degree = scan.degree;
  if (scan.degree >= 2) {
    report.status = NormalityStatus::Abnormal;
    return report;
  }
  report.status = scan.degree == 0 ? NormalityStatus::Normal : NormalityStatus::WeaklyNormal;
  report.witness = table_r.flat(scan.space_index, scan.coset_index);
  report.witness_degree = scan.degree;
  return report;
}

NormalityReport classify_normality_paired_gather(const BoolFun& f, const FlatTable& table_rm1) {
  const int r = normality_dim(f.num_vars());
  check_table(f, table_rm1, r - 1);
  std::optional<std::size_t> weak_space;
  for (std::size_t i = 0; i < table_rm1.space_count(); ++i) {
    const auto offsets = table_rm1.offsets(i);
    int count[2] = {0, 0};
    for (auto rep : table_rm1.reps(i)) {
      const int v = coset_constant(f, rep, offsets);
      if (v >= 0) ++count[v];
    }
    if (count[0] >= 2 || count[1] >= 2) {
      auto state = [&](std::uint32_t rep) { return coset_constant(f, rep, offsets); };
      const auto pair = choose_pair(table_rm1.reps(i), state, true);
      return paired_report(f, table_rm1, i, pair.a, pair.b, NormalityStatus::Normal);
    }
    if (!weak_space && count[0] == 1 && count[1] == 1) weak_space = i;
  }
  if (!weak_space) return abnormal_report(r);
  const auto offsets = table_rm1.offsets(*weak_space);
  auto state = [&](std::uint32_t rep) { return coset_constant(f, rep, offsets); };
  const auto pair = choose_pair(table_rm1.reps(*weak_space), state, false);
  return paired_report(f, table_rm1, *weak_space, pair.a, pair.b, NormalityStatus::WeaklyNormal);
}

NormalityReport classify_normality_paired(const BoolFun& f, const FlatTable& table_rm1) {
  const int m = f.num_vars();
  if (m > kDerivativeMaxVars) return classify_normality_paired_gather(f, table_rm1);
  const int r = normality_dim(m);
  check_table(f, table_rm1, r - 1);

  // D_w(x) = f(x) + f(x + w).  f is constant on a + W exactly when D_w(a) = 0
  // for every nonzero w in W, so the union of constant cosets of W is the
  // complement of OR_w D_w.
  const std::size_t nw = f.words().size();
  const std::size_t points = f.num_bits();
  std::vector<std::uint64_t> derivatives(points * nw);
  for (std::uint32_t w = 1; w < points; ++w) {
    std::span<std::uint64_t> d(derivatives.data() + w * nw, nw);
    translate_words(f.words(), d, w);
    for (std::size_t k = 0; k < nw; ++k) d[k] ^= f.words()[k];
  }
  const std::uint64_t valid = f.padding_mask();
  const std::uint64_t coset_size = table_rm1.points_per_flat();
  std::vector<std::uint64_t> constant(nw);
  std::optional<std::size_t> weak_space;

  auto constant_mask = [&](std::size_t i) {
    std::fill(constant.begin(), constant.end(), 0);
    const auto offsets = table_rm1.offsets(i);
    for (std::size_t j = 1; j < offsets.size(); ++j) {
      const std::uint64_t* d = derivatives.data() + offsets[j] * nw;
      for (std::size_t k = 0; k < nw; ++k) constant[k] |= d[k];
    }
    for (auto& c : constant) c = ~c;
    constant.back() &= valid;
  };
  auto state = [&](std::uint32_t rep) {
    if (!((constant[rep >> 6] >> (rep & 63)) & 1)) return -1;
    return static_cast<int>(f.get(rep));
  };

  for (std::size_t i = 0; i < table_rm1.space_count(); ++i) {
    constant_mask(i);
    std::uint64_t ones = 0, zeros = 0;
    for (std::size_t k = 0; k < nw; ++k) {
      ones += static_cast<std::uint64_t>(std::popcount(constant[k] & f.words()[k]));
      zeros += static_cast<std::uint64_t>(std::popcount(constant[k] & ~f.words()[k]));
    }
    if (ones >= 2 * coset_size || zeros >= 2 * coset_size) {
      const auto pair = choose_pair(table_rm1.reps(i), state, true);
      return paired_report(f, table_rm1, i, pair.a, pair.b, NormalityStatus::Normal);
    }
    if (!weak_space && ones && zeros) weak_space = i;
  }
  if (!weak_space) return abnormal_report(r);
  constant_mask(*weak_space);
  const auto pair = choose_pair(table_rm1.reps(*weak_space), state, false);
  return paired_report(f, table_rm1, *weak_space, pair.a, pair.b, NormalityStatus::WeaklyNormal);
}

void RelDegDistribution::add(int r, int value) {
  auto& row = counts[r];
  if (row.size() <= static_cast<std::size_t>(value)) row.resize(value + 1, 0);
  ++row[value];
}

void RelDegDistribution::merge(const RelDegDistribution& other) {
  if (functions && other.functions && m != other.m) throw Error("cannot merge distributions with different m");
  if (other.functions) m = other.m;
  functions += other.functions;
  for (const auto& [r, row] : other.counts) {
    auto& mine = counts[r];
    if (mine.size() < row.size()) mine.resize(row.size(), 0);
    for (std::size_t d = 0; d < row.size(); ++d) mine[d] += row[d];
  }
}

RelDegDistribution distribution(const std::vector<BoolFun>& functions, const std::vector<int>& dims,
                                FlatTableCache& tables) {
  RelDegDistribution out;
  for (int r : dims) out.counts[r];
  for (const auto& f : functions) {
    if (out.functions == 0)
      out.m = f.num_vars();
    else if (f.num_vars() != out.m)
      throw Error("distribution input mixes m=" + std::to_string(out.m) + " and m=" + std::to_string(f.num_vars()));
    for (int r : dims) out.add(r, r_degree(f, r, *tables.get(f.num_vars(), r)));
    ++out.functions;
  }
  return out;
}

}  // namespace bfnorm
