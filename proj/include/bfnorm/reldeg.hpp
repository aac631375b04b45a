#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "bfnorm/core.hpp"
#include "bfnorm/subspace.hpp"

namespace bfnorm {

enum class NormalityStatus { Normal, WeaklyNormal, Abnormal };

std::string to_string(NormalityStatus status);

/*! \brief Verdict of a normality check at dimension r = ceil(m/2).

  min_rel_degree is deg_r(f).  The paired method only separates 0, 1 and
  ">= 2"; for an Abnormal verdict from that method the field holds the bound 2
  and min_rel_degree_exact is false.
*/
struct NormalityReport {
  NormalityStatus status = NormalityStatus::Abnormal;
  int r_used = 0;
  std::optional<AffineFlat> witness;
  std::optional<int> witness_degree;
  int min_rel_degree = 0;
  bool min_rel_degree_exact = true;
};

/// Normality dimension ceil(m/2).
inline int normality_dim(int m) { return (m + 1) / 2; }

/// v in V |-> f(rep + v), with y_i following the flat's basis order.
BoolFun restrict(const BoolFun& f, const AffineFlat& flat);
int rel_degree(const BoolFun& f, const AffineFlat& flat);

/// Gathers f over rep ^ offsets into one word (needs at most 64 offsets).
inline std::uint64_t gather_word(const BoolFun& f, std::uint32_t rep, std::span<const std::uint32_t> offsets) {
  const std::uint64_t* w = f.words().data();
  std::uint64_t out = 0;
  for (std::size_t j = 0; j < offsets.size(); ++j) {
    const std::uint32_t p = rep ^ offsets[j];
    out |= ((w[p >> 6] >> (p & 63)) & 1) << j;
  }
  return out;
}

struct RDegreeResult {
  int degree = 0;
  std::size_t space_index = 0;
  std::size_t coset_index = 0;
  std::uint64_t flats_scanned = 0;
};

/*! \brief deg_r(f): minimum restriction degree over every flat in the table.

  Stops as soon as a constant restriction is found.  The witness indices
  point at the first flat (in table order) attaining the minimum.
*/
RDegreeResult r_degree_scan(const BoolFun& f, const FlatTable& table);
int r_degree(const BoolFun& f, int r, const FlatTable& table);

NormalityReport classify_normality_naive(const BoolFun& f, const FlatTable& table_r);

/*! \brief Normality from pairs of constant cosets of (r-1)-spaces.

  An r-flat on which f is affine splits into two cosets of an (r-1)-space
  on each of which f is constant, and conversely.  Equal constants give a
  Normal verdict, distinct ones WeaklyNormal.
*/
NormalityReport classify_normality_paired(const BoolFun& f, const FlatTable& table_rm1);

/// Reference implementation of the paired method (direct window compares).
NormalityReport classify_normality_paired_gather(const BoolFun& f, const FlatTable& table_rm1);

/// Histograms of deg_r per requested dimension; row sums count the inputs.
struct RelDegDistribution {
  int m = 0;
  std::map<int, std::vector<std::uint64_t>> counts;
  std::uint64_t functions = 0;

  void add(int r, int value);
  void merge(const RelDegDistribution& other);
};

RelDegDistribution distribution(const std::vector<BoolFun>& functions, const std::vector<int>& dims,
                                FlatTableCache& tables);

}  // namespace bfnorm
