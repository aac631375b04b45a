#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "bfnorm/core.hpp"

namespace bfnorm {

/// Default limit on the number of subspaces an enumeration may produce.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t{1} << 26;

/*! \brief Number of r-dimensional subspaces of F_2^m.

  Evaluates prod_{i<r} (2^m - 2^i) / (2^r - 2^i) with exact division after
  every factor.  Throws when r > m or the result leaves 64-bit range.
*/
std::uint64_t gaussian_binomial(int m, int r);

/*! \brief Linear subspace in reduced row echelon form.

  Each basis vector's pivot is its most significant set bit, pivots increase
  along the basis, and every pivot column is zero in the other vectors.  This
  is the unique representative of the subspace.
*/
class LinearSubspace {
public:
  LinearSubspace(int m, std::vector<std::uint32_t> rref_basis);

  /// Canonical basis of the span of arbitrary generators.
  static LinearSubspace span(int m, std::span<const std::uint32_t> generators);

  int ambient_dim() const { return m_; }
  int dim() const { return static_cast<int>(basis_.size()); }
  std::span<const std::uint32_t> basis() const { return basis_; }
  std::uint32_t pivot_mask() const { return pivots_; }

  /// Clears every pivot coordinate of v; the result is the coset representative.
  std::uint32_t reduce(std::uint32_t v) const {
    for (auto b : basis_)
      if (v & (std::uint32_t{1} << (std::bit_width(b) - 1))) v ^= b;
    return v;
  }
  bool contains(std::uint32_t v) const { return reduce(v) == 0; }

  /// Point j = XOR of basis_i over set bits i of j.
  std::vector<std::uint32_t> points() const;

  friend bool operator==(const LinearSubspace&, const LinearSubspace&) = default;
  friend auto operator<=>(const LinearSubspace& a, const LinearSubspace& b) {
    return std::pair(a.m_, a.basis_) <=> std::pair(b.m_, b.basis_);
  }

private:
  int m_;
  std::vector<std::uint32_t> basis_;
  std::uint32_t pivots_ = 0;
};

/// Coset rep + V with rep reduced modulo V.
class AffineFlat {
public:
  AffineFlat(LinearSubspace subspace, std::uint32_t rep)
      : subspace_(std::move(subspace)), rep_(subspace_.reduce(rep)) {}

  const LinearSubspace& subspace() const { return subspace_; }
  std::uint32_t rep() const { return rep_; }
  int dim() const { return subspace_.dim(); }
  int ambient_dim() const { return subspace_.ambient_dim(); }
  bool contains(std::uint32_t x) const { return subspace_.reduce(x) == rep_; }

  friend bool operator==(const AffineFlat&, const AffineFlat&) = default;

private:
  LinearSubspace subspace_;
  std::uint32_t rep_;
};

/// Ordered points rep ^ sum_{i in j} basis_i, j = 0..2^r-1.
std::vector<std::uint32_t> flat_points(const AffineFlat& flat);

/// The 2^{m-r} cosets of V in increasing order of reduced representative.
std::vector<AffineFlat> cosets(const LinearSubspace& v);
/// Reduced coset representatives only, same order as cosets().
std::vector<std::uint32_t> coset_reps(const LinearSubspace& v);

/*! \brief Streams all r-subspaces of F_2^m in canonical order.

  Order: pivot sets in lexicographic order, then free entries by an
  increasing counter whose low bits fill the lowest-pivot vector first.
*/
class SubspaceEnumerator {
public:
  SubspaceEnumerator(int m, int r, std::uint64_t cap = kDefaultEnumerationCap);

  std::optional<LinearSubspace> next();
  std::uint64_t total() const { return total_; }

private:
  bool advance_pivots();
  void reset_free();

  int m_;
  int r_;
  std::uint64_t total_;
  std::vector<int> pivots_;
  std::vector<int> free_bits_;  // free positions per vector, concatenated
  std::vector<int> free_owner_;
  std::uint64_t counter_ = 0;
  std::uint64_t counter_end_ = 0;
  bool done_ = false;
};

std::vector<LinearSubspace> enumerate_subspaces(int m, int r, std::uint64_t cap = kDefaultEnumerationCap);

/*! \brief All r-spaces of F_2^m with their point offsets and coset reps.

  Storage is flat: space i owns basis[i*r, (i+1)*r), offsets[i*2^r, ...) and
  reps[i*2^{m-r}, ...).  Immutable after construction.
*/
class FlatTable {
public:
  FlatTable(int m, int r, std::vector<std::uint32_t> bases, std::vector<std::uint32_t> reps);

  int ambient_dim() const { return m_; }
  int dim() const { return r_; }
  std::size_t space_count() const { return space_count_; }
  std::size_t points_per_flat() const { return std::size_t{1} << r_; }
  std::size_t cosets_per_space() const { return std::size_t{1} << (m_ - r_); }
  std::uint64_t flat_count() const { return space_count_ * cosets_per_space(); }

  std::span<const std::uint32_t> basis(std::size_t i) const {
    return {bases_.data() + i * r_, static_cast<std::size_t>(r_)};
  }
  std::span<const std::uint32_t> offsets(std::size_t i) const {
    return {offsets_.data() + i * points_per_flat(), points_per_flat()};
  }
  std::span<const std::uint32_t> reps(std::size_t i) const {
    return {reps_.data() + i * cosets_per_space(), cosets_per_space()};
  }
  LinearSubspace space(std::size_t i) const;
  AffineFlat flat(std::size_t space_index, std::size_t coset_index) const;

  std::span<const std::uint32_t> raw_bases() const { return bases_; }
  std::span<const std::uint32_t> raw_reps() const { return reps_; }

  friend bool operator==(const FlatTable& a, const FlatTable& b) {
    return a.m_ == b.m_ && a.r_ == b.r_ && a.bases_ == b.bases_ && a.reps_ == b.reps_ &&
           a.offsets_ == b.offsets_;
  }

private:
  int m_;
  int r_;
  std::size_t space_count_;
  std::vector<std::uint32_t> bases_;
  std::vector<std::uint32_t> offsets_;
  std::vector<std::uint32_t> reps_;
};

FlatTable build_flat_table(int m, int r, std::uint64_t cap = kDefaultEnumerationCap);

/// Binary "BFLT" format, version 1, little-endian.
void save_flat_table(const FlatTable& table, const std::filesystem::path& path);
FlatTable load_flat_table(const std::filesystem::path& path);

/*! \brief Shared, lazily built flat tables.

  When a directory is configured, tables are loaded from
  `flats_m<m>_r<r>.bflt` there if present.  Thread-safe.
*/
class FlatTableCache {
public:
  explicit FlatTableCache(std::optional<std::filesystem::path> directory = std::nullopt)
      : directory_(std::move(directory)) {}

  std::shared_ptr<const FlatTable> get(int m, int r);
  void insert(std::shared_ptr<const FlatTable> table);

  static std::string file_name(int m, int r);

private:
  std::optional<std::filesystem::path> directory_;
  std::mutex mutex_;
  std::map<std::pair<int, int>, std::shared_ptr<const FlatTable>> tables_;
};

}  // namespace bfnorm
