#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "bfnorm/core.hpp"
#include "bfnorm/reldeg.hpp"
#include "bfnorm/subspace.hpp"

namespace bfnorm {

enum class EntryMode { Exact, LowerBound };

std::string to_string(EntryMode mode);

/*! \brief One cell of a D_r(k, m) table.

  With `degree_exactly_k` the cell is the D^dagger variant (functions of degree
  exactly k); otherwise degree at most k.
*/
struct DTableEntry {
  int m = 0;
  int r = 0;
  int k = 0;
  bool degree_exactly_k = true;
  EntryMode mode = EntryMode::LowerBound;
  int value = 0;
  std::optional<BoolFun> witness;
  std::uint64_t functions_scanned = 0;
  std::optional<std::uint64_t> seed;
  std::string note;
};

/// Class counts #B~(s,t,m) of AGL(m,2)-representatives known from the literature.
struct ClassCount {
  int s;
  int t;
  int m;
  std::uint64_t count;
};

std::span<const ClassCount> known_class_counts();
std::optional<std::uint64_t> known_class_count(int s, int t, int m);

/// W(r,s,t,m) = N * 2^{m-r} * [m, r] * r * 2^r.
struct WorkFactor {
  int r = 0, s = 0, t = 0, m = 0;
  std::uint64_t class_count = 0;
  unsigned __int128 value = 0;
  double log2 = 0.0;

  std::string value_string() const;
};

WorkFactor work_factor(int r, int s, int t, int m, std::uint64_t class_count);

std::string to_decimal(unsigned __int128 v);

/// Outcome of the exhaustive m = 5 scan.
struct ExhaustiveM5Result {
  std::vector<DTableEntry> entries;  // r = 3 then r = 2, k = 1..5
  std::uint64_t functions_scanned = 0;
  /// Functions of B(2,5,5) that needed the full 155-space pass.
  std::uint64_t full_scans = 0;
  std::uint64_t naive_verified = 0;
  std::uint64_t naive_mismatches = 0;
  /// [k][c]: functions of degree k whose 3-degree class is c (0, 1, >=2).
  std::uint64_t deg3_histogram[6][3] = {};
  /// [k][c]: functions of degree k with 2-degree 0 or >= 1.
  std::uint64_t deg2_histogram[6][2] = {};
  double seconds = 0.0;
};

/*! \brief Exhaustive D^dagger_r(k, 5) for r = 2, 3.

  Enumerates B(2,5,5) (2^26 functions) in Gray-code order.  The predicate
  deg_3 >= 2 is invariant under adding affine functions, so the scan covers
  all of B(5) for the maximum; witnesses of value 1 are searched separately
  among affine shifts.  Every function that defeats the early exit is
  re-checked with r_degree over explicit flat tables.
*/
ExhaustiveM5Result exhaustive_m5_rows(unsigned threads = 0,
                                      const std::function<void(double)>& progress = {});

/*! \brief Randomized lower bound for D_r(t, m) over B(s, t, m).

  Trial i samples random_in_band with a seed derived from (seed, i) and, when
  `bases` is nonempty, adds bases[i % bases.size()].  With
  `degree_exactly_t` only samples of degree exactly t count.
*/
DTableEntry random_lower_bound(int m, int r, DegreeBand band, std::uint64_t trials, std::uint64_t seed,
                               const FlatTable& table, std::span<const BoolFun> bases = {},
                               bool degree_exactly_t = false);

enum class InputFormat { Anf, Hex };

struct ScanOptions {
  InputFormat format = InputFormat::Anf;
  int m = 0;
  std::vector<int> dims;
  std::vector<int> permutation;  // empty = identity, else one-based
  unsigned threads = 1;
  bool classify = true;
};

struct FunctionRecord {
  std::string id;
  int m = 0;
  int degree = 0;
  std::optional<NormalityReport> report;
  std::map<int, int> rel_degrees;
};

/*! \brief Streams a function file and classifies every entry.

  One function per line; blank lines and lines starting with '#' are
  skipped.  An optional "name:" prefix sets the record id, otherwise the
  line number is used.  Records are delivered to `sink` in input order.
*/
RelDegDistribution scan_file(const std::filesystem::path& path, const ScanOptions& options, FlatTableCache& tables,
                             const std::function<void(const FunctionRecord&)>& sink);
RelDegDistribution scan_stream(std::istream& in, const ScanOptions& options, FlatTableCache& tables,
                               const std::function<void(const FunctionRecord&)>& sink);

FunctionRecord analyze_function(const BoolFun& f, std::string id, const ScanOptions& options, FlatTableCache& tables);

}  // namespace bfnorm
