#include <gtest/gtest.h>

#include <boost/multiprecision/cpp_int.hpp>
#include <cmath>
#include <random>
#include <sstream>

#include "bfnorm/search.hpp"
#include "bfnorm/spectra.hpp"
#include "fixtures.hpp"

using namespace bfnorm;
using boost::multiprecision::cpp_int;
using bfnorm::testing::fn;

namespace {

// [m, r] by counting ordered bases, independent of the library's pairing trick.
cpp_int subspace_count(int m, int r) {
  cpp_int num = 1, den = 1;
  for (int i = 0; i < r; ++i) {
    num *= (cpp_int(1) << m) - (cpp_int(1) << i);
    den *= (cpp_int(1) << r) - (cpp_int(1) << i);
  }
  return num / den;
}

cpp_int work_oracle(int r, int m, std::uint64_t n) {
  return cpp_int(n) * (cpp_int(1) << (m - r)) * subspace_count(m, r) * r * (cpp_int(1) << r);
}

}  // namespace

TEST(WorkFactor, SixVariableQuadrics) {
  const auto w = work_factor(4, 1, 6, 6, 7888299);
  const cpp_int expected = cpp_int(7888299) * 4 * 651 * 64;
  EXPECT_EQ(cpp_int(w.value_string()), expected);
  EXPECT_EQ(w.value_string(), "1314632358144");
  EXPECT_GE(w.log2, 40.0);
  EXPECT_LE(w.log2, 40.5);
}

TEST(WorkFactor, MatchesBigIntegerForEveryKnownSpace) {
  for (const auto& c : known_class_counts())
    for (int r = 0; r <= c.m; ++r) {
      const auto w = work_factor(r, c.s, c.t, c.m, c.count);
      const cpp_int expected = work_oracle(r, c.m, c.count);
      ASSERT_EQ(cpp_int(w.value_string()), expected) << c.s << "," << c.t << "," << c.m << " r=" << r;
      if (expected > 0) ASSERT_NEAR(w.log2, std::log2(expected.convert_to<double>()), 1e-9);
    }
}

TEST(WorkFactor, KnownCounts) {
  EXPECT_EQ(known_class_count(2, 3, 8), 20748u);
  EXPECT_EQ(known_class_count(1, 6, 6), 7888299u);
  EXPECT_FALSE(known_class_count(3, 3, 9));
}

TEST(WorkFactor, FullSpaceFlat) {
  for (int m = 1; m <= 16; ++m) {
    const auto w = work_factor(m, 1, m, m, 5);
    EXPECT_EQ(cpp_int(w.value_string()), cpp_int(5) * m * (cpp_int(1) << m));
  }
}

TEST(WorkFactor, Errors) {
  EXPECT_THROW(work_factor(3, 1, 6, 6, 0), Error);
  EXPECT_THROW(work_factor(7, 1, 6, 6, 1), Error);
  EXPECT_THROW(work_factor(8, 1, 16, 16, UINT64_MAX), Error);
}

TEST(RandomLowerBound, QuadricsOnFiveVariables) {
  const FlatTable t = build_flat_table(5, 3);
  const auto e = random_lower_bound(5, 3, {2, 2}, 10000, 1, t);
  EXPECT_EQ(e.mode, EntryMode::LowerBound);
  EXPECT_GE(e.value, 1);
  EXPECT_LE(e.value, 1);
  EXPECT_EQ(e.functions_scanned, 10000u);
  EXPECT_EQ(e.seed, 1u);
  ASSERT_TRUE(e.witness);
  EXPECT_LE(degree(*e.witness), 2);
  EXPECT_EQ(r_degree(*e.witness, 3, t), e.value);
}

TEST(RandomLowerBound, Deterministic) {
  const FlatTable t = build_flat_table(6, 3);
  const auto a = random_lower_bound(6, 3, {2, 4}, 1, 77, t);
  const auto b = random_lower_bound(6, 3, {2, 4}, 1, 77, t);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.witness, b.witness);
  EXPECT_THROW(random_lower_bound(6, 3, {2, 4}, 0, 77, t), Error);
  EXPECT_THROW(random_lower_bound(6, 2, {2, 4}, 1, 77, t), Error);
}

TEST(RandomLowerBound, SixVariablesAreNormal) {
  const FlatTable t = build_flat_table(6, 3);
  const auto e = random_lower_bound(6, 3, {1, 6}, 10000, 2, t);
  EXPECT_EQ(e.value, 0);
}

TEST(RandomLowerBound, ExactDegreeVariantWithBases) {
  const FlatTable t = build_flat_table(5, 3);
  const std::vector<BoolFun> bases = {fn(bfnorm::testing::kQuadric5, 5)};
  const auto e = random_lower_bound(5, 3, {3, 3}, 200, 9, t, bases, true);
  EXPECT_TRUE(e.degree_exactly_k);
  ASSERT_TRUE(e.witness);
  EXPECT_EQ(degree(*e.witness), 3);
  EXPECT_EQ(r_degree(*e.witness, 3, t), e.value);
}

TEST(AffineReduction, HighDegreePredicateIsShiftInvariant) {
  const FlatTable t = build_flat_table(5, 3);
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const BoolFun f = random_in_band(5, {0, 5}, rng());
    const BoolFun l = random_in_band(5, {0, 1}, rng());
    ASSERT_EQ(r_degree(f, 3, t) >= 2, r_degree(f ^ l, 3, t) >= 2);
  }
}

TEST(ScanStream, DubucRecord) {
  FlatTableCache cache;
  std::istringstream in("# one function\n" + bfnorm::testing::kDubuc + "\n");
  ScanOptions opt;
  opt.m = 8;
  opt.dims = {4};
  std::vector<FunctionRecord> records;
  const auto dist = scan_stream(in, opt, cache, [&](const FunctionRecord& r) { records.push_back(r); });
  ASSERT_EQ(records.size(), 1u);
  EXPECT_EQ(records[0].id, "2");
  EXPECT_EQ(records[0].degree, 6);
  ASSERT_TRUE(records[0].report);
  EXPECT_EQ(records[0].report->status, NormalityStatus::WeaklyNormal);
  EXPECT_EQ(records[0].rel_degrees.at(4), 1);
  EXPECT_EQ(dist.counts.at(4)[1], 1u);
}

TEST(ScanStream, EmptyInput) {
  FlatTableCache cache;
  std::istringstream in("");
  ScanOptions opt;
  opt.m = 6;
  opt.dims = {3};
  int calls = 0;
  const auto dist = scan_stream(in, opt, cache, [&](const FunctionRecord&) { ++calls; });
  EXPECT_EQ(calls, 0);
  EXPECT_EQ(dist.functions, 0u);
}

TEST(ScanStream, BentFunctionsAreNeverAbnormal) {
  std::stringstream in;
  for (std::uint64_t s = 0; s < 1000; ++s) in << "mm" << s << ":" << to_hex(random_maiorana_mcfarland(8, s)) << "\n";
  FlatTableCache cache;
  ScanOptions opt;
  opt.format = InputFormat::Hex;
  opt.m = 8;
  opt.threads = 4;
  std::size_t n = 0;
  scan_stream(in, opt, cache, [&](const FunctionRecord& r) {
    ASSERT_EQ(r.id, "mm" + std::to_string(n));
    ASSERT_NE(r.report->status, NormalityStatus::Abnormal);
    ++n;
  });
  EXPECT_EQ(n, 1000u);
}

TEST(ScanStream, PermutationApplied) {
  FlatTableCache cache;
  std::istringstream in("x1*x2 + x3\n");
  ScanOptions opt;
  opt.m = 3;
  opt.permutation = {3, 1, 2};
  opt.classify = false;
  std::vector<FunctionRecord> records;
  scan_stream(in, opt, cache, [&](const FunctionRecord& r) { records.push_back(r); });
  ASSERT_EQ(records.size(), 1u);
  EXPECT_FALSE(records[0].report);
  EXPECT_EQ(records[0].degree, 2);
}

TEST(ScanStream, ErrorsCarryLineNumbers) {
  FlatTableCache cache;
  ScanOptions opt;
  opt.m = 4;
  std::istringstream bad_anf("x1\nx2 +\n");
  try {
    scan_stream(bad_anf, opt, cache, [](const FunctionRecord&) {});
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
  opt.format = InputFormat::Hex;
  std::istringstream bad_hex("00ff\n0f\n");
  try {
    scan_stream(bad_hex, opt, cache, [](const FunctionRecord&) {});
    FAIL();
  } catch (const std::exception& e) {
    EXPECT_NE(std::string(e.what()).find("line 2"), std::string::npos) << e.what();
  }
}
