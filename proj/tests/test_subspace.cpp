#include <gtest/gtest.h>

#include <limits>

#include <boost/multiprecision/cpp_int.hpp>
#include <filesystem>
#include <fstream>
#include <random>
#include <set>

#include "bfnorm/subspace.hpp"

using namespace bfnorm;
using boost::multiprecision::cpp_int;

namespace {

// Literal product formula in exact rational arithmetic.
cpp_int gaussian_oracle(int m, int r) {
  cpp_int num = 1, den = 1;
  for (int i = 0; i < r; ++i) {
    num *= (cpp_int(1) << m) - (cpp_int(1) << i);
    den *= (cpp_int(1) << r) - (cpp_int(1) << i);
  }
  EXPECT_EQ(num % den, 0);
  return num / den;
}

// Counts distinct spans of all r-tuples of nonzero vectors.
std::size_t brute_force_subspace_count(int m, int r) {
  std::set<std::vector<std::uint32_t>> seen;
  const std::uint32_t n = 1u << m;
  std::vector<std::uint32_t> tuple(r, 1);
  for (;;) {
    if (gf2_rank(tuple) == r) {
      auto v = LinearSubspace::span(m, tuple);
      seen.insert(std::vector<std::uint32_t>(v.basis().begin(), v.basis().end()));
    }
    int i = 0;
    while (i < r && ++tuple[i] == n) tuple[i++] = 1;
    if (i == r) break;
  }
  return r == 0 ? 1 : seen.size();
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("bfnorm_test_" + name);
}

}  // namespace

TEST(GaussianBinomial, Examples) {
  EXPECT_EQ(gaussian_binomial(8, 3), 97155u);
  for (int m = 0; m <= 16; ++m) EXPECT_EQ(gaussian_binomial(m, 0), 1u);
  EXPECT_EQ(gaussian_binomial(6, 4), 651u);
  EXPECT_EQ(gaussian_binomial(5, 3), 155u);
  EXPECT_EQ(gaussian_binomial(8, 4), 200787u);
}

TEST(GaussianBinomial, MatchesBigIntegerProduct) {
  for (int m = 0; m <= 16; ++m)
    for (int r = 0; r <= m; ++r) {
      const cpp_int expected = gaussian_oracle(m, r);
      if (expected > std::numeric_limits<std::uint64_t>::max())
        ASSERT_THROW(gaussian_binomial(m, r), Error) << m << "," << r;
      else
        ASSERT_EQ(cpp_int(gaussian_binomial(m, r)), expected) << m << "," << r;
    }
  EXPECT_EQ(gaussian_oracle(6, 4), 651);
  EXPECT_EQ(gaussian_oracle(8, 4), 200787);
}

TEST(GaussianBinomial, MatchesBruteForceCount) {
  for (int m = 1; m <= 5; ++m)
    for (int r = 0; r <= std::min(m, 3); ++r)
      EXPECT_EQ(gaussian_binomial(m, r), brute_force_subspace_count(m, r)) << m << "," << r;
}

TEST(GaussianBinomial, PascalAndDuality) {
  for (int m = 2; m <= 12; ++m)
    for (int r = 1; r < m; ++r)
      ASSERT_EQ(gaussian_binomial(m, r),
                gaussian_binomial(m - 1, r - 1) + (std::uint64_t{1} << r) * gaussian_binomial(m - 1, r));
  for (int m = 0; m <= 15; ++m)
    for (int r = 0; r <= m; ++r) ASSERT_EQ(gaussian_binomial(m, r), gaussian_binomial(m, m - r));
  EXPECT_THROW(gaussian_binomial(16, 8), Error);
}

TEST(GaussianBinomial, Errors) {
  EXPECT_THROW(gaussian_binomial(3, 4), Error);
  EXPECT_THROW(gaussian_binomial(40, 20), Error);
}

TEST(LinearSubspace, ReduceAndMembership) {
  const auto v = LinearSubspace::span(4, std::vector<std::uint32_t>{0b0011, 0b0110});
  EXPECT_EQ(v.dim(), 2);
  EXPECT_TRUE(v.contains(0b0101));
  EXPECT_FALSE(v.contains(0b1000));
  EXPECT_EQ(v.reduce(0b0101), 0u);
  EXPECT_EQ(v.pivot_mask() & v.reduce(0b1111), 0u);
  EXPECT_THROW(LinearSubspace(3, {0b011, 0b010}), Error);  // pivot column not cleared
  EXPECT_THROW(LinearSubspace(3, {0b100, 0b001}), Error);  // pivots decreasing
}

TEST(Enumerate, TwoDimensionalLines) {
  const auto spaces = enumerate_subspaces(2, 1);
  ASSERT_EQ(spaces.size(), 3u);
  EXPECT_EQ(spaces[0].basis()[0], 0b01u);
  EXPECT_EQ(spaces[1].basis()[0], 0b10u);
  EXPECT_EQ(spaces[2].basis()[0], 0b11u);
}

TEST(Enumerate, Counts) {
  EXPECT_EQ(enumerate_subspaces(5, 3).size(), 155u);
  EXPECT_EQ(enumerate_subspaces(8, 3).size(), 97155u);
  for (int m = 1; m <= 7; ++m)
    for (int r = 0; r <= m; ++r) ASSERT_EQ(enumerate_subspaces(m, r).size(), gaussian_binomial(m, r));
}

TEST(Enumerate, DistinctAndCanonical) {
  const auto spaces = enumerate_subspaces(6, 3);
  std::set<LinearSubspace> unique(spaces.begin(), spaces.end());
  EXPECT_EQ(unique.size(), spaces.size());
  for (const auto& v : spaces) ASSERT_EQ(LinearSubspace::span(6, v.basis()), v);
}

TEST(Enumerate, InvariantUnderInvertibleMaps) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 5; ++trial) {
    const int m = 4 + trial % 3;
    const int r = 1 + trial % (m - 1);
    const auto g = AffineTransform::random(m, rng(), false);
    const auto spaces = enumerate_subspaces(m, r);
    std::set<LinearSubspace> mapped;
    for (const auto& v : spaces) {
      std::vector<std::uint32_t> image;
      for (auto b : v.basis()) image.push_back(g.map_point(b) ^ g.translation);
      mapped.insert(LinearSubspace::span(m, image));
    }
    EXPECT_EQ(mapped, std::set<LinearSubspace>(spaces.begin(), spaces.end()));
  }
}

TEST(Enumerate, CapExceeded) {
  EXPECT_THROW(SubspaceEnumerator(16, 8), Error);
  try {
    SubspaceEnumerator(8, 4, 1000);
    FAIL();
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("200787"), std::string::npos);
  }
}

TEST(Cosets, Counts) {
  const auto v = enumerate_subspaces(8, 3)[1234];
  EXPECT_EQ(cosets(v).size(), 32u);
  const auto full = LinearSubspace::span(4, std::vector<std::uint32_t>{1, 2, 4, 8});
  const auto c = cosets(full);
  ASSERT_EQ(c.size(), 1u);
  EXPECT_EQ(c[0].rep(), 0u);
}

TEST(Cosets, ParallelLines) {
  const auto v = LinearSubspace::span(2, std::vector<std::uint32_t>{0b01});
  const auto c = cosets(v);
  ASSERT_EQ(c.size(), 2u);
  EXPECT_EQ(c[0].rep(), 0b00u);
  EXPECT_EQ(c[1].rep(), 0b10u);
}

TEST(Cosets, PartitionProperty) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 100; ++trial) {
    const int m = 2 + trial % 9;
    std::vector<std::uint32_t> gens(1 + rng() % m);
    for (auto& g : gens) g = static_cast<std::uint32_t>(rng()) & ((1u << m) - 1);
    const auto v = LinearSubspace::span(m, gens);
    std::vector<int> hits(1u << m, 0);
    for (const auto& flat : cosets(v)) {
      ASSERT_EQ(flat.subspace().reduce(flat.rep()), flat.rep());
      for (auto p : flat_points(flat)) {
        ++hits[p];
        ASSERT_EQ(v.reduce(p), flat.rep());
      }
    }
    for (int h : hits) ASSERT_EQ(h, 1);
  }
}

TEST(FlatPoints, Examples) {
  const AffineFlat point(LinearSubspace(4, {}), 0b1010);
  EXPECT_EQ(flat_points(point), std::vector<std::uint32_t>{0b1010});
  const AffineFlat plane(LinearSubspace(3, {0b001, 0b010}), 0);
  EXPECT_EQ(flat_points(plane), (std::vector<std::uint32_t>{0, 1, 2, 3}));
  const AffineFlat shifted(LinearSubspace(3, {0b001, 0b010}), 0b111);
  for (auto p : flat_points(shifted)) EXPECT_TRUE(shifted.contains(p));
  EXPECT_EQ(shifted.rep(), 0b100u);
}

TEST(FlatTable, EightVariableSizes) {
  const FlatTable t3 = build_flat_table(8, 3);
  EXPECT_EQ(t3.space_count(), 97155u);
  EXPECT_EQ(t3.cosets_per_space(), 32u);
  EXPECT_EQ(t3.flat_count(), 3108960u);
  const FlatTable t4 = build_flat_table(8, 4);
  EXPECT_EQ(t4.space_count(), 200787u);
  EXPECT_EQ(t4.cosets_per_space(), 16u);
}

TEST(FlatTable, OffsetsMatchSubspacePoints) {
  const FlatTable t = build_flat_table(6, 3);
  for (std::size_t i = 0; i < t.space_count(); i += 37) {
    const auto pts = t.space(i).points();
    ASSERT_TRUE(std::equal(pts.begin(), pts.end(), t.offsets(i).begin()));
    const auto reps = coset_reps(t.space(i));
    ASSERT_TRUE(std::equal(reps.begin(), reps.end(), t.reps(i).begin()));
  }
}

TEST(FlatTable, SaveLoadRoundTrip) {
  const auto path = temp_path("m5r2.bflt");
  const FlatTable t = build_flat_table(5, 2);
  save_flat_table(t, path);
  EXPECT_EQ(load_flat_table(path), t);
  const FlatTable t0 = build_flat_table(3, 0);
  save_flat_table(t0, path);
  EXPECT_EQ(load_flat_table(path), t0);
  std::filesystem::remove(path);
}

TEST(FlatTable, HeaderLayout) {
  const auto path = temp_path("layout.bflt");
  save_flat_table(build_flat_table(3, 1), path);
  std::ifstream in(path, std::ios::binary);
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)), {});
  ASSERT_GE(bytes.size(), 24u);
  EXPECT_EQ(std::string(bytes.begin(), bytes.begin() + 4), "BFLT");
  EXPECT_EQ(bytes[4], 1);   // version
  EXPECT_EQ(bytes[8], 3);   // m
  EXPECT_EQ(bytes[12], 1);  // r
  EXPECT_EQ(bytes[16], 7);  // space count
  // 7 spaces x (1 basis vector + 4 reps) x 4 bytes
  EXPECT_EQ(bytes.size(), 24u + 7 * 5 * 4);
  std::filesystem::remove(path);
}

TEST(FlatTable, CorruptFilesRejected) {
  const auto path = temp_path("corrupt.bflt");
  save_flat_table(build_flat_table(4, 2), path);
  std::vector<char> bytes;
  {
    std::ifstream in(path, std::ios::binary);
    bytes.assign(std::istreambuf_iterator<char>(in), {});
  }
  auto write = [&](const std::vector<char>& data) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
  };
  auto bad = bytes;
  bad[0] = 'X';
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  bad = bytes;
  bad[4] = 2;
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  bad = bytes;
  bad[16] = 34;  // wrong space count
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  bad = bytes;
  bad.resize(bad.size() - 3);
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  bad = bytes;
  bad.push_back(0);
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  bad = bytes;
  bad[24] = 0x0c;  // first basis vector 0b1100 is not RREF-compatible with the second
  write(bad);
  EXPECT_THROW(load_flat_table(path), Error);
  EXPECT_THROW(load_flat_table(temp_path("does_not_exist.bflt")), Error);
  std::filesystem::remove(path);
}

TEST(FlatTableCache, LoadsFromDirectory) {
  const auto dir = temp_path("cache_dir");
  std::filesystem::create_directories(dir);
  save_flat_table(build_flat_table(4, 1), dir / FlatTableCache::file_name(4, 1));
  FlatTableCache cache(dir);
  const auto t = cache.get(4, 1);
  EXPECT_EQ(t->space_count(), 15u);
  EXPECT_EQ(cache.get(4, 1).get(), t.get());
  EXPECT_EQ(cache.get(4, 2)->space_count(), 35u);
  std::filesystem::remove_all(dir);
}
