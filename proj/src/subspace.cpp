#include "bfnorm/subspace.hpp"

#include <algorithm>
#include <fstream>

namespace bfnorm {

namespace {

void check_dims(int m, int r) {
  if (m < 1 || m > kMaxVars) throw Error("ambient dimension must be in [1, 16]");
  if (r < 0 || r > m)
    throw Error("subspace dimension " + std::to_string(r) + " out of range for m=" + std::to_string(m));
}

// Deposits the low bits of `value` into the set positions of `mask`.
std::uint32_t deposit_bits(std::uint32_t value, std::uint32_t mask) {
  std::uint32_t out = 0;
  for (std::uint32_t bit = 1; mask; bit <<= 1) {
    const std::uint32_t low = mask & -mask;
    if (value & bit) out |= low;
    mask ^= low;
  }
  return out;
}

}  // namespace

std::uint64_t gaussian_binomial(int m, int r) {
  if (r < 0 || m < 0 || r > m) throw Error("gaussian_binomial requires 0 <= r <= m");
  if (m > 63) throw Error("gaussian_binomial: m too large");
  // (2^m - 2^i)/(2^r - 2^i) = (2^{m-i} - 1)/(2^{r-i} - 1).  Pairing numerator
  // i with denominator 2^{i+1} - 1 instead keeps every partial product equal
  // to [m, i+1], so each division is exact.  With r <= m/2 these partial
  // products increase, so the range check below only fires on true overflow.
  r = std::min(r, m - r);
  unsigned __int128 value = 1;
  for (int i = 0; i < r; ++i) {
    value *= (static_cast<unsigned __int128>(1) << (m - i)) - 1;
    const unsigned __int128 den = (static_cast<unsigned __int128>(1) << (i + 1)) - 1;
    if (value % den) throw Error("gaussian_binomial: inexact division");
    value /= den;
    if (value > UINT64_MAX) throw Error("gaussian_binomial overflow for m=" + std::to_string(m) + ", r=" + std::to_string(r));
  }
  return static_cast<std::uint64_t>(value);
}

LinearSubspace::LinearSubspace(int m, std::vector<std::uint32_t> rref_basis)
    : m_(m), basis_(std::move(rref_basis)) {
  check_dims(m, static_cast<int>(basis_.size()));
  int last = -1;
  for (auto b : basis_) {
    if (b == 0 || b >= (std::uint32_t{1} << m)) throw Error("basis vector out of range");
    const int pivot = std::bit_width(b) - 1;
    if (pivot <= last) throw Error("basis pivots must be strictly increasing");
    last = pivot;
    pivots_ |= std::uint32_t{1} << pivot;
  }
  for (auto b : basis_) {
    const std::uint32_t own = std::uint32_t{1} << (std::bit_width(b) - 1);
    if ((b & pivots_) != own) throw Error("basis is not in reduced row echelon form");
  }
}

LinearSubspace LinearSubspace::span(int m, std::span<const std::uint32_t> generators) {
  std::uint32_t by_lead[32] = {};
  for (std::uint32_t v : generators) {
    if (v >> m) throw Error("generator out of range");
    while (v) {
      const int lead = std::bit_width(v) - 1;
      if (!by_lead[lead]) {
        by_lead[lead] = v;
        break;
      }
      v ^= by_lead[lead];
    }
  }
  // Back-substitute so pivot columns are cleared everywhere else.
  for (int p = 0; p < m; ++p) {
    if (!by_lead[p]) continue;
    for (int q = p + 1; q < m; ++q)
      if (by_lead[q] && ((by_lead[q] >> p) & 1)) by_lead[q] ^= by_lead[p];
  }
  std::vector<std::uint32_t> basis;
  for (int p = 0; p < m; ++p)
    if (by_lead[p]) basis.push_back(by_lead[p]);
  return LinearSubspace(m, std::move(basis));
}

std::vector<std::uint32_t> LinearSubspace::points() const {
  std::vector<std::uint32_t> pts(std::size_t{1} << basis_.size());
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const std::size_t half = std::size_t{1} << i;
    for (std::size_t j = 0; j < half; ++j) pts[half + j] = pts[j] ^ basis_[i];
  }
  return pts;
}

std::vector<std::uint32_t> flat_points(const AffineFlat& flat) {
  auto pts = flat.subspace().points();
  for (auto& p : pts) p ^= flat.rep();
  return pts;
}

std::vector<std::uint32_t> coset_reps(const LinearSubspace& v) {
  const std::uint32_t free_mask = ((std::uint32_t{1} << v.ambient_dim()) - 1) & ~v.pivot_mask();
  const std::size_t count = std::size_t{1} << (v.ambient_dim() - v.dim());
  std::vector<std::uint32_t> reps(count);
  for (std::size_t j = 0; j < count; ++j) reps[j] = deposit_bits(static_cast<std::uint32_t>(j), free_mask);
  return reps;
}

std::vector<AffineFlat> cosets(const LinearSubspace& v) {
  std::vector<AffineFlat> out;
  for (auto rep : coset_reps(v)) out.emplace_back(v, rep);
  return out;
}

SubspaceEnumerator::SubspaceEnumerator(int m, int r, std::uint64_t cap) : m_(m), r_(r) {
  check_dims(m, r);
  total_ = gaussian_binomial(m, r);
  if (total_ > cap)
    throw Error("enumeration of " + std::to_string(total_) + " subspaces exceeds cap of " +
                std::to_string(cap));
  pivots_.resize(r);
  for (int i = 0; i < r; ++i) pivots_[i] = i;
  reset_free();
}

void SubspaceEnumerator::reset_free() {
  free_bits_.clear();
  free_owner_.clear();
  std::uint32_t pivot_mask = 0;
  for (int p : pivots_) pivot_mask |= std::uint32_t{1} << p;
  for (int i = 0; i < r_; ++i)
    for (int pos = 0; pos < pivots_[i]; ++pos)
      if (!((pivot_mask >> pos) & 1)) {
        free_bits_.push_back(pos);
        free_owner_.push_back(i);
      }
  counter_ = 0;
  counter_end_ = std::uint64_t{1} << free_bits_.size();
}

bool SubspaceEnumerator::advance_pivots() {
  int i = r_ - 1;
  while (i >= 0 && pivots_[i] == m_ - r_ + i) --i;
  if (i < 0) return false;
  ++pivots_[i];
  for (int j = i + 1; j < r_; ++j) pivots_[j] = pivots_[j - 1] + 1;
  reset_free();
  return true;
}

std::optional<LinearSubspace> SubspaceEnumerator::next() {
  if (done_) return std::nullopt;
  if (counter_ == counter_end_) {
    if (!advance_pivots()) {
      done_ = true;
      return std::nullopt;
    }
  }
  std::vector<std::uint32_t> basis(r_);
  for (int i = 0; i < r_; ++i) basis[i] = std::uint32_t{1} << pivots_[i];
  for (std::size_t k = 0; k < free_bits_.size(); ++k)
    if ((counter_ >> k) & 1) basis[free_owner_[k]] |= std::uint32_t{1} << free_bits_[k];
  ++counter_;
  return LinearSubspace(m_, std::move(basis));
}

std::vector<LinearSubspace> enumerate_subspaces(int m, int r, std::uint64_t cap) {
  SubspaceEnumerator it(m, r, cap);
  std::vector<LinearSubspace> out;
  out.reserve(it.total());
  while (auto v = it.next()) out.push_back(std::move(*v));
  return out;
}

FlatTable::FlatTable(int m, int r, std::vector<std::uint32_t> bases, std::vector<std::uint32_t> reps)
    : m_(m), r_(r), bases_(std::move(bases)), reps_(std::move(reps)) {
  check_dims(m, r);
  space_count_ = r == 0 ? 1 : bases_.size() / r;
  if (r > 0 && bases_.size() % r) throw Error("flat table basis storage is not a multiple of r");
  if (reps_.size() != space_count_ * cosets_per_space()) throw Error("flat table coset count mismatch");
  offsets_.resize(space_count_ * points_per_flat());
  for (std::size_t i = 0; i < space_count_; ++i) {
    auto b = basis(i);
    std::uint32_t* pts = offsets_.data() + i * points_per_flat();
    pts[0] = 0;
    for (int k = 0; k < r; ++k) {
      const std::size_t half = std::size_t{1} << k;
      for (std::size_t j = 0; j < half; ++j) pts[half + j] = pts[j] ^ b[k];
    }
  }
}

LinearSubspace FlatTable::space(std::size_t i) const {
  auto b = basis(i);
  return LinearSubspace(m_, std::vector<std::uint32_t>(b.begin(), b.end()));
}

AffineFlat FlatTable::flat(std::size_t space_index, std::size_t coset_index) const {
  return AffineFlat(space(space_index), reps(space_index)[coset_index]);
}

FlatTable build_flat_table(int m, int r, std::uint64_t cap) {
  SubspaceEnumerator it(m, r, cap);
  std::vector<std::uint32_t> bases;
  std::vector<std::uint32_t> reps;
  bases.reserve(it.total() * r);
  reps.reserve(it.total() << (m - r));
  while (auto v = it.next()) {
    bases.insert(bases.end(), v->basis().begin(), v->basis().end());
    auto cr = coset_reps(*v);
    reps.insert(reps.end(), cr.begin(), cr.end());
  }
  return FlatTable(m, r, std::move(bases), std::move(reps));
}

namespace {

constexpr char kMagic[4] = {'B', 'F', 'L', 'T'};
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t v) {
  char b[4];
  for (int i = 0; i < 4; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xff);
  out.write(b, 4);
}
void put_u64(std::ostream& out, std::uint64_t v) {
  put_u32(out, static_cast<std::uint32_t>(v));
  put_u32(out, static_cast<std::uint32_t>(v >> 32));
}
std::uint32_t get_u32(std::istream& in) {
  unsigned char b[4];
  if (!in.read(reinterpret_cast<char*>(b), 4)) throw Error("flat table file truncated");
  return b[0] | (b[1] << 8) | (b[2] << 16) | (static_cast<std::uint32_t>(b[3]) << 24);
}
std::uint64_t get_u64(std::istream& in) {
  const std::uint64_t lo = get_u32(in);
  return lo | (static_cast<std::uint64_t>(get_u32(in)) << 32);
}

}  // namespace

void save_flat_table(const FlatTable& table, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out.write(kMagic, 4);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(table.ambient_dim()));
  put_u32(out, static_cast<std::uint32_t>(table.dim()));
  put_u64(out, table.space_count());
  for (std::size_t i = 0; i < table.space_count(); ++i) {
    for (auto b : table.basis(i)) put_u32(out, b);
    for (auto rep : table.reps(i)) put_u32(out, rep);
  }
  if (!out) throw Error("failed writing " + path.string());
}

FlatTable load_flat_table(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open flat table " + path.string());
  char magic[4];
  if (!in.read(magic, 4) || !std::equal(magic, magic + 4, kMagic)) throw Error("bad flat table magic");
  if (get_u32(in) != kVersion) throw Error("unsupported flat table version");
  const std::uint32_t m = get_u32(in);
  const std::uint32_t r = get_u32(in);
  if (m < 1 || m > kMaxVars || r > m) throw Error("flat table header has invalid dimensions");
  const std::uint64_t count = get_u64(in);
  if (count != gaussian_binomial(static_cast<int>(m), static_cast<int>(r)))
    throw Error("flat table space count " + std::to_string(count) + " does not match Gaussian binomial");
  const std::size_t per_space_reps = std::size_t{1} << (m - r);
  std::vector<std::uint32_t> bases(count * r);
  std::vector<std::uint32_t> reps(count * per_space_reps);
  std::uint32_t previous_pivots = 0;
  for (std::uint64_t i = 0; i < count; ++i) {
    for (std::uint32_t k = 0; k < r; ++k) bases[i * r + k] = get_u32(in);
    // Validates RREF form; throws on a corrupt basis.
    LinearSubspace v(static_cast<int>(m),
                     std::vector<std::uint32_t>(bases.begin() + i * r, bases.begin() + (i + 1) * r));
    previous_pivots = v.pivot_mask();
    for (std::size_t j = 0; j < per_space_reps; ++j) {
      const std::uint32_t rep = get_u32(in);
      if (rep >> m || (rep & previous_pivots)) throw Error("flat table coset representative not reduced");
      if (j > 0 && rep <= reps[i * per_space_reps + j - 1]) throw Error("flat table coset reps out of order");
      reps[i * per_space_reps + j] = rep;
    }
  }
  if (in.peek() != std::char_traits<char>::eof()) throw Error("trailing data in flat table file");
  return FlatTable(static_cast<int>(m), static_cast<int>(r), std::move(bases), std::move(reps));
}

std::string FlatTableCache::file_name(int m, int r) {
  return "flats_m" + std::to_string(m) + "_r" + std::to_string(r) + ".bflt";
}

std::shared_ptr<const FlatTable> FlatTableCache::get(int m, int r) {
  std::lock_guard lock(mutex_);
  auto it = tables_.find({m, r});
  if (it != tables_.end()) return it->second;
  std::shared_ptr<const FlatTable> table;
  if (directory_) {
    const auto path = *directory_ / file_name(m, r);
    if (std::filesystem::exists(path)) table = std::make_shared<const FlatTable>(load_flat_table(path));
  }
  if (!table) table = std::make_shared<const FlatTable>(build_flat_table(m, r));
  tables_[{m, r}] = table;
  return table;
}

void FlatTableCache::insert(std::shared_ptr<const FlatTable> table) {
  std::lock_guard lock(mutex_);
  tables_[{table->ambient_dim(), table->dim()}] = std::move(table);
}

}  // namespace bfnorm
