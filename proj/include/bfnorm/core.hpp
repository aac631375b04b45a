#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace bfnorm {

/// Largest supported number of variables.
inline constexpr int kMaxVars = 16;

class Error : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/*! \brief Bit vector of length 2^m indexed by points of F_2^m.

  Point x = (x_1, ..., x_m) has index sum_j x_j 2^{j-1}, so x_1 is the least
  significant bit.  The same index doubles as a monomial mask for ANF
  coefficients.  Bits above 2^m in the last word are always zero.

  The tag parameter keeps truth tables and ANF coefficient vectors apart at
  the type level.
*/
template <class Tag>
class BitTable {
public:
  BitTable() : BitTable(1) {}

  explicit BitTable(int num_vars) : m_(num_vars) {
    // m = 0 only arises for restrictions to single points.
    if (num_vars < 0 || num_vars > kMaxVars)
      throw Error("number of variables must be in [0, 16], got " + std::to_string(num_vars));
    words_.assign(word_count(num_vars), 0);
  }

  BitTable(int num_vars, std::vector<std::uint64_t> words) : BitTable(num_vars) {
    if (words.size() != words_.size())
      throw Error("bit table word count mismatch");
    words_ = std::move(words);
    clear_padding();
  }

  static std::size_t word_count(int num_vars) {
    return num_vars <= 6 ? 1 : (std::size_t{1} << (num_vars - 6));
  }

  int num_vars() const { return m_; }
  std::size_t num_bits() const { return std::size_t{1} << m_; }

  bool get(std::uint32_t index) const { return (words_[index >> 6] >> (index & 63)) & 1; }
  void set(std::uint32_t index, bool value) {
    const std::uint64_t bit = std::uint64_t{1} << (index & 63);
    if (value)
      words_[index >> 6] |= bit;
    else
      words_[index >> 6] &= ~bit;
  }
  void flip(std::uint32_t index) { words_[index >> 6] ^= std::uint64_t{1} << (index & 63); }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }
  bool is_zero() const {
    for (auto w : words_)
      if (w) return false;
    return true;
  }

  /// Mask of the valid bits of the (single) word when m < 6.
  std::uint64_t padding_mask() const {
    return m_ >= 6 ? ~std::uint64_t{0} : ((std::uint64_t{1} << (1u << m_)) - 1);
  }
  void clear_padding() { words_.back() &= padding_mask(); }

  BitTable& operator^=(const BitTable& other) {
    check_same(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }
  friend BitTable operator^(BitTable a, const BitTable& b) { return a ^= b; }
  friend bool operator==(const BitTable&, const BitTable&) = default;

private:
  void check_same(const BitTable& other) const {
    if (other.m_ != m_) throw Error("variable count mismatch");
  }

  int m_;
  std::vector<std::uint64_t> words_;
};

struct TruthTableTag;
struct AnfTag;

/// Truth table of f: F_2^m -> F_2.
using BoolFun = BitTable<TruthTableTag>;
/// Algebraic normal form coefficients a_S, indexed by monomial mask.
using Anf = BitTable<AnfTag>;

/// B(s, t, m): functions whose ANF monomials all have size in [s, t].
struct DegreeBand {
  int s = 0;
  int t = 0;

  bool contains_size(int size) const { return s <= size && size <= t; }
  bool is_zero_space() const { return s > t; }
  void validate(int m) const;
};

/*! \brief Element of the extended affine group acting by
  f |-> f(Ax + b) + c.x + d.

  The matrix is stored by columns: A x = XOR of columns[j] over the set bits j
  of x.
*/
struct AffineTransform {
  int m = 1;
  std::vector<std::uint32_t> columns;
  std::uint32_t translation = 0;
  std::uint32_t output_linear = 0;
  bool output_constant = false;

  static AffineTransform identity(int m);
  /// Uniformly random invertible matrix and random b, c, d.
  static AffineTransform random(int m, std::uint64_t seed, bool with_output_affine = true);

  std::uint32_t map_point(std::uint32_t x) const;
  bool is_invertible() const;

  /// Transform equal to applying `first` and then `second`.
  static AffineTransform compose(const AffineTransform& first, const AffineTransform& second);
};

/// Fast Möbius (zeta) transform on the raw words; an involution.
void moebius_in_place(std::span<std::uint64_t> words, int m);
/// Same transform on a single word carrying 2^r <= 64 bits.
std::uint64_t moebius_word(std::uint64_t word, int r);
/// Degree of the ANF stored in a single word with 2^r <= 64 coefficients.
int anf_word_degree(std::uint64_t anf);

BoolFun anf_to_truth_table(const Anf& a);
Anf truth_table_to_anf(const BoolFun& f);

/// Maximal monomial size; 0 for both constant functions.
int degree(const BoolFun& f);
int degree(const Anf& a);
/// Minimal monomial size; throws for the zero function.
int valuation(const BoolFun& f);
int valuation(const Anf& a);

/// Evaluates the ANF at x directly from the subset sum (no transform).
bool evaluate(const Anf& a, std::uint32_t x);

/// Uniform sample from B(s, t, m); deterministic in the seed.
BoolFun random_in_band(int m, DegreeBand band, std::uint64_t seed);
Anf random_anf_in_band(int m, DegreeBand band, std::uint64_t seed);

BoolFun apply_affine(const BoolFun& f, const AffineTransform& g);

/*! \brief Renames variables: input variable i becomes x_{perm[i]}.

  `perm` holds a permutation of 1..m (one-based, as written on the command
  line).  Used when ingesting files that follow a different variable order.
*/
BoolFun permute_variables(const BoolFun& f, std::span<const int> perm);

/// Truth table of the linear function u.x.
BoolFun linear_function(int m, std::uint32_t u);

/// Rank over F_2 of a set of vectors.
int gf2_rank(std::span<const std::uint32_t> vectors);

/// splitmix64 step, used to derive independent seeds.
std::uint64_t mix_seed(std::uint64_t x);

}  // namespace bfnorm
