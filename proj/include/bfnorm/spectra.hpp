#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "bfnorm/core.hpp"

namespace bfnorm {

/// W_f(u) = sum_x (-1)^{f(x) + u.x}; |W| <= 2^m fits comfortably in 32 bits.
struct WalshSpectrum {
  int m = 0;
  std::vector<std::int32_t> values;

  /// value -> number of u attaining it
  std::map<std::int32_t, std::uint32_t> multiplicities() const;
};

WalshSpectrum walsh_transform(const BoolFun& f);

/// Requires even m.
bool is_bent(const BoolFun& f);

/// (-1)^{dual(u)} = W_f(u) / 2^{m/2}.  Throws for non-bent input.
BoolFun dual_bent(const BoolFun& f);

/*! \brief Random Maiorana-McFarland bent function f(x, y) = x.pi(y) + g(y).

  x occupies the low m/2 variables and y the high ones; pi is a uniform
  permutation and g uniform.  With `scramble`, a random affine transform is
  applied afterwards, which preserves bentness.
*/
BoolFun random_maiorana_mcfarland(int m, std::uint64_t seed, bool scramble = true);

}  // namespace bfnorm
