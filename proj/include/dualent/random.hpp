// Seeded generators for random test instances.

#ifndef DUALENT_RANDOM_HPP_
#define DUALENT_RANDOM_HPP_

#include <cstddef>
#include <cstdint>
#include <algorithm>
#include <random>
#include <vector>

#include "int_matrix.hpp"

namespace dualent {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// Product of at most max_factors elementary transvections and signed
// permutations; regenerated until every entry is at most entry_cap in
// magnitude.
inline IntMatrix random_unimodular(Rng& rng, std::size_t n, int max_factors = 8, long long entry_cap = 50) {
  for (;;) {
    IntMatrix m = IntMatrix::identity(n);
    int factors = static_cast<int>(uniform_int(rng, 1, max_factors));
    bool ok = true;
    for (int f = 0; f < factors && ok; ++f) {
      IntMatrix e = IntMatrix::identity(n);
      if (n >= 2 && uniform_int(rng, 0, 3) != 0) {
        auto i = static_cast<std::size_t>(uniform_int(rng, 0, n - 1));
        auto j = static_cast<std::size_t>(uniform_int(rng, 0, n - 2));
        if (j >= i)
          ++j;
        std::int64_t k = uniform_int(rng, -2, 2);
        e(i, j) = k == 0 ? 1 : k;
      } else {
        // Signed permutation.
        std::vector<std::size_t> perm(n);
        for (std::size_t i = 0; i < n; ++i)
          perm[i] = i;
        std::shuffle(perm.begin(), perm.end(), rng);
        e = IntMatrix(n, n);
        for (std::size_t i = 0; i < n; ++i)
          e(i, perm[i]) = uniform_int(rng, 0, 1) ? 1 : -1;
      }
      m = m * e;
      ok = m.max_abs_entry() <= entry_cap;
    }
    if (ok)
      return m;
  }
}

inline IntMatrix random_matrix(Rng& rng, std::size_t rows, std::size_t cols, std::int64_t lo, std::int64_t hi) {
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      m(i, j) = uniform_int(rng, lo, hi);
  return m;
}

} // namespace dualent

#endif // DUALENT_RANDOM_HPP_
