// Test-only oracles, independent of the library code paths they audit.
#pragma once

#include <vector>

#include "qls/latin.hpp"
#include "qls/rational.hpp"

namespace qls::oracles {

// Bell numbers by the Bell triangle
inline std::vector<Int> bell_numbers(int m_max) {
  std::vector<Int> bell = {Int(1)};
  std::vector<Int> row = {Int(1)};
  for (int m = 1; m <= m_max; ++m) {
    std::vector<Int> next;
    next.push_back(row.back());
    for (const Int& v : row) next.push_back(next.back() + v);
    bell.push_back(next.front());
    row = std::move(next);
  }
  return bell;  // bell[m] = Bell(m)
}

// every latin square of order n by row-wise backtracking (n <= 4 practical)
inline std::vector<LatinSquare> all_latin_squares(int n) {
  std::vector<LatinSquare> out;
  std::vector<std::vector<int>> grid(n, std::vector<int>(n, -1));
  std::vector<std::uint32_t> col_used(n, 0);

  const auto rec = [&](auto&& self, int r, int c, std::uint32_t row_used) -> void {
    if (r == n) {
      out.push_back(LatinSquare::from_grid(grid));
      return;
    }
    if (c == n) {
      self(self, r + 1, 0, 0);
      return;
    }
    for (int s = 0; s < n; ++s) {
      const std::uint32_t bit = 1u << s;
      if ((row_used & bit) || (col_used[c] & bit)) continue;
      grid[r][c] = s;
      col_used[c] |= bit;
      self(self, r, c + 1, row_used | bit);
      col_used[c] &= ~bit;
      grid[r][c] = -1;
    }
  };
  rec(rec, 0, 0, 0);
  return out;
}

// U((z-1)^m) by the direct binomial expansion, bypassing the polynomial path
inline Rat u_z_minus_1_pow(int n, int m) {
  Rat sum = 0;
  for (int k = 0; k <= m; ++k) {
    Rat term(int_pow(Int(n), static_cast<unsigned long>(k)),
             falling(Int(n), static_cast<unsigned long>(k)));
    term.canonicalize();
    term *= Rat(binomial(static_cast<unsigned long>(m), static_cast<unsigned long>(k)));
    sum += ((m - k) % 2 == 0) ? term : -term;
  }
  return sum;
}

}  // namespace qls::oracles
