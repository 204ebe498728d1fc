#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qls/rational.hpp"

namespace qls {

/// An order-n latin square kept as three mutually consistent lookup tables,
/// so every one of the pair types (row,col), (row,sym), (col,sym) resolves
/// its third coordinate in O(1).
class LatinSquare {
 public:
  static LatinSquare from_grid(const std::vector<std::vector<int>>& grid);
  static LatinSquare from_text(const std::string& text);

  int order() const { return n_; }
  int sym_at(int r, int c) const { return sym_[r * n_ + c]; }
  int col_of(int r, int s) const { return col_[r * n_ + s]; }
  int row_of(int c, int s) const { return row_[c * n_ + s]; }

  // throws NotLatin if any table fails the latin property or the three
  // tables disagree
  void validate() const;

  std::string to_text() const;
  std::vector<std::vector<int>> grid() const;

  bool operator==(const LatinSquare& other) const = default;

 private:
  int n_ = 0;
  std::vector<int> sym_;  // row*n + col -> symbol
  std::vector<int> col_;  // row*n + sym -> col
  std::vector<int> row_;  // col*n + sym -> row
};

struct GroupSpec {
  std::string name;
  int order = 0;
  std::vector<int> irrep_dims;  // sorted ascending; sum of squares == order
};

using Perm = std::vector<int>;

struct CayleyResult {
  LatinSquare square;
  std::optional<GroupSpec> spec;  // set when the group matches the catalog
};

// Multiplication table of the permutation group generated by `generators`
// (closure by orbit enumeration, elements sorted lexicographically so the
// identity gets index 0). Throws GroupTooLarge past `order_cap`.
CayleyResult cayley_table(const std::vector<Perm>& generators, int order_cap = 512);

// Built-in catalog: "Z<n>", "Z<a>xZ<b>", "S3", "D4", "Q8", "A4", "A5".
LatinSquare group_square(const std::string& name);
GroupSpec group_spec(const std::string& name);
std::vector<std::string> group_catalog();

// Jacobson-Matthews +-1-move chain started from the cyclic square.
// Deterministic for fixed (n, steps, seed).
LatinSquare jm_sample(int n, std::uint64_t steps, std::uint64_t seed);
std::uint64_t jm_default_steps(int n);  // ceil(n^3 ln n) + 10 n^3

// Exact transversal count by row-by-row backtracking over column/symbol
// bitmasks. Throws OrderTooLarge past the cap.
std::uint64_t count_transversals(const LatinSquare& L, int order_cap = 14);

struct TransversalAsymptotic {
  double value;      // e^{-1/2} n!^2 / n^n
  Rat exact_ratio;   // n!^2 / n^n
};
TransversalAsymptotic transversal_asymptotic(int n);

}  // namespace qls
