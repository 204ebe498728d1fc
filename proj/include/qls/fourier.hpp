#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "qls/latin.hpp"
#include "qls/partition.hpp"
#include "qls/rational.hpp"

namespace qls {

/// Exact-rational function on X^m that depends only on the coordinates in
/// its support set A: stores n^{|A|} values indexed by the A-coordinates in
/// lexicographic order (first support position most significant).
class TupleFunction {
 public:
  TupleFunction(int n, int m, std::vector<int> support);

  int n() const { return n_; }
  int m() const { return m_; }
  const std::vector<int>& support() const { return support_; }
  std::vector<Rat>& values() { return values_; }
  const std::vector<Rat>& values() const { return values_; }

  // index of the assignment x restricted to the support (x has length m)
  std::size_t index_of(const std::vector<int>& x) const;
  const Rat& eval(const std::vector<int>& x) const { return values_[index_of(x)]; }

  static TupleFunction constant(int n, int m, const Rat& value);

 private:
  int n_, m_;
  std::vector<int> support_;  // sorted
  std::vector<Rat> values_;
};

// indicator of injective assignments on A (BudgetExceeded past the cap)
TupleFunction indicator_injective(int n, int m, const std::vector<int>& A,
                                  std::uint64_t budget = 100'000'000);

// indicator of pi-measurable tuples, carried on the given support (which
// must contain supp pi)
TupleFunction measurability_indicator(int n, int m, const Partition& pi,
                                      const std::vector<int>& support);

// conditional expectation onto coordinates in B (result support = A ∩ B)
TupleFunction q_project(const TupleFunction& f, const std::vector<int>& B);

// P_A = sum_{B ⊆ A} (-1)^{|A\B|} Q_B; requires A ⊆ supp f
TupleFunction p_project(const TupleFunction& f, const std::vector<int>& A);

Rat mean(const TupleFunction& f);
// expectation inner product E[f g] (supports may differ)
Rat inner(const TupleFunction& f, const TupleFunction& g);
Rat norm2sq(const TupleFunction& f);

TupleFunction add(const TupleFunction& f, const TupleFunction& g);
TupleFunction subtract(const TupleFunction& f, const TupleFunction& g);

/// Polynomial in z with exact rational coefficients (ascending, trimmed).
struct UPoly {
  std::vector<Rat> coeff;

  static UPoly one();
  static UPoly linear(const Rat& c0, const Rat& c1);  // c0 + c1 z
  UPoly operator*(const UPoly& o) const;
};

// U(z^k) = n^k/(n)_k for k <= n, else 0; extended linearly
Rat u_apply(const UPoly& p, int n);

// P_A 1_S at a point with kernel pi = ker(x|_A):
// (-1)^{rank pi} (n!/n^n) U prod_{p in pi} (|p| z - 1).
// x_on_A lists the values of x at the support positions.
Rat pa1s_kernel_formula(int n, const std::vector<int>& x_on_A);

struct SparsevalResult {
  Rat lhs, rhs;
  bool equal;
};
// lhs = ||P_A 1_S||_2^2 via the generic projector, rhs = (n!/n^n)^2 U((z-1)^m)
SparsevalResult sparseval(int n, const std::vector<int>& A);

struct PositivityRow {
  int n, m;
  Rat value;     // U((z-1)^m), exact
  double ratio;  // diagnostic: value * (n/m)^{m/2}
};
// asserts value >= 0 exactly for all m <= min(n, m_max), n <= n_max
std::vector<PositivityRow> u_positivity_scan(int n_max, int m_max);

struct SignCheckResult {
  bool holds;  // no point with the wrong strict sign
  std::vector<std::vector<int>> zero_points;  // findings, not failures
};
SignCheckResult sign_check(int n, const std::vector<int>& A);

struct MajorantReport {
  std::uint64_t points = 0;
  std::uint64_t violations = 0;
  double max_ratio = 0.0;  // max |P_A 1_S| / majorant over scanned points
  Rat exp_upper;           // rational upper bound used for e^{delta m}
};
// checks |P_A 1_S(x)| <= (n!/n^n) e^{delta m} sigma^{(delta)}_{ker x|A}
// pointwise with delta^2 = C m / n; DeltaOutOfRange when C m > n
MajorantReport majorant_check(int n, int m, const Rat& C);

// R = |P_A 1_S| split by r_{3+}(ker x|_A) < eps * m (sharp) vs >= (flat);
// returns (sharp, flat); if flat_l1 != nullptr, stores E|flat|
std::pair<TupleFunction, TupleFunction> sharp_flat_split(int n, const std::vector<int>& A,
                                                         const Rat& eps, Rat* flat_l1 = nullptr);

// Lambda(f, g, h) = E_{(x,y,z) in L^m} f(x) g(y) h(z), exact. Enumerates
// (x, y) over the union of the three supports, z determined by L.
Rat lambda_eval(const LatinSquare& L, const TupleFunction& f, const TupleFunction& g,
                const TupleFunction& h, std::uint64_t budget = 100'000'000);

// wire format for cross-implementation diffing:
// {"n": ..., "m": ..., "A": [...], "values": ["p/q", ...]}
std::string tuple_function_to_json(const TupleFunction& f);
TupleFunction tuple_function_from_json(const std::string& text);

}  // namespace qls
