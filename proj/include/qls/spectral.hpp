#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "qls/fourier.hpp"
#include "qls/latin.hpp"
#include "qls/rational.hpp"

namespace qls {

/// Transition counts of the two-step Markov chain on row-column pairs:
/// entry[(x,y)][(x',y')] = #{z : (x,y',z) and (x',y,z) in L}, row sums n.
/// The actual operator is these counts divided by n.
struct MarkovOperator {
  int n = 0;
  int dim = 0;                                        // n^2
  std::vector<std::vector<std::pair<int, int>>> rows;  // (column, count)
};

MarkovOperator build_operator(const LatinSquare& L);

struct SpectralReport {
  int n = 0;
  double rho = 0.0;
  double residual = 0.0;
  std::string method;  // "dense" | "iterative"
  bool converged = true;
  std::vector<double> eigenvalues;  // of A itself, ascending; dense method only
};

// spectral radius of A - U. Dense symmetric eigensolve for n <= dense_cap,
// else seeded power iteration on (A-U)^2 with the constant vector deflated.
SpectralReport rho(const MarkovOperator& op, double tol = 1e-10, int dense_cap = 16,
                   std::uint64_t seed = 1, std::uint64_t max_iters = 200000);

// tr A^k as an exact rational (integer matrix powers over denominator n^k);
// k in {2,4,6,8}, n <= 16
Rat trace_power(const MarkovOperator& op, int k);

// N = number of closed 6-step chain configurations, counted directly from
// the lookup tables; N = n^6 tr A^6
Int trace6_configurations(const LatinSquare& L);

// (eigenvalue, multiplicity) pairs sorted by eigenvalue: d^3(d+1)/2 copies
// of 1/d and d^3(d-1)/2 copies of -1/d per irreducible of dimension d, the
// rest zeros. Throws BadIrrepDims unless sum d^2 = order.
std::vector<std::pair<Rat, long>> predict_group_spectrum(const GroupSpec& spec);

struct SpectrumComparison {
  bool match = false;
  double worst = 0.0;  // max |dense - predicted| over sorted eigenvalues
};
SpectrumComparison compare_group_spectrum(const LatinSquare& L, const GroupSpec& spec,
                                          double tol);

struct QuasiUseResult {
  Rat lambda;    // exact Lambda(P_A 1_S, x3)
  Rat norm_sq;   // exact ||P_A 1_S||_2^2
  double lhs = 0.0, rhs = 0.0;
  double rho_used = 0.0;
  bool holds = false;
};
// |Lambda(P_A 1_S, P_A 1_S, P_A 1_S)| <= (rho + tol)^{|A|/2} ||P_A 1_S||^3
QuasiUseResult quasi_use_check(const LatinSquare& L, const std::vector<int>& A,
                               double tol = 1e-9);

}  // namespace qls
