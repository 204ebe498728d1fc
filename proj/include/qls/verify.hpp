#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qls/degen.hpp"
#include "qls/latin.hpp"
#include "qls/rational.hpp"

namespace qls {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;  // lhs/rhs values or counters
};

struct VerifyOptions {
  std::uint64_t seed = 1;
  int threads = 2;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass() const;
};

// "transversals", "fourier", "crank", "spectral", "degenerations", "all"
std::vector<std::string> suite_names();
SuiteResult run_suite(const std::string& name, const VerifyOptions& opt = {});

// independent n!-permutation oracle used to audit count_transversals
std::uint64_t transversal_count_oracle(const LatinSquare& L);

namespace checks {

// square_core
CheckResult transversal_known_counts();
CheckResult transversal_oracle_agreement(int n_max, int per_order, std::uint64_t seed);
CheckResult transversal_even_cyclic(int n_max);
CheckResult jm_determinism(int n, std::uint64_t seed);

// partition lattice
CheckResult mobius_interval_sums(int m_max);
CheckResult rank_singleton_invariance();
CheckResult lattice_laws_pi5();
CheckResult exp_formula_cases();
CheckResult breaking_sweep(int r_max);

// fourier calculus
CheckResult fourier_decomposition(const LatinSquare& L, const std::string& label);
CheckResult fourier_diagonality(const LatinSquare& L, const std::string& label, int max_size,
                                int threads);
CheckResult sparseval_all(int n);
CheckResult sign_law(int n, int max_a);
CheckResult mobius_inversion_pointwise(int n, int max_a);
CheckResult projector_algebra(std::uint64_t seed);
CheckResult kernel_formula_matches_projector(int n, int max_a);
CheckResult u_positivity(int n_max);
CheckResult majorant_minimal_c(int n, int m_max);
CheckResult sharp_flat(int n, int a_size);

// crank machinery
CheckResult close_properties(int instances, std::uint64_t seed);
CheckResult crank_formula_exhaustive(int ground_max);
CheckResult rank_chain_pi4();
CheckResult rank_chain_random(int m, int count, std::uint64_t seed);
CheckResult lambda_crank_bound(const LatinSquare& L, const std::string& label, int ground_max);
CheckResult gamma_matching_identity(int n_max, int k_max);

// spectral
CheckResult operator_structure(const LatinSquare& L, const std::string& label);
CheckResult trace_identity(const LatinSquare& L, const std::string& label);
CheckResult trace_zn(int n_max);
CheckResult rho_trace_inequality(const LatinSquare& L, const std::string& label, double tol);
CheckResult group_spectrum_match(const std::string& name, double tol);
CheckResult rho_a5(double tol);
CheckResult trace2_vs_dense();
CheckResult quasi_use(const LatinSquare& L, const std::string& label, const std::vector<int>& A);

// degenerations
CheckResult degen_h1_basics();
CheckResult degen_counts(const DegenReport& rep);
CheckResult degen_margins(const DegenReport& rep);
CheckResult degen_bfs_order_independence();
CheckResult degen_closure_idempotence();

}  // namespace checks

}  // namespace qls
