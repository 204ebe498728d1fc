// Acceptance gate: every release-blocking claim, one pass/fail line each,
// pinned tolerances. Exit 0 iff all hard criteria pass (the statistical
// probe in criterion 8 is reported but not gating).

#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <sstream>
#include <vector>

#include "qls/crank.hpp"
#include "qls/degen.hpp"
#include "qls/fourier.hpp"
#include "qls/latin.hpp"
#include "qls/spectral.hpp"
#include "qls/verify.hpp"

using namespace qls;

namespace {

int failures = 0;

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void report(int criterion, const std::string& what, bool pass, const std::string& detail) {
  if (!pass) ++failures;
  std::printf("[%s] criterion %d: %s  --  %s\n", pass ? "PASS" : "FAIL", criterion,
              what.c_str(), detail.c_str());
  std::fflush(stdout);
}

bool all_pass(const std::vector<CheckResult>& cs, std::string* why = nullptr) {
  bool ok = true;
  for (const auto& c : cs)
    if (!c.pass) {
      ok = false;
      if (why) *why += c.name + "; ";
    }
  return ok;
}

}  // namespace

int main() {
  const auto t0 = std::chrono::steady_clock::now();

  // ---- criteria 1 & 2: degeneration enumeration and stability margins ----
  {
    const auto t = std::chrono::steady_clock::now();
    const DegenReport rep = degeneration_report(4);
    const double elapsed = seconds_since(t);
    const CheckResult counts = checks::degen_counts(rep);
    const bool time_ok = elapsed <= 300.0;
    report(1, "1206 closed quotients of the chain system, 154 isomorphism classes",
           counts.pass && time_ok,
           counts.detail + " time=" + std::to_string(elapsed) + "s (budget 300s)");

    const CheckResult margins = checks::degen_margins(rep);
    const int d_h1 = d_value(build_h1());
    report(2, "stability margins: quantity 5 only for the full system; v-e=5 shapes; d=4",
           margins.pass && d_h1 == 4, margins.detail + "; d(H1)=" + std::to_string(d_h1));
  }

  // ---- criterion 3: group spectra ----
  {
    std::vector<CheckResult> cs;
    for (int n = 1; n <= 8; ++n)
      cs.push_back(checks::group_spectrum_match("Z" + std::to_string(n), 1e-8));
    for (const std::string name : {"S3", "D4", "Q8", "A4"})
      cs.push_back(checks::group_spectrum_match(name, 1e-8));
    const auto t = std::chrono::steady_clock::now();
    const CheckResult a5 = checks::rho_a5(1e-6);
    const double a5_time = seconds_since(t);
    cs.push_back(a5);
    std::string why;
    const bool ok = all_pass(cs, &why) && a5_time <= 120.0;
    report(3, "dense spectra match the irrep prediction at 1e-8; rho(A5) = 1/3 +- 1e-6",
           ok, (why.empty() ? a5.detail : why) + " a5_time=" + std::to_string(a5_time) + "s");
  }

  // ---- criterion 4: trace identities ----
  {
    std::vector<CheckResult> cs;
    for (const std::string& name : group_catalog()) {
      const LatinSquare L = group_square(name);
      if (L.order() > 8) continue;
      cs.push_back(checks::trace_identity(L, name));
      cs.push_back(checks::rho_trace_inequality(L, name, 1e-6));
    }
    for (int i = 0; i < 20; ++i) {
      const LatinSquare L = jm_sample(6, jm_default_steps(6), 1 + i);
      cs.push_back(checks::trace_identity(L, "jm6#" + std::to_string(i)));
      cs.push_back(checks::rho_trace_inequality(L, "jm6#" + std::to_string(i), 1e-6));
    }
    cs.push_back(checks::trace_zn(8));
    std::string why;
    const bool ok = all_pass(cs, &why);
    report(4, "walk count = n^6 tr A^6 exactly; tr A^6(Zn) = n; 1 + rho^6 <= tr A^6 + 1e-6",
           ok, ok ? std::to_string(cs.size()) + " checks" : why);
  }

  // ---- criterion 5: exact Fourier suite ----
  {
    const auto t = std::chrono::steady_clock::now();
    std::vector<CheckResult> cs;
    cs.push_back(checks::fourier_decomposition(group_square("Z3"), "Z3"));
    cs.push_back(checks::fourier_decomposition(group_square("Z4"), "Z4"));
    cs.push_back(checks::fourier_decomposition(group_square("Z2xZ2"), "Z2xZ2"));
    cs.push_back(checks::fourier_decomposition(jm_sample(4, jm_default_steps(4), 5), "jm4"));
    cs.push_back(checks::fourier_diagonality(group_square("Z3"), "Z3", 3, 4));
    cs.push_back(checks::fourier_diagonality(group_square("Z4"), "Z4", 3, 4));
    for (int n = 3; n <= 5; ++n) {
      cs.push_back(checks::sparseval_all(n));
      cs.push_back(checks::sign_law(n, 4));
      cs.push_back(checks::mobius_inversion_pointwise(n, 4));
    }
    const double elapsed = seconds_since(t);
    std::string why;
    const bool ok = all_pass(cs, &why) && elapsed <= 600.0;
    report(5,
           "decomposition + diagonality (n=3,4), sparseval, sign law, Mobius inversion (n<=5)",
           ok,
           (why.empty() ? std::to_string(cs.size()) + " checks" : why) +
               " time=" + std::to_string(elapsed) + "s (budget 600s)");
  }

  // ---- criteria 6 & 7: crank suite and gamma identities ----
  {
    std::vector<CheckResult> cs;
    cs.push_back(checks::crank_formula_exhaustive(5));
    cs.push_back(checks::rank_chain_pi4());
    for (const std::string name : {"Z3", "Z4", "Z5"})
      cs.push_back(checks::lambda_crank_bound(group_square(name), name, 4));
    for (int i = 0; i < 5; ++i)
      cs.push_back(checks::lambda_crank_bound(jm_sample(5, jm_default_steps(5), 1 + i),
                                              "jm5#" + std::to_string(i), 4));
    std::string why;
    const bool ok6 = all_pass(cs, &why);
    report(6, "crank = pair formula (ground<=5); crank >= trank >= lrank; 0 <= Lambda <= n^-crank",
           ok6, ok6 ? std::to_string(cs.size()) + " checks" : why);

    // gamma0 in [0,1] is asserted inside lambda_crank_bound for every system
    const CheckResult gm = checks::gamma_matching_identity(5, 2);
    report(7, "gamma0 in [0,1] for all systems tested; gamma(matching) = (1-1/n)^k",
           ok6 && gm.pass, gm.detail);
  }

  // ---- criterion 8: transversal counts + soft probe ----
  {
    const CheckResult known = checks::transversal_known_counts();
    report(8, "Z2->0 Z4->0 Z3->3 Z5->15 Z7->133 against the permutation oracle", known.pass,
           known.detail);

    // soft statistical probe, reported but never gating: the asymptotic
    // reference is an n -> infinity statement
    const int samples = 50;
    const auto asym = transversal_asymptotic(11);
    double sum_ratio = 0;
    for (int i = 0; i < samples; ++i) {
      const LatinSquare L = jm_sample(11, jm_default_steps(11), 1 + i);
      sum_ratio += count_transversals(L) / asym.value;
    }
    const double mean_ratio = sum_ratio / samples;
    const bool in_band = mean_ratio >= 0.75 && mean_ratio <= 1.25;
    std::printf("[SOFT] criterion 8 probe: n=11 mean count ratio %.4f vs e^{-1/2} 11!^2/11^11 "
                "(reference %.1f) over %d samples -> %s (reported, non-gating)\n",
                mean_ratio, asym.value, samples, in_band ? "inside [0.75,1.25]" : "OUTSIDE band");
  }

  // ---- criterion 9: inequality scans ----
  {
    const CheckResult u = checks::u_positivity(40);
    const CheckResult br = checks::breaking_sweep(10);
    const CheckResult mj = checks::majorant_minimal_c(6, 4);
    report(9, "U((z-1)^m) >= 0 for m <= n <= 40; breaking r <= 10; majorant at n=6, |A| <= 4",
           u.pass && br.pass && mj.pass, u.detail + " | " + br.detail + " | " + mj.detail);
  }

  std::printf("----\n%s: %d hard criteria failed, total time %.1fs\n",
              failures == 0 ? "ACCEPTANCE PASS" : "ACCEPTANCE FAIL", failures,
              seconds_since(t0));
  return failures == 0 ? 0 : 1;
}
