#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "qls/spectral.hpp"

using namespace qls;

TEST_CASE("operator on the order-1 square") {
  const MarkovOperator op = build_operator(group_square("Z1"));
  CHECK(op.dim == 1);
  REQUIRE(op.rows[0].size() == 1);
  CHECK(op.rows[0][0] == std::pair<int, int>{0, 1});
  const SpectralReport rep = rho(op);
  CHECK(rep.rho == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("Z2 operator spectrum is {1,1,0,0}") {
  const MarkovOperator op = build_operator(group_square("Z2"));
  const SpectralReport rep = rho(op);
  REQUIRE(rep.eigenvalues.size() == 4);
  std::vector<double> ev = rep.eigenvalues;
  std::sort(ev.begin(), ev.end());
  CHECK(ev[0] == doctest::Approx(0).epsilon(1e-10));
  CHECK(ev[1] == doctest::Approx(0).epsilon(1e-10));
  CHECK(ev[2] == doctest::Approx(1).epsilon(1e-10));
  CHECK(ev[3] == doctest::Approx(1).epsilon(1e-10));
  CHECK(rep.rho == doctest::Approx(1).epsilon(1e-10));  // abelian: rho = 1
}

TEST_CASE("row sums and symmetry") {
  for (const std::string& name : {"Z5", "S3", "Q8"}) {
    const MarkovOperator op = build_operator(group_square(name));
    for (int r = 0; r < op.dim; ++r) {
      int sum = 0;
      for (const auto& [c, cnt] : op.rows[r]) sum += cnt;
      CHECK(sum == op.n);
    }
  }
}

TEST_CASE("trace powers") {
  CHECK(trace_power(build_operator(group_square("Z2")), 6) == 2);
  CHECK(trace_power(build_operator(group_square("Z3")), 6) == 3);
  CHECK_THROWS_AS(trace_power(build_operator(group_square("Z2")), 3), Error);

  // tr A^2 against the dense spectrum
  const MarkovOperator op = build_operator(group_square("Z4"));
  const SpectralReport rep = rho(op);
  double sum = 0;
  for (double ev : rep.eigenvalues) sum += ev * ev;
  CHECK(rat_double(trace_power(op, 2)) == doctest::Approx(sum).epsilon(1e-10));
}

TEST_CASE("configuration count identity") {
  CHECK(trace6_configurations(group_square("Z1")) == 1);
  CHECK(trace6_configurations(group_square("Z2")) == 128);
  CHECK(trace6_configurations(group_square("Z3")) == 2187);
  for (const std::string& name : {"Z4", "S3", "D4"}) {
    const LatinSquare L = group_square(name);
    const MarkovOperator op = build_operator(L);
    CHECK(Rat(trace6_configurations(L)) == rat_pow(Rat(L.order()), 6) * trace_power(op, 6));
  }
}

TEST_CASE("group spectrum prediction") {
  const auto z3 = predict_group_spectrum(group_spec("Z3"));
  REQUIRE(z3.size() == 2);
  CHECK(z3[0] == std::pair<Rat, long>{Rat(0), 6});
  CHECK(z3[1] == std::pair<Rat, long>{Rat(1), 3});

  const auto s3 = predict_group_spectrum(group_spec("S3"));
  long total = 0;
  for (const auto& [v, c] : s3) total += c;
  CHECK(total == 36);
  for (const auto& [v, c] : s3) {
    if (v == Rat(1, 2)) CHECK(c == 12);
    if (v == Rat(-1, 2)) CHECK(c == 4);
    if (v == Rat(1)) CHECK(c == 2);
    if (v == Rat(0)) CHECK(c == 18);
  }

  const auto q8 = predict_group_spectrum(group_spec("Q8"));
  long total8 = 0;
  for (const auto& [v, c] : q8) total8 += c;
  CHECK(total8 == 64);

  GroupSpec bad{"bad", 5, {1, 1}};
  CHECK_THROWS_AS(predict_group_spectrum(bad), Error);
}

TEST_CASE("dense spectrum matches prediction") {
  for (const std::string& name : {"Z4", "S3", "A4"}) {
    const auto cmp = compare_group_spectrum(group_square(name), group_spec(name), 1e-8);
    CHECK(cmp.match);
    CHECK(cmp.worst <= 1e-8);
  }
}

TEST_CASE("iterative path agrees with dense on a small square") {
  const MarkovOperator op = build_operator(group_square("S3"));
  const SpectralReport dense = rho(op);
  const SpectralReport iter = rho(op, 1e-9, 0 /* force iterative */, 7);
  CHECK(iter.method == "iterative");
  CHECK(iter.converged);
  CHECK(iter.rho == doctest::Approx(dense.rho).epsilon(1e-6));
}

TEST_CASE("quasi use lemma instances") {
  const auto empty = quasi_use_check(group_square("Z3"), {});
  CHECK(empty.holds);

  const auto jm = quasi_use_check(jm_sample(4, jm_default_steps(4), 3), {0, 1});
  CHECK(jm.holds);

  const auto z5 = quasi_use_check(group_square("Z5"), {0, 1, 2});
  CHECK(z5.holds);  // rho = 1: the bound is plain Cauchy-Schwarz
  CHECK(z5.rho_used == doctest::Approx(1.0).epsilon(1e-8));
}
