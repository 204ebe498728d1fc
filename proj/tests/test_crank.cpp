#include <doctest.h>

#include "qls/crank.hpp"

using namespace qls;

namespace {

PartitionTriple triple_of(const Partition& a, const Partition& b, const Partition& c) {
  return PartitionTriple(a, b, c);
}

const Partition kPair2 = Partition::from_cells(2, {{0, 1}});

}  // namespace

TEST_CASE("close fixed points") {
  const PartitionTriple mmm(kPair2, kPair2, kPair2);
  const CellSet full = all_cells(mmm);
  CHECK(close(mmm, full) == full);
  CHECK(close(mmm, 0) == 0);
  // two of the three copies of the pair cell infect the third
  CHECK(close(mmm, 0b011) == full);
  CHECK(close(mmm, 0b101) == full);

  const PartitionTriple disc(Partition::discrete(2), Partition::discrete(2),
                             Partition::discrete(2));
  CHECK(close(disc, 0) == 0);
}

TEST_CASE("crank examples") {
  for (int m = 0; m <= 4; ++m) {
    const Partition d = Partition::discrete(m);
    CHECK(crank(triple_of(d, d, d)) == 0);
  }
  CHECK(crank(triple_of(kPair2, kPair2, kPair2)) == 2);
  CHECK(crank(triple_of(kPair2, Partition::discrete(2), Partition::discrete(2))) == 1);
  CHECK_THROWS_AS(crank(triple_of(Partition::discrete(9), Partition::discrete(9),
                                  Partition::discrete(9))),
                  Error);
}

TEST_CASE("trank, lrank, complexity") {
  const PartitionTriple mmm(kPair2, kPair2, kPair2);
  CHECK(trank(mmm) == 2);
  CHECK(complexity(mmm) == 0);

  const Partition m4 = Partition::from_cells(4, {{0, 1}, {2, 3}});
  const PartitionTriple mmm4(m4, m4, m4);
  CHECK(trank(mmm4) == 4);
  CHECK(complexity(mmm4) == 0);

  const PartitionTriple disc(Partition::discrete(3), Partition::discrete(3),
                             Partition::discrete(3));
  CHECK(trank(disc) == 0);
  CHECK(lrank(disc) == 0);

  CHECK_THROWS_AS(complexity(triple_of(kPair2, Partition::discrete(2), Partition::discrete(2))),
                  Error);
}

TEST_CASE("crank formula for pair partitions") {
  CHECK(crank_pi2_formula(triple_of(kPair2, kPair2, kPair2)) == 2);
  CHECK(crank_pi2_formula(triple_of(kPair2, Partition::discrete(2), Partition::discrete(2))) ==
        1);

  // the three perfect matchings of a 4-set have an indiscrete join:
  // ranks 2+2+2 minus one fully-matched component
  const Partition m1 = Partition::from_cells(4, {{0, 1}, {2, 3}});
  const Partition m2 = Partition::from_cells(4, {{0, 2}, {1, 3}});
  const Partition m3 = Partition::from_cells(4, {{0, 3}, {1, 2}});
  const PartitionTriple t(m1, m2, m3);
  CHECK(crank_pi2_formula(t) == 5);
  CHECK(crank(t) == 5);

  CHECK_THROWS_AS(crank_pi2_formula(triple_of(Partition::indiscrete(3), Partition::discrete(3),
                                              Partition::discrete(3))),
                  Error);
}

TEST_CASE("lambda indicator examples on Z3") {
  const LatinSquare z3 = group_square("Z3");

  const Partition d1 = Partition::discrete(1);
  CHECK(lambda_indicator(z3, triple_of(d1, d1, d1)) == 1);

  CHECK(lambda_indicator(z3, triple_of(kPair2, kPair2, kPair2)) == Rat(1, 9));

  const Partition d2 = Partition::discrete(2);
  CHECK(lambda_indicator(z3, triple_of(kPair2, d2, d2)) == Rat(1, 3));
}

TEST_CASE("lambda indicator node budget") {
  const LatinSquare z5 = group_square("Z5");
  const Partition d4 = Partition::discrete(4);
  CHECK_THROWS_AS(lambda_indicator(z5, triple_of(d4, d4, d4), 1000), Error);
}

TEST_CASE("gamma quantities") {
  const LatinSquare z3 = group_square("Z3");
  const PartitionTriple mmm(kPair2, kPair2, kPair2);
  CHECK(gamma0(z3, mmm) == 1);
  CHECK(gamma(z3, mmm) == Rat(2, 3));

  const Partition d2 = Partition::discrete(2);
  const PartitionTriple disc(d2, d2, d2);
  CHECK(gamma0(z3, disc) == 1);
  CHECK(gamma(z3, disc) == 1);

  CHECK_THROWS_AS(gamma(z3, triple_of(kPair2, d2, d2)), Error);
}
