#include <string>
#include <vector>

#include "doctest.h"
#include "nahmforge/bailey.hpp"
#include "nahmforge/pochhammer.hpp"
#include "test_util.hpp"

using namespace nahmforge;
using nahmforge::testutil::expect_kind;

namespace {

const Rat kPrec(16);

QSeries one_minus(const Rat& e) {
  return sub(QSeries::one(), QSeries::monomial(Rat(1), e));
}

// m * (1 - q^a) / (1 - q^b), attested to kPrec.
QSeries ratio(const Monomial& m, const Rat& a, const Rat& b) {
  return mul(QSeries::monomial(m),
             mul(one_minus(a), inv(one_minus(b), kPrec)));
}

// 1 + 2 * sum_{r=1}^{n} q^(2 r^2), exact.
QSeries partial_theta(std::int64_t n) {
  QSeries acc = QSeries::one();
  for (std::int64_t r = 1; r <= n; ++r)
    acc = add(acc, QSeries::monomial(Rat(2), Rat(2 * r * r)));
  return acc;
}

bool eq12(const QSeries& a, const QSeries& b) {
  return equal_to_precision(a, b, Rat(12));
}

}  // namespace

TEST_SUITE("bailey") {

TEST_CASE("chain shapes and parameters") {
  Monomial u(Rat(1), Rat(3));
  struct Shape {
    const char* name;
    std::vector<std::string> steps;
    Monomial finalA;
  };
  const Shape shapes[] = {
      {"cw1-T0", {"rho-limit"}, Monomial(Rat(1), Rat(0))},
      {"cw1-T1", {"rho-limit"}, Monomial(Rat(1), Rat(2))},
      {"axb-T0", {"lovejoy-b0", "rho-limit"}, Monomial(Rat(1), Rat(1))},
      {"axb-T1", {"lovejoy-b0", "rho-limit"}, Monomial(Rat(1), Rat(2))},
      {"w-T0",
       {"rho-limit", "lovejoy-binf", "mclaughlin"},
       Monomial(Rat(1), Rat(0))},
      {"w-T1", {"rho-limit", "mclaughlin"}, Monomial(Rat(1), Rat(0))},
  };
  for (const auto& shape : shapes) {
    BaileyChain chain = bailey_chain(shape.name, kPrec, u);
    CHECK(chain.steps == shape.steps);
    REQUIRE(chain.stages.size() == shape.steps.size() + 1);
    CHECK(chain.stages.back().a() == shape.finalA);
  }
  expect_kind("UnknownId", [] { bailey_chain("nope", Rat(10)); });
  expect_kind("DomainError", [] { bailey_chain("cw1-T0", Rat(10)); });
}

TEST_CASE("every stage of every chain is a Bailey pair") {
  Monomial u(Rat(1), Rat(3));
  for (const char* name :
       {"cw1-T0", "cw1-T1", "axb-T0", "axb-T1", "w-T0", "w-T1"}) {
    BaileyChain chain = bailey_chain(name, kPrec, u);
    for (std::size_t s = 0; s < chain.stages.size(); ++s) {
      auto bad = bp_check(chain.stages[s], 5);
      INFO(name << " stage " << s);
      CHECK(!bad.has_value());
    }
    CHECK(!bp_limit_identity(chain.stages.back()).has_value());
  }
}

TEST_CASE("intermediate alphas match their closed forms") {
  // After the b -> 0 move on the a = 1 seed:
  //   alpha1_n = (2n+1) q^(n^2) (1-q^(2n+1)) / (1-q).
  BaileyChain axb0 = bailey_chain("axb-T0", kPrec);
  for (std::int64_t n = 0; n <= 4; ++n) {
    QSeries want = mul_scalar(
        ratio(Monomial(Rat(1), Rat(n * n)), Rat(2 * n + 1), Rat(1)),
        Rat(2 * n + 1));
    CHECK(eq12(axb0.stages[1].alpha(n), want));
  }

  // After the b -> 0 move on the a = q seed:
  //   alpha1_n = (n+1) q^(n^2+n) (1-q^(2n+2)) / (1-q^2).
  BaileyChain axb1 = bailey_chain("axb-T1", kPrec);
  for (std::int64_t n = 0; n <= 4; ++n) {
    QSeries want = mul_scalar(
        ratio(Monomial(Rat(1), Rat(n * n + n)), Rat(2 * n + 2), Rat(2)),
        Rat(n + 1));
    CHECK(eq12(axb1.stages[1].alpha(n), want));
  }

  BaileyChain w0 = bailey_chain("w-T0", kPrec);
  // rho-limit of the a = 1 seed: alpha_n = 2 q^(2 n^2).
  CHECK(eq12(w0.stages[1].alpha(0), QSeries::one()));
  for (std::int64_t n = 1; n <= 4; ++n)
    CHECK(eq12(w0.stages[1].alpha(n),
               QSeries::monomial(Rat(2), Rat(2 * n * n))));
  // b -> infinity move:
  //   alpha2_n = (1-q^(2n+1)) q^(-n) (1+2 sum q^(2r^2)) / (1-q).
  for (std::int64_t n = 0; n <= 4; ++n) {
    QSeries want = mul(ratio(Monomial(Rat(1), Rat(-n)), Rat(2 * n + 1), Rat(1)),
                       partial_theta(n));
    CHECK(eq12(w0.stages[2].alpha(n), want));
  }
  // Parameter move a -> a/Q:
  //   alpha3_n = q^(-n) (1+2 sum_{r<=n} q^(2r^2))
  //            - q^( n) (1+2 sum_{r<=n-1} q^(2r^2)).
  for (std::int64_t n = 1; n <= 4; ++n) {
    QSeries want = sub(
        mul(QSeries::monomial(Rat(1), Rat(-n)), partial_theta(n)),
        mul(QSeries::monomial(Rat(1), Rat(n)), partial_theta(n - 1)));
    CHECK(eq12(w0.stages[3].alpha(n), want));
  }

  BaileyChain w1 = bailey_chain("w-T1", kPrec);
  for (std::int64_t n = 1; n <= 4; ++n)
    CHECK(eq12(w1.stages[1].alpha(n),
               QSeries::monomial(Rat(1), Rat(2 * n * n + 2 * n))));
  CHECK(eq12(w1.stages[2].alpha(0), QSeries::one()));
  for (std::int64_t n = 1; n <= 4; ++n) {
    QSeries want =
        sub(ratio(Monomial(Rat(1), Rat(2 * n * n + 2 * n)), Rat(1),
                  Rat(2 * n + 1)),
            ratio(Monomial(Rat(1), Rat(2 * n * n - 1)), Rat(1),
                  Rat(2 * n - 1)));
    CHECK(eq12(w1.stages[2].alpha(n), want));
  }
}

TEST_CASE("general-rho transform") {
  BaileyChain axb0 = bailey_chain("axb-T0", kPrec);
  const BaileyPair& seed = axb0.stages[0];

  // Both parameters at infinity reduce to the plain limit move.
  BaileyPair viaLimit = bp_rho_limit(seed);
  BaileyPair viaGeneral = bp_general_rho(seed, std::nullopt, std::nullopt);
  for (std::int64_t n = 0; n <= 4; ++n) {
    CHECK(!first_difference(viaLimit.alpha(n), viaGeneral.alpha(n)));
    CHECK(!first_difference(viaLimit.beta(n), viaGeneral.beta(n)));
  }

  // Finite parameters still produce a Bailey pair.
  BaileyPair mixed = bp_general_rho(seed, Monomial(Rat(-1), Rat(1)), std::nullopt);
  CHECK(!bp_check(mixed, 4).has_value());
  BaileyPair both = bp_general_rho(seed, Monomial(Rat(-1), Rat(1)),
                                   Monomial(Rat(-1), Rat(2)));
  CHECK(!bp_check(both, 4).has_value());
  CHECK(!bp_limit_identity(both).has_value());
}

TEST_CASE("parameter-moving transforms") {
  BaileyChain axb1 = bailey_chain("axb-T1", kPrec);
  const BaileyPair& seed = axb1.stages[0];  // a = q, nome q
  CHECK(seed.a() == Monomial(Rat(1), Rat(1)));

  BaileyPair b0 = bp_lovejoy_b0(seed);
  CHECK(b0.a() == Monomial(Rat(1), Rat(2)));
  CHECK(!bp_check(b0, 4).has_value());

  BaileyPair binf = bp_lovejoy_binf(seed);
  CHECK(binf.a() == Monomial(Rat(1), Rat(2)));
  CHECK(!bp_check(binf, 4).has_value());

  BaileyPair bgen = bp_lovejoy_general_b(seed, Monomial(Rat(-1), Rat(1)));
  CHECK(bgen.a() == Monomial(Rat(1), Rat(2)));
  CHECK(!bp_check(bgen, 4).has_value());

  BaileyPair down = bp_mclaughlin(seed);
  CHECK(down.a() == Monomial(Rat(1), Rat(0)));
  CHECK(!bp_check(down, 4).has_value());

  // beta defaults to the defining relation when no closed form is given.
  for (std::int64_t n = 0; n <= 3; ++n)
    CHECK(!first_difference(b0.beta(n), b0.beta_from_definition(n)));
}

TEST_CASE("ill-defined parameter move") {
  BaileyPair pair(Monomial(Rat(1), Rat(-2)), Rat(1), Rat(8),
                  [](std::int64_t n) {
                    return n == 0 ? QSeries::one() : QSeries::zero();
                  });
  expect_kind("IllDefinedAtIndex", [&] {
    BaileyPair moved = bp_mclaughlin(pair);
    moved.alpha(1);
  });
  expect_kind("DomainError", [] {
    BaileyPair(Monomial(Rat(1), Rat(0)), Rat(0), Rat(8),
               [](std::int64_t) { return QSeries::one(); });
  });
}

}  // TEST_SUITE
