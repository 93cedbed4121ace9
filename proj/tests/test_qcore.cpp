#include <random>
#include <vector>

#include "doctest.h"
#include "nahmforge/pochhammer.hpp"
#include "nahmforge/qseries.hpp"
#include "nahmforge/rational.hpp"
#include "test_util.hpp"

using namespace nahmforge;
using nahmforge::testutil::expect_kind;

namespace {

QSeries exact_poly(std::int64_t denomD, std::int64_t minExp,
                   std::vector<Rat> coeffs) {
  return QSeries(denomD, minExp, std::move(coeffs), std::nullopt);
}

QSeries random_poly(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-5, 5);
  std::uniform_int_distribution<int> den(1, 3);
  std::uniform_int_distribution<std::int64_t> lo(-4, 2);
  std::vector<Rat> coeffs;
  for (int i = 0; i < 8; ++i) coeffs.emplace_back(num(rng), den(rng));
  return exact_poly(2, lo(rng), std::move(coeffs));
}

bool identical(const QSeries& a, const QSeries& b) {
  return !first_difference(a, b).has_value() &&
         a.precision() == b.precision();
}

}  // namespace

TEST_SUITE("qcore") {

TEST_CASE("rational parsing and helpers") {
  CHECK(parse_rat("3/4") == Rat(3, 4));
  CHECK(parse_rat("-1/2") == Rat(-1, 2));
  CHECK(parse_rat("0") == Rat(0));
  CHECK(parse_rat("7") == Rat(7));
  CHECK(parse_rat("-6/4") == Rat(-3, 2));
  CHECK(rat_to_string(Rat(-3, 2)) == "-3/2");
  CHECK(rat_to_string(Rat(5)) == "5");
  expect_kind("SyntaxError", [] { parse_rat("abc"); });
  expect_kind("VanishingDenominator", [] { parse_rat("1/0"); });

  CHECK(rat_floor(Rat(-3, 2)) == Int(-2));
  CHECK(rat_ceil(Rat(-3, 2)) == Int(-1));
  CHECK(rat_floor(Rat(7, 2)) == Int(3));
  CHECK(rat_is_int(Rat(4, 2)));
  CHECK(!rat_is_int(Rat(1, 2)));
  CHECK(rat_num(Rat(-3, 2)) == Int(-3));
  CHECK(rat_den(Rat(-3, 2)) == Int(2));
  CHECK(lcm_int(Int(4), Int(6)) == Int(12));
  CHECK(to_i64(Int(5)) == 5);
  CHECK(to_i64(rat_num(Rat(-7, 2))) == -7);
}

TEST_CASE("monomial parsing and arithmetic") {
  CHECK(parse_monomial("2") == Monomial(Rat(2), Rat(0)));
  CHECK(parse_monomial("-1/2") == Monomial(Rat(-1, 2), Rat(0)));
  CHECK(parse_monomial("q") == Monomial(Rat(1), Rat(1)));
  CHECK(parse_monomial("-q") == Monomial(Rat(-1), Rat(1)));
  CHECK(parse_monomial("q^(3/2)") == Monomial(Rat(1), Rat(3, 2)));
  CHECK(parse_monomial("-q^(2)") == Monomial(Rat(-1), Rat(2)));
  CHECK(parse_monomial("2*q^(1)") == Monomial(Rat(2), Rat(1)));
  CHECK(parse_monomial("-1/2*q^(3)") == Monomial(Rat(-1, 2), Rat(3)));
  CHECK(parse_monomial("0") == Monomial(Rat(0), Rat(0)));
  expect_kind("SyntaxError", [] { parse_monomial("q^2"); });
  expect_kind("SyntaxError", [] { parse_monomial(""); });

  Monomial m = Monomial(Rat(2), Rat(3)) * Monomial(Rat(-1), Rat(1, 2));
  CHECK(m == Monomial(Rat(-2), Rat(7, 2)));
  CHECK(monomial_inv(Monomial(Rat(2), Rat(3))) ==
        Monomial(Rat(1, 2), Rat(-3)));
  CHECK(monomial_pow(Monomial(Rat(2), Rat(1)), 3) ==
        Monomial(Rat(8), Rat(3)));
  expect_kind("VanishingDenominator",
              [] { monomial_inv(Monomial(Rat(0), Rat(0))); });

  for (const char* s : {"-1/2*q^(3)", "q^(3/2)", "-q", "5"}) {
    Monomial parsed = parse_monomial(s);
    CHECK(parse_monomial(monomial_to_string(parsed)) == parsed);
  }
}

TEST_CASE("series construction and attestation") {
  QSeries z = QSeries::zero();
  CHECK(z.is_exact());
  CHECK(z.is_zero());
  CHECK(!z.min_exponent().has_value());

  QSeries zt = QSeries::zero_to(Rat(5));
  CHECK(!zt.is_exact());
  CHECK(zt.is_zero());
  CHECK(zt.coeff(Rat(3)) == 0);
  expect_kind("DegreeNotAttested", [&] { zt.coeff(Rat(5)); });
  expect_kind("DegreeNotAttested", [&] { zt.coeff(Rat(7)); });

  QSeries m = QSeries::monomial(Rat(3, 2), Rat(1, 2));
  CHECK(m.coeff(Rat(1, 2)) == Rat(3, 2));
  CHECK(m.coeff(Rat(0)) == 0);
  CHECK(m.coeff(Rat(100)) == 0);  // exact: every absent exponent is zero
  CHECK(m.dump() == "1/2: 3/2");
  CHECK(m.min_exponent() == Rat(1, 2));
  CHECK(m.max_exponent() == Rat(1, 2));

  // Terms at or above the stated precision are dropped on construction.
  QSeries s(1, 0, {Rat(1), Rat(2), Rat(3)}, Rat(2));
  CHECK(s.coeff(Rat(1)) == 2);
  CHECK(s.max_exponent() == Rat(1));
  expect_kind("DegreeNotAttested", [&] { s.coeff(Rat(2)); });

  expect_kind("DomainError",
              [] { QSeries(0, 0, {Rat(1)}, std::nullopt); });

  QSeries two = exact_poly(1, 0, {Rat(1), Rat(0), Rat(4)});
  auto items = two.items();
  REQUIRE(items.size() == 2);
  CHECK(items[0].first == Rat(0));
  CHECK(items[0].second == Rat(1));
  CHECK(items[1].first == Rat(2));
  CHECK(items[1].second == Rat(4));
  CHECK(two.dump() == "0: 1\n2: 4");
}

TEST_CASE("ring axioms on exact polynomials") {
  std::mt19937 rng(20260819);
  for (int iter = 0; iter < 25; ++iter) {
    QSeries a = random_poly(rng), b = random_poly(rng), c = random_poly(rng);
    CHECK(identical(add(a, b), add(b, a)));
    CHECK(identical(add(add(a, b), c), add(a, add(b, c))));
    CHECK(identical(mul(a, b), mul(b, a)));
    CHECK(identical(mul(mul(a, b), c), mul(a, mul(b, c))));
    CHECK(identical(mul(a, add(b, c)), add(mul(a, b), mul(a, c))));
    CHECK(identical(add(a, neg(a)), QSeries::zero()));
    CHECK(identical(sub(a, b), add(a, neg(b))));
    CHECK(identical(mul(a, QSeries::one()), a));
    CHECK(identical(mul_scalar(a, Rat(3, 7)),
                    mul(a, QSeries::monomial(Rat(3, 7), Rat(0)))));
  }
}

TEST_CASE("precision propagation") {
  QSeries a = truncate(exact_poly(1, 0, {Rat(1), Rat(1), Rat(1), Rat(1)}),
                       Rat(3));
  QSeries b = exact_poly(1, 0, {Rat(1), Rat(-1)});
  QSeries p = mul(a, b);
  CHECK(!p.is_exact());
  CHECK(p.coeff(Rat(0)) == 1);
  CHECK(p.coeff(Rat(1)) == 0);
  CHECK(p.coeff(Rat(2)) == 0);
  expect_kind("DegreeNotAttested", [&] { p.coeff(Rat(3)); });

  // An attested zero still taints the sum's attestation.
  QSeries s = add(QSeries::one(), QSeries::zero_to(Rat(4)));
  CHECK(!s.is_exact());
  CHECK(s.coeff(Rat(3)) == 0);
  expect_kind("DegreeNotAttested", [&] { s.coeff(Rat(4)); });

  // Multiplying by an exact zero annihilates exactly.
  CHECK(mul(QSeries::zero(), QSeries::zero_to(Rat(4))).is_exact());
}

TEST_CASE("inverse") {
  QSeries im = inv(QSeries::monomial(Rat(2), Rat(1)));
  CHECK(im.is_exact());
  CHECK(im.coeff(Rat(-1)) == Rat(1, 2));

  QSeries oneMinusQ = exact_poly(1, 0, {Rat(1), Rat(-1)});
  expect_kind("DomainError", [&] { inv(oneMinusQ); });

  QSeries geo = inv(oneMinusQ, Rat(10));
  for (int k = 0; k < 10; ++k) CHECK(geo.coeff(Rat(k)) == 1);
  CHECK(equal_to_precision(mul(geo, oneMinusQ), QSeries::one(), Rat(10)));

  // Laurent leading term.
  QSeries lau = inv(exact_poly(1, -1, {Rat(1), Rat(1)}), Rat(5));
  CHECK(lau.coeff(Rat(1)) == 1);   // 1/(q^-1 + 1) = q - q^2 + q^3 - ...
  CHECK(lau.coeff(Rat(2)) == -1);

  expect_kind("ZeroLeadingTerm", [] { inv(QSeries::zero_to(Rat(3))); });
}

TEST_CASE("substitution, truncation, powers") {
  QSeries onePlusQ = exact_poly(1, 0, {Rat(1), Rat(1)});
  QSeries sq = substitute_power(onePlusQ, Rat(2));
  CHECK(sq.coeff(Rat(2)) == 1);
  CHECK(sq.coeff(Rat(1)) == 0);

  QSeries half = substitute_power(QSeries::q(), Rat(1, 2));
  CHECK(half.coeff(Rat(1, 2)) == 1);

  QSeries attested = substitute_power(truncate(onePlusQ, Rat(10)), Rat(3));
  CHECK(attested.precision() == Rat(30));
  expect_kind("NonPositivePower",
              [&] { substitute_power(onePlusQ, Rat(0)); });
  expect_kind("NonPositivePower",
              [&] { substitute_power(onePlusQ, Rat(-2)); });

  QSeries cube = pow_int(onePlusQ, 3);
  CHECK(cube.coeff(Rat(0)) == 1);
  CHECK(cube.coeff(Rat(1)) == 3);
  CHECK(cube.coeff(Rat(2)) == 3);
  CHECK(cube.coeff(Rat(3)) == 1);
  CHECK(identical(pow_int(onePlusQ, 0), QSeries::one()));
  QSeries negPow = pow_int(QSeries::monomial(Rat(2), Rat(1)), -2);
  CHECK(negPow.coeff(Rat(-2)) == Rat(1, 4));

  QSeries t = truncate(cube, Rat(2));
  CHECK(t.precision() == Rat(2));
  CHECK(t.coeff(Rat(1)) == 3);
  expect_kind("DegreeNotAttested", [&] { t.coeff(Rat(2)); });
}

TEST_CASE("comparison") {
  QSeries a = exact_poly(1, 0, {Rat(1), Rat(1)});
  QSeries b = exact_poly(1, 0, {Rat(1), Rat(1), Rat(0), Rat(1)});
  CHECK(first_difference(a, b) == Rat(3));
  CHECK(!first_difference(a, truncate(b, Rat(3))).has_value());
  CHECK(first_difference(a, truncate(b, Rat(4))) == Rat(3));
  CHECK(!first_difference(a, a).has_value());

  CHECK(equal_to_precision(a, truncate(b, Rat(3)), Rat(3)));
  CHECK(!equal_to_precision(a, b, Rat(4)));
  expect_kind("DegreeNotAttested",
              [&] { equal_to_precision(a, truncate(b, Rat(3)), Rat(4)); });
}

TEST_CASE("finite Pochhammer products") {
  QSeries p3 = pochhammer_finite(Monomial(Rat(1), Rat(1)), Rat(1), 3);
  // (1-q)(1-q^2)(1-q^3) = 1 - q - q^2 + q^4 + q^5 - q^6
  CHECK(p3.is_exact());
  CHECK(p3.coeff(Rat(0)) == 1);
  CHECK(p3.coeff(Rat(1)) == -1);
  CHECK(p3.coeff(Rat(2)) == -1);
  CHECK(p3.coeff(Rat(3)) == 0);
  CHECK(p3.coeff(Rat(4)) == 1);
  CHECK(p3.coeff(Rat(5)) == 1);
  CHECK(p3.coeff(Rat(6)) == -1);

  CHECK(identical(pochhammer_finite(Monomial(Rat(1), Rat(1)), Rat(1), 0),
                  QSeries::one()));
  // A zero argument gives the empty product.
  CHECK(identical(pochhammer_finite(Monomial(Rat(0), Rat(0)), Rat(1), 5),
                  QSeries::one()));
  expect_kind("NegativeLength",
              [] { pochhammer_finite(Monomial(Rat(1), Rat(1)), Rat(1), -1); });
  expect_kind("NonPositiveBase",
              [] { pochhammer_finite(Monomial(Rat(1), Rat(1)), Rat(0), 2); });
  expect_kind("NonPositiveBase",
              [] { pochhammer_inf(Monomial(Rat(1), Rat(1)), Rat(-1), Rat(5)); });
}

TEST_CASE("Euler function matches the pentagonal-number expansion") {
  const Rat prec(60);
  QSeries e = pochhammer_inf(Monomial(Rat(1), Rat(1)), Rat(1), prec);
  std::vector<Rat> expected(60, Rat(0));
  for (std::int64_t k = -10; k <= 10; ++k) {
    Int e2 = Int(k) * (3 * Int(k) - 1) / 2;
    if (e2 >= 0 && e2 < 60)
      expected[static_cast<std::size_t>(static_cast<std::int64_t>(e2))] +=
          (k % 2 == 0) ? 1 : -1;
  }
  for (int n = 0; n < 60; ++n) CHECK(e.coeff(Rat(n)) == expected[n]);
}

TEST_CASE("partition generating function matches dynamic programming") {
  const int N = 50;
  QSeries p = inv_pochhammer_inf(Monomial(Rat(1), Rat(1)), Rat(1), Rat(N));
  std::vector<Int> dp(N, Int(0));
  dp[0] = 1;
  for (int part = 1; part < N; ++part)
    for (int j = part; j < N; ++j) dp[j] += dp[j - part];
  for (int n = 0; n < N; ++n) CHECK(p.coeff(Rat(n)) == Rat(dp[n]));

  QSeries prod = mul(p, pochhammer_inf(Monomial(Rat(1), Rat(1)), Rat(1), Rat(N)));
  CHECK(equal_to_precision(prod, QSeries::one(), Rat(N)));

  // Parts >= 2 only: p(n) minus the count using at least one part 1.
  QSeries p2 = inv_pochhammer_inf(Monomial(Rat(1), Rat(2)), Rat(1), Rat(20));
  for (int n = 1; n < 20; ++n)
    CHECK(p2.coeff(Rat(n)) == Rat(dp[n] - dp[n - 1]));
}

TEST_CASE("infinite Pochhammer with nonpositive argument exponents") {
  // (-q^(-1/3); q^2)_inf: finitely many factors dip below exponent zero.
  QSeries s = pochhammer_inf(Monomial(Rat(-1), Rat(-1, 3)), Rat(2), Rat(5));
  CHECK(s.min_exponent() == Rat(-1, 3));
  CHECK(s.coeff(Rat(-1, 3)) == 1);
  CHECK(s.coeff(Rat(0)) == 1);
  CHECK(s.coeff(Rat(5, 3)) == 1);   // from the k=1 factor
  CHECK(s.coeff(Rat(4, 3)) == 1);   // cross term q^(-1/3) * q^(5/3)

  // (q^-1; q)_inf hits the factor (1 - q^-1 q) = 0: identically zero.
  QSeries z = pochhammer_inf(Monomial(Rat(1), Rat(-1)), Rat(1), Rat(5));
  CHECK(z.is_zero());

  // Inverse with negative valuation: 1/(-q^(-1);q^2)_inf starts at q^(+1... )
  QSeries iv =
      inv_pochhammer_inf(Monomial(Rat(-1), Rat(-1)), Rat(2), Rat(5));
  QSeries back = mul(iv, pochhammer_inf(Monomial(Rat(-1), Rat(-1)), Rat(2), Rat(6)));
  CHECK(equal_to_precision(back, QSeries::one(), Rat(4)));
}

TEST_CASE("basic hypergeometric evaluations") {
  Monomial zero(Rat(0), Rat(0)), q1(Rat(1), Rat(1));
  // sum z^n / (q;q)_n = 1/(z;q)_inf at z = q.
  QSeries lhs = hyper_phi({zero}, {}, Rat(1), q1, Rat(30));
  QSeries rhs = inv_pochhammer_inf(q1, Rat(1), Rat(30));
  CHECK(!first_difference(lhs, rhs).has_value());

  // sum (-1)^n q^(n(n-1)/2) z^n / (q;q)_n = (z;q)_inf at z = q.
  QSeries lhs2 = hyper_phi({}, {}, Rat(1), q1, Rat(30));
  QSeries rhs2 = pochhammer_inf(q1, Rat(1), Rat(30));
  CHECK(!first_difference(lhs2, rhs2).has_value());

  expect_kind("VanishingDenominator", [&] {
    hyper_phi({}, {Monomial(Rat(1), Rat(0))}, Rat(1), q1, Rat(10));
  });
  expect_kind("DivergentSeries", [&] {
    hyper_phi({zero}, {}, Rat(1), Monomial(Rat(1), Rat(0)), Rat(10));
  });
}

}  // TEST_SUITE
