#include <cstdint>

#include "doctest.h"
#include "nahmforge/ctext.hpp"
#include "nahmforge/pochhammer.hpp"
#include "test_util.hpp"

using namespace nahmforge;
using nahmforge::testutil::expect_kind;

TEST_SUITE("ctext") {

TEST_CASE("theta-style factors and constant-term extraction") {
  auto term = [](std::int64_t n) {
    return Monomial(Rat(1), Rat(n * n));
  };
  BivLaurent f = biv_from_theta(term, -2, 2, Rat(10));
  CHECK(f.lo == -2);
  CHECK(f.hi == 2);
  CHECK(ct_y(f).coeff(Rat(0)) == 1);
  CHECK(f.at(1).coeff(Rat(1)) == 1);
  CHECK(f.at(-2).coeff(Rat(4)) == 1);

  BivLaurent noZero = biv_from_theta(term, 1, 2, Rat(10));
  expect_kind("DegreeNotAttested", [&] { ct_y(noZero); });
}

TEST_CASE("stratified Pochhammer expansions") {
  const Rat prec(10);
  // (-q y; q^2)_inf = sum_k q^(k^2) y^k / (q^2;q^2)_k.
  BivLaurent p = biv_poch_inf(Monomial(Rat(-1), Rat(1)), 1, Rat(2), 0, 3, prec);
  for (std::int64_t k = 0; k <= 3; ++k) {
    QSeries want =
        mul(QSeries::monomial(Rat(1), Rat(k * k)),
            inv(pochhammer_finite(Monomial(Rat(1), Rat(2)), Rat(2), k), Rat(8)));
    CHECK(equal_to_precision(p.at(k), want, Rat(8)));
  }

  // 1/(q y; q^2)_inf = sum_k q^k y^k / (q^2;q^2)_k.
  BivLaurent ip =
      biv_inv_poch_inf(Monomial(Rat(1), Rat(1)), 1, Rat(2), 0, 3, prec);
  for (std::int64_t k = 0; k <= 3; ++k) {
    QSeries want =
        mul(QSeries::monomial(Rat(1), Rat(k)),
            inv(pochhammer_finite(Monomial(Rat(1), Rat(2)), Rat(2), k), Rat(8)));
    CHECK(equal_to_precision(ip.at(k), want, Rat(8)));
  }

  // Negative y-power mirrors the strata.
  BivLaurent m = biv_poch_inf(Monomial(Rat(-1), Rat(1)), -1, Rat(2), -3, 0, prec);
  for (std::int64_t k = 0; k <= 3; ++k)
    CHECK(equal_to_precision(m.at(-k), p.at(k), Rat(8)));

  expect_kind("DomainError", [&] {
    biv_poch_inf(Monomial(Rat(-1), Rat(1)), 0, Rat(2), 0, 3, prec);
  });
  expect_kind("NonPositiveBase", [&] {
    biv_poch_inf(Monomial(Rat(-1), Rat(1)), 1, Rat(0), 0, 3, prec);
  });
}

TEST_CASE("windowed product against a hand convolution") {
  const Rat prec(8);
  BivLaurent up = biv_poch_inf(Monomial(Rat(-1), Rat(1)), 1, Rat(2), 0, 6, prec);
  BivLaurent dn = biv_poch_inf(Monomial(Rat(-1), Rat(1)), -1, Rat(2), -6, 0, prec);
  BivLaurent prod = biv_mul(up, dn, -6, 6);

  // Constant stratum: sum_k q^(2 k^2) / ((q^2;q^2)_k)^2.
  QSeries want = QSeries::zero_to(prec);
  for (std::int64_t k = 0; k <= 2; ++k) {
    QSeries inner =
        inv(pochhammer_finite(Monomial(Rat(1), Rat(2)), Rat(2), k), prec);
    want = add(want,
               mul(QSeries::monomial(Rat(1), Rat(2 * k * k)), mul(inner, inner)));
  }
  CHECK(equal_to_precision(ct_y(prod), want, prec));
}

TEST_CASE("four-argument kernel: single and double layers agree") {
  Monomial q1(Rat(1), Rat(1));
  QSeries e8 = ct_f_eval(q1, q1, q1, q1, Rat(8));
  QSeries e12 = ct_f_eval(q1, q1, q1, q1, Rat(12));
  CHECK(equal_to_precision(e8, e12, Rat(8)));
  CHECK(e8.coeff(Rat(0)) != 0);

  QSeries d8 = ct_f_eval_double(q1, q1, q1, q1, Rat(8));
  CHECK(equal_to_precision(e8, d8, Rat(8)));

  // Asymmetric arguments exercise the substitution shift.
  Monomial q2(Rat(1), Rat(2)), qm(Rat(1), Rat(-1));
  QSeries a8 = ct_f_eval(q2, q1, q1, qm, Rat(8));
  QSeries a12 = ct_f_eval(q2, q1, q1, qm, Rat(12));
  CHECK(equal_to_precision(a8, a12, Rat(8)));
  CHECK(equal_to_precision(a8, ct_f_eval_double(q2, q1, q1, qm, Rat(8)),
                           Rat(8)));
}

}  // TEST_SUITE
