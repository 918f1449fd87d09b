#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "qkz/series.hpp"

using namespace qkz;
using qkz::testutil::random_qseries;
using qkz::testutil::random_rational;
using qkz::testutil::random_unit_series;

namespace {
QSeries qs(int val, std::vector<long> cs, int trunc) {
    std::vector<Rational> rs(cs.size());
    for (size_t i = 0; i < cs.size(); ++i) rs[i] = Rational(cs[i]);
    return QSeries(kQVar, val, std::move(rs), trunc);
}
}  // namespace

TEST_CASE("basic ring operations") {
    QSeries a = qs(0, {1, 1}, 3);   // 1 + q + O(q^3)
    QSeries b = qs(0, {1, -1}, 3);  // 1 - q + O(q^3)
    QSeries prod = a * b;
    CHECK(prod.coeff(0) == Rational(1));
    CHECK(prod.coeff(1) == Rational(0));
    CHECK(prod.coeff(2) == Rational(-1));
    CHECK(prod.truncation_order() == 3);

    // Laurent exponent arithmetic: q^{-1} * q = 1 with valuation 0.
    QSeries qinv = QSeries::monomial(kQVar, -1, Rational(1));
    QSeries q1 = QSeries::identity(kQVar);
    QSeries one = qinv * q1;
    CHECK(one.valuation() == 0);
    CHECK(one == QSeries::ring_one());

    // Minimum-window rule.
    QSeries t5 = random_unit_series().truncate(5);
    CHECK((t5 * t5).truncation_order() <= 5 + t5.valuation() + t5.valuation() + 5);
    QSeries c5 = qs(0, {2, 3, 4, 5, 6}, 5);
    CHECK((c5 * c5).truncation_order() == 5);
}

TEST_CASE("variable tag mismatch is an error") {
    QSeries a = QSeries::identity(kQVar);
    QSeries b = QSeries::identity(kZVar);
    CHECK_THROWS_AS(a * b, ring_error);
    CHECK_NOTHROW(a * QSeries::ring_one());
}

TEST_CASE("invert") {
    QSeries a = qs(0, {1, -1, 0}, 3);
    QSeries inv = a.invert();
    CHECK(inv.coeff(0) == Rational(1));
    CHECK(inv.coeff(1) == Rational(1));
    CHECK(inv.coeff(2) == Rational(1));

    // Non-unit leading coefficient: the Fourier representation of 1/Theta.
    SPoly lead(kSVar);
    lead.add_term(1, Rational(1));
    lead.add_term(-1, Rational(-1));
    QSPoly theta_ish = QSPoly::monomial(kQVar, 0, lead, 4);
    CHECK_THROWS_AS(theta_ish.invert(), precondition_error);
}

TEST_CASE("invert/mul roundtrip on 100 random unit series") {
    for (int i = 0; i < 100; ++i) {
        QSeries a = random_unit_series();
        QSeries inv = a.invert();
        CHECK(inv.valuation() == -a.valuation());
        CHECK(a * inv == QSeries::ring_one());
    }
}

TEST_CASE("exp and log") {
    QSeries zero = QSeries::zero_to_order(kQVar, 5);
    CHECK(zero.exp_series() == QSeries::ring_one());

    QSeries a = qs(1, {1, 1}, 4);  // q + q^2 + O(q^4)
    CHECK(a.exp_series().log_series() == a);
    CHECK_THROWS_AS(qs(0, {1, 1}, 3).exp_series(), precondition_error);
    CHECK_THROWS_AS(qs(0, {2, 1}, 3).log_series(), precondition_error);

    for (int i = 0; i < 50; ++i) {
        QSeries f = random_qseries(1, 2, 5);
        CHECK(f.exp_series().log_series() == f);
    }
}

TEST_CASE("compose") {
    // 1/(1-t) composed with q^2, mod q^5.
    QSeries outer = qs(0, {1, 1, 1, 1, 1}, 5);
    QSeries inner = QSeries::monomial(kQVar, 2, Rational(1)).truncate(5);
    QSeries got = compose(outer, inner);
    CHECK(got.coeff(0) == Rational(1));
    CHECK(got.coeff(2) == Rational(1));
    CHECK(got.coeff(4) == Rational(1));
    CHECK(got.coeff(1) == Rational(0));
    CHECK(got.coeff(3) == Rational(0));

    // compose(t, g) = g.
    QSeries g = random_qseries(1, 2, 5);
    CHECK(compose(QSeries::identity(kQVar), g) == g);
}

TEST_CASE("lagrange inversion") {
    CHECK(lagrange_invert(QSeries::identity("t").truncate(6)) == QSeries::identity("t").truncate(6));

    // t - t^2 inverts to the Catalan generating series; oracle by direct
    // substitution below.
    QSeries a = qs(1, {1, -1, 0}, 4);
    QSeries b = lagrange_invert(a);
    CHECK(b.coeff(1) == Rational(1));
    CHECK(b.coeff(2) == Rational(1));
    CHECK(b.coeff(3) == Rational(2));
    CHECK(compose(a, b) == QSeries::identity(kQVar).truncate(4));

    for (int i = 0; i < 50; ++i) {
        QSeries f = random_qseries(1, 1, 6);
        if (f.coeff(1).is_zero()) continue;
        QSeries inv = lagrange_invert(f);
        CHECK(compose(f, inv) == QSeries::identity(kQVar).truncate(inv.truncation_order()));
        CHECK(compose(inv, f) == QSeries::identity(kQVar).truncate(inv.truncation_order()));
    }
}

TEST_CASE("euler_derive") {
    QSeries q3 = QSeries::monomial(kQVar, 3, Rational(1));
    auto dtau = [](int n) { return Rational(n); };
    CHECK(q3.euler_derive(dtau) == q3.scalar_mul(Rational(3)));

    // D_z on the s-variable: s = e^{z/2} so s^4 -> 2 s^4.
    SPoly s4 = SPoly::monomial(kSVar, 4, Rational(1));
    SPoly ds4 = s4.map_coeffs([](int j, const Rational& c) { return c.scalar_mul(Rational(j, 2)); });
    CHECK(ds4 == s4.scalar_mul(Rational(2)));

    // Leibniz for the Euler operator, exactly, on random products.
    for (int i = 0; i < 50; ++i) {
        QSeries f = random_qseries(), g = random_qseries();
        QSeries lhs = (f * g).euler_derive(dtau);
        QSeries rhs = f.euler_derive(dtau) * g + f * g.euler_derive(dtau);
        CHECK(lhs == rhs);
    }
}

TEST_CASE("ring axioms on random truncated series") {
    for (int i = 0; i < 50; ++i) {
        QSeries a = random_qseries(), b = random_qseries(), c = random_qseries();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a + b == b + a);
        CHECK(a * b == b * a);
        CHECK(a - a == QSeries::zero_to_order(kQVar, a.truncation_order()));
    }
}

TEST_CASE("nested coefficient ring: q-series with s-poly coefficients") {
    for (int i = 0; i < 25; ++i) {
        QSPoly a = qkz::testutil::random_qspoly(), b = qkz::testutil::random_qspoly(),
               c = qkz::testutil::random_qspoly();
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
    }
}

TEST_CASE("coefficient identity check (power-series lemma)") {
    QSeries f = qs(0, {1, 1}, 10);  // 1 + x
    for (int m = 1; m <= 6; ++m) CHECK(coefficient_identity_check(f, 1, m));

    for (int i = 0; i < 20; ++i) {
        std::vector<Rational> cs(7);
        for (auto& cc : cs) cc = random_rational();
        QSeries r(kQVar, 0, std::move(cs), 8);
        CHECK(coefficient_identity_check(r, 2, 5));
        CHECK(coefficient_identity_check(r, 3, 6));
    }
}

TEST_CASE("zero normalization and valuation") {
    QSeries z = qs(0, {0, 0, 1, 0}, 6);
    CHECK(z.valuation() == 2);
    CHECK(z.coeff(5) == Rational(0));
    QSeries allzero = qs(0, {0, 0, 0}, 3);
    CHECK(allzero.is_zero());
    CHECK(allzero.truncation_order() == 3);
}
