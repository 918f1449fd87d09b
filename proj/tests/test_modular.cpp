#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "qkz/modular.hpp"

using namespace qkz;
using namespace qkz::modular;
using qkz::testutil::rng;

namespace {
QuasiModularPoly random_homogeneous(int weight) {
    auto keys = weight_monomials(weight, true);
    QuasiModularPoly p;
    for (const auto& k : keys) p.add_term(k, qkz::testutil::random_rational());
    return p;
}
}  // namespace

TEST_CASE("bernoulli numbers") {
    CHECK(bernoulli(0) == Rational(1));
    CHECK(bernoulli(1) == Rational(-1, 2));
    CHECK(bernoulli(2) == Rational(1, 6));
    CHECK(bernoulli(4) == Rational(-1, 30));
    CHECK(bernoulli(6) == Rational(1, 42));
    CHECK(bernoulli(8) == Rational(-1, 30));
    CHECK(bernoulli(10) == Rational(5, 66));
    CHECK(bernoulli(12) == Rational(-691, 2730));
}

TEST_CASE("Eisenstein series expansions") {
    QSeries g2 = eisenstein_G(2, 7);
    CHECK(g2.coeff(0) == Rational(-1, 24));
    CHECK(g2.coeff(1) == Rational(1));
    CHECK(g2.coeff(2) == Rational(3));
    CHECK(g2.coeff(3) == Rational(4));
    CHECK(g2.coeff(4) == Rational(7));
    CHECK(g2.coeff(5) == Rational(6));
    CHECK(g2.coeff(6) == Rational(12));

    CHECK(eisenstein_G(4, 3).coeff(0) == Rational(1, 240));
    CHECK(eisenstein_G(6, 3).coeff(0) == Rational(-1, 504));

    QSeries e2 = eisenstein_E(2, 5);
    CHECK(e2.coeff(0) == Rational(1));
    CHECK(e2.coeff(1) == Rational(-24));
    CHECK(e2.coeff(2) == Rational(-72));
    CHECK(e2.coeff(3) == Rational(-96));
    CHECK(e2.coeff(4) == Rational(-168));
    CHECK(eisenstein_E(4, 3).coeff(1) == Rational(240));
    CHECK(eisenstein_E(6, 2).coeff(1) == Rational(-504));

    CHECK_THROWS_AS(eisenstein_G(3, 5), precondition_error);
    CHECK_THROWS_AS(eisenstein_G(0, 5), precondition_error);
}

TEST_CASE("delta and eta") {
    QSeries d = delta(6);
    CHECK(d.valuation() == 1);
    CHECK(d.coeff(1) == Rational(1));
    CHECK(d.coeff(2) == Rational(-24));
    CHECK(d.coeff(3) == Rational(252));
    CHECK(d.coeff(4) == Rational(-1472));
    CHECK(d.coeff(5) == Rational(4830));

    // Delta = eta^24 coefficientwise.
    FracQSeries e = eta(6);
    FracQSeries e24 = e.pow(24).normalize();
    CHECK(e24.denom == 1);
    CHECK(e24 == FracQSeries::from_integral(d));

    // eta^24 / Delta = 1.
    FracQSeries ratio = e24 / FracQSeries::from_integral(d);
    CHECK(ratio == FracQSeries::from_integral(QSeries::ring_one().truncate(4)));

    // eta(2 tau) lives on the 1/12 lattice.
    FracQSeries e2tau = eta(6).rescale_q(2);
    CHECK(e2tau.denom == 12);
    CHECK(e2tau.body.valuation() == 1);

    // 1/Delta has valuation -1 and coefficients 1, 24, ...
    QSeries dinv = delta(8).invert();
    CHECK(dinv.valuation() == -1);
    CHECK(dinv.coeff(-1) == Rational(1));
    CHECK(dinv.coeff(0) == Rational(24));
    CHECK(dinv * d == QSeries::ring_one().truncate(5));
}

TEST_CASE("ramanujan derivation") {
    // Weight bookkeeping.
    for (int w : {2, 4, 6, 8}) {
        QuasiModularPoly f = random_homogeneous(w);
        QuasiModularPoly df = ramanujan_dtau(f);
        if (!df.is_zero()) CHECK(df.weight() == w + 2);
    }
    // Evaluation commutes with D_tau, tested to q^20.
    const int order = 20;
    for (int i = 0; i < 10; ++i) {
        QuasiModularPoly f = random_homogeneous(2 + 2 * (i % 5));
        QSeries lhs = ramanujan_dtau(f).evaluate(order);
        QSeries rhs = f.evaluate(order).euler_derive([](int n) { return Rational(n); });
        CHECK(lhs == rhs);
    }
    // ... and in particular on G2 itself.
    QSeries dg2 = ramanujan_dtau(QuasiModularPoly::gen(0)).evaluate(12);
    CHECK(dg2 == eisenstein_G(2, 12).euler_derive([](int n) { return Rational(n); }));

    // Leibniz.
    for (int i = 0; i < 10; ++i) {
        QuasiModularPoly f = random_homogeneous(4), g = random_homogeneous(6);
        CHECK(ramanujan_dtau(f * g) == ramanujan_dtau(f) * g + f * ramanujan_dtau(g));
    }
}

TEST_CASE("sl2 commutation relation") {
    for (int i = 0; i < 50; ++i) {
        int w = 2 * (1 + static_cast<int>(rng()() % 6));
        QuasiModularPoly f = random_homogeneous(w);
        QuasiModularPoly lhs = ramanujan_dtau(f).dG2() - ramanujan_dtau(f.dG2());
        CHECK(lhs == f.scalar_mul(Rational(-2 * w)));
    }
}

TEST_CASE("serre derivative") {
    // serre(E4) is proportional to E6: recognized by exact linear solve.
    QSeries e4 = eisenstein_E(4, 12);
    QSeries s = serre_derivative(e4, 4);
    QuasiModularPoly rec = recognize_quasimodular(s, 6);
    CHECK(rec.terms().size() == 1);
    CHECK(rec.terms().begin()->first == QuasiModularPoly::Key{0, 0, 1});
    Rational c = s.coeff(0) / eisenstein_E(6, 12).coeff(0);
    CHECK(s == eisenstein_E(6, 12).scalar_mul(c));

    // D_tau Delta = E2 Delta, so the weight-12 Serre derivative kills Delta;
    // same for eta^2 at weight 1.
    CHECK(serre_derivative(delta(12), 12).is_zero());
    FracQSeries eta2 = eta(12).pow(2);
    QSeries de = eisenstein_E(2, 12);
    FracQSeries lhs = eta2.dtau() - (FracQSeries::from_integral(de) * eta2).scalar_mul(Rational(1, 12));
    CHECK(lhs.is_zero());

    CHECK(serre_derivative(QSeries::ring_one().truncate(8), 0).is_zero());
}

TEST_CASE("quasi-modular recognition") {
    QSeries g2 = eisenstein_G(2, 8);
    CHECK(recognize_quasimodular(g2, 2) == QuasiModularPoly::gen(0));

    // E2^2/576 = G2^2.
    QSeries e2 = eisenstein_E(2, 12);
    QSeries f = (e2 * e2).scalar_mul(Rational(1, 576));
    QuasiModularPoly rec = recognize_quasimodular(f, 4);
    CHECK(rec == QuasiModularPoly::gen(0) * QuasiModularPoly::gen(0));

    // Odd weight: empty basis.
    CHECK_THROWS_AS(recognize_quasimodular(delta(12), 11), recognition_error);

    // Delta = 8000 G4^3 - 147 G6^2.
    QuasiModularPoly drec = recognize_quasimodular(delta(12), 12);
    QuasiModularPoly expected =
        QuasiModularPoly::monomial({0, 3, 0}, Rational(8000)) + QuasiModularPoly::monomial({0, 0, 2}, Rational(-147));
    CHECK(drec == expected);

    // recognize . evaluate = identity on random inputs of weight <= 16.
    for (int w = 2; w <= 16; w += 2) {
        for (int i = 0; i < 4; ++i) {
            QuasiModularPoly p = random_homogeneous(w);
            int order = static_cast<int>(weight_monomials(w, true).size()) + 6;
            CHECK(recognize_quasimodular(p.evaluate(order), w) == p);
        }
    }

    // An inconsistent system is reported, not silently accepted.
    QSeries not_modular = g2 + QSeries::monomial(kQVar, 7, Rational(1)).truncate(8);
    CHECK_THROWS_AS(recognize_quasimodular(not_modular, 2), recognition_error);
}

TEST_CASE("express high Eisenstein in G4, G6") {
    CHECK(express_G_high(8) == QuasiModularPoly::monomial({0, 2, 0}, Rational(120)));
    QuasiModularPoly g10 = express_G_high(10);
    CHECK(g10.terms().size() == 1);
    CHECK(g10.terms().begin()->first == QuasiModularPoly::Key{0, 1, 1});
    for (int k : {8, 10, 12, 14}) {
        CHECK(express_G_high(k).evaluate(20) == eisenstein_G(k, 20));
    }
}
