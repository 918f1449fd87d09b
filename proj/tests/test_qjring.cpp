#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "qkz/phi.hpp"
#include "qkz/qjring.hpp"

using namespace qkz;
using namespace qkz::ring;
using jac::JacobiFourier;

namespace {
QJacExpr theta_pow(int m) {
    QJacExpr e = QJacExpr::constant(Rational(1));
    for (int i = 0; i < m; ++i) e = e * QJacExpr::gen(kTheta);
    return e;
}
QJacExpr::Key random_key() {
    auto& gen = qkz::testutil::rng();
    QJacExpr::Key k{};
    for (int i = 0; i < 6; ++i) k[static_cast<size_t>(i)] = static_cast<int>(gen() % 3);
    return k;
}
}  // namespace

TEST_CASE("derivation table fixtures") {
    CHECK(derive(QJacExpr::gen(kA), Deriv::dA) == QJacExpr::constant(Rational(1)));
    CHECK(derive(QJacExpr::gen(kTheta), Deriv::dA).is_zero());
    CHECK(derive(QJacExpr::gen(kG2), Deriv::dG2) == QJacExpr::constant(Rational(1)));
    CHECK(derive(theta_pow(2), Deriv::Dz) == QJacExpr::gen(kA).scalar_mul(Rational(2)) * theta_pow(2));
    CHECK(derive(QJacExpr::gen(kA) * theta_pow(2).scalar_mul(Rational(2)), Deriv::dA) ==
          theta_pow(2).scalar_mul(Rational(2)));
    CHECK(derive(QJacExpr::gen(kWp), Deriv::Dz) == QJacExpr::gen(kWpp));

    // Every table image reproduces the Fourier derivative of its generator.
    const int q = 7;
    const int W = 14 * q + 40;
    std::array<JacobiFourier, 6> base = {jac::theta_fourier(q),
                                         jac::A_fourier(q, W),
                                         JacobiFourier::from_qseries(modular::eisenstein_G(2, q)),
                                         jac::wp_fourier(q, W),
                                         jac::wp_prime_fourier(q, W),
                                         JacobiFourier::from_qseries(modular::eisenstein_G(4, q))};
    for (int g = 0; g < 6; ++g) {
        CHECK(eval_to_fourier(derivation_images(Deriv::Dz)[static_cast<size_t>(g)], q) == base[static_cast<size_t>(g)].dz());
        CHECK(eval_to_fourier(derivation_images(Deriv::Dtau)[static_cast<size_t>(g)], q) ==
              base[static_cast<size_t>(g)].dtau());
    }
}

TEST_CASE("commutation relations on random ring elements") {
    for (int i = 0; i < 50; ++i) {
        QJacExpr x = QJacExpr::monomial(random_key(), qkz::testutil::random_rational());
        if (x.is_zero()) continue;
        int wt = x.weight(), i2 = x.index2();
        CHECK(derive(derive(x, Deriv::Dtau), Deriv::dG2) - derive(derive(x, Deriv::dG2), Deriv::Dtau) ==
              x.scalar_mul(Rational(-2 * wt)));
        CHECK(derive(derive(x, Deriv::Dz), Deriv::dA) - derive(derive(x, Deriv::dA), Deriv::Dz) ==
              x.scalar_mul(Rational(i2)));
        CHECK(derive(derive(x, Deriv::Dz), Deriv::dG2) - derive(derive(x, Deriv::dG2), Deriv::Dz) ==
              derive(x, Deriv::dA).scalar_mul(Rational(-2)));
        CHECK(derive(derive(x, Deriv::Dtau), Deriv::dA) - derive(derive(x, Deriv::dA), Deriv::Dtau) ==
              derive(x, Deriv::Dz));
    }
}

TEST_CASE("G6 lies in R") {
    CHECK(g6_in_R().weight() == 6);
    CHECK(eval_to_fourier(g6_in_R(), 8) == JacobiFourier::from_qseries(modular::eisenstein_G(6, 8)));
}

TEST_CASE("eval/recognize roundtrip") {
    CHECK(recognize_in_R(jac::theta_fourier(8), -1, 1) == QJacExpr::gen(kTheta));
    // Wrong weight is reported as inconsistent.
    CHECK_THROWS_AS(recognize_in_R(phi::ode(2, 8), 0, 2), ring_error_t);

    auto& gen = qkz::testutil::rng();
    for (int trial = 0; trial < 8; ++trial) {
        int i2 = static_cast<int>(gen() % 3);
        int w = static_cast<int>(gen() % 5) - i2;
        auto basis = basis_monomials(w, i2);
        if (basis.empty()) continue;
        QJacExpr e;
        for (const auto& k : basis)
            if (gen() % 2 == 0) e.add_term(k, qkz::testutil::random_rational());
        if (e.is_zero()) continue;
        QJacExpr back = recognize_in_R(eval_to_fourier(e, 9), w, i2);
        CHECK(back == e);
    }
}

TEST_CASE("express_phi structure") {
    CHECK(express_phi(1) == QJacExpr::gen(kTheta));
    CHECK(express_phi(2) == QJacExpr::gen(kA).scalar_mul(Rational(2)) * theta_pow(2));
    for (int m = 1; m <= 5; ++m) {
        QJacExpr e = express_phi(m);
        CHECK(eval_to_fourier(e, 7) == phi::ode(m, 7));
        CHECK(derive(e, Deriv::dG2).is_zero());
        CHECK(e.weight() == -1);
        CHECK(e.index2() == m);
    }
}

TEST_CASE("symbolic anomaly route matches the closed sum") {
    for (int m = 2; m <= 4; ++m) {
        QJacExpr da = derive(express_phi(m), Deriv::dA);
        CHECK(eval_to_fourier(da, 7) == phi::anomaly_dA(m, 7));
    }
}

TEST_CASE("theorem 2 at n = 1") {
    const int q = 8;
    JacobiFourier target = phi::pair_ode(1, -1, q) - JacobiFourier::from_qseries(QSeries::ring_one().truncate(q));
    QJacExpr r1 = recognize_in_R(target, 0, 2);
    CHECK(eval_to_fourier(derive(r1, Deriv::dA), q) == phi::anomaly_dA_pair(1, -1, q));
    CHECK(eval_to_fourier(derive(r1, Deriv::dG2), q) == phi::anomaly_dG2_pair(1, -1, q));
}

TEST_CASE("jacobi group transformations") {
    auto shift_theta = elliptic_transform(QJacExpr::gen(kTheta));
    CHECK(shift_theta.size() == 1);
    CHECK(shift_theta.at(0) == QJacExpr::gen(kTheta));

    auto shift_a = elliptic_transform(QJacExpr::gen(kA));
    CHECK(shift_a.at(0) == QJacExpr::gen(kA));
    CHECK(shift_a.at(1) == QJacExpr::constant(Rational(-1)));
    CHECK(shift_a.size() == 2);

    auto shift_phi2 = elliptic_transform(express_phi(2));
    CHECK(shift_phi2.at(0) == express_phi(2));
    CHECK(shift_phi2.at(1) == theta_pow(2).scalar_mul(Rational(-2)));

    // Modular data: nilpotency in both prefactors, (0,0) term is the input.
    auto md = modular_transform(express_phi(3));
    CHECK(md.at({0, 0}) == express_phi(3));
    for (const auto& [ab, e] : md) CHECK(!e.is_zero());
}
