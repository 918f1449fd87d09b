#pragma once

#include <array>
#include <map>

#include "qkz/jacobi.hpp"
#include "qkz/modular.hpp"

namespace qkz::ring {

using jac::JacobiFourier;

// Generators of the free polynomial ring R = C[Theta, A, G2, wp, wp', G4],
// bigraded by weight (-1, 1, 2, 2, 3, 4) and index (1/2, 0, 0, 0, 0, 0).
enum Gen : int { kTheta = 0, kA = 1, kG2 = 2, kWp = 3, kWpp = 4, kG4 = 5 };
inline constexpr std::array<int, 6> kGenWeight = {-1, 1, 2, 2, 3, 4};

struct ring_error_t : std::runtime_error {
    using std::runtime_error::runtime_error;
};

class QJacExpr {
  public:
    using Key = std::array<int, 6>;

    QJacExpr() = default;
    static QJacExpr constant(Rational c) { return monomial({0, 0, 0, 0, 0, 0}, std::move(c)); }
    static QJacExpr gen(Gen g);
    static QJacExpr monomial(Key k, Rational c);

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    void add_term(const Key& k, const Rational& c);

    static int key_weight(const Key& k);
    static int key_index2(const Key& k) { return k[kTheta]; }
    bool is_homogeneous(int* weight_out = nullptr, int* index2_out = nullptr) const;
    int weight() const;
    int index2() const;

    QJacExpr operator-() const;
    friend QJacExpr operator+(QJacExpr a, const QJacExpr& b);
    friend QJacExpr operator-(QJacExpr a, const QJacExpr& b) { return a + (-b); }
    friend QJacExpr operator*(const QJacExpr& a, const QJacExpr& b);
    QJacExpr& operator+=(const QJacExpr& o) { return *this = *this + o; }
    QJacExpr scalar_mul(const Rational& c) const;
    friend bool operator==(const QJacExpr& a, const QJacExpr& b) { return (a - b).is_zero(); }
    friend bool operator!=(const QJacExpr& a, const QJacExpr& b) { return !(a == b); }

    std::string to_string() const;

  private:
    std::map<Key, Rational> terms_;
};

enum class Deriv { Dz, Dtau, dA, dG2 };

// Generator images of the four derivations. D_z Theta = A Theta and
// D_z wp = wp' are definitions; d/dA and d/dG2 kill every generator except
// their own variable; all remaining images are fixed by exact linear solves
// against Fourier expansions and validated through the commutation
// relations. Built once.
const std::array<QJacExpr, 6>& derivation_images(Deriv op);

// Leibniz extension of the table.
QJacExpr derive(const QJacExpr& e, Deriv op);

// Substitutes the generator expansions; A/wp/wp' enter with a reliability
// window derived from q_order.
JacobiFourier eval_to_fourier(const QJacExpr& e, int q_order);

// G6 is not a generator; its unique weight-6 representation in R.
const QJacExpr& g6_in_R();

// Exact recognition of an (exact) Fourier object as an element of R of the
// given weight and doubled index. At least (basis size + margin) sample
// coefficients are required; every sampled coefficient must match.
QJacExpr recognize_in_R(const JacobiFourier& f, int weight, int index2, int margin = 5);

// phi_m = sum_{j+l=m-1} c_j (1/l!) D^l(Theta^m) with D = D_z + 2 G2 d/dA and
// c_j = [x^j] exp(2m sum_{k>=4 even} G_k x^k/k!); validated against phi_ode.
QJacExpr express_phi(int m);

// exp(-lambda d/dA) as a polynomial in the shift parameter lambda.
std::map<int, QJacExpr> elliptic_transform(const QJacExpr& e);
// exp(U d/dG2 + V d/dA) as a polynomial in the two modular prefactors.
std::map<std::pair<int, int>, QJacExpr> modular_transform(const QJacExpr& e);

// Monomial basis of R at fixed (weight, index2).
std::vector<QJacExpr::Key> basis_monomials(int weight, int index2);

}  // namespace qkz::ring
