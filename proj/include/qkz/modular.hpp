#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qkz/fracq.hpp"
#include "qkz/series.hpp"

namespace qkz::modular {

struct recognition_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Bernoulli number B_k (B_1 = -1/2 convention); cached.
Rational bernoulli(int k);

// sigma_{k-1}(n)
Rational divisor_power_sum(int power, int n);

// Renormalized Eisenstein series G_k = -B_k/(2k) + sum sigma_{k-1}(n) q^n.
QSeries eisenstein_G(int k, int order);
// E_k = 1 - (2k/B_k) sum sigma_{k-1}(n) q^n = G_k / G_k(0).
QSeries eisenstein_E(int k, int order);

// prod_{n>=1} (1 - q^{step*n})^e truncated at `order`.
QSeries euler_product_pow(int e, int order, int step = 1);

// Delta = q prod (1-q^n)^24.
QSeries delta(int order);
// eta = q^{1/24} prod (1-q^n); lattice denominator 24 before normalization.
FracQSeries eta(int q_order);

// Weight-graded polynomial in G2, G4, G6 over Q.
class QuasiModularPoly {
  public:
    using Key = std::array<int, 3>;  // exponents of (G2, G4, G6)

    QuasiModularPoly() = default;
    static QuasiModularPoly constant(Rational c);
    static QuasiModularPoly gen(int which);  // 0 -> G2, 1 -> G4, 2 -> G6
    static QuasiModularPoly monomial(Key k, Rational c);

    const std::map<Key, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_homogeneous(int* weight_out = nullptr) const;
    int weight() const;  // throws on mixed weight

    QuasiModularPoly operator-() const;
    friend QuasiModularPoly operator+(QuasiModularPoly a, const QuasiModularPoly& b);
    friend QuasiModularPoly operator-(QuasiModularPoly a, const QuasiModularPoly& b);
    friend QuasiModularPoly operator*(const QuasiModularPoly& a, const QuasiModularPoly& b);
    QuasiModularPoly& operator+=(const QuasiModularPoly& o) { return *this = *this + o; }
    friend bool operator==(const QuasiModularPoly& a, const QuasiModularPoly& b) { return (a - b).is_zero(); }
    friend bool operator!=(const QuasiModularPoly& a, const QuasiModularPoly& b) { return !(a == b); }
    QuasiModularPoly scalar_mul(const Rational& c) const;

    // Formal partial derivative in G2.
    QuasiModularPoly dG2() const;

    QSeries evaluate(int order) const;
    std::string to_string() const;

    void add_term(Key k, const Rational& c);

    // Ring-element hooks for the generic series templates.
    static QuasiModularPoly ring_one() { return constant(Rational(1)); }
    std::optional<QuasiModularPoly> try_invert() const {
        if (terms_.size() != 1 || terms_.begin()->first != Key{0, 0, 0}) return std::nullopt;
        return constant(terms_.begin()->second.inverse());
    }

  private:
    std::map<Key, Rational> terms_;
};

// The derivation D_tau on Q[G2,G4,G6]; the generator images are fixed by an
// exact linear solve against q-expansions (computed once, then reused).
QuasiModularPoly ramanujan_dtau(const QuasiModularPoly& f);

// Serre derivative of a weight-k q-expansion: D_tau f - (k/12) E2 f.
QSeries serre_derivative(const QSeries& f, int k);

// Exponent triples of the given weight; quasi=false restricts to Q[G4,G6].
std::vector<QuasiModularPoly::Key> weight_monomials(int weight, bool quasi);

// Exact recognition of a q-expansion as a quasi-modular form of the given
// weight. Requires at least (basis size + 5) known q-coefficients; surplus
// coefficients are consistency checks. Throws recognition_error otherwise.
QuasiModularPoly recognize_quasimodular(const QSeries& f, int weight);

// The unique weight-k polynomial in G4, G6 equal to G_k (k >= 8 even).
QuasiModularPoly express_G_high(int k);

}  // namespace qkz::modular
