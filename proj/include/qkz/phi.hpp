#pragma once

#include <map>
#include <utility>
#include <vector>

#include "qkz/jacobi.hpp"
#include "qkz/modular.hpp"

namespace qkz::phi {

using jac::JacobiFourier;
using jac::YSeries;
using modular::QuasiModularPoly;

// phi_m by the defining second-order equation D_tau^2 phi = m^2 F phi with
// constant term s^m - s^{-m}; negative m through phi_{-m} = -phi_m.
JacobiFourier ode(int m, int q_order);

// phi_m as Res_{x=0} (Theta(x+z)/Theta(x))^m, m >= 1.
JacobiFourier residue_method(int m, int q_order);

// phi_m by the generalized-partition sum, m >= 1.
JacobiFourier partition_method(int m, int q_order);

// phi_{m,n} by integrating D_tau phi_{m,n} = mn phi_m phi_n F
// + (D_tau phi_m)(D_tau phi_n) with vanishing constant term.
JacobiFourier pair_ode(int m, int n, int q_order);

// Closed form for m + n != 0:
//   (m/(m+n)) phi_m D_tau(phi_n) + (n/(m+n)) D_tau(phi_m) phi_n.
JacobiFourier pair_closed(int m, int n, int q_order);

// Holomorphic anomaly d/dA phi_m as a Fourier object:
// (1/2) sum_{i+j=m} (m^2/(ij)) phi_i phi_j for m >= 1, odd in m.
JacobiFourier anomaly_dA(int m, int q_order);

// The polynomial branch of the anomaly: for m < 0 this adds -m z phi_m,
// which lives only in the Taylor representation.
ZQSeries anomaly_dA_extension(int m, int q_order, int z_order);

// d/dA phi_{m,n}: (mn/(m+n)) phi_{m+n} (dropped when m+n=0) plus the two
// convolution sums with all-positive/all-negative part convention.
JacobiFourier anomaly_dA_pair(int m, int n, int q_order);

// d/dG2 phi_{m,n} = 2 phi_m phi_n.
JacobiFourier anomaly_dG2_pair(int m, int n, int q_order);

// Decompositions i + j = total with both parts positive (total > 0) or both
// negative (total < 0); empty for total = 0. The single source of truth for
// the summation convention.
std::vector<std::pair<int, int>> signed_decompositions(int total);

// phi_{m+n} = (1/m) D_z(phi_m) phi_n + (1/n) phi_m D_z(phi_n)
//           + sum_{i+j=m} (1/i) phi_{i,n} phi_j + sum_{i+j=n} (1/i) phi_{i,m} phi_j.
bool recursion_check(int m, int n, int q_order);

// f(g(y)) = 1/y and lagrange_invert(1/f) = g for
// g(y) = sum phi_m y^m / m, plus the transported equation
// D_tau^2 g = F D_y^2 g. All checks exact within the stated windows.
bool inversion_check(int y_order, int q_order, int z_order);

// g(y) itself, in the z-Taylor coefficient world.
YSeries generating_series(int y_order, int q_order, int z_order);

// Taylor coefficients of phi_m.
ZQSeries taylor(int m, int q_order, int z_order);

// The index-polynomial family: z^k -> u-power -> quasi-modular coefficient
// of weight k-1 (odd powers only, u^3 | P_k for k >= 2).
struct IndexPolyFamily {
    std::map<int, std::map<int, QuasiModularPoly>> coeffs;
};
IndexPolyFamily polynomial_u(int q_order, int z_order);

// The pair family: z^r -> (u-power, v-power) -> weight-r coefficient,
// obtained by exact interpolation of pair_ode over an integer grid.
struct PairPolyFamily {
    std::map<int, std::map<std::pair<int, int>, QuasiModularPoly>> coeffs;
};
PairPolyFamily pair_polynomial(int q_order, int z_order);

}  // namespace qkz::phi
