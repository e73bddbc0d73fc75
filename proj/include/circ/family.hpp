#pragma once

#include <cstdint>
#include <vector>

#include "circ/circuit.hpp"
#include "circ/rng.hpp"
#include "circ/scalar.hpp"
#include "circ/sparse_poly.hpp"

namespace circ {

// A structured benchmark family around one polynomial,
//
//   H(T,U,X) = sum_i 2^(i-1) X_i  +  T * prod_i (1 + (U_i - 1) X_i),
//
// together with the quadratic system G_i = X_i^2 - X_i - S_i. Over the
// solutions of G = 0 the inputs range over {0,1}^n, the values H(t,u,eps)
// enumerate shifted binary counters, and eliminating X yields a monic
// degree-2^n polynomial F in Y whose coefficients concentrate everything a
// solver would have to know about (t,u). The functions below build the
// circuits, the eliminant, and the sampled point sets used as evidence.

// Parameters T,U_1..U_n (r = n+1), inputs X_1..X_n, single output H.
// Uses exactly n-1 multiplications of two input-dependent values.
Circuit build_H(int n);

// Parameters S_1..S_n, T, U_1..U_n (r = 2n+1), inputs X_1..X_n, outputs
// G_1..G_n, H. Division-free, node count affine in n.
Circuit build_beta_n(int n);

// H(t,u,x) evaluated directly.
Scalar H_value(int n, const Scalar& t, const std::vector<Scalar>& u,
               const std::vector<Scalar>& x);

// H(t,u,X) as a polynomial in X (arity n). Expands the n-factor product, so
// the result has up to 2^n + n terms.
SparsePoly H_poly_at(int n, const Scalar& t, const std::vector<Scalar>& u);

// F(t,u,Y) = prod_{j=0}^{2^n-1} (Y - (j + t * prod_i u_i^{bit_i(j)})),
// monic of degree 2^n in the single variable Y.
SparsePoly eval_F(int n, const Scalar& t, const std::vector<Scalar>& u,
                  int ceiling = 10);

// Writing F(T,u,Y) = Y^(2^n) + sum_k phi_k(T) Y^(2^n - k), each coefficient
// expands as phi_k = lambda_k + T * L_k(u) + O(T^2). lambda is independent of
// u (it only sees the roots 0..2^n-1); L carries the first-order response.
// Computed by multiplying the 2^n root factors with T truncated at degree 1.
struct TJet {
  std::vector<Scalar> lambda;  // index k-1 holds lambda_k, k = 1..2^n
  std::vector<Scalar> L;
};
TJet F_coeff_T_jet(int n, const std::vector<Scalar>& u, int ceiling = 7);

// Point count for the evaluation encoding at a given n.
long k_points(int n);  // 16 n^2 + 2

// K integer points with coordinates drawn uniformly from [0, 2^(4n)).
// Agreement of two family members H(t,u,X), H(t',u',X) on all of them is
// meant to force equality; verify_identification probes that with sampled
// pairs whose polynomials are symbolically distinct.
std::vector<std::vector<Scalar>> identification_points(int n,
                                                       std::uint64_t seed);
bool verify_identification(int n,
                           const std::vector<std::vector<Scalar>>& pts,
                           int trials, Rng rng);

// The evaluation encoding of H(t,u,X): its values at the K points.
std::vector<Scalar> Xi(int n, const std::vector<std::vector<Scalar>>& pts,
                       const Scalar& t, const std::vector<Scalar>& u);

// prod_{eps in {0,1}^n} (Y - H(t,u,eps)) == F(t,u,Y), coefficientwise.
bool verify_elimination_identity(int n, const Scalar& t,
                                 const std::vector<Scalar>& u,
                                 int ceiling = 10);

// The quantifier-free matrix of the formula describing the graph of F = 0:
// the n quadratic constraints, the K evaluation polynomials H(T,U,xi_j), and
// the generic H(T,U,X). Total circuit size grows cubically in n.
struct FormulaReport {
  int n = 0;
  long points = 0;        // K
  long constituents = 0;  // n + K + 1
  long total_nodes = 0;
  std::vector<Circuit> quadratic;  // X_i^2 - X_i, inputs X only
  std::vector<Circuit> at_points;  // H(T,U,xi_j), parameters T,U only
  Circuit generic;                 // H(T,U,X)
};
FormulaReport build_formula(int n, std::uint64_t seed = 1);

struct EliminationInstance {
  int n = 0;
  std::uint64_t seed = 0;
  Circuit circuit_H;
  std::vector<Circuit> circuits_G;  // G_i over params S_i, inputs X
  Circuit circuit_beta_n;
  std::vector<std::vector<Scalar>> points;  // the K identification points
};
EliminationInstance make_instance(int n, std::uint64_t seed);

}  // namespace circ
