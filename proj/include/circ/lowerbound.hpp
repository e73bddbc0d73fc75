#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "circ/circuit.hpp"
#include "circ/cost.hpp"
#include "circ/family.hpp"
#include "circ/linalg.hpp"
#include "circ/rng.hpp"

namespace circ {

// The coefficients of F(T,u,Y) respond to T, to first order, through the
// linear forms L_1..L_{2^n}. Stacking the response vectors of 2^n sample
// points gives a square matrix; full rank certifies that the L_k are linearly
// independent, which is the pivot fact behind the essential-parameter bound
// m >= 2^n. The certificate computes that rank exactly.

enum class PointStrategy { Primes, Random };

struct RankCertificate {
  int n = 0;
  std::vector<std::vector<Scalar>> points;  // u_1..u_{2^n}, each in Q^n
  Matrix N;                                 // N[l][k-1] = L_k(u_l)
  int rank = 0;
  bool pass = false;  // rank == 2^n
  // lambda from the jets agreed across all points and matched the
  // coefficients of prod_j (Y - j).
  bool lambda_consistent = false;
  int retries = 0;  // fresh point sets drawn after a degenerate one
};

// Size ceiling for certificate work (jets cost 4^n, the rank 8^n bit ops).
// Defaults to 7; the environment variable CIRC_CEILING_N overrides.
int lb_ceiling();

// Certificate with the given points, no retries. Degenerate points simply
// yield pass = false.
RankCertificate certificate_at_points(
    int n, const std::vector<std::vector<Scalar>>& pts, int ceiling);

// Points per strategy: Primes takes consecutive primes, n per point, so all
// coordinates are distinct; Random draws seeded small rationals. On a
// rank-deficient draw the point set is redrawn a few times; if deficiency
// persists, throws (that would refute linear independence and deserves a
// look at the offending points).
RankCertificate rank_certificate(int n, PointStrategy strategy,
                                 std::uint64_t seed = 1, int ceiling = -1);

// A straightforward circuit that evaluates F(T,U,Y): it prepares all 2^n
// coefficients phi_k(T,U) by multiplying out the root factors within the
// parameter subring, then combines them with the powers of the single input
// Y. Every coefficient becomes one essential parameter, so the audit below
// reports m = 2^n exactly.
Circuit naive_evaluator(int n, int ceiling = -1);

struct AuditReport {
  enum class Verdict { Verified, NotAnEvaluator };
  Verdict verdict = Verdict::NotAnEvaluator;
  std::string detail;
  int trials_run = 0;
  int m = 0;  // essential parameter count of the candidate
  CostReport cost;
  // Claim verified but m < 2^n: would contradict the lower bound, so it is
  // flagged as a bug trap rather than accepted as a discovery.
  bool violation = false;
};

// Checks that the candidate actually evaluates the eliminant of `inst` on
// samples, then reports its parameter economy. The candidate reads Y as its
// single input and its parameters are either (t,u) directly (arity n+1) or
// the K-dimensional evaluation encoding (arity 16n^2+2).
AuditReport audit_candidate(const Circuit& c, const EliminationInstance& inst,
                            int trials, Rng rng);

}  // namespace circ
