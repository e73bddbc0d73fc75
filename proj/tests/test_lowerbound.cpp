#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>

#include "circ/errors.hpp"
#include "circ/lowerbound.hpp"
#include "circ/semantics.hpp"

using namespace circ;

namespace {

std::vector<std::vector<Scalar>> pts1(std::initializer_list<long> us) {
  std::vector<std::vector<Scalar>> out;
  for (long u : us) out.push_back({Scalar(u)});
  return out;
}

}  // namespace

TEST_CASE("hand-computed certificate at n=1") {
  // L_1(u) = -(1+u), L_2(u) = 1. Points u = 0 and u = 1 give
  // N = [[-1, 1], [-2, 1]], determinant 1: full rank.
  RankCertificate cert = certificate_at_points(1, pts1({0, 1}), 7);
  REQUIRE(cert.N.size() == 2);
  CHECK(cert.N[0][0] == Scalar(-1));
  CHECK(cert.N[0][1] == Scalar(1));
  CHECK(cert.N[1][0] == Scalar(-2));
  CHECK(cert.N[1][1] == Scalar(1));
  CHECK(cert.rank == 2);
  CHECK(cert.pass);
  CHECK(cert.lambda_consistent);
}

TEST_CASE("duplicated points are degenerate, reported not thrown") {
  RankCertificate cert = certificate_at_points(1, pts1({5, 5}), 7);
  CHECK(cert.rank == 1);
  CHECK_FALSE(cert.pass);
}

TEST_CASE("prime strategy certifies small sizes") {
  RankCertificate c1 = rank_certificate(1, PointStrategy::Primes);
  CHECK(c1.pass);
  CHECK(c1.rank == 2);
  CHECK(c1.retries == 0);
  // Consecutive primes, one coordinate per point.
  CHECK(c1.points[0][0] == Scalar(2));
  CHECK(c1.points[1][0] == Scalar(3));

  RankCertificate c2 = rank_certificate(2, PointStrategy::Primes);
  CHECK(c2.pass);
  CHECK(c2.rank == 4);
  CHECK(c2.lambda_consistent);
  CHECK(c2.points[0] == std::vector<Scalar>{Scalar(2), Scalar(3)});
  CHECK(c2.points[3] == std::vector<Scalar>{Scalar(17), Scalar(19)});

  RankCertificate c3 = rank_certificate(3, PointStrategy::Primes);
  CHECK(c3.pass);
  CHECK(c3.rank == 8);
}

TEST_CASE("random strategy reaches full rank too") {
  RankCertificate cert = rank_certificate(2, PointStrategy::Random, 77);
  CHECK(cert.pass);
  CHECK(cert.rank == 4);
  CHECK(cert.lambda_consistent);
}

TEST_CASE("ceiling guards the exponential certificate work") {
  CHECK_THROWS_AS(rank_certificate(9, PointStrategy::Primes, 1, 8),
                  CeilingExceeded);
  CHECK_NOTHROW(rank_certificate(2, PointStrategy::Primes, 1, 8));
}

TEST_CASE("environment variable overrides the default ceiling") {
  setenv("CIRC_CEILING_N", "3", 1);
  CHECK(lb_ceiling() == 3);
  CHECK_THROWS_AS(naive_evaluator(4), CeilingExceeded);
  unsetenv("CIRC_CEILING_N");
  CHECK(lb_ceiling() == 7);
  CHECK_NOTHROW(naive_evaluator(4));
}

TEST_CASE("naive evaluator computes the eliminant") {
  const int n = 2;
  Circuit c = naive_evaluator(n);
  CHECK(c.params == n + 1);
  CHECK(c.inputs == 1);

  Rng rng(31);
  for (int trial = 0; trial < 10; ++trial) {
    Scalar t(rng.uniform_int(-6, 6));
    std::vector<Scalar> u = {Scalar(rng.uniform_int(-6, 6)),
                             Scalar(rng.uniform_int(-6, 6))};
    Scalar y(rng.uniform_int(-10, 10));
    std::vector<Scalar> params;
    params.push_back(t);
    for (const Scalar& ui : u) params.push_back(ui);
    EvalResult r = eval_point(c, params, {y});
    REQUIRE(r.ok);
    CHECK(r.outputs[0] == eval_F(n, t, u).eval({y}));
  }
}

TEST_CASE("audit verifies the naive evaluator and counts its parameters") {
  for (int n = 1; n <= 3; ++n) {
    EliminationInstance inst = make_instance(n, 40 + n);
    Circuit cand = naive_evaluator(n);
    AuditReport rep = audit_candidate(cand, inst, 4, Rng(41));
    CHECK(rep.verdict == AuditReport::Verdict::Verified);
    CHECK(rep.m == (1 << n));
    CHECK_FALSE(rep.violation);
    CHECK(rep.trials_run >= 4);
    // The coefficient preparation happens in the parameter subring; the only
    // essential multiplications combine Y-powers, 2^n - 1 of them.
    CHECK(rep.cost.essential_mults == (1 << n) - 1);
    CHECK(rep.cost.essential_divs == 0);
  }
}

TEST_CASE("audit rejects a circuit computing a different function") {
  const int n = 1;
  EliminationInstance inst = make_instance(n, 50);
  // Right arities (n+1 parameters, one input), wrong function.
  CircuitBuilder b(n + 1, 1);
  int y = b.input(1);
  int t = b.param(1);
  b.mark_output(b.add(b.mul(y, y), t));
  AuditReport rep = audit_candidate(b.take(), inst, 4, Rng(51));
  CHECK(rep.verdict == AuditReport::Verdict::NotAnEvaluator);
  CHECK_FALSE(rep.violation);
}

TEST_CASE("audit rejects divisions by input-dependent values") {
  const int n = 1;
  EliminationInstance inst = make_instance(n, 52);
  CircuitBuilder b(n + 1, 1);
  int y = b.input(1);
  b.mark_output(b.div(b.param(1), y));
  AuditReport rep = audit_candidate(b.take(), inst, 4, Rng(53));
  CHECK(rep.verdict == AuditReport::Verdict::NotAnEvaluator);
  CHECK(rep.detail.find("division") != std::string::npos);
}

TEST_CASE("audit tolerates divisions by parameters") {
  // Multiply the naive evaluator's output by t and divide it back out: the
  // division's numerator depends on the input, its divisor is a parameter.
  // That is the allowed kind of division, so the audit must still verify.
  const int n = 1;
  EliminationInstance inst = make_instance(n, 57);
  Circuit c = naive_evaluator(n);
  int tnode = -1;
  for (int i = 0; i < c.size(); ++i)
    if (c.nodes[i].op == Op::Param && c.nodes[i].index == 1) tnode = i;
  REQUIRE(tnode >= 0);
  const int out = c.outputs[0];
  c.nodes.push_back(op_node(Op::Mul, out, tnode));
  c.nodes.push_back(op_node(Op::Div, c.size() - 1, tnode));
  c.outputs = {c.size() - 1};
  require_valid(c);

  AuditReport rep = audit_candidate(c, inst, 4, Rng(58));
  CHECK(rep.verdict == AuditReport::Verdict::Verified);
  CHECK(rep.m >= 2);
}

TEST_CASE("audit rejects arities that fit neither reading") {
  const int n = 1;
  EliminationInstance inst = make_instance(n, 54);
  CircuitBuilder b(5, 1);  // neither n+1 = 2 nor 16n^2+2 = 18
  b.mark_output(b.mul(b.input(1), b.param(5)));
  AuditReport rep = audit_candidate(b.take(), inst, 4, Rng(55));
  CHECK(rep.verdict == AuditReport::Verdict::NotAnEvaluator);
  CHECK(rep.detail.find("arity") != std::string::npos);

  CircuitBuilder two(n + 1, 2);  // two inputs instead of one
  two.mark_output(two.add(two.input(1), two.input(2)));
  AuditReport rep2 = audit_candidate(two.take(), inst, 4, Rng(56));
  CHECK(rep2.verdict == AuditReport::Verdict::NotAnEvaluator);
}

TEST_CASE("matrix identity links certificates to jet evaluations") {
  // Row l of N holds the first-order responses at point u_l; recompute one
  // row directly from the jets as an independent cross-check.
  RankCertificate cert = rank_certificate(2, PointStrategy::Primes);
  std::vector<Scalar> u2 = {cert.points[2][0], cert.points[2][1]};
  TJet jet = F_coeff_T_jet(2, u2);
  for (int k = 0; k < 4; ++k) CHECK(cert.N[2][k] == jet.L[k]);
}
