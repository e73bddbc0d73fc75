#include "circ/lowerbound.hpp"

#include <gmpxx.h>

#include <cstdlib>
#include <sstream>
#include <utility>

#include "circ/errors.hpp"
#include "circ/semantics.hpp"

namespace circ {

namespace {

constexpr int kDefaultCeiling = 7;
constexpr int kMaxRedraws = 4;

std::vector<std::vector<Scalar>> prime_points(int n, long rows, int redraw) {
  // Consecutive primes, n per point; redraws continue where the previous
  // draw stopped so fresh sets never repeat a coordinate.
  mpz_class p(1);
  for (long skip = static_cast<long>(redraw) * rows * n; skip > 0; --skip)
    mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
  std::vector<std::vector<Scalar>> pts;
  pts.reserve(rows);
  for (long l = 0; l < rows; ++l) {
    std::vector<Scalar> u;
    u.reserve(n);
    for (int i = 0; i < n; ++i) {
      mpz_nextprime(p.get_mpz_t(), p.get_mpz_t());
      u.emplace_back(p);
    }
    pts.push_back(std::move(u));
  }
  return pts;
}

std::vector<std::vector<Scalar>> random_points(int n, long rows, Rng& rng) {
  std::vector<std::vector<Scalar>> pts;
  pts.reserve(rows);
  for (long l = 0; l < rows; ++l) {
    std::vector<Scalar> u;
    u.reserve(n);
    for (int i = 0; i < n; ++i)
      u.push_back(Scalar(rng.uniform_int(-65536, 65536)) /
                  Scalar(rng.uniform_int(1, 64)));
    pts.push_back(std::move(u));
  }
  return pts;
}

std::string format_points(const std::vector<std::vector<Scalar>>& pts) {
  std::ostringstream os;
  for (std::size_t l = 0; l < pts.size(); ++l) {
    os << (l ? " " : "") << "(";
    for (std::size_t i = 0; i < pts[l].size(); ++i)
      os << (i ? "," : "") << pts[l][i].str();
    os << ")";
  }
  return os.str();
}

}  // namespace

int lb_ceiling() {
  if (const char* env = std::getenv("CIRC_CEILING_N")) {
    char* end = nullptr;
    const long v = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && v >= 1 && v <= 64)
      return static_cast<int>(v);
  }
  return kDefaultCeiling;
}

RankCertificate certificate_at_points(
    int n, const std::vector<std::vector<Scalar>>& pts, int ceiling) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (n > ceiling)
    throw CeilingExceeded("n = " + std::to_string(n) +
                          " is above the configured ceiling " +
                          std::to_string(ceiling));
  const long rows = 1L << n;
  if (static_cast<long>(pts.size()) != rows)
    throw PreconditionError("need exactly 2^n points");

  RankCertificate cert;
  cert.n = n;
  cert.points = pts;
  cert.N.reserve(rows);

  const std::vector<Scalar> baseline =
      F_coeff_T_jet(n, pts[0], ceiling).lambda;
  // lambda must also be the T = 0 coefficient vector, i.e. prod_j (Y - j).
  const SparsePoly f0 = eval_F(n, Scalar(0), pts[0], ceiling);
  bool lambda_ok = true;
  for (long k = 1; k <= rows; ++k)
    if (!(baseline[k - 1] == f0.coef1(static_cast<uint32_t>(rows - k))))
      lambda_ok = false;

  for (long l = 0; l < rows; ++l) {
    TJet jet = F_coeff_T_jet(n, pts[l], ceiling);
    if (!(jet.lambda == baseline)) lambda_ok = false;
    cert.N.push_back(std::move(jet.L));
  }
  cert.lambda_consistent = lambda_ok;
  cert.rank = exact_rank(cert.N);
  cert.pass = cert.rank == rows && lambda_ok;
  return cert;
}

RankCertificate rank_certificate(int n, PointStrategy strategy,
                                 std::uint64_t seed, int ceiling) {
  if (ceiling < 0) ceiling = lb_ceiling();
  const long rows = (n >= 1 && n < 62) ? (1L << n) : 0;
  Rng rng(seed);
  RankCertificate cert;
  for (int redraw = 0; redraw <= kMaxRedraws; ++redraw) {
    auto pts = strategy == PointStrategy::Primes
                   ? prime_points(n, rows, redraw)
                   : random_points(n, rows, rng);
    cert = certificate_at_points(n, pts, ceiling);
    cert.retries = redraw;
    if (cert.pass) return cert;
  }
  throw Error(
      "rank deficiency persisted after fresh point sets; this contradicts "
      "linear independence of the coefficient responses and needs manual "
      "inspection. last points: " +
      format_points(cert.points));
}

Circuit naive_evaluator(int n, int ceiling) {
  if (ceiling < 0) ceiling = lb_ceiling();
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (n > ceiling)
    throw CeilingExceeded("n = " + std::to_string(n) +
                          " is above the configured ceiling " +
                          std::to_string(ceiling));
  const long deg = 1L << n;
  // Parameters: T = param 1, U_i = param 1+i. Input: Y.
  CircuitBuilder b(n + 1, 1);

  // mu_j = prod U_i^{bit_i(j)}, built by peeling the lowest set bit.
  std::vector<int> mu(deg, -1);
  mu[0] = b.scalar(1);
  for (long j = 1; j < deg; ++j) {
    const int low = __builtin_ctzl(static_cast<unsigned long>(j));
    const int uprev = mu[j & (j - 1)];
    mu[j] = (j & (j - 1)) == 0 ? b.param(2 + low)
                               : b.mul(uprev, b.param(2 + low));
  }

  // Coefficients of prod_j (Y - (j + T mu_j)) over the parameter subring,
  // degree low to high; c[deg] stays the scalar 1.
  std::vector<int> c{b.scalar(1)};
  for (long j = 0; j < deg; ++j) {
    const int root = b.add(b.scalar(static_cast<long>(j)),
                           b.mul(b.param(1), mu[j]));
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k > 0; --k)
      c[k] = b.sub(c[k - 1], b.mul(root, c[k]));
    c[0] = b.sub(b.scalar(0), b.mul(root, c[0]));
  }

  // Powers of Y and the monic combination.
  std::vector<int> pw(deg + 1, -1);
  pw[1] = b.input(1);
  for (long k = 2; k <= deg; ++k) pw[k] = b.mul(pw[k - 1], b.input(1));
  int acc = pw[deg];
  for (long k = deg - 1; k >= 1; --k) acc = b.add(acc, b.mul(c[k], pw[k]));
  acc = b.add(acc, c[0]);
  b.mark_output(acc);
  return b.take();
}

AuditReport audit_candidate(const Circuit& c, const EliminationInstance& inst,
                            int trials, Rng rng) {
  require_valid(c);
  AuditReport rep;
  const int n = inst.n;
  const long K = k_points(n);

  if (c.inputs != 1) {
    rep.detail = "candidate must read a single input Y";
    return rep;
  }
  const bool preimage_chart = c.params == n + 1;
  const bool image_chart = static_cast<long>(c.params) == K;
  if (!preimage_chart && !image_chart) {
    rep.detail = "parameter arity matches neither (t,u) nor the evaluation "
                 "encoding";
    return rep;
  }
  {
    const auto cls = classify(c);
    for (int i = 0; i < c.size(); ++i)
      if (c.nodes[i].op == Op::Div && cls[c.nodes[i].b].depends_on_input) {
        rep.detail = "division by an input-dependent value at node " +
                     std::to_string(i);
        return rep;
      }
  }

  if (trials < 1) trials = 1;
  const long bound = 65536;
  int done = 0, failures = 0;
  while (done < trials) {
    if (failures > 5 * trials + 8) {
      rep.detail = "candidate evaluation kept failing on samples";
      return rep;
    }
    Scalar t(rng.uniform_int(-bound, bound));
    std::vector<Scalar> u;
    u.reserve(n);
    for (int i = 0; i < n; ++i) u.emplace_back(rng.uniform_int(-bound, bound));

    // Values H(t,u,eps) over the hypercube; the product over them is the
    // expected output at any y.
    std::vector<Scalar> h;
    h.reserve(1L << n);
    std::vector<Scalar> eps(n);
    for (long j = 0; j < (1L << n); ++j) {
      for (int i = 0; i < n; ++i)
        eps[i] = Scalar(static_cast<long>((j >> i) & 1));
      h.push_back(H_value(n, t, u, eps));
    }

    std::vector<Scalar> params;
    if (preimage_chart) {
      params.push_back(t);
      params.insert(params.end(), u.begin(), u.end());
    } else {
      params = Xi(n, inst.points, t, u);
    }

    bool ok = true;
    for (int s = 0; s < 4 && ok; ++s) {
      const Scalar y(rng.uniform_int(-bound, bound));
      const EvalResult ev = eval_point(c, params, {y});
      if (!ev.ok) {
        ok = false;
        ++failures;
        break;
      }
      Scalar expect(1);
      for (const Scalar& root : h) expect = expect * (y - root);
      if (!(ev.outputs[0] == expect)) {
        rep.detail = "candidate output disagrees with the eliminant at a "
                     "sample point";
        rep.trials_run = done;
        return rep;
      }
    }
    if (ok) ++done;
  }

  rep.verdict = AuditReport::Verdict::Verified;
  rep.detail = "claim verified on " + std::to_string(done) + " samples";
  rep.trials_run = done;
  rep.cost = cost(c);
  rep.m = rep.cost.essential_param_count;
  rep.violation = rep.m < (1L << n);
  if (rep.violation)
    rep.detail += "; VIOLATION: m = " + std::to_string(rep.m) +
                  " is below 2^n = " + std::to_string(1L << n);
  return rep;
}

}  // namespace circ
