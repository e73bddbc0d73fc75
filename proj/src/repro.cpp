#include "circ/repro.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "circ/approx.hpp"
#include "circ/circuit.hpp"
#include "circ/cost.hpp"
#include "circ/domain.hpp"
#include "circ/errors.hpp"
#include "circ/family.hpp"
#include "circ/lowerbound.hpp"
#include "circ/semantics.hpp"
#include "circ/transforms.hpp"

namespace circ {
namespace {

using Clock = std::chrono::steady_clock;

long ms_since(Clock::time_point t0) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(Clock::now() -
                                                               t0)
      .count();
}

template <class F>
ReproRow timed_row(const std::string& suite, const std::string& item, F&& f) {
  ReproRow row{suite, item, false, "", 0};
  auto t0 = Clock::now();
  try {
    f(row);
  } catch (const std::exception& e) {
    row.pass = false;
    row.detail = std::string("exception: ") + e.what();
  }
  row.millis = ms_since(t0);
  return row;
}

// ---------------------------------------------------------------------------
// identity: the root product over the hypercube equals the eliminant

void suite_identity(std::vector<ReproRow>& out) {
  out.push_back(timed_row("identity", "n=1..6", [](ReproRow& row) {
    int good = 0, total = 0;
    for (int n = 1; n <= 6; ++n) {
      Rng rng = Rng(101).child(static_cast<std::uint64_t>(n));
      for (int t = 0; t < 20; ++t) {
        Scalar tv(rng.uniform_int(-40, 40), rng.uniform_int(1, 6));
        std::vector<Scalar> u;
        for (int i = 0; i < n; ++i)
          u.emplace_back(rng.uniform_int(-40, 40), rng.uniform_int(1, 6));
        ++total;
        if (verify_elimination_identity(n, tv, u)) ++good;
      }
    }
    row.pass = good == total;
    row.detail =
        std::to_string(good) + "/" + std::to_string(total) + " exact matches";
  }));
}

// ---------------------------------------------------------------------------
// cost: the generic member uses exactly n-1 essential multiplications

void suite_cost(std::vector<ReproRow>& out) {
  out.push_back(timed_row("cost", "n=1..12", [](ReproRow& row) {
    bool ok = true;
    std::ostringstream os;
    for (int n = 1; n <= 12; ++n) {
      CostReport r = cost(build_H(n));
      if (r.essential_mults != n - 1) ok = false;
      if (n > 1) os << ",";
      os << r.essential_mults;
    }
    row.pass = ok;
    row.detail = "essential_mults " + os.str();
  }));
}

// ---------------------------------------------------------------------------
// rank: full-rank coefficient-response certificates at prime points

void suite_rank(std::vector<ReproRow>& out) {
  for (int n = 1; n <= 7; ++n) {
    out.push_back(timed_row(
        "rank", "n=" + std::to_string(n), [n](ReproRow& row) {
          RankCertificate cert = rank_certificate(n, PointStrategy::Primes);
          int full = 1 << n;
          row.pass = cert.pass && cert.rank == full && cert.lambda_consistent;
          row.detail = "rank " + std::to_string(cert.rank) + "/" +
                       std::to_string(full) +
                       (cert.retries ? ", retries=" + std::to_string(cert.retries)
                                     : "");
        }));
  }
}

// ---------------------------------------------------------------------------
// lambda: at T=0 the eliminant forgets u entirely

void suite_lambda(std::vector<ReproRow>& out) {
  out.push_back(timed_row("lambda", "n=1..6", [](ReproRow& row) {
    bool ok = true;
    for (int n = 1; n <= 6 && ok; ++n) {
      SparsePoly ref = SparsePoly::constant(1, Scalar(1));
      for (long j = 0; j < (1L << n); ++j)
        ref = ref * (SparsePoly::variable(1, 0) - SparsePoly::constant(1, Scalar(j)));
      Rng rng = Rng(104).child(static_cast<std::uint64_t>(n));
      for (int t = 0; t < 10 && ok; ++t) {
        std::vector<Scalar> u;
        for (int i = 0; i < n; ++i)
          u.emplace_back(rng.uniform_int(-1000, 1000), rng.uniform_int(1, 30));
        ok = eval_F(n, Scalar(0), u) == ref;
      }
    }
    row.pass = ok;
    row.detail = "10 samples per n, coefficientwise equal to the 0..2^n-1 "
                 "root product";
  }));
}

// ---------------------------------------------------------------------------
// size: linear growth of the system circuit, cubic growth of the formula

void suite_size(std::vector<ReproRow>& out) {
  out.push_back(timed_row("size", "system, n=2..12", [](ReproRow& row) {
    std::vector<long> sizes;
    for (int n = 2; n <= 12; ++n) sizes.push_back(build_beta_n(n).size());
    bool ok = true;
    for (std::size_t i = 2; i < sizes.size(); ++i)
      if (sizes[i] - 2 * sizes[i - 1] + sizes[i - 2] != 0) ok = false;
    row.pass = ok;
    row.detail = "node count starts " + std::to_string(sizes[0]) +
                 ", step " + std::to_string(sizes[1] - sizes[0]) +
                 ", second difference 0";
  }));
  out.push_back(timed_row("size", "formula, n=2..8", [](ReproRow& row) {
    mpq_class cfit = 0;
    bool ok = true;
    for (int n = 2; n <= 4; ++n) {
      FormulaReport rep = build_formula(n);
      if (rep.constituents != n + k_points(n) + 1) ok = false;
      mpq_class ratio(rep.total_nodes, static_cast<long>(n) * n * n);
      ratio.canonicalize();
      if (ratio > cfit) cfit = ratio;
    }
    for (int n = 5; n <= 8; ++n) {
      FormulaReport rep = build_formula(n);
      if (rep.constituents != n + k_points(n) + 1) ok = false;
      if (mpq_class(rep.total_nodes) > cfit * mpq_class(static_cast<long>(n) * n * n))
        ok = false;
    }
    row.pass = ok;
    row.detail = "total nodes within " + cfit.get_str() + " * n^3, fitted on n=2..4";
  }));
}

// ---------------------------------------------------------------------------
// transforms: random-circuit property checks

Circuit random_circuit_core(Rng& rng, int r, int n) {
  CircuitBuilder b(r, n);
  std::vector<int> pool;
  for (int i = 1; i <= n; ++i) pool.push_back(b.input(i));
  for (int i = 1; i <= r; ++i) pool.push_back(b.param(i));
  long nscal = rng.uniform_int(1, 3);
  for (long s = 0; s < nscal; ++s)
    pool.push_back(b.scalar(rng.uniform_int(-4, 4)));
  long body = rng.uniform_int(4, 40 - static_cast<long>(pool.size()) - 2);
  for (long s = 0; s < body; ++s) {
    int a = pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<long>(pool.size()) - 1))];
    int c = pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<long>(pool.size()) - 1))];
    long pick = rng.uniform_int(0, 11);
    Op o = pick < 4   ? Op::Add
           : pick < 6 ? Op::Sub
           : pick < 11 ? Op::Mul
                       : Op::Div;
    pool.push_back(b.op(o, a, c));
  }
  long outs = rng.uniform_int(1, 3);
  for (long s = 0; s < outs; ++s)
    b.mark_output(pool[static_cast<std::size_t>(
        rng.uniform_int(0, static_cast<long>(pool.size()) - 1))]);
  return b.take();
}

Circuit random_circuit(Rng& rng, int min_params) {
  int r = static_cast<int>(rng.uniform_int(min_params, 3));
  int n = static_cast<int>(rng.uniform_int(1, 3));
  return random_circuit_core(rng, r, n);
}

// Re-evaluates `c` at the fingerprint's own points and compares multisets.
bool outputs_match_at(const Fingerprint& fa, const Circuit& c) {
  Fingerprint fb = fa;
  for (std::size_t i = 0; i < fa.points.size(); ++i) {
    std::vector<Scalar> u(fa.points[i].begin(),
                          fa.points[i].begin() + fa.params);
    std::vector<Scalar> x(fa.points[i].begin() + fa.params,
                          fa.points[i].end());
    EvalResult ev = eval_point(c, u, x);
    if (!ev.ok) return false;
    fb.output_values[i] = ev.outputs;
  }
  return equal_results(fa, fb);
}

void suite_transforms(std::vector<ReproRow>& out) {
  out.push_back(timed_row(
      "transforms", "merge/sweep, 200 circuits", [](ReproRow& row) {
        Rng root(106);
        int done = 0;
        long merged = 0;
        for (long attempt = 1; done < 200; ++attempt) {
          if (attempt > 2000) {
            row.detail = "could not draw 200 usable circuits";
            return;
          }
          Rng g = root.child(static_cast<std::uint64_t>(attempt));
          Circuit c = random_circuit(g, 0);
          ParameterDomain d = affine_domain(c.params);
          Fingerprint fa;
          try {
            fa = fingerprint(c, d, root.child(100000 + attempt), 10);
          } catch (const Error&) {
            continue;  // a divisor vanishes identically; no honest points
          }
          ReduceResult rr = reduce(c, d, root.child(200000 + attempt));
          GcResult gg = garbage_collect(c);
          if (rr.circuit.size() > c.size() || gg.circuit.size() > c.size() ||
              !outputs_match_at(fa, rr.circuit) ||
              !outputs_match_at(fa, gg.circuit)) {
            row.detail = "failure at draw " + std::to_string(attempt);
            return;
          }
          merged += rr.merged_structural + rr.merged_semantic;
          ++done;
        }
        row.pass = true;
        row.detail = "200 circuits, " + std::to_string(merged) +
                     " nodes merged, fingerprints preserved";
      }));

  out.push_back(timed_row(
      "transforms", "composition, 50 pairs", [](ReproRow& row) {
        Rng root(107);
        int done = 0;
        for (long attempt = 1; done < 50; ++attempt) {
          if (attempt > 1000) {
            row.detail = "could not draw 50 usable pairs";
            return;
          }
          Rng g = root.child(static_cast<std::uint64_t>(attempt));
          Circuit f = random_circuit(g, 0);
          Circuit h = random_circuit_core(g, f.params,
                                          static_cast<int>(f.outputs.size()));
          Circuit j;
          try {
            j = join(f, h, JoinSpec{}, affine_domain(f.params),
                     CheckMode::Probabilistic, 8, root.child(300000 + attempt));
          } catch (const InconsistentJoin&) {
            continue;  // composite undefined everywhere; law is vacuous
          }
          Rng pr = root.child(400000 + attempt);
          int checked = 0;
          bool ok = true;
          for (int tries = 0; checked < 5 && tries < 200 && ok; ++tries) {
            std::vector<Scalar> u, x;
            for (int i = 0; i < f.params; ++i)
              u.emplace_back(pr.uniform_int(-50, 50));
            for (int i = 0; i < f.inputs; ++i)
              x.emplace_back(pr.uniform_int(-50, 50));
            EvalResult ef = eval_point(f, u, x);
            if (!ef.ok) continue;
            EvalResult eh = eval_point(h, u, ef.outputs);
            if (!eh.ok) continue;
            EvalResult ej = eval_point(j, u, x);
            ok = ej.ok && ej.outputs.size() == eh.outputs.size();
            for (std::size_t q = 0; ok && q < eh.outputs.size(); ++q)
              ok = eh.outputs[q] == ej.outputs[q];
            if (ok) ++checked;
          }
          if (!ok) {
            row.detail = "composition mismatch at pair draw " +
                         std::to_string(attempt);
            return;
          }
          if (checked == 0) continue;  // no evaluable points for this pair
          ++done;
        }
        row.pass = true;
        row.detail = "50 pairs, staged and joined evaluations agree";
      }));

  // Reducing over the restricted domain first, versus reducing over the full
  // domain and then restricting, must give circuits that agree wherever both
  // evaluate on the restriction. (The full-domain route may keep divisions
  // the restricted route merged away, so the comparison runs on the points of
  // the common domain.)
  out.push_back(timed_row(
      "transforms", "merge/restrict order, 50 cases", [](ReproRow& row) {
        Rng root(108);
        int done = 0;
        for (long attempt = 1; done < 50; ++attempt) {
          if (attempt > 1500) {
            row.detail = "could not draw 50 usable cases";
            return;
          }
          Rng g = root.child(static_cast<std::uint64_t>(attempt));
          Circuit c = random_circuit(g, 1);
          long a = g.uniform_int(-4, 4);
          Localized loc;
          loc.r = c.params;
          loc.generators = {SparsePoly::variable(c.params, 0) -
                            SparsePoly::constant(c.params, Scalar(a))};
          loc.inequation = SparsePoly::constant(c.params, Scalar(1));
          ParameterDomain small = loc;
          ParameterDomain full = affine_domain(c.params);

          ReduceResult ra = reduce(c, small, root.child(600000 + attempt));
          ReduceResult rb = reduce(c, full, root.child(700000 + attempt));
          Fingerprint fa;
          try {
            fa = fingerprint(ra.circuit, small, root.child(900000 + attempt),
                             10);
          } catch (const Error&) {
            continue;  // circuit has no honest points over the restriction
          }
          int compared = 0;
          bool ok = true;
          for (std::size_t i = 0; ok && i < fa.points.size(); ++i) {
            std::vector<Scalar> u(fa.points[i].begin(),
                                  fa.points[i].begin() + fa.params);
            std::vector<Scalar> x(fa.points[i].begin() + fa.params,
                                  fa.points[i].end());
            EvalResult evb = eval_point(rb.circuit, u, x);
            if (!evb.ok) continue;  // outside the common domain of definition
            std::vector<Scalar> want = fa.output_values[i];
            std::vector<Scalar> got = evb.outputs;
            std::sort(want.begin(), want.end());
            std::sort(got.begin(), got.end());
            ok = want == got;
            if (ok) ++compared;
          }
          if (!ok) {
            row.detail = "value mismatch at case draw " +
                         std::to_string(attempt);
            return;
          }
          if (compared < 5) continue;  // too little common ground; redraw
          ++done;
        }
        row.pass = true;
        row.detail =
            "50 cases agree on every shared point of the restricted domain";
      }));
}

// ---------------------------------------------------------------------------
// audit: the straightforward evaluator verifies and reports m = 2^n

void suite_audit(std::vector<ReproRow>& out) {
  for (int n = 1; n <= 5; ++n) {
    out.push_back(timed_row(
        "audit", "n=" + std::to_string(n), [n](ReproRow& row) {
          EliminationInstance inst =
              make_instance(n, 110 + static_cast<std::uint64_t>(n));
          Circuit cand = naive_evaluator(n);
          AuditReport rep = audit_candidate(
              cand, inst, 4, Rng(109).child(static_cast<std::uint64_t>(n)));
          int want = 1 << n;
          row.pass = rep.verdict == AuditReport::Verdict::Verified &&
                     rep.m == want && !rep.violation;
          row.detail = "m=" + std::to_string(rep.m) + "/" +
                       std::to_string(want) +
                       ", essential_mults=" +
                       std::to_string(rep.cost.essential_mults) +
                       (rep.violation ? ", VIOLATION" : "");
        }));
  }
}

// ---------------------------------------------------------------------------
// approx: limits along parameter curves

// ((1 + p X)^2 - 1 - 2 p X) / p^2, the division done at a parameter node.
// Equals X^2 at every p != 0.
Circuit square_limit_circuit() {
  CircuitBuilder b(1, 1);
  int p = b.param(1);
  int x = b.input(1);
  int one = b.scalar(1);
  int px = b.mul(p, x);
  int s = b.add(one, px);
  int num = b.sub(b.sub(b.mul(s, s), one), b.add(px, px));
  int inv = b.div(one, b.mul(p, p));
  int y = b.mul(num, inv);
  b.mark_output(y);
  return b.take();
}

// Same computation in the first parameter, shifted by the second.
Circuit square_shift_circuit() {
  CircuitBuilder b(2, 1);
  int p = b.param(1);
  int q = b.param(2);
  int x = b.input(1);
  int one = b.scalar(1);
  int px = b.mul(p, x);
  int s = b.add(one, px);
  int num = b.sub(b.sub(b.mul(s, s), one), b.add(px, px));
  int inv = b.div(one, b.mul(p, p));
  int y = b.add(b.mul(num, inv), q);
  b.mark_output(y);
  return b.take();
}

// X times 1/p: a genuine pole along the germ.
Circuit pole_circuit() {
  CircuitBuilder b(1, 1);
  int y = b.mul(b.input(1), b.div(b.scalar(1), b.param(1)));
  b.mark_output(y);
  return b.take();
}

ScalarSeries eps_series() {
  return ScalarSeries::exact(Scalar(0), 1, {Scalar(1)});
}

void suite_approx(std::vector<ReproRow>& out) {
  out.push_back(timed_row(
      "approx", "square limit, zero tail", [](ReproRow& row) {
        ApproxInstance inst;
        inst.domain = affine_domain(1);
        inst.germ = {eps_series()};
        Circuit c = square_limit_circuit();
        ApproxResult res = approx_eval(c, inst);
        SparsePoly x2 = SparsePoly::monomial(1, {2}, Scalar(1));
        bool ok = res.holomorphic && res.limit.size() == 1 &&
                  res.limit[0] == x2;
        for (const PolySeries& t : res.tail) ok = ok && t.is_zero();
        RepresentsResult rr = represents(c, inst);
        ok = ok && rr.holomorphic && rr.limit.size() == 1 && rr.limit[0] == x2;
        row.pass = ok;
        row.detail = "limit is the square monomial, tail identically zero";
      }));

  out.push_back(timed_row(
      "approx", "perturbed germ, halving deviation", [](ReproRow& row) {
        ApproxInstance inst;
        inst.domain = affine_domain(2);
        inst.germ = {ScalarSeries::exact(Scalar(0), 1, {Scalar(1), Scalar(1)}),
                     eps_series()};
        Circuit c = square_shift_circuit();
        SparsePoly x2 = SparsePoly::monomial(1, {2}, Scalar(1));
        RepresentsResult rr = represents(c, inst);
        bool ok = rr.holomorphic && rr.limit.size() == 1 && rr.limit[0] == x2;
        WitnessTable wt = convergence_witness(c, inst, 10);
        ok = ok && wt.rows.size() == 10;
        for (std::size_t i = 0; ok && i + 1 < wt.rows.size(); ++i) {
          const WitnessRow& lo = wt.rows[i];
          const WitnessRow& hi = wt.rows[i + 1];
          ok = lo.evaluated && hi.evaluated && lo.deviation != 0 &&
               hi.deviation * 2 == lo.deviation;
        }
        row.pass = ok;
        row.detail = "limit is the square monomial, deviation(k+1)/deviation(k)"
                     " = 1/2 for k=1..9";
      }));

  out.push_back(timed_row(
      "approx", "pole germ, order -1", [](ReproRow& row) {
        ApproxInstance inst;
        inst.domain = affine_domain(1);
        inst.germ = {eps_series()};
        RepresentsResult rr = represents(pole_circuit(), inst);
        row.pass = !rr.holomorphic && rr.worst_order == -1;
        row.detail = "not holomorphic, worst output order " +
                     std::to_string(rr.worst_order);
      }));
}

// ---------------------------------------------------------------------------
// points: structural bounds and probabilistic injectivity of the encoding

void suite_points(std::vector<ReproRow>& out) {
  for (int n = 1; n <= 4; ++n) {
    out.push_back(timed_row(
        "points", "n=" + std::to_string(n), [n](ReproRow& row) {
          auto pts = identification_points(n, 1);
          bool ok = static_cast<long>(pts.size()) == k_points(n);
          mpz_class lim = 1;
          lim <<= 4 * n;
          for (const auto& pt : pts) {
            ok = ok && static_cast<int>(pt.size()) == n;
            for (const Scalar& coord : pt)
              ok = ok && coord.is_integer() && coord.re() >= 0 &&
                   coord.re() < lim;
          }
          ok = ok && verify_identification(
                         n, pts, 1000,
                         Rng(112).child(static_cast<std::uint64_t>(n)));
          row.pass = ok;
          row.detail = "K=" + std::to_string(pts.size()) +
                       ", coordinates below 2^" + std::to_string(4 * n) +
                       ", 1000 sampled pairs separated";
        }));
  }
}

}  // namespace

const std::vector<std::string>& repro_suites() {
  static const std::vector<std::string> names = {
      "identity", "cost",  "rank",   "lambda", "size",
      "transforms", "audit", "approx", "points"};
  return names;
}

std::vector<ReproRow> run_repro(const std::string& suite) {
  std::vector<ReproRow> rows;
  if (suite == "identity")
    suite_identity(rows);
  else if (suite == "cost")
    suite_cost(rows);
  else if (suite == "rank")
    suite_rank(rows);
  else if (suite == "lambda")
    suite_lambda(rows);
  else if (suite == "size")
    suite_size(rows);
  else if (suite == "transforms")
    suite_transforms(rows);
  else if (suite == "audit")
    suite_audit(rows);
  else if (suite == "approx")
    suite_approx(rows);
  else if (suite == "points")
    suite_points(rows);
  else
    throw PreconditionError("unknown repro suite: " + suite);
  return rows;
}

std::vector<ReproRow> run_repro_all() {
  std::vector<ReproRow> rows;
  for (const std::string& s : repro_suites()) {
    std::vector<ReproRow> part = run_repro(s);
    rows.insert(rows.end(), part.begin(), part.end());
  }
  return rows;
}

bool repro_all_pass(const std::vector<ReproRow>& rows) {
  for (const ReproRow& r : rows)
    if (!r.pass) return false;
  return !rows.empty();
}

}  // namespace circ
