#include "circ/family.hpp"

#include <gmpxx.h>

#include <utility>

#include "circ/errors.hpp"

namespace circ {

namespace {

mpz_class pow2(unsigned long e) {
  mpz_class v;
  mpz_ui_pow_ui(v.get_mpz_t(), 2, e);
  return v;
}

void check_u(int n, const std::vector<Scalar>& u) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  if (static_cast<int>(u.size()) != n)
    throw PreconditionError("u must have n entries");
}

void check_ceiling(int n, int ceiling) {
  if (n > ceiling)
    throw CeilingExceeded("n = " + std::to_string(n) +
                          " is above the configured ceiling " +
                          std::to_string(ceiling));
}

// prod_i u_i^{bit_i(j)} for all j < 2^n, by peeling the lowest set bit.
std::vector<Scalar> bit_products(int n, const std::vector<Scalar>& u) {
  std::vector<Scalar> mu(std::size_t{1} << n, Scalar(1));
  for (std::size_t j = 1; j < mu.size(); ++j) {
    int low = __builtin_ctzll(j);
    mu[j] = mu[j & (j - 1)] * u[low];
  }
  return mu;
}

// Appends to the builder a subcircuit for T * prod_i (1 + (U_i - 1) X_i)
// plus the linear part sum_i 2^(i-1) X_i, i.e. H itself, and returns the
// node. Parameter indices: T = t_index, U_i = u_base + i.
int emit_H(CircuitBuilder& b, int n, int t_index, int u_base) {
  int prod = -1;
  for (int i = 1; i <= n; ++i) {
    const int ui = b.param(u_base + i);
    const int xi = b.input(i);
    const int factor = b.add(b.scalar(1), b.mul(b.sub(ui, b.scalar(1)), xi));
    prod = (prod < 0) ? factor : b.mul(prod, factor);
  }
  int acc = b.mul(b.param(t_index), prod);
  for (int i = 1; i <= n; ++i) {
    const int term = b.mul(b.scalar(Scalar(pow2(i - 1))), b.input(i));
    acc = b.add(acc, term);
  }
  return acc;
}

}  // namespace

Circuit build_H(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  CircuitBuilder b(n + 1, n);
  b.mark_output(emit_H(b, n, 1, 1));
  return b.take();
}

Circuit build_beta_n(int n) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  // Parameters: S_1..S_n, then T, then U_1..U_n.
  CircuitBuilder b(2 * n + 1, n);
  for (int i = 1; i <= n; ++i) {
    const int xi = b.input(i);
    const int gi = b.sub(b.sub(b.mul(xi, xi), xi), b.param(i));
    b.mark_output(gi);
  }
  b.mark_output(emit_H(b, n, n + 1, n + 1));
  return b.take();
}

Scalar H_value(int n, const Scalar& t, const std::vector<Scalar>& u,
               const std::vector<Scalar>& x) {
  check_u(n, u);
  if (static_cast<int>(x.size()) != n)
    throw PreconditionError("x must have n entries");
  Scalar lin(0), prod(1);
  mpz_class w(1);
  for (int i = 0; i < n; ++i) {
    lin = lin + Scalar(w) * x[i];
    prod = prod * (Scalar(1) + (u[i] - Scalar(1)) * x[i]);
    w *= 2;
  }
  return lin + t * prod;
}

SparsePoly H_poly_at(int n, const Scalar& t, const std::vector<Scalar>& u) {
  check_u(n, u);
  SparsePoly lin = SparsePoly::constant(n, Scalar(0));
  SparsePoly prod = SparsePoly::constant(n, Scalar(1));
  mpz_class w(1);
  for (int i = 0; i < n; ++i) {
    lin = lin + SparsePoly::variable(n, i).scaled(Scalar(w));
    prod = prod * (SparsePoly::constant(n, Scalar(1)) +
                   SparsePoly::variable(n, i).scaled(u[i] - Scalar(1)));
    w *= 2;
  }
  return lin + prod.scaled(t);
}

SparsePoly eval_F(int n, const Scalar& t, const std::vector<Scalar>& u,
                  int ceiling) {
  check_u(n, u);
  check_ceiling(n, ceiling);
  const auto mu = bit_products(n, u);
  // Dense coefficient vector of the growing product, degree low to high.
  std::vector<Scalar> c{Scalar(1)};
  for (std::size_t j = 0; j < mu.size(); ++j) {
    const Scalar root = Scalar(static_cast<long>(j)) + t * mu[j];
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k > 0; --k)
      c[k] = c[k - 1] - root * c[k];
    c[0] = -root * c[0];
  }
  SparsePoly f(1);
  for (std::size_t k = 0; k < c.size(); ++k)
    f.add_term({static_cast<uint32_t>(k)}, c[k]);
  return f;
}

TJet F_coeff_T_jet(int n, const std::vector<Scalar>& u, int ceiling) {
  check_u(n, u);
  check_ceiling(n, ceiling);
  const auto mu = bit_products(n, u);
  const std::size_t deg = mu.size();

  // Coefficients as first-order jets a + b*T; the root of factor j is
  // j + mu_j*T, so multiplying by (Y - root) needs only jet ring ops.
  std::vector<Scalar> a{Scalar(1)}, b{Scalar(0)};
  a.reserve(deg + 1);
  b.reserve(deg + 1);
  for (std::size_t j = 0; j < deg; ++j) {
    const Scalar ra(static_cast<long>(j));
    const Scalar& rb = mu[j];
    a.push_back(a.back());
    b.push_back(b.back());
    for (std::size_t k = a.size() - 2; k > 0; --k) {
      // (a,b)[k] := (a,b)[k-1] - root * (a,b)[k]
      b[k] = b[k - 1] - (ra * b[k] + rb * a[k]);
      a[k] = a[k - 1] - ra * a[k];
    }
    b[0] = -(ra * b[0] + rb * a[0]);
    a[0] = -ra * a[0];
  }

  // a,b index by Y-degree; phi_k sits at degree 2^n - k.
  TJet jet;
  jet.lambda.reserve(deg);
  jet.L.reserve(deg);
  for (std::size_t k = 1; k <= deg; ++k) {
    jet.lambda.push_back(a[deg - k]);
    jet.L.push_back(b[deg - k]);
  }
  return jet;
}

long k_points(int n) { return 16L * n * n + 2; }

std::vector<std::vector<Scalar>> identification_points(int n,
                                                       std::uint64_t seed) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  Rng rng(seed);
  const long K = k_points(n);
  std::vector<std::vector<Scalar>> pts;
  pts.reserve(K);
  for (long k = 0; k < K; ++k) {
    std::vector<Scalar> p;
    p.reserve(n);
    for (int i = 0; i < n; ++i) p.emplace_back(rng.uniform_bits(4 * n));
    pts.push_back(std::move(p));
  }
  return pts;
}

std::vector<Scalar> Xi(int n, const std::vector<std::vector<Scalar>>& pts,
                       const Scalar& t, const std::vector<Scalar>& u) {
  check_u(n, u);
  if (static_cast<long>(pts.size()) != k_points(n))
    throw PreconditionError("point list has the wrong length");
  std::vector<Scalar> out;
  out.reserve(pts.size());
  for (const auto& p : pts) out.push_back(H_value(n, t, u, p));
  return out;
}

bool verify_identification(int n,
                           const std::vector<std::vector<Scalar>>& pts,
                           int trials, Rng rng) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  for (int t = 0; t < trials; ++t) {
    Scalar t1(rng.uniform_int(-65536, 65536)), t2(rng.uniform_int(-65536, 65536));
    std::vector<Scalar> u1, u2;
    for (int i = 0; i < n; ++i) u1.emplace_back(rng.uniform_int(-65536, 65536));
    for (int i = 0; i < n; ++i) u2.emplace_back(rng.uniform_int(-65536, 65536));
    if (H_poly_at(n, t1, u1) == H_poly_at(n, t2, u2)) continue;
    if (Xi(n, pts, t1, u1) == Xi(n, pts, t2, u2)) return false;
  }
  return true;
}

bool verify_elimination_identity(int n, const Scalar& t,
                                 const std::vector<Scalar>& u, int ceiling) {
  check_u(n, u);
  check_ceiling(n, ceiling);
  std::vector<Scalar> c{Scalar(1)};
  std::vector<Scalar> eps(n, Scalar(0));
  for (std::size_t j = 0; j < (std::size_t{1} << n); ++j) {
    for (int i = 0; i < n; ++i)
      eps[i] = Scalar(static_cast<long>((j >> i) & 1));
    const Scalar root = H_value(n, t, u, eps);
    c.push_back(c.back());
    for (std::size_t k = c.size() - 2; k > 0; --k)
      c[k] = c[k - 1] - root * c[k];
    c[0] = -root * c[0];
  }
  SparsePoly lhs(1);
  for (std::size_t k = 0; k < c.size(); ++k)
    lhs.add_term({static_cast<uint32_t>(k)}, c[k]);
  return lhs == eval_F(n, t, u, ceiling);
}

FormulaReport build_formula(int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  FormulaReport rep;
  rep.n = n;
  rep.points = k_points(n);
  rep.constituents = n + rep.points + 1;

  for (int i = 1; i <= n; ++i) {
    CircuitBuilder b(0, n);
    const int xi = b.input(i);
    b.mark_output(b.sub(b.mul(xi, xi), xi));
    rep.quadratic.push_back(b.take());
  }

  const auto pts = identification_points(n, seed);
  for (const auto& xi : pts) {
    // H(T,U,xi_j): the linear part collapses to one scalar, the product
    // keeps one factor per coordinate.
    CircuitBuilder b(n + 1, 0);
    Scalar lin(0);
    mpz_class w(1);
    for (int i = 0; i < n; ++i) {
      lin = lin + Scalar(w) * xi[i];
      w *= 2;
    }
    int prod = -1;
    for (int i = 1; i <= n; ++i) {
      const int ui = b.param(1 + i);
      const int factor =
          b.add(b.scalar(1),
                b.mul(b.sub(ui, b.scalar(1)), b.scalar(xi[i - 1])));
      prod = (prod < 0) ? factor : b.mul(prod, factor);
    }
    b.mark_output(b.add(b.scalar(lin), b.mul(b.param(1), prod)));
    rep.at_points.push_back(b.take());
  }

  rep.generic = build_H(n);

  rep.total_nodes = rep.generic.size();
  for (const auto& c : rep.quadratic) rep.total_nodes += c.size();
  for (const auto& c : rep.at_points) rep.total_nodes += c.size();
  return rep;
}

EliminationInstance make_instance(int n, std::uint64_t seed) {
  if (n < 1) throw PreconditionError("n must be at least 1");
  EliminationInstance inst;
  inst.n = n;
  inst.seed = seed;
  inst.circuit_H = build_H(n);
  for (int i = 1; i <= n; ++i) {
    CircuitBuilder b(n, n);
    const int xi = b.input(i);
    b.mark_output(b.sub(b.sub(b.mul(xi, xi), xi), b.param(i)));
    inst.circuits_G.push_back(b.take());
  }
  inst.circuit_beta_n = build_beta_n(n);
  inst.points = identification_points(n, seed);
  return inst;
}

}  // namespace circ
