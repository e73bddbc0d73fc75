#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "circ/cost.hpp"
#include "circ/family.hpp"

using namespace circ;

TEST_CASE("hand-counted mixed circuit") {
  CircuitBuilder b(2, 1);
  int two = b.scalar(2);
  int p1 = b.param(1);
  int p2 = b.param(2);
  int x = b.input(1);
  int xx = b.mul(x, x);         // essential mult
  int sx = b.mul(two, x);       // scalar mult: free
  int pp = b.mul(p1, p2);       // parameter-only mult: free
  int px = b.mul(pp, x);        // param mult
  int dx = b.div(xx, x);        // essential div
  int dp = b.div(x, p1);        // division by a parameter: counted as nonscalar
  b.mark_output(b.add(dx, b.add(px, b.add(sx, dp))));
  Circuit c = b.take();
  CostReport r = cost(c);

  CHECK(r.essential_mults == 1);
  CHECK(r.essential_divs == 1);
  CHECK(r.nonscalar_size == 2);
  CHECK(r.param_mults == 1);
  // xx, pp, px, dx, dp all involve non-scalar data; only sx is free.
  CHECK(r.total_mults_nonscalar == 5);
  CHECK(r.node_count == c.size());

  auto ess = essential_parameters(c);
  // p1 feeds dp (input-dependent); pp feeds px (input-dependent). p2 only
  // feeds the parameter-only product, so it is not essential itself.
  CHECK(std::find(ess.begin(), ess.end(), p1) != ess.end());
  CHECK(std::find(ess.begin(), ess.end(), pp) != ess.end());
  CHECK(std::find(ess.begin(), ess.end(), p2) == ess.end());
  CHECK(r.essential_param_count == static_cast<int>(ess.size()));
}

TEST_CASE("depth counts essential operations along the longest path") {
  CircuitBuilder b(0, 1);
  int x = b.input(1);
  int x2 = b.mul(x, x);
  int x4 = b.mul(x2, x2);
  int x8 = b.mul(x4, x4);
  b.mark_output(x8);
  CostReport r = cost(b.take());
  CHECK(r.essential_mults == 3);
  CHECK(r.depth_nonscalar == 3);
  CHECK(r.depth_total == 3);

  CircuitBuilder lin(0, 1);
  int y = lin.input(1);
  int acc = y;
  for (int k = 0; k < 5; ++k) acc = lin.add(acc, lin.scalar(k));
  lin.mark_output(acc);
  CostReport rl = cost(lin.take());
  CHECK(rl.depth_total == 5);
  CHECK(rl.depth_nonscalar == 0);  // additions cost nothing here
}

TEST_CASE("the hard family meets its multiplication budget") {
  for (int n = 1; n <= 8; ++n) {
    Circuit h = build_H(n);
    CostReport r = cost(h);
    CHECK(r.essential_mults == n - 1);
    CHECK(r.essential_divs == 0);
    // Each factor contributes one (U_i - 1) * X_i product, and the final
    // product picks up the multiplication by T.
    CHECK(r.param_mults == n + 1);
    CHECK(r.total_mults_nonscalar == (n - 1) + (n + 1));
    // T and every U_i - 1 node feed input-dependent multiplications.
    CHECK(r.essential_param_count == n + 1);
  }
}

TEST_CASE("node counts of the hard family grow linearly") {
  int prev = cost(build_H(1)).node_count;
  int step = 0;
  for (int n = 2; n <= 10; ++n) {
    int cur = cost(build_H(n)).node_count;
    if (n == 2) {
      step = cur - prev;
    } else {
      CHECK(cur - prev == step);
    }
    prev = cur;
  }
  CHECK(step > 0);
}

TEST_CASE("the equation system keeps one essential square per coordinate") {
  for (int n = 2; n <= 5; ++n) {
    Circuit beta = build_beta_n(n);
    CostReport r = cost(beta);
    // n squares X_i * X_i plus the n-1 chain multiplications of the product.
    CHECK(r.essential_mults == n + (n - 1));
    CHECK(r.essential_divs == 0);
  }
}

TEST_CASE("scalar-only circuits have no essential parameters") {
  CircuitBuilder b(1, 1);
  int c2 = b.scalar(2);
  int c3 = b.scalar(3);
  int x = b.input(1);
  b.mark_output(b.add(b.mul(c2, c3), b.mul(c2, x)));
  b.mark_output(b.param(1));
  CostReport r = cost(b.take());
  CHECK(r.essential_param_count == 0);
  CHECK(r.nonscalar_size == 0);
  CHECK(r.param_mults == 0);
}
