#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>

#include "circ/circuit.hpp"
#include "circ/circuit_io.hpp"
#include "circ/errors.hpp"

using namespace circ;

namespace {

// y = (x1 + p1) * x2 with a dead node on the side
Circuit sample_circuit() {
  CircuitBuilder b(1, 2);
  int x1 = b.input(1);
  int p1 = b.param(1);
  int x2 = b.input(2);
  int s = b.add(x1, p1);
  int m = b.mul(s, x2);
  b.sub(x1, x1);  // dead
  b.mark_output(m);
  return b.take();
}

bool has_violation(const ValidationReport& r, Violation::Kind k, bool fatal) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const Violation& v) { return v.kind == k && v.fatal == fatal; });
}

}  // namespace

TEST_CASE("builder memoizes leaves but not operations") {
  CircuitBuilder b(2, 1);
  CHECK(b.param(1) == b.param(1));
  CHECK(b.input(1) == b.input(1));
  CHECK(b.scalar(Scalar(2, 4)) == b.scalar(Scalar(1, 2)));
  CHECK(b.param(1) != b.param(2));
  int x = b.input(1);
  CHECK(b.add(x, x) != b.add(x, x));
  b.mark_output(b.add(x, x));
  Circuit c = b.take();
  CHECK(validate(c).valid);
}

TEST_CASE("well-formed circuit validates cleanly") {
  Circuit c = sample_circuit();
  ValidationReport r = validate(c);
  CHECK(r.valid);
  // The dead Sub node is reported as dangling but is not fatal.
  CHECK(has_violation(r, Violation::Kind::Dangling, false));
  CHECK_NOTHROW(require_valid(c));
}

TEST_CASE("validation rejects structural defects") {
  SUBCASE("argument referencing a later node") {
    Circuit c = sample_circuit();
    c.nodes[3].a = 4;  // Add points forward at the Mul
    ValidationReport r = validate(c);
    CHECK_FALSE(r.valid);
    CHECK(has_violation(r, Violation::Kind::Ordering, true));
    CHECK_THROWS_AS(require_valid(c), PreconditionError);
  }
  SUBCASE("argument out of range") {
    Circuit c = sample_circuit();
    c.nodes[4].b = 99;
    CHECK_FALSE(validate(c).valid);
  }
  SUBCASE("parameter index out of range") {
    Circuit c = sample_circuit();
    c.nodes[1].index = 2;  // only 1 parameter declared
    ValidationReport r = validate(c);
    CHECK_FALSE(r.valid);
    CHECK(has_violation(r, Violation::Kind::Index, true));
  }
  SUBCASE("input index zero") {
    Circuit c = sample_circuit();
    c.nodes[0].index = 0;  // indices are 1-based
    CHECK_FALSE(validate(c).valid);
  }
  SUBCASE("output referencing a missing node") {
    Circuit c = sample_circuit();
    c.outputs.push_back(42);
    ValidationReport r = validate(c);
    CHECK_FALSE(r.valid);
    CHECK(has_violation(r, Violation::Kind::Output, true));
  }
  SUBCASE("no outputs at all") {
    Circuit c = sample_circuit();
    c.outputs.clear();
    CHECK_FALSE(validate(c).valid);
  }
  SUBCASE("leaf with argument edges") {
    Circuit c = sample_circuit();
    c.nodes[0].a = 0;
    CHECK_FALSE(validate(c).valid);
  }
}

TEST_CASE("repeated outputs are allowed") {
  CircuitBuilder b(0, 1);
  int x = b.input(1);
  b.mark_output(x);
  b.mark_output(x);
  Circuit c = b.take();
  CHECK(validate(c).valid);
  CHECK(c.outputs.size() == 2);
}

TEST_CASE("classification tracks dependence through the DAG") {
  CircuitBuilder b(2, 1);
  int two = b.scalar(2);
  int p1 = b.param(1);
  int p2 = b.param(2);
  int x = b.input(1);
  int pp = b.mul(p1, p2);    // parameter node
  int px = b.mul(pp, x);     // param * input: not essential
  int xx = b.mul(x, x);      // essential
  int sx = b.mul(two, x);    // scalar * input: not essential
  int axx = b.add(xx, sx);   // Add with both input-dependent: essential
  int d1 = b.div(p1, x);     // divisor input-dependent: essential
  int d2 = b.div(x, p1);     // divisor a parameter: not essential
  b.mark_output(axx);
  b.mark_output(d1);
  b.mark_output(d2);
  b.mark_output(px);
  Circuit c = b.take();
  auto cls = classify(c);

  CHECK(cls[pp].is_parameter_node);
  CHECK(cls[pp].depends_on_param);
  CHECK_FALSE(cls[pp].depends_on_input);

  CHECK(cls[px].depends_on_input);
  CHECK_FALSE(cls[px].is_parameter_node);
  CHECK_FALSE(cls[px].is_essential);

  CHECK(cls[xx].is_essential);
  CHECK_FALSE(cls[sx].is_essential);
  CHECK(cls[axx].is_essential);
  CHECK(cls[d1].is_essential);
  CHECK_FALSE(cls[d2].is_essential);

  for (int i = 0; i < c.size(); ++i) {
    CHECK(cls[i].is_parameter_node == !cls[i].depends_on_input);
    if (cls[i].is_essential) CHECK(cls[i].depends_on_input);
  }
}

TEST_CASE("outdegrees count argument uses only") {
  Circuit c = sample_circuit();
  auto deg = outdegrees(c);
  CHECK(deg[0] == 3);  // x1 feeds Add once and the dead Sub twice
  CHECK(deg[3] == 1);  // Add feeds Mul
  CHECK(deg[4] == 0);  // Mul is only an output
  CHECK(deg[5] == 0);  // dead node
}

TEST_CASE("JSON round trip preserves the circuit exactly") {
  Circuit c = sample_circuit();
  std::string text = circuit_to_json(c);
  Circuit back = circuit_from_json(text);
  CHECK(back.params == c.params);
  CHECK(back.inputs == c.inputs);
  CHECK(back.outputs == c.outputs);
  REQUIRE(back.size() == c.size());
  for (int i = 0; i < c.size(); ++i) {
    CHECK(back.nodes[i].op == c.nodes[i].op);
    CHECK(back.nodes[i].value == c.nodes[i].value);
    CHECK(back.nodes[i].index == c.nodes[i].index);
    CHECK(back.nodes[i].a == c.nodes[i].a);
    CHECK(back.nodes[i].b == c.nodes[i].b);
  }
}

TEST_CASE("JSON parser rejects malformed text") {
  CHECK_THROWS_AS(circuit_from_json("not json"), ParseError);
  CHECK_THROWS_AS(circuit_from_json("{}"), ParseError);
  CHECK_THROWS_AS(circuit_from_json(R"({"params":1,"inputs":1,"nodes":[],"outputs":[0]})"),
                  ParseError);
}

TEST_CASE("scalar values with fractions and i survive the round trip") {
  CircuitBuilder b(0, 1);
  int s = b.scalar(Scalar(mpq_class(-7, 3), mpq_class(1, 2)));
  int x = b.input(1);
  b.mark_output(b.mul(s, x));
  Circuit c = b.take();
  Circuit back = circuit_from_json(circuit_to_json(c));
  CHECK(back.nodes[0].value == c.nodes[0].value);
}
