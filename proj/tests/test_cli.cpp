#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <json.hpp>

#include "circ/circuit_io.hpp"
#include "circ/family.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int code = -1;
  std::string out;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() /
                 ("circ_cli_test_" + std::to_string(::getpid()));
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  const char* bin = std::getenv("CIRC_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "CIRC_BIN must point at the cli binary");
  static int counter = 0;
  fs::path capture = work_dir() / ("out_" + std::to_string(counter++) + ".txt");
  std::string cmd = std::string(bin) + " " + args + " > " +
                    capture.string() + " 2>&1";
  int rc = std::system(cmd.c_str());
  RunResult r;
  r.code = WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  std::ifstream in(capture);
  r.out.assign(std::istreambuf_iterator<char>(in), {});
  return r;
}

std::string write_workfile(const std::string& name, const std::string& text) {
  fs::path p = work_dir() / name;
  circ::write_file(p.string(), text);
  return p.string();
}

}  // namespace

TEST_CASE("usage errors exit with 2") {
  CHECK(run("").code == 2);
  CHECK(run("no-such-command").code == 2);
  CHECK(run("validate --bogus-flag x.json").code == 2);
  CHECK(run("validate /nonexistent/path.json").code == 2);
}

TEST_CASE("family circuits round trip through files") {
  std::string h2 = (work_dir() / "h2.json").string();
  RunResult gen = run("family H --n 2 -o " + h2);
  REQUIRE(gen.code == 0);
  REQUIRE(fs::exists(h2));

  // The written file is the documented circuit format.
  circ::Circuit c = circ::circuit_from_json(circ::read_file(h2));
  CHECK(c.params == 3);
  CHECK(c.inputs == 2);

  CHECK(run("validate " + h2).code == 0);
  CHECK(run("classify " + h2).code == 0);
}

TEST_CASE("malformed circuit files exit with 2") {
  std::string bad = write_workfile("bad.json", "{\"params\": 1}");
  CHECK(run("validate " + bad).code == 2);
  std::string text = write_workfile("not.json", "hello");
  CHECK(run("validate " + text).code == 2);
}

TEST_CASE("evaluation from the command line") {
  std::string h2 = (work_dir() / "h2_eval.json").string();
  REQUIRE(run("family H --n 2 -o " + h2).code == 0);

  RunResult r = run("eval " + h2 + " --params 1,1,1 --inputs 1,1");
  CHECK(r.code == 0);
  CHECK(r.out.find("4") != std::string::npos);

  // Wrong arity is a usage error.
  CHECK(run("eval " + h2 + " --params 1,1 --inputs 1,1").code == 2);
  // Division by zero at the point is a verdict failure, not a usage error.
  std::string divz = write_workfile(
      "divz.json", circ::circuit_to_json([] {
        circ::CircuitBuilder b(1, 1);
        b.mark_output(b.div(b.input(1), b.param(1)));
        return b.take();
      }()));
  CHECK(run("eval " + divz + " --params 0 --inputs 3").code == 1);
  CHECK(run("eval " + divz + " --params 2 --inputs 6").code == 0);
}

TEST_CASE("json reports carry a manifest") {
  std::string h3 = (work_dir() / "h3.json").string();
  REQUIRE(run("family H --n 3 -o " + h3).code == 0);

  RunResult r = run("cost " + h3 + " --json");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  REQUIRE(doc.contains("report"));
  REQUIRE(doc.contains("manifest"));
  CHECK(doc["report"]["essential_mults"] == 2);
  CHECK(doc["report"]["essential_param_count"] == 4);
  CHECK(doc["manifest"]["command"] == "cost");
  CHECK(doc["manifest"]["inputs"].size() == 1);
  CHECK(doc["manifest"]["inputs"][0].contains("fnv1a64"));
  CHECK(doc["manifest"].contains("result_digest"));
  CHECK(doc["manifest"].contains("wall_ms"));

  // Digest of the input file matches an independent hash of its bytes.
  std::string digest = doc["manifest"]["inputs"][0]["fnv1a64"];
  std::string expect = circ::hex64(circ::fnv1a64(circ::read_file(h3)));
  CHECK(digest == expect);
}

TEST_CASE("consistency verdicts drive the exit code") {
  std::string divp = write_workfile(
      "divp.json", circ::circuit_to_json([] {
        circ::CircuitBuilder b(1, 1);
        b.mark_output(b.div(b.input(1), b.param(1)));
        return b.take();
      }()));
  CHECK(run("consistent " + divp).code == 0);

  circ::Localized zero;
  zero.r = 1;
  zero.generators = {circ::SparsePoly::variable(1, 0)};
  zero.inequation = circ::SparsePoly::constant(1, circ::Scalar(1));
  std::string dom = write_workfile("zero_line.json",
                                   circ::domain_to_json(zero));
  CHECK(run("consistent " + divp + " --domain " + dom + " --exact").code == 1);
  CHECK(run("restrict " + divp + " --domain " + dom + " --exact").code == 1);
}

TEST_CASE("transform subcommands write usable circuits") {
  std::string h2 = (work_dir() / "h2_tr.json").string();
  REQUIRE(run("family H --n 2 -o " + h2).code == 0);

  std::string red = (work_dir() / "h2_reduced.json").string();
  REQUIRE(run("reduce " + h2 + " -o " + red).code == 0);
  CHECK(run("validate " + red).code == 0);

  std::string gcd = (work_dir() / "h2_gc.json").string();
  REQUIRE(run("gc " + h2 + " -o " + gcd).code == 0);
  CHECK(run("validate " + gcd).code == 0);

  // Reduce must not grow the circuit.
  circ::Circuit before = circ::circuit_from_json(circ::read_file(h2));
  circ::Circuit after = circ::circuit_from_json(circ::read_file(red));
  CHECK(after.size() <= before.size());

  // The input file is left untouched.
  CHECK(circ::circuit_to_json(before) == circ::read_file(h2));
}

TEST_CASE("join feeds one circuit into another") {
  // f: x -> (x+1, x*x); g: (a,b) -> a+b, both parameterless.
  circ::CircuitBuilder fb(0, 1);
  int x = fb.input(1);
  fb.mark_output(fb.add(x, fb.scalar(1)));
  fb.mark_output(fb.mul(x, x));
  std::string f = write_workfile("join_f.json", circ::circuit_to_json(fb.take()));

  circ::CircuitBuilder gb(0, 2);
  gb.mark_output(gb.add(gb.input(1), gb.input(2)));
  std::string g = write_workfile("join_g.json", circ::circuit_to_json(gb.take()));

  std::string out = (work_dir() / "joined.json").string();
  REQUIRE(run("join " + f + " " + g + " -o " + out).code == 0);
  CHECK(run("validate " + out).code == 0);
  RunResult r = run("eval " + out + " --inputs 3");
  CHECK(r.code == 0);
  CHECK(r.out.find("13") != std::string::npos);  // (3+1) + 9

  // A composite whose division dies is refused with exit 1.
  circ::CircuitBuilder zb(0, 1);
  int zx = zb.input(1);
  zb.mark_output(zb.sub(zx, zx));
  std::string z = write_workfile("join_zero.json", circ::circuit_to_json(zb.take()));
  circ::CircuitBuilder ib(0, 1);
  ib.mark_output(ib.div(ib.scalar(1), ib.input(1)));
  std::string inv = write_workfile("join_inv.json", circ::circuit_to_json(ib.take()));
  CHECK(run("join " + z + " " + inv + " -o " + (work_dir() / "never.json").string()).code == 1);
}

TEST_CASE("rank certificates from the command line") {
  RunResult r = run("lb rank-cert --n 2 --json");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["report"]["n"] == 2);
  CHECK(doc["report"]["rank"] == 4);
  CHECK(doc["report"]["pass"] == true);
  CHECK(doc["report"]["lambda_consistent"] == true);
}

TEST_CASE("audit of a shipped naive evaluator") {
  std::string cand = (work_dir() / "naive2.json").string();
  REQUIRE(run("lb naive --n 2 -o " + cand).code == 0);
  RunResult r = run("lb audit " + cand + " --n 2 --json");
  REQUIRE(r.code == 0);
  json doc = json::parse(r.out);
  CHECK(doc["report"]["verdict"] == "verified");
  CHECK(doc["report"]["m"] == 4);
  CHECK(doc["report"]["violation"] == false);
}

TEST_CASE("series evaluation from a germ file") {
  // Germ p = eps over one parameter; circuit y = x * (1/p) has a pole.
  circ::GermFile germ;
  germ.prec = 12;
  germ.entries = {circ::ScalarSeries::exact(circ::Scalar(0), 1, {circ::Scalar(1)})};
  std::string gf = write_workfile("germ_eps.json", circ::germ_to_json(germ));

  circ::CircuitBuilder pb(1, 1);
  pb.mark_output(pb.mul(pb.input(1), pb.div(pb.scalar(1), pb.param(1))));
  std::string pole = write_workfile("pole.json", circ::circuit_to_json(pb.take()));
  RunResult bad = run("approx eval " + pole + " --germ " + gf);
  CHECK(bad.code == 1);

  // Holomorphic instance: y = p * x.
  circ::CircuitBuilder hb(1, 1);
  hb.mark_output(hb.mul(hb.param(1), hb.input(1)));
  std::string lin = write_workfile("lin.json", circ::circuit_to_json(hb.take()));
  RunResult ok = run("approx eval " + lin + " --germ " + gf + " --json");
  REQUIRE(ok.code == 0);
  json doc = json::parse(ok.out);
  CHECK(doc["report"]["holomorphic"] == true);
}

TEST_CASE("repro suites run as one-line tables") {
  RunResult r = run("repro cost");
  CHECK(r.code == 0);
  CHECK(r.out.find("PASS") != std::string::npos);
  CHECK(run("repro no-such-suite").code == 2);
}

TEST_CASE("seeded commands are reproducible") {
  RunResult a = run("lb rank-cert --n 1 --strategy random --seed 5 --json");
  RunResult b = run("lb rank-cert --n 1 --strategy random --seed 5 --json");
  REQUIRE(a.code == 0);
  json da = json::parse(a.out), db = json::parse(b.out);
  CHECK(da["report"] == db["report"]);
  CHECK(da["manifest"]["result_digest"] == db["manifest"]["result_digest"]);
}
