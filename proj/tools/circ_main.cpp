#include <chrono>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "circ/approx.hpp"
#include "circ/circuit.hpp"
#include "circ/circuit_io.hpp"
#include "circ/cost.hpp"
#include "circ/domain.hpp"
#include "circ/errors.hpp"
#include "circ/family.hpp"
#include "circ/lowerbound.hpp"
#include "circ/repro.hpp"
#include "circ/rng.hpp"
#include "circ/semantics.hpp"
#include "circ/transforms.hpp"

namespace {

using circ::Scalar;
using json = nlohmann::ordered_json;

constexpr const char* kVersion = "0.1.0";

struct Cli {
  std::uint64_t seed = 1;
  bool json_out = false;
  int trials = 24;
  int prec = 0;  // 0: use the germ file's precision
  int n = 1;
  int ceiling = -1;
  std::string out;

  // Collected while a command runs, folded into the manifest afterwards.
  std::vector<std::string> input_paths;
  std::string command;
  int exit_code = 0;
};

std::string load_input(Cli& cli, const std::string& path) {
  cli.input_paths.push_back(path);
  return circ::read_file(path);
}

circ::Circuit load_circuit(Cli& cli, const std::string& path) {
  return circ::circuit_from_json(load_input(cli, path));
}

circ::ParameterDomain load_domain_or_affine(Cli& cli, const std::string& path,
                                            int r) {
  if (path.empty()) return circ::affine_domain(r);
  return circ::domain_from_json(load_input(cli, path));
}

std::vector<Scalar> parse_scalars(const std::string& text) {
  std::vector<Scalar> out;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, ',')) {
    if (!cur.empty()) out.push_back(Scalar::from_string(cur));
  }
  return out;
}

json manifest_json(const Cli& cli, long wall_ms, const json& report) {
  json inputs = json::array();
  for (const std::string& p : cli.input_paths) {
    json entry;
    entry["path"] = p;
    entry["fnv1a64"] = circ::hex64(circ::fnv1a64(circ::read_file(p)));
    inputs.push_back(entry);
  }
  json m;
  m["command"] = cli.command;
  m["seed"] = cli.seed;
  m["version"] = kVersion;
  m["inputs"] = inputs;
  m["wall_ms"] = wall_ms;
  m["result_digest"] = circ::hex64(circ::fnv1a64(report.dump()));
  return m;
}

// JSON mode prints {"report":..., "manifest":...}; text mode prints the
// supplied human lines.
void emit(const Cli& cli, long wall_ms, const json& report,
          const std::vector<std::string>& lines) {
  if (cli.json_out) {
    json doc;
    doc["report"] = report;
    doc["manifest"] = manifest_json(cli, wall_ms, report);
    std::cout << doc.dump(2) << "\n";
  } else {
    for (const std::string& l : lines) std::cout << l << "\n";
  }
}

json poly_json(const circ::SparsePoly& p, const std::string& prefix) {
  return json::parse(circ::poly_to_json(p, prefix));
}

json ratfunc_json(const circ::RatFunc& f, const std::string& prefix) {
  json j;
  j["num"] = poly_json(f.num(), prefix);
  j["den"] = poly_json(f.den(), prefix);
  return j;
}

const char* verdict_name(circ::Consistency v) {
  switch (v) {
    case circ::Consistency::Consistent:
      return "consistent";
    case circ::Consistency::Inconsistent:
      return "inconsistent";
    default:
      return "undecided";
  }
}

// ---------------------------------------------------------------------------
// Command bodies. Each returns the report and fills `lines`; the wrapper does
// timing, manifests and exit codes.

template <class F>
void run_command(Cli& cli, const std::string& name, F&& body) {
  cli.command = name;
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> lines;
  json report = body(lines);
  long wall = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
  emit(cli, wall, report, lines);
}

void cmd_validate(Cli& cli, const std::string& path) {
  run_command(cli, "validate", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ValidationReport rep = circ::validate(c);
    json out;
    out["valid"] = rep.valid;
    json vs = json::array();
    for (const circ::Violation& v : rep.violations) {
      json e;
      e["node"] = v.node;
      e["fatal"] = v.fatal;
      e["message"] = v.message;
      vs.push_back(e);
      lines.push_back(std::string(v.fatal ? "error: " : "warning: ") +
                      v.message);
    }
    out["violations"] = vs;
    lines.push_back(rep.valid ? "valid" : "invalid");
    if (!rep.valid) cli.exit_code = 1;
    return out;
  });
}

void cmd_classify(Cli& cli, const std::string& path) {
  run_command(cli, "classify", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::require_valid(c);
    std::vector<circ::NodeClass> cls = circ::classify(c);
    json nodes = json::array();
    for (int i = 0; i < c.size(); ++i) {
      json e;
      e["id"] = i;
      e["op"] = circ::op_name(c.nodes[i].op);
      e["depends_on_input"] = cls[i].depends_on_input;
      e["depends_on_param"] = cls[i].depends_on_param;
      e["parameter_node"] = cls[i].is_parameter_node;
      e["essential"] = cls[i].is_essential;
      nodes.push_back(e);
      std::ostringstream os;
      os << i << "\t" << circ::op_name(c.nodes[i].op) << "\t"
         << (cls[i].depends_on_input ? "input-dep" : "param-node")
         << (cls[i].is_essential ? "\tessential" : "");
      lines.push_back(os.str());
    }
    json out;
    out["nodes"] = nodes;
    return out;
  });
}

void cmd_eval(Cli& cli, const std::string& path, const std::string& params,
              const std::string& inputs) {
  run_command(cli, "eval", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::EvalResult r =
        circ::eval_point(c, parse_scalars(params), parse_scalars(inputs));
    json out;
    out["ok"] = r.ok;
    if (!r.ok) {
      out["fail_node"] = r.fail_node;
      lines.push_back("division by zero at node " +
                      std::to_string(r.fail_node));
      cli.exit_code = 1;
    } else {
      json vals = json::array();
      for (const Scalar& v : r.outputs) {
        vals.push_back(v.str());
        lines.push_back(v.str());
      }
      out["outputs"] = vals;
    }
    return out;
  });
}

void cmd_expand(Cli& cli, const std::string& path, const std::string& params,
                long budget) {
  run_command(cli, "expand", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ExpandOptions opt;
    if (budget > 0) opt.budget = static_cast<std::size_t>(budget);
    circ::ExpandResult r =
        params.empty() ? circ::expand_symbolic(c, opt)
                       : circ::expand_at_params(c, parse_scalars(params), opt);
    json out;
    out["ok"] = r.ok;
    if (!r.ok) {
      out["fail_node"] = r.fail_node;
      out["fail_kind"] = r.fail_kind;
      lines.push_back(r.fail_kind + " at node " + std::to_string(r.fail_node));
      cli.exit_code = 1;
      return out;
    }
    out["polynomial_in_inputs"] = r.polynomial_in_inputs;
    out["essentially_division_free"] = r.essentially_division_free;
    out["totally_division_free"] = r.totally_division_free;
    json os = json::array();
    for (const circ::RatFunc& f : r.outputs) {
      os.push_back(ratfunc_json(f, "v"));
      lines.push_back(f.str());
    }
    out["outputs"] = os;
    lines.push_back(std::string("polynomial in inputs: ") +
                    (r.polynomial_in_inputs ? "yes" : "no"));
    return out;
  });
}

json consistency_json(const circ::ConsistencyReport& rep) {
  json out;
  out["verdict"] = verdict_name(rep.verdict);
  out["witness_node"] = rep.witness_node;
  out["undecided_nodes"] = rep.undecided_nodes;
  out["detail"] = rep.detail;
  return out;
}

void cmd_consistent(Cli& cli, const std::string& path,
                    const std::string& domain_path, bool exact,
                    const char* name) {
  run_command(cli, name, [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ParameterDomain d = load_domain_or_affine(cli, domain_path, c.params);
    circ::ConsistencyReport rep = circ::consistency_check(
        c, d, exact ? circ::CheckMode::Exact : circ::CheckMode::Probabilistic,
        cli.trials, circ::Rng(cli.seed));
    lines.push_back(std::string(verdict_name(rep.verdict)) +
                    (rep.detail.empty() ? "" : ": " + rep.detail));
    if (rep.verdict != circ::Consistency::Consistent) cli.exit_code = 1;
    return consistency_json(rep);
  });
}

void cmd_join(Cli& cli, const std::string& fpath, const std::string& gpath,
              const std::string& map, const std::string& domain_path) {
  run_command(cli, "join", [&](std::vector<std::string>& lines) {
    circ::Circuit f = load_circuit(cli, fpath);
    circ::Circuit g = load_circuit(cli, gpath);
    circ::JoinSpec spec;
    if (!map.empty()) {
      std::istringstream is(map);
      std::string item;
      while (std::getline(is, item, ',')) {
        auto colon = item.find(':');
        if (colon == std::string::npos)
          throw circ::PreconditionError("--map expects slot:input pairs");
        spec.wiring.emplace_back(std::stoi(item.substr(0, colon)),
                                 std::stoi(item.substr(colon + 1)));
      }
    }
    circ::ParameterDomain d = load_domain_or_affine(cli, domain_path, f.params);
    circ::Circuit j = circ::join(f, g, spec, d, circ::CheckMode::Probabilistic,
                                 cli.trials, circ::Rng(cli.seed));
    if (!cli.out.empty()) circ::write_file(cli.out, circ::circuit_to_json(j));
    json out;
    out["nodes"] = j.size();
    out["outputs"] = j.outputs.size();
    lines.push_back("joined: " + std::to_string(j.size()) + " nodes");
    return out;
  });
}

void cmd_reduce(Cli& cli, const std::string& path,
                const std::string& domain_path, bool exact, int points) {
  run_command(cli, "reduce", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ParameterDomain d = load_domain_or_affine(cli, domain_path, c.params);
    circ::ReduceOptions opt;
    opt.exact = exact;
    if (points > 0) opt.points = points;
    circ::ReduceResult r = circ::reduce(c, d, circ::Rng(cli.seed), opt);
    if (!cli.out.empty())
      circ::write_file(cli.out, circ::circuit_to_json(r.circuit));
    json out;
    out["nodes_before"] = c.size();
    out["nodes_after"] = r.circuit.size();
    out["merged_structural"] = r.merged_structural;
    out["merged_semantic"] = r.merged_semantic;
    out["rounds"] = r.rounds;
    out["semantic_pass_ran"] = r.semantic_pass_ran;
    lines.push_back(std::to_string(c.size()) + " -> " +
                    std::to_string(r.circuit.size()) + " nodes (structural " +
                    std::to_string(r.merged_structural) + ", semantic " +
                    std::to_string(r.merged_semantic) + ")");
    return out;
  });
}

void cmd_gc(Cli& cli, const std::string& path) {
  run_command(cli, "gc", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::GcResult r = circ::garbage_collect(c);
    if (!cli.out.empty())
      circ::write_file(cli.out, circ::circuit_to_json(r.circuit));
    json out;
    out["nodes_before"] = c.size();
    out["nodes_after"] = r.circuit.size();
    out["removed"] = r.removed;
    lines.push_back("removed " + std::to_string(r.removed) + " dead nodes");
    return out;
  });
}

void cmd_cost(Cli& cli, const std::string& path) {
  run_command(cli, "cost", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::CostReport r = circ::cost(c);
    json out;
    out["essential_mults"] = r.essential_mults;
    out["essential_divs"] = r.essential_divs;
    out["nonscalar_size"] = r.nonscalar_size;
    out["param_mults"] = r.param_mults;
    out["total_mults_nonscalar"] = r.total_mults_nonscalar;
    out["node_count"] = r.node_count;
    out["depth_total"] = r.depth_total;
    out["depth_nonscalar"] = r.depth_nonscalar;
    out["essential_param_count"] = r.essential_param_count;
    out["essential_parameters"] = circ::essential_parameters(c);
    for (auto it = out.begin(); it != out.end(); ++it)
      if (it.key() != "essential_parameters")
        lines.push_back(it.key() + " = " + it.value().dump());
    return out;
  });
}

void cmd_family_circuit(Cli& cli, const char* which) {
  run_command(cli, std::string("family ") + which,
              [&](std::vector<std::string>& lines) {
                circ::Circuit c = std::string(which) == "H"
                                      ? circ::build_H(cli.n)
                                      : circ::build_beta_n(cli.n);
                if (!cli.out.empty())
                  circ::write_file(cli.out, circ::circuit_to_json(c));
                else
                  lines.push_back(circ::circuit_to_json(c));
                json out;
                out["n"] = cli.n;
                out["nodes"] = c.size();
                out["params"] = c.params;
                out["inputs"] = c.inputs;
                if (!cli.out.empty())
                  lines.push_back("wrote " + cli.out + " (" +
                                  std::to_string(c.size()) + " nodes)");
                return out;
              });
}

void cmd_family_verify(Cli& cli) {
  run_command(cli, "family verify-identity",
              [&](std::vector<std::string>& lines) {
                circ::Rng rng(cli.seed);
                int good = 0;
                for (int t = 0; t < cli.trials; ++t) {
                  Scalar tv(rng.uniform_int(-40, 40), rng.uniform_int(1, 6));
                  std::vector<Scalar> u;
                  for (int i = 0; i < cli.n; ++i)
                    u.emplace_back(rng.uniform_int(-40, 40),
                                   rng.uniform_int(1, 6));
                  if (circ::verify_elimination_identity(cli.n, tv, u)) ++good;
                }
                json out;
                out["n"] = cli.n;
                out["trials"] = cli.trials;
                out["matched"] = good;
                out["pass"] = good == cli.trials;
                lines.push_back(std::to_string(good) + "/" +
                                std::to_string(cli.trials) +
                                " exact coefficient matches");
                if (good != cli.trials) cli.exit_code = 1;
                return out;
              });
}

void cmd_family_formula(Cli& cli) {
  run_command(cli, "family formula-size",
              [&](std::vector<std::string>& lines) {
                circ::FormulaReport rep = circ::build_formula(cli.n, cli.seed);
                json out;
                out["n"] = rep.n;
                out["points"] = rep.points;
                out["constituents"] = rep.constituents;
                out["total_nodes"] = rep.total_nodes;
                lines.push_back("constituents " +
                                std::to_string(rep.constituents) +
                                ", total nodes " +
                                std::to_string(rep.total_nodes));
                return out;
              });
}

void cmd_family_points(Cli& cli) {
  run_command(cli, "family points", [&](std::vector<std::string>& lines) {
    auto pts = circ::identification_points(cli.n, cli.seed);
    json arr = json::array();
    for (const auto& pt : pts) {
      json row = json::array();
      for (const Scalar& v : pt) row.push_back(v.str());
      arr.push_back(row);
    }
    json out;
    out["n"] = cli.n;
    out["count"] = pts.size();
    out["points"] = arr;
    if (!cli.out.empty()) circ::write_file(cli.out, out.dump(2));
    lines.push_back("K = " + std::to_string(pts.size()) + " points");
    return out;
  });
}

void cmd_lb_rank(Cli& cli, const std::string& strategy) {
  run_command(cli, "lb rank-cert", [&](std::vector<std::string>& lines) {
    circ::PointStrategy st = strategy == "random"
                                 ? circ::PointStrategy::Random
                                 : circ::PointStrategy::Primes;
    circ::RankCertificate cert =
        circ::rank_certificate(cli.n, st, cli.seed, cli.ceiling);
    json out;
    out["n"] = cert.n;
    out["rank"] = cert.rank;
    out["pass"] = cert.pass;
    out["lambda_consistent"] = cert.lambda_consistent;
    out["retries"] = cert.retries;
    // The certificate is the point of this command, so the structured report
    // prints even without --json.
    lines.push_back(out.dump());
    if (!cert.pass) cli.exit_code = 1;
    return out;
  });
}

void cmd_lb_naive(Cli& cli) {
  run_command(cli, "lb naive", [&](std::vector<std::string>& lines) {
    circ::Circuit c = circ::naive_evaluator(cli.n, cli.ceiling);
    if (!cli.out.empty())
      circ::write_file(cli.out, circ::circuit_to_json(c));
    else
      lines.push_back(circ::circuit_to_json(c));
    json out;
    out["n"] = cli.n;
    out["nodes"] = c.size();
    out["params"] = c.params;
    if (!cli.out.empty())
      lines.push_back("wrote " + cli.out + " (" + std::to_string(c.size()) +
                      " nodes)");
    return out;
  });
}

void cmd_lb_audit(Cli& cli, const std::string& path) {
  run_command(cli, "lb audit", [&](std::vector<std::string>& lines) {
    circ::Circuit cand = load_circuit(cli, path);
    circ::EliminationInstance inst = circ::make_instance(cli.n, cli.seed);
    circ::AuditReport rep =
        circ::audit_candidate(cand, inst, cli.trials, circ::Rng(cli.seed));
    json out;
    bool verified = rep.verdict == circ::AuditReport::Verdict::Verified;
    out["verdict"] = verified ? "verified" : "not-an-evaluator";
    out["detail"] = rep.detail;
    out["trials_run"] = rep.trials_run;
    out["m"] = rep.m;
    out["essential_mults"] = rep.cost.essential_mults;
    out["violation"] = rep.violation;
    lines.push_back(std::string(verified ? "verified" : "not an evaluator") +
                    (rep.detail.empty() ? "" : ": " + rep.detail));
    if (verified) lines.push_back("m = " + std::to_string(rep.m));
    if (!verified || rep.violation) cli.exit_code = 1;
    return out;
  });
}

circ::ApproxInstance load_instance(Cli& cli, const std::string& germ_path) {
  circ::GermFile gf = circ::germ_from_json(load_input(cli, germ_path));
  circ::ApproxInstance inst;
  inst.germ = gf.entries;
  inst.domain = gf.domain ? *gf.domain
                          : circ::affine_domain(
                                static_cast<int>(gf.entries.size()));
  inst.prec = cli.prec > 0 ? cli.prec : gf.prec;
  circ::validate_instance(inst);
  return inst;
}

void cmd_approx_eval(Cli& cli, const std::string& path,
                     const std::string& germ_path) {
  run_command(cli, "approx eval", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ApproxInstance inst = load_instance(cli, germ_path);
    circ::RepresentsResult rep = circ::represents(c, inst);
    json out;
    out["holomorphic"] = rep.holomorphic;
    if (rep.holomorphic) {
      json lim = json::array();
      for (const circ::SparsePoly& p : rep.limit) {
        lim.push_back(poly_json(p, "X"));
        lines.push_back(p.str());
      }
      out["limit"] = lim;
    } else {
      out["worst_order"] = rep.worst_order;
      out["witness_output"] = rep.witness_output;
      out["witness_node"] = rep.witness_node;
      lines.push_back("not holomorphic: output " +
                      std::to_string(rep.witness_output) + " has order " +
                      std::to_string(rep.worst_order));
      cli.exit_code = 1;
    }
    return out;
  });
}

void cmd_approx_witness(Cli& cli, const std::string& path,
                        const std::string& germ_path, int kmax) {
  run_command(cli, "approx witness", [&](std::vector<std::string>& lines) {
    circ::Circuit c = load_circuit(cli, path);
    circ::ApproxInstance inst = load_instance(cli, germ_path);
    circ::WitnessTable wt = circ::convergence_witness(c, inst, kmax);
    json rows = json::array();
    for (const circ::WitnessRow& r : wt.rows) {
      json e;
      e["k"] = r.k;
      e["eps"] = r.eps.str();
      e["evaluated"] = r.evaluated;
      e["deviation"] = r.deviation.get_str();
      rows.push_back(e);
      lines.push_back("k=" + std::to_string(r.k) + "  eps=" + r.eps.str() +
                      (r.evaluated ? "  deviation=" + r.deviation.get_str()
                                   : "  skipped"));
    }
    json out;
    out["rows"] = rows;
    out["bound_constant"] = wt.bound_constant.get_str();
    lines.push_back("bound constant " + wt.bound_constant.get_str());
    return out;
  });
}

void cmd_repro(Cli& cli, const std::string& suite) {
  run_command(cli, suite.empty() ? "repro" : "repro " + suite,
              [&](std::vector<std::string>& lines) {
                std::vector<circ::ReproRow> rows =
                    suite.empty() ? circ::run_repro_all()
                                  : circ::run_repro(suite);
                json arr = json::array();
                for (const circ::ReproRow& r : rows) {
                  json e;
                  e["suite"] = r.suite;
                  e["item"] = r.item;
                  e["pass"] = r.pass;
                  e["millis"] = r.millis;
                  e["detail"] = r.detail;
                  arr.push_back(e);
                  char buf[512];
                  std::snprintf(buf, sizeof(buf), "%-11s %-28s %-5s %7ld ms  %s",
                                r.suite.c_str(), r.item.c_str(),
                                r.pass ? "PASS" : "FAIL", r.millis,
                                r.detail.c_str());
                  lines.push_back(buf);
                }
                bool all = circ::repro_all_pass(rows);
                lines.push_back(all ? "all suites passed" : "FAILURES present");
                json out;
                out["rows"] = arr;
                out["all_pass"] = all;
                if (!all) cli.exit_code = 1;
                return out;
              });
}

}  // namespace

int main(int argc, char** argv) {
  Cli cli;
  CLI::App app{"circ: parameterized arithmetic circuit toolkit"};
  app.require_subcommand(1);
  app.set_help_all_flag("--help-all", "expanded help for every subcommand");

  // Shared flags; subcommands read whichever of these they document.
  app.add_option("--seed", cli.seed, "seed for all randomized steps")
      ->capture_default_str();
  app.add_flag("--json", cli.json_out, "structured report with manifest");
  app.add_option("--trials", cli.trials, "sample count for probabilistic checks")
      ->capture_default_str();
  app.add_option("--prec", cli.prec, "series precision override");
  app.add_option("--ceiling", cli.ceiling,
                 "size ceiling override (see also CIRC_CEILING_N)");
  app.add_option("-o,--out", cli.out, "output file for produced artifacts");

  std::string path, path2, domain_path, params, inputs, map, strategy = "primes",
                                                          suite;
  long budget = 0;
  bool exact = false;
  int points = 0, kmax = 10;

  auto* v = app.add_subcommand("validate", "structural well-formedness");
  v->add_option("circuit", path)->required();
  v->callback([&] { cmd_validate(cli, path); });

  auto* cl = app.add_subcommand("classify", "per-node dependency classes");
  cl->add_option("circuit", path)->required();
  cl->callback([&] { cmd_classify(cli, path); });

  auto* ev = app.add_subcommand("eval", "evaluate at a rational point");
  ev->add_option("circuit", path)->required();
  ev->add_option("--params", params, "comma-separated parameter values");
  ev->add_option("--inputs", inputs, "comma-separated input values");
  ev->callback([&] { cmd_eval(cli, path, params, inputs); });

  auto* ex = app.add_subcommand("expand", "symbolic expansion of the outputs");
  ex->add_option("circuit", path)->required();
  ex->add_option("--at-params", params, "bind parameters to these values");
  ex->add_option("--budget", budget, "term budget per intermediate value");
  ex->callback([&] { cmd_expand(cli, path, params, budget); });

  auto* co = app.add_subcommand("consistent", "division-by-zero analysis");
  co->add_option("circuit", path)->required();
  co->add_option("--domain", domain_path, "parameter domain file");
  co->add_flag("--exact", exact, "symbolic check instead of sampling");
  co->callback([&] { cmd_consistent(cli, path, domain_path, exact, "consistent"); });

  auto* jn = app.add_subcommand("join", "feed one circuit's outputs into another");
  jn->add_option("f", path)->required();
  jn->add_option("g", path2)->required();
  jn->add_option("--map", map, "slot:input pairs, default identity");
  jn->add_option("--domain", domain_path, "parameter domain file");
  jn->callback([&] { cmd_join(cli, path, path2, map, domain_path); });

  auto* rd = app.add_subcommand("reduce", "merge nodes computing equal functions");
  rd->add_option("circuit", path)->required();
  rd->add_option("--domain", domain_path, "parameter domain file");
  rd->add_flag("--exact", exact, "confirm merges symbolically");
  rd->add_option("--points", points, "sample points for the semantic pass");
  rd->callback([&] { cmd_reduce(cli, path, domain_path, exact, points); });

  auto* gc = app.add_subcommand("gc", "drop nodes unreachable from outputs");
  gc->add_option("circuit", path)->required();
  gc->callback([&] { cmd_gc(cli, path); });

  auto* rs = app.add_subcommand("restrict", "re-check divisions over a smaller domain");
  rs->add_option("circuit", path)->required();
  rs->add_option("--domain", domain_path, "parameter domain file")->required();
  rs->add_flag("--exact", exact, "symbolic check instead of sampling");
  rs->callback([&] { cmd_consistent(cli, path, domain_path, exact, "restrict"); });

  auto* ct = app.add_subcommand("cost", "multiplication-centric cost measures");
  ct->add_option("circuit", path)->required();
  ct->callback([&] { cmd_cost(cli, path); });

  auto* fam = app.add_subcommand("family", "the structured benchmark family");
  fam->require_subcommand(1);
  auto* fh = fam->add_subcommand("H", "generic member circuit");
  fh->add_option("--n", cli.n)->required();
  fh->callback([&] { cmd_family_circuit(cli, "H"); });
  auto* fb = fam->add_subcommand("beta", "full system circuit");
  fb->add_option("--n", cli.n)->required();
  fb->callback([&] { cmd_family_circuit(cli, "beta"); });
  auto* fv = fam->add_subcommand("verify-identity",
                                 "root product equals the eliminant");
  fv->add_option("--n", cli.n)->required();
  fv->callback([&] { cmd_family_verify(cli); });
  auto* ff = fam->add_subcommand("formula-size", "size of the defining formula");
  ff->add_option("--n", cli.n)->required();
  ff->callback([&] { cmd_family_formula(cli); });
  auto* fp = fam->add_subcommand("points", "sampled identification points");
  fp->add_option("--n", cli.n)->required();
  fp->callback([&] { cmd_family_points(cli); });

  auto* lb = app.add_subcommand("lb", "lower-bound certificates and audits");
  lb->require_subcommand(1);
  auto* lr = lb->add_subcommand("rank-cert", "coefficient-response rank certificate");
  lr->add_option("--n", cli.n)->required();
  lr->add_option("--strategy", strategy, "primes|random")
      ->check(CLI::IsMember({"primes", "random"}));
  lr->callback([&] { cmd_lb_rank(cli, strategy); });
  auto* ln = lb->add_subcommand("naive", "straightforward eliminant evaluator");
  ln->add_option("--n", cli.n)->required();
  ln->callback([&] { cmd_lb_naive(cli); });
  auto* la = lb->add_subcommand("audit", "verify a candidate evaluator and count m");
  la->add_option("circuit", path)->required();
  la->add_option("--n", cli.n)->required();
  la->callback([&] { cmd_lb_audit(cli, path); });

  auto* ax = app.add_subcommand("approx", "evaluation along parameter curves");
  ax->require_subcommand(1);
  auto* ae = ax->add_subcommand("eval", "limit polynomial along a germ");
  ae->add_option("circuit", path)->required();
  ae->add_option("--germ", path2, "germ file")->required();
  ae->callback([&] { cmd_approx_eval(cli, path, path2); });
  auto* aw = ax->add_subcommand("witness", "exact deviations along eps_k = 2^-k");
  aw->add_option("circuit", path)->required();
  aw->add_option("--germ", path2, "germ file")->required();
  aw->add_option("--kmax", kmax, "last row index")->capture_default_str();
  aw->callback([&] { cmd_approx_witness(cli, path, path2, kmax); });

  auto* rp = app.add_subcommand("repro", "pinned reproduction suites");
  rp->add_option("suite", suite, "one suite name; all when omitted");
  rp->callback([&] { cmd_repro(cli, suite); });

  // Shared flags live on the root; let every subcommand hand them back up.
  std::function<void(CLI::App*)> fall = [&](CLI::App* a) {
    for (CLI::App* sc : a->get_subcommands([](CLI::App*) { return true; })) {
      sc->fallthrough();
      fall(sc);
    }
  };
  fall(&app);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const circ::ParseError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return 2;
  } catch (const circ::PreconditionError& e) {
    std::cerr << "precondition: " << e.what() << "\n";
    return 2;
  } catch (const circ::InconsistentJoin& e) {
    std::cerr << "inconsistent join: " << e.what() << "\n";
    return 1;
  } catch (const circ::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return cli.exit_code;
}
