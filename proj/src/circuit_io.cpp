#include "circ/circuit_io.hpp"

#include <fstream>
#include <map>
#include <sstream>

#include <json.hpp>

#include "circ/errors.hpp"

namespace circ {

using nlohmann::ordered_json;

namespace {

ordered_json parse_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text, nullptr, false);
  if (j.is_discarded()) throw ParseError("malformed JSON");
  return j;
}

Op op_from_name(const std::string& s) {
  if (s == "scalar") return Op::Scalar;
  if (s == "param") return Op::Param;
  if (s == "input") return Op::Input;
  if (s == "add") return Op::Add;
  if (s == "sub") return Op::Sub;
  if (s == "mul") return Op::Mul;
  if (s == "div") return Op::Div;
  throw ParseError("unknown op '" + s + "'");
}

ordered_json poly_to_obj(const SparsePoly& p, const std::string& var_prefix) {
  ordered_json vars = ordered_json::array();
  for (int i = 0; i < p.arity(); ++i) vars.push_back(var_prefix + std::to_string(i + 1));
  ordered_json terms = ordered_json::array();
  for (const auto& [e, c] : p.terms()) {
    ordered_json t;
    t["exp"] = e;
    t["coef"] = c.str();
    terms.push_back(std::move(t));
  }
  ordered_json out;
  out["vars"] = std::move(vars);
  out["terms"] = std::move(terms);
  return out;
}

SparsePoly poly_from_obj(const ordered_json& j) {
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms"))
    throw ParseError("polynomial: expected {vars, terms}");
  if (!j["vars"].is_array()) throw ParseError("polynomial: vars must be an array");
  int arity = static_cast<int>(j["vars"].size());
  SparsePoly p(arity);
  for (const auto& t : j["terms"]) {
    if (!t.contains("exp") || !t.contains("coef"))
      throw ParseError("polynomial term: expected {exp, coef}");
    std::vector<std::uint32_t> e = t["exp"].get<std::vector<std::uint32_t>>();
    if (static_cast<int>(e.size()) != arity)
      throw ParseError("polynomial term: exponent length differs from vars");
    p.add_term(e, Scalar::from_string(t["coef"].get<std::string>()));
  }
  return p;
}

}  // namespace

std::string circuit_to_json(const Circuit& c) {
  ordered_json j;
  j["params"] = c.params;
  j["inputs"] = c.inputs;
  ordered_json nodes = ordered_json::array();
  for (int i = 0; i < c.size(); ++i) {
    const Node& n = c.nodes[i];
    ordered_json jn;
    jn["id"] = i;
    jn["op"] = op_name(n.op);
    if (n.op == Op::Scalar) jn["value"] = n.value.str();
    if (n.op == Op::Param || n.op == Op::Input) jn["index"] = n.index;
    if (!op_is_leaf(n.op)) jn["args"] = {n.a, n.b};
    nodes.push_back(std::move(jn));
  }
  j["nodes"] = std::move(nodes);
  j["outputs"] = c.outputs;
  return j.dump(2) + "\n";
}

Circuit circuit_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  if (!j.is_object() || !j.contains("params") || !j.contains("inputs") ||
      !j.contains("nodes") || !j.contains("outputs"))
    throw ParseError("circuit: expected {params, inputs, nodes, outputs}");

  Circuit c;
  c.params = j["params"].get<int>();
  c.inputs = j["inputs"].get<int>();
  if (c.params < 0 || c.inputs < 0) throw ParseError("circuit: negative arity");

  const auto& jnodes = j["nodes"];
  if (!jnodes.is_array()) throw ParseError("circuit: nodes must be an array");

  std::map<long, int> pos_of_id;
  for (std::size_t i = 0; i < jnodes.size(); ++i) {
    const auto& jn = jnodes[i];
    if (!jn.contains("id") || !jn.contains("op")) throw ParseError("node: expected {id, op}");
    long id = jn["id"].get<long>();
    if (!pos_of_id.emplace(id, static_cast<int>(i)).second)
      throw ParseError("duplicate node id " + std::to_string(id));
  }

  for (const auto& jn : jnodes) {
    Node n;
    n.op = op_from_name(jn["op"].get<std::string>());
    if (n.op == Op::Scalar) {
      if (!jn.contains("value")) throw ParseError("scalar node: missing value");
      n.value = Scalar::from_string(jn["value"].get<std::string>());
    } else if (n.op == Op::Param || n.op == Op::Input) {
      if (!jn.contains("index")) throw ParseError("leaf node: missing index");
      n.index = jn["index"].get<int>();
      int limit = n.op == Op::Param ? c.params : c.inputs;
      if (n.index < 1 || n.index > limit)
        throw ParseError(std::string(op_name(n.op)) + " index " + std::to_string(n.index) +
                         " outside 1.." + std::to_string(limit));
    }
    if (op_is_leaf(n.op)) {
      if (jn.contains("args")) throw ParseError("leaf node must not carry args");
    } else {
      if (!jn.contains("args") || !jn["args"].is_array() || jn["args"].size() != 2)
        throw ParseError("binary node: expected args of length 2");
      for (int k = 0; k < 2; ++k) {
        long id = jn["args"][k].get<long>();
        auto it = pos_of_id.find(id);
        if (it == pos_of_id.end())
          throw ParseError("argument references unknown node id " + std::to_string(id));
        (k == 0 ? n.a : n.b) = it->second;
      }
    }
    c.nodes.push_back(std::move(n));
  }

  for (const auto& jo : j["outputs"]) {
    long id = jo.get<long>();
    auto it = pos_of_id.find(id);
    if (it == pos_of_id.end())
      throw ParseError("output references unknown node id " + std::to_string(id));
    c.outputs.push_back(it->second);
  }
  return c;
}

std::string poly_to_json(const SparsePoly& p, const std::string& var_prefix) {
  return poly_to_obj(p, var_prefix).dump(2) + "\n";
}

SparsePoly poly_from_json_text(const std::string& text) {
  return poly_from_obj(parse_json(text));
}

std::string domain_to_json(const ParameterDomain& d) {
  ordered_json j;
  if (std::holds_alternative<AffineSpace>(d)) {
    j["kind"] = "affine";
    j["r"] = std::get<AffineSpace>(d).r;
  } else if (std::holds_alternative<Localized>(d)) {
    const auto& loc = std::get<Localized>(d);
    j["kind"] = "localized";
    j["r"] = loc.r;
    ordered_json gens = ordered_json::array();
    for (const auto& g : loc.generators) gens.push_back(poly_to_obj(g, "U"));
    j["generators"] = std::move(gens);
    j["inequation"] = poly_to_obj(loc.inequation, "U");
  } else {
    const auto& im = std::get<ImageDomain>(d);
    j["kind"] = "image";
    j["r"] = im.r;
    j["source_dim"] = im.source_dim;
    ordered_json map = ordered_json::array();
    for (const auto& p : im.map) map.push_back(poly_to_obj(p, "S"));
    j["map"] = std::move(map);
  }
  return j.dump(2) + "\n";
}

ParameterDomain domain_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  if (!j.is_object() || !j.contains("kind")) throw ParseError("domain: expected {kind,...}");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "affine") {
    AffineSpace a{j.at("r").get<int>()};
    if (a.r < 0) throw ParseError("domain: negative r");
    return a;
  }
  if (kind == "localized") {
    Localized loc;
    loc.r = j.at("r").get<int>();
    for (const auto& jg : j.at("generators")) {
      SparsePoly g = poly_from_obj(jg);
      if (g.arity() != loc.r) throw ParseError("domain: generator arity differs from r");
      loc.generators.push_back(std::move(g));
    }
    loc.inequation = j.contains("inequation")
                         ? poly_from_obj(j["inequation"])
                         : SparsePoly::constant(loc.r, Scalar(1));
    if (loc.inequation.arity() != loc.r)
      throw ParseError("domain: inequation arity differs from r");
    if (loc.inequation.is_zero())
      throw ParseError("domain: inequation is identically zero");
    return loc;
  }
  if (kind == "image") {
    ImageDomain im;
    im.r = j.at("r").get<int>();
    im.source_dim = j.at("source_dim").get<int>();
    for (const auto& jp : j.at("map")) {
      SparsePoly p = poly_from_obj(jp);
      if (p.arity() != im.source_dim)
        throw ParseError("domain: map entry arity differs from source_dim");
      im.map.push_back(std::move(p));
    }
    if (static_cast<int>(im.map.size()) != im.r)
      throw ParseError("domain: map must supply one polynomial per coordinate");
    return im;
  }
  throw ParseError("domain: unknown kind '" + kind + "'");
}

std::string germ_to_json(const GermFile& g) {
  ordered_json j;
  j["prec"] = g.prec;
  ordered_json entries = ordered_json::array();
  for (const auto& s : g.entries) {
    ordered_json je;
    if (s.is_zero()) {
      je["order"] = 0;
      je["coeffs"] = ordered_json::array();
    } else {
      je["order"] = s.order();
      ordered_json coeffs = ordered_json::array();
      for (std::size_t i = 0; i < s.stored(); ++i)
        coeffs.push_back(s.coef_at(s.order() + static_cast<long>(i)).str());
      je["coeffs"] = std::move(coeffs);
    }
    entries.push_back(std::move(je));
  }
  j["entries"] = std::move(entries);
  if (g.domain) j["domain"] = ordered_json::parse(domain_to_json(*g.domain));
  return j.dump(2) + "\n";
}

GermFile germ_from_json(const std::string& text) {
  ordered_json j = parse_json(text);
  if (!j.is_object() || !j.contains("entries")) throw ParseError("germ: expected {entries}");
  GermFile g;
  g.prec = j.value("prec", 16);
  if (g.prec < 1) throw ParseError("germ: prec must be at least 1");
  for (const auto& je : j["entries"]) {
    if (!je.contains("order") || !je.contains("coeffs"))
      throw ParseError("germ entry: expected {order, coeffs}");
    long order = je["order"].get<long>();
    std::vector<Scalar> coeffs;
    for (const auto& jc : je["coeffs"])
      coeffs.push_back(Scalar::from_string(jc.get<std::string>()));
    long window = std::max<long>(static_cast<long>(coeffs.size()), g.prec);
    g.entries.push_back(
        ScalarSeries::make(Scalar(0), order, std::move(coeffs), order + window));
  }
  if (j.contains("domain")) g.domain = domain_from_json(j["domain"].dump());
  return g;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write file: " + path);
  out << content;
}

std::uint64_t fnv1a64(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  static const char* digits = "0123456789abcdef";
  std::string s(16, '0');
  for (int i = 15; i >= 0; --i) {
    s[i] = digits[v & 0xF];
    v >>= 4;
  }
  return s;
}

}  // namespace circ
