#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "circ/circuit.hpp"
#include "circ/domain.hpp"
#include "circ/laurent.hpp"

namespace circ {

// JSON text formats (see README for examples):
//   circuit    {"params":r,"inputs":n,"nodes":[{"id":k,"op":"add",...}],"outputs":[..]}
//   polynomial {"vars":["U1",...],"terms":[{"exp":[...],"coef":"p/q"}]}
//   domain     {"kind":"affine"|"localized"|"image", ...}
//   germ       {"prec":N,"entries":[{"order":o,"coeffs":["p/q",...]}],"domain":{...}}
//
// Circuit node ids in a file may be arbitrary distinct integers; arguments
// refer to ids. Serialization always emits ids equal to node positions.

std::string circuit_to_json(const Circuit& c);
Circuit circuit_from_json(const std::string& text);

std::string poly_to_json(const SparsePoly& p, const std::string& var_prefix = "U");
SparsePoly poly_from_json_text(const std::string& text);

std::string domain_to_json(const ParameterDomain& d);
ParameterDomain domain_from_json(const std::string& text);

struct GermFile {
  int prec = 16;
  std::vector<ScalarSeries> entries;
  std::optional<ParameterDomain> domain;
};

std::string germ_to_json(const GermFile& g);
GermFile germ_from_json(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

std::uint64_t fnv1a64(const std::string& data);
std::string hex64(std::uint64_t v);

}  // namespace circ
