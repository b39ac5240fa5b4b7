#pragma once

#include <string>
#include <vector>

#include "liouville/json_io.hpp"

namespace liouville::io {

// What a command produces: the JSON document ({"metadata", "result"}), an
// optional human-readable trace and an optional CSV table.
struct CommandOutput {
  json document;
  std::string trace;
  std::string table;
};

const std::vector<std::string>& command_names();
const std::vector<std::string>& fixture_names();

// config keys (all optional unless the command needs them):
//   input   path of a JSON document (grid, field, curve or word)
//   seed, n, r, word, name, mu, x0, beta, m, k
//   family  bubbles | constant | two-bubble | recentred
//   mu_ladder "2^0..2^12" or a list of numbers; radii; ts; count; c; a
//   tol, kappa_bar, mesh, pairs, center, absolute, with_decoys
// Unknown command is InvalidInput; unknown fixture is UnknownFixture.
CommandOutput run_command(const std::string& command, const json& config);

// Payload of one fixture, without the metadata wrapper.
json fixture(const std::string& name, const json& config);

// "b^i..b^j" -> {b^i, ..., b^j}; exponents are returned through `exponents`.
std::vector<double> parse_ladder(const std::string& text, std::vector<int>* exponents = nullptr);

}  // namespace liouville::io
