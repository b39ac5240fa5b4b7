#pragma once

#include <string>

#include <json.hpp>

#include "liouville/curve_topo.hpp"
#include "liouville/holo_disk.hpp"
#include "liouville/quant_lab.hpp"
#include "liouville/spectral_circle.hpp"

namespace liouville::io {

using json = nlohmann::ordered_json;

inline constexpr const char* kVersion = "0.1.0";

// Documents written by the tool wrap their payload as {"metadata", "result"};
// readers accept either the wrapper or the bare payload.
const json& payload(const json& doc);
json parse(const std::string& text);
std::string dump(const json& doc);

// {"type": "grid", "n", "values", "imag"?}; imag only when some entry is nonzero.
json to_json(const PeriodicGrid& g);
PeriodicGrid grid_from_json(const json& doc);

// {"type": "field", "n", "values", "anchors": [{"angle", "coeff"}]}
json to_json(const SingularField& f);
SingularField field_from_json(const json& doc);

// {"vertices": [[x, y]...], "closed": true, "corners": [...], "corner_tangents":
// [[in, out]...], "orientation": "ccw" | "cw", "turn_allowance"?}. Null tangents
// mean edge directions.
json to_json(const PolyCurve& c);
PolyCurve curve_from_json(const json& doc);

json to_json(const BlankWord& w);
json to_json(const Contraction& c);
// Indented step list, one removal per line.
std::string contraction_trace(const BlankWord& w, const Contraction& c);

json to_json(const RotationReport& r);
json to_json(const BlankResult& r);
json to_json(const std::vector<SeifertCircle>& circles);

json to_json(const ConcentrationProfile& p);
ConcentrationProfile profile_from_csv(const std::string& csv);
json to_json(const BlowupSet& b);
json to_json(const SequenceReport& r);
json to_json(const PinchReport& r);
json to_json(const LambdaAudit& a);
json to_json(const ResidualReport& r);
json to_json(const Warnings& w);

}  // namespace liouville::io
