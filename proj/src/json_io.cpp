#include "liouville/json_io.hpp"

#include "liouville/predicates.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace liouville::io {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

json pair(cplx z) { return json::array({z.real(), z.imag()}); }

double number(const json& v, const char* what) {
  if (v.is_null()) return std::numeric_limits<double>::quiet_NaN();
  if (!v.is_number()) bad(std::string(what) + " must be a number");
  return v.get<double>();
}

std::vector<double> numbers(const json& doc, const char* key) {
  if (!doc.contains(key) || !doc[key].is_array()) bad(std::string("missing array \"") + key + "\"");
  std::vector<double> out;
  for (const auto& v : doc[key]) out.push_back(number(v, key));
  return out;
}

}  // namespace

const json& payload(const json& doc) { return doc.is_object() && doc.contains("result") ? doc["result"] : doc; }

json parse(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

json to_json(const PeriodicGrid& g) {
  json re = json::array(), im = json::array();
  bool complex = false;
  for (const auto& v : g.values) {
    re.push_back(v.real());
    im.push_back(v.imag());
    complex = complex || v.imag() != 0.0;
  }
  json out{{"type", "grid"}, {"n", g.n()}, {"values", re}};
  if (complex) out["imag"] = im;
  return out;
}

PeriodicGrid grid_from_json(const json& doc) {
  const json& d = payload(doc);
  auto re = numbers(d, "values");
  if (d.contains("n") && d["n"].get<std::size_t>() != re.size()) bad("\"n\" does not match the number of values");
  PeriodicGrid g;
  if (d.contains("imag")) {
    auto im = numbers(d, "imag");
    if (im.size() != re.size()) bad("\"imag\" and \"values\" differ in length");
    std::vector<cplx> v(re.size());
    for (std::size_t j = 0; j < v.size(); ++j) v[j] = {re[j], im[j]};
    g = PeriodicGrid::from_complex(std::move(v));
  } else {
    g = PeriodicGrid::from_real(std::move(re));
  }
  validate(g);
  return g;
}

json to_json(const SingularField& f) {
  json out = to_json(f.smooth);
  out["type"] = "field";
  json anchors = json::array();
  for (const auto& a : f.anchors) anchors.push_back({{"angle", a.angle}, {"coeff", a.coeff}});
  out["anchors"] = anchors;
  return out;
}

SingularField field_from_json(const json& doc) {
  const json& d = payload(doc);
  SingularField f{grid_from_json(d), {}};
  if (d.contains("anchors")) {
    for (const auto& a : d["anchors"]) f.anchors.push_back({number(a.at("angle"), "angle"), number(a.at("coeff"), "coeff")});
  }
  return f;
}

json to_json(const PolyCurve& c) {
  json verts = json::array();
  for (auto p : c.vertices) verts.push_back(pair(p));
  json corners = json::array(), tangents = json::array();
  for (const auto& k : c.corners) {
    corners.push_back(k.vertex);
    tangents.push_back(json::array({k.tangent_in, k.tangent_out}));  // NaN dumps as null
  }
  bool ccw = turning_number(c.vertices) >= 0.0;
  json out{{"vertices", verts}, {"closed", true}, {"corners", corners}};
  if (!c.corners.empty()) out["corner_tangents"] = tangents;
  out["orientation"] = ccw ? "ccw" : "cw";
  if (c.turn_allowance > 0.0) out["turn_allowance"] = c.turn_allowance;
  return out;
}

PolyCurve curve_from_json(const json& doc) {
  const json& d = payload(doc);
  if (!d.is_object() || !d.contains("vertices")) bad("curve needs \"vertices\"");
  if (d.contains("closed") && !d["closed"].get<bool>()) bad("only closed curves are supported");
  std::vector<Point> pts;
  for (const auto& v : d["vertices"]) {
    if (!v.is_array() || v.size() != 2) bad("each vertex must be [x, y]");
    pts.emplace_back(number(v[0], "x"), number(v[1], "y"));
  }
  std::vector<Corner> corners;
  if (d.contains("corners")) {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    const json* tangents = d.contains("corner_tangents") ? &d["corner_tangents"] : nullptr;
    if (tangents && tangents->size() != d["corners"].size()) bad("\"corner_tangents\" and \"corners\" differ in length");
    for (std::size_t i = 0; i < d["corners"].size(); ++i) {
      Corner k{d["corners"][i].get<std::size_t>(), nan, nan};
      if (tangents) {
        k.tangent_in = number((*tangents)[i].at(0), "tangent");
        k.tangent_out = number((*tangents)[i].at(1), "tangent");
      }
      corners.push_back(k);
    }
  }
  if (!d.contains("turn_allowance")) {
    PolyCurve c = make_curve(std::move(pts), std::move(corners));
    if (d.contains("orientation")) c.ccw = d["orientation"] != "cw";
    return c;
  }
  // jittered or rounded copies: validate against the stored allowance
  PolyCurve c;
  for (auto p : pts) c.vertices.push_back(geom::snap(p));
  c.corners = std::move(corners);
  std::sort(c.corners.begin(), c.corners.end(), [](const Corner& a, const Corner& b) { return a.vertex < b.vertex; });
  c.turn_allowance = number(d["turn_allowance"], "turn_allowance");
  if (!(c.turn_allowance >= 0.0)) bad("turn_allowance must be >= 0");
  validate_curve(c);
  c.ccw = d.contains("orientation") ? d["orientation"] != "cw" : turning_number(c.vertices) >= 0.0;
  return c;
}

json to_json(const BlankWord& w) {
  json letters = json::array();
  for (const auto& l : w.letters)
    letters.push_back({{"face", face_name(l.face)}, {"index", l.index}, {"sign", l.sign > 0 ? "+" : "-"}});
  return {{"word", w.str()}, {"letters", letters}};
}

json to_json(const Contraction& c) {
  json steps = json::array();
  for (const auto& s : c.steps) steps.push_back({{"removed", s.removed}, {"removed_text", s.removed_text}, {"result", s.result}});
  return {{"fully_contracted", c.fully_contracted},
          {"order", c.exhaustive ? "exhaustive" : "leftmost-first"},
          {"steps", steps},
          {"remainder", c.remainder.str()}};
}

std::string contraction_trace(const BlankWord& w, const Contraction& c) {
  std::ostringstream os;
  os << "word: " << w.str() << "\n";
  os << "order: " << (c.exhaustive ? "exhaustive" : "leftmost-first") << "\n";
  for (std::size_t i = 0; i < c.steps.size(); ++i) {
    os << "  step " << i + 1 << ": remove " << c.steps[i].removed_text << "\n";
    os << "    -> " << (c.steps[i].result.empty() ? "(empty)" : c.steps[i].result) << "\n";
  }
  os << "verdict: " << (c.fully_contracted ? "contracts" : "does not contract") << "\n";
  return os.str();
}

json to_json(const RotationReport& r) {
  return {{"rotation_index", r.index},
          {"total_turning", r.total_turning},
          {"smooth_turning", r.smooth_turning},
          {"exterior_angles", r.exterior_angles}};
}

json to_json(const BlankResult& r) {
  json out = to_json(r.word);
  out["params"] = r.params;
  json pts = json::array();
  for (auto p : r.points) pts.push_back(pair(p));
  out["points"] = pts;
  json rays = json::array();
  for (const auto& ray : r.rays)
    rays.push_back({{"face", face_name(ray.face)},
                    {"origin", pair(ray.origin)},
                    {"angle", ray.angle},
                    {"length", ray.length},
                    {"crossings", ray.crossings}});
  out["rays"] = rays;
  return out;
}

json to_json(const std::vector<SeifertCircle>& circles) {
  json arr = json::array();
  int sum = 0;
  for (const auto& s : circles) {
    json pts = json::array();
    for (auto p : s.points) pts.push_back(pair(p));
    arr.push_back({{"index", s.index}, {"vertices", pts}});
    sum += s.index;
  }
  return {{"count", circles.size()}, {"index_sum", sum}, {"circles", arr}};
}

json to_json(const ConcentrationProfile& p) {
  return {{"center", p.center}, {"absolute", p.absolute}, {"radii", p.radii}, {"ks", p.ks}, {"alpha", p.alpha}};
}

ConcentrationProfile profile_from_csv(const std::string& csv) {
  std::istringstream is(csv);
  std::string line;
  if (!std::getline(is, line) || line != "r,k,alpha") bad("CSV header must be r,k,alpha");
  ConcentrationProfile p;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string a, b, c;
    if (!std::getline(row, a, ',') || !std::getline(row, b, ',') || !std::getline(row, c)) bad("CSV row needs 3 fields");
    double r = std::stod(a), alpha = std::stod(c);
    int k = std::stoi(b);
    if (p.radii.empty() || p.radii.back() != r) {
      p.radii.push_back(r);
      p.alpha.emplace_back();
    }
    if (p.radii.size() == 1) p.ks.push_back(k);
    p.alpha.back().push_back(alpha);
  }
  for (const auto& row : p.alpha)
    if (row.size() != p.ks.size()) bad("CSV rows do not form a full r x k table");
  return p;
}

json to_json(const BlowupSet& b) {
  json pts = json::array();
  for (const auto& bp : b.points)
    pts.push_back({{"x", bp.x},
                   {"circle_point", pair(bp.circle_point)},
                   {"mass", bp.mass},
                   {"tail_max", bp.tail_max},
                   {"limits", bp.limits}});
  json profiles = json::array();
  for (const auto& p : b.profiles) profiles.push_back(to_json(p));
  return {{"points", pts}, {"profiles", profiles}};
}

json to_json(const SequenceReport& r) {
  return {{"case", case_name(r.kind)},
          {"lambda_bar", r.lambda_bar},
          {"Lambda", r.Lambda},
          {"beta", r.beta},
          {"blowup", to_json(r.blowup)}};
}

json to_json(const PinchReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows)
    rows.push_back({{"k", row.k},
                    {"p", pair(row.p)},
                    {"q", pair(row.q)},
                    {"distance", row.distance},
                    {"mesh_tol", row.mesh_tol},
                    {"arc_gap", row.arc_gap}});
  json verdicts = json::array();
  for (const auto& v : r.verdicts)
    verdicts.push_back({{"p", pair(v.p)}, {"q", pair(v.q)}, {"pinched", v.pinched}, {"ratio", v.ratio}, {"arc_audit_ok", v.arc_audit_ok}});
  return {{"rows", rows}, {"verdicts", verdicts}};
}

json to_json(const LambdaAudit& a) {
  json entries = json::array();
  for (const auto& e : a.entries)
    entries.push_back({{"label", e.label},
                       {"verified", e.verified},
                       {"notice", e.notice},
                       {"residual", e.residual},
                       {"Lambda", e.Lambda},
                       {"slope", e.slope},
                       {"slope_agrees", e.slope_agrees}});
  return {{"verified", a.verified}, {"entries", entries}};
}

json to_json(const ResidualReport& r) {
  return {{"n", r.n},
          {"sup", r.sup},
          {"l2", r.l2},
          {"Lambda", r.Lambda},
          {"beta", r.beta},
          {"dirac_mismatch", r.dirac_mismatch},
          {"singular_mismatch", r.singular_mismatch},
          {"kappa_bound", r.kappa_bound},
          {"warnings", to_json(r.warnings)}};
}

json to_json(const Warnings& w) {
  json arr = json::array();
  for (const auto& x : w) arr.push_back({{"kind", x.kind}, {"message", x.message}});
  return arr;
}

}  // namespace liouville::io
