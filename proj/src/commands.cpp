#include "liouville/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iomanip>
#include <map>
#include <numbers>
#include <random>
#include <regex>
#include <sstream>

namespace liouville::io {
namespace {

constexpr double kPi = std::numbers::pi;

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::InvalidInput, what); }

template <class T>
T opt(const json& cfg, const char* key, T fallback) {
  if (!cfg.contains(key) || cfg[key].is_null()) return fallback;
  return cfg[key].get<T>();
}

std::uint64_t seed_of(const json& cfg) { return opt<std::uint64_t>(cfg, "seed", 0); }

json read_input(const json& cfg) {
  if (!cfg.contains("input")) bad("this command needs an input file");
  std::string path = cfg["input"].get<std::string>();
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

std::vector<double> number_list(const json& v, const char* what) {
  std::vector<double> out;
  if (v.is_array()) {
    for (const auto& x : v) out.push_back(x.get<double>());
  } else if (v.is_string()) {
    std::stringstream ss(v.get<std::string>());
    std::string item;
    while (std::getline(ss, item, ',')) {
      try {
        std::size_t used = 0;
        out.push_back(std::stod(item, &used));
        if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument(item);
      } catch (const std::exception&) {
        bad(std::string("bad number in ") + what + ": \"" + item + "\"");
      }
    }
  } else if (v.is_number()) {
    out.push_back(v.get<double>());
  } else {
    bad(std::string(what) + " must be a list of numbers");
  }
  if (out.empty()) bad(std::string(what) + " is empty");
  return out;
}

PolyCurve input_curve(const json& cfg) { return curve_from_json(read_input(cfg)); }

SingularField input_field(const json& cfg) {
  json doc = read_input(cfg);
  return field_from_json(doc);
}

cplx point_of(const json& v) {
  if (v.is_number()) return std::polar(1.0, v.get<double>());
  if (v.is_array() && v.size() == 2) return {v[0].get<double>(), v[1].get<double>()};
  bad("a point is an angle or [re, im]");
}

// ---- families ----

struct Ladder {
  std::vector<double> values;
  std::vector<int> exponents;  // empty unless given as b^i..b^j
};

Ladder ladder_of(const json& cfg, const std::string& fallback) {
  Ladder l;
  json v = cfg.contains("mu_ladder") && !cfg["mu_ladder"].is_null() ? cfg["mu_ladder"] : json(fallback);
  if (v.is_string() && v.get<std::string>().find("..") != std::string::npos)
    l.values = parse_ladder(v.get<std::string>(), &l.exponents);
  else
    l.values = number_list(v, "mu_ladder");
  return l;
}

struct Family {
  std::vector<SequenceMember> members;
  std::vector<int> ks;
  json description;
};

Family family_of(const json& cfg, const std::string& ladder_fallback) {
  std::string name = opt<std::string>(cfg, "family", "bubbles");
  Family f;
  f.description = {{"family", name}};
  if (name == "bubbles") {
    Ladder l = ladder_of(cfg, ladder_fallback);
    double x0 = opt(cfg, "x0", 0.0);
    std::vector<BubbleParams> ps;
    for (double mu : l.values) ps.push_back({mu, x0});
    f.members = bubble_sequence(ps);
    f.ks = l.exponents;
    f.description["mu"] = l.values;
    f.description["x0"] = x0;
  } else if (name == "constant") {
    int count = opt(cfg, "count", 8);
    if (count < 1) bad("count must be positive");
    f.members = bubble_sequence(std::vector<BubbleParams>(static_cast<std::size_t>(count), BubbleParams{1.0, 0.0}));
    f.description["count"] = count;
  } else if (name == "two-bubble") {
    Ladder l = ladder_of(cfg, ladder_fallback);
    double c = opt(cfg, "c", 1.0);
    f.members = two_bubble_sequence(l.values, c);
    f.ks = l.exponents;
    f.description["mu"] = l.values;
    f.description["c"] = c;
  } else if (name == "recentred") {
    std::vector<double> ts;
    if (cfg.contains("ts")) {
      ts = number_list(cfg["ts"], "ts");
    } else {
      for (int k = 1; k <= 10; ++k) {
        ts.push_back(1.0 - std::ldexp(1.0, -k));
        f.ks.push_back(k);
      }
    }
    cplx a = cfg.contains("a") ? point_of(cfg["a"]) : cplx(1.0, 0.0);
    f.members = recentred_sequence(a, ts);
    f.description["t"] = ts;
    f.description["a"] = json::array({a.real(), a.imag()});
  } else {
    bad("unknown family \"" + name + "\" (bubbles, constant, two-bubble, recentred)");
  }
  if (f.ks.size() != f.members.size()) {
    f.ks.resize(f.members.size());
    for (std::size_t i = 0; i < f.ks.size(); ++i) f.ks[i] = static_cast<int>(i);
  }
  return f;
}

std::vector<double> radii_of(const json& cfg) {
  if (!cfg.contains("radii") || cfg["radii"].is_null()) return kRadiusLadder;
  return number_list(cfg["radii"], "radii");
}

void relabel(ConcentrationProfile& p, const std::vector<int>& ks) { p.ks = ks; }

// ---- metadata ----

struct Context {
  std::string command;
  const json& cfg;
  json thresholds = json::object();
  json overrides = json::object();

  double threshold(const char* name, const char* key, double fallback) {
    double v = opt(cfg, key, fallback);
    thresholds[name] = v;
    if (cfg.contains(key) && !cfg[key].is_null()) overrides[name] = v;
    return v;
  }
  void fixed(const char* name, double v) { thresholds[name] = v; }

  json metadata() const {
    json m{{"tool", "liouville"}, {"version", kVersion}, {"command", command}, {"seed", seed_of(cfg)}};
    if (cfg.contains("n") && !cfg["n"].is_null()) m["n"] = cfg["n"];
    m["thresholds"] = thresholds;
    m["overrides"] = overrides;
    return m;
  }
};

json grid_result(const PeriodicGrid& g, const Warnings& w) {
  json out = to_json(g);
  out["warnings"] = to_json(w);
  return out;
}

// ---- commands ----

json cmd_halflap(Context& ctx, CommandOutput&) {
  ctx.fixed("band_tail_fraction", 0.01);
  SingularField f = input_field(ctx.cfg);
  if (f.anchors.empty()) {
    Warnings w;
    return grid_result(half_laplacian(f.smooth, &w), w);
  }
  auto s = singular_half_laplacian(f);
  json masses = json::array();
  for (const auto& m : s.masses) masses.push_back({{"angle", m.angle}, {"mass", m.mass}});
  json out = to_json(s.smooth);
  out["masses"] = masses;
  out["warnings"] = to_json(s.warnings);
  return out;
}

json cmd_hilbert(Context& ctx, CommandOutput&) {
  ctx.fixed("band_tail_fraction", 0.01);
  PeriodicGrid g = grid_from_json(read_input(ctx.cfg));
  Warnings w;
  return grid_result(hilbert(g, &w), w);
}

json cmd_extend(Context& ctx, CommandOutput&) {
  if (!ctx.cfg.contains("r")) bad("extend needs r");
  double r = ctx.cfg["r"].get<double>();
  PeriodicGrid g = grid_from_json(read_input(ctx.cfg));
  json out = to_json(poisson_extend(g, r));
  out["r"] = r;
  return out;
}

json cmd_curvature(Context& ctx, CommandOutput&) {
  ctx.fixed("band_tail_fraction", 0.01);
  ctx.fixed("rounding_guard", 0.05);
  SingularField f = input_field(ctx.cfg);
  auto bt = analytic_completion(f);
  double beta = 0.0;
  for (const auto& a : f.anchors) beta += a.coeff;
  double mass = curvature_mass(bt);
  json out{{"curvature", to_json(boundary_curvature(bt))},
           {"curvature_mass", mass},
           {"beta", beta},
           {"total", mass + beta},
           {"negative_frequency_residue", bt.negative_frequency_residue}};
  Warnings w = bt.warnings;
  try {
    auto tr = trace_boundary(bt);
    std::vector<Corner> corners;
    if (tr.corner) corners.push_back({*tr.corner, tr.tangent_in, tr.tangent_out});
    PolyCurve curve = make_curve(tr.points, corners);
    auto rot = rotation_index(curve);
    out["closure_error"] = tr.closure_error;
    out["rotation_index"] = rot.index;
    out["exterior_angles"] = rot.exterior_angles;
    out["boundary"] = to_json(curve);
  } catch (const Error& e) {
    w.push_back({"boundary", e.what()});
  }
  if (f.anchors.empty()) {
    try {
      out["min_derivative"] = min_derivative_on_lattice(build_phi(bt));
    } catch (const Error& e) {
      w.push_back({"immersion", e.what()});
    }
  }
  out["warnings"] = to_json(w);
  return out;
}

json cmd_rotation(Context& ctx, CommandOutput&) {
  ctx.fixed("rounding_guard", 0.05);
  PolyCurve c = input_curve(ctx.cfg);
  json out = to_json(rotation_index(c));
  out["crossings"] = self_intersections(c).size();
  return out;
}

json cmd_blank(Context& ctx, CommandOutput& res) {
  ctx.fixed("rounding_guard", 0.05);
  PolyCurve c = input_curve(ctx.cfg);
  auto arr = build_arrangement(c);
  auto blank = blank_word(arr, seed_of(ctx.cfg));
  auto con = contract(blank.word);
  json out = to_json(blank);
  out["contraction"] = to_json(con);
  res.trace = contraction_trace(blank.word, con);
  return out;
}

json cmd_contract(Context& ctx, CommandOutput& res) {
  std::string text;
  if (ctx.cfg.contains("word")) {
    text = ctx.cfg["word"].get<std::string>();
  } else {
    json doc = read_input(ctx.cfg);
    const json& d = payload(doc);
    if (!d.contains("word")) bad("input has no \"word\"");
    text = d["word"].get<std::string>();
  }
  BlankWord w = parse_word(text);
  auto con = contract(w);
  json out = to_json(w);
  out["contraction"] = to_json(con);
  res.trace = contraction_trace(w, con);
  return out;
}

json cmd_seifert(Context& ctx, CommandOutput&) {
  ctx.fixed("rounding_guard", 0.05);
  return to_json(seifert_decompose(input_curve(ctx.cfg)));
}

json cmd_scan(Context& ctx, CommandOutput& res) {
  Family fam = family_of(ctx.cfg, "2^0..2^12");
  auto radii = radii_of(ctx.cfg);
  std::optional<double> center;
  if (ctx.cfg.contains("center") && !ctx.cfg["center"].is_null()) center = ctx.cfg["center"].get<double>();
  auto prof = concentration_scan(fam.members, radii, center, opt(ctx.cfg, "absolute", false));
  relabel(prof, fam.ks);
  res.table = prof.csv();
  json out = fam.description;
  out["profile"] = to_json(prof);
  return out;
}

json cmd_classify(Context& ctx, CommandOutput& res) {
  double tol = ctx.threshold("mass_tol", "tol", kMassTolerance);
  ctx.fixed("case_two_drop", 5.0);
  ctx.fixed("case_one_drift", 1.0);
  Family fam = family_of(ctx.cfg, "2^0..2^12");
  auto rep = classify_case(fam.members, radii_of(ctx.cfg), tol);
  for (auto& p : rep.blowup.profiles) relabel(p, fam.ks);
  std::ostringstream table;
  table << std::setprecision(17) << "k,lambda_bar,Lambda,beta\n";
  for (std::size_t i = 0; i < fam.ks.size(); ++i)
    table << fam.ks[i] << ',' << rep.lambda_bar[i] << ',' << rep.Lambda[i] << ',' << rep.beta[i] << '\n';
  res.table = table.str();
  std::ostringstream trace;
  trace << "case: " << case_name(rep.kind) << "\n";
  for (const auto& b : rep.blowup.points) trace << "  blow-up at x = " << b.x << ", mass " << b.mass << "\n";
  res.trace = trace.str();
  json out = fam.description;
  out["ks"] = fam.ks;
  out["report"] = to_json(rep);
  return out;
}

json cmd_pinch(Context& ctx, CommandOutput& res) {
  ctx.fixed("pinch_ratio", 0.1);
  double kappa_bar = ctx.threshold("kappa_bar", "kappa_bar", 1.0);
  std::vector<double> mus = ladder_of(ctx.cfg, "16^0..16^3").values;
  std::size_t mesh = opt<std::size_t>(ctx.cfg, "mesh", 256);
  std::vector<std::pair<cplx, cplx>> pairs;
  if (ctx.cfg.contains("pairs")) {
    for (const auto& p : ctx.cfg["pairs"]) {
      if (!p.is_array() || p.size() != 2) bad("each pair has two points");
      pairs.emplace_back(point_of(p[0]), point_of(p[1]));
    }
  } else {
    pairs.emplace_back(1.0, -1.0);
  }
  std::vector<DiskMap> maps;
  for (double mu : mus) maps.push_back(bubble_disk_map(mu));
  auto rep = pinching_probe(maps, pairs, mesh, kappa_bar);
  std::ostringstream table;
  table << std::setprecision(17) << "k,mu,pair,distance,mesh_tol,arc_gap\n";
  for (std::size_t i = 0; i < rep.rows.size(); ++i) {
    const auto& row = rep.rows[i];
    table << row.k << ',' << mus[row.k] << ',' << i % pairs.size() << ',' << row.distance << ',' << row.mesh_tol << ','
          << row.arc_gap << '\n';
  }
  res.table = table.str();
  json out{{"mu", mus}, {"mesh", mesh}};
  out["report"] = to_json(rep);
  return out;
}

json cmd_audit(Context& ctx, CommandOutput&) {
  ctx.fixed("solve_tol", 1e-4);
  ctx.fixed("lambda_margin", 1e-3);
  ctx.fixed("slope_rel_tol", 0.05);
  Family fam = family_of(ctx.cfg, "2^-2..2^2");
  if (opt(ctx.cfg, "with_decoys", false)) {
    fam.members.push_back(
        {[](double x) { return -3.0 * std::log1p(std::abs(x)); }, [](double) { return 1.0; }, 512, "decoy(-3 log(1+|x|))"});
    fam.members.push_back({[](double x) { return bubble_u({1.0, 0.0})(x) + 1.0; }, [](double) { return 1.0; }, 512,
                           "shifted(bubble+1)"});
  }
  json out = fam.description;
  out["audit"] = to_json(lambda_audit(fam.members));
  return out;
}

json cmd_fixtures(Context& ctx, CommandOutput&) {
  if (!ctx.cfg.contains("name")) {
    std::string names;
    for (const auto& n : fixture_names()) names += (names.empty() ? "" : ", ") + n;
    throw Error(ErrorCode::UnknownFixture, "no fixture named; available: " + names);
  }
  return fixture(ctx.cfg["name"].get<std::string>(), ctx.cfg);
}

using Handler = json (*)(Context&, CommandOutput&);

const std::map<std::string, Handler>& handlers() {
  static const std::map<std::string, Handler> table{
      {"halflap", cmd_halflap},     {"hilbert", cmd_hilbert},    {"extend", cmd_extend},
      {"curvature", cmd_curvature}, {"rotation-index", cmd_rotation}, {"blank-word", cmd_blank},
      {"contract", cmd_contract},   {"seifert", cmd_seifert},    {"scan", cmd_scan},
      {"classify", cmd_classify},   {"pinch", cmd_pinch},        {"audit", cmd_audit},
      {"fixtures", cmd_fixtures},
  };
  return table;
}

}  // namespace

std::vector<double> parse_ladder(const std::string& text, std::vector<int>* exponents) {
  static const std::regex re(R"(\s*([0-9.]+)\^(-?[0-9]+)\s*\.\.\s*([0-9.]+)\^(-?[0-9]+)\s*)");
  std::smatch m;
  if (!std::regex_match(text, m, re)) bad("ladder must look like 2^0..2^12, got \"" + text + "\"");
  double base = std::stod(m[1]);
  if (base <= 0.0 || std::stod(m[3]) != base) bad("ladder ends must share one positive base");
  int lo = std::stoi(m[2]), hi = std::stoi(m[4]);
  if (hi < lo) bad("ladder runs backwards");
  std::vector<double> out;
  if (exponents) exponents->clear();
  for (int k = lo; k <= hi; ++k) {
    out.push_back(std::pow(base, k));
    if (exponents) exponents->push_back(k);
  }
  return out;
}

json fixture(const std::string& name, const json& cfg) {
  auto n_or = [&](std::size_t fallback) { return opt<std::size_t>(cfg, "n", fallback); };
  if (name == "circle") return to_json(curves::circle(n_or(64)));
  if (name == "limacon") return to_json(curves::limacon(n_or(256)));
  if (name == "figure-eight" || name == "fblank-2") return to_json(curves::figure_eight(n_or(256)));
  if (name == "marked-square") return to_json(curves::marked_square(opt<std::size_t>(cfg, "per_side", 4)));
  if (name == "touching-oval") return to_json(curves::touching_oval(n_or(256)));
  if (name == "fblank-1" || name == "seifert") return to_json(curves::overlapping_band(16));
  if (name == "glued-loops") {
    int m = opt(cfg, "m", 3);
    if (m < 1) bad("m must be positive");
    std::mt19937_64 rng(seed_of(cfg));
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double c = opt(cfg, "c", m == 1 ? 0.3 : (1.5 + unit(rng)) / m);
    double rot = 2 * kPi * unit(rng), scale = 0.5 + 2 * unit(rng);
    Point shift(4 * unit(rng) - 2, 4 * unit(rng) - 2);
    json out = to_json(curves::looped_curve(m, c, n_or(512), rot, scale, shift));
    out["loops"] = m;
    return out;
  }
  if (name == "corner") {
    double beta = opt(cfg, "beta", kPi / 2);
    SingularField lam{PeriodicGrid::from_real(std::vector<double>(n_or(512), 0.0)), {{-kPi / 2, beta}}};
    json out = to_json(lam);
    out["beta"] = beta;
    return out;
  }
  if (name == "bubble") {
    BubbleParams p{opt(cfg, "mu", 1.0), opt(cfg, "x0", 0.0)};
    validate(p);
    auto pb = pull_back(bubble_u(p), n_or(bubble_grid(p)));
    json out = to_json(pb.field.lambda());
    out["mu"] = p.mu;
    out["x0"] = p.x0;
    out["tail_slope"] = pb.tail_slope;
    out["anchor_coeff"] = pb.anchor_coeff;
    return out;
  }
  if (name == "cosine") {
    int k = opt(cfg, "k", 3);
    return to_json(PeriodicGrid::sample(n_or(256), [k](double t) { return std::cos(k * t); }));
  }
  std::string names;
  for (const auto& f : fixture_names()) names += (names.empty() ? "" : ", ") + f;
  throw Error(ErrorCode::UnknownFixture, "unknown fixture \"" + name + "\"; available: " + names);
}

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"halflap",  "hilbert",  "extend", "curvature", "rotation-index",
                                              "blank-word", "contract", "seifert", "scan",    "classify",
                                              "pinch",    "audit",    "fixtures"};
  return names;
}

const std::vector<std::string>& fixture_names() {
  static const std::vector<std::string> names{"circle",   "limacon",  "figure-eight", "marked-square",
                                              "touching-oval", "glued-loops", "fblank-1", "fblank-2",
                                              "seifert",  "corner",   "bubble",       "cosine"};
  return names;
}

CommandOutput run_command(const std::string& command, const json& config) {
  auto it = handlers().find(command);
  if (it == handlers().end()) bad("unknown command \"" + command + "\"");
  if (!config.is_object()) bad("config must be a JSON object");
  CommandOutput res;
  Context ctx{command, config};
  try {
    json result = it->second(ctx, res);
    res.document = {{"metadata", ctx.metadata()}, {"result", std::move(result)}};
  } catch (const json::exception& e) {
    bad(std::string("bad config or input: ") + e.what());
  }
  return res;
}

}  // namespace liouville::io
