#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "liouville/liouville.h"

namespace {

using json = nlohmann::ordered_json;

struct Common {
  std::string in, out, csv;
  std::optional<std::uint64_t> seed;
  std::optional<std::size_t> n;
};

// Flags shared by the sequence commands.
struct FamilyFlags {
  std::string family, ladder, radii, ts;
  std::optional<double> x0, c, center, tol;
  std::optional<int> count;
  bool absolute = false;
};

std::vector<std::string> split(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  return out;
}

bool write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  f << text;
  return static_cast<bool>(f);
}

template <class T>
void put(json& cfg, const char* key, const std::optional<T>& v) {
  if (v) cfg[key] = *v;
}

void put(json& cfg, const char* key, const std::string& v) {
  if (!v.empty()) cfg[key] = v;
}

json base_config(const Common& c) {
  json cfg = json::object();
  put(cfg, "input", c.in);
  put(cfg, "seed", c.seed);
  put(cfg, "n", c.n);
  return cfg;
}

void add_family(json& cfg, const FamilyFlags& f) {
  put(cfg, "family", f.family);
  put(cfg, "mu_ladder", f.ladder);
  put(cfg, "radii", f.radii);
  put(cfg, "ts", f.ts);
  put(cfg, "x0", f.x0);
  put(cfg, "c", f.c);
  put(cfg, "center", f.center);
  put(cfg, "tol", f.tol);
  put(cfg, "count", f.count);
  if (f.absolute) cfg["absolute"] = true;
}

int report(lv_status s) {
  std::fprintf(stderr, "error: %s\n", lv_last_error());
  return lv_exit_code(s);
}

// Runs one command and routes its outputs: JSON to --out (else stdout), the
// trace to stdout when the JSON went to a file (else stderr), the table to --csv.
int run(const std::string& command, const json& cfg, const Common& c) {
  lv_result* res = nullptr;
  lv_status s = lv_run(command.c_str(), cfg.dump().c_str(), &res);
  if (s != LV_OK) return report(s);
  int code = 0;
  std::string trace = lv_result_trace(res);
  if (c.out.empty()) {
    std::fputs(lv_result_json(res), stdout);
    std::fputs(trace.c_str(), stderr);
  } else {
    if (!write_file(c.out, lv_result_json(res))) {
      std::fprintf(stderr, "error: cannot write %s\n", c.out.c_str());
      code = 1;
    }
    std::fputs(trace.c_str(), stdout);
  }
  if (!c.csv.empty()) {
    std::string table = lv_result_table(res);
    if (table.empty()) {
      std::fprintf(stderr, "error: %s emits no table\n", command.c_str());
      code = 1;
    } else if (!write_file(c.csv, table)) {
      std::fprintf(stderr, "error: cannot write %s\n", c.csv.c_str());
      code = 1;
    }
  }
  lv_result_free(res);
  return code;
}

void io_flags(CLI::App* sub, Common& c, bool needs_input) {
  auto* in = sub->add_option("--in", c.in, "input JSON");
  if (needs_input) in->required();
  sub->add_option("--out", c.out, "output JSON (stdout when absent)");
  sub->add_option("--seed", c.seed, "seed");
  sub->add_option("--n", c.n, "grid size");
}

void family_flags(CLI::App* sub, FamilyFlags& f) {
  sub->add_option("--family", f.family, "bubbles | constant | two-bubble | recentred");
  sub->add_option("--mu-ladder", f.ladder, "2^0..2^12 or a comma list");
  sub->add_option("--radii", f.radii, "comma list, decreasing");
  sub->add_option("--ts", f.ts, "recentring parameters, comma list");
  sub->add_option("--x0", f.x0, "bubble center");
  sub->add_option("--c", f.c, "two-bubble half separation");
  sub->add_option("--center", f.center, "scan center on the line");
  sub->add_option("--count", f.count, "members of the constant family");
  sub->add_flag("--absolute", f.absolute, "integrate |K| e^u");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Liouville boundary-equation toolkit"};
  app.set_version_flag("--version", lv_version());
  app.require_subcommand(1);

  Common c;
  FamilyFlags fam;
  std::optional<double> r, kappa_bar, mu, x0, beta, cc;
  std::optional<int> m, k;
  std::optional<std::size_t> mesh, per_side;
  std::vector<std::string> pairs;
  std::string word, name, dir;
  bool decoys = false;

  const char* grid_cmds[][2] = {{"halflap", "half-Laplacian of a grid or field"},
                                {"hilbert", "Hilbert transform of a grid"},
                                {"curvature", "boundary curvature of a field"},
                                {"rotation-index", "rotation index of a curve"},
                                {"seifert", "Seifert decomposition of a curve"},
                                {"blank-word", "Blank word of a curve and its contraction"}};
  for (auto& gc : grid_cmds) {
    auto* sub = app.add_subcommand(gc[0], gc[1]);
    io_flags(sub, c, true);
  }
  auto* extend = app.add_subcommand("extend", "harmonic extension to radius r");
  io_flags(extend, c, true);
  extend->add_option("--r", r, "radius in [0, 1]")->required();

  auto* contract = app.add_subcommand("contract", "contract a word");
  io_flags(contract, c, false);
  contract->add_option("--word", word, "word such as \"a0- b1+ a1+ b0+\"");

  auto* scan = app.add_subcommand("scan", "concentration profile alpha(r, k)");
  io_flags(scan, c, false);
  family_flags(scan, fam);
  scan->add_option("--csv", c.csv, "write the r,k,alpha table");

  auto* classify = app.add_subcommand("classify", "case and blow-up set of a sequence");
  io_flags(classify, c, false);
  family_flags(classify, fam);
  classify->add_option("--tol", fam.tol, "mass tolerance");
  classify->add_option("--csv", c.csv, "write the k,lambda_bar,Lambda,beta table");

  auto* pinch = app.add_subcommand("pinch", "conformal distances along a bubble sequence");
  io_flags(pinch, c, false);
  pinch->add_option("--mu-ladder", fam.ladder, "16^0..16^3 or a comma list");
  pinch->add_option("--mesh", mesh, "angles of the distance mesh");
  pinch->add_option("--kappa-bar", kappa_bar, "curvature bound for the arc audit");
  pinch->add_option("--pair", pairs, "boundary angles p,q (repeatable)");
  pinch->add_option("--csv", c.csv, "write the distance table");

  auto* audit = app.add_subcommand("audit", "total curvature of verified solutions");
  io_flags(audit, c, false);
  family_flags(audit, fam);
  audit->add_flag("--with-decoys", decoys, "append two non-solutions");

  auto* fixtures = app.add_subcommand("fixtures", "write a fixture");
  io_flags(fixtures, c, false);
  fixtures->add_option("name", name, std::string("one of ") + lv_fixture_names() + ", or all");
  fixtures->add_option("--dir", dir, "with name all: write every fixture here");
  fixtures->add_option("--mu", mu, "bubble concentration");
  fixtures->add_option("--x0", x0, "bubble center");
  fixtures->add_option("--beta", beta, "corner defect");
  fixtures->add_option("--m", m, "glued loops");
  fixtures->add_option("--c", cc, "loop size");
  fixtures->add_option("--k", k, "cosine frequency");
  fixtures->add_option("--per-side", per_side, "square vertices per side");

  if (argc > 1 && argv[1][0] != '-') {
    auto known = split(lv_command_names());
    if (std::find(known.begin(), known.end(), argv[1]) == known.end()) {
      std::cerr << "error: unknown subcommand '" << argv[1] << "'\n\n" << app.help();
      return 1;
    }
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  CLI::App* sub = app.get_subcommands().front();
  std::string command = sub->get_name();
  json cfg = base_config(c);

  if (command == "extend") cfg["r"] = *r;
  if (command == "contract") {
    if (word.empty() && c.in.empty()) {
      std::cerr << "error: contract needs --word or --in\n";
      return 1;
    }
    put(cfg, "word", word);
  }
  if (command == "scan" || command == "classify" || command == "audit") add_family(cfg, fam);
  if (command == "audit" && decoys) cfg["with_decoys"] = true;
  if (command == "pinch") {
    put(cfg, "mu_ladder", fam.ladder);
    put(cfg, "mesh", mesh);
    put(cfg, "kappa_bar", kappa_bar);
    if (!pairs.empty()) {
      cfg["pairs"] = json::array();
      for (const auto& p : pairs) {
        auto parts = split(p);
        if (parts.size() != 2) {
          std::cerr << "error: --pair takes two angles p,q\n";
          return 1;
        }
        try {
          cfg["pairs"].push_back({std::stod(parts[0]), std::stod(parts[1])});
        } catch (const std::exception&) {
          std::cerr << "error: bad --pair " << p << "\n";
          return 1;
        }
      }
    }
  }
  if (command == "fixtures") {
    put(cfg, "mu", mu);
    put(cfg, "x0", x0);
    put(cfg, "beta", beta);
    put(cfg, "m", m);
    put(cfg, "c", cc);
    put(cfg, "k", k);
    put(cfg, "per_side", per_side);
    if (name == "all") {
      if (dir.empty()) {
        std::cerr << "error: fixtures all needs --dir\n";
        return 1;
      }
      std::error_code ec;
      std::filesystem::create_directories(dir, ec);
      for (const auto& f : split(lv_fixture_names())) {
        json one = cfg;
        one["name"] = f;
        Common each = c;
        each.out = (std::filesystem::path(dir) / (f + ".json")).string();
        if (int code = run(command, one, each)) return code;
      }
      return 0;
    }
    put(cfg, "name", name);
  }
  return run(command, cfg, c);
}
