#include "liouville/liouville.h"

#include <cstdlib>
#include <cstring>
#include <limits>
#include <new>
#include <string>

#include "liouville/commands.hpp"

struct lv_grid {
  liouville::PeriodicGrid g;
};

struct lv_curve {
  liouville::PolyCurve c;
};

struct lv_result {
  std::string json, trace, table;
};

namespace {

using namespace liouville;

thread_local std::string last_error;

lv_status status_of(ErrorCode code) { return static_cast<lv_status>(static_cast<int>(code) + 1); }

lv_status fail(lv_status s, const char* what) {
  last_error = what;
  return s;
}

// Runs f and turns whatever it throws into a status.
template <class F>
lv_status guarded(F&& f) {
  try {
    f();
    last_error.clear();
    return LV_OK;
  } catch (const Error& e) {
    return fail(status_of(e.code()), e.what());
  } catch (const io::json::exception& e) {
    return fail(LV_INVALID_INPUT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(LV_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(LV_INTERNAL, e.what());
  } catch (...) {
    return fail(LV_INTERNAL, "unknown failure");
  }
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void need(const void* p, const char* what) {
  if (!p) throw Error(ErrorCode::InvalidInput, std::string(what) + " is NULL");
}

std::string join(const std::vector<std::string>& xs) {
  std::string out;
  for (const auto& x : xs) out += (out.empty() ? "" : ",") + x;
  return out;
}

template <class Op>
lv_status grid_op(const lv_grid* g, lv_grid** out, Op op) {
  return guarded([&] {
    need(g, "grid");
    need(out, "out");
    *out = new lv_grid{op(g->g)};
  });
}

}  // namespace

extern "C" {

const char* lv_version(void) { return io::kVersion; }

const char* lv_status_name(lv_status status) {
  if (status == LV_OK) return "Ok";
  if (status == LV_INTERNAL) return "Internal";
  if (status > LV_OK && status < LV_INTERNAL) return error_name(static_cast<ErrorCode>(status - 1)).data();
  return "Unknown";
}

int lv_exit_code(lv_status status) {
  if (status == LV_OK) return 0;
  if (status > LV_OK && status < LV_INTERNAL) {
    switch (severity(static_cast<ErrorCode>(status - 1))) {
      case Severity::Input: return 1;
      case Severity::Numerical: return 2;
      case Severity::Theorem: return 3;
    }
  }
  return 2;
}

const char* lv_last_error(void) { return last_error.c_str(); }

void lv_free_string(char* s) { std::free(s); }

const char* lv_command_names(void) {
  static const std::string names = join(io::command_names());
  return names.c_str();
}

const char* lv_fixture_names(void) {
  static const std::string names = join(io::fixture_names());
  return names.c_str();
}

lv_status lv_grid_create(const double* re, const double* im, size_t n, lv_grid** out) {
  return guarded([&] {
    need(re, "re");
    need(out, "out");
    std::vector<cplx> v(n);
    for (size_t j = 0; j < n; ++j) v[j] = {re[j], im ? im[j] : 0.0};
    PeriodicGrid g = im ? PeriodicGrid::from_complex(std::move(v)) : PeriodicGrid::from_real(std::vector<double>(re, re + n));
    validate(g);
    *out = new lv_grid{std::move(g)};
  });
}

void lv_grid_free(lv_grid* g) { delete g; }

size_t lv_grid_size(const lv_grid* g) { return g ? g->g.n() : 0; }

lv_status lv_grid_values(const lv_grid* g, double* re, double* im) {
  return guarded([&] {
    need(g, "grid");
    need(re, "re");
    for (size_t j = 0; j < g->g.n(); ++j) {
      re[j] = g->g.values[j].real();
      if (im) im[j] = g->g.values[j].imag();
    }
  });
}

lv_status lv_half_laplacian(const lv_grid* g, lv_grid** out) {
  return grid_op(g, out, [](const PeriodicGrid& x) { return half_laplacian(x); });
}

lv_status lv_hilbert(const lv_grid* g, lv_grid** out) {
  return grid_op(g, out, [](const PeriodicGrid& x) { return hilbert(x); });
}

lv_status lv_poisson_extend(const lv_grid* g, double r, lv_grid** out) {
  return grid_op(g, out, [r](const PeriodicGrid& x) { return poisson_extend(x, r); });
}

lv_status lv_green_convolve(const lv_grid* g, lv_grid** out) {
  return grid_op(g, out, [](const PeriodicGrid& x) { return green_convolve(x); });
}

lv_status lv_curve_create(const double* xy, size_t count, const size_t* corners, size_t n_corners, lv_curve** out) {
  return guarded([&] {
    need(xy, "xy");
    need(out, "out");
    if (n_corners) need(corners, "corners");
    std::vector<Point> pts;
    for (size_t i = 0; i < count; ++i) pts.emplace_back(xy[2 * i], xy[2 * i + 1]);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    std::vector<Corner> marks;
    for (size_t i = 0; i < n_corners; ++i) marks.push_back({corners[i], nan, nan});
    *out = new lv_curve{make_curve(std::move(pts), std::move(marks))};
  });
}

lv_status lv_curve_parse(const char* json, lv_curve** out) {
  return guarded([&] {
    need(json, "json");
    need(out, "out");
    *out = new lv_curve{io::curve_from_json(io::parse(json))};
  });
}

void lv_curve_free(lv_curve* c) { delete c; }

lv_status lv_rotation_index(const lv_curve* c, int* index, double* total_turning) {
  return guarded([&] {
    need(c, "curve");
    auto r = rotation_index(c->c);
    if (index) *index = r.index;
    if (total_turning) *total_turning = r.total_turning;
  });
}

lv_status lv_self_intersections(const lv_curve* c, size_t* count) {
  return guarded([&] {
    need(c, "curve");
    need(count, "count");
    *count = self_intersections(c->c).size();
  });
}

lv_status lv_blank_word(const lv_curve* c, uint64_t seed, char** word) {
  return guarded([&] {
    need(c, "curve");
    need(word, "word");
    *word = copy_string(blank_word(build_arrangement(c->c), seed).word.str());
  });
}

lv_status lv_seifert(const lv_curve* c, size_t* circles, int* index_sum) {
  return guarded([&] {
    need(c, "curve");
    auto parts = seifert_decompose(c->c);
    int sum = 0;
    for (const auto& p : parts) sum += p.index;
    if (circles) *circles = parts.size();
    if (index_sum) *index_sum = sum;
  });
}

lv_status lv_word_contract(const char* word, int* contracts) {
  return guarded([&] {
    need(word, "word");
    need(contracts, "contracts");
    *contracts = contract(parse_word(word)).fully_contracted ? 1 : 0;
  });
}

lv_status lv_run(const char* command, const char* config_json, lv_result** out) {
  return guarded([&] {
    need(command, "command");
    need(out, "out");
    io::json cfg = config_json && *config_json ? io::parse(config_json) : io::json::object();
    auto res = io::run_command(command, cfg);
    *out = new lv_result{io::dump(res.document), std::move(res.trace), std::move(res.table)};
  });
}

const char* lv_result_json(const lv_result* r) { return r ? r->json.c_str() : ""; }
const char* lv_result_trace(const lv_result* r) { return r ? r->trace.c_str() : ""; }
const char* lv_result_table(const lv_result* r) { return r ? r->table.c_str() : ""; }
void lv_result_free(lv_result* r) { delete r; }

}  // extern "C"
