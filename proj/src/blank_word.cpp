#include <algorithm>
#include <cctype>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <optional>
#include <set>
#include <string>

#include "liouville/curve_topo.hpp"

namespace liouville {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr int kRayDirections = 64;
constexpr double kRayGuard = 1e-3;
constexpr std::size_t kExhaustiveLimit = 16;

std::string letter_text(const Letter& l) {
  return face_name(l.face) + std::to_string(l.index) + (l.sign > 0 ? "+" : "-");
}

template <class T>
std::vector<T> rotated(const std::vector<T>& v, std::size_t r) {
  std::vector<T> out(v.begin() + static_cast<long>(r), v.end());
  out.insert(out.end(), v.begin(), v.begin() + static_cast<long>(r));
  return out;
}

std::size_t min_rotation(const std::vector<Letter>& v) {
  const std::size_t n = v.size();
  std::size_t best = 0;
  for (std::size_t r = 1; r < n; ++r) {
    for (std::size_t k = 0; k < n; ++k) {
      const Letter& a = v[(r + k) % n];
      const Letter& b = v[(best + k) % n];
      if (a == b) continue;
      if (a < b) best = r;
      break;
    }
  }
  return best;
}

struct Hit {
  double s;
  std::size_t edge;
  double t;
  int sign;
  Point point;
};

std::optional<std::vector<Hit>> cast_ray(const Arrangement& arr, Point origin, Point dir, double length) {
  const PolyCurve& c = arr.curve;
  const double guard = std::sin(kRayGuard);
  auto blocked = [&](Point p) {
    Point q = p - origin;
    double r = std::abs(q);
    return r < length && geom::dot(q, dir) > 0.0 && std::abs(geom::cross(dir, q)) < guard * r;
  };
  for (auto p : c.vertices)
    if (blocked(p)) return std::nullopt;
  for (const auto& x : arr.crossings)
    if (blocked(x.point)) return std::nullopt;
  std::vector<Hit> hits;
  const Point seg = dir * length;
  for (std::size_t k = 0; k < c.size(); ++k) {
    Point a = c.vertices[k], e = c.edge(k);
    double den = geom::cross(seg, e);
    if (den == 0.0) continue;
    Point q = a - origin;
    double s = geom::cross(q, e) / den, t = geom::cross(q, seg) / den;
    if (s <= 0.0 || s >= 1.0 || t < 0.0 || t >= 1.0) continue;
    double angle = std::asin(std::min(1.0, std::abs(geom::cross(dir, e)) / std::abs(e)));
    if (angle < kTransversalAngle) return std::nullopt;
    // '+' when the curve crosses the segment from its right
    hits.push_back({s, k, t, geom::cross(dir, e) > 0.0 ? 1 : -1, a + t * e});
  }
  std::sort(hits.begin(), hits.end(), [](const Hit& a, const Hit& b) { return a.s < b.s; });
  return hits;
}

std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Working letters keep their position in the input word.
struct Tagged {
  Letter letter;
  std::size_t id;
};

struct Move {
  std::size_t first, last;  // cyclic closed interval, in current positions
};

// Plus partners reachable from the minus letter at i without passing another
// minus; each as the closed interval it removes.
std::vector<Move> moves_from(const std::vector<Tagged>& w, std::size_t i) {
  const std::size_t n = w.size();
  std::vector<Move> out;
  for (std::size_t d = 1; d < n; ++d) {
    const Letter& l = w[(i + d) % n].letter;
    if (l.sign < 0) break;
    if (l.face == w[i].letter.face) out.push_back({i, (i + d) % n});
  }
  for (std::size_t d = 1; d < n; ++d) {
    const Letter& l = w[(i + n - d) % n].letter;
    if (l.sign < 0) break;
    if (l.face == w[i].letter.face) out.push_back({(i + n - d) % n, i});
  }
  return out;
}

std::size_t span(const Move& m, std::size_t n) { return (m.last + n - m.first) % n + 1; }

std::vector<Tagged> apply(const std::vector<Tagged>& w, const Move& m, ContractionStep& step) {
  const std::size_t n = w.size(), len = span(m, n);
  std::vector<Tagged> out;
  step.removed.clear();
  step.removed_text.clear();
  for (std::size_t k = 0; k < len; ++k) {
    const Tagged& t = w[(m.first + k) % n];
    step.removed.push_back(t.id);
    if (!step.removed_text.empty()) step.removed_text += ' ';
    step.removed_text += letter_text(t.letter);
  }
  for (std::size_t k = len; k < n; ++k) out.push_back(w[(m.first + k) % n]);
  BlankWord rest;
  for (const auto& t : out) rest.letters.push_back(t.letter);
  step.result = rest.str();
  return out;
}

bool has_minus(const std::vector<Tagged>& w) {
  return std::any_of(w.begin(), w.end(), [](const Tagged& t) { return t.letter.sign < 0; });
}

bool search(const std::vector<Tagged>& w, std::set<std::vector<std::size_t>>& dead, std::vector<ContractionStep>& path) {
  if (!has_minus(w)) return true;
  std::vector<std::size_t> key;
  for (const auto& t : w) key.push_back(t.id);
  std::sort(key.begin(), key.end());
  if (dead.count(key)) return false;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (w[i].letter.sign > 0) continue;
    for (const auto& m : moves_from(w, i)) {
      ContractionStep step;
      auto next = apply(w, m, step);
      path.push_back(step);
      if (search(next, dead, path)) return true;
      path.pop_back();
    }
  }
  dead.insert(key);
  return false;
}

}  // namespace

std::string face_name(int face) {
  std::string s;
  int f = face;
  do {
    s.insert(s.begin(), static_cast<char>('a' + f % 26));
    f = f / 26 - 1;
  } while (f >= 0);
  return s;
}

std::string BlankWord::str() const {
  std::string s;
  for (const auto& l : letters) {
    if (!s.empty()) s += ' ';
    s += letter_text(l);
  }
  return s;
}

BlankWord parse_word(std::string_view text) {
  BlankWord w;
  std::size_t i = 0;
  auto fail = [&](const char* what) {
    throw Error(ErrorCode::InvalidInput, std::string(what) + " at offset " + std::to_string(i) + " in word '" +
                                             std::string(text) + "'");
  };
  while (i < text.size()) {
    if (std::isspace(static_cast<unsigned char>(text[i]))) {
      ++i;
      continue;
    }
    int face = -1;
    if (!std::islower(static_cast<unsigned char>(text[i]))) fail("expected a face letter");
    while (i < text.size() && std::islower(static_cast<unsigned char>(text[i]))) face = (face + 1) * 26 + (text[i++] - 'a');
    if (i >= text.size() || !std::isdigit(static_cast<unsigned char>(text[i]))) fail("expected a crossing index");
    int index = 0;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) index = index * 10 + (text[i++] - '0');
    if (i >= text.size() || (text[i] != '+' && text[i] != '-')) fail("expected a sign");
    w.letters.push_back({face, index, text[i++] == '+' ? 1 : -1});
  }
  return w;
}

BlankWord canonical(const BlankWord& w) {
  if (w.letters.empty()) return w;
  return {rotated(w.letters, min_rotation(w.letters))};
}

BlankWord rename_by_appearance(const BlankWord& w) {
  std::vector<int> order;
  BlankWord out = w;
  for (auto& l : out.letters) {
    auto it = std::find(order.begin(), order.end(), l.face);
    if (it == order.end()) {
      order.push_back(l.face);
      it = order.end() - 1;
    }
    l.face = static_cast<int>(it - order.begin());
  }
  return out;
}

BlankResult blank_word(const Arrangement& arr, std::uint64_t seed) {
  const PolyCurve& c = arr.curve;
  const double phase = static_cast<double>(mix(seed) >> 11) * 0x1p-53;
  struct Entry {
    double param;
    Letter letter;
    Point point;
  };
  std::vector<Entry> entries;
  BlankResult res;
  for (std::size_t f = 0; f < arr.faces.size(); ++f) {
    const Face& face = arr.faces[f];
    if (!face.bounded) continue;
    double reach = 0.0;
    for (auto p : c.vertices) reach = std::max(reach, std::abs(p - face.witness));
    reach += 1.0;
    std::optional<std::vector<Hit>> best;
    EscapeRay ray;
    for (int k = 0; k < kRayDirections; ++k) {
      double angle = kTwoPi * (k + phase) / kRayDirections;
      auto hits = cast_ray(arr, face.witness, std::polar(1.0, angle), reach);
      if (!hits || hits->empty()) continue;
      if (!best || hits->size() < best->size()) {
        best = std::move(hits);
        ray = {static_cast<int>(f), face.witness, angle, reach, 0};
      }
    }
    if (!best) throw Error(ErrorCode::RayCastFailed, "no admissible escape ray for face " + face_name(static_cast<int>(f)));
    ray.crossings = static_cast<int>(best->size());
    res.rays.push_back(ray);
    int net = 0;
    for (std::size_t i = 0; i < best->size(); ++i) {
      const Hit& h = (*best)[i];
      net += h.sign;
      entries.push_back({static_cast<double>(h.edge) + h.t, {static_cast<int>(f), static_cast<int>(i), h.sign}, h.point});
    }
    if (net != face.winding)
      throw Error(ErrorCode::NumericalInconsistency, "letter signs of face " + face_name(static_cast<int>(f)) +
                                                         " do not add up to its winding number");
  }
  std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.param < b.param; });
  std::vector<Letter> letters;
  for (const auto& e : entries) letters.push_back(e.letter);
  const std::size_t r = letters.empty() ? 0 : min_rotation(letters);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const Entry& e = entries[(r + k) % entries.size()];
    res.word.letters.push_back(e.letter);
    res.params.push_back(e.param);
    res.points.push_back(e.point);
  }
  return res;
}

Contraction contract(const BlankWord& input) {
  Contraction out;
  std::vector<Tagged> w;
  for (std::size_t k = 0; k < input.size(); ++k) w.push_back({input.letters[k], k});

  // Leftmost minus with a partner; shortest interval, forward on ties.
  std::vector<ContractionStep> steps;
  auto greedy = w;
  while (has_minus(greedy)) {
    std::optional<Move> pick;
    for (std::size_t i = 0; i < greedy.size() && !pick; ++i) {
      if (greedy[i].letter.sign > 0) continue;
      for (const auto& m : moves_from(greedy, i))
        if (!pick || span(m, greedy.size()) < span(*pick, greedy.size())) pick = m;
    }
    if (!pick) break;
    ContractionStep step;
    greedy = apply(greedy, *pick, step);
    steps.push_back(step);
  }
  if (!has_minus(greedy)) {
    out.fully_contracted = true;
    out.steps = std::move(steps);
    for (const auto& t : greedy) out.remainder.letters.push_back(t.letter);
    return out;
  }
  if (w.size() <= kExhaustiveLimit) {
    std::set<std::vector<std::size_t>> dead;
    std::vector<ContractionStep> path;
    if (search(w, dead, path)) {
      out.fully_contracted = true;
      out.exhaustive = true;
      out.steps = std::move(path);
      std::set<std::size_t> gone;
      for (const auto& s : out.steps) gone.insert(s.removed.begin(), s.removed.end());
      for (const auto& t : w)
        if (!gone.count(t.id)) out.remainder.letters.push_back(t.letter);
      return out;
    }
  }
  out.steps = std::move(steps);
  for (const auto& t : greedy) out.remainder.letters.push_back(t.letter);
  return out;
}

}  // namespace liouville
