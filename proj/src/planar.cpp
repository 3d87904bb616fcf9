#include "lefbench/planar.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <random>
#include <set>

#include "lefbench/errors.hpp"

namespace lefbench::planar {

using lefbench::to_string;

// ---------------------------------------------------------------------------
// Disc and boundary parametrization
// ---------------------------------------------------------------------------

DiscModel::DiscModel(std::vector<Puncture> punctures, int boundary_resolution)
    : punctures_(std::move(punctures)), resolution_(boundary_resolution) {
  if (resolution_ < 4) fail(ErrorCode::InvalidInput, "boundary_resolution must be at least 4");
  std::set<std::string> ids;
  std::set<Point> positions;
  for (const auto& p : punctures_) {
    if (p.id.empty()) fail(ErrorCode::InvalidInput, "puncture with empty id");
    if (!ids.insert(p.id).second) fail(ErrorCode::InvalidInput, "duplicate puncture id '" + p.id + "'");
    if (!positions.insert(p.at).second)
      fail(ErrorCode::InvalidInput, "puncture '" + p.id + "' coincides with another puncture");
    if (norm2(p.at) >= 1)
      fail(ErrorCode::InvalidInput, "puncture '" + p.id + "' is not strictly inside the unit circle");
  }
}

const Puncture* DiscModel::find(std::string_view id) const {
  for (const auto& p : punctures_)
    if (p.id == id) return &p;
  return nullptr;
}

const Puncture& DiscModel::at(std::string_view id) const {
  const Puncture* p = find(id);
  if (!p) fail(ErrorCode::InvalidInput, "unknown puncture '" + std::string(id) + "'");
  return *p;
}

DiscModel DiscModel::with_resolution(int boundary_resolution) const {
  return DiscModel(punctures_, boundary_resolution);
}

Rational normalize_turn(const Rational& turn) {
  Rational r = turn - Rational(floor_of(turn));
  return r;
}

Point circle_point(const Rational& turn) {
  Rational t = normalize_turn(turn);
  Rational q = 4 * t;
  long quarter = floor_of(q).get_si();
  Rational s = q - quarter;
  Rational den = 1 + s * s;
  Point p{(1 - s * s) / den, 2 * s / den};
  for (long k = 0; k < quarter; ++k) p = rot90(p);
  return p;
}

std::string_view to_string(ArcKind kind) {
  switch (kind) {
    case ArcKind::Vanishing: return "vanishing";
    case ArcKind::Matching: return "matching";
    case ArcKind::Wrapped: return "wrapped";
    case ArcKind::Free: return "free";
  }
  return "free";
}

std::optional<std::string> puncture_id(const Endpoint& e) {
  if (auto* p = std::get_if<PunctureEnd>(&e)) return p->id;
  return std::nullopt;
}

std::optional<Rational> boundary_turn(const Endpoint& e) {
  if (auto* b = std::get_if<BoundaryEnd>(&e)) return b->turn;
  return std::nullopt;
}

namespace {

Point realize(const Endpoint& e, const DiscModel& disc) {
  if (auto id = puncture_id(e)) return disc.at(*id).at;
  return circle_point(*boundary_turn(e));
}

Endpoint normalized(Endpoint e) {
  if (auto* b = std::get_if<BoundaryEnd>(&e)) b->turn = normalize_turn(b->turn);
  return e;
}

}  // namespace

PlanarArc make_arc(const DiscModel& disc, ArcKind kind, Endpoint start, std::vector<Point> interior,
                   Endpoint end) {
  PlanarArc arc;
  arc.kind = kind;
  arc.start = normalized(std::move(start));
  arc.end = normalized(std::move(end));
  arc.vertices.reserve(interior.size() + 2);
  arc.vertices.push_back(realize(arc.start, disc));
  for (auto& v : interior) arc.vertices.push_back(std::move(v));
  arc.vertices.push_back(realize(arc.end, disc));
  validate_arc(arc, disc);
  return arc;
}

PlanarArc reversed(const PlanarArc& arc) {
  PlanarArc r = arc;
  std::reverse(r.vertices.begin(), r.vertices.end());
  std::swap(r.start, r.end);
  return r;
}

PlanarArc refined(const PlanarArc& arc, int times) {
  PlanarArc r = arc;
  for (int k = 0; k < times; ++k) {
    std::vector<Point> v;
    v.reserve(2 * r.vertices.size());
    for (std::size_t i = 0; i + 1 < r.vertices.size(); ++i) {
      v.push_back(r.vertices[i]);
      v.push_back(ratio(1, 2) * (r.vertices[i] + r.vertices[i + 1]));
    }
    v.push_back(r.vertices.back());
    r.vertices = std::move(v);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace {

struct Violation {
  ErrorCode code;
  std::string what;
};

std::optional<Violation> check_arc(const PlanarArc& arc, const DiscModel& disc) {
  const auto& v = arc.vertices;
  if (v.size() < 2) return Violation{ErrorCode::InvalidInput, "arc needs at least two vertices"};

  auto ends_ok = [&](const Endpoint& e, const Point& p) -> std::optional<Violation> {
    if (auto id = puncture_id(e)) {
      const Puncture* pu = disc.find(*id);
      if (!pu) return Violation{ErrorCode::InvalidInput, "endpoint names unknown puncture '" + *id + "'"};
      if (!(pu->at == p))
        return Violation{ErrorCode::InvalidInput, "endpoint does not coincide with puncture '" + *id + "'"};
    } else {
      if (!(circle_point(*boundary_turn(e)) == p))
        return Violation{ErrorCode::InvalidInput, "boundary endpoint is not the circle point of its angle"};
    }
    return std::nullopt;
  };
  if (auto bad = ends_ok(arc.start, v.front())) return bad;
  if (auto bad = ends_ok(arc.end, v.back())) return bad;

  int puncture_ends = (puncture_id(arc.start) ? 1 : 0) + (puncture_id(arc.end) ? 1 : 0);
  switch (arc.kind) {
    case ArcKind::Vanishing:
      if (puncture_ends != 1)
        return Violation{ErrorCode::InvalidInput, "vanishing path needs one puncture end and one boundary end"};
      break;
    case ArcKind::Matching:
      if (puncture_ends != 2) return Violation{ErrorCode::InvalidInput, "matching path needs two puncture ends"};
      break;
    case ArcKind::Wrapped:
      if (!puncture_id(arc.start) || !boundary_turn(arc.end))
        return Violation{ErrorCode::InvalidInput, "wrapped path runs from a puncture to the boundary"};
      break;
    case ArcKind::Free:
      break;
  }
  if (puncture_ends == 2 && *puncture_id(arc.start) == *puncture_id(arc.end))
    return Violation{ErrorCode::InvalidInput, "arc starts and ends at the same puncture"};

  for (std::size_t i = 1; i + 1 < v.size(); ++i)
    if (norm2(v[i]) >= 1)
      return Violation{ErrorCode::InvalidInput, "interior vertex " + to_string(v[i]) + " is not inside the disc"};
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return Violation{ErrorCode::InvalidInput, "zero-length segment"};

  for (const auto& pu : disc.punctures()) {
    for (std::size_t i = 0; i + 1 < v.size(); ++i) {
      if (!on_segment(v[i], v[i + 1], pu.at)) continue;
      bool at_start = (i == 0 && pu.at == v.front() && puncture_id(arc.start));
      bool at_end = (i + 2 == v.size() && pu.at == v.back() && puncture_id(arc.end));
      if (!at_start && !at_end)
        return Violation{ErrorCode::InvalidInput, "arc passes through puncture '" + pu.id + "'"};
    }
  }

  const std::size_t n = v.size() - 1;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (j == i + 1) {
        const Point& a = v[i];
        const Point& m = v[i + 1];
        const Point& b = v[i + 2];
        if (orient(a, m, b) == 0 && dot(a - m, b - m) > 0)
          return Violation{ErrorCode::NonEmbeddableInput, "arc folds back on itself at " + to_string(m)};
        continue;
      }
      if (segments_touch(v[i], v[i + 1], v[j], v[j + 1]))
        return Violation{ErrorCode::NonEmbeddableInput,
                         "segments " + std::to_string(i) + " and " + std::to_string(j) + " intersect"};
    }
  }
  return std::nullopt;
}

}  // namespace

void validate_arc(const PlanarArc& arc, const DiscModel& disc) {
  if (auto bad = check_arc(arc, disc)) fail(bad->code, bad->what);
}

std::optional<std::string> arc_violation(const PlanarArc& arc, const DiscModel& disc) {
  if (auto bad = check_arc(arc, disc)) return bad->what;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Pairwise position
// ---------------------------------------------------------------------------

std::vector<std::string> shared_punctures(const PlanarArc& a, const PlanarArc& b) {
  std::set<std::string> sa;
  for (const auto* e : {&a.start, &a.end})
    if (auto id = puncture_id(*e)) sa.insert(*id);
  std::set<std::string> out;
  for (const auto* e : {&b.start, &b.end})
    if (auto id = puncture_id(*e); id && sa.count(*id)) out.insert(*id);
  return {out.begin(), out.end()};
}

void require_distinct_boundary_ends(const PlanarArc& a, const PlanarArc& b) {
  for (const auto* ea : {&a.start, &a.end}) {
    auto ta = boundary_turn(*ea);
    if (!ta) continue;
    for (const auto* eb : {&b.start, &b.end}) {
      auto tb = boundary_turn(*eb);
      if (tb && normalize_turn(*ta) == normalize_turn(*tb))
        fail(ErrorCode::SharedBoundaryEndpoint,
             "both arcs end at boundary angle " + to_string(normalize_turn(*ta)) + " (apply the wrap offset first)");
    }
  }
}

namespace {

std::vector<Point> shared_puncture_points(const PlanarArc& a, const PlanarArc& b) {
  std::vector<Point> pts;
  if (puncture_id(a.start) && (b.vertices.front() == a.vertices.front() || b.vertices.back() == a.vertices.front()))
    pts.push_back(a.vertices.front());
  if (puncture_id(a.end) && (b.vertices.front() == a.vertices.back() || b.vertices.back() == a.vertices.back()))
    pts.push_back(a.vertices.back());
  return pts;
}

enum class Contact { None, Resolvable, SharedOverlap };

struct ContactReport {
  Contact kind = Contact::None;
  std::string where;
};

// Common endpoint of two segments when it is one of the shared puncture points.
std::optional<Point> shared_corner(const Point& a0, const Point& a1, const Point& b0, const Point& b1,
                                   const std::vector<Point>& shared) {
  for (const auto& p : shared) {
    bool in_a = (a0 == p || a1 == p);
    bool in_b = (b0 == p || b1 == p);
    if (in_a && in_b) return p;
  }
  return std::nullopt;
}

ContactReport find_contact(const PlanarArc& a, const PlanarArc& b) {
  auto shared = shared_puncture_points(a, b);
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  ContactReport report;
  for (std::size_t i = 0; i + 1 < va.size(); ++i) {
    for (std::size_t j = 0; j + 1 < vb.size(); ++j) {
      const Point &a0 = va[i], &a1 = va[i + 1], &b0 = vb[j], &b1 = vb[j + 1];
      if (auto p = shared_corner(a0, a1, b0, b1, shared)) {
        const Point& ao = (a0 == *p) ? a1 : a0;
        const Point& bo = (b0 == *p) ? b1 : b0;
        if (orient(*p, ao, bo) == 0 && dot(ao - *p, bo - *p) > 0)
          return {Contact::SharedOverlap, "collinear overlap leaving shared puncture at " + to_string(*p)};
        continue;
      }
      if (on_segment(a0, a1, b0) || on_segment(a0, a1, b1) || on_segment(b0, b1, a0) || on_segment(b0, b1, a1)) {
        if (report.kind == Contact::None)
          report = {Contact::Resolvable, "contact between segment " + std::to_string(i) + " and segment " +
                                             std::to_string(j)};
      }
    }
  }
  return report;
}

// Univariate polynomial in the perturbation parameter eps, degree <= 4.
struct Poly {
  std::array<Rational, 5> c{};

  friend Poly operator-(const Poly& p, const Poly& q) {
    Poly r;
    for (int i = 0; i < 5; ++i) r.c[i] = p.c[i] - q.c[i];
    return r;
  }
  friend Poly operator+(const Poly& p, const Poly& q) {
    Poly r;
    for (int i = 0; i < 5; ++i) r.c[i] = p.c[i] + q.c[i];
    return r;
  }
  friend Poly operator*(const Poly& p, const Poly& q) {
    Poly r;
    for (int i = 0; i < 5; ++i)
      for (int j = 0; i + j < 5; ++j) r.c[i + j] += p.c[i] * q.c[j];
    return r;
  }
};

struct MovingPoint {
  Point base;
  bool moved;
  Poly x() const {
    Poly p;
    p.c[0] = base.x;
    if (moved) p.c[1] = 1;
    return p;
  }
  Poly y() const {
    Poly p;
    p.c[0] = base.y;
    if (moved) p.c[2] = 1;
    return p;
  }
};

Poly orient_poly(const MovingPoint& p, const MovingPoint& q, const MovingPoint& r) {
  return (q.x() - p.x()) * (r.y() - p.y()) - (q.y() - p.y()) * (r.x() - p.x());
}

// Largest eps bound below which the sign of `poly` equals the sign of its
// lowest nonzero coefficient; nullopt when the polynomial vanishes identically.
std::optional<Rational> sign_stability_bound(const Poly& poly) {
  int k = 0;
  while (k < 5 && poly.c[k] == 0) ++k;
  if (k == 5) return std::nullopt;
  Rational tail = 0;
  for (int i = k + 1; i < 5; ++i) tail += abs(poly.c[i]);
  if (tail == 0) return Rational(1);
  Rational bound = abs(poly.c[k]) / tail;
  return bound < 1 ? bound : Rational(1);
}

PlanarArc shifted(const PlanarArc& b, const Rational& eps) {
  PlanarArc out = b;
  Point e{eps, eps * eps};
  for (std::size_t i = 1; i + 1 < out.vertices.size(); ++i) out.vertices[i] = out.vertices[i] + e;
  return out;
}

}  // namespace

PlanarArc generic_partner(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc) {
  require_distinct_boundary_ends(a, b);
  ContactReport contact = find_contact(a, b);
  if (contact.kind == Contact::None) return b;
  if (contact.kind == Contact::SharedOverlap) fail(ErrorCode::DegenerateTangency, contact.where);

  PlanarArc base = b.vertices.size() == 2 ? refined(b) : b;
  const auto& vb = base.vertices;
  std::vector<MovingPoint> mb;
  for (std::size_t i = 0; i < vb.size(); ++i) mb.push_back({vb[i], i > 0 && i + 1 < vb.size()});

  Rational bound = 1;
  auto consider = [&](const Poly& p) {
    if (auto s = sign_stability_bound(p); s && *s < bound) bound = *s;
  };
  for (std::size_t j = 0; j + 1 < mb.size(); ++j) {
    for (const auto& v : a.vertices) consider(orient_poly(mb[j], mb[j + 1], {v, false}));
    for (const auto& pu : disc.punctures()) consider(orient_poly(mb[j], mb[j + 1], {pu.at, false}));
    for (std::size_t k = 0; k < mb.size(); ++k)
      if (k != j && k != j + 1) consider(orient_poly(mb[j], mb[j + 1], mb[k]));
  }
  for (std::size_t i = 0; i + 1 < a.vertices.size(); ++i)
    for (const auto& w : mb) consider(orient_poly({a.vertices[i], false}, {a.vertices[i + 1], false}, w));
  for (const auto& w : mb) {
    if (!w.moved) continue;
    Poly r2 = w.x() * w.x() + w.y() * w.y();
    Poly inside;
    inside.c[0] = 1;
    consider(inside - r2);
  }

  Rational eps = ratio(1, 1024);
  while (eps * 2 > bound) eps /= 2;
  for (int attempt = 0; attempt < 96; ++attempt, eps /= 2) {
    PlanarArc candidate = shifted(base, eps);
    if (check_arc(candidate, disc)) continue;
    if (find_contact(a, candidate).kind != Contact::None) continue;
    return candidate;
  }
  fail(ErrorCode::DegenerateTangency, "perturbation could not separate the arcs (" + contact.where + ")");
}

std::vector<Crossing> transverse_crossings(const PlanarArc& a, const PlanarArc& b) {
  auto shared = shared_puncture_points(a, b);
  const auto& va = a.vertices;
  const auto& vb = b.vertices;
  std::vector<Crossing> out;
  for (std::size_t i = 0; i + 1 < va.size(); ++i) {
    const Point &a0 = va[i], &a1 = va[i + 1];
    Rational ax_lo = std::min(a0.x, a1.x), ax_hi = std::max(a0.x, a1.x);
    Rational ay_lo = std::min(a0.y, a1.y), ay_hi = std::max(a0.y, a1.y);
    for (std::size_t j = 0; j + 1 < vb.size(); ++j) {
      const Point &b0 = vb[j], &b1 = vb[j + 1];
      if (std::max(b0.x, b1.x) < ax_lo || std::min(b0.x, b1.x) > ax_hi || std::max(b0.y, b1.y) < ay_lo ||
          std::min(b0.y, b1.y) > ay_hi)
        continue;
      if (auto p = shared_corner(a0, a1, b0, b1, shared)) {
        const Point& ao = (a0 == *p) ? a1 : a0;
        const Point& bo = (b0 == *p) ? b1 : b0;
        if (orient(*p, ao, bo) == 0 && dot(ao - *p, bo - *p) > 0)
          fail(ErrorCode::DegenerateTangency, "collinear overlap leaving shared puncture at " + to_string(*p));
        continue;
      }
      int o1 = orient(a0, a1, b0), o2 = orient(a0, a1, b1);
      int o3 = orient(b0, b1, a0), o4 = orient(b0, b1, a1);
      if (o1 == 0 || o2 == 0 || o3 == 0 || o4 == 0) {
        if (segments_touch(a0, a1, b0, b1))
          fail(ErrorCode::DegenerateTangency, "non-transverse contact near " + to_string(a0));
        continue;
      }
      if (o1 == o2 || o3 == o4) continue;
      Point da = a1 - a0, db = b1 - b0;
      Rational den = cross(da, db);
      Rational ta = cross(b0 - a0, db) / den;
      Rational tb = cross(b0 - a0, da) / den;
      out.push_back({a0 + ta * da, i, ta, j, tb});
    }
  }
  std::sort(out.begin(), out.end(), [](const Crossing& x, const Crossing& y) {
    if (x.seg_a != y.seg_a) return x.seg_a < y.seg_a;
    return x.t_a < y.t_a;
  });
  return out;
}

IntersectionProfile intersection_profile(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc) {
  require_distinct_boundary_ends(a, b);
  PlanarArc partner = generic_partner(a, b, disc);
  IntersectionProfile profile;
  for (const auto& c : transverse_crossings(a, partner)) profile.interior_crossings.push_back(c.at);
  profile.shared_punctures = shared_punctures(a, b);
  return profile;
}

// ---------------------------------------------------------------------------
// Bigon elimination
// ---------------------------------------------------------------------------

int winding_number(const std::vector<Point>& polygon, const Point& p) {
  int wn = 0;
  const std::size_t n = polygon.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point& a = polygon[i];
    const Point& b = polygon[(i + 1) % n];
    if (a.y <= p.y) {
      if (b.y > p.y && orient(a, b, p) > 0) ++wn;
    } else {
      if (b.y <= p.y && orient(a, b, p) < 0) --wn;
    }
  }
  return wn;
}

namespace {

Rational param_a(const Crossing& c) { return Rational(static_cast<long>(c.seg_a)) + c.t_a; }
Rational param_b(const Crossing& c) { return Rational(static_cast<long>(c.seg_b)) + c.t_b; }

// Points of `arc` walked from global parameter `from` to `to` (seg index plus
// in-segment fraction), bracketed by the given end points.
std::vector<Point> points_between(const PlanarArc& arc, const Rational& from, const Point& from_pt,
                                  const Rational& to, const Point& to_pt) {
  std::vector<Point> out{from_pt};
  const long n = static_cast<long>(arc.vertices.size());
  if (from < to) {
    for (long i = 0; i < n; ++i)
      if (Rational(i) > from && Rational(i) < to) out.push_back(arc.vertices[i]);
  } else {
    for (long i = n - 1; i >= 0; --i)
      if (Rational(i) < from && Rational(i) > to) out.push_back(arc.vertices[i]);
  }
  out.push_back(to_pt);
  return out;
}

struct Bigon {
  BigonKind kind;
  std::size_t first = 0;   // index into crossings ordered along a
  std::size_t second = 0;  // interior bigons only
  Point corner;            // shared puncture, half-bigons only
};

struct Line {
  Point through;
  Point dir;
};

std::optional<Point> intersect(const Line& l1, const Line& l2) {
  Rational den = cross(l1.dir, l2.dir);
  if (den == 0) return std::nullopt;
  Rational t = cross(l2.through - l1.through, l2.dir) / den;
  return l1.through + t * l1.dir;
}

// Offset lines of the polyline q pushed to side `side` (+1 left, -1 right) by
// h times each segment's own length.
std::vector<Line> offset_lines(const std::vector<Point>& q, int side, const Rational& h) {
  std::vector<Line> lines;
  for (std::size_t j = 0; j + 1 < q.size(); ++j) {
    Point d = q[j + 1] - q[j];
    Point n = rot90(d);
    if (side < 0) n = Rational(-1) * n;
    lines.push_back({q[j] + h * n, d});
  }
  return lines;
}

// Joints of consecutive offset lines at the interior vertices of q.
std::vector<Point> offset_joints(const std::vector<Point>& q, const std::vector<Line>& lines) {
  std::vector<Point> out;
  for (std::size_t j = 1; j < lines.size(); ++j) {
    if (auto p = intersect(lines[j - 1], lines[j])) {
      out.push_back(*p);
      continue;
    }
    Point p1 = lines[j - 1].through + (q[j] - q[j - 1]);
    Point p2 = lines[j].through;
    out.push_back(p1);
    if (!(p2 == p1)) out.push_back(p2);
  }
  return out;
}

bool sub_paths_form_simple_loop(const std::vector<Point>& old_sub, const std::vector<Point>& new_sub) {
  const Point& s = old_sub.front();
  const Point& e = old_sub.back();
  for (std::size_t i = 0; i + 1 < old_sub.size(); ++i) {
    for (std::size_t j = 0; j + 1 < new_sub.size(); ++j) {
      const Point &a0 = old_sub[i], &a1 = old_sub[i + 1], &b0 = new_sub[j], &b1 = new_sub[j + 1];
      if (!segments_touch(a0, a1, b0, b1)) continue;
      bool first_pair = (i == 0 && j == 0);
      bool last_pair = (i + 2 == old_sub.size() && j + 2 == new_sub.size());
      if (!first_pair && !last_pair) return false;
      const Point& p = first_pair ? s : e;
      const Point& ao = (a0 == p) ? a1 : a0;
      const Point& bo = (b0 == p) ? b1 : b0;
      if (orient(p, ao, bo) == 0 && dot(ao - p, bo - p) > 0) return false;
      if (!((a0 == p || a1 == p) && (b0 == p || b1 == p))) return false;
      // the segments may only meet at p itself
      if (on_segment(a0, a1, bo) || on_segment(b0, b1, ao)) return false;
    }
  }
  return true;
}

bool region_is_empty(const std::vector<Point>& loop, const DiscModel& disc) {
  for (const auto& pu : disc.punctures()) {
    if (std::find(loop.begin(), loop.end(), pu.at) != loop.end()) continue;
    if (winding_number(loop, pu.at) != 0) return false;
  }
  return true;
}

bool candidate_is_sound(const PlanarArc& candidate, const PlanarArc& partner, const DiscModel& disc,
                        std::size_t expected_crossings, const std::vector<Point>& old_sub,
                        const std::vector<Point>& new_sub) {
  if (check_arc(candidate, disc)) return false;
  if (find_contact(candidate, partner).kind != Contact::None) return false;
  std::vector<Crossing> cs;
  try {
    cs = transverse_crossings(candidate, partner);
  } catch (const Error&) {
    return false;
  }
  if (cs.size() != expected_crossings) return false;
  if (!sub_paths_form_simple_loop(old_sub, new_sub)) return false;
  std::vector<Point> loop = old_sub;
  for (std::size_t k = new_sub.size() - 1; k-- > 1;) loop.push_back(new_sub[k]);
  return region_is_empty(loop, disc);
}

std::vector<Bigon> removable_bigons(const PlanarArc& a, const PlanarArc& b, const std::vector<Crossing>& cs,
                                    const DiscModel& disc) {
  const std::size_t n = cs.size();
  std::vector<Bigon> out;
  if (n == 0) return out;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return param_b(cs[x]) < param_b(cs[y]); });
  std::vector<std::size_t> rank_b(n);
  for (std::size_t r = 0; r < n; ++r) rank_b[order[r]] = r;

  for (std::size_t k = 0; k + 1 < n; ++k) {
    std::size_t r1 = rank_b[k], r2 = rank_b[k + 1];
    if (r1 + 1 != r2 && r2 + 1 != r1) continue;
    std::vector<Point> loop = points_between(a, param_a(cs[k]), cs[k].at, param_a(cs[k + 1]), cs[k + 1].at);
    auto back = points_between(b, param_b(cs[k + 1]), cs[k + 1].at, param_b(cs[k]), cs[k].at);
    loop.insert(loop.end(), back.begin() + 1, back.end() - 1);
    if (region_is_empty(loop, disc)) out.push_back({BigonKind::Interior, k, k + 1, {}});
  }

  const Rational a_end(static_cast<long>(a.segment_count()));
  const Rational b_end(static_cast<long>(b.segment_count()));
  for (const auto& p : shared_puncture_points(a, b)) {
    bool a_starts = (a.vertices.front() == p);
    bool b_starts = (b.vertices.front() == p);
    std::size_t ka = a_starts ? 0 : n - 1;
    std::size_t kb = b_starts ? order[0] : order[n - 1];
    if (ka != kb) continue;
    std::vector<Point> loop = points_between(a, a_starts ? Rational(0) : a_end, p, param_a(cs[ka]), cs[ka].at);
    auto back = points_between(b, param_b(cs[ka]), cs[ka].at, b_starts ? Rational(0) : b_end, p);
    loop.insert(loop.end(), back.begin() + 1, back.end() - 1);
    if (region_is_empty(loop, disc)) out.push_back({BigonKind::AtSharedPuncture, ka, ka, p});
  }
  return out;
}

PlanarArc remove_interior_bigon(const PlanarArc& a, const PlanarArc& b, const std::vector<Crossing>& cs,
                                const Bigon& bigon, const DiscModel& disc) {
  const Crossing& c1 = cs[bigon.first];
  const Crossing& c2 = cs[bigon.second];
  std::vector<Point> q = points_between(b, param_b(c1), c1.at, param_b(c2), c2.at);
  const std::size_t i1 = c1.seg_a, i2 = c2.seg_a;
  const int side = orient(q[0], q[1], a.vertices[i1]);
  Line a_line1{a.vertices[i1], a.vertices[i1 + 1] - a.vertices[i1]};
  Line a_line2{a.vertices[i2], a.vertices[i2 + 1] - a.vertices[i2]};

  Rational h = ratio(1, 4);
  for (int attempt = 0; attempt < 120; ++attempt, h /= 2) {
    auto lines = offset_lines(q, side, h);
    auto p_in = intersect(lines.front(), a_line1);
    auto p_out = intersect(lines.back(), a_line2);
    if (!p_in || !p_out) continue;
    std::vector<Point> new_sub{*p_in};
    for (auto& j : offset_joints(q, lines)) new_sub.push_back(j);
    new_sub.push_back(*p_out);

    std::vector<Point> old_sub{*p_in};
    for (std::size_t i = i1 + 1; i <= i2; ++i) old_sub.push_back(a.vertices[i]);
    old_sub.push_back(*p_out);

    PlanarArc candidate = a;
    candidate.vertices.assign(a.vertices.begin(), a.vertices.begin() + static_cast<long>(i1) + 1);
    candidate.vertices.insert(candidate.vertices.end(), new_sub.begin(), new_sub.end());
    candidate.vertices.insert(candidate.vertices.end(), a.vertices.begin() + static_cast<long>(i2) + 1,
                              a.vertices.end());
    if (candidate_is_sound(candidate, b, disc, cs.size() - 2, old_sub, new_sub)) return candidate;
  }
  fail(ErrorCode::Internal, "could not realize the removal of an empty bigon");
}

PlanarArc remove_half_bigon(const PlanarArc& a_in, const PlanarArc& b, const Bigon& bigon, const DiscModel& disc) {
  const bool flip = !(a_in.vertices.front() == bigon.corner);
  PlanarArc a = flip ? reversed(a_in) : a_in;
  auto cs = transverse_crossings(a, b);
  const Crossing& c = cs.front();
  const Point& p = bigon.corner;
  const bool b_starts = (b.vertices.front() == p);
  const Rational b_corner = b_starts ? Rational(0) : Rational(static_cast<long>(b.segment_count()));
  std::vector<Point> q = points_between(b, b_corner, p, param_b(c), c.at);
  const std::size_t ic = c.seg_a;
  const int side = orient(q[q.size() - 2], q.back(), a.vertices[ic + 1]);
  Line a_line{a.vertices[ic], a.vertices[ic + 1] - a.vertices[ic]};

  Rational h = ratio(1, 4);
  for (int attempt = 0; attempt < 120; ++attempt, h /= 2) {
    auto lines = offset_lines(q, side, h);
    auto p_out = intersect(lines.back(), a_line);
    if (!p_out) continue;
    std::vector<Point> new_sub{p};
    for (auto& j : offset_joints(q, lines)) new_sub.push_back(j);
    new_sub.push_back(*p_out);

    std::vector<Point> old_sub{p};
    for (std::size_t i = 1; i <= ic; ++i) old_sub.push_back(a.vertices[i]);
    old_sub.push_back(*p_out);

    PlanarArc candidate = a;
    candidate.vertices = new_sub;
    candidate.vertices.insert(candidate.vertices.end(), a.vertices.begin() + static_cast<long>(ic) + 1,
                              a.vertices.end());
    if (candidate_is_sound(candidate, b, disc, cs.size() - 1, old_sub, new_sub))
      return flip ? reversed(candidate) : candidate;
  }
  fail(ErrorCode::Internal, "could not realize the removal of a half-bigon at a shared puncture");
}

}  // namespace

MinimalPositionResult reduce_to_minimal_position(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc,
                                                 const MinimalPositionOptions& options) {
  validate_arc(a, disc);
  validate_arc(b, disc);
  MinimalPositionResult result;
  result.second = generic_partner(a, b, disc);
  result.first = a;
  auto cs = transverse_crossings(result.first, result.second);
  result.initial_crossings = cs.size();

  std::optional<std::mt19937_64> rng;
  if (options.shuffle_seed) rng.emplace(*options.shuffle_seed);

  while (true) {
    auto bigons = removable_bigons(result.first, result.second, cs, disc);
    if (bigons.empty()) break;
    std::size_t pick = 0;
    if (rng) pick = std::uniform_int_distribution<std::size_t>(0, bigons.size() - 1)(*rng);
    const Bigon& bigon = bigons[pick];
    std::size_t before = cs.size();
    if (bigon.kind == BigonKind::Interior)
      result.first = remove_interior_bigon(result.first, result.second, cs, bigon, disc);
    else
      result.first = remove_half_bigon(result.first, result.second, bigon, disc);
    cs = transverse_crossings(result.first, result.second);
    result.steps.push_back({bigon.kind, before, cs.size()});
  }
  return result;
}

std::pair<PlanarArc, PlanarArc> minimal_position(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc) {
  auto r = reduce_to_minimal_position(a, b, disc);
  return {std::move(r.first), std::move(r.second)};
}

IntersectionProfile reduced_profile(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc) {
  auto [ra, rb] = minimal_position(a, b, disc);
  return intersection_profile(ra, rb, disc);
}

// ---------------------------------------------------------------------------
// Wrapping
// ---------------------------------------------------------------------------

namespace {

// Minkowski gauge of x with respect to the convex polygon whose vertices are
// the circle points of `dirs` (sorted turns in [0, 1)).
Rational polygon_gauge(const std::vector<Point>& dirs, const Point& x) {
  if (x.x == 0 && x.y == 0) return 0;
  const std::size_t n = dirs.size();
  for (std::size_t j = 0; j < n; ++j) {
    const Point& d0 = dirs[j];
    const Point& d1 = dirs[(j + 1) % n];
    if (sign(cross(d0, x)) >= 0 && sign(cross(x, d1)) > 0) {
      Rational den = cross(d0, d1);
      return (cross(x, d1) + cross(d0, x)) / den;
    }
  }
  fail(ErrorCode::Internal, "gauge sector search failed");
}

struct SpiralPlan {
  std::vector<Point> arc_prefix;  // original vertices through the start of the radial tail
  std::vector<Point> spiral;      // spiral vertices, then the boundary point
  Rational end_turn;
};

SpiralPlan plan_spiral(const PlanarArc& arc, const WrapSpec& spec, const DiscModel& disc) {
  validate_arc(arc, disc);
  if (arc.kind != ArcKind::Vanishing && arc.kind != ArcKind::Wrapped)
    fail(ErrorCode::InvalidInput, "only vanishing or wrapped paths can be wrapped");
  if (!puncture_id(arc.start) || !boundary_turn(arc.end))
    fail(ErrorCode::InvalidInput, "wrap expects an arc from a puncture to the boundary");
  if (spec.turns < 0) fail(ErrorCode::InvalidInput, "wrap turns must be nonnegative");
  if (spec.offset <= 0 || spec.offset >= 1) fail(ErrorCode::InvalidInput, "wrap offset must lie in (0, 1)");

  const auto& v = arc.vertices;
  const Point& tail = v[v.size() - 2];
  const Point& tip = v.back();
  if (cross(tail, tip) != 0 || dot(tail, tip) < 0)
    fail(ErrorCode::InvalidInput, "terminal segment of the arc is not radial");

  const Rational start = normalize_turn(*boundary_turn(arc.end));
  const Rational stop = start + spec.turns + spec.offset;
  const long n = disc.boundary_resolution();

  std::set<Rational> turn_set;
  for (long k = 0; k < n; ++k) turn_set.insert(ratio(k, n));
  turn_set.insert(start);
  turn_set.insert(normalize_turn(stop));
  std::vector<Rational> turns(turn_set.begin(), turn_set.end());
  std::vector<Point> dirs;
  for (const auto& t : turns) dirs.push_back(circle_point(t));

  Rational reach = 0;
  for (const auto& pu : disc.punctures()) reach = std::max(reach, polygon_gauge(dirs, pu.at));
  for (std::size_t i = 0; i + 1 < v.size(); ++i) reach = std::max(reach, polygon_gauge(dirs, v[i]));
  if (reach >= 1)
    fail(ErrorCode::SpiralCollision, "the wrapping annulus would contain a puncture or part of the arc");

  const Rational inner = (1 + reach) / 2;
  const Rational outer = (1 + inner) / 2;
  auto gauge_at = [&](const Rational& t) -> Rational { return inner + (outer - inner) * (t - start) / (stop - start); };

  std::vector<Rational> path_turns{start};
  for (long w = 0; w <= spec.turns + 1; ++w)
    for (const auto& t : turns) {
      Rational u = t + w;
      if (u > start && u < stop) path_turns.push_back(u);
    }
  std::sort(path_turns.begin() + 1, path_turns.end());
  path_turns.push_back(stop);

  SpiralPlan plan;
  plan.arc_prefix.assign(v.begin(), v.end() - 1);
  for (const auto& t : path_turns) plan.spiral.push_back(gauge_at(t) * circle_point(t));
  plan.spiral.push_back(circle_point(stop));
  plan.end_turn = normalize_turn(stop);
  return plan;
}

PlanarArc assemble_wrapped(const PlanarArc& arc, const WrapSpec& spec, std::vector<Point> vertices,
                           const Rational& end_turn) {
  PlanarArc out;
  out.kind = ArcKind::Wrapped;
  out.start = arc.start;
  out.end = BoundaryEnd{end_turn};
  out.vertices = std::move(vertices);
  out.wrap_turns = arc.wrap_turns + spec.turns;
  out.wrap_offset = arc.wrap_offset + spec.offset;
  return out;
}

}  // namespace

PlanarArc wrap(const PlanarArc& arc, const WrapSpec& spec, const DiscModel& disc) {
  SpiralPlan plan = plan_spiral(arc, spec, disc);
  std::vector<Point> vertices = plan.arc_prefix;
  vertices.insert(vertices.end(), plan.spiral.begin(), plan.spiral.end());
  PlanarArc out = assemble_wrapped(arc, spec, std::move(vertices), plan.end_turn);
  if (auto bad = arc_violation(out, disc)) fail(ErrorCode::SpiralCollision, "wrapped path is not embedded: " + *bad);
  return out;
}

PlanarArc wrap_pushed_left(const PlanarArc& arc, const WrapSpec& spec, const DiscModel& disc) {
  SpiralPlan plan = plan_spiral(arc, spec, disc);
  // Push off the original vertices, the spiral's first vertex and the first
  // spiral segment; rejoin the spiral at its second vertex.
  std::vector<Point> q = plan.arc_prefix;
  q.push_back(plan.spiral[0]);
  q.push_back(plan.spiral[1]);
  std::vector<Point> rest(plan.spiral.begin() + 1, plan.spiral.end());

  Rational h = ratio(1, 8);
  for (int attempt = 0; attempt < 120; ++attempt, h /= 2) {
    auto lines = offset_lines(q, +1, h);
    std::vector<Point> new_sub{q.front()};
    for (auto& j : offset_joints(q, lines)) new_sub.push_back(j);
    new_sub.push_back(q.back());

    std::vector<Point> vertices(new_sub.begin(), new_sub.end() - 1);
    vertices.insert(vertices.end(), rest.begin(), rest.end());
    PlanarArc candidate = assemble_wrapped(arc, spec, std::move(vertices), plan.end_turn);
    if (check_arc(candidate, disc)) continue;
    // Only the pushed part must stay off the original; later turns of the
    // spiral cross its radial tail by design.
    PlanarArc pushed = candidate;
    pushed.vertices = new_sub;
    if (find_contact(arc, pushed).kind != Contact::None) continue;
    if (!sub_paths_form_simple_loop(q, new_sub)) continue;
    std::vector<Point> loop = q;
    for (std::size_t k = new_sub.size() - 1; k-- > 1;) loop.push_back(new_sub[k]);
    if (!region_is_empty(loop, disc)) continue;
    return candidate;
  }
  fail(ErrorCode::SpiralCollision, "could not push the wrapped copy off its original");
}

}  // namespace lefbench::planar
