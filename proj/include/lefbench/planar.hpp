#pragma once

// Arcs in the closed unit disc with marked interior punctures.
//
// Everything here is exact: coordinates are rationals, boundary points are
// rational points of the unit circle, and all predicates are sign tests on
// rational polynomials. Degenerate contacts between two arcs are resolved by a
// symbolic shift of the later arc by (eps, eps^2), eps -> 0+, which is then
// realized by a concrete rational eps small enough that every predicate
// already has its limiting sign.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lefbench/rational.hpp"

namespace lefbench::planar {

struct Puncture {
  std::string id;
  Point at;
  friend bool operator==(const Puncture&, const Puncture&) = default;
};

class DiscModel {
 public:
  /// Throws Error(InvalidInput) unless every puncture is strictly inside the
  /// unit circle, ids are unique and positions pairwise distinct, and
  /// boundary_resolution >= 4.
  explicit DiscModel(std::vector<Puncture> punctures, int boundary_resolution = 16);

  const std::vector<Puncture>& punctures() const { return punctures_; }
  int boundary_resolution() const { return resolution_; }
  const Puncture* find(std::string_view id) const;
  const Puncture& at(std::string_view id) const;

  DiscModel with_resolution(int boundary_resolution) const;

 private:
  std::vector<Puncture> punctures_;
  int resolution_;
};

/// Point of the unit circle at the given fraction of a full turn. Each quarter
/// turn k is parametrized by s = 4*turn - k in [0, 1) through
/// s -> ((1 - s^2) / (1 + s^2), 2s / (1 + s^2)) followed by k exact quarter
/// rotations, so the map is a monotone bijection [0, 1) -> circle with
/// rational values.
Point circle_point(const Rational& turn);

/// turn reduced into [0, 1).
Rational normalize_turn(const Rational& turn);

struct PunctureEnd {
  std::string id;
  friend bool operator==(const PunctureEnd&, const PunctureEnd&) = default;
};

struct BoundaryEnd {
  Rational turn;
  friend bool operator==(const BoundaryEnd& a, const BoundaryEnd& b) { return a.turn == b.turn; }
};

using Endpoint = std::variant<PunctureEnd, BoundaryEnd>;

enum class ArcKind { Vanishing, Matching, Wrapped, Free };

std::string_view to_string(ArcKind kind);

struct PlanarArc {
  std::vector<Point> vertices;  // first and last realize the endpoints
  Endpoint start;
  Endpoint end;
  ArcKind kind = ArcKind::Free;
  long wrap_turns = 0;          // meaningful for Wrapped arcs
  Rational wrap_offset = 0;     // fraction of a turn beyond wrap_turns

  std::size_t segment_count() const { return vertices.size() - 1; }
};

/// Builds an arc whose first/last vertices are the realized endpoints and
/// validates it.
PlanarArc make_arc(const DiscModel& disc, ArcKind kind, Endpoint start, std::vector<Point> interior,
                   Endpoint end);

/// Throws Error(NonEmbeddableInput) on self-intersection and
/// Error(InvalidInput) for any other violated arc invariant.
void validate_arc(const PlanarArc& arc, const DiscModel& disc);

/// Same as validate_arc but returns the violation text instead of throwing.
std::optional<std::string> arc_violation(const PlanarArc& arc, const DiscModel& disc);

PlanarArc reversed(const PlanarArc& arc);

/// Inserts the midpoint of every segment `times` times over.
PlanarArc refined(const PlanarArc& arc, int times = 1);

std::optional<std::string> puncture_id(const Endpoint& e);
std::optional<Rational> boundary_turn(const Endpoint& e);

struct Crossing {
  Point at;
  std::size_t seg_a = 0;
  Rational t_a;
  std::size_t seg_b = 0;
  Rational t_b;
};

/// Transverse interior crossings of two arcs in general position, ordered
/// along `a`. Throws Error(DegenerateTangency) when the arcs touch
/// non-transversally anywhere except at a shared puncture endpoint.
std::vector<Crossing> transverse_crossings(const PlanarArc& a, const PlanarArc& b);

/// Ids of punctures that are endpoints of both arcs, sorted.
std::vector<std::string> shared_punctures(const PlanarArc& a, const PlanarArc& b);

/// Throws Error(SharedBoundaryEndpoint) if both arcs end at the same boundary
/// point.
void require_distinct_boundary_ends(const PlanarArc& a, const PlanarArc& b);

/// Returns b unchanged when (a, b) are already in general position, otherwise
/// the deterministic perturbation of b's interior vertices by (eps, eps^2).
/// Throws Error(DegenerateTangency) when the contact cannot be resolved that
/// way (collinear overlap leaving a shared puncture).
PlanarArc generic_partner(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc);

struct IntersectionProfile {
  std::vector<Point> interior_crossings;
  std::vector<std::string> shared_punctures;
  std::vector<Rational> shared_boundary;  // always empty on success

  std::size_t crossing_count() const { return interior_crossings.size(); }
};

IntersectionProfile intersection_profile(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc);

struct MinimalPositionOptions {
  /// When set, the bigon eliminated at each step is drawn at random from all
  /// currently removable ones; otherwise the first one along `a` is taken.
  std::optional<std::uint64_t> shuffle_seed;
};

enum class BigonKind { Interior, AtSharedPuncture };

struct ReductionStep {
  BigonKind kind;
  std::size_t crossings_before;
  std::size_t crossings_after;
};

struct MinimalPositionResult {
  PlanarArc first;
  PlanarArc second;
  std::size_t initial_crossings = 0;
  std::vector<ReductionStep> steps;
};

/// Removes empty bigons one at a time. Interior bigons (two crossing corners)
/// remove two crossings; half-bigons cornered at a shared puncture remove one.
MinimalPositionResult reduce_to_minimal_position(const PlanarArc& a, const PlanarArc& b,
                                                 const DiscModel& disc,
                                                 const MinimalPositionOptions& options = {});

std::pair<PlanarArc, PlanarArc> minimal_position(const PlanarArc& a, const PlanarArc& b,
                                                 const DiscModel& disc);

/// Profile of the minimal-position representatives.
IntersectionProfile reduced_profile(const PlanarArc& a, const PlanarArc& b, const DiscModel& disc);

struct WrapSpec {
  long turns = 0;
  Rational offset;  // strictly positive fraction of a turn
};

/// Winds the boundary end of a radial-ended arc counterclockwise by
/// turns + offset, as a polygonal spiral through the annulus between the
/// outermost puncture and the circle.
PlanarArc wrap(const PlanarArc& arc, const WrapSpec& spec, const DiscModel& disc);

/// wrap() followed by a push-off of everything but the starting puncture to
/// the left of the original arc, so that the result meets `arc` at that
/// puncture only (plus the spiral's transverse passes).
PlanarArc wrap_pushed_left(const PlanarArc& arc, const WrapSpec& spec, const DiscModel& disc);

/// Winding number of the closed polygon around p (p must not lie on it).
int winding_number(const std::vector<Point>& polygon, const Point& p);

}  // namespace lefbench::planar
