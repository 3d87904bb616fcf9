#pragma once

// Generator inventories of the wrapped complexes CF_m(x, y) of two thimbles,
// read off from the base: x's path wrapped m turns (plus the small offset)
// against y's path.

#include <optional>
#include <string>
#include <vector>

#include "lefbench/fibration.hpp"
#include "lefbench/planar.hpp"
#include "lefbench/rank_calculus.hpp"

namespace lefbench::tower {

enum class Tag { Ordinary, CriticalU };

struct Generator {
  Point at;
  unsigned long multiplicity = 1;  // fiber intersection count over this point
  Tag tag = Tag::Ordinary;
  std::string puncture;  // CriticalU only
};

struct ForbiddenArrow {
  std::size_t from = 0;
  std::size_t to = 0;
  std::string rule;
};

struct Stage {
  long m = 0;
  std::string x;
  std::string y;
  std::vector<Generator> generators;
  std::vector<ForbiddenArrow> forbidden;
  std::optional<unsigned long> certificate;
  planar::PlanarArc wrapped;
  planar::PlanarArc partner;

  unsigned long generator_count() const;
  bool has_unit() const;
};

/// Throws Error(InvalidInput) for unknown thimbles or a non-radial path end.
Stage build_stage(const fibration::Fibration& f, const std::string& x, const std::string& y,
                  const planar::WrapSpec& spec, const oracle::FiberOracle& o);

/// Attaches an exact rank. Throws Error(Inconsistent) if it exceeds the
/// generator count or has the other parity.
void certify(Stage& stage, unsigned long rank);

struct Continuation {
  long from = 0;
  long to = 0;
  bool unit_image_persists = false;
};

struct Tower {
  std::vector<Stage> stages;
  std::vector<Continuation> continuations;
  std::optional<rank::Verdict> verdict;
  std::vector<std::string> notes;
};

/// Orders stages by level and adds a continuation for every m < n. When some
/// stage has a unit generator the fate of u at level 1 decides the verdict
/// (Error(MissingFate) without it). Without u, all-empty towers are HW = 0
/// and any other tower is left without a verdict.
Tower assemble_tower(std::vector<Stage> stages, std::optional<rank::Fate> fate);

}  // namespace lefbench::tower
