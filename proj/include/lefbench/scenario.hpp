#pragma once

// Scenario configuration files: an INI-like text format, its parser and
// emitter, and the translation into module inputs.
//
//   # comment
//   [scenario]            name = ..., description = ...
//   [disc NAME]           resolution = N, puncture ID = X Y
//   [arc NAME]            disc, kind, start, via = X Y; X Y, end
//                         (endpoints: "puncture ID" or "boundary TURN")
//   [fiber NAME]          middle, bound, degree K = FREE [TORSION...],
//                         class LABEL = V...
//   [fibration NAME]      disc, fiber, reference_angle,
//                         crit ID = ARC LABEL [SIGN]
//   [objects FIBRATION]   matching NAME = ARC LEFT RIGHT [framed],
//                         thimble NAME = ARC LABEL
//   [oracle]              sphere L, label L, rank I J = N, disjoint I J,
//                         isotopic I J, not_isomorphic I J W,
//                         parity I J = same|mixed; each followed by
//                         "| cited: TEXT" or "| assumed: TEXT"
//   [run]                 main, thimbles = X Y, levels, delta
//
// Rationals are written "p/q" or as integers.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lefbench/fibration.hpp"
#include "lefbench/homology.hpp"
#include "lefbench/oracle.hpp"
#include "lefbench/planar.hpp"

namespace lefbench::scenario {

/// Config line of a declaration; ignored by equality so that emitted and
/// re-parsed configs compare equal.
struct SourceLine {
  int value = 0;
  friend bool operator==(const SourceLine&, const SourceLine&) { return true; }
};

struct DiscSpec {
  std::string name;
  int resolution = 16;
  std::vector<planar::Puncture> punctures;
  SourceLine line;
  friend bool operator==(const DiscSpec&, const DiscSpec&) = default;
};

struct EndSpec {
  bool boundary = false;
  std::string puncture;
  Rational turn;
  friend bool operator==(const EndSpec&, const EndSpec&) = default;
};

struct ArcSpec {
  std::string name;
  std::string disc;
  planar::ArcKind kind = planar::ArcKind::Free;
  EndSpec start;
  std::vector<Point> via;
  EndSpec end;
  SourceLine line;
  friend bool operator==(const ArcSpec&, const ArcSpec&) = default;
};

struct FiberSpec {
  std::string name;
  int middle = 0;
  int bound = 0;
  std::map<int, homology::Group> degrees;
  std::map<std::string, homology::Vector> classes;
  SourceLine line;
  friend bool operator==(const FiberSpec&, const FiberSpec&) = default;
};

struct CritSpec {
  std::string puncture;
  std::string arc;
  std::string label;
  int sign = 1;
  SourceLine line;
  friend bool operator==(const CritSpec&, const CritSpec&) = default;
};

struct ObjectSpec {
  std::string name;
  bool thimble = false;
  std::string arc;
  std::string left;
  std::string right;
  bool framed = false;
  SourceLine line;
  friend bool operator==(const ObjectSpec&, const ObjectSpec&) = default;
};

struct FibrationSpec {
  std::string name;
  std::string disc;
  std::string fiber;
  Rational reference_angle;
  std::vector<CritSpec> crits;
  std::vector<ObjectSpec> objects;
  SourceLine line;
  friend bool operator==(const FibrationSpec&, const FibrationSpec&) = default;
};

struct OracleLine {
  oracle::Fact fact;
  SourceLine line;
  friend bool operator==(const OracleLine&, const OracleLine&) = default;
};

struct RunSpec {
  std::string main;
  std::vector<std::string> thimbles;
  long levels = 3;
  Rational delta{1, 32};
  friend bool operator==(const RunSpec&, const RunSpec&) = default;
};

struct Config {
  std::string name;
  std::string description;
  std::vector<DiscSpec> discs;
  std::vector<ArcSpec> arcs;
  std::vector<FiberSpec> fibers;
  std::vector<FibrationSpec> fibrations;
  std::vector<OracleLine> oracle;
  std::optional<RunSpec> run;
  friend bool operator==(const Config&, const Config&) = default;
};

/// Throws Error(ConfigError) naming the line on any syntax problem.
Config parse(const std::string& text, const std::string& origin = "<config>");
Config load(const std::string& path);
std::string emit(const Config& config);

/// Module inputs built from a config. Arcs are realized but not validated;
/// validation is the job of fibration::validate.
struct Model {
  Config config;
  std::string origin;
  std::map<std::string, planar::DiscModel> discs;
  std::map<std::string, planar::PlanarArc> arcs;
  fibration::Catalog catalog;
  oracle::FiberOracle oracle;
};

/// Throws Error(ConfigError) for dangling references; oracle errors keep their
/// own code with the line prefixed.
Model build(const Config& config, const std::string& origin = "<config>",
            std::optional<int> resolution_override = std::nullopt);

}  // namespace lefbench::scenario
