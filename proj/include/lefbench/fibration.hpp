#pragma once

// Lefschetz fibrations over the disc described by critical values, vanishing
// paths and vanishing-cycle labels. A fibration's fiber is either an abstract
// fiber with a stated homology table or the total space of another fibration.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "lefbench/homology.hpp"
#include "lefbench/oracle.hpp"
#include "lefbench/planar.hpp"

namespace lefbench::fibration {

struct AbstractFiber {
  std::string name;
  homology::HomologyTable homology;
  int middle = 0;
  std::map<std::string, homology::Vector> classes;  // H_middle coordinates
};

struct CriticalValue {
  std::string puncture;
  planar::PlanarArc path;
  std::string label;
  int sign = 1;  // orientation of the vanishing cycle relative to its class
};

/// A matching cycle (two puncture ends) or a thimble (vanishing path).
struct FiberObject {
  std::string name;
  planar::PlanarArc path;
  std::string left;
  std::string right;  // equals left for thimbles
  bool thimble = false;
  bool framed = false;  // framings declared isotopic
};

struct Fibration {
  std::string name;
  planar::DiscModel base;
  std::string fiber;
  Rational reference_angle;
  std::vector<CriticalValue> crits;
  std::vector<FiberObject> objects;

  const FiberObject& object(const std::string& name) const;
  const FiberObject* find_object(const std::string& name) const;
  /// Index of the critical value at this puncture, if any.
  std::optional<std::size_t> crit_at(const std::string& puncture) const;
};

/// What the next fibration up needs to know about a fiber.
struct FiberModel {
  homology::HomologyTable homology;
  int middle = 0;
  std::map<std::string, homology::Vector> classes;
  std::map<std::string, std::string> missing;  // label -> why no class
};

struct TotalHomology {
  homology::HomologyTable table;
  Integer euler;
  int cell_degree = 0;
  std::vector<homology::Vector> cell_cycles;  // basis of cycles among the cells
};

class Catalog {
 public:
  void add_fiber(AbstractFiber fiber);
  void add_fibration(Fibration fibration);

  bool has_fiber(const std::string& name) const;
  const AbstractFiber* abstract_fiber(const std::string& name) const;
  const Fibration* find_fibration(const std::string& name) const;
  const Fibration& fibration(const std::string& name) const;
  const std::vector<Fibration>& fibrations() const { return fibrations_; }
  const std::vector<AbstractFiber>& fibers() const { return fibers_; }

  /// Resolves abstract fibers directly and fibrations through their total
  /// space. Throws Error(InvalidInput) on unknown names or cyclic references.
  FiberModel fiber_model(const std::string& name) const;

 private:
  FiberModel fiber_model(const std::string& name, std::vector<std::string>& stack) const;
  friend TotalHomology total_space_homology(const Catalog&, const Fibration&);

  std::vector<AbstractFiber> fibers_;
  std::vector<Fibration> fibrations_;
};

struct ValidationReport {
  std::vector<std::string> violations;
  std::vector<std::string> notes;
  bool ok() const { return violations.empty(); }
};

/// Never throws for malformed fibrations; every problem becomes a violation.
ValidationReport validate(const Fibration& f, const Catalog& catalog, const oracle::FiberOracle* oracle);

/// Fiber homology plus one (middle + 1)-cell per critical value attached along
/// sign * class(label). Throws Error(MissingClass) for labels without classes
/// and Error(Inconsistent) if the Euler characteristic check fails.
TotalHomology total_space_homology(const Catalog& catalog, const Fibration& f);

/// Cycle in cell coordinates made from the thimbles of critical values i and
/// j: e_i - e_j when their attaching classes agree, e_i + e_j when they are
/// opposite, zero when i == j. Throws Error(UnresolvedSign) otherwise.
homology::Vector matching_cells(const std::vector<homology::Vector>& attaching, std::size_t i, std::size_t j);

/// Class of a matching object in cell coordinates.
homology::Vector matching_cycle_class(const Catalog& catalog, const Fibration& f, const FiberObject& object);

/// Coordinates of a cell cycle in the H_{middle+1} basis of the total space:
/// the fiber's free generators, then the cell-cycle basis, then the fiber's
/// torsion generators.
homology::Vector total_space_coordinates(const Catalog& catalog, const Fibration& f, const homology::Vector& cells);

struct RankResult {
  bool exact = false;
  unsigned long value = 0;  // the rank when exact, else the generator bound
  unsigned long generators = 0;
  std::size_t interior_crossings = 0;
  std::size_t shared_endpoints = 0;
  std::string certificate;
};

/// Floer rank over Z/2 of two fiber objects from their base intersections.
/// Throws Error(MissingParity) when `demand_exact` and the count cannot be
/// promoted because no parity is declared.
RankResult matching_floer_rank(const Fibration& f, const FiberObject& x, const FiberObject& y,
                               const oracle::FiberOracle& o, bool demand_exact = false);

}  // namespace lefbench::fibration
