#pragma once

// Independent oracles and property runners shared by the unit tests and the
// acceptance binary.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "lefbench/planar.hpp"
#include "lefbench/scenario.hpp"
#include "lefbench/workbench.hpp"

namespace support {

using lefbench::Point;
using lefbench::Rational;

std::string scenario_path(const std::string& file);
lefbench::scenario::Model load_scenario(const std::string& file, std::optional<int> resolution = std::nullopt);
std::string scenario_text(const std::string& file);
/// Replaces every occurrence of `from`; throws std::logic_error if there is none.
std::string replaced(std::string text, const std::string& from, const std::string& to);
lefbench::scenario::Model model_from_text(const std::string& text);

/// Brute-force count of the points where two polylines meet, shared puncture
/// endpoints excluded. Uses its own segment intersection, not the library's.
std::size_t sweep_crossings(const lefbench::planar::PlanarArc& a, const lefbench::planar::PlanarArc& b);

// --- Z/2 linear algebra on bit rows (n <= 32) ---

using Bits = std::uint32_t;
using F2Matrix = std::vector<Bits>;  // row i holds the image of basis vector i

int f2_rank(std::vector<Bits> rows);
/// Column-vector convention: apply(m, v) = sum of rows m[i] with bit i set in v.
Bits f2_apply(const F2Matrix& m, Bits v);
std::vector<Bits> f2_kernel(const F2Matrix& m, int n);

struct ConeInstance {
  int k_dim = 0;
  int l_dim = 0;
  int hk = 0;
  int hl = 0;
  int induced_rank = 0;
  int cone_homology = 0;  // computed directly from the cone complex
};

/// Random square-zero differentials on K and L and a chain map f, with
/// k_dim + l_dim <= max_total.
ConeInstance random_cone(std::mt19937_64& rng, int max_total = 6);

// --- property runners; each returns the number of checked instances and
// collects failures as text ---

struct PropertyResult {
  std::size_t checked = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Random arc pairs in a three-puncture disc; the reduced profile must not
/// depend on the order of bigon removal. Only instances without degenerate
/// contacts count towards `wanted`.
PropertyResult bigon_order_independence(std::size_t wanted, std::uint64_t seed);

PropertyResult cone_equivalence(std::size_t instances, std::uint64_t seed);

/// Stage inventories for the three thimble pairs of two scenarios, m = 0..levels.
struct Inventory {
  long m;
  std::string x, y;
  std::vector<std::pair<unsigned long, lefbench::tower::Tag>> blocks;  // (multiplicity, tag) in order
  friend bool operator==(const Inventory&, const Inventory&) = default;
};
std::vector<Inventory> inventories(const lefbench::scenario::Model& model, std::optional<int> resolution = std::nullopt);

PropertyResult inventory_equality(const lefbench::scenario::Model& a, const lefbench::scenario::Model& b);

/// Every certified stage of the hw pipeline has certificate parity equal to
/// its generator-count parity.
PropertyResult certificate_parity(const lefbench::scenario::Model& model);

/// Intersection profiles and inventories are unchanged when the boundary
/// resolution is doubled.
PropertyResult resolution_invariance(const lefbench::scenario::Model& model);

}  // namespace support
