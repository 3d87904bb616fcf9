#pragma once

// Ranks of Floer groups known only through exact triangles, over Z/2 and
// ungraded. Every verdict carries the ordered list of steps it used.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lefbench/fibration.hpp"
#include "lefbench/oracle.hpp"

namespace lefbench::rank {

struct TraceStep {
  std::string anchor;
  std::string statement;
  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

using Trace = std::vector<TraceStep>;

/// rank M = k + l - 2f for an exact triangle K -> L -> M whose first map has
/// image rank f. Throws Error(ImageTooLarge) if f > min(k, l) and
/// Error(InvalidInput) for negative input.
unsigned long triangle_rank(long k, long l, long f);

enum class TriangleKind { SeidelTwist, EvaluationCone };

struct RankObject {
  std::string name;
  std::optional<unsigned long> rank;
  std::string provenance;  // "oracle", "triangle:<id>", "tensor:<a>*<b>"
};

/// rank of a tensor product, known when both factors are.
RankObject tensor(const RankObject& a, const RankObject& b);

struct TriangleInstance {
  std::string id;
  TriangleKind kind;
  RankObject k;
  RankObject l;
  RankObject m;
  std::optional<unsigned long> image;
  std::string sphere;  // twisting sphere for SeidelTwist
};

/// Image rank of HF(a,b) (x) HF(b,a) -> HF(b,b). 2 when a and b are isotopic,
/// 1 given a witness w with HF(a,w) = 0 < HF(b,w), 0 when a tensor factor
/// vanishes. Throws Error(Undecidable) in every other case.
unsigned long pair_of_pants_image_rank(const oracle::FiberOracle& o, const std::string& a, const std::string& b,
                                       std::string* reason = nullptr);

/// The triangle HF(a,b) (x) HF(b,a) -> HF(b,b) -> HF(b, tau_a b).
TriangleInstance seidel_twist(const oracle::FiberOracle& o, const std::string& a, const std::string& b);
unsigned long seidel_twist_rank(const oracle::FiberOracle& o, const std::string& a, const std::string& b);

struct FsHomRanks {
  unsigned long hom_bb = 0;
  unsigned long hom_ab = 0;
  unsigned long hom_b1b = 0;
  std::vector<std::string> warnings;
  TriangleInstance cone;
  std::string hom_ab_source;
};

/// Ranks of Hom(B,B), Hom(A,B) and Hom(B_1,B) in the directed category of the
/// thimbles, given rank Hom(A,B). A zero evaluation map is allowed only with
/// hom_ab = 0 and yields a "NonzeroEvViolation" warning.
FsHomRanks fs_hom_ranks_from(unsigned long hom_ab);

/// Same, with hom_ab computed from the fiber: the matching rank of the fiber
/// objects named by the thimble labels (demanded exact), or the oracle rank
/// when the fiber is abstract.
FsHomRanks fs_hom_ranks(const fibration::Catalog& catalog, const fibration::Fibration& main,
                        const std::string& a_thimble, const std::string& b_thimble, const oracle::FiberOracle& o);

enum class Fate { Survives, Dies };

std::string_view to_string(Fate fate);

/// Throws Error(Inconsistent) unless |total - quotient| = 1.
Fate unit_fate(long rank_total, long rank_quotient);

enum class HW { Zero, NonZero };

std::string_view to_string(HW value);

struct Verdict {
  HW value = HW::NonZero;
  bool derived = true;  // false for flagged (asserted, not derived) nonvanishing
  Trace trace;
};

Verdict hw_verdict(Fate fate);

/// HW(x,y) is a module over HW(x,x) and HW(y,y): zero if either is zero.
/// Otherwise nonzero, flagged rather than derived.
Verdict module_verdict(const std::string& x, const std::string& y, const Verdict& xx, const Verdict& yy);

enum class Obstruction { Obstructed, NoConclusion };

std::string_view to_string(Obstruction value);

struct ObstructionResult {
  Obstruction value = Obstruction::NoConclusion;
  Trace trace;
};

/// Throws Error(IncompleteBasis) if any thimble has no verdict.
ObstructionResult closed_lagrangian_obstruction(const std::map<std::string, std::optional<Verdict>>& diagonal);

}  // namespace lefbench::rank
