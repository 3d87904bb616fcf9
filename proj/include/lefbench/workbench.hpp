#pragma once

// Scenario execution: the command pipeline behind the CLI and the C API, and
// the deterministic line-oriented reports.

#include <optional>
#include <string>
#include <vector>

#include "lefbench/errors.hpp"
#include "lefbench/fibration.hpp"
#include "lefbench/rank_calculus.hpp"
#include "lefbench/scenario.hpp"
#include "lefbench/wrapped_tower.hpp"

namespace lefbench::workbench {

enum class Command { Validate, Homology, FloerRanks, Hw, Render, All };

std::optional<Command> parse_command(std::string_view name);
std::string_view to_string(Command c);

/// 1 validation failure, 2 Undecidable/UnknownPair, 3 internal inconsistency.
int exit_code_for(ErrorCode code);

struct FloerResults {
  std::string a_thimble, b_thimble;
  std::string a, b;  // vanishing-cycle labels of the thimbles
  fibration::RankResult hf_ab;
  rank::TriangleInstance twist_ab;  // ends in HF(b, tau_a b)
  rank::TriangleInstance twist_ba;  // ends in HF(a, tau_b a)
  rank::FsHomRanks fs_ab;           // Hom(b,b), Hom(a,b), Hom(b_1,b)
  rank::FsHomRanks fs_ba;           // Hom(a,a), Hom(b,a), Hom(a_1,a)
};

struct HwResults {
  tower::Tower tower_bb;
  tower::Tower tower_aa;
  tower::Tower tower_ab;
  rank::Fate fate_b = rank::Fate::Survives;
  rank::Fate fate_a = rank::Fate::Survives;
  rank::Verdict hw_bb;
  rank::Verdict hw_aa;
  rank::Verdict hw_ab;
  rank::ObstructionResult obstruction;
  rank::Trace trace;
};

/// Requires a [run] section. `working` starts as the model's oracle and gains
/// the derived rank HF(a, b); a conflict raises Error(Inconsistent).
FloerResults floer_ranks(const scenario::Model& model, oracle::FiberOracle& working);

HwResults hw(const scenario::Model& model, const FloerResults& floer, const oracle::FiberOracle& working);

struct Options {
  std::optional<std::string> svg_dir;
};

struct Outcome {
  std::string report;
  int exit_code = 0;
};

/// Never throws for module errors: they end the report with an error line and
/// set the exit code.
Outcome run(const scenario::Model& model, Command command, const Options& options = {});

}  // namespace lefbench::workbench
