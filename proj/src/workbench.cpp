#include "lefbench/workbench.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "lefbench/svg.hpp"

namespace lefbench::workbench {

std::optional<Command> parse_command(std::string_view name) {
  if (name == "validate") return Command::Validate;
  if (name == "homology") return Command::Homology;
  if (name == "floer-ranks") return Command::FloerRanks;
  if (name == "hw") return Command::Hw;
  if (name == "render") return Command::Render;
  if (name == "all") return Command::All;
  return std::nullopt;
}

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Validate: return "validate";
    case Command::Homology: return "homology";
    case Command::FloerRanks: return "floer-ranks";
    case Command::Hw: return "hw";
    case Command::Render: return "render";
    case Command::All: return "all";
  }
  return "all";
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::Undecidable:
    case ErrorCode::UnknownPair: return 2;
    case ErrorCode::Inconsistent:
    case ErrorCode::Internal: return 3;
    default: return 1;
  }
}

namespace {

const scenario::RunSpec& run_spec(const scenario::Model& model) {
  if (!model.config.run) fail(ErrorCode::ConfigError, model.origin + ": this command needs a [run] section");
  return *model.config.run;
}

std::string hom(const std::string& x, const std::string& y) { return "Hom_FS(" + x + "," + y + ")"; }

std::string num(unsigned long n) { return std::to_string(n); }

}  // namespace

FloerResults floer_ranks(const scenario::Model& model, oracle::FiberOracle& working) {
  const auto& run = run_spec(model);
  const auto& main = model.catalog.fibration(run.main);
  FloerResults r;
  r.a_thimble = run.thimbles[0];
  r.b_thimble = run.thimbles[1];
  r.a = main.object(r.a_thimble).left;
  r.b = main.object(r.b_thimble).left;

  const fibration::Fibration* fiber = model.catalog.find_fibration(main.fiber);
  if (fiber && fiber->find_object(r.a) && fiber->find_object(r.b)) {
    r.hf_ab = fibration::matching_floer_rank(*fiber, fiber->object(r.a), fiber->object(r.b), working, true);
    if (!r.hf_ab.exact)
      fail(ErrorCode::Undecidable, "HF(" + r.a + "," + r.b + ") is only bounded by " + num(r.hf_ab.value));
    auto known = working.try_rank(r.a, r.b);
    if (known && *known != r.hf_ab.value)
      fail(ErrorCode::Inconsistent, "the oracle says HF(" + r.a + "," + r.b + ") = " + num(*known) +
                                        " but the matching paths give " + num(r.hf_ab.value));
    if (!known)
      working.set_rank(r.a, r.b, r.hf_ab.value,
                       {oracle::Provenance::Derived, "matching rank from the base: " + r.hf_ab.certificate});
  } else {
    r.hf_ab.exact = true;
    r.hf_ab.value = working.rank_of(r.a, r.b);
    r.hf_ab.certificate = "oracle";
  }

  r.twist_ab = rank::seidel_twist(working, r.a, r.b);
  r.twist_ba = rank::seidel_twist(working, r.b, r.a);
  r.fs_ab = rank::fs_hom_ranks(model.catalog, main, r.a_thimble, r.b_thimble, working);
  r.fs_ba = rank::fs_hom_ranks(model.catalog, main, r.b_thimble, r.a_thimble, working);
  return r;
}

namespace {

std::vector<tower::Stage> stages_for(const scenario::Model& model, const std::string& x, const std::string& y,
                                     const oracle::FiberOracle& o) {
  const auto& run = run_spec(model);
  const auto& main = model.catalog.fibration(run.main);
  std::vector<tower::Stage> out;
  for (long m = 0; m <= run.levels; ++m) out.push_back(tower::build_stage(main, x, y, {m, run.delta}, o));
  return out;
}

rank::Trace diagonal_trace(const std::string& sphere, const std::string& label, const std::string& thimble,
                           const std::string& other_thimble, const rank::TriangleInstance& twist,
                           const rank::FsHomRanks& fs, rank::Fate fate, const oracle::FiberOracle& o) {
  rank::Trace t;
  std::string reason;
  rank::pair_of_pants_image_rank(o, sphere, label, &reason);
  t.push_back({"twist-triangle",
               twist.k.name + " -> " + twist.l.name + " -> " + twist.m.name + ": ranks " + num(*twist.k.rank) + ", " +
                   num(*twist.l.rank) + ", product image " + num(*twist.image) + " (" + reason + "); rank " +
                   twist.m.name + " = " + num(*twist.m.rank)});
  const std::string t1 = thimble + "_1";
  t.push_back({"evaluation-cone",
               hom(thimble, thimble) + " -> " + hom(other_thimble, thimble) + " (x) " + hom(other_thimble, thimble) +
                   "^* -> " + hom(t1, thimble) + ": ranks " + num(fs.hom_bb) + ", " + num(fs.hom_ab * fs.hom_ab) +
                   ", evaluation image " + num(*fs.cone.image) + "; rank " + hom(t1, thimble) + " = " +
                   num(fs.hom_b1b)});
  const unsigned long quotient = *twist.m.rank;
  std::string relation = fate == rank::Fate::Dies
                             ? num(fs.hom_b1b) + " = " + num(quotient) + " - 1, so u is hit by the differential"
                             : num(fs.hom_b1b) + " = " + num(quotient) + " + 1, so u is a cycle that is not hit";
  t.push_back({"unit-fate", "CF_1(" + thimble + "," + thimble + ") computes " + hom(t1, thimble) +
                                "; without u it is the quotient complex computing " + twist.m.name + "; " + relation});
  return t;
}

}  // namespace

HwResults hw(const scenario::Model& model, const FloerResults& f, const oracle::FiberOracle& working) {
  HwResults r;
  r.fate_b = rank::unit_fate(static_cast<long>(f.fs_ab.hom_b1b), static_cast<long>(*f.twist_ab.m.rank));
  r.fate_a = rank::unit_fate(static_cast<long>(f.fs_ba.hom_b1b), static_cast<long>(*f.twist_ba.m.rank));

  auto diagonal = [&](const std::string& thimble, const rank::FsHomRanks& fs, rank::Fate fate) {
    auto stages = stages_for(model, thimble, thimble, working);
    for (auto& s : stages) {
      if (s.m == 0) tower::certify(s, fs.hom_bb);
      if (s.m == 1) tower::certify(s, fs.hom_b1b);
    }
    return tower::assemble_tower(std::move(stages), fate);
  };
  r.tower_bb = diagonal(f.b_thimble, f.fs_ab, r.fate_b);
  r.tower_aa = diagonal(f.a_thimble, f.fs_ba, r.fate_a);
  r.tower_ab = tower::assemble_tower(stages_for(model, f.a_thimble, f.b_thimble, working), std::nullopt);

  r.hw_bb = *r.tower_bb.verdict;
  r.hw_aa = *r.tower_aa.verdict;
  if (r.tower_ab.verdict && r.tower_ab.verdict->value == rank::HW::Zero)
    r.hw_ab = *r.tower_ab.verdict;
  else
    r.hw_ab = rank::module_verdict(f.a_thimble, f.b_thimble, r.hw_aa, r.hw_bb);

  std::map<std::string, std::optional<rank::Verdict>> diag{{f.a_thimble, r.hw_aa}, {f.b_thimble, r.hw_bb}};
  r.obstruction = rank::closed_lagrangian_obstruction(diag);

  auto append = [&](const rank::Trace& steps, const std::string& prefix) {
    for (auto s : steps) {
      if (!prefix.empty()) s.statement = prefix + s.statement;
      r.trace.push_back(std::move(s));
    }
  };
  append(diagonal_trace(f.a, f.b, f.b_thimble, f.a_thimble, f.twist_ab, f.fs_ab, r.fate_b, working), "");
  append(r.hw_bb.trace, "HW(" + f.b_thimble + "," + f.b_thimble + "): ");
  append(diagonal_trace(f.b, f.a, f.a_thimble, f.b_thimble, f.twist_ba, f.fs_ba, r.fate_a, working), "");
  append(r.hw_aa.trace, "HW(" + f.a_thimble + "," + f.a_thimble + "): ");
  append(r.hw_ab.trace, "");
  append(r.obstruction.trace, "");
  return r;
}

namespace {

class Report {
 public:
  void line(const std::string& key, const std::string& value) { out_ << key << ": " << value << "\n"; }
  void raw(const std::string& text) { out_ << text << "\n"; }
  std::string str() const { return out_.str(); }

 private:
  std::ostringstream out_;
};

std::string hw_text(const rank::Verdict& v) {
  if (v.value == rank::HW::Zero) return "0";
  return v.derived ? "nonzero" : "nonzero (flagged)";
}

bool validate_section(const scenario::Model& model, Report& rep, bool print) {
  bool ok = true;
  std::vector<std::string> notes;
  for (const auto& f : model.catalog.fibrations()) {
    auto v = fibration::validate(f, model.catalog, &model.oracle);
    if (v.ok()) {
      if (print) rep.line("validate " + f.name, "ok");
    } else {
      ok = false;
      for (const auto& x : v.violations) rep.line("violation " + f.name, x);
    }
    for (const auto& n : v.notes)
      if (std::find(notes.begin(), notes.end(), n) == notes.end()) notes.push_back(n);
  }
  if (print)
    for (const auto& n : notes) rep.line("note", n);
  return ok;
}

void homology_section(const scenario::Model& model, Report& rep) {
  for (const auto& f : model.catalog.fibrations()) {
    auto th = fibration::total_space_homology(model.catalog, f);
    for (int k = 0; k <= th.table.bound; ++k)
      rep.line("homology " + f.name + " H_" + std::to_string(k), homology::to_string(th.table.at(k)));
    for (const auto& [k, n] : th.table.mod2_ranks())
      rep.line("homology " + f.name + " H_" + std::to_string(k) + " mod 2", std::to_string(n));
    rep.line("euler " + f.name, th.euler.get_str());
    for (const auto& o : f.objects) {
      if (o.thimble) continue;
      try {
        auto cells = fibration::matching_cycle_class(model.catalog, f, o);
        auto coords = fibration::total_space_coordinates(model.catalog, f, cells);
        std::string c, h;
        for (const auto& x : cells) c += (c.empty() ? "" : " ") + x.get_str();
        for (const auto& x : coords) h += (h.empty() ? "" : " ") + x.get_str();
        rep.line("class " + f.name + "." + o.name, "cells [" + c + "] H_" + std::to_string(th.cell_degree) + " [" + h + "]");
      } catch (const Error& e) {
        rep.line("class " + f.name + "." + o.name, std::string("unresolved (") + e.what() + ")");
      }
    }
  }
}

std::string fact_line(const oracle::Fact& f) {
  std::string s;
  switch (f.kind) {
    case oracle::FactKind::Label: s = "label " + f.first; break;
    case oracle::FactKind::Sphere: s = "sphere " + f.first; break;
    case oracle::FactKind::Rank: s = "rank " + f.first + " " + f.second + " = " + num(f.rank); break;
    case oracle::FactKind::Disjoint: s = "disjoint " + f.first + " " + f.second; break;
    case oracle::FactKind::Isotopic: s = "isotopic " + f.first + " " + f.second; break;
    case oracle::FactKind::NotIsomorphic: s = "not_isomorphic " + f.first + " " + f.second + " " + f.witness; break;
    case oracle::FactKind::ParityFact:
      s = "parity " + f.first + " " + f.second + " = " + (f.parity == oracle::Parity::AllSame ? "same" : "mixed");
      break;
  }
  return s + " [" + std::string(oracle::to_string(f.note.provenance)) + "] " + f.note.text;
}

void floer_section(const FloerResults& r, const oracle::FiberOracle& working, Report& rep) {
  for (const auto& f : working.facts()) rep.line("oracle", fact_line(f));
  const std::string ab = "HF(" + r.a + "," + r.b + ")";
  rep.line(ab, num(r.hf_ab.value) + (r.hf_ab.exact ? " exact" : " bound"));
  rep.line(ab + " generators", num(r.hf_ab.generators) + " (interior crossings " + num(r.hf_ab.interior_crossings) +
                                   ", shared endpoints " + num(r.hf_ab.shared_endpoints) + ")");
  rep.line(ab + " certificate", r.hf_ab.certificate);
  rep.line("image " + r.twist_ab.k.name + " -> " + r.twist_ab.l.name, num(*r.twist_ab.image));
  rep.line(r.twist_ab.m.name, num(*r.twist_ab.m.rank));
  rep.line("image " + r.twist_ba.k.name + " -> " + r.twist_ba.l.name, num(*r.twist_ba.image));
  rep.line(r.twist_ba.m.name, num(*r.twist_ba.m.rank));
  const std::string& A = r.a_thimble;
  const std::string& B = r.b_thimble;
  rep.line(hom(B, B), num(r.fs_ab.hom_bb));
  rep.line(hom(A, B), num(r.fs_ab.hom_ab));
  rep.line(hom(B + "_1", B), num(r.fs_ab.hom_b1b));
  rep.line(hom(A, A), num(r.fs_ba.hom_bb));
  rep.line(hom(A + "_1", A), num(r.fs_ba.hom_b1b));
  rep.line(hom(A, B) + " source", r.fs_ab.hom_ab_source);
  for (const auto& w : r.fs_ab.warnings) rep.line("warning", w);
  for (const auto& w : r.fs_ba.warnings) rep.line("warning", w);
}

void tower_lines(const tower::Tower& t, Report& rep) {
  for (const auto& s : t.stages) {
    unsigned long u = 0;
    for (const auto& g : s.generators)
      if (g.tag == tower::Tag::CriticalU) ++u;
    std::string v = num(s.generator_count()) + " generators (" + num(s.generators.size() - u) + " crossings, " +
                    num(u) + " u)";
    if (s.certificate) v += ", certificate " + num(*s.certificate);
    v += ", forbidden arrows " + num(s.forbidden.size());
    rep.line("stage " + s.x + "," + s.y + " m=" + std::to_string(s.m), v);
  }
  std::string cont;
  for (const auto& c : t.continuations)
    cont += (cont.empty() ? "" : " ") + std::to_string(c.from) + "->" + std::to_string(c.to) +
            (c.unit_image_persists ? "*" : "");
  if (!t.stages.empty()) rep.line("continuations " + t.stages.front().x + "," + t.stages.front().y, cont);
  for (const auto& n : t.notes) rep.line("note", n);
}

void hw_section(const FloerResults& f, const HwResults& r, Report& rep) {
  tower_lines(r.tower_bb, rep);
  tower_lines(r.tower_aa, rep);
  tower_lines(r.tower_ab, rep);
  rep.line("unit fate " + f.b_thimble, std::string(rank::to_string(r.fate_b)));
  rep.line("unit fate " + f.a_thimble, std::string(rank::to_string(r.fate_a)));
  rep.line("HW(" + f.b_thimble + "," + f.b_thimble + ")", hw_text(r.hw_bb));
  rep.line("HW(" + f.a_thimble + "," + f.a_thimble + ")", hw_text(r.hw_aa));
  rep.line("HW(" + f.a_thimble + "," + f.b_thimble + ")", hw_text(r.hw_ab));
  rep.line("closed exact Lagrangian", std::string(rank::to_string(r.obstruction.value)));
}

void trace_block(const rank::Trace& trace, Report& rep) {
  rep.raw("PROOF TRACE");
  for (std::size_t i = 0; i < trace.size(); ++i)
    rep.raw(std::to_string(i + 1) + ". [" + trace[i].anchor + "] " + trace[i].statement);
  rep.raw("END PROOF TRACE");
}

std::string file_stem(const scenario::Model& model) {
  std::string s = model.config.name.empty() ? "scenario" : model.config.name;
  for (auto& ch : s)
    if (!std::isalnum(static_cast<unsigned char>(ch)) && ch != '-' && ch != '_') ch = '_';
  return s;
}

void render(const scenario::Model& model, const std::string& dir, Report& rep) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    std::filesystem::path p = std::filesystem::path(dir) / name;
    std::ofstream out(p);
    if (!out) fail(ErrorCode::ConfigError, "cannot write '" + p.string() + "'");
    out << text;
    rep.line("svg", p.string());
  };
  for (const auto& d : model.config.discs) {
    std::vector<svg::NamedArc> arcs;
    for (const auto& a : model.config.arcs)
      if (a.disc == d.name) arcs.emplace_back(a.name, model.arcs.at(a.name));
    write(file_stem(model) + "_" + d.name + ".svg", svg::render(model.discs.at(d.name), arcs));
  }
  if (!model.config.run) return;
  const auto& run = *model.config.run;
  const auto& main = model.catalog.fibration(run.main);
  const std::vector<std::pair<std::string, std::string>> pairs{{run.thimbles[1], run.thimbles[1]},
                                                               {run.thimbles[0], run.thimbles[0]},
                                                               {run.thimbles[0], run.thimbles[1]}};
  for (const auto& [x, y] : pairs) {
    for (long m = 0; m <= run.levels; ++m) {
      const auto& px = main.object(x).path;
      planar::WrapSpec spec{m, run.delta};
      auto wrapped = x == y ? planar::wrap_pushed_left(px, spec, main.base) : planar::wrap(px, spec, main.base);
      auto [a, b] = planar::minimal_position(wrapped, main.object(y).path, main.base);
      write(file_stem(model) + "_" + x + "_" + y + "_m" + std::to_string(m) + ".svg",
            svg::render(main.base, {{x + "_wrapped", a}, {y, b}}));
    }
  }
}

}  // namespace

Outcome run(const scenario::Model& model, Command command, const Options& options) {
  Report rep;
  Outcome out;
  rep.line("scenario", model.config.name.empty() ? "(unnamed)" : model.config.name);
  rep.line("command", std::string(to_string(command)));
  const bool all = command == Command::All;
  try {
    if (command != Command::Render) {
      bool print = command == Command::Validate || all;
      if (print) rep.line("section", "validate");
      if (!validate_section(model, rep, print)) {
        rep.line("result", "validation failed");
        out.report = rep.str();
        out.exit_code = 1;
        return out;
      }
    }
    if (command == Command::Homology || all) {
      rep.line("section", "homology");
      homology_section(model, rep);
    }
    if (all && !model.config.run) {
      rep.line("section", "floer-ranks");
      rep.line("skipped", "no [run] section");
    } else if (command == Command::FloerRanks || command == Command::Hw || all) {
      oracle::FiberOracle working = model.oracle;
      rep.line("section", "floer-ranks");
      FloerResults f = floer_ranks(model, working);
      floer_section(f, working, rep);
      if (command == Command::Hw || all) {
        rep.line("section", "hw");
        HwResults h = hw(model, f, working);
        hw_section(f, h, rep);
        trace_block(h.trace, rep);
      }
    }
    if (command == Command::Render || (all && options.svg_dir)) {
      rep.line("section", "render");
      render(model, options.svg_dir.value_or("."), rep);
    }
  } catch (const Error& e) {
    rep.line("error", e.what());
    out.exit_code = exit_code_for(e.code());
  } catch (const std::exception& e) {
    rep.line("error", std::string("Internal: ") + e.what());
    out.exit_code = 3;
  }
  out.report = rep.str();
  return out;
}

}  // namespace lefbench::workbench
