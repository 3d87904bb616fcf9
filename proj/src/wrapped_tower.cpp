#include "lefbench/wrapped_tower.hpp"

#include <algorithm>

#include "lefbench/errors.hpp"

namespace lefbench::tower {

unsigned long Stage::generator_count() const {
  unsigned long n = 0;
  for (const auto& g : generators) n += g.multiplicity;
  return n;
}

bool Stage::has_unit() const {
  return std::any_of(generators.begin(), generators.end(), [](const Generator& g) { return g.tag == Tag::CriticalU; });
}

Stage build_stage(const fibration::Fibration& f, const std::string& x, const std::string& y,
                  const planar::WrapSpec& spec, const oracle::FiberOracle& o) {
  const auto& tx = f.object(x);
  const auto& ty = f.object(y);
  if (!tx.thimble || !ty.thimble) fail(ErrorCode::InvalidInput, "wrapped complexes are built from thimbles");

  Stage s;
  s.m = spec.turns;
  s.x = x;
  s.y = y;
  // A thimble against itself: bend the wrapped copy off to the left so the
  // two paths meet only at the critical value, apart from the spiral.
  s.wrapped = (x == y) ? planar::wrap_pushed_left(tx.path, spec, f.base) : planar::wrap(tx.path, spec, f.base);
  auto reduced = planar::minimal_position(s.wrapped, ty.path, f.base);
  s.wrapped = reduced.first;
  s.partner = reduced.second;

  auto crossings = planar::transverse_crossings(s.wrapped, s.partner);
  if (!crossings.empty()) {
    unsigned long mult = o.rank_of(tx.left, ty.left);
    for (const auto& c : crossings) s.generators.push_back({c.at, mult, Tag::Ordinary, {}});
  }
  for (const auto& p : planar::shared_punctures(s.wrapped, s.partner))
    s.generators.push_back({f.base.at(p).at, 1, Tag::CriticalU, p});

  for (std::size_t i = 0; i < s.generators.size(); ++i) {
    for (std::size_t j = 0; j < s.generators.size(); ++j) {
      if (i == j) continue;
      const auto& gi = s.generators[i];
      const auto& gj = s.generators[j];
      if (gi.tag == Tag::CriticalU)
        s.forbidden.push_back({i, j, "no strip leaves u: the differential runs toward the critical point"});
      else if (gj.tag == Tag::Ordinary)
        s.forbidden.push_back({i, j, "a strip not ending at u projects to a constant map in the base"});
    }
  }
  return s;
}

void certify(Stage& stage, unsigned long rank) {
  unsigned long n = stage.generator_count();
  if (rank > n || (n - rank) % 2 != 0)
    fail(ErrorCode::Inconsistent, "certificate rank " + std::to_string(rank) + " does not fit " + std::to_string(n) +
                                      " generators at level " + std::to_string(stage.m));
  stage.certificate = rank;
}

Tower assemble_tower(std::vector<Stage> stages, std::optional<rank::Fate> fate) {
  std::sort(stages.begin(), stages.end(), [](const Stage& a, const Stage& b) { return a.m < b.m; });
  Tower t;
  t.stages = std::move(stages);
  bool any_unit = false, all_empty = true;
  bool unit_at_one = false;
  for (const auto& s : t.stages) {
    any_unit = any_unit || s.has_unit();
    all_empty = all_empty && s.generators.empty();
    if (s.m == 1 && s.has_unit()) unit_at_one = true;
  }
  const bool dies = any_unit && fate == rank::Fate::Dies;
  for (std::size_t i = 0; i < t.stages.size(); ++i)
    for (std::size_t j = i + 1; j < t.stages.size(); ++j)
      if (t.stages[i].m < t.stages[j].m)
        t.continuations.push_back({t.stages[i].m, t.stages[j].m, dies && t.stages[i].m >= 1});

  if (any_unit) {
    if (!unit_at_one || !fate) fail(ErrorCode::MissingFate, "the tower has a unit generator but no fate at level 1");
    t.verdict = rank::hw_verdict(*fate);
    if (*fate == rank::Fate::Survives)
      t.notes.push_back("u survives at level 1; stages are reported without a stabilization bound");
    else
      t.notes.push_back("u is exact from level 1 on; continuation keeps its image exact");
  } else if (all_empty) {
    rank::Verdict v;
    v.value = rank::HW::Zero;
    v.trace.push_back({"empty-tower", "every stage has no generators"});
    t.verdict = v;
  }
  return t;
}

}  // namespace lefbench::tower
