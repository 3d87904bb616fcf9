#include "lefbench/rank_calculus.hpp"

#include <algorithm>

#include "lefbench/errors.hpp"

namespace lefbench::rank {

namespace {

std::string hf(const std::string& a, const std::string& b) { return "HF(" + a + ", " + b + ")"; }

}  // namespace

unsigned long triangle_rank(long k, long l, long f) {
  if (k < 0 || l < 0 || f < 0) fail(ErrorCode::InvalidInput, "ranks must be nonnegative");
  if (f > std::min(k, l))
    fail(ErrorCode::ImageTooLarge, "image rank " + std::to_string(f) + " exceeds min(" + std::to_string(k) + ", " +
                                       std::to_string(l) + ")");
  return static_cast<unsigned long>(k + l - 2 * f);
}

RankObject tensor(const RankObject& a, const RankObject& b) {
  RankObject r;
  r.name = a.name + " (x) " + b.name;
  r.provenance = "tensor:" + a.name + "*" + b.name;
  if (a.rank && b.rank) r.rank = *a.rank * *b.rank;
  return r;
}

unsigned long pair_of_pants_image_rank(const oracle::FiberOracle& o, const std::string& a, const std::string& b,
                                       std::string* reason) {
  auto say = [&](std::string text) {
    if (reason) *reason = std::move(text);
  };
  auto self = o.try_rank(b, b);
  if (!self || *self != 2)
    fail(ErrorCode::Undecidable, hf(b, b) + " is not the rank-2 cohomology of a sphere; the product is not decided");
  unsigned long ab = o.rank_of(a, b);
  unsigned long ba = o.rank_of(b, a);
  if (ab * ba == 0) {
    say("a tensor factor vanishes");
    return 0;
  }
  if (o.isotopic(a, b)) {
    say(a + " and " + b + " are isotopic: the product is the cup product on H*(S), onto");
    return 2;
  }
  auto w = o.witnesses(a, b);
  if (!w.empty()) {
    say("the identity of " + b + " would factor through " + hf(a, w.front()) +
        " = 0, so it is missed; the fundamental class is hit by duality");
    return 1;
  }
  fail(ErrorCode::Undecidable, "neither an isotopy nor a witness (" + a + " -> " + b + ") decides the product image");
}

TriangleInstance seidel_twist(const oracle::FiberOracle& o, const std::string& a, const std::string& b) {
  TriangleInstance t;
  t.id = "twist(" + a + "," + b + ")";
  t.kind = TriangleKind::SeidelTwist;
  t.sphere = a;
  RankObject ab{hf(a, b), o.rank_of(a, b), "oracle"};
  RankObject ba{hf(b, a), o.rank_of(b, a), "oracle"};
  t.k = tensor(ab, ba);
  t.l = {hf(b, b), o.rank_of(b, b), "oracle"};
  t.image = pair_of_pants_image_rank(o, a, b);
  t.m = {"HF(" + b + ", tau_" + a + " " + b + ")",
         triangle_rank(static_cast<long>(*t.k.rank), static_cast<long>(*t.l.rank), static_cast<long>(*t.image)),
         "triangle:" + t.id};
  return t;
}

unsigned long seidel_twist_rank(const oracle::FiberOracle& o, const std::string& a, const std::string& b) {
  return *seidel_twist(o, a, b).m.rank;
}

FsHomRanks fs_hom_ranks_from(unsigned long hom_ab) {
  FsHomRanks r;
  r.hom_bb = 1;
  r.hom_ab = hom_ab;
  unsigned long image = hom_ab > 0 ? 1 : 0;
  if (hom_ab == 0) r.warnings.push_back("NonzeroEvViolation: Hom(A,B) = 0 forces a zero evaluation map");
  r.cone.id = "cone(ev)";
  r.cone.kind = TriangleKind::EvaluationCone;
  r.cone.k = {"Hom(B,B)", r.hom_bb, "directed category"};
  RankObject ab{"Hom(A,B)", hom_ab, "fiber"};
  RankObject ba{"Hom(A,B)*", hom_ab, "fiber"};
  r.cone.l = tensor(ab, ba);
  r.cone.image = image;
  r.hom_b1b = triangle_rank(1, static_cast<long>(hom_ab * hom_ab), static_cast<long>(image));
  r.cone.m = {"Hom(B_1,B)", r.hom_b1b, "triangle:cone(ev)"};
  return r;
}

FsHomRanks fs_hom_ranks(const fibration::Catalog& catalog, const fibration::Fibration& main,
                        const std::string& a_thimble, const std::string& b_thimble, const oracle::FiberOracle& o) {
  const auto& ta = main.object(a_thimble);
  const auto& tb = main.object(b_thimble);
  const std::string& la = ta.left;
  const std::string& lb = tb.left;
  unsigned long hom_ab = 0;
  std::string source;
  const fibration::Fibration* fiber = catalog.find_fibration(main.fiber);
  if (fiber && fiber->find_object(la) && fiber->find_object(lb)) {
    auto r = fibration::matching_floer_rank(*fiber, fiber->object(la), fiber->object(lb), o, true);
    if (!r.exact)
      fail(ErrorCode::Undecidable, "rank " + hf(la, lb) + " is only bounded by " + std::to_string(r.value) + " (" +
                                       r.certificate + ")");
    hom_ab = r.value;
    source = "fiber matching rank (" + r.certificate + ")";
  } else {
    hom_ab = o.rank_of(la, lb);
    source = "oracle";
  }
  FsHomRanks out = fs_hom_ranks_from(hom_ab);
  out.hom_ab_source = source;
  return out;
}

std::string_view to_string(Fate fate) { return fate == Fate::Dies ? "dies" : "survives"; }

Fate unit_fate(long rank_total, long rank_quotient) {
  if (rank_total == rank_quotient - 1) return Fate::Dies;
  if (rank_total == rank_quotient + 1) return Fate::Survives;
  fail(ErrorCode::Inconsistent, "rank " + std::to_string(rank_total) + " of the complex with u and rank " +
                                    std::to_string(rank_quotient) + " of the quotient must differ by one");
}

std::string_view to_string(HW value) { return value == HW::Zero ? "0" : "nonzero"; }

Verdict hw_verdict(Fate fate) {
  Verdict v;
  if (fate == Fate::Dies) {
    v.value = HW::Zero;
    v.derived = true;
    v.trace.push_back({"unit-death",
                       "u is a boundary at level 1 and continuation keeps it one at every later level; u represents "
                       "the unit (taken as an axiom), so the unit of HW vanishes and HW = 0"});
  } else {
    v.value = HW::NonZero;
    v.derived = false;
    v.trace.push_back({"unit-survives",
                       "u is a cycle and not a boundary at level 1; HW is flagged nonzero (no stabilization bound is "
                       "claimed)"});
  }
  return v;
}

Verdict module_verdict(const std::string& x, const std::string& y, const Verdict& xx, const Verdict& yy) {
  Verdict v;
  if (xx.value == HW::Zero || yy.value == HW::Zero) {
    const std::string& zero = xx.value == HW::Zero ? x : y;
    v.value = HW::Zero;
    v.derived = true;
    v.trace.push_back({"module-vanishing", "HW(" + x + ", " + y + ") is a module over HW(" + zero + ", " + zero +
                                               ") = 0, hence HW(" + x + ", " + y + ") = 0"});
  } else {
    v.value = HW::NonZero;
    v.derived = false;
    v.trace.push_back({"module-flagged", "HW(" + x + ", " + y + ") is flagged nonzero; the module rule gives no "
                                             "vanishing since both diagonal groups are nonzero"});
  }
  return v;
}

std::string_view to_string(Obstruction value) {
  return value == Obstruction::Obstructed ? "obstructed" : "no conclusion";
}

ObstructionResult closed_lagrangian_obstruction(const std::map<std::string, std::optional<Verdict>>& diagonal) {
  if (diagonal.empty()) fail(ErrorCode::IncompleteBasis, "no thimbles given");
  bool all_zero = true;
  for (const auto& [name, v] : diagonal) {
    if (!v) fail(ErrorCode::IncompleteBasis, "thimble '" + name + "' has no HW verdict");
    if (v->value != HW::Zero) all_zero = false;
  }
  ObstructionResult r;
  if (all_zero) {
    r.value = Obstruction::Obstructed;
    r.trace.push_back({"obstruction",
                       "a closed exact L would have HF(L,L) = H*(L) != 0, yet the spectral sequence computing it starts "
                       "from a page built out of the thimble groups HW, all zero; no closed exact Lagrangian exists"});
  } else {
    r.value = Obstruction::NoConclusion;
    r.trace.push_back({"obstruction", "some diagonal HW is nonzero; the spectral sequence argument gives nothing"});
  }
  return r;
}

}  // namespace lefbench::rank
