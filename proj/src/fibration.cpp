#include "lefbench/fibration.hpp"

#include <algorithm>
#include <set>

#include "lefbench/errors.hpp"

namespace lefbench::fibration {

using homology::Vector;
using planar::puncture_id;

const FiberObject* Fibration::find_object(const std::string& name) const {
  for (const auto& o : objects)
    if (o.name == name) return &o;
  return nullptr;
}

const FiberObject& Fibration::object(const std::string& name) const {
  const FiberObject* o = find_object(name);
  if (!o) fail(ErrorCode::InvalidInput, "fibration '" + this->name + "' has no object '" + name + "'");
  return *o;
}

std::optional<std::size_t> Fibration::crit_at(const std::string& puncture) const {
  for (std::size_t i = 0; i < crits.size(); ++i)
    if (crits[i].puncture == puncture) return i;
  return std::nullopt;
}

void Catalog::add_fiber(AbstractFiber fiber) {
  if (has_fiber(fiber.name)) fail(ErrorCode::InvalidInput, "duplicate fiber name '" + fiber.name + "'");
  for (const auto& [k, g] : fiber.homology.degrees) homology::validate_group(g);
  fibers_.push_back(std::move(fiber));
}

void Catalog::add_fibration(Fibration fibration) {
  if (has_fiber(fibration.name)) fail(ErrorCode::InvalidInput, "duplicate fiber name '" + fibration.name + "'");
  fibrations_.push_back(std::move(fibration));
}

bool Catalog::has_fiber(const std::string& name) const {
  return abstract_fiber(name) != nullptr || find_fibration(name) != nullptr;
}

const AbstractFiber* Catalog::abstract_fiber(const std::string& name) const {
  for (const auto& f : fibers_)
    if (f.name == name) return &f;
  return nullptr;
}

const Fibration* Catalog::find_fibration(const std::string& name) const {
  for (const auto& f : fibrations_)
    if (f.name == name) return &f;
  return nullptr;
}

const Fibration& Catalog::fibration(const std::string& name) const {
  const Fibration* f = find_fibration(name);
  if (!f) fail(ErrorCode::InvalidInput, "unknown fibration '" + name + "'");
  return *f;
}

namespace {

std::vector<Vector> attaching_vectors(const Fibration& f, const FiberModel& fiber) {
  std::vector<Vector> out;
  for (const auto& c : f.crits) {
    auto it = fiber.classes.find(c.label);
    if (it == fiber.classes.end()) {
      std::string why = "no homology class for cycle label '" + c.label + "' of critical value '" + c.puncture + "'";
      if (auto m = fiber.missing.find(c.label); m != fiber.missing.end()) why += " (" + m->second + ")";
      fail(ErrorCode::MissingClass, why);
    }
    Vector v = it->second;
    for (auto& x : v) x *= c.sign;
    out.push_back(std::move(v));
  }
  return out;
}

TotalHomology total_from(const Fibration& f, const FiberModel& fiber) {
  auto attaching = attaching_vectors(f, fiber);
  auto att = homology::attach_cells(fiber.homology, fiber.middle, attaching);
  TotalHomology out;
  out.table = att.total;
  out.euler = att.total.euler_characteristic();
  out.cell_degree = att.cell_degree;
  out.cell_cycles = att.cell_cycles;

  Integer expected = fiber.homology.euler_characteristic();
  Integer k(static_cast<long>(f.crits.size()));
  expected += (att.cell_degree % 2 == 0 ? k : Integer(-k));
  if (expected != out.euler)
    fail(ErrorCode::Inconsistent, "Euler characteristic of '" + f.name + "' is " + out.euler.get_str() +
                                      " but the cell count predicts " + expected.get_str());
  return out;
}

Vector coordinates_from(const FiberModel& fiber, const TotalHomology& total, const Vector& cells) {
  auto solved = homology::solve_in_lattice(total.cell_cycles, cells);
  if (!solved.success) fail(ErrorCode::InvalidInput, "cell chain is not a cycle");
  const auto& upper = fiber.homology.at(fiber.middle + 1);
  Vector out(static_cast<std::size_t>(upper.free), Integer(0));
  out.insert(out.end(), solved.coordinates.begin(), solved.coordinates.end());
  out.resize(out.size() + upper.torsion.size(), Integer(0));
  return out;
}

std::pair<std::size_t, std::size_t> end_crits(const Fibration& f, const FiberObject& object) {
  if (object.thimble) fail(ErrorCode::InvalidInput, "'" + object.name + "' is a thimble, not a matching cycle");
  auto s = puncture_id(object.path.start);
  auto e = puncture_id(object.path.end);
  if (!s || !e) fail(ErrorCode::InvalidInput, "matching object '" + object.name + "' needs two puncture ends");
  auto i = f.crit_at(*s);
  auto j = f.crit_at(*e);
  if (!i || !j)
    fail(ErrorCode::InvalidInput, "matching object '" + object.name + "' ends at a puncture without critical value");
  return {*i, *j};
}

}  // namespace

FiberModel Catalog::fiber_model(const std::string& name) const {
  std::vector<std::string> stack;
  return fiber_model(name, stack);
}

FiberModel Catalog::fiber_model(const std::string& name, std::vector<std::string>& stack) const {
  if (const AbstractFiber* a = abstract_fiber(name)) return {a->homology, a->middle, a->classes, {}};
  const Fibration* f = find_fibration(name);
  if (!f) fail(ErrorCode::InvalidInput, "unknown fiber '" + name + "'");
  if (std::find(stack.begin(), stack.end(), name) != stack.end())
    fail(ErrorCode::InvalidInput, "fibration '" + name + "' is its own fiber");
  stack.push_back(name);
  FiberModel inner = fiber_model(f->fiber, stack);
  stack.pop_back();

  TotalHomology total = total_from(*f, inner);
  FiberModel out;
  out.homology = total.table;
  out.middle = total.cell_degree;
  auto attaching = attaching_vectors(*f, inner);
  for (const auto& o : f->objects) {
    if (o.thimble) continue;
    try {
      auto [i, j] = end_crits(*f, o);
      out.classes[o.name] = coordinates_from(inner, total, matching_cells(attaching, i, j));
    } catch (const Error& e) {
      out.missing[o.name] = e.what();
    }
  }
  return out;
}

TotalHomology total_space_homology(const Catalog& catalog, const Fibration& f) {
  std::vector<std::string> stack{f.name};
  return total_from(f, catalog.fiber_model(f.fiber, stack));
}

Vector matching_cells(const std::vector<Vector>& attaching, std::size_t i, std::size_t j) {
  Vector out(attaching.size(), Integer(0));
  if (i == j) return out;
  const Vector& a = attaching.at(i);
  const Vector& b = attaching.at(j);
  Vector neg = b;
  for (auto& x : neg) x = -x;
  out[i] = 1;
  if (a == b) {
    out[j] = -1;
  } else if (a == neg) {
    out[j] = 1;
  } else {
    fail(ErrorCode::UnresolvedSign, "vanishing cycles at the two ends carry classes that are neither equal nor opposite");
  }
  return out;
}

Vector matching_cycle_class(const Catalog& catalog, const Fibration& f, const FiberObject& object) {
  auto [i, j] = end_crits(f, object);
  return matching_cells(attaching_vectors(f, catalog.fiber_model(f.fiber)), i, j);
}

Vector total_space_coordinates(const Catalog& catalog, const Fibration& f, const Vector& cells) {
  FiberModel fiber = catalog.fiber_model(f.fiber);
  return coordinates_from(fiber, total_from(f, fiber), cells);
}

ValidationReport validate(const Fibration& f, const Catalog& catalog, const oracle::FiberOracle* oracle) {
  ValidationReport r;
  auto violation = [&](std::string text) { r.violations.push_back(std::move(text)); };
  const auto& disc = f.base;

  if (!catalog.has_fiber(f.fiber)) violation("fiber '" + f.fiber + "' is not declared");

  std::map<std::string, std::string> path_end_owner;
  std::set<std::string> seen;
  for (const auto& c : f.crits) {
    const std::string who = "critical value '" + c.puncture + "'";
    if (!disc.find(c.puncture)) violation(who + " is not a puncture of the base");
    if (!seen.insert(c.puncture).second) violation("two critical points in one fiber: '" + c.puncture + "' is listed twice");
    if (auto bad = planar::arc_violation(c.path, disc)) violation("vanishing path of " + who + ": " + *bad);
    if (c.path.kind != planar::ArcKind::Vanishing) violation("path of " + who + " is not a vanishing path");
    std::optional<std::string> end = puncture_id(c.path.start);
    if (!end) end = puncture_id(c.path.end);
    if (end) {
      if (*end != c.puncture) violation("vanishing path of " + who + " ends at puncture '" + *end + "'");
      auto [it, fresh] = path_end_owner.try_emplace(*end, c.puncture);
      if (!fresh)
        violation("two critical points in one fiber: paths of '" + it->second + "' and '" + c.puncture +
                  "' both end at '" + *end + "'");
    }
    if (c.sign != 1 && c.sign != -1) violation("sign of " + who + " must be +1 or -1");
    if (oracle && !oracle->declared(c.label)) violation("cycle label '" + c.label + "' is not declared in the oracle");
  }
  for (const auto& p : disc.punctures())
    if (!seen.count(p.id)) violation("puncture '" + p.id + "' carries no critical value");

  for (std::size_t i = 0; i < f.crits.size(); ++i)
    for (std::size_t j = i + 1; j < f.crits.size(); ++j) {
      const auto& a = f.crits[i];
      const auto& b = f.crits[j];
      try {
        auto profile = planar::reduced_profile(a.path, b.path, disc);
        if (profile.crossing_count() > 0)
          violation("vanishing paths of '" + a.puncture + "' and '" + b.puncture + "' cross");
        if (!profile.shared_punctures.empty())
          violation("vanishing paths of '" + a.puncture + "' and '" + b.puncture + "' share a puncture");
      } catch (const Error& e) {
        violation("vanishing paths of '" + a.puncture + "' and '" + b.puncture + "': " + e.what());
      }
    }

  std::set<std::string> names;
  for (const auto& o : f.objects) {
    const std::string who = "object '" + o.name + "'";
    if (!names.insert(o.name).second) violation(who + " is declared twice");
    if (auto bad = planar::arc_violation(o.path, disc)) violation(who + ": " + *bad);
    if (oracle) {
      for (const auto& l : {o.left, o.right})
        if (!oracle->declared(l)) violation(who + ": cycle label '" + l + "' is not declared in the oracle");
    }
    if (o.thimble) {
      if (o.path.kind != planar::ArcKind::Vanishing) violation(who + ": a thimble needs a vanishing path");
      auto end = puncture_id(o.path.start);
      if (!end) end = puncture_id(o.path.end);
      if (end && !f.crit_at(*end)) violation(who + ": thimble ends at a puncture without critical value");
    } else {
      if (o.path.kind != planar::ArcKind::Matching) violation(who + ": a matching cycle needs a matching path");
      for (const auto* e : {&o.path.start, &o.path.end})
        if (auto id = puncture_id(*e); id && !f.crit_at(*id))
          violation(who + ": matching path ends at a puncture without critical value");
      if (oracle && oracle->declared(o.left) && oracle->declared(o.right) && !oracle->isotopic(o.left, o.right))
        violation(who + ": end cycles '" + o.left + "' and '" + o.right + "' are not declared isotopic");
    }
  }

  r.notes.push_back("corners of the total space are smoothed; the combinatorial data is unaffected");
  return r;
}

RankResult matching_floer_rank(const Fibration& f, const FiberObject& x, const FiberObject& y,
                               const oracle::FiberOracle& o, bool demand_exact) {
  auto profile = planar::reduced_profile(x.path, y.path, f.base);
  RankResult r;
  r.interior_crossings = profile.crossing_count();
  r.shared_endpoints = profile.shared_punctures.size();
  unsigned long fiber_rank = r.interior_crossings == 0 ? 0 : o.rank_of(x.left, y.left);
  r.generators = fiber_rank * r.interior_crossings + r.shared_endpoints;

  if (r.generators == 0) {
    r.exact = true;
    r.certificate = "no generators";
  } else if (r.interior_crossings == 1 && r.shared_endpoints == 0) {
    r.exact = true;
    r.certificate = "single crossing: fiber rank HF(" + x.left + ", " + y.left + ")";
  } else {
    auto parity = (o.declared(x.name) && o.declared(y.name)) ? o.parity(x.name, y.name) : std::nullopt;
    if (parity == oracle::Parity::AllSame) {
      r.exact = true;
      r.certificate = "all generators of (" + x.name + ", " + y.name + ") share one parity; the differential vanishes";
    } else if (demand_exact && !parity) {
      fail(ErrorCode::MissingParity, "no parity declared for (" + x.name + ", " + y.name + ")");
    } else {
      r.certificate = parity ? "mixed parity: generator count is only a bound" : "no parity: generator count is only a bound";
    }
  }
  r.value = r.generators;
  return r;
}

}  // namespace lefbench::fibration
