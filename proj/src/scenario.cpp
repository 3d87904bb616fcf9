#include "lefbench/scenario.hpp"

#include <fstream>
#include <sstream>

#include "lefbench/errors.hpp"

namespace lefbench::scenario {

namespace {

std::string trim(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

class Reader {
 public:
  Reader(std::string origin, int line) : origin_(std::move(origin)), line_(line) {}

  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ConfigError, origin_ + ":" + std::to_string(line_) + ": " + what);
  }

  long integer(const std::string& s) const {
    try {
      std::size_t used = 0;
      long v = std::stol(s, &used);
      if (used != s.size()) error("not an integer: '" + s + "'");
      return v;
    } catch (const std::logic_error&) {
      error("not an integer: '" + s + "'");
    }
  }

  Rational rational(const std::string& s) const {
    try {
      return parse_rational(s);
    } catch (const Error& e) {
      error(e.detail());
    }
  }

  Integer big(const std::string& s) const { return rational_integer(rational(s), s); }

  Integer rational_integer(const Rational& r, const std::string& s) const {
    if (r.get_den() != 1) error("not an integer: '" + s + "'");
    return r.get_num();
  }

  EndSpec endpoint(const std::string& value) const {
    auto w = words(value);
    if (w.size() == 2 && w[0] == "puncture") return {false, w[1], Rational(0)};
    if (w.size() == 2 && w[0] == "boundary") return {true, {}, rational(w[1])};
    error("endpoint must be 'puncture ID' or 'boundary TURN', got '" + value + "'");
  }

  int line() const { return line_; }

 private:
  std::string origin_;
  int line_;
};

planar::ArcKind parse_kind(const Reader& r, const std::string& s) {
  if (s == "vanishing") return planar::ArcKind::Vanishing;
  if (s == "matching") return planar::ArcKind::Matching;
  if (s == "wrapped") return planar::ArcKind::Wrapped;
  if (s == "free") return planar::ArcKind::Free;
  r.error("unknown arc kind '" + s + "'");
}

enum class Section { None, Scenario, Disc, Arc, Fiber, Fibration, Objects, Oracle, Run };

oracle::Fact parse_fact(const Reader& r, const std::string& body) {
  auto bar = body.find('|');
  if (bar == std::string::npos) r.error("oracle fact without provenance ('| cited: ...' or '| assumed: ...')");
  std::string claim = trim(body.substr(0, bar));
  std::string note = trim(body.substr(bar + 1));
  oracle::Fact f{};
  auto colon = note.find(':');
  std::string kind = trim(note.substr(0, colon));
  if (colon == std::string::npos || (kind != "cited" && kind != "assumed"))
    r.error("provenance must be 'cited: TEXT' or 'assumed: TEXT'");
  f.note.provenance = kind == "cited" ? oracle::Provenance::Cited : oracle::Provenance::Assumed;
  f.note.text = trim(note.substr(colon + 1));
  if (f.note.text.empty()) r.error("provenance note is empty");

  std::string value;
  if (auto eq = claim.find('='); eq != std::string::npos) {
    value = trim(claim.substr(eq + 1));
    claim = trim(claim.substr(0, eq));
  }
  auto w = words(claim);
  if (w.empty()) r.error("empty oracle fact");
  auto need = [&](std::size_t n, bool has_value) {
    if (w.size() != n) r.error("'" + w[0] + "' takes " + std::to_string(n - 1) + " labels");
    if (has_value == value.empty()) r.error(has_value ? "'" + w[0] + "' needs '= VALUE'" : "'" + w[0] + "' takes no value");
  };
  const std::string& k = w[0];
  if (k == "label" || k == "sphere") {
    need(2, false);
    f.kind = k == "label" ? oracle::FactKind::Label : oracle::FactKind::Sphere;
    f.first = w[1];
  } else if (k == "rank") {
    need(3, true);
    f.kind = oracle::FactKind::Rank;
    long n = r.integer(value);
    if (n < 0) r.error("ranks are nonnegative");
    f.rank = static_cast<unsigned long>(n);
  } else if (k == "disjoint" || k == "isotopic") {
    need(3, false);
    f.kind = k == "disjoint" ? oracle::FactKind::Disjoint : oracle::FactKind::Isotopic;
  } else if (k == "not_isomorphic") {
    need(4, false);
    f.kind = oracle::FactKind::NotIsomorphic;
    f.witness = w[3];
  } else if (k == "parity") {
    need(3, true);
    f.kind = oracle::FactKind::ParityFact;
    if (value == "same") f.parity = oracle::Parity::AllSame;
    else if (value == "mixed") f.parity = oracle::Parity::Mixed;
    else r.error("parity must be 'same' or 'mixed'");
  } else {
    r.error("unknown oracle fact '" + k + "'");
  }
  if (w.size() >= 3) {
    f.first = w[1];
    f.second = w[2];
  }
  return f;
}

std::string fact_text(const oracle::Fact& f) {
  std::string s;
  switch (f.kind) {
    case oracle::FactKind::Label: s = "label " + f.first; break;
    case oracle::FactKind::Sphere: s = "sphere " + f.first; break;
    case oracle::FactKind::Rank: s = "rank " + f.first + " " + f.second + " = " + std::to_string(f.rank); break;
    case oracle::FactKind::Disjoint: s = "disjoint " + f.first + " " + f.second; break;
    case oracle::FactKind::Isotopic: s = "isotopic " + f.first + " " + f.second; break;
    case oracle::FactKind::NotIsomorphic: s = "not_isomorphic " + f.first + " " + f.second + " " + f.witness; break;
    case oracle::FactKind::ParityFact:
      s = "parity " + f.first + " " + f.second + " = " + (f.parity == oracle::Parity::AllSame ? "same" : "mixed");
      break;
  }
  return s;
}

}  // namespace

Config parse(const std::string& text, const std::string& origin) {
  Config c;
  Section section = Section::None;
  std::map<std::string, std::vector<ObjectSpec>> objects;
  std::vector<std::pair<std::string, int>> object_sections;
  std::string current;  // name of the object the section declares
  bool seen_run = false;

  std::istringstream in(text);
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    Reader r(origin, lineno);
    std::string line = raw;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') r.error("unterminated section header");
      auto w = words(line.substr(1, line.size() - 2));
      if (w.empty()) r.error("empty section header");
      const std::string& kind = w[0];
      auto named = [&](Section s) {
        if (w.size() != 2) r.error("section '" + kind + "' needs exactly one name");
        section = s;
        current = w[1];
      };
      if (kind == "scenario" || kind == "oracle" || kind == "run") {
        if (w.size() != 1) r.error("section '" + kind + "' takes no name");
        section = kind == "scenario" ? Section::Scenario : kind == "oracle" ? Section::Oracle : Section::Run;
        if (section == Section::Run) {
          if (seen_run) r.error("duplicate [run] section");
          seen_run = true;
          c.run.emplace();
        }
      } else if (kind == "disc") {
        named(Section::Disc);
        c.discs.push_back({current, 16, {}, {lineno}});
      } else if (kind == "arc") {
        named(Section::Arc);
        ArcSpec a;
        a.name = current;
        a.line = {lineno};
        c.arcs.push_back(a);
      } else if (kind == "fiber") {
        named(Section::Fiber);
        FiberSpec f;
        f.name = current;
        f.line = {lineno};
        c.fibers.push_back(f);
      } else if (kind == "fibration") {
        named(Section::Fibration);
        FibrationSpec f;
        f.name = current;
        f.line = {lineno};
        c.fibrations.push_back(f);
      } else if (kind == "objects") {
        named(Section::Objects);
        object_sections.emplace_back(current, lineno);
      } else {
        r.error("unknown section '" + kind + "'");
      }
      continue;
    }

    if (section == Section::Oracle) {
      c.oracle.push_back({parse_fact(r, line), {lineno}});
      continue;
    }

    auto eq = line.find('=');
    if (eq == std::string::npos) r.error("expected 'key = value'");
    auto key = words(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (key.empty()) r.error("missing key");
    auto vals = words(value);
    auto single = [&](std::size_t n) {
      if (key.size() != n) r.error("malformed key '" + trim(line.substr(0, eq)) + "'");
    };

    switch (section) {
      case Section::None: r.error("key outside of any section");
      case Section::Scenario:
        single(1);
        if (key[0] == "name") c.name = value;
        else if (key[0] == "description") c.description = value;
        else r.error("unknown scenario key '" + key[0] + "'");
        break;
      case Section::Disc: {
        auto& d = c.discs.back();
        if (key[0] == "resolution") {
          single(1);
          d.resolution = static_cast<int>(r.integer(value));
        } else if (key[0] == "puncture") {
          single(2);
          if (vals.size() != 2) r.error("puncture needs two coordinates");
          d.punctures.push_back({key[1], {r.rational(vals[0]), r.rational(vals[1])}});
        } else {
          r.error("unknown disc key '" + key[0] + "'");
        }
        break;
      }
      case Section::Arc: {
        auto& a = c.arcs.back();
        single(1);
        if (key[0] == "disc") a.disc = value;
        else if (key[0] == "kind") a.kind = parse_kind(r, value);
        else if (key[0] == "start") a.start = r.endpoint(value);
        else if (key[0] == "end") a.end = r.endpoint(value);
        else if (key[0] == "via") {
          std::stringstream points(value);
          for (std::string item; std::getline(points, item, ';');) {
            auto xy = words(item);
            if (xy.size() != 2) r.error("via points are 'X Y' separated by ';'");
            a.via.push_back({r.rational(xy[0]), r.rational(xy[1])});
          }
        } else {
          r.error("unknown arc key '" + key[0] + "'");
        }
        break;
      }
      case Section::Fiber: {
        auto& f = c.fibers.back();
        if (key[0] == "middle") {
          single(1);
          f.middle = static_cast<int>(r.integer(value));
        } else if (key[0] == "bound") {
          single(1);
          f.bound = static_cast<int>(r.integer(value));
        } else if (key[0] == "degree") {
          single(2);
          if (vals.empty()) r.error("degree needs a free rank");
          homology::Group g;
          g.free = r.integer(vals[0]);
          for (std::size_t i = 1; i < vals.size(); ++i) g.torsion.push_back(r.big(vals[i]));
          f.degrees[static_cast<int>(r.integer(key[1]))] = g;
        } else if (key[0] == "class") {
          single(2);
          homology::Vector v;
          for (const auto& x : vals) v.push_back(r.big(x));
          f.classes[key[1]] = v;
        } else {
          r.error("unknown fiber key '" + key[0] + "'");
        }
        break;
      }
      case Section::Fibration: {
        auto& f = c.fibrations.back();
        if (key[0] == "disc") {
          single(1);
          f.disc = value;
        } else if (key[0] == "fiber") {
          single(1);
          f.fiber = value;
        } else if (key[0] == "reference_angle") {
          single(1);
          f.reference_angle = r.rational(value);
        } else if (key[0] == "crit") {
          single(2);
          if (vals.size() != 2 && vals.size() != 3) r.error("crit takes 'ARC LABEL [SIGN]'");
          CritSpec cs{key[1], vals[0], vals[1], 1, {lineno}};
          if (vals.size() == 3) {
            long s = r.integer(vals[2]);
            if (s != 1 && s != -1) r.error("sign must be 1 or -1");
            cs.sign = static_cast<int>(s);
          }
          f.crits.push_back(cs);
        } else {
          r.error("unknown fibration key '" + key[0] + "'");
        }
        break;
      }
      case Section::Objects: {
        single(2);
        ObjectSpec o;
        o.name = key[1];
        o.line = {lineno};
        if (key[0] == "matching") {
          if (vals.size() == 4 && vals[3] == "framed") o.framed = true;
          else if (vals.size() != 3) r.error("matching takes 'ARC LEFT RIGHT [framed]'");
          o.arc = vals[0];
          o.left = vals[1];
          o.right = vals[2];
        } else if (key[0] == "thimble") {
          if (vals.size() != 2) r.error("thimble takes 'ARC LABEL'");
          o.thimble = true;
          o.arc = vals[0];
          o.left = o.right = vals[1];
        } else {
          r.error("unknown object kind '" + key[0] + "'");
        }
        objects[current].push_back(o);
        break;
      }
      case Section::Run: {
        auto& run = *c.run;
        single(1);
        if (key[0] == "main") run.main = value;
        else if (key[0] == "thimbles") run.thimbles = vals;
        else if (key[0] == "levels") run.levels = r.integer(value);
        else if (key[0] == "delta") run.delta = r.rational(value);
        else r.error("unknown run key '" + key[0] + "'");
        break;
      }
      case Section::Oracle: break;
    }
  }

  for (const auto& [name, line] : object_sections) {
    FibrationSpec* target = nullptr;
    for (auto& f : c.fibrations)
      if (f.name == name) target = &f;
    if (!target) Reader(origin, line).error("objects for unknown fibration '" + name + "'");
    auto it = objects.find(name);
    if (it == objects.end()) continue;
    target->objects.insert(target->objects.end(), it->second.begin(), it->second.end());
    objects.erase(it);
  }
  return c;
}

Config load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::ConfigError, "cannot read '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path);
}

std::string emit(const Config& c) {
  std::ostringstream out;
  auto end_text = [](const EndSpec& e) {
    return e.boundary ? "boundary " + to_string(e.turn) : "puncture " + e.puncture;
  };
  out << "[scenario]\n";
  if (!c.name.empty()) out << "name = " << c.name << "\n";
  if (!c.description.empty()) out << "description = " << c.description << "\n";
  for (const auto& d : c.discs) {
    out << "\n[disc " << d.name << "]\n";
    out << "resolution = " << d.resolution << "\n";
    for (const auto& p : d.punctures) out << "puncture " << p.id << " = " << to_string(p.at.x) << " " << to_string(p.at.y) << "\n";
  }
  for (const auto& a : c.arcs) {
    out << "\n[arc " << a.name << "]\n";
    out << "disc = " << a.disc << "\n";
    out << "kind = " << planar::to_string(a.kind) << "\n";
    out << "start = " << end_text(a.start) << "\n";
    if (!a.via.empty()) {
      out << "via = ";
      for (std::size_t i = 0; i < a.via.size(); ++i)
        out << (i ? "; " : "") << to_string(a.via[i].x) << " " << to_string(a.via[i].y);
      out << "\n";
    }
    out << "end = " << end_text(a.end) << "\n";
  }
  for (const auto& f : c.fibers) {
    out << "\n[fiber " << f.name << "]\n";
    out << "middle = " << f.middle << "\n";
    out << "bound = " << f.bound << "\n";
    for (const auto& [k, g] : f.degrees) {
      out << "degree " << k << " = " << g.free;
      for (const auto& t : g.torsion) out << " " << t.get_str();
      out << "\n";
    }
    for (const auto& [label, v] : f.classes) {
      out << "class " << label << " =";
      for (const auto& x : v) out << " " << x.get_str();
      out << "\n";
    }
  }
  for (const auto& f : c.fibrations) {
    out << "\n[fibration " << f.name << "]\n";
    out << "disc = " << f.disc << "\n";
    out << "fiber = " << f.fiber << "\n";
    out << "reference_angle = " << to_string(f.reference_angle) << "\n";
    for (const auto& cs : f.crits) {
      out << "crit " << cs.puncture << " = " << cs.arc << " " << cs.label;
      if (cs.sign != 1) out << " " << cs.sign;
      out << "\n";
    }
    if (f.objects.empty()) continue;
    out << "\n[objects " << f.name << "]\n";
    for (const auto& o : f.objects) {
      if (o.thimble) {
        out << "thimble " << o.name << " = " << o.arc << " " << o.left << "\n";
      } else {
        out << "matching " << o.name << " = " << o.arc << " " << o.left << " " << o.right;
        if (o.framed) out << " framed";
        out << "\n";
      }
    }
  }
  if (!c.oracle.empty()) {
    out << "\n[oracle]\n";
    for (const auto& l : c.oracle)
      out << fact_text(l.fact) << " | " << oracle::to_string(l.fact.note.provenance) << ": " << l.fact.note.text << "\n";
  }
  if (c.run) {
    out << "\n[run]\n";
    if (!c.run->main.empty()) out << "main = " << c.run->main << "\n";
    if (!c.run->thimbles.empty()) {
      out << "thimbles =";
      for (const auto& t : c.run->thimbles) out << " " << t;
      out << "\n";
    }
    out << "levels = " << c.run->levels << "\n";
    out << "delta = " << to_string(c.run->delta) << "\n";
  }
  return out.str();
}

namespace {

[[noreturn]] void rethrow_at(const std::string& origin, int line, const Error& e) {
  throw Error(e.code(), origin + ":" + std::to_string(line) + ": " + e.detail());
}

}  // namespace

Model build(const Config& c, const std::string& origin, std::optional<int> resolution_override) {
  Model m;
  m.config = c;
  m.origin = origin;

  for (const auto& d : c.discs) {
    try {
      m.discs.emplace(d.name, planar::DiscModel(d.punctures, resolution_override.value_or(d.resolution)));
    } catch (const Error& e) {
      rethrow_at(origin, d.line.value, e);
    }
  }

  for (const auto& a : c.arcs) {
    Reader r(origin, a.line.value);
    auto disc = m.discs.find(a.disc);
    if (disc == m.discs.end()) r.error("arc '" + a.name + "' names unknown disc '" + a.disc + "'");
    auto realize = [&](const EndSpec& e) -> std::pair<planar::Endpoint, Point> {
      if (e.boundary) {
        Rational t = planar::normalize_turn(e.turn);
        return {planar::BoundaryEnd{t}, planar::circle_point(t)};
      }
      const auto* p = disc->second.find(e.puncture);
      if (!p) r.error("arc '" + a.name + "' ends at unknown puncture '" + e.puncture + "'");
      return {planar::PunctureEnd{e.puncture}, p->at};
    };
    if (a.start.puncture.empty() && !a.start.boundary) r.error("arc '" + a.name + "' has no start");
    if (a.end.puncture.empty() && !a.end.boundary) r.error("arc '" + a.name + "' has no end");
    planar::PlanarArc arc;
    arc.kind = a.kind;
    auto [s, sp] = realize(a.start);
    auto [e, ep] = realize(a.end);
    arc.start = s;
    arc.end = e;
    arc.vertices.push_back(sp);
    arc.vertices.insert(arc.vertices.end(), a.via.begin(), a.via.end());
    arc.vertices.push_back(ep);
    if (!m.arcs.emplace(a.name, arc).second) r.error("duplicate arc '" + a.name + "'");
  }

  for (const auto& f : c.fibers) {
    Reader r(origin, f.line.value);
    fibration::AbstractFiber af;
    af.name = f.name;
    af.middle = f.middle;
    af.homology.bound = f.bound;
    for (const auto& [k, g] : f.degrees) {
      if (k < 0 || k > f.bound) r.error("degree " + std::to_string(k) + " is outside 0.." + std::to_string(f.bound));
      if (!g.trivial()) af.homology.degrees[k] = g;
    }
    if (f.middle < 0 || f.middle > f.bound) r.error("middle degree is outside the stored range");
    long gens = af.homology.at(f.middle).generator_count();
    for (const auto& [label, v] : f.classes)
      if (static_cast<long>(v.size()) != gens)
        r.error("class '" + label + "' has " + std::to_string(v.size()) + " coordinates, H_" +
                std::to_string(f.middle) + " has " + std::to_string(gens) + " generators");
    af.classes = f.classes;
    try {
      m.catalog.add_fiber(af);
    } catch (const Error& e) {
      rethrow_at(origin, f.line.value, e);
    }
  }

  for (const auto& f : c.fibrations) {
    Reader r(origin, f.line.value);
    auto disc = m.discs.find(f.disc);
    if (disc == m.discs.end()) r.error("fibration '" + f.name + "' names unknown disc '" + f.disc + "'");
    auto arc_for = [&](const std::string& name, int line) -> const planar::PlanarArc& {
      auto it = m.arcs.find(name);
      if (it == m.arcs.end()) Reader(origin, line).error("unknown arc '" + name + "'");
      const ArcSpec* spec = nullptr;
      for (const auto& a : c.arcs)
        if (a.name == name) spec = &a;
      if (spec->disc != f.disc)
        Reader(origin, line).error("arc '" + name + "' lives on disc '" + spec->disc + "', not '" + f.disc + "'");
      return it->second;
    };
    fibration::Fibration fib{f.name, disc->second, f.fiber, f.reference_angle, {}, {}};
    for (const auto& cs : f.crits) fib.crits.push_back({cs.puncture, arc_for(cs.arc, cs.line.value), cs.label, cs.sign});
    for (const auto& o : f.objects)
      fib.objects.push_back({o.name, arc_for(o.arc, o.line.value), o.left, o.right, o.thimble, o.framed});
    try {
      m.catalog.add_fibration(std::move(fib));
    } catch (const Error& e) {
      rethrow_at(origin, f.line.value, e);
    }
  }
  for (const auto& f : c.fibrations)
    if (!m.catalog.has_fiber(f.fiber)) Reader(origin, f.line.value).error("unknown fiber '" + f.fiber + "'");

  for (const auto& l : c.oracle) {
    try {
      m.oracle.add(l.fact);
    } catch (const Error& e) {
      rethrow_at(origin, l.line.value, e);
    }
  }

  if (c.run) {
    auto fail_run = [&](const std::string& what) { fail(ErrorCode::ConfigError, origin + ": [run]: " + what); };
    const auto* main = m.catalog.find_fibration(c.run->main);
    if (!main) fail_run("main fibration '" + c.run->main + "' is not declared");
    if (c.run->thimbles.size() != 2) fail_run("thimbles takes exactly two names");
    for (const auto& t : c.run->thimbles) {
      const auto* o = main->find_object(t);
      if (!o || !o->thimble) fail_run("'" + t + "' is not a thimble of '" + main->name + "'");
    }
    if (c.run->thimbles[0] == c.run->thimbles[1]) fail_run("the two thimbles must differ");
    if (c.run->levels < 1) fail_run("levels must be at least 1");
    if (c.run->delta <= 0 || c.run->delta >= 1) fail_run("delta must lie in (0, 1)");
  }
  return m;
}

}  // namespace lefbench::scenario
