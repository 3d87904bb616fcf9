#include "support.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <set>

#include "lefbench/errors.hpp"

#ifndef LEFBENCH_SCENARIO_DIR
#define LEFBENCH_SCENARIO_DIR "scenarios"
#endif

namespace support {

namespace planar = lefbench::planar;
namespace scenario = lefbench::scenario;
namespace tower = lefbench::tower;
namespace workbench = lefbench::workbench;

std::string scenario_path(const std::string& file) { return std::string(LEFBENCH_SCENARIO_DIR) + "/" + file; }

scenario::Model load_scenario(const std::string& file, std::optional<int> resolution) {
  std::string path = scenario_path(file);
  return scenario::build(scenario::load(path), path, resolution);
}

std::string scenario_text(const std::string& file) {
  std::ifstream in(scenario_path(file));
  if (!in) throw std::runtime_error("cannot read " + file);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string replaced(std::string text, const std::string& from, const std::string& to) {
  std::size_t at = text.find(from);
  if (at == std::string::npos) throw std::logic_error("fixture text not found: " + from);
  for (; at != std::string::npos; at = text.find(from, at + to.size())) text.replace(at, from.size(), to);
  return text;
}

scenario::Model model_from_text(const std::string& text) { return scenario::build(scenario::parse(text)); }

namespace {

Rational cr(const Point& a, const Point& b) { return a.x * b.y - a.y * b.x; }

// All intersection points of segments [p0,p1] and [q0,q1].
void segment_meet(const Point& p0, const Point& p1, const Point& q0, const Point& q1, std::vector<Point>& out) {
  Point r{p1.x - p0.x, p1.y - p0.y};
  Point s{q1.x - q0.x, q1.y - q0.y};
  Point qp{q0.x - p0.x, q0.y - p0.y};
  Rational den = cr(r, s);
  if (den != 0) {
    Rational t = cr(qp, s) / den;
    Rational u = cr(qp, r) / den;
    if (t >= 0 && t <= 1 && u >= 0 && u <= 1) out.push_back({p0.x + t * r.x, p0.y + t * r.y});
    return;
  }
  if (cr(qp, r) != 0) return;  // parallel, not collinear
  // collinear: record the overlap ends that are segment endpoints
  auto within = [](const Point& a, const Point& b, const Point& x) {
    return std::min(a.x, b.x) <= x.x && x.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= x.y &&
           x.y <= std::max(a.y, b.y);
  };
  for (const Point* x : {&q0, &q1})
    if (within(p0, p1, *x)) out.push_back(*x);
  for (const Point* x : {&p0, &p1})
    if (within(q0, q1, *x)) out.push_back(*x);
}

}  // namespace

std::size_t sweep_crossings(const planar::PlanarArc& a, const planar::PlanarArc& b) {
  std::vector<Point> shared;
  for (const auto* ea : {&a.start, &a.end})
    for (const auto* eb : {&b.start, &b.end}) {
      auto ia = planar::puncture_id(*ea);
      auto ib = planar::puncture_id(*eb);
      if (ia && ib && *ia == *ib) shared.push_back(ea == &a.start ? a.vertices.front() : a.vertices.back());
    }
  std::vector<Point> hits;
  for (std::size_t i = 0; i + 1 < a.vertices.size(); ++i)
    for (std::size_t j = 0; j + 1 < b.vertices.size(); ++j)
      segment_meet(a.vertices[i], a.vertices[i + 1], b.vertices[j], b.vertices[j + 1], hits);
  std::set<std::pair<Rational, Rational>> distinct;
  for (const auto& p : hits)
    if (std::find(shared.begin(), shared.end(), p) == shared.end()) distinct.insert({p.x, p.y});
  return distinct.size();
}

int f2_rank(std::vector<Bits> rows) {
  int rank = 0;
  for (int bit = 0; bit < 32; ++bit) {
    Bits mask = Bits(1) << bit;
    auto pivot = std::find_if(rows.begin() + rank, rows.end(), [&](Bits r) { return r & mask; });
    if (pivot == rows.end()) continue;
    std::iter_swap(rows.begin() + rank, pivot);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (static_cast<int>(i) != rank && (rows[i] & mask)) rows[i] ^= rows[rank];
    ++rank;
  }
  return rank;
}

Bits f2_apply(const F2Matrix& m, Bits v) {
  Bits out = 0;
  for (std::size_t i = 0; i < m.size(); ++i)
    if (v & (Bits(1) << i)) out ^= m[i];
  return out;
}

std::vector<Bits> f2_kernel(const F2Matrix& m, int n) {
  std::vector<Bits> out;
  for (Bits v = 1; v < (Bits(1) << n); ++v)
    if (f2_apply(m, v) == 0) out.push_back(v);
  return out;  // spanning, not a basis; ranks are taken afterwards
}

namespace {

F2Matrix random_invertible(std::mt19937_64& rng, int n) {
  for (;;) {
    F2Matrix p(n);
    for (auto& row : p) row = static_cast<Bits>(rng()) & ((Bits(1) << n) - 1);
    if (f2_rank(p) == n) return p;
  }
}

F2Matrix compose(const F2Matrix& second, const F2Matrix& first) {
  F2Matrix out(first.size());
  for (std::size_t i = 0; i < first.size(); ++i) out[i] = f2_apply(second, first[i]);
  return out;
}

F2Matrix inverse(const F2Matrix& p, int n) {
  F2Matrix out(n);
  for (int i = 0; i < n; ++i)
    for (Bits v = 0; v < (Bits(1) << n); ++v)
      if (f2_apply(p, v) == (Bits(1) << i)) out[i] = v;
  // out maps e_i to the preimage of e_i; as a row map this is p^{-1}
  return out;
}

F2Matrix random_differential(std::mt19937_64& rng, int n) {
  if (n == 0) return {};
  int r = std::uniform_int_distribution<int>(0, n / 2)(rng);
  F2Matrix nil(n, 0);
  for (int i = 0; i < r; ++i) nil[r + i] = Bits(1) << i;  // e_{r+i} -> e_i
  F2Matrix p = random_invertible(rng, n);
  return compose(p, compose(nil, inverse(p, n)));
}

int homology_rank(const F2Matrix& d, int n) { return n - 2 * f2_rank(d); }

}  // namespace

ConeInstance random_cone(std::mt19937_64& rng, int max_total) {
  ConeInstance c;
  c.k_dim = std::uniform_int_distribution<int>(0, max_total)(rng);
  c.l_dim = std::uniform_int_distribution<int>(0, max_total - c.k_dim)(rng);
  F2Matrix dk = random_differential(rng, c.k_dim);
  F2Matrix dl = random_differential(rng, c.l_dim);

  // chain map by rejection; the zero map always qualifies
  F2Matrix f(c.k_dim, 0);
  for (int attempt = 0; attempt < 256 && c.l_dim > 0; ++attempt) {
    F2Matrix g(c.k_dim);
    for (auto& row : g) row = static_cast<Bits>(rng()) & ((Bits(1) << c.l_dim) - 1);
    if (compose(g, dk) == compose(dl, g)) {
      f = g;
      break;
    }
  }

  c.hk = homology_rank(dk, c.k_dim);
  c.hl = homology_rank(dl, c.l_dim);

  // rank of H(f): image of the cycles of K modulo the boundaries of L
  std::vector<Bits> boundaries;
  for (int i = 0; i < c.l_dim; ++i) boundaries.push_back(dl[i]);
  std::vector<Bits> with_image = boundaries;
  for (Bits z : f2_kernel(dk, c.k_dim)) with_image.push_back(f2_apply(f, z));
  c.induced_rank = f2_rank(with_image) - f2_rank(boundaries);

  // cone on K (+) L: (k, l) -> (dk k, f k + dl l); K in the low bits
  const int n = c.k_dim + c.l_dim;
  F2Matrix cone(n);
  for (int i = 0; i < c.k_dim; ++i) cone[i] = dk[i] | (f[i] << c.k_dim);
  for (int i = 0; i < c.l_dim; ++i) cone[c.k_dim + i] = dl[i] << c.k_dim;
  c.cone_homology = homology_rank(cone, n);
  return c;
}

PropertyResult cone_equivalence(std::size_t instances, std::uint64_t seed) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < instances; ++i) {
    ConeInstance c = random_cone(rng);
    unsigned long via = lefbench::rank::triangle_rank(c.hk, c.hl, c.induced_rank);
    ++r.checked;
    if (static_cast<int>(via) != c.cone_homology)
      r.failures.push_back("instance " + std::to_string(i) + ": triangle gives " + std::to_string(via) +
                           ", cone has " + std::to_string(c.cone_homology));
  }
  return r;
}

namespace {

struct ArcFactory {
  const planar::DiscModel& disc;
  std::mt19937_64& rng;

  Point grid_point() {
    std::uniform_int_distribution<int> coord(-12, 12);
    for (;;) {
      Point p{lefbench::ratio(coord(rng), 16), lefbench::ratio(coord(rng), 16)};
      if (p.x * p.x + p.y * p.y < lefbench::ratio(3, 4)) return p;
    }
  }

  std::optional<planar::PlanarArc> make(bool matching, const std::string& from, const std::string& to) {
    int interior = std::uniform_int_distribution<int>(1, 4)(rng);
    std::vector<Point> via;
    for (int i = 0; i < interior; ++i) via.push_back(grid_point());
    planar::Endpoint end;
    if (matching) {
      end = planar::PunctureEnd{to};
    } else {
      end = planar::BoundaryEnd{lefbench::ratio(std::uniform_int_distribution<int>(0, 39)(rng), 40)};
    }
    try {
      return planar::make_arc(disc, matching ? planar::ArcKind::Matching : planar::ArcKind::Vanishing,
                              planar::PunctureEnd{from}, via, end);
    } catch (const lefbench::Error&) {
      return std::nullopt;
    }
  }
};

struct Outcome {
  std::size_t crossings;
  std::vector<std::string> shared;
  bool operator==(const Outcome&) const = default;
};

}  // namespace

PropertyResult bigon_order_independence(std::size_t wanted, std::uint64_t seed) {
  PropertyResult r;
  std::mt19937_64 rng(seed);
  planar::DiscModel disc({{"p", {lefbench::ratio(-1, 2), Rational(0)}},
                          {"q", {Rational(0), lefbench::ratio(1, 8)}},
                          {"s", {lefbench::ratio(1, 2), Rational(0)}}},
                         16);
  ArcFactory factory{disc, rng};
  const std::vector<std::string> ids{"p", "q", "s"};
  std::size_t attempts = 0;
  while (r.checked < wanted && attempts < wanted * 50) {
    ++attempts;
    std::uniform_int_distribution<int> pick(0, 2);
    std::uniform_int_distribution<int> step(1, 2);
    int i = pick(rng), k = pick(rng);
    int j = (i + step(rng)) % 3, l = (k + step(rng)) % 3;
    auto a = factory.make(rng() % 2 == 0, ids[i], ids[j]);
    auto b = factory.make(rng() % 2 == 0, ids[k], ids[l]);
    if (!a || !b) continue;
    if (planar::boundary_turn(a->end) && planar::boundary_turn(a->end) == planar::boundary_turn(b->end)) continue;

    std::vector<std::optional<Outcome>> outcomes;
    std::vector<std::string> errors;
    for (int run = 0; run < 4; ++run) {
      planar::MinimalPositionOptions opt;
      if (run > 0) opt.shuffle_seed = seed * 1000 + attempts * 10 + run;
      try {
        auto res = planar::reduce_to_minimal_position(*a, *b, disc, opt);
        for (const auto& step : res.steps) {
          std::size_t drop = step.crossings_before - step.crossings_after;
          std::size_t expected = step.kind == planar::BigonKind::Interior ? 2 : 1;
          if (drop != expected) r.failures.push_back("attempt " + std::to_string(attempts) + ": a step removed " +
                                                     std::to_string(drop) + " crossings");
        }
        auto p = planar::intersection_profile(res.first, res.second, disc);
        outcomes.push_back(Outcome{p.crossing_count(), p.shared_punctures});
      } catch (const lefbench::Error& e) {
        if (e.code() != lefbench::ErrorCode::DegenerateTangency) errors.push_back(e.what());
        outcomes.push_back(std::nullopt);
      }
    }
    if (!errors.empty()) {
      r.failures.push_back("attempt " + std::to_string(attempts) + ": " + errors.front());
      continue;
    }
    bool all_degenerate = std::all_of(outcomes.begin(), outcomes.end(), [](const auto& o) { return !o; });
    if (all_degenerate) continue;
    ++r.checked;
    for (const auto& o : outcomes)
      if (o != outcomes.front()) {
        r.failures.push_back("attempt " + std::to_string(attempts) + ": outcome depends on the removal order");
        break;
      }
  }
  if (r.checked < wanted)
    r.failures.push_back("only " + std::to_string(r.checked) + " usable instances out of " + std::to_string(attempts));
  return r;
}

std::vector<Inventory> inventories(const scenario::Model& model, std::optional<int> resolution) {
  auto working = model.oracle;
  auto floer = workbench::floer_ranks(model, working);
  const auto& run = *model.config.run;
  auto main = model.catalog.fibration(run.main);
  if (resolution) main.base = main.base.with_resolution(*resolution);
  std::vector<Inventory> out;
  const std::vector<std::pair<std::string, std::string>> pairs{
      {floer.b_thimble, floer.b_thimble}, {floer.a_thimble, floer.a_thimble}, {floer.a_thimble, floer.b_thimble}};
  for (const auto& [x, y] : pairs)
    for (long m = 0; m <= run.levels; ++m) {
      auto stage = tower::build_stage(main, x, y, {m, run.delta}, working);
      Inventory inv{m, x, y, {}};
      for (const auto& g : stage.generators) inv.blocks.emplace_back(g.multiplicity, g.tag);
      out.push_back(inv);
    }
  return out;
}

namespace {

std::string describe(const Inventory& inv) {
  unsigned long n = 0;
  for (const auto& [mult, tag] : inv.blocks) n += mult;
  return inv.x + "," + inv.y + " m=" + std::to_string(inv.m) + " (" + std::to_string(n) + " generators)";
}

}  // namespace

PropertyResult inventory_equality(const scenario::Model& a, const scenario::Model& b) {
  PropertyResult r;
  auto ia = inventories(a);
  auto ib = inventories(b);
  if (ia.size() != ib.size()) {
    r.failures.push_back("different numbers of stages");
    return r;
  }
  for (std::size_t i = 0; i < ia.size(); ++i) {
    ++r.checked;
    if (!(ia[i] == ib[i])) r.failures.push_back(describe(ia[i]) + " vs " + describe(ib[i]));
  }
  return r;
}

PropertyResult certificate_parity(const scenario::Model& model) {
  PropertyResult r;
  auto working = model.oracle;
  auto floer = workbench::floer_ranks(model, working);
  auto hw = workbench::hw(model, floer, working);
  for (const auto* t : {&hw.tower_bb, &hw.tower_aa, &hw.tower_ab})
    for (const auto& s : t->stages) {
      if (!s.certificate) continue;
      ++r.checked;
      if (*s.certificate % 2 != s.generator_count() % 2 || *s.certificate > s.generator_count())
        r.failures.push_back(s.x + "," + s.y + " m=" + std::to_string(s.m) + ": certificate " +
                             std::to_string(*s.certificate) + " vs " + std::to_string(s.generator_count()) +
                             " generators");
    }
  if (r.checked == 0) r.failures.push_back("no certified stage");
  return r;
}

PropertyResult resolution_invariance(const scenario::Model& model) {
  PropertyResult r;
  const auto& run = *model.config.run;
  const auto& main = model.catalog.fibration(run.main);
  const int base = main.base.boundary_resolution();
  auto coarse = inventories(model);
  auto fine = inventories(model, base * 2);
  for (std::size_t i = 0; i < coarse.size(); ++i) {
    ++r.checked;
    if (!(coarse[i] == fine[i])) r.failures.push_back("inventory " + describe(coarse[i]) + " vs " + describe(fine[i]));
  }
  // raw wrapped profiles, before the fiber multiplicities enter
  auto fine_disc = main.base.with_resolution(base * 2);
  for (const auto& x : run.thimbles)
    for (const auto& y : run.thimbles)
      for (long m = 0; m <= run.levels; ++m) {
        const auto& px = main.object(x).path;
        const auto& py = main.object(y).path;
        planar::WrapSpec spec{m, run.delta};
        auto profile = [&](const planar::DiscModel& d) {
          auto w = x == y ? planar::wrap_pushed_left(px, spec, d) : planar::wrap(px, spec, d);
          return planar::reduced_profile(w, py, d);
        };
        auto p1 = profile(main.base);
        auto p2 = profile(fine_disc);
        ++r.checked;
        if (p1.crossing_count() != p2.crossing_count() || p1.shared_punctures != p2.shared_punctures)
          r.failures.push_back("profile " + x + "," + y + " m=" + std::to_string(m) + ": " +
                               std::to_string(p1.crossing_count()) + " vs " + std::to_string(p2.crossing_count()));
      }
  return r;
}

}  // namespace support
