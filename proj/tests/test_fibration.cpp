#include <algorithm>

#include "lefbench/fibration.hpp"
#include "support.hpp"
#include "test_util.hpp"

using namespace lefbench;
using namespace lefbench::fibration;
using homology::Group;
using homology::Vector;
using support::replaced;
using testutil::error_code;

namespace {

Vector ints(std::initializer_list<long> xs) {
  Vector v;
  for (long x : xs) v.push_back(Integer(x));
  return v;
}

TotalHomology total(const scenario::Model& m, const std::string& name) {
  return total_space_homology(m.catalog, m.catalog.fibration(name));
}

bool mentions(const ValidationReport& r, const std::string& text) {
  return std::any_of(r.violations.begin(), r.violations.end(),
                     [&](const std::string& v) { return v.find(text) != std::string::npos; });
}

ValidationReport check(const scenario::Model& m, const std::string& name) {
  return validate(m.catalog.fibration(name), m.catalog, &m.oracle);
}

}  // namespace

TEST_CASE("shipped scenarios validate") {
  for (const char* file : {"W0.cfg", "W1.cfg", "TSn1.cfg", "empty-fibration.cfg"}) {
    CAPTURE(file);
    auto m = support::load_scenario(file);
    for (const auto& f : m.catalog.fibrations()) {
      auto r = validate(f, m.catalog, &m.oracle);
      CAPTURE(f.name);
      CHECK(r.ok());
      for (const auto& v : r.violations) MESSAGE(v);
    }
  }
}

TEST_CASE("validation failures") {
  const std::string w1 = support::scenario_text("W1.cfg");
  SUBCASE("two vanishing paths ending at one puncture") {
    auto m = support::model_from_text(replaced(w1, "crit c = path_c belt", "crit c = path_m1 belt"));
    auto r = check(m, "rho");
    CHECK_FALSE(r.ok());
    CHECK(mentions(r, "two critical points in one fiber"));
  }
  SUBCASE("a critical value listed twice") {
    auto m = support::model_from_text(replaced(w1, "crit c = path_c belt", "crit p1 = path_c belt"));
    CHECK(mentions(check(m, "rho"), "two critical points in one fiber"));
  }
  SUBCASE("a matching path through a third critical value") {
    auto text = replaced(w1, "[arc alpha]", "[arc through]\ndisc = base_aux\nkind = matching\nstart = puncture m1\nend = puncture p1\n\n[arc alpha]");
    text = replaced(text, "matching A = alpha belt belt", "matching A = alpha belt belt\nmatching S = through belt belt");
    auto m = support::model_from_text(text);
    auto r = check(m, "rho");
    CHECK(mentions(r, "object 'S'"));
  }
  SUBCASE("crossing vanishing paths") {
    auto m = support::model_from_text(replaced(w1, "crit c = path_c belt", "crit c = path_c_up belt"));
    CHECK(check(m, "rho").ok());
    auto crossing = support::model_from_text(replaced(w1, "via = 3/10 -2/5\nend = boundary 5/6",
                                                      "via = 3/10 -2/5\nend = boundary 5/8"));
    CHECK_FALSE(check(crossing, "rho").ok());
  }
  SUBCASE("undeclared label and undeclared fiber") {
    auto m = support::model_from_text(replaced(w1, "crit c = path_c belt", "crit c = path_c waist"));
    CHECK(mentions(check(m, "rho"), "'waist' is not declared"));
    CHECK(error_code([&] { support::model_from_text(replaced(w1, "fiber = F0", "fiber = F9")); }) ==
          ErrorCode::ConfigError);
  }
}

TEST_CASE("no critical values: the total space is the fiber") {
  auto m = support::load_scenario("empty-fibration.cfg");
  auto t = total(m, "trivial");
  const auto& fiber = m.catalog.abstract_fiber("F0")->homology;
  CHECK(t.table.bound >= fiber.bound);
  for (int k = 0; k <= t.table.bound; ++k) CHECK(t.table.at(k) == fiber.at(k));
  CHECK(t.euler == 0);
  CHECK(t.cell_cycles.empty());
}

TEST_CASE("W0 and W1 have the same homology") {
  auto w0 = support::load_scenario("W0.cfg");
  auto w1 = support::load_scenario("W1.cfg");
  for (const char* name : {"rho", "pi"}) {
    CAPTURE(name);
    auto a = total(w0, name), b = total(w1, name);
    CHECK(a.table == b.table);
    CHECK(a.table.mod2_ranks() == b.table.mod2_ranks());
  }
  // One 2-cell per node of the surface fiber (euler 0), one 3-cell per node
  // of the top level: 0 + 3 = 3, then 3 - 2 = 1.
  const long chi_u = 0 + 3;
  const long chi_w = chi_u + 2 * -1;
  CHECK(total(w1, "rho").euler == chi_u);
  CHECK(total(w0, "pi").euler == chi_w);
  CHECK(total(w1, "pi").euler == chi_w);

  auto pi = total(w1, "pi").table;
  CHECK(pi.at(0) == Group{1, {}});
  CHECK(pi.at(1) == Group{});
  CHECK(pi.at(2) == Group{1, {}});
  CHECK(pi.at(3) == Group{1, {}});
  auto mod2 = pi.mod2_ranks();
  CHECK(mod2[0] == 1);
  CHECK(mod2[1] == 0);
  CHECK(mod2[2] == 1);
  CHECK(mod2[3] == 1);
}

TEST_CASE("the plain cotangent bundle config is a homology 3-sphere") {
  auto m = support::load_scenario("TSn1.cfg");
  auto t = total(m, "pi");
  for (int k = 0; k <= t.table.bound; ++k) {
    CAPTURE(k);
    CHECK(t.table.at(k) == ((k == 0 || k == 3) ? Group{1, {}} : Group{}));
  }
  CHECK(t.table.bound >= 3);
  CHECK(t.euler == 0);

  // the matching sphere generates H_3
  const auto& pi = m.catalog.fibration("pi");
  auto cells = matching_cycle_class(m.catalog, pi, pi.object("Zero"));
  auto coords = total_space_coordinates(m.catalog, pi, cells);
  REQUIRE(coords.size() == 1);
  CHECK(abs(coords[0]) == 1);
}

TEST_CASE("matching classes") {
  auto m = support::load_scenario("W1.cfg");
  const auto& rho = m.catalog.fibration("rho");
  auto a = matching_cycle_class(m.catalog, rho, rho.object("A"));
  auto b = matching_cycle_class(m.catalog, rho, rho.object("B"));
  CHECK(a == b);
  CHECK(total_space_coordinates(m.catalog, rho, a) == total_space_coordinates(m.catalog, rho, b));
  CHECK(error_code([&] { matching_cycle_class(m.catalog, rho, rho.object("L")); }) == ErrorCode::InvalidInput);

  std::vector<Vector> att{ints({1}), ints({-1}), ints({1}), ints({2})};
  CHECK(matching_cells(att, 0, 2) == ints({1, 0, -1, 0}));
  CHECK(matching_cells(att, 0, 1) == ints({1, 1, 0, 0}));
  CHECK(matching_cells(att, 1, 1) == ints({0, 0, 0, 0}));
  CHECK(error_code([&] { matching_cells(att, 0, 3); }) == ErrorCode::UnresolvedSign);

  // a pair of critical values with opposite signs still bounds a sphere
  auto flipped = support::model_from_text(
      replaced(support::scenario_text("W1.cfg"), "crit p1 = path_p1 belt", "crit p1 = path_p1 belt -1"));
  const auto& rho2 = flipped.catalog.fibration("rho");
  CHECK(matching_cycle_class(flipped.catalog, rho2, rho2.object("A")) == ints({1, 0, 1}));
  CHECK(total(flipped, "rho").table == total(m, "rho").table);
}

TEST_CASE("missing classes") {
  auto text = replaced(support::scenario_text("W1.cfg"), "crit c = path_c belt", "crit c = path_c L");
  auto m = support::model_from_text(text);
  CHECK(error_code([&] { total(m, "rho"); }) == ErrorCode::MissingClass);
  CHECK(error_code([&] { total(m, "pi"); }) == ErrorCode::MissingClass);
}

TEST_CASE("invariance under relabeling and isotopy of paths") {
  const std::string w1 = support::scenario_text("W1.cfg");
  auto base = support::load_scenario("W1.cfg");
  auto relabeled = support::model_from_text(replaced(replaced(w1, "belt", "waist"), " m1", " q7"));
  auto moved = support::model_from_text(replaced(w1, "via = -3/10 -2/5\nend = boundary 5/8",
                                                 "via = -7/20 -1/3; -2/5 -1/2\nend = boundary 5/8"));
  for (const auto* m : {&relabeled, &moved}) {
    for (const char* name : {"rho", "pi"}) {
      CHECK(check(*m, name).ok());
      CHECK(total(*m, name).table == total(base, name).table);
    }
  }
}

TEST_CASE("two-level homology equals one pass over all cells") {
  using homology::ChainComplex;
  using homology::Matrix;
  // Cells of the surface fiber: one 0-cell and one 1-cell (the belt), d = 0.
  // Each node of the middle level adds a 2-cell on the belt; each top-level
  // critical value adds a 3-cell on the chain of its matching sphere, which
  // runs from the cell of one end to the cell of the other.
  auto one_pass = [](std::size_t nodes, const std::vector<Vector>& spheres) {
    ChainComplex cx;
    cx.dims = {{0, 1}, {1, 1}, {2, nodes}, {3, spheres.size()}};
    Matrix d2 = homology::zero_matrix(1, nodes);
    for (auto& x : d2[0]) x = 1;
    Matrix d3 = homology::zero_matrix(nodes, spheres.size());
    for (std::size_t j = 0; j < spheres.size(); ++j)
      for (std::size_t i = 0; i < nodes; ++i) d3[i][j] = spheres[j][i];
    cx.boundary = {{1, homology::zero_matrix(1, 1)}, {2, d2}, {3, d3}};
    return homology::chain_homology(cx);
  };
  auto expect_same = [](const homology::HomologyTable& a, const homology::HomologyTable& b) {
    for (int k = 0; k <= std::max(a.bound, b.bound); ++k) {
      CAPTURE(k);
      CHECK(a.at(k) == b.at(k));
    }
  };
  for (const char* file : {"W0.cfg", "W1.cfg"}) {
    CAPTURE(file);
    auto m = support::load_scenario(file);
    expect_same(total(m, "pi").table, one_pass(3, {ints({1, 0, -1}), ints({1, 0, -1})}));
  }
  auto t = support::load_scenario("TSn1.cfg");
  expect_same(total(t, "pi").table, one_pass(2, {ints({1, -1}), ints({1, -1})}));
}
