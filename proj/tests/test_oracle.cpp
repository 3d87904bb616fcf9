#include <map>
#include <random>
#include <set>

#include "lefbench/fibration.hpp"
#include "lefbench/oracle.hpp"
#include "support.hpp"
#include "test_util.hpp"

using namespace lefbench;
using namespace lefbench::oracle;
using testutil::error_code;

namespace {

// Brute-force closure: isotopy classes by repeated merging, then every
// declared rank is spread over the classes of its two labels.
struct NaiveClosure {
  std::vector<std::string> labels;
  std::vector<std::tuple<std::string, std::string, unsigned long>> ranks;
  std::vector<std::pair<std::string, std::string>> isotopies;

  std::map<std::string, int> classes() const {
    std::map<std::string, int> cls;
    for (std::size_t i = 0; i < labels.size(); ++i) cls[labels[i]] = static_cast<int>(i);
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& [a, b] : isotopies) {
        int lo = std::min(cls[a], cls[b]), hi = std::max(cls[a], cls[b]);
        if (lo == hi) continue;
        for (auto& [l, c] : cls)
          if (c == hi) c = lo;
        changed = true;
      }
    }
    return cls;
  }

  // nullopt inside: unknown. Outer nullopt: inconsistent.
  std::optional<std::map<std::pair<int, int>, unsigned long>> table() const {
    auto cls = classes();
    std::map<std::pair<int, int>, unsigned long> out;
    for (const auto& [a, b, r] : ranks) {
      auto k = std::minmax(cls[a], cls[b]);
      auto [it, fresh] = out.try_emplace(k, r);
      if (!fresh && it->second != r) return std::nullopt;
    }
    return out;
  }
};

FiberOracle basic() {
  FiberOracle o;
  o.declare_sphere("A");
  o.declare_sphere("B");
  o.declare("L");
  o.set_disjoint("A", "L");
  o.set_rank("B", "L", 2);
  return o;
}

}  // namespace

TEST_CASE("rank closure from facts") {
  FiberOracle o = basic();
  CHECK(o.rank_of("A", "A") == 2);
  CHECK(o.rank_of("A", "L") == 0);
  CHECK(o.rank_of("L", "B") == 2);
  CHECK(error_code([&] { o.rank_of("A", "B"); }) == ErrorCode::UnknownPair);
  CHECK(error_code([&] { o.rank_of("L", "L"); }) == ErrorCode::UnknownPair);
  CHECK(error_code([&] { o.rank_of("A", "Z"); }) == ErrorCode::InvalidInput);
  CHECK(error_code([&] { o.set_rank("A", "Z", 1); }) == ErrorCode::InvalidInput);
  REQUIRE(o.rank_source("B", "L"));
  CHECK(o.rank_source("B", "L")->provenance == Provenance::Assumed);

  o.declare_sphere("A2");
  o.set_isotopic("A", "A2");
  CHECK(o.rank_of("A2", "L") == 0);
  CHECK(o.isotopic("A2", "A"));
  CHECK(error_code([&] { o.set_rank("A2", "L", 1); }) == ErrorCode::Inconsistent);
  // the rejected fact leaves the oracle as it was
  CHECK(o.rank_of("A2", "L") == 0);
  CHECK(o.facts().size() == 7);
}

TEST_CASE("isomorphism of objects") {
  FiberOracle o = basic();
  CHECK(o.isomorphic_objects("A", "B").status == Iso::Unknown);
  o.set_not_isomorphic("A", "B", "L");
  auto answer = o.isomorphic_objects("A", "B");
  CHECK(answer.status == Iso::No);
  CHECK(answer.witness == "L");
  CHECK(o.isomorphic_objects("B", "A").status == Iso::No);
  CHECK(o.isomorphic_objects("A", "A").status == Iso::Yes);

  FiberOracle bad = basic();
  bad.set_not_isomorphic("B", "A", "L");  // L pairs nontrivially with B
  CHECK(error_code([&] { bad.isomorphic_objects("A", "B"); }) == ErrorCode::InvalidWitness);

  FiberOracle iso;
  iso.declare_sphere("A");
  iso.declare_sphere("B");
  iso.declare("L");
  iso.set_isotopic("A", "B");
  CHECK(iso.isomorphic_objects("A", "B").status == Iso::Yes);
  CHECK(error_code([&] { iso.set_not_isomorphic("A", "B", "L"); }) == ErrorCode::Inconsistent);
}

TEST_CASE("parity facts") {
  FiberOracle o = basic();
  CHECK_FALSE(o.parity("A", "B"));
  o.set_parity("B", "A", Parity::Mixed);
  CHECK(o.parity("A", "B") == Parity::Mixed);
  CHECK(error_code([&] { o.set_parity("A", "B", Parity::AllSame); }) == ErrorCode::Inconsistent);
  CHECK_FALSE(o.parity("A", "nobody"));
}

TEST_CASE("closure agrees with a brute-force closure and is symmetric") {
  std::mt19937_64 rng(23);
  const std::vector<std::string> names{"a", "b", "c", "d", "e"};
  for (int trial = 0; trial < 200; ++trial) {
    FiberOracle o;
    NaiveClosure naive;
    for (const auto& n : names) {
      o.declare(n);
      naive.labels.push_back(n);
    }
    for (int step = 0; step < 8; ++step) {
      const auto& i = names[rng() % names.size()];
      const auto& j = names[rng() % names.size()];
      NaiveClosure next = naive;
      bool iso = rng() % 4 == 0;
      unsigned long r = rng() % 3;
      if (iso)
        next.isotopies.emplace_back(i, j);
      else
        next.ranks.emplace_back(i, j, r);
      bool consistent = next.table().has_value();
      auto code = error_code([&] {
        if (iso)
          o.set_isotopic(i, j);
        else
          o.set_rank(i, j, r);
      });
      if (consistent) {
        REQUIRE_FALSE(code);
        naive = next;
      } else {
        REQUIRE(code == ErrorCode::Inconsistent);
      }
      auto cls = naive.classes();
      auto table = *naive.table();
      for (const auto& x : names)
        for (const auto& y : names) {
          auto k = std::minmax(cls[x], cls[y]);
          auto it = table.find(k);
          auto got = o.try_rank(x, y);
          CHECK(got == o.try_rank(y, x));
          if (it == table.end())
            CHECK_FALSE(got);
          else
            CHECK(got == it->second);
          CHECK(o.isotopic(x, y) == (cls[x] == cls[y]));
        }
    }
  }
}

TEST_CASE("adding an implied fact keeps every rank") {
  std::mt19937_64 rng(29);
  const std::vector<std::string> names{"a", "b", "c", "d"};
  for (int trial = 0; trial < 100; ++trial) {
    FiberOracle o;
    for (const auto& n : names) o.declare(n);
    for (int step = 0; step < 6; ++step) {
      const auto& i = names[rng() % names.size()];
      const auto& j = names[rng() % names.size()];
      (void)error_code([&] { o.set_rank(i, j, rng() % 3); });
    }
    std::map<std::pair<std::string, std::string>, std::optional<unsigned long>> before;
    for (const auto& x : names)
      for (const auto& y : names) before[{x, y}] = o.try_rank(x, y);
    for (const auto& [k, v] : before) {
      if (!v) continue;
      o.set_rank(k.second, k.first, *v);
      break;
    }
    for (const auto& [k, v] : before) CHECK(o.try_rank(k.first, k.second) == v);
  }
}

TEST_CASE("matching ranks from the base") {
  auto model = support::load_scenario("W1.cfg");
  const auto& rho = model.catalog.fibration("rho");
  const auto& A = rho.object("A");
  const auto& B = rho.object("B");
  const auto& L = rho.object("L");

  auto ab = fibration::matching_floer_rank(rho, A, B, model.oracle, true);
  CHECK(ab.exact);
  CHECK(ab.value == 2);
  CHECK(ab.interior_crossings == 0);
  CHECK(ab.shared_endpoints == 2);
  auto ba = fibration::matching_floer_rank(rho, B, A, model.oracle, true);
  CHECK(ba.value == ab.value);
  CHECK(ba.exact == ab.exact);

  auto al = fibration::matching_floer_rank(rho, A, L, model.oracle, true);
  CHECK(al.exact);
  CHECK(al.value == 0);
  CHECK(al.value == model.oracle.rank_of("A", "L"));

  auto bl = fibration::matching_floer_rank(rho, B, L, model.oracle, true);
  CHECK(bl.exact);
  CHECK(bl.interior_crossings == 1);
  CHECK(bl.value == 2);
  CHECK(bl.value == model.oracle.rank_of("B", "L"));

  // exact values never exceed the generator count and share its parity
  for (const auto* x : {&A, &B, &L})
    for (const auto* y : {&A, &B, &L}) {
      if (x == y || (x->thimble && y->thimble)) continue;
      auto r = fibration::matching_floer_rank(rho, *x, *y, model.oracle);
      if (!r.exact) continue;
      CHECK(r.value <= r.generators);
      CHECK(r.value % 2 == r.generators % 2);
    }

  auto no_parity = support::model_from_text(support::replaced(
      support::scenario_text("W1.cfg"),
      "parity A B = same | assumed: all intersection points of A and B carry one grading\n", ""));
  const auto& rho2 = no_parity.catalog.fibration("rho");
  CHECK(error_code([&] {
          fibration::matching_floer_rank(rho2, rho2.object("A"), rho2.object("B"), no_parity.oracle, true);
        }) == ErrorCode::MissingParity);
  auto bound = fibration::matching_floer_rank(rho2, rho2.object("A"), rho2.object("B"), no_parity.oracle);
  CHECK_FALSE(bound.exact);
  CHECK(bound.value == 2);
}
