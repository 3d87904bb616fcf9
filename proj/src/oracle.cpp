#include "lefbench/oracle.hpp"

#include "lefbench/errors.hpp"

namespace lefbench::oracle {

std::string_view to_string(Provenance p) {
  switch (p) {
    case Provenance::Cited: return "cited";
    case Provenance::Assumed: return "assumed";
    case Provenance::Derived: return "derived";
  }
  return "assumed";
}

void FiberOracle::require_label(const std::string& label) const {
  if (!labels_.count(label)) fail(ErrorCode::InvalidInput, "undeclared cycle label '" + label + "'");
}

void FiberOracle::add(const Fact& fact) {
  auto saved_facts = facts_;
  auto saved_labels = labels_;
  if (fact.kind == FactKind::Label || fact.kind == FactKind::Sphere) {
    if (fact.first.empty()) fail(ErrorCode::InvalidInput, "empty cycle label");
    labels_.insert(fact.first);
  } else {
    require_label(fact.first);
    require_label(fact.second);
    if (fact.kind == FactKind::NotIsomorphic) require_label(fact.witness);
  }
  facts_.push_back(fact);
  try {
    rebuild();
  } catch (...) {
    facts_ = std::move(saved_facts);
    labels_ = std::move(saved_labels);
    rebuild();
    throw;
  }
}

void FiberOracle::declare(const std::string& label, const Note& note) {
  add({FactKind::Label, label, {}, {}, 0, Parity::AllSame, note});
}

void FiberOracle::declare_sphere(const std::string& label, const Note& note) {
  add({FactKind::Sphere, label, {}, {}, 0, Parity::AllSame, note});
}

void FiberOracle::set_rank(const std::string& i, const std::string& j, unsigned long rank, const Note& note) {
  add({FactKind::Rank, i, j, {}, rank, Parity::AllSame, note});
}

void FiberOracle::set_disjoint(const std::string& i, const std::string& j, const Note& note) {
  add({FactKind::Disjoint, i, j, {}, 0, Parity::AllSame, note});
}

void FiberOracle::set_isotopic(const std::string& i, const std::string& j, const Note& note) {
  add({FactKind::Isotopic, i, j, {}, 0, Parity::AllSame, note});
}

void FiberOracle::set_not_isomorphic(const std::string& i, const std::string& j, const std::string& witness,
                                     const Note& note) {
  add({FactKind::NotIsomorphic, i, j, witness, 0, Parity::AllSame, note});
}

void FiberOracle::set_parity(const std::string& i, const std::string& j, Parity parity, const Note& note) {
  add({FactKind::ParityFact, i, j, {}, 0, parity, note});
}

std::string FiberOracle::root(const std::string& label) const {
  std::string r = label;
  for (auto it = parent_.find(r); it != parent_.end() && it->second != r; it = parent_.find(r)) r = it->second;
  return r;
}

std::pair<std::string, std::string> FiberOracle::key(const std::string& i, const std::string& j) const {
  std::string a = root(i), b = root(j);
  if (b < a) std::swap(a, b);
  return {a, b};
}

void FiberOracle::rebuild() {
  parent_.clear();
  closure_.clear();
  for (const auto& l : labels_) parent_[l] = l;
  for (const auto& f : facts_) {
    if (f.kind != FactKind::Isotopic) continue;
    std::string a = root(f.first), b = root(f.second);
    if (a == b) continue;
    if (b < a) std::swap(a, b);
    parent_[b] = a;
  }

  auto put = [&](const std::string& i, const std::string& j, unsigned long rank, const Note& note,
                 const std::string& what) {
    auto k = key(i, j);
    auto [it, fresh] = closure_.try_emplace(k, Entry{rank, note});
    if (!fresh && it->second.rank != rank)
      fail(ErrorCode::Inconsistent, "rank(" + i + ", " + j + ") is " + std::to_string(it->second.rank) +
                                        " by one fact but " + std::to_string(rank) + " by " + what);
  };
  for (const auto& f : facts_) {
    switch (f.kind) {
      case FactKind::Sphere: put(f.first, f.first, 2, f.note, "the sphere self-rank"); break;
      case FactKind::Rank: put(f.first, f.second, f.rank, f.note, "a declared rank"); break;
      case FactKind::Disjoint: put(f.first, f.second, 0, f.note, "disjointness"); break;
      default: break;
    }
  }
  for (const auto& f : facts_)
    if (f.kind == FactKind::NotIsomorphic && root(f.first) == root(f.second))
      fail(ErrorCode::Inconsistent, "'" + f.first + "' and '" + f.second + "' are declared both isotopic and not isomorphic");
  std::map<std::pair<std::string, std::string>, Parity> parities;
  for (const auto& f : facts_) {
    if (f.kind != FactKind::ParityFact) continue;
    auto [it, fresh] = parities.try_emplace(key(f.first, f.second), f.parity);
    if (!fresh && it->second != f.parity)
      fail(ErrorCode::Inconsistent, "conflicting parities for (" + f.first + ", " + f.second + ")");
  }
}

std::optional<unsigned long> FiberOracle::try_rank(const std::string& i, const std::string& j) const {
  require_label(i);
  require_label(j);
  auto it = closure_.find(key(i, j));
  if (it == closure_.end()) return std::nullopt;
  return it->second.rank;
}

unsigned long FiberOracle::rank_of(const std::string& i, const std::string& j) const {
  auto r = try_rank(i, j);
  if (!r) fail(ErrorCode::UnknownPair, "no rank known for HF(" + i + ", " + j + ")");
  return *r;
}

std::optional<Note> FiberOracle::rank_source(const std::string& i, const std::string& j) const {
  require_label(i);
  require_label(j);
  auto it = closure_.find(key(i, j));
  if (it == closure_.end()) return std::nullopt;
  return it->second.source;
}

bool FiberOracle::isotopic(const std::string& i, const std::string& j) const {
  require_label(i);
  require_label(j);
  return root(i) == root(j);
}

std::vector<std::string> FiberOracle::witnesses(const std::string& i, const std::string& j) const {
  std::vector<std::string> out;
  for (const auto& f : facts_) {
    if (f.kind != FactKind::NotIsomorphic || f.first != i || f.second != j) continue;
    auto ri = try_rank(i, f.witness);
    auto rj = try_rank(j, f.witness);
    if (!ri || !rj || *ri != 0 || *rj == 0)
      fail(ErrorCode::InvalidWitness, "witness '" + f.witness + "' for (" + i + ", " + j +
                                          ") needs HF(" + i + ", " + f.witness + ") = 0 and HF(" + j + ", " +
                                          f.witness + ") != 0");
    out.push_back(f.witness);
  }
  return out;
}

IsoAnswer FiberOracle::isomorphic_objects(const std::string& i, const std::string& j) const {
  require_label(i);
  require_label(j);
  auto forward = witnesses(i, j);
  auto backward = witnesses(j, i);
  if (root(i) == root(j)) return {Iso::Yes, {}};
  if (!forward.empty()) return {Iso::No, forward.front()};
  if (!backward.empty()) return {Iso::No, backward.front()};
  return {Iso::Unknown, {}};
}

std::optional<Parity> FiberOracle::parity(const std::string& i, const std::string& j) const {
  if (!declared(i) || !declared(j)) return std::nullopt;
  auto k = key(i, j);
  for (const auto& f : facts_)
    if (f.kind == FactKind::ParityFact && key(f.first, f.second) == k) return f.parity;
  return std::nullopt;
}

}  // namespace lefbench::oracle
