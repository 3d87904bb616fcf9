#pragma once

// Declared Floer ranks between vanishing cycles of a fiber, over Z/2, with the
// facts they follow from. Nothing is defaulted: a rank the table and its
// closure cannot determine is an error.

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace lefbench::oracle {

enum class Provenance { Cited, Assumed, Derived };

std::string_view to_string(Provenance p);

struct Note {
  Provenance provenance = Provenance::Assumed;
  std::string text;
  friend bool operator==(const Note&, const Note&) = default;
};

enum class Parity { AllSame, Mixed };

enum class FactKind { Label, Sphere, Rank, Disjoint, Isotopic, NotIsomorphic, ParityFact };

struct Fact {
  FactKind kind;
  std::string first;
  std::string second;   // empty for Label/Sphere
  std::string witness;  // NotIsomorphic only
  unsigned long rank = 0;
  Parity parity = Parity::AllSame;
  Note note;
  friend bool operator==(const Fact&, const Fact&) = default;
};

enum class Iso { Yes, No, Unknown };

struct IsoAnswer {
  Iso status = Iso::Unknown;
  std::string witness;  // set for No
};

class FiberOracle {
 public:
  /// Adds a fact and recomputes the closure. Throws Error(InvalidInput) for
  /// undeclared labels and Error(Inconsistent) when the closure would assign
  /// two different ranks to one pair.
  void add(const Fact& fact);

  void declare(const std::string& label, const Note& note = {});
  void declare_sphere(const std::string& label, const Note& note = {});
  void set_rank(const std::string& i, const std::string& j, unsigned long rank, const Note& note = {});
  void set_disjoint(const std::string& i, const std::string& j, const Note& note = {});
  void set_isotopic(const std::string& i, const std::string& j, const Note& note = {});
  void set_not_isomorphic(const std::string& i, const std::string& j, const std::string& witness,
                          const Note& note = {});
  void set_parity(const std::string& i, const std::string& j, Parity parity, const Note& note = {});

  bool declared(const std::string& label) const { return labels_.count(label) > 0; }
  const std::set<std::string>& labels() const { return labels_; }
  const std::vector<Fact>& facts() const { return facts_; }

  /// Throws Error(UnknownPair) when undetermined.
  unsigned long rank_of(const std::string& i, const std::string& j) const;
  std::optional<unsigned long> try_rank(const std::string& i, const std::string& j) const;
  /// The fact the closed value came from.
  std::optional<Note> rank_source(const std::string& i, const std::string& j) const;

  bool isotopic(const std::string& i, const std::string& j) const;

  /// Throws Error(InvalidWitness) if a declared witness for the pair violates
  /// rank(i, w) = 0 < rank(j, w).
  IsoAnswer isomorphic_objects(const std::string& i, const std::string& j) const;

  /// Witnesses declared for exactly this ordering, validated.
  std::vector<std::string> witnesses(const std::string& i, const std::string& j) const;

  std::optional<Parity> parity(const std::string& i, const std::string& j) const;

 private:
  struct Entry {
    unsigned long rank;
    Note source;
  };

  void require_label(const std::string& label) const;
  void rebuild();
  std::string root(const std::string& label) const;
  std::pair<std::string, std::string> key(const std::string& i, const std::string& j) const;

  std::set<std::string> labels_;
  std::vector<Fact> facts_;
  std::map<std::string, std::string> parent_;
  std::map<std::pair<std::string, std::string>, Entry> closure_;
};

}  // namespace lefbench::oracle
