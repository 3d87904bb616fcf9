#pragma once

// Integral homology bookkeeping: Smith normal form, finitely generated abelian
// groups, handle attachment along middle-degree classes, and plain chain
// complexes of free modules.

#include <map>
#include <string>
#include <vector>

#include "lefbench/rational.hpp"

namespace lefbench::homology {

using Vector = std::vector<Integer>;
using Matrix = std::vector<Vector>;  // row-major, rows x cols

Matrix zero_matrix(std::size_t rows, std::size_t cols);
Matrix identity_matrix(std::size_t n);
Matrix multiply(const Matrix& a, const Matrix& b, std::size_t inner);

struct SmithForm {
  std::size_t rows = 0;
  std::size_t cols = 0;
  Matrix left;    // rows x rows, unimodular
  Matrix right;   // cols x cols, unimodular
  Vector diagonal;  // positive invariants d_1 | d_2 | ..., length = rank

  std::size_t rank() const { return diagonal.size(); }
};

/// left * a * right = diag(diagonal, 0...). `cols` must be given because `a`
/// may have no rows.
SmithForm smith_normal_form(const Matrix& a, std::size_t cols);

/// Basis (as columns, returned as a list of vectors) of the integer kernel.
std::vector<Vector> integer_kernel(const Matrix& a, std::size_t cols);

/// Integer coordinates c with sum_i c_i basis[i] = v, or empty optional-like
/// result (success = false) when v is outside the lattice.
struct Solve {
  bool success = false;
  Vector coordinates;
};
Solve solve_in_lattice(const std::vector<Vector>& basis, const Vector& v);

/// Z^free + Z/t_1 + ... with 2 <= t_1 | t_2 | ....
struct Group {
  long free = 0;
  Vector torsion;

  long generator_count() const { return free + static_cast<long>(torsion.size()); }
  bool trivial() const { return free == 0 && torsion.empty(); }
  friend bool operator==(const Group&, const Group&) = default;
};

std::string to_string(const Group& g);

/// Cokernel of the relation matrix whose columns are the relations.
Group cokernel(const Matrix& relations, std::size_t rows, std::size_t cols);

/// Throws Error(InvalidInput) unless every torsion invariant is >= 2 and each
/// divides the next.
void validate_group(const Group& g);

struct HomologyTable {
  std::map<int, Group> degrees;  // missing degrees are zero
  int bound = 0;                 // degrees above bound are not recorded

  const Group& at(int degree) const;
  Integer euler_characteristic() const;
  /// Dimension over Z/2 in each degree, from the universal coefficient theorem.
  std::map<int, long> mod2_ranks() const;
  friend bool operator==(const HomologyTable& a, const HomologyTable& b);
};

/// Result of attaching (middle + 1)-cells to a space with homology `fiber`,
/// cell i glued along attaching[i] in H_middle(fiber) coordinates (free part
/// first, then one coordinate per torsion summand).
struct Attachment {
  HomologyTable total;
  int cell_degree = 0;
  /// Basis of the cycles among the cells: the kernel of the attaching map.
  std::vector<Vector> cell_cycles;
};

/// Throws Error(InvalidInput) when an attaching vector has the wrong length.
Attachment attach_cells(const HomologyTable& fiber, int middle, const std::vector<Vector>& attaching);

/// Free chain complex: boundary.at(k) is the matrix of C_k -> C_{k-1}, with
/// dims.at(k) = rank C_k.
struct ChainComplex {
  std::map<int, std::size_t> dims;
  std::map<int, Matrix> boundary;
};

/// Throws Error(InvalidInput) if d o d != 0 or shapes disagree.
HomologyTable chain_homology(const ChainComplex& complex);

}  // namespace lefbench::homology
