#include "lefbench/homology.hpp"

#include <algorithm>
#include <utility>

#include "lefbench/errors.hpp"

namespace lefbench::homology {

Matrix zero_matrix(std::size_t rows, std::size_t cols) { return Matrix(rows, Vector(cols, Integer(0))); }

Matrix identity_matrix(std::size_t n) {
  Matrix m = zero_matrix(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t inner) {
  std::size_t cols = b.empty() ? 0 : b[0].size();
  Matrix out = zero_matrix(a.size(), cols);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < inner; ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

namespace {

void swap_rows(Matrix& m, std::size_t i, std::size_t j) { std::swap(m[i], m[j]); }

void swap_cols(Matrix& m, std::size_t i, std::size_t j) {
  for (auto& row : m) std::swap(row[i], row[j]);
}

// row_i += q * row_j
void add_row(Matrix& m, std::size_t i, std::size_t j, const Integer& q) {
  for (std::size_t c = 0; c < m[i].size(); ++c) m[i][c] += q * m[j][c];
}

void add_col(Matrix& m, std::size_t i, std::size_t j, const Integer& q) {
  for (auto& row : m) row[i] += q * row[j];
}

}  // namespace

SmithForm smith_normal_form(const Matrix& input, std::size_t cols) {
  const std::size_t rows = input.size();
  for (const auto& r : input)
    if (r.size() != cols) fail(ErrorCode::InvalidInput, "ragged matrix");
  Matrix a = input;
  SmithForm s;
  s.rows = rows;
  s.cols = cols;
  s.left = identity_matrix(rows);
  s.right = identity_matrix(cols);

  for (std::size_t t = 0; t < std::min(rows, cols); ++t) {
    while (true) {
      // smallest nonzero entry of the trailing block becomes the pivot
      std::size_t pi = rows, pj = cols;
      for (std::size_t i = t; i < rows; ++i)
        for (std::size_t j = t; j < cols; ++j)
          if (a[i][j] != 0 && (pi == rows || abs(a[i][j]) < abs(a[pi][pj]))) pi = i, pj = j;
      if (pi == rows) {
        for (std::size_t k = 0; k < s.diagonal.size(); ++k)
          if (s.diagonal[k] < 0) s.diagonal[k] = -s.diagonal[k];
        return s;
      }
      swap_rows(a, t, pi);
      swap_rows(s.left, t, pi);
      swap_cols(a, t, pj);
      swap_cols(s.right, t, pj);

      bool clean = true;
      for (std::size_t i = t + 1; i < rows; ++i) {
        if (a[i][t] == 0) continue;
        Integer q = a[i][t] / a[t][t];
        add_row(a, i, t, -q);
        add_row(s.left, i, t, -q);
        if (a[i][t] != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < cols; ++j) {
        if (a[t][j] == 0) continue;
        Integer q = a[t][j] / a[t][t];
        add_col(a, j, t, -q);
        add_col(s.right, j, t, -q);
        if (a[t][j] != 0) clean = false;
      }
      if (!clean) continue;

      // the pivot must divide the rest of the block
      bool divides = true;
      for (std::size_t i = t + 1; i < rows && divides; ++i)
        for (std::size_t j = t + 1; j < cols; ++j)
          if (a[i][j] % a[t][t] != 0) {
            add_row(a, t, i, 1);
            add_row(s.left, t, i, 1);
            divides = false;
            break;
          }
      if (!divides) continue;
      if (a[t][t] < 0) {
        for (auto& x : a[t]) x = -x;
        for (auto& x : s.left[t]) x = -x;
      }
      s.diagonal.push_back(a[t][t]);
      break;
    }
  }
  return s;
}

std::vector<Vector> integer_kernel(const Matrix& a, std::size_t cols) {
  SmithForm s = smith_normal_form(a, cols);
  std::vector<Vector> basis;
  for (std::size_t j = s.rank(); j < cols; ++j) {
    Vector v(cols);
    for (std::size_t i = 0; i < cols; ++i) v[i] = s.right[i][j];
    basis.push_back(std::move(v));
  }
  return basis;
}

Solve solve_in_lattice(const std::vector<Vector>& basis, const Vector& v) {
  const std::size_t n = v.size();
  const std::size_t k = basis.size();
  Matrix m = zero_matrix(n, k);
  for (std::size_t j = 0; j < k; ++j) {
    if (basis[j].size() != n) fail(ErrorCode::InvalidInput, "lattice basis has the wrong length");
    for (std::size_t i = 0; i < n; ++i) m[i][j] = basis[j][i];
  }
  SmithForm s = smith_normal_form(m, k);
  // left * m * right = D, so m c = v  <=>  D (right^-1 c) = left v
  Vector w(n, Integer(0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) w[i] += s.left[i][j] * v[j];
  Vector y(k, Integer(0));
  for (std::size_t i = 0; i < n; ++i) {
    if (i < s.rank()) {
      if (w[i] % s.diagonal[i] != 0) return {};
      y[i] = w[i] / s.diagonal[i];
    } else if (w[i] != 0) {
      return {};
    }
  }
  Solve out;
  out.success = true;
  out.coordinates.assign(k, Integer(0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) out.coordinates[i] += s.right[i][j] * y[j];
  return out;
}

std::string to_string(const Group& g) {
  std::vector<std::string> parts;
  if (g.free == 1) parts.push_back("Z");
  if (g.free > 1) parts.push_back("Z^" + std::to_string(g.free));
  for (const auto& t : g.torsion) parts.push_back("Z/" + t.get_str());
  if (parts.empty()) return "0";
  std::string out = parts[0];
  for (std::size_t i = 1; i < parts.size(); ++i) out += " + " + parts[i];
  return out;
}

Group cokernel(const Matrix& relations, std::size_t rows, std::size_t cols) {
  if (relations.size() != rows) fail(ErrorCode::InvalidInput, "relation matrix has the wrong number of rows");
  SmithForm s = smith_normal_form(relations, cols);
  Group g;
  g.free = static_cast<long>(rows - s.rank());
  for (const auto& d : s.diagonal)
    if (d > 1) g.torsion.push_back(d);
  return g;
}

void validate_group(const Group& g) {
  if (g.free < 0) fail(ErrorCode::InvalidInput, "negative free rank");
  for (std::size_t i = 0; i < g.torsion.size(); ++i) {
    if (g.torsion[i] < 2) fail(ErrorCode::InvalidInput, "torsion invariants must be at least 2");
    if (i > 0 && g.torsion[i] % g.torsion[i - 1] != 0)
      fail(ErrorCode::InvalidInput, "torsion invariants must divide each other in order");
  }
}

const Group& HomologyTable::at(int degree) const {
  static const Group zero;
  auto it = degrees.find(degree);
  return it == degrees.end() ? zero : it->second;
}

Integer HomologyTable::euler_characteristic() const {
  Integer chi = 0;
  for (const auto& [k, g] : degrees) chi += (k % 2 == 0 ? 1 : -1) * g.free;
  return chi;
}

std::map<int, long> HomologyTable::mod2_ranks() const {
  auto even_torsion = [&](int k) {
    long n = 0;
    for (const auto& t : at(k).torsion)
      if (t % 2 == 0) ++n;
    return n;
  };
  std::map<int, long> out;
  for (int k = 0; k <= bound; ++k) out[k] = at(k).free + even_torsion(k) + even_torsion(k - 1);
  return out;
}

bool operator==(const HomologyTable& a, const HomologyTable& b) {
  if (a.bound != b.bound) return false;
  for (int k = 0; k <= a.bound; ++k)
    if (!(a.at(k) == b.at(k))) return false;
  return true;
}

Attachment attach_cells(const HomologyTable& fiber, int middle, const std::vector<Vector>& attaching) {
  const Group& h = fiber.at(middle);
  const std::size_t free = static_cast<std::size_t>(h.free);
  const std::size_t tors = h.torsion.size();
  const std::size_t gens = free + tors;
  for (const auto& v : attaching)
    if (v.size() != gens)
      fail(ErrorCode::InvalidInput, "attaching class has " + std::to_string(v.size()) + " coordinates, expected " +
                                        std::to_string(gens));

  // H_middle(fiber) = Z^gens / torsion relations; the cells add the classes
  // as further relations.
  const std::size_t cols = tors + attaching.size();
  Matrix rel = zero_matrix(gens, cols);
  for (std::size_t i = 0; i < tors; ++i) rel[free + i][i] = h.torsion[i];
  for (std::size_t j = 0; j < attaching.size(); ++j)
    for (std::size_t i = 0; i < gens; ++i) rel[i][tors + j] = attaching[j][i];

  Attachment out;
  out.cell_degree = middle + 1;
  out.total = fiber;
  out.total.bound = std::max(fiber.bound, middle + 1);
  out.total.degrees[middle] = cokernel(rel, gens, cols);

  // Cycles among the cells: project the kernel of [torsion | classes] onto the
  // cell coordinates. The projection is injective because the torsion columns
  // are independent.
  for (const auto& k : integer_kernel(rel, cols)) out.cell_cycles.emplace_back(k.begin() + static_cast<long>(tors), k.end());

  Group upper = fiber.at(middle + 1);
  upper.free += static_cast<long>(out.cell_cycles.size());
  out.total.degrees[middle + 1] = upper;
  for (auto it = out.total.degrees.begin(); it != out.total.degrees.end();) {
    if (it->second.trivial()) it = out.total.degrees.erase(it);
    else ++it;
  }
  return out;
}

HomologyTable chain_homology(const ChainComplex& complex) {
  auto dim = [&](int k) -> std::size_t {
    auto it = complex.dims.find(k);
    return it == complex.dims.end() ? 0 : it->second;
  };
  auto boundary = [&](int k) -> Matrix {
    auto it = complex.boundary.find(k);
    if (it == complex.boundary.end()) return zero_matrix(dim(k - 1), dim(k));
    if (it->second.size() != dim(k - 1)) fail(ErrorCode::InvalidInput, "boundary matrix has the wrong shape");
    for (const auto& row : it->second)
      if (row.size() != dim(k)) fail(ErrorCode::InvalidInput, "boundary matrix has the wrong shape");
    return it->second;
  };

  int top = 0;
  for (const auto& [k, n] : complex.dims)
    if (n > 0) top = std::max(top, k);

  HomologyTable out;
  out.bound = top;
  for (int k = 0; k <= top + 1; ++k) {
    Matrix dk = boundary(k);
    Matrix dk1 = boundary(k + 1);
    if (k >= 1 && dim(k - 1) > 0 && dim(k + 1) > 0) {
      Matrix dd = multiply(dk, dk1, dim(k));
      for (const auto& row : dd)
        for (const auto& x : row)
          if (x != 0) fail(ErrorCode::InvalidInput, "boundary maps do not square to zero");
    }
    if (k > top) break;
    std::size_t rank_k = dim(k) == 0 || k == 0 ? 0 : smith_normal_form(dk, dim(k)).rank();
    SmithForm next = smith_normal_form(dk1, dim(k + 1));
    Group g;
    g.free = static_cast<long>(dim(k)) - static_cast<long>(rank_k) - static_cast<long>(next.rank());
    for (const auto& d : next.diagonal)
      if (d > 1) g.torsion.push_back(d);
    if (!g.trivial()) out.degrees[k] = g;
  }
  return out;
}

}  // namespace lefbench::homology
