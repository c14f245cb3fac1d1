#pragma once

// Triangular multi-index grids {m_{i,j} : 2 <= i <= j <= n} and the index
// sums M_l(k,n), N_l(k,n) of the closed-form Lauricella decomposition.

#include <cstddef>
#include <optional>
#include <vector>

namespace fsol {

class MultiIndexGrid {
 public:
  explicit MultiIndexGrid(int n);
  MultiIndexGrid(int n, std::vector<unsigned> cells);

  [[nodiscard]] int n() const { return n_; }
  [[nodiscard]] std::size_t cell_count() const { return cells_.size(); }

  /// m_{i,j}; zero for any (i,j) outside the stored triangle.
  [[nodiscard]] unsigned at(int i, int j) const;
  void set(int i, int j, unsigned value);

  [[nodiscard]] unsigned total_degree() const;
  [[nodiscard]] const std::vector<unsigned>& cells() const { return cells_; }

  /// Cells in storage order (2,2),(2,3),...,(2,n),(3,3),...,(n,n).
  static std::size_t cells_for(int n);
  static std::size_t offset(int n, int i, int j);

  friend bool operator==(const MultiIndexGrid&, const MultiIndexGrid&) = default;

 private:
  int n_;
  std::vector<unsigned> cells_;
};

/// M_l(k,n) = sum_{i=l}^{k} m_{i,k} + sum_{i=k+1}^{n} m_{k+1,i}
unsigned m_count(const MultiIndexGrid& g, int l, int k);

/// N_l(k,n) = sum_{i=l}^{k+1} sum_{j=i}^{n} m_{i,j}
unsigned n_count(const MultiIndexGrid& g, int l, int k);

/// Advances `parts` to the next composition of their sum in lexicographic
/// order. Returns false after the last one, (d, 0, ..., 0).
bool next_composition(std::vector<unsigned>& parts);

/// All grids of total degree exactly d, lexicographic by cell.
std::vector<MultiIndexGrid> grids_of_degree(int n, unsigned d);

/// Streams every grid with total degree <= max_total_degree, graded by
/// degree and lexicographic by cell within a degree.
class GridEnumerator {
 public:
  GridEnumerator(int n, unsigned max_total_degree);
  std::optional<MultiIndexGrid> next();

 private:
  int n_;
  unsigned max_degree_;
  unsigned degree_ = 0;
  std::vector<unsigned> parts_;
  bool exhausted_ = false;
  bool fresh_ = true;
};

}  // namespace fsol
