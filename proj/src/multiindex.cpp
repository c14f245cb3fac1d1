#include "fsol/multiindex.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <utility>

#include "fsol/common.hpp"

namespace fsol {

MultiIndexGrid::MultiIndexGrid(int n) : n_(n), cells_(cells_for(n), 0U) {}

MultiIndexGrid::MultiIndexGrid(int n, std::vector<unsigned> cells) : n_(n), cells_(std::move(cells)) {
  if (cells_.size() != cells_for(n)) throw ParameterError("MultiIndexGrid: wrong number of cells");
}

std::size_t MultiIndexGrid::cells_for(int n) {
  if (n < 1) throw ParameterError("MultiIndexGrid: n must be >= 1");
  return static_cast<std::size_t>(n) * static_cast<std::size_t>(n - 1) / 2;
}

std::size_t MultiIndexGrid::offset(int n, int i, int j) {
  // rows i = 2..n hold n - i + 1 cells each
  std::size_t off = 0;
  for (int row = 2; row < i; ++row) off += static_cast<std::size_t>(n - row + 1);
  return off + static_cast<std::size_t>(j - i);
}

unsigned MultiIndexGrid::at(int i, int j) const {
  if (i < 2 || i > j || j > n_) return 0;
  return cells_[offset(n_, i, j)];
}

void MultiIndexGrid::set(int i, int j, unsigned value) {
  if (i < 2 || i > j || j > n_) throw DomainError("MultiIndexGrid: cell (" + std::to_string(i) + "," +
                                                  std::to_string(j) + ") outside the triangle");
  cells_[offset(n_, i, j)] = value;
}

unsigned MultiIndexGrid::total_degree() const { return std::accumulate(cells_.begin(), cells_.end(), 0U); }

namespace {
void check_k(const MultiIndexGrid& g, int l, int k) {
  if (k < 1 || k > g.n()) throw DomainError("index k out of range [1, n]");
  if (l < 1) throw DomainError("index l must be positive");
}
}  // namespace

unsigned m_count(const MultiIndexGrid& g, int l, int k) {
  check_k(g, l, k);
  unsigned s = 0;
  for (int i = l; i <= k; ++i) s += g.at(i, k);
  for (int i = k + 1; i <= g.n(); ++i) s += g.at(k + 1, i);
  return s;
}

unsigned n_count(const MultiIndexGrid& g, int l, int k) {
  check_k(g, l, k);
  unsigned s = 0;
  for (int i = l; i <= k + 1; ++i)
    for (int j = i; j <= g.n(); ++j) s += g.at(i, j);
  return s;
}

bool next_composition(std::vector<unsigned>& parts) {
  // Lexicographic successor among tuples with the same sum: find the last
  // position p < size-1 that can be incremented, move one unit from the
  // tail into it and put the remaining tail mass at the end.
  const std::size_t t = parts.size();
  if (t < 2) return false;
  unsigned tail = parts[t - 1];
  for (std::size_t p = t - 1; p-- > 0;) {
    if (tail > 0) {
      ++parts[p];
      for (std::size_t q = p + 1; q < t; ++q) parts[q] = 0;
      parts[t - 1] = tail - 1;
      return true;
    }
    tail += parts[p];
  }
  return false;
}

std::vector<MultiIndexGrid> grids_of_degree(int n, unsigned d) {
  const std::size_t t = MultiIndexGrid::cells_for(n);
  std::vector<MultiIndexGrid> out;
  if (t == 0) {
    if (d == 0) out.emplace_back(n);
    return out;
  }
  std::vector<unsigned> parts(t, 0U);
  parts.back() = d;
  do {
    out.emplace_back(n, parts);
  } while (next_composition(parts));
  return out;
}

GridEnumerator::GridEnumerator(int n, unsigned max_total_degree)
    : n_(n), max_degree_(max_total_degree), parts_(MultiIndexGrid::cells_for(n), 0U) {}

std::optional<MultiIndexGrid> GridEnumerator::next() {
  if (exhausted_) return std::nullopt;
  if (fresh_) {
    fresh_ = false;
    return MultiIndexGrid(n_, parts_);
  }
  if (!parts_.empty() && next_composition(parts_)) return MultiIndexGrid(n_, parts_);
  if (parts_.empty() || degree_ >= max_degree_) {
    exhausted_ = true;
    return std::nullopt;
  }
  ++degree_;
  std::fill(parts_.begin(), parts_.end(), 0U);
  parts_.back() = degree_;
  return MultiIndexGrid(n_, parts_);
}

}  // namespace fsol
