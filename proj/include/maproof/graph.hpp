#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace maproof {

// Dense adjacency matrix. Undirected graphs store both arcs.
class Graph {
 public:
  Graph() = default;
  explicit Graph(std::size_t n) : n_(n), adj_(n * n, 0) {}

  static Graph complete(std::size_t n);

  std::size_t size() const { return n_; }
  bool arc(std::size_t i, std::size_t j) const { return adj_[i * n_ + j] != 0; }
  void add_arc(std::size_t i, std::size_t j);
  void add_edge(std::size_t i, std::size_t j);
  // True when every arc has its reverse and there are no loops.
  bool is_undirected() const;
  std::size_t edge_count() const;  // undirected edges (arc pairs)

 private:
  std::size_t n_ = 0;
  std::vector<std::uint8_t> adj_;
};

using IntMatrix = std::vector<std::vector<std::int64_t>>;
// Rows of 0/1 entries.
using BitVectors = std::vector<std::vector<std::uint8_t>>;

}  // namespace maproof
