#include "maproof/graph.hpp"

#include "maproof/errors.hpp"

namespace maproof {

Graph Graph::complete(std::size_t n) {
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (i != j) g.add_arc(i, j);
  return g;
}

void Graph::add_arc(std::size_t i, std::size_t j) {
  if (i >= n_ || j >= n_) throw UsageError("vertex out of range");
  adj_[i * n_ + j] = 1;
}

void Graph::add_edge(std::size_t i, std::size_t j) {
  add_arc(i, j);
  add_arc(j, i);
}

bool Graph::is_undirected() const {
  for (std::size_t i = 0; i < n_; ++i) {
    if (arc(i, i)) return false;
    for (std::size_t j = i + 1; j < n_; ++j)
      if (arc(i, j) != arc(j, i)) return false;
  }
  return true;
}

std::size_t Graph::edge_count() const {
  std::size_t m = 0;
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = i + 1; j < n_; ++j) m += arc(i, j) && arc(j, i);
  return m;
}

}  // namespace maproof
