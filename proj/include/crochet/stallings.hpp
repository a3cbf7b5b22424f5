#pragma once

#include <map>
#include <vector>

#include "crochet/words.hpp"

// Stallings graphs for finitely generated subgroups of a free group:
// folding, membership, and shortest double-coset representatives. Vertices
// are ints, edges are labelled by positive generator indices.

namespace crochet {

class FoldedGraph {
 public:
  // Subgroup generated by the given words, based at vertex 0.
  static FoldedGraph subgroup(const std::vector<Word>& gens);

  // Reads w from the base; returns the end vertex or -1 if the path
  // leaves the graph.
  int read(const Word& w) const;
  bool contains(const Word& w) const { return read(w) == base_; }

  int base() const { return base_; }
  int size() const { return static_cast<int>(next_.size()); }
  // Neighbour along letter g from v, or -1.
  int step(int v, Gen g) const;
  // All (letter, target) pairs out of v, in letter_key order.
  std::vector<std::pair<Gen, int>> out(int v) const;

  bool trivial_subgroup() const;

 private:
  // next_[v] maps signed letters to targets.
  std::vector<std::map<Gen, int>> next_;
  int base_ = 0;

  int add_vertex();
  void add_edge(int u, Gen g, int v);
  void add_path(int from, const Word& w, int to);
  void fold();
};

// Shortest, lexicographically least representative of  H_left * w * H_right.
// Subgroups are given by generating sets; empty set = trivial subgroup.
Word double_coset_canon(const std::vector<Word>& left, const Word& w,
                        const std::vector<Word>& right);

// Membership  w in H_left * v * H_right.
bool double_coset_contains(const std::vector<Word>& left, const Word& v,
                           const std::vector<Word>& right, const Word& w);

}  // namespace crochet
