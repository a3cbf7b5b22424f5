#include "crochet/stallings.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <unordered_set>

namespace crochet {

namespace {

struct UnionFind {
  std::vector<int> up;
  explicit UnionFind(int n) : up(n) { std::iota(up.begin(), up.end(), 0); }
  int find(int v) {
    while (up[v] != v) v = up[v] = up[up[v]];
    return v;
  }
  bool unite(int a, int b) {
    a = find(a); b = find(b);
    if (a == b) return false;
    up[std::max(a, b)] = std::min(a, b);
    return true;
  }
};

}  // namespace

int FoldedGraph::add_vertex() {
  next_.emplace_back();
  return static_cast<int>(next_.size()) - 1;
}

void FoldedGraph::add_edge(int u, Gen g, int v) {
  next_[u].emplace(g, v);
  next_[v].emplace(-g, u);
}

void FoldedGraph::add_path(int from, const Word& w, int to) {
  int cur = from;
  for (size_t i = 0; i < w.size(); ++i) {
    int nxt = i + 1 == w.size() ? to : add_vertex();
    add_edge(cur, w[i], nxt);
    cur = nxt;
  }
  if (w.empty() && from != to)
    throw Error("MalformedWord", "empty path between distinct vertices");
}

void FoldedGraph::fold() {
  UnionFind uf(size());
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < size(); ++v) {
      if (uf.find(v) != v) continue;
      // collect edges of the merged class of v
      std::map<Gen, std::vector<int>> by_label;
      for (int u = 0; u < size(); ++u) {
        if (uf.find(u) != v) continue;
        for (auto& [g, t] : next_[u]) by_label[g].push_back(uf.find(t));
      }
      for (auto& [g, ts] : by_label) {
        for (size_t i = 1; i < ts.size(); ++i)
          if (uf.unite(ts[0], ts[i])) changed = true;
      }
    }
  }
  // rebuild on representatives
  std::vector<int> remap(size(), -1);
  int m = 0;
  for (int v = 0; v < size(); ++v)
    if (uf.find(v) == v) remap[v] = m++;
  std::vector<std::map<Gen, int>> folded(m);
  for (int v = 0; v < size(); ++v)
    for (auto& [g, t] : next_[v])
      folded[remap[uf.find(v)]][g] = remap[uf.find(t)];
  next_ = std::move(folded);
  base_ = remap[uf.find(base_)];
}

FoldedGraph FoldedGraph::subgroup(const std::vector<Word>& gens) {
  FoldedGraph g;
  g.base_ = g.add_vertex();
  for (const Word& w : gens) {
    Word r = reduce(w);
    if (!r.empty()) g.add_path(g.base_, r, g.base_);
  }
  g.fold();
  return g;
}

int FoldedGraph::read(const Word& w) const {
  int v = base_;
  for (Gen g : reduce(w)) {
    v = step(v, g);
    if (v < 0) return -1;
  }
  return v;
}

int FoldedGraph::step(int v, Gen g) const {
  auto it = next_[v].find(g);
  return it == next_[v].end() ? -1 : it->second;
}

std::vector<std::pair<Gen, int>> FoldedGraph::out(int v) const {
  std::vector<std::pair<Gen, int>> res(next_[v].begin(), next_[v].end());
  std::sort(res.begin(), res.end(), [](auto& a, auto& b) {
    return letter_key(a.first) < letter_key(b.first);
  });
  return res;
}

bool FoldedGraph::trivial_subgroup() const {
  return size() == 1 && next_[0].empty();
}

// Orbit search over {reduce(h * w * k)}. Exact for cyclic factors (the
// length profile is a valley, so a slack of one generator length suffices);
// for larger subgroups it is a budgeted under-approximation that still
// returns a genuine coset element.
Word double_coset_canon(const std::vector<Word>& left, const Word& w,
                        const std::vector<Word>& right) {
  Word start = reduce(w);
  std::vector<Word> moves_l, moves_r;
  size_t genmax = 0;
  for (auto& g : left) {
    Word r = reduce(g);
    if (r.empty()) continue;
    genmax = std::max(genmax, r.size());
    moves_l.push_back(r);
    moves_l.push_back(inverse(r));
  }
  for (auto& g : right) {
    Word r = reduce(g);
    if (r.empty()) continue;
    genmax = std::max(genmax, r.size());
    moves_r.push_back(r);
    moves_r.push_back(inverse(r));
  }
  size_t cap = start.size() + 2 * genmax + 2;
  const size_t max_visited = 50000;

  auto better = [](const Word& a, const Word& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return word_less(a, b);
  };

  std::unordered_set<Word, WordHash> seen;
  std::queue<Word> q;
  seen.insert(start);
  q.push(start);
  Word best = start;
  while (!q.empty() && seen.size() < max_visited) {
    Word cur = q.front();
    q.pop();
    if (better(cur, best)) best = cur;
    auto push = [&](Word nw) {
      if (nw.size() > cap) return;
      if (seen.insert(nw).second) q.push(std::move(nw));
    };
    for (auto& m : moves_l) push(concat(m, cur));
    for (auto& m : moves_r) push(concat(cur, m));
  }
  return best;
}

bool double_coset_contains(const std::vector<Word>& left, const Word& v,
                           const std::vector<Word>& right, const Word& w) {
  Word target = reduce(w);
  Word start = reduce(v);
  std::vector<Word> moves;
  size_t genmax = 0;
  for (auto& gs : {left, right})
    for (auto& g : gs) {
      Word r = reduce(g);
      if (!r.empty()) genmax = std::max(genmax, r.size());
    }
  size_t cap = std::max(start.size(), target.size()) + 2 * genmax + 2;
  const size_t max_visited = 50000;

  std::unordered_set<Word, WordHash> seen;
  std::queue<Word> q;
  seen.insert(start);
  q.push(start);
  while (!q.empty() && seen.size() < max_visited) {
    Word cur = q.front();
    q.pop();
    if (cur == target) return true;
    auto push = [&](Word nw) {
      if (nw.size() > cap) return;
      if (seen.insert(nw).second) q.push(std::move(nw));
    };
    for (auto& g : left) {
      Word r = reduce(g);
      if (r.empty()) continue;
      push(concat(r, cur));
      push(concat(inverse(r), cur));
    }
    for (auto& g : right) {
      Word r = reduce(g);
      if (r.empty()) continue;
      push(concat(cur, r));
      push(concat(cur, inverse(r)));
    }
  }
  return false;
}

}  // namespace crochet
