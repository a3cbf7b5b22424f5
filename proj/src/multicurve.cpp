#include "crochet/multicurve.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <sstream>

namespace crochet {

CurveClass make_curve(const SpherePresentation& P, const ConjClass& c) {
  return CurveClass{c, side_partition(P, c)};
}

MultiCurve::MultiCurve(const SpherePresentation& P,
                       std::vector<CurveClass> curves) {
  std::sort(curves.begin(), curves.end());
  curves.erase(std::unique(curves.begin(), curves.end()), curves.end());
  for (auto& c : curves) {
    if (c.cls.trivial() || is_peripheral(P, c.cls))
      throw Error("MalformedMultiCurve",
                  "trivial or peripheral member " + word_str(c.cls.canon));
    if (!c.part.essential())
      throw Error("MalformedMultiCurve",
                  "inessential member " + word_str(c.cls.canon));
  }
  for (size_t i = 0; i < curves.size(); ++i)
    for (size_t j = i + 1; j < curves.size(); ++j)
      if (!laminar(curves[i].part, curves[j].part))
        throw Error("LaminarityViolation",
                    word_str(curves[i].cls.canon) + " vs " +
                        word_str(curves[j].cls.canon));
  curves_ = std::move(curves);
}

bool MultiCurve::contains(const ConjClass& c) const {
  return index_of(c) >= 0;
}

int MultiCurve::index_of(const ConjClass& c) const {
  for (size_t i = 0; i < curves_.size(); ++i)
    if (curves_[i].cls == c) return static_cast<int>(i);
  return -1;
}

Pullback pullback(const WreathRecursion& r, const MultiCurve& C) {
  std::vector<CurveClass> lifted;
  std::vector<LiftRecord> table;
  for (size_t i = 0; i < C.size(); ++i) {
    for (auto& l : lift_loop(r, C.curves()[i].cls)) {
      LiftRecord rec;
      rec.from = static_cast<int>(i);
      rec.degree = l.degree;
      rec.cls = l.cls;
      if (l.cls.trivial()) {
        rec.kind = 0;
      } else if (auto per = is_peripheral(r.base, l.cls)) {
        rec.kind = 1;
        rec.peripheral_at = per->first;
      } else {
        rec.kind = 2;
        lifted.push_back(make_curve(r.base, l.cls));
      }
      table.push_back(std::move(rec));
    }
  }
  Pullback pb;
  pb.curves = MultiCurve(r.base, std::move(lifted));
  for (auto& rec : table)
    if (rec.kind == 2) rec.to = pb.curves.index_of(rec.cls);
  pb.table = std::move(table);
  return pb;
}

std::optional<MultiCurve> generate_invariant(const WreathRecursion& r,
                                             const MultiCurve& seed,
                                             const SearchBudget& budget) {
  {
    Pullback pb = pullback(r, seed);
    for (auto& c : seed.curves())
      if (!pb.curves.contains(c.cls))
        throw Error("PreinvarianceViolation",
                    word_str(c.cls.canon) +
                        " is not isotopic to a preimage component of the seed");
  }
  MultiCurve cur = seed;
  for (int round = 0;; ++round) {
    if (round > budget.max_depth) return std::nullopt;
    Pullback pb = pullback(r, cur);
    std::vector<CurveClass> merged = cur.curves();
    for (auto& c : pb.curves.curves()) merged.push_back(c);
    MultiCurve next(r.base, std::move(merged));
    if (static_cast<long long>(next.size()) > budget.max_states)
      return std::nullopt;
    if (next == cur) return cur;
    cur = std::move(next);
  }
}

bool is_invariant(const WreathRecursion& r, const MultiCurve& C) {
  Pullback pb = pullback(r, C);
  if (!(pb.curves == C)) return false;
  for (auto& c : C.curves())
    if (!pb.curves.contains(c.cls)) return false;
  return true;
}

CurveLiftGraph curve_lift_graph(const WreathRecursion& r, const MultiCurve& C) {
  CurveLiftGraph g;
  g.vertices = C;
  Pullback pb = pullback(r, C);
  for (auto& rec : pb.table) {
    if (rec.kind != 2) continue;
    int to = C.index_of(rec.cls);
    if (to < 0)
      throw Error("NotInvariant",
                  "essential lift " + word_str(rec.cls.canon) +
                      " leaves the multicurve");
    g.edges.push_back({rec.from, to, rec.degree});
  }
  return g;
}

namespace {

// counts capped at 2: enough to decide "at least two walks"
std::vector<std::vector<int>> capped_mul(const std::vector<std::vector<int>>& A,
                                         const std::vector<std::vector<int>>& B) {
  const int m = static_cast<int>(A.size());
  std::vector<std::vector<int>> C(m, std::vector<int>(m, 0));
  for (int i = 0; i < m; ++i)
    for (int k = 0; k < m; ++k) {
      if (!A[i][k]) continue;
      for (int j = 0; j < m; ++j) {
        C[i][j] = std::min(2, C[i][j] + A[i][k] * B[k][j]);
      }
    }
  return C;
}

}  // namespace

bool bicycle_by_walks(const std::vector<std::vector<int>>& adjacency) {
  const int m = static_cast<int>(adjacency.size());
  std::vector<std::vector<int>> A = adjacency;
  for (auto& row : A)
    for (auto& v : row) v = std::min(v, 2);
  std::vector<std::vector<int>> P = A;
  for (int step = 1; step <= 4 * m; ++step) {
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j)
        if (P[i][j] >= 2) return true;
    P = capped_mul(P, A);
  }
  return false;
}

SCCClassification classify_scc(const CurveLiftGraph& g) {
  const int m = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> succ(m);
  for (auto& e : g.edges) succ[e.from].push_back(e.to);

  std::vector<int> idx(m, -1), low(m, 0), stk, comp(m, -1);
  std::vector<bool> on(m, false);
  int counter = 0, ncomp = 0;
  std::function<void(int)> dfs = [&](int v) {
    idx[v] = low[v] = counter++;
    stk.push_back(v);
    on[v] = true;
    for (int t : succ[v]) {
      if (idx[t] < 0) {
        dfs(t);
        low[v] = std::min(low[v], low[t]);
      } else if (on[t]) {
        low[v] = std::min(low[v], idx[t]);
      }
    }
    if (low[v] == idx[v]) {
      while (true) {
        int u = stk.back();
        stk.pop_back();
        on[u] = false;
        comp[u] = ncomp;
        if (u == v) break;
      }
      ++ncomp;
    }
  };
  for (int v = 0; v < m; ++v)
    if (idx[v] < 0) dfs(v);

  // a singleton without a self-loop is never a strongly connected component
  std::vector<int> size_of(ncomp, 0);
  for (int v = 0; v < m; ++v) size_of[comp[v]]++;
  std::vector<bool> qualifies(ncomp, false);
  for (int c = 0; c < ncomp; ++c)
    if (size_of[c] > 1) qualifies[c] = true;
  for (auto& e : g.edges)
    if (e.from == e.to) qualifies[comp[e.from]] = true;

  SCCClassification out;
  out.component_of.assign(m, -1);
  std::vector<int> remap(ncomp, -1);
  for (int c = 0; c < ncomp; ++c) {
    if (!qualifies[c]) continue;
    remap[c] = static_cast<int>(out.components.size());
    out.components.emplace_back();
  }
  for (int v = 0; v < m; ++v) {
    int c = remap[comp[v]];
    out.component_of[v] = c;
    if (c >= 0) out.components[c].vertices.push_back(v);
  }
  for (auto& cc : out.components)
    std::sort(cc.vertices.begin(), cc.vertices.end());

  for (auto& e : g.edges)
    if (out.component_of[e.from] >= 0 &&
        out.component_of[e.from] == out.component_of[e.to])
      out.components[out.component_of[e.from]].internal_edges++;

  // unicycle iff the component is a single directed cycle with simple edges
  for (size_t c = 0; c < out.components.size(); ++c) {
    auto& cc = out.components[c];
    cc.bicycle = cc.internal_edges > static_cast<int>(cc.vertices.size());
    // cross-check with the walk-count criterion
    const int k = static_cast<int>(cc.vertices.size());
    std::vector<int> local(m, -1);
    for (int i = 0; i < k; ++i) local[cc.vertices[i]] = i;
    std::vector<std::vector<int>> adj(k, std::vector<int>(k, 0));
    for (auto& e : g.edges)
      if (local[e.from] >= 0 && local[e.to] >= 0 &&
          out.component_of[e.from] == static_cast<int>(c) &&
          out.component_of[e.to] == static_cast<int>(c))
        adj[local[e.from]][local[e.to]]++;
    if (bicycle_by_walks(adj) != cc.bicycle)
      throw Error("InternalError",
                  "edge-count and walk-count bicycle criteria disagree");
  }

  // condensation order: i prec j if a directed walk leads from i to j
  std::vector<std::vector<bool>> reach(m, std::vector<bool>(m, false));
  for (int v = 0; v < m; ++v) {
    std::queue<int> q;
    q.push(v);
    std::vector<bool> seen(m, false);
    seen[v] = true;
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int t : succ[u])
        if (!seen[t]) {
          seen[t] = true;
          q.push(t);
        }
    }
    for (int u = 0; u < m; ++u) reach[v][u] = seen[u] && u != v;
    reach[v][v] = seen[v] ? false : false;
  }
  const int nc = static_cast<int>(out.components.size());
  std::vector<std::vector<bool>> creach(nc, std::vector<bool>(nc, false));
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b) {
      if (a == b) continue;
      for (int u : out.components[a].vertices)
        for (int v : out.components[b].vertices)
          if (reach[u][v]) creach[a][b] = true;
    }
  for (int a = 0; a < nc; ++a)
    for (int b = 0; b < nc; ++b)
      if (creach[a][b]) out.order.push_back({a, b});
  for (int a = 0; a < nc; ++a) {
    bool entered = false;
    for (int b = 0; b < nc; ++b)
      if (creach[b][a]) entered = true;
    out.components[a].primitive = !entered;
  }
  return out;
}

bool has_levy_cycle(const CurveLiftGraph& g) {
  const int m = static_cast<int>(g.vertices.size());
  std::vector<std::vector<int>> succ(m);
  for (auto& e : g.edges)
    if (e.degree == 1) succ[e.from].push_back(e.to);
  // cycle detection in the degree-1 subgraph
  std::vector<int> state(m, 0);
  std::function<bool(int)> dfs = [&](int v) -> bool {
    state[v] = 1;
    for (int t : succ[v]) {
      if (state[t] == 1) return true;
      if (state[t] == 0 && dfs(t)) return true;
    }
    state[v] = 2;
    return false;
  };
  for (int v = 0; v < m; ++v)
    if (state[v] == 0 && dfs(v)) return true;
  return false;
}

std::string lift_graph_dot(const CurveLiftGraph& g,
                           const SpherePresentation& P) {
  std::ostringstream os;
  os << "digraph lifts {\n";
  for (size_t i = 0; i < g.vertices.size(); ++i)
    os << "  v" << i << " [label=\""
       << word_str(g.vertices.curves()[i].cls.canon) << "\"];\n";
  for (auto& e : g.edges)
    os << "  v" << e.from << " -> v" << e.to << " [label=\"k=" << e.degree
       << "\"];\n";
  os << "}\n";
  return os.str();
}

}  // namespace crochet
