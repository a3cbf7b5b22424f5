#pragma once

#include <optional>
#include <variant>

#include "crochet/recursion.hpp"

// Multicurve pullback, invariant-multicurve generation, and the structure
// theory of the curve-lifting graph: strongly connected components,
// unicycles vs bicycles, primitive components.

namespace crochet {

struct CurveClass {
  ConjClass cls;
  SidePartition part;

  bool operator==(const CurveClass& o) const { return cls == o.cls; }
  bool operator<(const CurveClass& o) const { return cls < o.cls; }
};

CurveClass make_curve(const SpherePresentation& P, const ConjClass& c);

class MultiCurve {
 public:
  MultiCurve() = default;
  // Asserts essentiality, distinctness, pairwise laminarity.
  MultiCurve(const SpherePresentation& P, std::vector<CurveClass> curves);

  const std::vector<CurveClass>& curves() const { return curves_; }
  bool empty() const { return curves_.empty(); }
  size_t size() const { return curves_.size(); }
  bool contains(const ConjClass& c) const;
  int index_of(const ConjClass& c) const;  // -1 if absent
  bool operator==(const MultiCurve& o) const { return curves_ == o.curves_; }

 private:
  std::vector<CurveClass> curves_;  // sorted canonical order
};

// Record of one preimage component of a curve under pullback.
struct LiftRecord {
  int from;                 // index into the source multicurve
  int kind;                 // 0 trivial, 1 peripheral, 2 essential
  int to = -1;              // index into the pulled-back multicurve (essential)
  int peripheral_at = 0;    // puncture index (peripheral)
  int degree = 1;
  ConjClass cls;
};

struct Pullback {
  MultiCurve curves;
  std::vector<LiftRecord> table;
};

Pullback pullback(const WreathRecursion& r, const MultiCurve& C);

// Saturation of a preinvariant seed under pullback; nullopt = Exhausted.
std::optional<MultiCurve> generate_invariant(const WreathRecursion& r,
                                             const MultiCurve& seed,
                                             const SearchBudget& budget);

bool is_invariant(const WreathRecursion& r, const MultiCurve& C);

struct CurveLiftGraph {
  MultiCurve vertices;
  struct Edge {
    int from, to;
    int degree;
  };
  std::vector<Edge> edges;  // parallel edges kept, one per lift component
};

CurveLiftGraph curve_lift_graph(const WreathRecursion& r, const MultiCurve& C);

struct SCCClassification {
  struct Component {
    std::vector<int> vertices;   // sorted curve indices
    bool bicycle = false;
    bool primitive = false;
    int internal_edges = 0;
  };
  std::vector<Component> components;     // qualifying SCCs only
  std::vector<int> component_of;        // per vertex, -1 if in none
  std::vector<std::pair<int, int>> order;  // condensation pairs (i prec j)
};

SCCClassification classify_scc(const CurveLiftGraph& g);

// Walk-count criterion: some pair of vertices admits two distinct directed
// walks of a common length n <= 4|V| (capped matrix powers). For a strongly
// connected graph this is equivalent to |E| > |V|.
bool bicycle_by_walks(const std::vector<std::vector<int>>& adjacency);

// Any directed cycle consisting solely of degree-1 lifts is a Levy cycle.
bool has_levy_cycle(const CurveLiftGraph& g);

std::string lift_graph_dot(const CurveLiftGraph& g,
                           const SpherePresentation& P);

}  // namespace crochet
