#pragma once

#include <map>
#include <optional>
#include <set>
#include <vector>

#include "crochet/words.hpp"

// Thurston maps presented as wreath recursions over a punctured-sphere
// group: validation as a branched sphere cover, loop and arc lifting, and
// the contraction (nucleus) machinery.

namespace crochet {

// perm[s] = image of sheet s, 0-based internally.
using Perm = std::vector<int>;

struct WreathElement {
  Perm sigma;
  std::vector<Word> rest;

  static WreathElement identity(int d);
  WreathElement operator*(const WreathElement& o) const;
  WreathElement inverse() const;
  bool is_identity() const;
};

struct SearchBudget {
  int length_bound = 48;   // max word length in searches
  int max_depth = 24;      // iteration / recursion depth
  long long max_states = 200000;  // closure size cap

  SearchBudget() = default;
  SearchBudget(int L, int N) : length_bound(L), max_depth(N) {}
};

struct MarkedDynamics {
  std::vector<int> image;        // 1-based; image[a-1] = f(a)
  std::vector<int> local_degree; // degree of f at each marked point
  std::vector<int> a_infinity;   // forward orbit of periodic critical points
  std::map<int, int> period;     // periods of points in a_infinity
  std::vector<bool> fatou;       // orbit eventually enters a_infinity

  bool in_a_infinity(int a) const { return period.count(a) > 0; }
  // product of local degrees along one period of a in a_infinity
  int return_degree(int a) const;
  int orbit_period(int a) const;   // eventual period of any marked point
  int orbit_preperiod(int a) const;
};

struct WreathRecursion {
  SpherePresentation base;
  int degree = 0;
  std::vector<Perm> sigma;              // n permutations
  std::vector<std::vector<Word>> rest;  // n x degree restriction words

  int n() const { return base.n(); }
  int d() const { return degree; }

  // wreath image of a free-basis word
  WreathElement eval(const Word& w) const;
  const WreathElement& peripheral_element(int puncture) const;

 private:
  mutable std::vector<WreathElement> gen_el_, gen_inv_, periph_el_;
  void ensure_tables() const;
};

// One essential/peripheral/trivial preimage component of a loop.
struct LoopLift {
  ConjClass cls;
  int degree = 1;       // covering degree of the component
  int min_sheet = 0;    // canonical cycle representative, 0-based
};

// validate() result plus the per-puncture preimage structure.
struct Validated {
  MarkedDynamics dynamics;
  // preimage[a-1] = lifts of the peripheral loop x_a; each is either the
  // peripheral class of a marked preimage or trivial (unmarked, degree 1).
  struct PeriphLift {
    int min_sheet;
    int degree;
    int marked;  // puncture index, or 0 for an unmarked preimage
  };
  std::vector<std::vector<PeriphLift>> preimage;
};

Validated validate(const WreathRecursion& r);

std::vector<LoopLift> lift_loop(const WreathRecursion& r, const ConjClass& c);

// Arc between punctures, word taken modulo peripheral powers at both ends.
struct ArcClass {
  int a = 0, b = 0;  // puncture indices, 1-based
  Word w;

  bool operator==(const ArcClass& o) const {
    return a == o.a && b == o.b && w == o.w;
  }
  bool operator<(const ArcClass& o) const;
};

// Double-coset normal form <x_a> w <x_b>, orientation-canonical
// (a <= b; for a == b the lex-smaller of w, w^-1).
ArcClass arc_normalize(const SpherePresentation& P, const ArcClass& arc);

struct ArcEnd {
  int over = 0;       // base puncture
  int min_sheet = 0;  // sigma-cycle representative (identifies the preimage)
  int marked = 0;     // puncture index if the preimage is marked, else 0
  int degree = 1;

  bool operator==(const ArcEnd& o) const {
    return over == o.over && min_sheet == o.min_sheet;
  }
};

struct ArcLift {
  ArcEnd from, to;
  Word w;  // not yet normalized
};

// The d lifts of an arc, one per sheet, endpoints resolved against the
// marked set. Requires a validated recursion.
std::vector<ArcLift> lift_arc(const WreathRecursion& r, const Validated& v,
                              const ArcClass& arc);

// Closure of generator restrictions under iterated restriction of words of
// length <= 2; nullopt when the budget is exhausted before stabilizing.
std::optional<std::vector<Word>> nucleus_bound(const WreathRecursion& r,
                                               const SearchBudget& budget);

// Recursion of f1 after f2 on the product sheet set, for functoriality
// checks of iterated lifting.
WreathRecursion compose(const WreathRecursion& r1, const WreathRecursion& r2);

WreathRecursion load_recursion(const std::string& path);
WreathRecursion parse_recursion(const std::string& json_text);
std::string recursion_to_json(const WreathRecursion& r);

}  // namespace crochet
