#include "crochet/recursion.hpp"

#include "crochet/stallings.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <queue>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace crochet {

WreathElement WreathElement::identity(int d) {
  WreathElement e;
  e.sigma.resize(d);
  for (int s = 0; s < d; ++s) e.sigma[s] = s;
  e.rest.assign(d, Word{});
  return e;
}

WreathElement WreathElement::operator*(const WreathElement& o) const {
  const int d = static_cast<int>(sigma.size());
  WreathElement r;
  r.sigma.resize(d);
  r.rest.resize(d);
  for (int s = 0; s < d; ++s) {
    r.sigma[s] = sigma[o.sigma[s]];
    r.rest[s] = concat(rest[o.sigma[s]], o.rest[s]);
  }
  return r;
}

WreathElement WreathElement::inverse() const {
  const int d = static_cast<int>(sigma.size());
  WreathElement r;
  r.sigma.resize(d);
  r.rest.resize(d);
  for (int s = 0; s < d; ++s) r.sigma[sigma[s]] = s;
  for (int s = 0; s < d; ++s) r.rest[s] = crochet::inverse(rest[r.sigma[s]]);
  return r;
}

bool WreathElement::is_identity() const {
  for (size_t s = 0; s < sigma.size(); ++s)
    if (sigma[s] != static_cast<int>(s) || !rest[s].empty()) return false;
  return true;
}

int MarkedDynamics::return_degree(int a) const {
  if (!in_a_infinity(a)) throw Error("MalformedRecursion", "not in A^inf");
  int p = period.at(a), deg = 1, cur = a;
  for (int i = 0; i < p; ++i) {
    deg *= local_degree[cur - 1];
    cur = image[cur - 1];
  }
  return deg;
}

int MarkedDynamics::orbit_period(int a) const {
  std::vector<int> seen;
  int cur = a;
  while (std::find(seen.begin(), seen.end(), cur) == seen.end()) {
    seen.push_back(cur);
    cur = image[cur - 1];
  }
  auto it = std::find(seen.begin(), seen.end(), cur);
  return static_cast<int>(seen.end() - it);
}

int MarkedDynamics::orbit_preperiod(int a) const {
  std::vector<int> seen;
  int cur = a;
  while (std::find(seen.begin(), seen.end(), cur) == seen.end()) {
    seen.push_back(cur);
    cur = image[cur - 1];
  }
  auto it = std::find(seen.begin(), seen.end(), cur);
  return static_cast<int>(it - seen.begin());
}

void WreathRecursion::ensure_tables() const {
  if (!gen_el_.empty()) return;
  const int m = n();
  gen_el_.resize(m);
  gen_inv_.resize(m);
  for (int i = 0; i < m; ++i) {
    WreathElement e;
    e.sigma = sigma[i];
    e.rest = rest[i];
    gen_el_[i] = e;
    gen_inv_[i] = e.inverse();
  }
  periph_el_.resize(m);
  for (int i = 1; i <= m; ++i) periph_el_[i - 1] = eval(base.peripheral(i));
}

WreathElement WreathRecursion::eval(const Word& w) const {
  ensure_tables();
  WreathElement acc = WreathElement::identity(degree);
  for (Gen g : w) {
    const WreathElement& e = g > 0 ? gen_el_[g - 1] : gen_inv_[-g - 1];
    acc = acc * e;
  }
  return acc;
}

const WreathElement& WreathRecursion::peripheral_element(int puncture) const {
  ensure_tables();
  return periph_el_[puncture - 1];
}

namespace {

std::vector<std::vector<int>> cycles_of(const Perm& p) {
  const int d = static_cast<int>(p.size());
  std::vector<bool> used(d, false);
  std::vector<std::vector<int>> cys;
  for (int s = 0; s < d; ++s) {
    if (used[s]) continue;
    std::vector<int> c;
    int cur = s;
    while (!used[cur]) {
      used[cur] = true;
      c.push_back(cur);
      cur = p[cur];
    }
    cys.push_back(std::move(c));
  }
  return cys;
}

Word cycle_product(const WreathElement& e, const std::vector<int>& cycle) {
  // (w^k)|_s = w|_{sigma^{k-1}(s)} ... w|_{sigma(s)} w|_s  for s = cycle[0]
  Word prod;
  for (auto it = cycle.rbegin(); it != cycle.rend(); ++it)
    prod = concat(prod, e.rest[*it]);
  return prod;
}

}  // namespace

std::vector<LoopLift> lift_loop(const WreathRecursion& r, const ConjClass& c) {
  WreathElement e = r.eval(c.canon);
  std::vector<LoopLift> out;
  for (auto& cy : cycles_of(e.sigma)) {
    LoopLift l;
    l.cls = conj_class(cycle_product(e, cy));
    l.degree = static_cast<int>(cy.size());
    l.min_sheet = cy[0];
    out.push_back(std::move(l));
  }
  return out;
}

Validated validate(const WreathRecursion& r) {
  const int n = r.n(), d = r.degree;
  if (n < 2) throw Error("MalformedRecursion", "need at least two punctures");
  if (d < 2) throw Error("MalformedRecursion", "degree must be >= 2");
  {
    std::set<std::string> names(r.base.punctures.begin(), r.base.punctures.end());
    if (static_cast<int>(names.size()) != n)
      throw Error("MalformedRecursion", "duplicate puncture names");
  }
  if (static_cast<int>(r.sigma.size()) != n ||
      static_cast<int>(r.rest.size()) != n)
    throw Error("MalformedRecursion", "generator tables have wrong size");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(r.sigma[i].size()) != d ||
        static_cast<int>(r.rest[i].size()) != d)
      throw Error("MalformedRecursion", "wreath data has wrong arity");
    std::vector<bool> hit(d, false);
    for (int s = 0; s < d; ++s) {
      int t = r.sigma[i][s];
      if (t < 0 || t >= d || hit[t])
        throw Error("MalformedRecursion", "invalid permutation");
      hit[t] = true;
    }
  }

  // sphere relation: the wreath image of x_1 x_2 ... x_n is the identity
  {
    WreathElement acc = WreathElement::identity(d);
    for (int i = 0; i < n; ++i) {
      WreathElement e;
      e.sigma = r.sigma[i];
      e.rest = r.rest[i];
      acc = acc * e;
    }
    if (!acc.is_identity())
      throw Error("RelationViolation",
                  "product of peripheral generators is not trivial");
  }

  // connectedness of the cover
  {
    std::vector<int> comp(d, -1);
    std::queue<int> q;
    q.push(0);
    comp[0] = 0;
    while (!q.empty()) {
      int s = q.front();
      q.pop();
      for (int i = 0; i < n; ++i) {
        for (int t : {r.sigma[i][s],
                      static_cast<int>(std::find(r.sigma[i].begin(),
                                                 r.sigma[i].end(), s) -
                                       r.sigma[i].begin())}) {
          if (comp[t] < 0) {
            comp[t] = 0;
            q.push(t);
          }
        }
      }
    }
    for (int s = 0; s < d; ++s)
      if (comp[s] < 0)
        throw Error("DisconnectedCover", "monodromy group is not transitive");
  }

  // Riemann-Hurwitz: total branching of a degree-d sphere cover is 2d-2
  {
    long long branch = 0;
    for (int i = 0; i < n; ++i)
      for (auto& cy : cycles_of(r.sigma[i]))
        branch += static_cast<long long>(cy.size()) - 1;
    if (branch != 2LL * d - 2)
      throw Error("RiemannHurwitzViolation",
                  "branching count " + std::to_string(branch) + " != " +
                      std::to_string(2 * d - 2));
  }

  Validated out;
  out.preimage.resize(n);
  out.dynamics.image.assign(n, 0);
  out.dynamics.local_degree.assign(n, 1);
  std::vector<int> source(n + 1, 0);  // which puncture each marked point lies over

  for (int a = 1; a <= n; ++a) {
    const WreathElement& e = r.peripheral_element(a);
    for (auto& cy : cycles_of(e.sigma)) {
      Word prod = cycle_product(e, cy);
      Validated::PeriphLift pl;
      pl.min_sheet = cy[0];
      pl.degree = static_cast<int>(cy.size());
      pl.marked = 0;
      if (reduce(prod).empty() || conj_class(prod).trivial()) {
        if (pl.degree > 1)
          throw Error("UnmarkedCriticalValue",
                      "unmarked preimage of '" + r.base.punctures[a - 1] +
                          "' has local degree " + std::to_string(pl.degree));
      } else {
        // an orientation-preserving cover lifts positive peripherals to
        // positive peripherals, exponent exactly one
        auto per = oriented_peripheral(r.base, prod);
        if (!per || per->second != 1)
          throw Error("PeripheralLiftViolation",
                      "lift of peripheral loop around '" +
                          r.base.punctures[a - 1] + "' is " +
                          word_str(reduce(prod)));
        int b = per->first;
        if (source[b] != 0)
          throw Error("MarkedPointDynamicsViolation",
                      "marked point '" + r.base.punctures[b - 1] +
                          "' lies over two punctures");
        source[b] = a;
        pl.marked = b;
        out.dynamics.image[b - 1] = a;
        out.dynamics.local_degree[b - 1] = pl.degree;
      }
      out.preimage[a - 1].push_back(pl);
    }
  }
  for (int b = 1; b <= n; ++b)
    if (source[b] == 0)
      throw Error("MarkedPointDynamicsViolation",
                  "marked point '" + r.base.punctures[b - 1] +
                      "' is not a preimage of any marked point");

  // A^inf: periodic cycles through a critical point
  auto& dyn = out.dynamics;
  for (int a = 1; a <= n; ++a) {
    std::vector<int> orbit;
    int cur = a;
    while (std::find(orbit.begin(), orbit.end(), cur) == orbit.end()) {
      orbit.push_back(cur);
      cur = dyn.image[cur - 1];
    }
    if (cur != a) continue;  // a is not periodic
    bool critical = false;
    for (int p : orbit)
      if (dyn.local_degree[p - 1] > 1) critical = true;
    if (critical) {
      dyn.a_infinity.push_back(a);
      dyn.period[a] = static_cast<int>(orbit.size());
    }
  }
  std::sort(dyn.a_infinity.begin(), dyn.a_infinity.end());

  dyn.fatou.assign(n, false);
  for (int a = 1; a <= n; ++a) {
    int cur = a;
    for (int i = 0; i <= n; ++i) {
      if (dyn.in_a_infinity(cur)) {
        dyn.fatou[a - 1] = true;
        break;
      }
      cur = dyn.image[cur - 1];
    }
  }
  return out;
}

bool ArcClass::operator<(const ArcClass& o) const {
  if (a != o.a) return a < o.a;
  if (b != o.b) return b < o.b;
  return word_less(w, o.w);
}

namespace {

// strip a maximal leading run of +-g (single-letter peripheral)
Word strip_leading(Word w, Gen g) {
  size_t i = 0;
  while (i < w.size() && std::abs(w[i]) == std::abs(g)) ++i;
  return Word(w.begin() + i, w.end());
}

}  // namespace

namespace {

Word coset_reduce(const SpherePresentation& P, int a, int b, Word w) {
  const int n = P.n();
  w = reduce(std::move(w));
  if (a < n) w = strip_leading(std::move(w), a);
  if (b < n) w = inverse(strip_leading(inverse(std::move(w)), b));
  if (a == n || b == n) {
    // the last puncture's peripheral is a long word; use the coset search
    w = double_coset_canon({P.peripheral(a)}, w, {P.peripheral(b)});
    if (a < n) w = strip_leading(std::move(w), a);
    if (b < n) w = inverse(strip_leading(inverse(std::move(w)), b));
  }
  return w;
}

}  // namespace

ArcClass arc_normalize(const SpherePresentation& P, const ArcClass& arc) {
  if (arc.a < arc.b) return ArcClass{arc.a, arc.b, coset_reduce(P, arc.a, arc.b, arc.w)};
  if (arc.a > arc.b)
    return ArcClass{arc.b, arc.a, coset_reduce(P, arc.b, arc.a, inverse(arc.w))};
  Word u = coset_reduce(P, arc.a, arc.a, arc.w);
  Word v = coset_reduce(P, arc.a, arc.a, inverse(arc.w));
  return ArcClass{arc.a, arc.a, word_less(v, u) ? v : u};
}

std::vector<ArcLift> lift_arc(const WreathRecursion& r, const Validated& v,
                              const ArcClass& arc) {
  WreathElement e = r.eval(arc.w);
  const WreathElement& ea = r.peripheral_element(arc.a);
  const WreathElement& eb = r.peripheral_element(arc.b);

  auto end_of = [&](int puncture, const Perm& sig, int sheet,
                    const std::vector<Validated::PeriphLift>& lifts) -> ArcEnd {
    // representative = min sheet of the sigma-cycle through `sheet`
    int mn = sheet, cur = sig[sheet];
    while (cur != sheet) {
      mn = std::min(mn, cur);
      cur = sig[cur];
    }
    for (auto& pl : lifts)
      if (pl.min_sheet == mn)
        return ArcEnd{puncture, mn, pl.marked, pl.degree};
    throw Error("MalformedRecursion", "cycle not found");
  };

  std::vector<ArcLift> out;
  const int d = r.degree;
  for (int s = 0; s < d; ++s) {
    ArcLift l;
    l.from = end_of(arc.a, ea.sigma, e.sigma[s], v.preimage[arc.a - 1]);
    l.to = end_of(arc.b, eb.sigma, s, v.preimage[arc.b - 1]);
    l.w = e.rest[s];
    out.push_back(std::move(l));
  }
  return out;
}

std::optional<std::vector<Word>> nucleus_bound(const WreathRecursion& r,
                                               const SearchBudget& budget) {
  if (budget.max_depth <= 0) return std::nullopt;
  const int n1 = r.n() - 1;
  std::vector<Word> seeds;
  std::vector<Word> letters{Word{}};
  for (int i = 1; i <= n1; ++i) {
    letters.push_back(Word{i});
    letters.push_back(Word{-i});
  }
  for (auto& u : letters)
    for (auto& v : letters) seeds.push_back(concat(u, v));

  std::unordered_map<Word, int, WordHash> id;
  std::vector<Word> words;
  std::vector<std::vector<int>> succ;
  auto intern = [&](const Word& w) -> int {
    auto it = id.find(w);
    if (it != id.end()) return it->second;
    int k = static_cast<int>(words.size());
    id.emplace(w, k);
    words.push_back(w);
    succ.emplace_back();
    return k;
  };

  std::queue<std::pair<int, int>> q;  // (word id, depth)
  for (auto& s : seeds) q.push({intern(s), 0});
  std::vector<bool> expanded;
  while (!q.empty()) {
    auto [k, depth] = q.front();
    q.pop();
    if (k >= static_cast<int>(expanded.size())) expanded.resize(k + 1, false);
    if (expanded[k]) continue;
    expanded[k] = true;
    if (depth > budget.max_depth ||
        static_cast<long long>(words.size()) > budget.max_states)
      return std::nullopt;
    WreathElement e = r.eval(words[k]);
    for (int s = 0; s < r.degree; ++s) {
      const Word& w = e.rest[s];
      if (static_cast<int>(w.size()) > budget.length_bound) return std::nullopt;
      int t = intern(w);
      succ[k].push_back(t);
      if (t >= static_cast<int>(expanded.size()) || !expanded[t])
        q.push({t, depth + 1});
    }
  }

  // nucleus = states reachable from a cycle of the restriction graph
  const int m = static_cast<int>(words.size());
  // Tarjan SCC
  std::vector<int> idx(m, -1), low(m, 0), stk;
  std::vector<bool> on(m, false);
  std::vector<int> comp(m, -1);
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

  std::vector<int> comp_size(ncomp, 0);
  for (int v = 0; v < m; ++v) comp_size[comp[v]]++;
  std::vector<bool> cyclic(m, false);
  for (int v = 0; v < m; ++v) {
    if (comp_size[comp[v]] > 1) cyclic[v] = true;
    for (int t : succ[v])
      if (t == v) cyclic[v] = true;
  }
  std::vector<bool> in_nucleus(m, false);
  std::queue<int> q2;
  for (int v = 0; v < m; ++v)
    if (cyclic[v] && !in_nucleus[v]) {
      in_nucleus[v] = true;
      q2.push(v);
    }
  while (!q2.empty()) {
    int v = q2.front();
    q2.pop();
    for (int t : succ[v])
      if (!in_nucleus[t]) {
        in_nucleus[t] = true;
        q2.push(t);
      }
  }
  std::vector<Word> nucleus;
  for (int v = 0; v < m; ++v)
    if (in_nucleus[v]) nucleus.push_back(words[v]);
  std::sort(nucleus.begin(), nucleus.end(), word_less);
  return nucleus;
}

WreathRecursion compose(const WreathRecursion& r1, const WreathRecursion& r2) {
  if (r1.n() != r2.n())
    throw Error("MalformedRecursion", "composition needs equal marked sets");
  const int d1 = r1.degree, d2 = r2.degree, n = r1.n();
  WreathRecursion r;
  r.base = r1.base;
  r.degree = d1 * d2;
  r.sigma.assign(n, Perm(r.degree));
  r.rest.assign(n, std::vector<Word>(r.degree));
  for (int i = 0; i < n; ++i) {
    WreathElement e1;
    e1.sigma = r1.sigma[i];
    e1.rest = r1.rest[i];
    for (int s = 0; s < d1; ++s) {
      WreathElement e2 = r2.eval(e1.rest[s]);
      for (int t = 0; t < d2; ++t) {
        int idx = s * d2 + t;
        r.sigma[i][idx] = e1.sigma[s] * d2 + e2.sigma[t];
        r.rest[i][idx] = e2.rest[t];
      }
    }
  }
  return r;
}

namespace {

using nlohmann::ordered_json;

Word json_to_word(const ordered_json& j, const SpherePresentation& P) {
  Word w;
  for (auto& v : j) w.push_back(v.get<int>());
  return P.to_free_basis(w);
}

}  // namespace

WreathRecursion parse_recursion(const std::string& text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const std::exception& ex) {
    throw Error("IOError", std::string("bad JSON: ") + ex.what());
  }
  WreathRecursion r;
  try {
    for (auto& p : j.at("punctures"))
      r.base.punctures.push_back(p.get<std::string>());
    r.degree = j.at("degree").get<int>();
    const auto& gens = j.at("generators");
    r.sigma.resize(r.n());
    r.rest.resize(r.n());
    if (static_cast<int>(gens.size()) != r.n())
      throw Error("MalformedRecursion", "one generator per puncture required");
    for (int i = 1; i <= r.n(); ++i) {
      const auto& g = gens.at(r.base.punctures[i - 1]);
      Perm perm;
      for (auto& v : g.at("perm")) perm.push_back(v.get<int>() - 1);
      r.sigma[i - 1] = perm;
      for (auto& wj : g.at("rest"))
        r.rest[i - 1].push_back(json_to_word(wj, r.base));
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception& ex) {
    throw Error("IOError", std::string("bad recursion file: ") + ex.what());
  }
  return r;
}

WreathRecursion load_recursion(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("IOError", "cannot open '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_recursion(ss.str());
}

std::string recursion_to_json(const WreathRecursion& r) {
  ordered_json j;
  j["punctures"] = r.base.punctures;
  j["degree"] = r.degree;
  ordered_json gens = ordered_json::object();
  for (int i = 0; i < r.n(); ++i) {
    ordered_json g;
    std::vector<int> perm;
    for (int s = 0; s < r.degree; ++s) perm.push_back(r.sigma[i][s] + 1);
    g["perm"] = perm;
    ordered_json rests = ordered_json::array();
    for (auto& w : r.rest[i]) rests.push_back(w);
    g["rest"] = rests;
    gens[r.base.punctures[i]] = g;
  }
  j["generators"] = gens;
  return j.dump(2) + "\n";
}

}  // namespace crochet
