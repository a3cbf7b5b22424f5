#include "crochet/oracle.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "crochet/multicurve.hpp"

namespace crochet {

namespace {

struct Angle {
  long long num, den;  // reduced, 0 <= num < den

  static Angle make(long long n, long long d) {
    if (d <= 0) throw Error("MalformedAngle", "nonpositive denominator");
    n %= d;
    if (n < 0) n += d;
    long long g = std::gcd(n, d);
    return Angle{n / g, d / g};
  }
  Angle doubled() const { return make(2 * num, den); }
  Angle half() const { return make(num, 2 * den); }          // theta/2
  Angle half_other() const { return make(num + den, 2 * den); }
  bool operator==(const Angle& o) const { return num == o.num && den == o.den; }
  bool operator<(const Angle& o) const {
    return static_cast<__int128>(num) * o.den <
           static_cast<__int128>(o.num) * den;
  }
};

// strictly between a and b counterclockwise, where b = a + 1/2
bool in_upper_arc(const Angle& t0, const Angle& x) {
  Angle t1 = Angle::make(2 * t0.num + t0.den, 2 * t0.den);  // t0 + 1/2
  if (t0 < t1) return t0 < x && x < t1;
  return t0 < x || x < t1;
}

struct AngleModel {
  std::vector<Angle> orbit;  // distinct angles of the doubling orbit of theta
  int preperiod = 0, period = 0;
  Angle theta{0, 1};
};

AngleModel angle_orbit(const Angle& theta) {
  AngleModel m;
  m.theta = theta;
  Angle cur = theta;
  std::map<std::pair<long long, long long>, int> seen;
  while (!seen.count({cur.num, cur.den})) {
    seen[{cur.num, cur.den}] = static_cast<int>(m.orbit.size());
    m.orbit.push_back(cur);
    cur = cur.doubled();
  }
  int back = seen[{cur.num, cur.den}];
  m.preperiod = back;
  m.period = static_cast<int>(m.orbit.size()) - back;
  return m;
}

struct Candidate {
  WreathRecursion r;
  // expected dynamics for the filter, 1-based puncture -> (image, degree)
  std::vector<std::pair<int, int>> expected;
};

// filters a candidate: validation, expected marked dynamics, contraction
bool certify(Candidate& c, bool need_nucleus) {
  try {
    Validated v = validate(c.r);
    for (int a = 1; a <= c.r.n(); ++a) {
      if (v.dynamics.image[a - 1] != c.expected[a - 1].first) return false;
      if (v.dynamics.local_degree[a - 1] != c.expected[a - 1].second)
        return false;
    }
    if (need_nucleus) {
      SearchBudget b;
      b.length_bound = 24;
      b.max_depth = 40;
      b.max_states = 20000;
      if (!nucleus_bound(c.r, b)) return false;
    }
  } catch (const Error&) {
    return false;
  }
  return true;
}

}  // namespace

WreathRecursion quadratic_from_angle(long long num, long long den) {
  AngleModel m = angle_orbit(Angle::make(num, den));
  const bool periodic = m.preperiod == 0;
  const int k = static_cast<int>(m.orbit.size());

  // marked set: the orbit points, the critical point (separate only in the
  // strictly preperiodic case), and infinity
  struct Pt {
    std::string name;
    Angle angle;
    int orbit_index;  // -1 for the critical point, -2 for infinity
  };

  for (int leg = 0; leg < (periodic ? 1 : 2); ++leg) {
    // leg: which preimage angle carries the critical point's position
    Angle cp_angle = leg == 0 ? m.theta.half() : m.theta.half_other();
    std::vector<Pt> pts;
    for (int i = 0; i < k; ++i) {
      std::string nm = i == 0 ? "v" : (i == 1 ? "fv" : "f" + std::to_string(i) + "v");
      if (periodic && i == k - 1) nm = "cp";
      pts.push_back({nm, m.orbit[i], i});
    }
    if (!periodic) pts.push_back({"cp", cp_angle, -1});
    std::sort(pts.begin(), pts.end(),
              [](const Pt& a, const Pt& b) { return a.angle < b.angle; });
    pts.push_back({"inf", Angle{0, 1}, -2});
    const int n = static_cast<int>(pts.size());

    auto find_by_orbit = [&](int oi) {
      for (int i = 0; i < n; ++i)
        if (pts[i].orbit_index == oi) return i + 1;
      throw Error("InternalError", "orbit point missing");
    };
    auto find_cp = [&]() {
      for (int i = 0; i < n; ++i)
        if (pts[i].orbit_index == -1 || (periodic && pts[i].name == "cp"))
          return i + 1;
      throw Error("InternalError", "critical point missing");
    };

    Angle t0 = m.theta.half();
    for (int flip = 0; flip < 2; ++flip) {        // arc <-> sheet assignment
      auto digit = [&](const Angle& x) -> int {
        bool upper = in_upper_arc(t0, x);
        return (upper == (flip == 0)) ? 0 : 1;
      };
      for (int place = 0; place < 2; ++place) {   // critical restriction slot
        WreathRecursion r;
        for (auto& p : pts) r.base.punctures.push_back(p.name);
        r.degree = 2;
        r.sigma.assign(n, Perm{0, 1});
        r.rest.assign(n, std::vector<Word>(2));
        std::vector<std::pair<int, int>> expected(n, {0, 1});

        bool ok = true;
        for (int i = 0; i < n && ok; ++i) {
          const Pt& p = pts[i];
          int self = i + 1;
          if (p.orbit_index == -2) continue;  // infinity: from the relation
          if (p.orbit_index == -1) {
            // strictly preperiodic critical point: unmarked regular preimages
            expected[i] = {find_by_orbit(0), 2};
            continue;
          }
          int oi = p.orbit_index;
          int img_oi = oi + 1 < k ? oi + 1 : (periodic ? 0 : m.preperiod);
          expected[i] = {find_by_orbit(img_oi), 1};

          if (oi == 0) {
            // critical value: transposition, restriction = critical point
            r.sigma[i] = Perm{1, 0};
            Word w{find_cp()};
            r.rest[i][place] = w;
            if (periodic) expected[find_cp() - 1] = {self, 2};
            continue;
          }
          r.sigma[i] = Perm{0, 1};
          // marked preimages: points whose doubled angle equals p.angle
          for (int j = 0; j < n; ++j) {
            const Pt& q = pts[j];
            if (q.orbit_index < 0) continue;
            if (q.angle.doubled() == p.angle) {
              int dgt = digit(q.angle);
              if (!r.rest[i][dgt].empty()) { ok = false; break; }
              r.rest[i][dgt] = Word{j + 1};
              expected[j] = {self, 1};
            }
          }
        }
        if (!ok) continue;
        if (periodic) {
          int cp = find_cp(), v = find_by_orbit(0);
          expected[cp - 1] = {v, 2};
        }
        // infinity fixed, totally ramified
        {
          int inf = n;
          expected[inf - 1] = {inf, 2};
          WreathElement acc = WreathElement::identity(2);
          for (int i = 0; i < n - 1; ++i) {
            WreathElement e;
            e.sigma = r.sigma[i];
            e.rest = r.rest[i];
            acc = acc * e;
          }
          WreathElement einf = acc.inverse();
          if (einf.sigma != Perm{1, 0}) continue;
          r.sigma[inf - 1] = einf.sigma;
          r.rest[inf - 1] = einf.rest;
        }
        Candidate c{r, expected};
        if (certify(c, true)) return c.r;
      }
    }
  }
  throw Error("InternalError",
              "no valid recursion for angle " + std::to_string(num) + "/" +
                  std::to_string(den));
}

namespace {

// lift closure of a curve class: all essential classes reachable through
// iterated preimages, with the edge list; empty result = budget blown or
// degenerate structure on the way
struct CurveOrbit {
  std::vector<ConjClass> classes;
  std::vector<std::array<int, 3>> edges;  // from, to, degree
  bool complete = false;
};

CurveOrbit curve_orbit(const WreathRecursion& r, const ConjClass& seed,
                       size_t cap = 48) {
  CurveOrbit orb;
  auto index_of = [&](const ConjClass& c) -> int {
    for (size_t i = 0; i < orb.classes.size(); ++i)
      if (orb.classes[i] == c) return static_cast<int>(i);
    return -1;
  };
  orb.classes.push_back(seed);
  for (size_t head = 0; head < orb.classes.size(); ++head) {
    if (orb.classes.size() > cap) return orb;
    ConjClass cur = orb.classes[head];
    for (auto& l : lift_loop(r, cur)) {
      if (l.cls.trivial() || is_peripheral(r.base, l.cls)) continue;
      try {
        (void)side_partition(r.base, l.cls);
      } catch (const Error&) {
        return orb;  // non-simple witness: reject the whole candidate
      }
      int to = index_of(l.cls);
      if (to < 0) {
        to = static_cast<int>(orb.classes.size());
        orb.classes.push_back(l.cls);
      }
      orb.edges.push_back({static_cast<int>(head), to, l.degree});
    }
  }
  orb.complete = true;
  return orb;
}

}  // namespace

namespace {

// Does the recursion carry an invariant multicurve with a replicating
// (bicycle) strongly connected component free of Levy cycles? Returns the
// generating curve on success.
std::optional<ConjClass> find_bicycle(const WreathRecursion& r) {
  const int n = r.n();
  std::vector<ConjClass> starters;
  for (int i = 1; i <= n; ++i)
    for (int j = i + 1; j <= n; ++j) {
      Word w = concat(r.base.peripheral(i), r.base.peripheral(j));
      ConjClass c = conj_class(w);
      if (c.trivial() || is_peripheral(r.base, c)) continue;
      starters.push_back(c);
    }
  for (auto& seed : starters) {
    try {
      (void)side_partition(r.base, seed);
    } catch (const Error&) {
      continue;
    }
    CurveOrbit orb = curve_orbit(r, seed);
    if (!orb.complete || orb.classes.size() < 2) continue;
    // laminarity of the whole closure, else the input is junk
    bool ok = true;
    std::vector<CurveClass> cc;
    try {
      for (auto& c : orb.classes) cc.push_back(make_curve(r.base, c));
      MultiCurve mc(r.base, cc);
      if (mc.size() != orb.classes.size()) ok = false;
    } catch (const Error&) {
      ok = false;
    }
    if (!ok) continue;
    // strongly connected component structure on the closure
    CurveLiftGraph g;
    {
      std::vector<CurveClass> sorted = cc;
      g.vertices = MultiCurve(r.base, sorted);
      for (auto& e : orb.edges)
        g.edges.push_back({g.vertices.index_of(orb.classes[e[0]]),
                           g.vertices.index_of(orb.classes[e[1]]), e[2]});
    }
    if (has_levy_cycle(g)) continue;
    auto scc = classify_scc(g);
    for (auto& comp : scc.components)
      if (comp.bicycle) return seed;
  }
  return std::nullopt;
}

}  // namespace

WreathRecursion cantor_bicycle_map() {
  // An annular horseshoe glued between two end pieces: the quotient
  // segment carries an interval folding, so the gluing annulus replicates
  // over itself with both branches of degree 2. As a Thurston map this is
  // obstructed but still expanding (the Levy-free (2,2) pattern), which is
  // exactly the setting where curves replicate. Marked structure, degree 4:
  //   a  fixed end, degree 2          m  fixed point beside a, degree 1
  //   b  far end, b -> a, degree 2    v1, v2 -> b, degree 1 (fold values)
  //   k1 -> v1, k2 -> v2, degree 3    (fold critical points)
  // Preimage shapes force sigma_v1, sigma_v2 of type (3,1) composing to the
  // (2,2) shape of sigma_a; the loops around k1, k2 act trivially. The
  // restriction words are found by search, certified by validation, a
  // finite nucleus, and an invariant multicurve with a replicating
  // strongly connected component.
  const int d = 4;
  const Perm id4{0, 1, 2, 3};
  const Perm sv1{1, 2, 0, 3};  // (012)
  const Perm sv2{3, 1, 0, 2};  // (032)
  Perm sa(4);                  // (sv1 o sv2)^-1 = (03)(12)
  {
    Perm prod(4);
    for (int s = 0; s < 4; ++s) prod[s] = sv1[sv2[s]];
    for (int s = 0; s < 4; ++s) sa[prod[s]] = s;
  }

  // punctures: a m b v1 k1 v2 k2 (the k loops have trivial wreath image,
  // so only the circular order of the other five matters)
  SpherePresentation P;
  P.punctures = {"a", "m", "b", "v1", "k1", "v2", "k2"};
  const int ia = 1, im = 2, ib = 3, iv1 = 4, ik1 = 5, iv2 = 6, ik2 = 7;
  std::vector<std::pair<int, int>> expected{
      {ia, 2}, {im, 1}, {ia, 2}, {ib, 1}, {iv1, 3}, {ib, 1}, {iv2, 3}};

  std::vector<Word> conjs{{}};
  for (int g = 1; g <= 6; ++g) {
    conjs.push_back({g});
    conjs.push_back({-g});
  }

  const Word Xk2 = P.peripheral(ik2);  // eliminated generator, expanded

  for (int pass = 0; pass < 2; ++pass) {
    std::vector<Word> cset = pass == 0 ? std::vector<Word>{{}} : conjs;
    for (int m_slot = 0; m_slot < d; ++m_slot)
      for (int b1_slot = 0; b1_slot < d; ++b1_slot)
        for (int b2_slot = 0; b2_slot < d; ++b2_slot) {
          if (b1_slot == b2_slot) continue;
          for (auto& cm : cset)
            for (auto& u0 : conjs)
              for (auto& u1 : conjs)
                for (auto& w0 : conjs)
                  for (auto& w3 : conjs) {
                    WreathElement em = WreathElement::identity(d);
                    em.rest[m_slot] = conjugate(cm, {im});
                    WreathElement eb = WreathElement::identity(d);
                    eb.rest[b1_slot] = Word{iv1};
                    eb.rest[b2_slot] = Word{iv2};
                    // v1 on the 3-cycle [0,1,2]: product u2 u1 u0 ~ x_k1
                    WreathElement ev1;
                    ev1.sigma = sv1;
                    Word u2 = concat(Word{ik1}, inverse(concat(u1, u0)));
                    if (u2.size() > 4) continue;
                    ev1.rest = {u0, u1, u2, Word{}};
                    // v2 on the 3-cycle [0,3,2]: product w2 w3 w0 ~ x_k2
                    WreathElement ev2;
                    ev2.sigma = sv2;
                    Word w2 = concat(Xk2, inverse(concat(w3, w0)));
                    if (w2.size() > 9) continue;
                    ev2.rest = {w0, Word{}, w2, w3};

                    // relation in the listed puncture order pins x_a
                    WreathElement ea =
                        (em * eb * ev1 * ev2).inverse();
                    if (ea.sigma != sa) continue;
                    bool small = true;
                    for (auto& w : ea.rest)
                      if (w.size() > 8) small = false;
                    if (!small) continue;

                    WreathRecursion r;
                    r.base = P;
                    r.degree = d;
                    r.sigma.assign(7, id4);
                    r.rest.assign(7, std::vector<Word>(d));
                    r.sigma[ia - 1] = ea.sigma;
                    r.rest[ia - 1] = ea.rest;
                    r.sigma[im - 1] = em.sigma;
                    r.rest[im - 1] = em.rest;
                    r.sigma[ib - 1] = eb.sigma;
                    r.rest[ib - 1] = eb.rest;
                    r.sigma[iv1 - 1] = ev1.sigma;
                    r.rest[iv1 - 1] = ev1.rest;
                    r.sigma[iv2 - 1] = ev2.sigma;
                    r.rest[iv2 - 1] = ev2.rest;

                    Candidate c{r, expected};
                    if (!certify(c, true)) continue;
                    if (find_bicycle(c.r)) return c.r;
                  }
        }
  }
  throw Error("InternalError", "cantor bicycle search failed");
}

WreathRecursion carpet_model_map() {
  // two fixed critical points p, q and a marked 2-cycle r <-> s, degree 2;
  // restriction words found by search under the no-recurrence filter
  // imposed in the cluster tests.
  SpherePresentation P;
  P.punctures = {"p", "q", "r", "s"};
  const Perm swap{1, 0};
  const Perm id{0, 1};

  std::vector<Word> cands{{}};
  for (int g = 1; g <= 3; ++g) {
    cands.push_back({g});
    cands.push_back({-g});
  }
  for (int g = 1; g <= 3; ++g)
    for (int h = 1; h <= 3; ++h)
      for (int sg : {1, -1})
        for (int sh : {1, -1}) {
          Word w = reduce({sg * g, sh * h});
          if (w.size() == 2) cands.push_back(w);
        }

  std::vector<std::pair<int, int>> expected{{1, 2}, {2, 2}, {4, 1}, {3, 1}};

  for (auto& wp : cands)          // x_p = swap (wp0, wp1), product ~ x_p
    for (int pp = 0; pp < 2; ++pp)
      for (auto& wq : cands)      // x_q similarly
        for (int pq = 0; pq < 2; ++pq)
          for (auto& wr : cands)  // x_r: one slot ~ x_s
            for (int pr = 0; pr < 2; ++pr) {
              WreathRecursion r;
              r.base = P;
              r.degree = 2;
              r.sigma = {swap, swap, id, id};
              r.rest.assign(4, std::vector<Word>(2));
              r.rest[0][pp] = conjugate(wp, {1});
              r.rest[1][pq] = conjugate(wq, {2});
              r.rest[2][pr] = conjugate(wr, P.peripheral(4));
              // relation pins x_s's slots
              WreathElement acc = WreathElement::identity(2);
              for (int i = 0; i < 3; ++i) {
                WreathElement e;
                e.sigma = r.sigma[i];
                e.rest = r.rest[i];
                acc = acc * e;
              }
              WreathElement es = acc.inverse();
              if (es.sigma != id) continue;
              bool small = true;
              for (auto& w : es.rest)
                if (w.size() > 4) small = false;
              if (!small) continue;
              r.rest[3] = es.rest;
              Candidate c{r, expected};
              if (!certify(c, true)) continue;
              return c.r;
            }
  throw Error("InternalError", "carpet model search failed");
}

WreathRecursion corpus_map(const std::string& name) {
  if (name == "z2") return quadratic_from_angle(0, 1);
  if (name == "basilica") return quadratic_from_angle(1, 3);
  if (name == "rabbit") return quadratic_from_angle(1, 7);
  if (name == "z2i") return quadratic_from_angle(1, 6);
  if (name == "chebyshev") return quadratic_from_angle(1, 2);
  if (name == "cantor_bicycle") return cantor_bicycle_map();
  if (name == "carpet_model") return carpet_model_map();
  throw Error("IOError", "unknown corpus map '" + name + "'");
}

std::vector<std::string> corpus_names() {
  return {"z2", "basilica", "rabbit", "z2i", "chebyshev", "cantor_bicycle",
          "carpet_model"};
}

}  // namespace crochet
