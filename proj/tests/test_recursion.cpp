#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "crochet/oracle.hpp"
#include "crochet/recursion.hpp"

using namespace crochet;

namespace {

Word random_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> gen(1, rank), sign(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    w.push_back(sign(rng) ? g : -g);
  }
  return w;
}

int idx(const WreathRecursion& r, const std::string& name) {
  return r.base.index_of(name);
}

}  // namespace

TEST_CASE("power map z^2") {
  auto r = corpus_map("z2");
  auto v = validate(r);
  int cp = idx(r, "cp"), inf = idx(r, "inf");
  CHECK(v.dynamics.image[cp - 1] == cp);
  CHECK(v.dynamics.local_degree[cp - 1] == 2);
  CHECK(v.dynamics.image[inf - 1] == inf);
  CHECK(v.dynamics.a_infinity == std::vector<int>{cp, inf});

  auto lifts = lift_loop(r, conj_class({cp}));
  REQUIRE(lifts.size() == 1);
  CHECK(lifts[0].degree == 2);
  CHECK(lifts[0].cls == conj_class({cp}));

  // lift of the trivial class: d trivial classes
  auto tl = lift_loop(r, conj_class({}));
  CHECK(tl.size() == 2);
  for (auto& l : tl) CHECK(l.cls.trivial());

  // nucleus of z^2 is {1, x, x^-1}
  auto nuc = nucleus_bound(r, SearchBudget{});
  REQUIRE(nuc.has_value());
  CHECK(nuc->size() == 3);

  // zero budget is exhausted
  CHECK(!nucleus_bound(r, SearchBudget(48, 0)).has_value());
}

TEST_CASE("basilica dynamics") {
  auto r = corpus_map("basilica");
  auto v = validate(r);
  int cp = idx(r, "cp"), vv = idx(r, "v"), inf = idx(r, "inf");
  // critical point and value swap, infinity is fixed
  CHECK(v.dynamics.image[cp - 1] == vv);
  CHECK(v.dynamics.image[vv - 1] == cp);
  CHECK(v.dynamics.image[inf - 1] == inf);
  CHECK(v.dynamics.local_degree[cp - 1] == 2);
  CHECK(v.dynamics.a_infinity == std::vector<int>{vv, cp, inf});
  CHECK(v.dynamics.period.at(cp) == 2);
  CHECK(v.dynamics.return_degree(cp) == 2);

  auto nuc = nucleus_bound(r, SearchBudget{});
  CHECK(nuc.has_value());
}

TEST_CASE("corpus validates") {
  for (auto& name : corpus_names()) {
    CAPTURE(name);
    auto r = corpus_map(name);
    CHECK_NOTHROW((void)validate(r));
  }
}

TEST_CASE("corpus marked dynamics") {
  auto rab = corpus_map("rabbit");
  auto vr = validate(rab);
  int cp = idx(rab, "cp");
  CHECK(vr.dynamics.period.at(cp) == 3);
  CHECK(vr.dynamics.return_degree(cp) == 2);

  auto che = corpus_map("chebyshev");
  auto vc = validate(che);
  // only infinity is a Fatou point; the interval endpoints stay in the Julia set
  CHECK(vc.dynamics.a_infinity == std::vector<int>{idx(che, "inf")});
  CHECK(vc.dynamics.image[idx(che, "cp") - 1] == idx(che, "v"));
  CHECK(vc.dynamics.image[idx(che, "v") - 1] == idx(che, "fv"));
  CHECK(vc.dynamics.image[idx(che, "fv") - 1] == idx(che, "fv"));

  auto z2i = corpus_map("z2i");
  auto vz = validate(z2i);
  CHECK(vz.dynamics.a_infinity == std::vector<int>{idx(z2i, "inf")});
  CHECK(vz.dynamics.orbit_period(idx(z2i, "v")) == 2);
  CHECK(vz.dynamics.orbit_preperiod(idx(z2i, "v")) == 1);
}

TEST_CASE("mutation triggers a named violation") {
  for (auto& name : {"z2", "basilica", "rabbit", "z2i", "chebyshev"}) {
    auto r = corpus_map(name);
    for (int i = 0; i < r.n(); ++i) {
      for (int s = 0; s < r.degree; ++s) {
        WreathRecursion bad = r;
        bad.rest[i][s] = concat(bad.rest[i][s], Word{1});
        CHECK_THROWS_AS((void)validate(bad), const Error&);
      }
    }
  }
}

TEST_CASE("riemann-hurwitz violation") {
  auto r = corpus_map("z2");
  WreathRecursion bad = r;
  // make every permutation trivial: relation still holds, branching is wrong
  for (auto& s : bad.sigma) {
    s = Perm(bad.degree);
    for (int i = 0; i < bad.degree; ++i) s[i] = i;
  }
  for (auto& rs : bad.rest) rs.assign(bad.degree, Word{});
  try {
    (void)validate(bad);
    CHECK(false);
  } catch (const Error& e) {
    CHECK((e.kind == "RiemannHurwitzViolation" || e.kind == "DisconnectedCover"));
  }
}

TEST_CASE("lift conservation and functoriality") {
  std::mt19937 rng(2024);
  for (auto& name : {"z2", "basilica", "rabbit", "z2i", "chebyshev"}) {
    auto r = corpus_map(name);
    auto rr = compose(r, r);
    const int rank = r.n() - 1;
    for (int t = 0; t < 60; ++t) {
      ConjClass c = conj_class(random_word(rng, rank, 1 + t % 7));
      auto lifts = lift_loop(r, c);
      int total = 0;
      for (auto& l : lifts) total += l.degree;
      CHECK(total == r.degree);

      // depth 2 equals lifting through the composed recursion
      std::multiset<std::pair<Word, int>> twice, comp;
      for (auto& l : lifts)
        for (auto& l2 : lift_loop(r, l.cls))
          twice.insert({l2.cls.canon, l.degree * l2.degree});
      for (auto& l : lift_loop(rr, c)) comp.insert({l.cls.canon, l.degree});
      CHECK(twice == comp);
    }
  }
}

TEST_CASE("peripheral lifts match the marked dynamics") {
  for (auto& name : {"basilica", "rabbit", "z2i", "chebyshev"}) {
    auto r = corpus_map(name);
    auto v = validate(r);
    for (int a = 1; a <= r.n(); ++a) {
      auto lifts = lift_loop(r, conj_class(r.base.peripheral(a)));
      std::map<int, int> seen;  // marked preimage -> degree
      for (auto& l : lifts) {
        if (l.cls.trivial()) continue;
        auto per = is_peripheral(r.base, l.cls);
        REQUIRE(per.has_value());
        seen[per->first] = l.degree;
      }
      for (int b = 1; b <= r.n(); ++b) {
        if (v.dynamics.image[b - 1] == a) {
          REQUIRE(seen.count(b));
          CHECK(seen[b] == v.dynamics.local_degree[b - 1]);
        }
      }
    }
  }
}

TEST_CASE("arc lifting") {
  auto r = corpus_map("z2");
  auto v = validate(r);
  int cp = idx(r, "cp"), inf = idx(r, "inf");

  ArcClass arc{cp, inf, {}};
  auto lifts = lift_arc(r, v, arc);
  CHECK(lifts.size() == 2);  // output size = degree, counting multiplicity
  for (auto& l : lifts) {
    CHECK(l.from.marked == cp);
    CHECK(l.to.marked == inf);
  }

  // decorated arcs have the same normalized lift set
  auto r2 = corpus_map("basilica");
  auto v2 = validate(r2);
  int b_cp = idx(r2, "cp"), b_v = idx(r2, "v");
  ArcClass plain = arc_normalize(r2.base, ArcClass{b_cp, b_v, {}});
  Word dec = concat(concat(power(r2.base.peripheral(b_cp), 2), plain.w),
                    power(r2.base.peripheral(b_v), -1));
  ArcClass fancy{b_cp, b_v, dec};
  auto set_of = [&](const ArcClass& a) {
    std::multiset<std::pair<std::pair<int, int>, Word>> s;
    for (auto& l : lift_arc(r2, v2, arc_normalize(r2.base, a))) {
      if (!(l.from.marked && l.to.marked)) continue;
      ArcClass n =
          arc_normalize(r2.base, ArcClass{l.from.marked, l.to.marked, l.w});
      s.insert({{n.a, n.b}, n.w});
    }
    return s;
  };
  CHECK(set_of(plain) == set_of(fancy));
}

TEST_CASE("json round trip") {
  for (auto& name : corpus_names()) {
    auto r = corpus_map(name);
    std::string txt = recursion_to_json(r);
    auto r2 = parse_recursion(txt);
    CHECK(recursion_to_json(r2) == txt);
    CHECK_NOTHROW((void)validate(r2));
  }
}
