#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "crochet/recursion.hpp"
#include "crochet/stallings.hpp"
#include "crochet/words.hpp"

using namespace crochet;

namespace {

SpherePresentation sphere(int n) {
  SpherePresentation P;
  for (int i = 1; i <= n; ++i) P.punctures.push_back("p" + std::to_string(i));
  return P;
}

// brute-force stack reduction, kept independent of reduce()
Word naive_reduce(const Word& w) {
  Word cur = w;
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i + 1 < cur.size(); ++i) {
      if (cur[i] == -cur[i + 1]) {
        cur.erase(cur.begin() + i, cur.begin() + i + 2);
        changed = true;
        break;
      }
    }
  }
  return cur;
}

Word random_word(std::mt19937& rng, int rank, int len) {
  std::uniform_int_distribution<int> gen(1, rank), sign(0, 1);
  Word w;
  for (int i = 0; i < len; ++i) {
    int g = gen(rng);
    w.push_back(sign(rng) ? g : -g);
  }
  return w;
}

}  // namespace

TEST_CASE("free reduction") {
  CHECK(reduce({1, 2, -2}) == Word{1});
  CHECK(reduce({}) == Word{});
  CHECK(reduce({1, 1, -1, 2}) == naive_reduce({1, 1, -1, 2}));
  std::mt19937 rng(7);
  for (int i = 0; i < 500; ++i) {
    Word w = random_word(rng, 4, i % 23);
    CHECK(reduce(w) == naive_reduce(w));
  }
}

TEST_CASE("conjugacy classes") {
  CHECK(conj_class({2, 1, -2}) == conj_class({1}));
  CHECK(conj_class({1, 2}) == conj_class({2, 1}));
  CHECK(conj_class({1, 2}) == conj_class(inverse({1, 2})));
  std::mt19937 rng(11);
  for (int i = 0; i < 1000; ++i) {
    Word w = random_word(rng, 3, 1 + i % 9);
    Word u = random_word(rng, 3, i % 7);
    CHECK(conj_class(conjugate(u, w)) == conj_class(w));
    CHECK(conj_class(inverse(w)) == conj_class(w));
  }
}

TEST_CASE("peripheral recognition") {
  auto P = sphere(4);
  auto per = is_peripheral(P, conj_class({3, 3}));
  REQUIRE(per.has_value());
  CHECK(per->first == 3);
  CHECK(per->second == 2);
  CHECK(!is_peripheral(P, conj_class({1, 2})));
  // x_n expressed through the relation
  auto pn = is_peripheral(P, conj_class(P.last_generator()));
  REQUIRE(pn.has_value());
  CHECK(pn->first == 4);
  CHECK(pn->second == 1);
  auto pn2 = is_peripheral(P, conj_class(power(P.last_generator(), -2)));
  REQUIRE(pn2.has_value());
  CHECK(pn2->first == 4);
  CHECK(pn2->second == 2);
}

TEST_CASE("side partitions") {
  auto P = sphere(4);
  auto sp = side_partition(P, conj_class({1, 2}));
  CHECK(sp.block == std::vector<int>{1, 2});
  CHECK(sp.coblock == std::vector<int>{3, 4});
  CHECK(sp.essential());

  auto pp = side_partition(P, conj_class({1}));
  CHECK(pp.block == std::vector<int>{1});
  CHECK(!pp.essential());

  // conjugation does not change sides
  auto sp2 = side_partition(P, conj_class(conjugate({3, -1}, {1, 2})));
  CHECK(sp2 == sp);

  CHECK_THROWS_AS((void)side_partition(P, conj_class({1, 2, 1, -2})),
                  const Error&);

  // n = 2 degenerate sphere: only peripheral classes
  auto P2 = sphere(2);
  auto p2 = side_partition(P2, conj_class({1}));
  CHECK(p2.block == std::vector<int>{1});
  CHECK(p2.coblock == std::vector<int>{2});
}

TEST_CASE("laminarity") {
  SidePartition p{{1, 2}, {3, 4, 5}};
  SidePartition q{{3, 4}, {1, 2, 5}};
  SidePartition r{{1, 3}, {2, 4, 5}};
  CHECK(laminar(p, q));
  CHECK(!laminar(p, r));
  CHECK(laminar(p, p));
}

TEST_CASE("arc normalization") {
  auto P = sphere(4);
  // peripheral absorption at both endpoints
  ArcClass a{1, 2, reduce({1, 1, 1, 3, -2})};
  auto na = arc_normalize(P, a);
  CHECK(na.w == Word{3});
  // self arc with only peripheral content is trivial
  ArcClass b{2, 2, {2}};
  CHECK(arc_normalize(P, b).w == Word{});
  // idempotent and decoration-invariant (fuzz)
  std::mt19937 rng(3);
  for (int i = 0; i < 400; ++i) {
    int ea = 1 + i % 4, eb = 1 + (i / 4) % 4;
    Word w = random_word(rng, 3, i % 8);
    ArcClass base{ea, eb, w};
    auto nb = arc_normalize(P, base);
    CHECK(arc_normalize(P, nb) == nb);
    std::uniform_int_distribution<int> tw(-3, 3);
    Word dec = concat(concat(power(P.peripheral(ea), tw(rng)), w),
                      power(P.peripheral(eb), tw(rng)));
    CHECK(arc_normalize(P, ArcClass{ea, eb, dec}) == nb);
  }
}

TEST_CASE("folded graphs") {
  FoldedGraph g = FoldedGraph::subgroup({{1}, {2, 1, -2}});
  CHECK(g.contains({1}));
  CHECK(g.contains({2, 1, -2}));
  CHECK(g.contains(reduce({1, 2, 1, -2})));
  CHECK(!g.contains({2}));
  CHECK(!g.contains({1, 2}));

  FoldedGraph t = FoldedGraph::subgroup({});
  CHECK(t.trivial_subgroup());
  CHECK(t.contains({}));
  CHECK(!t.contains({1}));
}

TEST_CASE("double coset search") {
  // <x1> w <x2>: exact strip for single letters
  Word w = reduce({1, 1, 3, 2, 2});
  Word c = double_coset_canon({{1}}, w, {{2}});
  CHECK(c == Word{3});
  CHECK(double_coset_contains({{1}}, w, {{2}}, {3}));
  CHECK(!double_coset_contains({{1}}, w, {{2}}, {-3}));
}
