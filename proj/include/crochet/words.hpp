#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

// Word and conjugacy arithmetic in the fundamental group of a punctured
// sphere. Generators are the peripheral loops x_1..x_n with the single
// relation x_1 x_2 ... x_n = 1; stored words live in the free group on
// x_1..x_{n-1}, the last generator being rewritten through the relation.

namespace crochet {

struct Error : std::runtime_error {
  std::string kind;
  Error(std::string k, const std::string& msg)
      : std::runtime_error(k + ": " + msg), kind(std::move(k)) {}
};

// Signed 1-based generator index; -i denotes the inverse of x_i.
using Gen = int;

// Freely reduced word. The empty word is the identity.
using Word = std::vector<Gen>;

Word reduce(Word w);
Word concat(const Word& u, const Word& v);
Word inverse(const Word& w);
Word conjugate(const Word& u, const Word& w);  // u w u^-1
Word power(const Word& w, int k);

// Total order on letters used for every lexicographic tie-break:
// x_1 < x_1^-1 < x_2 < x_2^-1 < ...
inline int letter_key(Gen g) { return 2 * (std::abs(g) - 1) + (g < 0 ? 1 : 0); }
bool word_less(const Word& a, const Word& b);

std::string word_str(const Word& w);

struct SpherePresentation {
  std::vector<std::string> punctures;  // size n >= 2, unique names

  int n() const { return static_cast<int>(punctures.size()); }
  // x_n rewritten in the free basis: (x_1 ... x_{n-1})^-1.
  Word last_generator() const;
  // Peripheral word of puncture i (1-based); free basis for i == n.
  Word peripheral(int i) const;
  // Rewrites occurrences of +-n into the free basis and reduces.
  Word to_free_basis(const Word& w) const;
  int index_of(const std::string& name) const;
};

// Canonical cyclic word: lexicographically least rotation among the
// cyclically reduced word and its inverse. Classes are unoriented.
struct ConjClass {
  Word canon;

  bool operator==(const ConjClass& o) const { return canon == o.canon; }
  bool operator!=(const ConjClass& o) const { return canon != o.canon; }
  bool operator<(const ConjClass& o) const;
  bool trivial() const { return canon.empty(); }
};

ConjClass conj_class(const Word& w);

// (puncture index, exponent) if the class is x_a^k, k != 0. Classes are
// unoriented, so the exponent is reported positive.
std::optional<std::pair<int, int>> is_peripheral(const SpherePresentation& P,
                                                 const ConjClass& c);

// Oriented variant on words: w is conjugate to x_a^k as written (no
// inversion). Distinguishes x_n from x_n^-1; exponent may be negative.
std::optional<std::pair<int, int>> oriented_peripheral(
    const SpherePresentation& P, const Word& w);

// Two-block partition of the punctures by the sides of a simple curve.
struct SidePartition {
  std::vector<int> block;   // sorted puncture indices, min element rule
  std::vector<int> coblock; // the complementary block, sorted

  bool operator==(const SidePartition& o) const {
    return block == o.block && coblock == o.coblock;
  }
  bool essential() const { return block.size() >= 2 && coblock.size() >= 2; }
  bool contains_side(const std::vector<int>& s) const {
    return block == s || coblock == s;
  }
};

// Requires a class with a simple representative (maintained invariant);
// throws Error{"NonSimpleWitness"} when the exponent-sum vector is not the
// indicator of a block up to global sign and the relation.
SidePartition side_partition(const SpherePresentation& P, const ConjClass& c);

// Exponent sums over all n peripheral coordinates (x_n column fixed to 0).
std::vector<long long> exponent_vector(const SpherePresentation& P, const Word& w);

// Laminarity of two partitions: nested or disjoint on some side choice.
bool laminar(const SidePartition& p, const SidePartition& q);

struct WordHash {
  size_t operator()(const Word& w) const {
    size_t h = 1469598103934665603ull;
    for (Gen g : w) {
      h ^= static_cast<size_t>(g * 2654435761u + 0x9e3779b9u);
      h *= 1099511628211ull;
    }
    return h;
  }
};

}  // namespace crochet
