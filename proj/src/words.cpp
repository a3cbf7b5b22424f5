#include "crochet/words.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace crochet {

Word reduce(Word w) {
  Word out;
  out.reserve(w.size());
  for (Gen g : w) {
    if (g == 0) throw Error("MalformedWord", "zero letter");
    if (!out.empty() && out.back() == -g)
      out.pop_back();
    else
      out.push_back(g);
  }
  return out;
}

Word concat(const Word& u, const Word& v) {
  Word w = u;
  w.insert(w.end(), v.begin(), v.end());
  return reduce(std::move(w));
}

Word inverse(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (auto it = w.rbegin(); it != w.rend(); ++it) out.push_back(-*it);
  return out;
}

Word conjugate(const Word& u, const Word& w) {
  return concat(concat(u, w), inverse(u));
}

Word power(const Word& w, int k) {
  Word out;
  Word base = k < 0 ? inverse(w) : w;
  for (int i = 0; i < std::abs(k); ++i) out = concat(out, base);
  return out;
}

bool word_less(const Word& a, const Word& b) {
  size_t m = std::min(a.size(), b.size());
  for (size_t i = 0; i < m; ++i) {
    int ka = letter_key(a[i]), kb = letter_key(b[i]);
    if (ka != kb) return ka < kb;
  }
  return a.size() < b.size();
}

std::string word_str(const Word& w) {
  if (w.empty()) return "1";
  std::ostringstream os;
  for (Gen g : w) {
    os << 'x' << std::abs(g);
    if (g < 0) os << '\'';
  }
  return os.str();
}

Word SpherePresentation::last_generator() const {
  Word w;
  for (int i = n() - 1; i >= 1; --i) w.push_back(-i);
  return w;
}

Word SpherePresentation::peripheral(int i) const {
  if (i < 1 || i > n()) throw Error("MalformedWord", "puncture out of range");
  if (i == n()) return last_generator();
  return Word{i};
}

Word SpherePresentation::to_free_basis(const Word& w) const {
  Word out;
  const Word ln = last_generator();
  for (Gen g : w) {
    if (std::abs(g) > n() || g == 0)
      throw Error("MalformedWord", "letter out of range");
    if (std::abs(g) == n()) {
      Word piece = g > 0 ? ln : inverse(ln);
      out.insert(out.end(), piece.begin(), piece.end());
    } else {
      out.push_back(g);
    }
  }
  return reduce(std::move(out));
}

int SpherePresentation::index_of(const std::string& name) const {
  for (int i = 0; i < n(); ++i)
    if (punctures[i] == name) return i + 1;
  throw Error("IOError", "unknown puncture '" + name + "'");
}

static Word cyclic_reduce(Word w) {
  w = reduce(std::move(w));
  size_t i = 0, j = w.size();
  while (j > i + 1 && w[i] == -w[j - 1]) { ++i; --j; }
  return Word(w.begin() + i, w.begin() + j);
}

static Word least_rotation(const Word& w) {
  if (w.empty()) return w;
  Word best = w;
  Word cur = w;
  for (size_t i = 1; i < w.size(); ++i) {
    std::rotate(cur.begin(), cur.begin() + 1, cur.end());
    if (word_less(cur, best)) best = cur;
  }
  return best;
}

bool ConjClass::operator<(const ConjClass& o) const {
  return word_less(canon, o.canon);
}

ConjClass conj_class(const Word& w) {
  Word c = cyclic_reduce(w);
  Word a = least_rotation(c);
  Word b = least_rotation(inverse(c));
  return ConjClass{word_less(a, b) ? a : b};
}

std::optional<std::pair<int, int>> is_peripheral(const SpherePresentation& P,
                                                 const ConjClass& c) {
  if (c.canon.empty()) return std::nullopt;
  bool same = true;
  for (Gen g : c.canon)
    if (g != c.canon[0]) { same = false; break; }
  if (same) {
    // classes are unoriented, so the reported exponent is positive
    int k = static_cast<int>(c.canon.size());
    return std::make_pair(std::abs(c.canon[0]), k);
  }
  // x_n^k expands to a word of length k(n-1) in the free basis
  int m = P.n() - 1;
  if (m >= 2 && c.canon.size() % m == 0) {
    int k = static_cast<int>(c.canon.size()) / m;
    if (conj_class(power(P.last_generator(), k)) == c)
      return std::make_pair(P.n(), k);
  }
  return std::nullopt;
}

std::optional<std::pair<int, int>> oriented_peripheral(
    const SpherePresentation& P, const Word& w) {
  Word u = cyclic_reduce(w);
  if (u.empty()) return std::nullopt;
  const int n = P.n();
  bool same = true;
  for (Gen g : u)
    if (g != u[0]) { same = false; break; }
  if (same) {
    int a = std::abs(u[0]);
    int k = static_cast<int>(u.size());
    if (u[0] < 0) k = -k;
    if (n == 2 && u[0] < 0) return std::make_pair(2, -k);  // x_2 = x_1^-1
    return std::make_pair(a, k);
  }
  const int m = n - 1;
  if (m >= 2 && u.size() % m == 0) {
    int k = static_cast<int>(u.size()) / m;
    for (int s : {k, -k}) {
      Word target = power(P.last_generator(), s);
      for (size_t rot = 0; rot < target.size(); ++rot) {
        if (u == target) return std::make_pair(n, s);
        std::rotate(target.begin(), target.begin() + 1, target.end());
      }
    }
  }
  return std::nullopt;
}

std::vector<long long> exponent_vector(const SpherePresentation& P, const Word& w) {
  std::vector<long long> e(P.n(), 0);
  for (Gen g : w) e[std::abs(g) - 1] += g > 0 ? 1 : -1;
  return e;
}

SidePartition side_partition(const SpherePresentation& P, const ConjClass& c) {
  const int n = P.n();
  if (auto per = is_peripheral(P, c)) {
    SidePartition sp;
    sp.block = {per->first};
    for (int i = 1; i <= n; ++i)
      if (i != per->first) sp.coblock.push_back(i);
    return sp;
  }
  if (c.trivial())
    throw Error("NonSimpleWitness", "trivial class has no sides");
  auto e = exponent_vector(P, c.canon);
  long long lo = *std::min_element(e.begin(), e.end());
  long long hi = *std::max_element(e.begin(), e.end());
  if (hi - lo != 1)
    throw Error("NonSimpleWitness",
                "exponent vector of " + word_str(c.canon) +
                    " is not an indicator up to sign");
  SidePartition sp;
  for (int i = 0; i < n; ++i)
    (e[i] == hi ? sp.block : sp.coblock).push_back(i + 1);
  if (sp.coblock.empty() || sp.block.empty())
    throw Error("NonSimpleWitness", "degenerate side partition");
  if (sp.block[0] > sp.coblock[0]) std::swap(sp.block, sp.coblock);
  return sp;
}

bool laminar(const SidePartition& p, const SidePartition& q) {
  auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
    std::set<int> s(a.begin(), a.end());
    for (int x : b)
      if (s.count(x)) return false;
    return true;
  };
  return disjoint(p.block, q.block) || disjoint(p.block, q.coblock) ||
         disjoint(p.coblock, q.block) || disjoint(p.coblock, q.coblock);
}

}  // namespace crochet
