#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include "coral/bitset.hpp"
#include "coral/sets.hpp"
#include "doctest.h"

using namespace coral;

TEST_CASE("SetDense add and swap-removal") {
  SetDense s(8);
  CHECK(s.empty());
  s.add(5);
  s.add(2);
  s.add(7);
  CHECK(s.size() == 3);
  s.removeAtPosition(0);  // 5 replaced by the tail element 7
  CHECK(s.size() == 2);
  CHECK(s[0] == 7);
  CHECK(s[1] == 2);
  s.clear();
  CHECK(s.empty());
}

TEST_CASE("SetSparse mirrors a reference set under random traffic") {
  std::mt19937_64 rng(123);
  SetSparse s(40);
  std::set<int> ref;
  for (int step = 0; step < 4000; ++step) {
    int v = static_cast<int>(rng() % 40);
    if (ref.count(v)) {
      s.remove(v);
      ref.erase(v);
    } else {
      s.add(v);
      ref.insert(v);
    }
    CHECK(s.size() == static_cast<int>(ref.size()));
    if (step % 97 == 0) {
      for (int w = 0; w < 40; ++w) CHECK(s.contains(w) == (ref.count(w) > 0));
      std::set<int> dense;
      for (int i = 0; i < s.size(); ++i) dense.insert(s[i]);
      CHECK(dense == ref);
    }
  }
}

TEST_CASE("SetSparseReversible restores exact membership per level") {
  std::mt19937_64 rng(7);
  SetSparseReversible s(30, true);
  std::vector<std::set<int>> atLevel;  // membership before entering each level
  std::set<int> ref;
  for (int v = 0; v < 30; ++v) ref.insert(v);

  for (int level = 1; level <= 10; ++level) {
    atLevel.push_back(ref);
    int removals = static_cast<int>(rng() % 4);
    for (int r = 0; r < removals && !ref.empty(); ++r) {
      int pos = static_cast<int>(rng() % ref.size());
      int v = *std::next(ref.begin(), pos);
      s.removeAtLevel(v, level);
      ref.erase(v);
    }
  }
  // Unwind to a few levels and compare memberships.
  for (int back : {8, 5, 1}) {
    s.restoreBefore(back);
    ref = atLevel[back - 1];
    CHECK(s.size() == static_cast<int>(ref.size()));
    for (int v = 0; v < 30; ++v) CHECK(s.contains(v) == (ref.count(v) > 0));
  }
}

TEST_CASE("SetLinkedFinite keeps order, removal chain and per-level undo") {
  SetLinkedFinite s(10);
  CHECK(s.first() == 0);
  CHECK(s.last() == 9);

  s.remove(3, 1);
  s.remove(7, 1);
  s.remove(0, 2);

  // Ordered sweep skips removed elements.
  std::vector<int> seen;
  for (int i = s.first(); i != -1; i = s.next(i)) seen.push_back(i);
  CHECK(seen == std::vector<int>{1, 2, 4, 5, 6, 8, 9});

  // Removed chain is newest-first with level stamps.
  CHECK(s.lastRemoved() == 0);
  CHECK(s.removedLevel(0) == 2);
  CHECK(s.prevRemoved(0) == 7);
  CHECK(s.prevRemoved(7) == 3);

  int n = s.restoreBefore(2);  // undoes only the level-2 removal
  CHECK(n == 1);
  CHECK(s.contains(0));
  CHECK(!s.contains(3));
  CHECK(s.first() == 0);

  s.restoreBefore(0);
  CHECK(s.size() == 10);
  seen.clear();
  for (int i = s.first(); i != -1; i = s.next(i)) seen.push_back(i);
  CHECK(seen == std::vector<int>{0, 1, 2, 3, 4, 5, 6, 7, 8, 9});
}

TEST_CASE("SetLinkedFinite randomized against a reference model") {
  std::mt19937_64 rng(99);
  const int cap = 25;
  SetLinkedFinite s(cap);
  std::vector<std::set<int>> atLevel;
  std::set<int> ref;
  for (int v = 0; v < cap; ++v) ref.insert(v);

  int level = 0;
  for (int step = 0; step < 2000; ++step) {
    if (ref.size() > 1 && rng() % 3 != 0) {
      ++level;
      atLevel.push_back(ref);
      int removals = 1 + static_cast<int>(rng() % 3);
      for (int r = 0; r < removals && ref.size() > 1; ++r) {
        int pos = static_cast<int>(rng() % ref.size());
        int v = *std::next(ref.begin(), pos);
        s.remove(v, level);
        ref.erase(v);
      }
    } else if (level > 0) {
      int back = 1 + static_cast<int>(rng() % level);
      s.restoreBefore(back);
      ref = atLevel[back - 1];
      atLevel.resize(back - 1);
      level = back - 1;
    }
    if (step % 53 == 0) {
      std::vector<int> seen;
      for (int i = s.first(); i != -1; i = s.next(i)) seen.push_back(i);
      CHECK(seen == std::vector<int>(ref.begin(), ref.end()));
    }
  }
}

TEST_CASE("ReversibleSparseBitset intersect/subtract with trailing") {
  const int nbits = 130;  // straddles three words
  ReversibleSparseBitset b(nbits);
  CHECK(b.countBits() == nbits);
  CHECK(b.testBit(0));
  CHECK(b.testBit(129));

  std::vector<uint64_t> evens(b.wordCount(), 0);
  for (int i = 0; i < nbits; i += 2) evens[i >> 6] |= uint64_t{1} << (i & 63);

  b.clearMask();
  b.addToMask(evens);
  CHECK(b.intersectWithMask(1));
  CHECK(b.countBits() == 65);
  CHECK(b.testBit(64));
  CHECK(!b.testBit(65));

  // Subtract everything below 64 at level 2.
  std::vector<uint64_t> low(b.wordCount(), 0);
  low[0] = ~uint64_t{0};
  b.clearMask();
  b.addToMask(low);
  CHECK(b.subtractMask(2));
  CHECK(b.countBits() == 33);
  CHECK(!b.testBit(0));

  b.restoreBefore(2);
  CHECK(b.countBits() == 65);
  CHECK(b.testBit(0));
  b.restoreBefore(1);
  CHECK(b.countBits() == nbits);
}

TEST_CASE("ReversibleSparseBitset randomized against reference bit vector") {
  std::mt19937_64 rng(2024);
  const int nbits = 190;
  ReversibleSparseBitset b(nbits);
  std::vector<char> ref(nbits, 1);
  std::vector<std::vector<char>> atLevel;
  int level = 0;

  auto randomMask = [&] {
    std::vector<uint64_t> m(b.wordCount(), 0);
    for (int i = 0; i < nbits; ++i)
      if (rng() % 2) m[i >> 6] |= uint64_t{1} << (i & 63);
    return m;
  };

  for (int step = 0; step < 600; ++step) {
    if (level == 0 || rng() % 4 != 0) {
      ++level;
      atLevel.push_back(ref);
      auto m = randomMask();
      b.clearMask();
      b.addToMask(m);
      bool sub = rng() % 2 == 0;
      bool alive = sub ? b.subtractMask(level) : b.intersectWithMask(level);
      for (int i = 0; i < nbits; ++i) {
        bool mb = (m[i >> 6] >> (i & 63)) & 1;
        if (sub ? mb : !mb) ref[i] = 0;
      }
      bool refAlive = std::count(ref.begin(), ref.end(), 1) > 0;
      CHECK(alive == refAlive);
      if (!alive) {
        b.restoreBefore(level);
        ref = atLevel[level - 1];
        atLevel.pop_back();
        --level;
      }
    } else {
      int back = 1 + static_cast<int>(rng() % level);
      b.restoreBefore(back);
      ref = atLevel[back - 1];
      atLevel.resize(back - 1);
      level = back - 1;
    }
    CHECK(b.countBits() == std::count(ref.begin(), ref.end(), 1));
    for (int i = 0; i < nbits; i += 7) CHECK(b.testBit(i) == (ref[i] == 1));
  }

  // intersects() with residue against the live state.
  auto m = randomMask();
  int residue = 0;
  bool got = b.intersects(m, &residue);
  bool expect = false;
  for (int i = 0; i < nbits; ++i)
    if (ref[i] && ((m[i >> 6] >> (i & 63)) & 1)) expect = true;
  CHECK(got == expect);
}
