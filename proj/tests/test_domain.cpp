#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>
#include <set>
#include <vector>

#include "coral/domain.hpp"
#include "coral/problem.hpp"
#include "coral/tuple_iterator.hpp"
#include "doctest.h"
#include "support/oracle.hpp"

using namespace coral;

TEST_CASE("range universe maps values and indexes both ways") {
  Domain d(3, 7);
  CHECK(d.initialSize() == 5);
  CHECK(d.rangeForm());
  CHECK(d.toVal(0) == 3);
  CHECK(d.toVal(4) == 7);
  CHECK(d.toIdx(3) == 0);
  CHECK(d.toIdx(7) == 4);
  CHECK(d.toIdx(2) == -1);
  CHECK(d.toIdx(8) == -1);
  CHECK(d.firstValue() == 3);
  CHECK(d.lastValue() == 7);
}

TEST_CASE("contiguous value list collapses to range form") {
  Domain d(std::vector<int>{4, 5, 6});
  CHECK(d.rangeForm());
  CHECK(d.toIdx(4) == 0);
  CHECK(d.toIdx(6) == 2);
}

TEST_CASE("sparse value list keeps explicit universe") {
  Domain d(std::vector<int>{-3, 0, 4, 9});
  CHECK(!d.rangeForm());
  CHECK(d.initialSize() == 4);
  CHECK(d.toVal(2) == 4);
  CHECK(d.toIdx(4) == 2);
  CHECK(d.toIdx(1) == -1);
  CHECK(d.containsValue(9));
  CHECK(!d.containsValue(5));
}

TEST_CASE("removals are stamped and undone per level") {
  Domain d(0, 5);
  CHECK(!d.removeIdx(1, 1));
  CHECK(!d.removeIdx(4, 2));
  CHECK(!d.removeIdx(5, 2));
  CHECK(d.size() == 3);
  CHECK(d.presentValues() == std::vector<int>{0, 2, 3});

  CHECK(d.lastRemoved() == 5);
  CHECK(d.removedLevel(5) == 2);
  CHECK(d.prevRemoved(5) == 4);
  CHECK(d.prevRemoved(4) == 1);

  d.restoreBefore(2);
  CHECK(d.presentValues() == std::vector<int>{0, 2, 3, 4, 5});
  d.restoreBefore(1);
  CHECK(d.size() == 6);
}

TEST_CASE("wipeout is reported by the last removal") {
  Domain d(2, 3);
  CHECK(!d.removeIdx(0, 1));
  CHECK(d.removeIdx(1, 1));  // now empty
  CHECK(d.size() == 0);
  d.restoreBefore(1);
  CHECK(d.size() == 2);
}

TEST_CASE("reduceToIdx keeps one index or flags the wipeout") {
  Domain d(0, 4);
  CHECK(!d.reduceToIdx(2, 1));
  CHECK(d.size() == 1);
  CHECK(d.singleValue() == 2);

  // Reducing to an absent index leaves the domain untouched.
  CHECK(d.reduceToIdx(4, 1));
  CHECK(d.size() == 1);
  CHECK(d.reduceToIdx(-1, 1));
  CHECK(d.singleValue() == 2);
}

TEST_CASE("bound removals stop at the boundary") {
  Domain d(0, 9);
  CHECK(!d.removeValuesBelow(3, 1));
  CHECK(d.firstValue() == 3);
  CHECK(!d.removeValuesAbove(6, 1));
  CHECK(d.lastValue() == 6);
  CHECK(d.presentValues() == std::vector<int>{3, 4, 5, 6});

  Domain e(0, 2);
  CHECK(e.removeValuesAbove(-1, 1));  // removes everything
}

TEST_CASE("modCount moves on removal and on restore") {
  Domain d(0, 3);
  uint64_t m0 = d.modCount();
  d.removeIdx(0, 1);
  uint64_t m1 = d.modCount();
  CHECK(m1 > m0);
  d.restoreBefore(1);
  CHECK(d.modCount() > m1);
  // A restore with nothing to undo must not pretend a change happened.
  uint64_t m2 = d.modCount();
  d.restoreBefore(1);
  CHECK(d.modCount() == m2);
}

TEST_CASE("randomized remove/restore matches snapshots") {
  std::mt19937_64 rng(4242);
  Domain d(std::vector<int>{-5, -2, 0, 1, 3, 8, 11});
  std::vector<std::set<int>> atLevel;  // values present before entering level
  std::set<int> ref(
      {-5, -2, 0, 1, 3, 8, 11});
  int level = 0;

  for (int step = 0; step < 3000; ++step) {
    if (ref.size() > 1 && (level == 0 || rng() % 3 != 0)) {
      ++level;
      atLevel.push_back(ref);
      int removals = 1 + static_cast<int>(rng() % 2);
      for (int r = 0; r < removals && ref.size() > 1; ++r) {
        int pos = static_cast<int>(rng() % ref.size());
        int v = *std::next(ref.begin(), pos);
        CHECK(!d.removeIdx(d.toIdx(v), level));
        ref.erase(v);
      }
    } else if (level > 0) {
      int back = 1 + static_cast<int>(rng() % level);
      d.restoreBefore(back);
      ref = atLevel[back - 1];
      atLevel.resize(back - 1);
      level = back - 1;
    }
    auto vals = d.presentValues();
    CHECK(std::set<int>(vals.begin(), vals.end()) == ref);
  }
}

TEST_CASE("tuple iterator covers the cross product of current domains") {
  Problem pb;
  Variable& x = pb.addVariable("x", 0, 2);
  Variable& y = pb.addVariable("y", 0, 1);
  Variable& z = pb.addVariable("z", 0, 2);
  x.dom.removeIdx(1, 1);  // x in {0,2}
  z.dom.removeIdx(0, 1);  // z in {1,2}

  std::vector<Variable*> scope{&x, &y, &z};
  TupleIterator it(scope);

  // Frozen y = 1: expect |x| * |z| = 4 tuples, lexicographic.
  std::vector<std::vector<int>> seen;
  CHECK(it.firstValidWith(1, 1));
  do seen.push_back(it.current()); while (it.nextValid());
  CHECK(seen == std::vector<std::vector<int>>{
                    {0, 1, 1}, {0, 1, 2}, {2, 1, 1}, {2, 1, 2}});

  // Frozen position may hold an index absent from its own domain; the sweep
  // still enumerates the others (that is how supports for a candidate work).
  CHECK(it.firstValidWith(0, 1));
  int count = 0;
  do ++count; while (it.nextValid());
  CHECK(count == 4);  // |y| * |z|

  // A wiped-out companion domain stops the sweep before it starts.
  Variable& w = pb.addVariable("w", 0, 0);
  w.dom.removeIdx(0, 1);
  std::vector<Variable*> scope2{&x, &w};
  TupleIterator it2(scope2);
  CHECK(!it2.firstValidWith(0, 0));
}
