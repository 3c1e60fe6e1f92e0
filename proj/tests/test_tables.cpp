#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <memory>
#include <random>
#include <vector>

#include "coral/problem.hpp"
#include "coral/table.hpp"
#include "doctest.h"
#include "support/engine.hpp"
#include "support/oracle.hpp"

using namespace coral;
using testsup::Engine;

namespace {

constexpr int kStar = Table::kStar;

// A table scenario in value space, reproducible across several problem builds.
struct Scenario {
  std::vector<std::vector<int>> universes;  // sorted values per position
  std::vector<std::vector<int>> valueRows;  // kStar allowed
  bool positive = true;
};

Scenario randomScenario(std::mt19937_64& rng, bool positive, bool stars) {
  Scenario s;
  s.positive = positive;
  int arity = 1 + static_cast<int>(rng() % 3);
  for (int p = 0; p < arity; ++p) {
    int size = 1 + static_cast<int>(rng() % 5);
    std::vector<int> u;
    int v = static_cast<int>(rng() % 5) - 2;
    while (static_cast<int>(u.size()) < size) {
      u.push_back(v);
      v += 1 + static_cast<int>(rng() % 2);
    }
    s.universes.push_back(u);
  }
  int nrows = 1 + static_cast<int>(rng() % 12);
  for (int r = 0; r < nrows; ++r) {
    std::vector<int> row;
    for (int p = 0; p < arity; ++p) {
      int v = s.universes[p][rng() % s.universes[p].size()];
      if (stars && rng() % 4 == 0) v = kStar;
      row.push_back(v);
    }
    s.valueRows.push_back(row);
  }
  return s;
}

std::unique_ptr<Problem> problemFor(const Scenario& s) {
  auto pb = std::make_unique<Problem>();
  for (size_t p = 0; p < s.universes.size(); ++p)
    pb->addVariable("x" + std::to_string(p), s.universes[p]);
  return pb;
}

// Index-space rows computed by the test itself, not by Table::fromValues.
std::vector<std::vector<int>> idxRows(const Scenario& s) {
  std::vector<std::vector<int>> out;
  for (const auto& row : s.valueRows) {
    std::vector<int> r;
    for (size_t p = 0; p < row.size(); ++p) {
      if (row[p] == kStar) {
        r.push_back(kStar);
      } else {
        auto& u = s.universes[p];
        int idx = static_cast<int>(
            std::lower_bound(u.begin(), u.end(), row[p]) - u.begin());
        r.push_back(idx);
      }
    }
    out.push_back(r);
  }
  return out;
}

// Reference fixpoint on index lists; empty list in the result means wipeout.
std::vector<std::vector<int>> referenceFixpoint(const Scenario& s) {
  auto rows = idxRows(s);
  std::vector<std::vector<int>> doms;
  for (const auto& u : s.universes) {
    std::vector<int> all(u.size());
    for (size_t i = 0; i < u.size(); ++i) all[i] = static_cast<int>(i);
    doms.push_back(all);
  }
  auto accepts = [&](const std::vector<int>& t) {
    for (const auto& row : rows) {
      bool match = true;
      for (size_t p = 0; p < t.size(); ++p)
        if (row[p] != kStar && row[p] != t[p]) {
          match = false;
          break;
        }
      if (match) return s.positive;
    }
    return !s.positive;
  };
  testsup::bruteAcFixpoint(&doms, accepts);
  return doms;
}

bool anyEmpty(const std::vector<std::vector<int>>& doms) {
  for (const auto& d : doms)
    if (d.empty()) return true;
  return false;
}

void runScenario(const Scenario& s, TablePropagator kind) {
  auto pb = problemFor(s);
  std::vector<Variable*> scope;
  for (int i = 0; i < pb->varCount(); ++i) scope.push_back(&pb->var(i));
  auto t = std::make_shared<Table>(Table::fromValues(scope, s.valueRows, s.positive));
  postTableConstraint(*pb, scope, t, kind);

  Engine eng(*pb);
  bool ok = eng.prop.propagateAll();
  auto ref = referenceFixpoint(s);
  if (anyEmpty(ref)) {
    CHECK(!ok);
    return;
  }
  REQUIRE(ok);
  for (int i = 0; i < pb->varCount(); ++i)
    CHECK(testsup::presentIdxs(pb->var(i).dom) == ref[i]);
}

}  // namespace

TEST_CASE("fromValues maps values to indexes and counts dropped rows") {
  Problem pb;
  Variable& x = pb.addVariable("x", std::vector<int>{1, 3, 5});
  Variable& y = pb.addVariable("y", 0, 2);
  std::vector<Variable*> scope{&x, &y};
  int dropped = 0;
  Table t = Table::fromValues(
      scope,
      {{1, 0}, {3, 2}, {4, 1}, {5, 3}, {kStar, 2}, {1000000000, 0}},
      true, &dropped);
  CHECK(dropped == 3);  // 4 and 3 out of universe, plus the huge value
  REQUIRE(t.rows.size() == 3);
  CHECK(t.starred);
  CHECK(t.positive);
  // (1,0) -> (0,0); (3,2) -> (1,2); (*,2) -> (*,2)
  CHECK(t.containsIdxs({0, 0}));
  CHECK(t.containsIdxs({1, 2}));
  CHECK(t.containsIdxs({2, 2}));  // via the starred row
  CHECK(!t.containsIdxs({2, 0}));
}

TEST_CASE("normalize sorts, dedups and recomputes the star flag") {
  Table t;
  t.arity = 2;
  t.rows = {{1, 0}, {0, 1}, {1, 0}, {0, 1}};
  t.starred = true;  // wrong on purpose
  t.normalize();
  CHECK(t.rows == std::vector<std::vector<int>>{{0, 1}, {1, 0}});
  CHECK(!t.starred);
}

TEST_CASE("pinned positive table filtering") {
  // x,y,z in 0..2; rows (0,0,0) (1,1,*) (2,0,1).
  Problem pb;
  Variable& x = pb.addVariable("x", 0, 2);
  Variable& y = pb.addVariable("y", 0, 2);
  Variable& z = pb.addVariable("z", 0, 2);
  std::vector<Variable*> scope{&x, &y, &z};
  auto t = std::make_shared<Table>(
      Table::fromValues(scope, {{0, 0, 0}, {1, 1, kStar}, {2, 0, 1}}, true));

  for (auto kind : {TablePropagator::CT, TablePropagator::STR2,
                    TablePropagator::STR1, TablePropagator::Generic}) {
    CAPTURE(tablePropagatorName(kind));
    Problem pb2;
    Variable& a = pb2.addVariable("x", 0, 2);
    Variable& b = pb2.addVariable("y", 0, 2);
    Variable& c = pb2.addVariable("z", 0, 2);
    std::vector<Variable*> scope2{&a, &b, &c};
    auto t2 = std::make_shared<Table>(
        Table::fromValues(scope2, {{0, 0, 0}, {1, 1, kStar}, {2, 0, 1}}, true));
    postTableConstraint(pb2, scope2, t2, kind);
    Engine eng(pb2);
    REQUIRE(eng.prop.propagateAll());
    CHECK(b.dom.presentValues() == std::vector<int>{0, 1});  // y=2 unsupported
    CHECK(a.dom.size() == 3);
    CHECK(c.dom.size() == 3);

    // Assigning y=1 leaves only the starred row: x=1, z free.
    pb2.level = 1;
    b.dom.reduceToIdx(b.dom.toIdx(1), 1);
    REQUIRE(eng.prop.propagate());
    CHECK(a.dom.presentValues() == std::vector<int>{1});
    CHECK(c.dom.size() == 3);
  }
}

TEST_CASE("four propagators reach the reference fixpoint on random tables") {
  std::mt19937_64 rng(555);
  for (int trial = 0; trial < 120; ++trial) {
    Scenario s = randomScenario(rng, true, trial % 2 == 0);
    for (auto kind : {TablePropagator::CT, TablePropagator::STR2,
                      TablePropagator::STR1, TablePropagator::Generic}) {
      CAPTURE(trial);
      CAPTURE(tablePropagatorName(kind));
      runScenario(s, kind);
    }
  }
}

TEST_CASE("negative tables filter to the reference fixpoint") {
  std::mt19937_64 rng(777);
  for (int trial = 0; trial < 80; ++trial) {
    Scenario s = randomScenario(rng, false, false);
    for (auto kind : {TablePropagator::CT, TablePropagator::Generic}) {
      CAPTURE(trial);
      runScenario(s, kind);  // CT routes to the dedicated negative propagator
    }
  }
}

TEST_CASE("a negative table equals the positive complement") {
  std::mt19937_64 rng(888);
  for (int trial = 0; trial < 60; ++trial) {
    Scenario neg = randomScenario(rng, false, false);

    // Complement in value space: all universe tuples not forbidden.
    Scenario pos;
    pos.universes = neg.universes;
    pos.positive = true;
    std::vector<int> tuple(neg.universes.size());
    std::function<void(size_t)> rec = [&](size_t p) {
      if (p == neg.universes.size()) {
        for (const auto& row : neg.valueRows)
          if (row == tuple) return;
        pos.valueRows.push_back(tuple);
        return;
      }
      for (int v : neg.universes[p]) {
        tuple[p] = v;
        rec(p + 1);
      }
    };
    rec(0);

    auto pbNeg = problemFor(neg);
    std::vector<Variable*> scopeNeg;
    for (int i = 0; i < pbNeg->varCount(); ++i) scopeNeg.push_back(&pbNeg->var(i));
    postTableConstraint(
        *pbNeg, scopeNeg,
        std::make_shared<Table>(Table::fromValues(scopeNeg, neg.valueRows, false)),
        TablePropagator::CT);

    auto pbPos = problemFor(neg);
    std::vector<Variable*> scopePos;
    for (int i = 0; i < pbPos->varCount(); ++i) scopePos.push_back(&pbPos->var(i));
    bool posEmpty = pos.valueRows.empty();
    if (!posEmpty)
      postTableConstraint(
          *pbPos, scopePos,
          std::make_shared<Table>(Table::fromValues(scopePos, pos.valueRows, true)),
          TablePropagator::STR2);

    Engine engNeg(*pbNeg);
    bool okNeg = engNeg.prop.propagateAll();
    if (posEmpty) {
      CHECK(!okNeg);  // every tuple forbidden
      continue;
    }
    Engine engPos(*pbPos);
    bool okPos = engPos.prop.propagateAll();
    CAPTURE(trial);
    CHECK(okNeg == okPos);
    if (okNeg && okPos)
      for (int i = 0; i < pbNeg->varCount(); ++i)
        CHECK(testsup::presentIdxs(pbNeg->var(i).dom) ==
              testsup::presentIdxs(pbPos->var(i).dom));
  }
}

TEST_CASE("stateful propagators survive randomized backtracking") {
  std::mt19937_64 rng(91);
  for (int trial = 0; trial < 40; ++trial) {
    Scenario s = randomScenario(rng, trial % 3 != 0, trial % 2 == 0 && trial % 3 != 0);
    auto ref0 = referenceFixpoint(s);
    if (anyEmpty(ref0)) continue;

    for (auto kind : {TablePropagator::CT, TablePropagator::STR2,
                      TablePropagator::STR1}) {
      if (!s.positive && kind != TablePropagator::CT) continue;
      CAPTURE(trial);
      CAPTURE(tablePropagatorName(kind));
      auto pb = problemFor(s);
      std::vector<Variable*> scope;
      for (int i = 0; i < pb->varCount(); ++i) scope.push_back(&pb->var(i));
      postTableConstraint(
          *pb, scope,
          std::make_shared<Table>(Table::fromValues(scope, s.valueRows, s.positive)),
          kind);
      Engine eng(*pb);
      REQUIRE(eng.prop.propagateAll());

      // Random walk: descend with one removal + propagate, or jump back.
      std::vector<std::vector<std::vector<int>>> stateAt{
          {}};  // index lists per level; [0] filled below
      for (int i = 0; i < pb->varCount(); ++i)
        stateAt[0].push_back(testsup::presentIdxs(pb->var(i).dom));

      for (int step = 0; step < 60; ++step) {
        if (pb->level == 0 || rng() % 3 != 0) {
          // Pick a variable with at least two values left.
          std::vector<int> candidates;
          for (int i = 0; i < pb->varCount(); ++i)
            if (pb->var(i).dom.size() > 1) candidates.push_back(i);
          if (candidates.empty()) {
            pb->restoreBefore(1);
            pb->level = 0;
            stateAt.resize(1);
            continue;
          }
          int vid = candidates[rng() % candidates.size()];
          Domain& d = pb->var(vid).dom;
          int nth = static_cast<int>(rng() % d.size());
          int idx = d.first();
          while (nth-- > 0) idx = d.next(idx);

          ++pb->level;
          // Expected result: reference fixpoint from the current lists minus idx.
          auto doms = stateAt.back();
          auto& lst = doms[vid];
          lst.erase(std::find(lst.begin(), lst.end(), idx));
          bool expectAlive = !lst.empty();
          std::vector<std::vector<int>> expect;
          if (expectAlive) {
            auto rows = idxRows(s);
            auto accepts = [&](const std::vector<int>& t) {
              for (const auto& row : rows) {
                bool match = true;
                for (size_t p = 0; p < t.size(); ++p)
                  if (row[p] != kStar && row[p] != t[p]) {
                    match = false;
                    break;
                  }
                if (match) return s.positive;
              }
              return !s.positive;
            };
            expect = doms;
            testsup::bruteAcFixpoint(&expect, accepts);
            expectAlive = !anyEmpty(expect);
          }

          d.removeIdx(idx, pb->level);
          bool alive = eng.prop.propagate();
          CHECK(alive == expectAlive);
          if (!alive) {
            pb->restoreBefore(pb->level);
            --pb->level;
          } else {
            for (int i = 0; i < pb->varCount(); ++i)
              CHECK(testsup::presentIdxs(pb->var(i).dom) == expect[i]);
            stateAt.push_back(expect);
          }
        } else {
          int back = 1 + static_cast<int>(rng() % pb->level);
          pb->restoreBefore(back);
          pb->level = back - 1;
          stateAt.resize(back);
          for (int i = 0; i < pb->varCount(); ++i)
            CHECK(testsup::presentIdxs(pb->var(i).dom) == stateAt.back()[i]);
        }
      }
    }
  }
}
