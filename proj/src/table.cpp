#include "coral/table.hpp"

#include <algorithm>
#include <cassert>

#include "coral/problem.hpp"

namespace coral {

void Table::normalize() {
  std::sort(rows.begin(), rows.end());
  rows.erase(std::unique(rows.begin(), rows.end()), rows.end());
  starred = false;
  for (const auto& r : rows)
    for (int v : r)
      if (v == kStar) { starred = true; break; }
}

Table Table::fromValues(const std::vector<Variable*>& scope,
                        const std::vector<std::vector<int>>& valueRows,
                        bool positive, int* dropped) {
  Table t;
  t.arity = static_cast<int>(scope.size());
  t.positive = positive;
  int nDropped = 0;
  for (const auto& vr : valueRows) {
    assert(static_cast<int>(vr.size()) == t.arity);
    std::vector<int> row(t.arity);
    bool ok = true;
    for (int p = 0; p < t.arity; ++p) {
      if (vr[p] == kStar) {
        row[p] = kStar;
      } else {
        row[p] = scope[p]->dom.toIdx(vr[p]);
        if (row[p] < 0) { ok = false; break; }
      }
    }
    if (ok) t.rows.push_back(std::move(row));
    else ++nDropped;
  }
  if (dropped) *dropped = nDropped;
  t.normalize();
  return t;
}

bool Table::containsIdxs(const std::vector<int>& idxs) const {
  for (int v : idxs)
    if (v < 0) return false;
  if (!starred)
    return std::binary_search(rows.begin(), rows.end(), idxs);
  for (size_t r = 0; r < rows.size(); ++r)
    if (rowMatches(static_cast<int>(r), idxs)) return true;
  return false;
}

// --- simple tabular reduction (shared STR1/STR2 loop) ------------------------

StrTableConstraint::StrTableConstraint(Problem& pb, std::vector<Variable*> scope,
                                       std::shared_ptr<const Table> table,
                                       bool strictValidity)
    : Constraint(pb, std::move(scope)),
      table_(std::move(table)),
      current_(static_cast<int>(table_->rows.size())),
      restorer_(current_),
      strictValidity_(strictValidity),
      changed_(arity()),
      seeking_(arity()) {
  assert(table_->positive);
  tagAC = true;
  tagCallCompleteFiltering = true;
  tagStarredCompatible = true;
  pb.stateRestorers.push_back(&restorer_);
  lastMod_.resize(arity());
  seenStamp_.resize(arity());
  seenCount_.resize(arity(), 0);
  for (int p = 0; p < arity(); ++p) {
    lastMod_[p] = this->scope[p]->dom.modCount();
    seenStamp_[p].assign(this->scope[p]->dom.initialSize(), 0);
  }
}

bool StrTableConstraint::runPropagator(Variable& evt) {
  ++call_;
  changed_.clear();
  seeking_.clear();
  for (int p = 0; p < arity(); ++p) {
    if (strictValidity_ || lastMod_[p] != scope[p]->dom.modCount()) changed_.add(p);
    if (scope[p]->dom.size() > 1) {
      seeking_.add(p);
      seenCount_[p] = 0;
    }
  }
  for (int i = current_.size() - 1; i >= 0; --i) {
    int r = current_[i];
    const std::vector<int>& row = table_->rows[r];
    bool valid = true;
    for (int ci = 0; ci < changed_.size(); ++ci) {
      int p = changed_[ci];
      if (row[p] != Table::kStar && !scope[p]->dom.contains(row[p])) {
        valid = false;
        break;
      }
    }
    if (!valid) {
      current_.removeAtPositionAtLevel(i, level());
      continue;
    }
    for (int si = seeking_.size() - 1; si >= 0; --si) {
      int p = seeking_[si];
      if (row[p] == Table::kStar) {
        seeking_.removeAtPosition(si);  // a valid star row supports everything
        continue;
      }
      if (seenStamp_[p][row[p]] != call_) {
        seenStamp_[p][row[p]] = call_;
        if (++seenCount_[p] == scope[p]->dom.size()) seeking_.removeAtPosition(si);
      }
    }
  }
  if (current_.empty()) return fail(evt);
  for (int si = 0; si < seeking_.size(); ++si) {
    int p = seeking_[si];
    Domain& d = scope[p]->dom;
    for (int idx = d.first(); idx != -1; idx = d.next(idx))
      if (seenStamp_[p][idx] != call_ && d.removeIdx(idx, level()))
        return fail(*scope[p]);
  }
  for (int p = 0; p < arity(); ++p) lastMod_[p] = scope[p]->dom.modCount();
  return true;
}

bool StrTableConstraint::checkValues(const std::vector<int>& vals) const {
  std::vector<int> idxs(vals.size());
  for (size_t p = 0; p < vals.size(); ++p) idxs[p] = scope[p]->dom.toIdx(vals[p]);
  return table_->containsIdxs(idxs);
}

// --- compact table -----------------------------------------------------------

CompactTableConstraint::CompactTableConstraint(Problem& pb,
                                               std::vector<Variable*> scope,
                                               std::shared_ptr<const Table> table)
    : Constraint(pb, std::move(scope)),
      table_(std::move(table)),
      current_(static_cast<int>(table_->rows.size())),
      restorer_(current_),
      lastRestoreStamp_(pb.restoreStamp) {
  assert(table_->positive);
  tagAC = true;
  tagCallCompleteFiltering = true;
  tagStarredCompatible = true;
  pb.stateRestorers.push_back(&restorer_);
  int words = current_.wordCount();
  supports_.resize(arity());
  residueWord_.resize(arity());
  lastMod_.resize(arity());
  lastSize_.resize(arity());
  for (int p = 0; p < arity(); ++p) {
    const Domain& d = this->scope[p]->dom;
    supports_[p].assign(d.initialSize(), std::vector<uint64_t>(words, 0));
    residueWord_[p].assign(d.initialSize(), 0);
    lastMod_[p] = d.modCount();
    lastSize_[p] = d.size();
  }
  for (size_t r = 0; r < table_->rows.size(); ++r) {
    for (int p = 0; p < arity(); ++p) {
      int v = table_->rows[r][p];
      uint64_t bit = uint64_t{1} << (r & 63);
      if (v == Table::kStar) {
        for (auto& m : supports_[p]) m[r >> 6] |= bit;  // star backs every value
      } else {
        supports_[p][v][r >> 6] |= bit;
      }
    }
  }
}

bool CompactTableConstraint::runPropagator(Variable& evt) {
  bool monotone = pb.restoreStamp == lastRestoreStamp_;
  for (int p = 0; p < arity(); ++p) {
    Domain& d = scope[p]->dom;
    if (lastMod_[p] == d.modCount()) continue;
    int removedCount = lastSize_[p] - d.size();
    current_.clearMask();
    if (monotone && !table_->starred && removedCount < d.size()) {
      // Few deletions and no restore in between: subtract their support rows.
      int a = d.lastRemoved();
      for (int k = 0; k < removedCount; ++k, a = d.prevRemoved(a))
        current_.addToMask(supports_[p][a]);
      if (!current_.subtractMask(level())) return fail(evt);
    } else {
      for (int idx = d.first(); idx != -1; idx = d.next(idx))
        current_.addToMask(supports_[p][idx]);
      if (!current_.intersectWithMask(level())) return fail(evt);
    }
    lastMod_[p] = d.modCount();
    lastSize_[p] = d.size();
  }
  for (int p = 0; p < arity(); ++p) {
    Domain& d = scope[p]->dom;
    if (d.size() == 1) continue;
    for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
      if (!current_.intersects(supports_[p][idx], &residueWord_[p][idx])) {
        if (d.removeIdx(idx, level())) return fail(*scope[p]);
      }
    }
    lastMod_[p] = d.modCount();
    lastSize_[p] = d.size();
  }
  lastRestoreStamp_ = pb.restoreStamp;
  return true;
}

bool CompactTableConstraint::checkValues(const std::vector<int>& vals) const {
  std::vector<int> idxs(vals.size());
  for (size_t p = 0; p < vals.size(); ++p) idxs[p] = scope[p]->dom.toIdx(vals[p]);
  return table_->containsIdxs(idxs);
}

// --- negative tables ---------------------------------------------------------

NegativeTableConstraint::NegativeTableConstraint(Problem& pb,
                                                 std::vector<Variable*> scope,
                                                 std::shared_ptr<const Table> table)
    : Constraint(pb, std::move(scope)), table_(std::move(table)) {
  assert(!table_->positive && !table_->starred);
  tagAC = true;
  tagCallCompleteFiltering = true;
}

bool NegativeTableConstraint::runPropagator(Variable&) {
  // An index survives unless the listed conflicts cover the whole product of
  // the other domains; rows are distinct, so counting valid ones suffices.
  bool changed;
  do {
    changed = false;
    for (int p = 0; p < arity(); ++p) {
      Domain& d = scope[p]->dom;
      long long product = 1;
      bool overflow = false;
      for (int q = 0; q < arity(); ++q) {
        if (q == p) continue;
        product *= scope[q]->dom.size();
        if (product > static_cast<long long>(table_->rows.size())) {
          overflow = true;  // conflicts can never cover the product
          break;
        }
      }
      if (overflow) continue;
      for (int idx = d.first(); idx != -1; idx = d.next(idx)) {
        long long conflicts = 0;
        for (const auto& row : table_->rows) {
          if (row[p] != idx) continue;
          bool validElsewhere = true;
          for (int q = 0; q < arity(); ++q) {
            if (q == p) continue;
            if (!scope[q]->dom.contains(row[q])) { validElsewhere = false; break; }
          }
          if (validElsewhere) ++conflicts;
        }
        if (conflicts == product) {
          changed = true;
          if (d.removeIdx(idx, level())) return fail(*scope[p]);
        }
      }
    }
  } while (changed);
  return true;
}

bool NegativeTableConstraint::checkValues(const std::vector<int>& vals) const {
  std::vector<int> idxs(vals.size());
  for (size_t p = 0; p < vals.size(); ++p) idxs[p] = scope[p]->dom.toIdx(vals[p]);
  return !table_->containsIdxs(idxs);
}

// --- generic fallback --------------------------------------------------------

GenericTableConstraint::GenericTableConstraint(Problem& pb,
                                               std::vector<Variable*> scope,
                                               std::shared_ptr<const Table> table)
    : GenericACConstraint(pb, std::move(scope)), table_(std::move(table)) {
  tagStarredCompatible = table_->positive;
}

bool GenericTableConstraint::acceptsIdxs(const std::vector<int>& idxs) const {
  bool in = table_->containsIdxs(idxs);
  return table_->positive ? in : !in;
}

bool GenericTableConstraint::checkValues(const std::vector<int>& vals) const {
  std::vector<int> idxs(vals.size());
  for (size_t p = 0; p < vals.size(); ++p) idxs[p] = scope[p]->dom.toIdx(vals[p]);
  if (!table_->positive) return !table_->containsIdxs(idxs);
  return table_->containsIdxs(idxs);
}

std::string tablePropagatorName(TablePropagator p) {
  switch (p) {
    case TablePropagator::CT: return "ct";
    case TablePropagator::STR2: return "str2";
    case TablePropagator::STR1: return "str1";
    case TablePropagator::Generic: return "generic";
  }
  return "?";
}

Constraint& postTableConstraint(Problem& pb, std::vector<Variable*> scope,
                                std::shared_ptr<const Table> table,
                                TablePropagator kind) {
  if (!table->positive) {
    if (kind == TablePropagator::Generic)
      return pb.post<GenericTableConstraint>(std::move(scope), std::move(table));
    return pb.post<NegativeTableConstraint>(std::move(scope), std::move(table));
  }
  switch (kind) {
    case TablePropagator::CT:
      return pb.post<CompactTableConstraint>(std::move(scope), std::move(table));
    case TablePropagator::STR2:
      return pb.post<StrTableConstraint>(std::move(scope), std::move(table), false);
    case TablePropagator::STR1:
      return pb.post<StrTableConstraint>(std::move(scope), std::move(table), true);
    case TablePropagator::Generic:
      return pb.post<GenericTableConstraint>(std::move(scope), std::move(table));
  }
  return pb.post<CompactTableConstraint>(std::move(scope), std::move(table));
}

}  // namespace coral
