#ifndef CORAL_TABLE_HPP
#define CORAL_TABLE_HPP

#include <limits>
#include <memory>
#include <vector>

#include "coral/bitset.hpp"
#include "coral/constraint.hpp"
#include "coral/generic_ac.hpp"
#include "coral/sets.hpp"

namespace coral {

// A tuple matrix over value *indexes* (column p holds indexes into the domain
// of the p-th scope variable). kStar in a positive table matches any present
// index of its column.
struct Table {
  static constexpr int kStar = std::numeric_limits<int>::min();

  std::vector<std::vector<int>> rows;
  int arity = 0;
  bool positive = true;
  bool starred = false;

  // Sorts, deduplicates and recomputes the starred flag.
  void normalize();

  // Value-space construction: converts value tuples to index tuples through
  // the scope's domains; rows mentioning out-of-universe values are dropped
  // and counted in *dropped.
  static Table fromValues(const std::vector<Variable*>& scope,
                          const std::vector<std::vector<int>>& valueRows,
                          bool positive, int* dropped = nullptr);

  // Row matches the index tuple (stars wildcard)?
  bool rowMatches(int r, const std::vector<int>& idxs) const {
    for (int p = 0; p < arity; ++p)
      if (rows[r][p] != kStar && rows[r][p] != idxs[p]) return false;
    return true;
  }
  // Membership in the row set, star-aware.
  bool containsIdxs(const std::vector<int>& idxs) const;
};

enum class TablePropagator { CT, STR2, STR1, Generic };

// Base for the simple-tabular-reduction family: a reversible set of row ids
// still valid w.r.t. the current domains.
class StrTableConstraint : public Constraint {
 public:
  StrTableConstraint(Problem& pb, std::vector<Variable*> scope,
                     std::shared_ptr<const Table> table, bool strictValidity);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override {
    return strictValidity_ ? "extension(str1)" : "extension(str2)";
  }

  int liveRowCount() const { return current_.size(); }  // introspection for tests

 private:
  std::shared_ptr<const Table> table_;
  SetSparseReversible current_;

  class Restorer : public BacktrackObserver {
   public:
    explicit Restorer(SetSparseReversible& s) : s_(s) {}
    void restoreBefore(int level) override { s_.restoreBefore(level); }
   private:
    SetSparseReversible& s_;
  } restorer_;

  bool strictValidity_;              // STR1: validate every position each call
  std::vector<uint64_t> lastMod_;    // per position, domain modCount at last call
  std::vector<std::vector<uint64_t>> seenStamp_;  // support marks, by (pos, idx)
  std::vector<int> seenCount_;
  uint64_t call_ = 0;
  SetDense changed_;   // positions to re-validate
  SetDense seeking_;   // positions whose values still need supports
};

// Compact-table: valid rows as a reversible sparse bitset plus one static
// support mask per literal.
class CompactTableConstraint : public Constraint {
 public:
  CompactTableConstraint(Problem& pb, std::vector<Variable*> scope,
                         std::shared_ptr<const Table> table);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "extension(ct)"; }

  int liveRowCount() const { return current_.countBits(); }

 private:
  std::shared_ptr<const Table> table_;
  ReversibleSparseBitset current_;

  class Restorer : public BacktrackObserver {
   public:
    explicit Restorer(ReversibleSparseBitset& s) : s_(s) {}
    void restoreBefore(int level) override { s_.restoreBefore(level); }
   private:
    ReversibleSparseBitset& s_;
  } restorer_;

  std::vector<std::vector<std::vector<uint64_t>>> supports_;  // [pos][idx] mask
  std::vector<std::vector<int>> residueWord_;
  std::vector<uint64_t> lastMod_;
  std::vector<int> lastSize_;
  uint64_t lastRestoreStamp_;
};

// Conflict tables: an index is pruned exactly when the valid conflict tuples
// through it exhaust the whole product of the other current domains.
class NegativeTableConstraint : public Constraint {
 public:
  NegativeTableConstraint(Problem& pb, std::vector<Variable*> scope,
                          std::shared_ptr<const Table> table);
  bool runPropagator(Variable& evt) override;
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "extension(negative)"; }

 private:
  std::shared_ptr<const Table> table_;
};

// Fallback propagator: plain support seeking over the row set, positive or
// negative alike.
class GenericTableConstraint : public GenericACConstraint {
 public:
  GenericTableConstraint(Problem& pb, std::vector<Variable*> scope,
                         std::shared_ptr<const Table> table);
  bool checkValues(const std::vector<int>& vals) const override;
  std::string kindName() const override { return "extension(generic)"; }

 protected:
  bool acceptsIdxs(const std::vector<int>& idxs) const override;

 private:
  std::shared_ptr<const Table> table_;
};

std::string tablePropagatorName(TablePropagator p);

// Posts the propagator chosen for this table (starred negative tables are
// rejected upstream by the builder).
Constraint& postTableConstraint(Problem& pb, std::vector<Variable*> scope,
                                std::shared_ptr<const Table> table,
                                TablePropagator kind);

}  // namespace coral

#endif
