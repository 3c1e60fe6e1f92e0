#ifndef CORAL_SETS_HPP
#define CORAL_SETS_HPP

#include <cassert>
#include <cstdint>
#include <vector>

namespace coral {

// Unordered bag of ints stored contiguously; elements are dense()[0..size()-1].
// No membership test, no duplicate check: callers guarantee uniqueness.
class SetDense {
 public:
  explicit SetDense(int capacity) : dense_(capacity) {}

  int size() const { return limit_ + 1; }
  bool empty() const { return limit_ < 0; }
  void clear() { limit_ = -1; }
  void add(int e) {
    assert(limit_ + 1 < static_cast<int>(dense_.size()));
    dense_[++limit_] = e;
  }
  int operator[](int i) const { return dense_[i]; }
  // Swap-removal of the element at dense position i.
  void removeAtPosition(int i) {
    assert(0 <= i && i <= limit_);
    dense_[i] = dense_[limit_--];
  }

 protected:
  std::vector<int> dense_;
  int limit_ = -1;
};

// Classic sparse set over values 0..capacity-1 with O(1) add/remove/contains.
// dense_ is always a permutation of 0..capacity-1 and dense_[sparse_[v]] == v.
class SetSparse {
 public:
  explicit SetSparse(int capacity, bool full = false)
      : dense_(capacity), sparse_(capacity), limit_(full ? capacity - 1 : -1) {
    for (int i = 0; i < capacity; ++i) dense_[i] = sparse_[i] = i;
  }

  int capacity() const { return static_cast<int>(dense_.size()); }
  int size() const { return limit_ + 1; }
  bool empty() const { return limit_ < 0; }
  bool contains(int v) const { return sparse_[v] <= limit_; }
  int operator[](int i) const { return dense_[i]; }

  void clear() { limit_ = -1; }
  void fill() { limit_ = capacity() - 1; }

  void add(int v) {
    assert(!contains(v));
    swapToPosition(v, ++limit_);
  }
  void remove(int v) {
    assert(contains(v));
    swapToPosition(v, limit_--);
  }
  // Swap-removal by dense position (handy when iterating downward).
  void removeAtPosition(int i) {
    assert(0 <= i && i <= limit_);
    swapToPosition(dense_[i], limit_--);
  }

 protected:
  void swapToPosition(int v, int pos) {
    int w = dense_[pos], p = sparse_[v];
    dense_[pos] = v;
    dense_[p] = w;
    sparse_[v] = pos;
    sparse_[w] = p;
  }

  std::vector<int> dense_;
  std::vector<int> sparse_;
  int limit_ = -1;
};

// Sparse set whose removals can be undone per level: restoring a level just
// moves the limit back, since swap-removal keeps removed values in dense_.
// Removal levels must be non-decreasing between two restores (search descends).
class SetSparseReversible : public SetSparse {
 public:
  SetSparseReversible(int capacity, bool full = true) : SetSparse(capacity, full) {}

  void removeAtLevel(int v, int level) {
    recordLevel(level);
    remove(v);
  }
  void removeAtPositionAtLevel(int i, int level) {
    recordLevel(level);
    removeAtPosition(i);
  }

  // Undoes every removal performed at a level >= level.
  void restoreBefore(int level) {
    while (!recorded_.empty() && recorded_.back() >= level) {
      limit_ = limitAt_[recorded_.back()];
      recorded_.pop_back();
    }
  }

 private:
  void recordLevel(int level) {
    assert(recorded_.empty() || recorded_.back() <= level);
    if (recorded_.empty() || recorded_.back() < level) {
      if (static_cast<int>(limitAt_.size()) <= level) limitAt_.resize(level + 1);
      limitAt_[level] = limit_;
      recorded_.push_back(level);
    }
  }

  std::vector<int> limitAt_;   // limit before the first removal at that level
  std::vector<int> recorded_;  // increasing stack of levels with removals
};

// Doubly linked list over 0..capacity-1 kept in increasing order, with
// level-stamped removals. Removed indexes stay reachable: next_ of a removed
// index still points to its old successor, while prev_ is reused to thread the
// chain of removals in reverse deletion order (head = lastRemoved()). That is
// exactly the order needed to restore, so restoreBefore() walks the chain and
// relinks while removal stamps are >= the target level.
class SetLinkedFinite {
 public:
  explicit SetLinkedFinite(int capacity)
      : prev_(capacity), next_(capacity), removedLevel_(capacity, -1),
        first_(capacity > 0 ? 0 : -1), last_(capacity - 1), size_(capacity) {
    for (int i = 0; i < capacity; ++i) {
      prev_[i] = i - 1;
      next_[i] = i + 1 < capacity ? i + 1 : -1;
    }
  }

  int capacity() const { return static_cast<int>(next_.size()); }
  int size() const { return size_; }
  bool empty() const { return size_ == 0; }
  bool contains(int i) const { return removedLevel_[i] == -1; }
  int first() const { return first_; }
  int last() const { return last_; }
  int next(int i) const { return next_[i]; }
  int prev(int i) const { return prev_[i]; }

  // Reverse-deletion-order view of the removed indexes.
  int lastRemoved() const { return lastRemoved_; }
  int prevRemoved(int i) const { assert(!contains(i)); return prev_[i]; }
  int removedLevel(int i) const { return removedLevel_[i]; }

  void remove(int i, int level) {
    assert(contains(i));
    int p = prev_[i], n = next_[i];
    if (p == -1) first_ = n; else next_[p] = n;
    if (n == -1) last_ = p; else prev_[n] = p;
    removedLevel_[i] = level;
    prev_[i] = lastRemoved_;
    lastRemoved_ = i;
    --size_;
  }

  // Puts back every index removed at a level >= level; returns how many.
  int restoreBefore(int level) {
    int count = 0;
    while (lastRemoved_ != -1 && removedLevel_[lastRemoved_] >= level) {
      int i = lastRemoved_;
      lastRemoved_ = prev_[i];
      int n = next_[i];                      // old successor, already present
      int p = n == -1 ? last_ : prev_[n];    // old predecessor
      prev_[i] = p;
      if (p == -1) first_ = i; else next_[p] = i;
      if (n == -1) last_ = i; else prev_[n] = i;
      removedLevel_[i] = -1;
      ++size_;
      ++count;
    }
    return count;
  }

 private:
  std::vector<int> prev_;
  std::vector<int> next_;
  std::vector<int> removedLevel_;
  int first_;
  int last_;
  int lastRemoved_ = -1;
  int size_;
};

}  // namespace coral

#endif
