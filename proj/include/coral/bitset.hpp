#ifndef CORAL_BITSET_HPP
#define CORAL_BITSET_HPP

#include <bit>
#include <cstdint>
#include <vector>

#include "coral/sets.hpp"

namespace coral {

// Fixed-capacity bitset over 64-bit words with trailed modifications.
// Zeroed words leave the nonZero_ sparse set so that all operations only touch
// words that still carry bits. Word values changed at a level are saved on a
// trail and restored on backtrack; restoring the sparse set is just a limit
// move, so both views stay consistent.
class ReversibleSparseBitset {
 public:
  explicit ReversibleSparseBitset(int nbits)
      : nbits_(nbits),
        words_((nbits + 63) / 64, 0),
        mask_(words_.size(), 0),
        nonZero_(static_cast<int>(words_.size()), /*full=*/false) {
    for (int i = 0; i < nbits; ++i) words_[i >> 6] |= uint64_t{1} << (i & 63);
    for (int w = 0; w < static_cast<int>(words_.size()); ++w)
      if (words_[w] != 0) nonZero_.add(w);
  }

  int sizeInBits() const { return nbits_; }
  int wordCount() const { return static_cast<int>(words_.size()); }
  bool empty() const { return nonZero_.empty(); }
  uint64_t word(int w) const { return words_[w]; }

  bool testBit(int b) const { return (words_[b >> 6] >> (b & 63)) & 1; }

  int countBits() const {
    int n = 0;
    for (int i = 0; i < nonZero_.size(); ++i) n += std::popcount(words_[nonZero_[i]]);
    return n;
  }

  // Scratch mask manipulation; only words still in nonZero_ matter.
  void clearMask() {
    for (int i = 0; i < nonZero_.size(); ++i) mask_[nonZero_[i]] = 0;
  }
  void addToMask(const std::vector<uint64_t>& bv) {
    for (int i = 0; i < nonZero_.size(); ++i) {
      int w = nonZero_[i];
      mask_[w] |= bv[w];
    }
  }

  // words &= mask. Returns false if the whole set became empty.
  bool intersectWithMask(int level) { return apply(level, /*subtract=*/false); }
  // words &= ~mask.
  bool subtractMask(int level) { return apply(level, /*subtract=*/true); }

  // True iff this set intersects bv; on success *residueWord is the word where
  // the intersection was found (checked first on the next call by the caller).
  bool intersects(const std::vector<uint64_t>& bv, int* residueWord) const {
    int r = *residueWord;
    if (r < wordCount() && (words_[r] & bv[r]) != 0) return true;
    for (int i = 0; i < nonZero_.size(); ++i) {
      int w = nonZero_[i];
      if ((words_[w] & bv[w]) != 0) {
        *residueWord = w;
        return true;
      }
    }
    return false;
  }

  void restoreBefore(int level) {
    while (!marks_.empty() && marks_.back().level >= level) {
      for (size_t i = trail_.size(); i > marks_.back().start; --i)
        words_[trail_[i - 1].word] = trail_[i - 1].value;
      trail_.resize(marks_.back().start);
      marks_.pop_back();
    }
    nonZero_.restoreBefore(level);
  }

 private:
  bool apply(int level, bool subtract) {
    for (int i = nonZero_.size() - 1; i >= 0; --i) {
      int w = nonZero_[i];
      uint64_t nv = subtract ? (words_[w] & ~mask_[w]) : (words_[w] & mask_[w]);
      if (nv == words_[w]) continue;
      saveWord(w, level);
      words_[w] = nv;
      if (nv == 0) nonZero_.removeAtPositionAtLevel(i, level);
    }
    return !nonZero_.empty();
  }

  void saveWord(int w, int level) {
    if (marks_.empty() || marks_.back().level < level)
      marks_.push_back({level, trail_.size()});
    trail_.push_back({w, words_[w]});
  }

  struct Saved { int word; uint64_t value; };
  struct Mark { int level; size_t start; };

  int nbits_;
  std::vector<uint64_t> words_;
  std::vector<uint64_t> mask_;
  SetSparseReversible nonZero_;
  std::vector<Saved> trail_;
  std::vector<Mark> marks_;
};

}  // namespace coral

#endif
