#pragma once

#include <cstdint>
#include <vector>

namespace opspace {

// All set arguments are subsets of the 1-based ground set {1..n}. Inputs may
// arrive in any order (set semantics); they are canonicalized internally and
// duplicates are rejected.

std::uint64_t binomial(int n, int k);

// k-subsets of {1..n} as ascending tuples, in lexicographic order.
std::vector<std::vector<int>> subsets_lex(int n, int k);

// Bijection between k-subsets of {1..n} and 0..C(n,k)-1, lex order
// (combinatorial number system).
class SubsetIndexer {
  public:
    SubsetIndexer(int n, int k);

    int n() const { return n_; }
    int k() const { return k_; }
    std::size_t size() const { return size_; }

    std::size_t rank(const std::vector<int>& subset) const;
    std::vector<int> unrank(std::size_t r) const;

  private:
    int n_;
    int k_;
    std::size_t size_;
};

// Sign of a permutation of {1..m} given as the full image sequence.
int perm_sign(const std::vector<int>& perm);

// Signature of the concatenation (I asc, i, J asc) read as a permutation of
// {1..n}, n = |I| + 1 + |J|. I, {i}, J must partition {1..n}.
int epsilon_one(const std::vector<int>& I, int i, const std::vector<int>& J);

// (-1)^|{ j in J : j < i }|, the sign picked up when inserting i into the
// ascending tuple J. Requires i not in J.
int insertion_sign(int i, const std::vector<int>& J);

// Sorted copy with duplicate/range validation against {1..limit}
// (limit 0 skips the upper bound check).
std::vector<int> canonical_subset(std::vector<int> s, int limit, const char* what);

// s1 and s2 disjoint?
bool disjoint(const std::vector<int>& s1, const std::vector<int>& s2);

} // namespace opspace
