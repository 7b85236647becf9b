#include "opspace/combinat.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace opspace {

std::uint64_t binomial(int n, int k) {
    if (n < 0 || k < 0) throw std::invalid_argument("binomial: negative argument");
    if (k > n) return 0;
    if (n > 62) throw std::invalid_argument("binomial: n too large for exact 64-bit value");
    k = std::min(k, n - k);
    std::uint64_t r = 1;
    for (int i = 1; i <= k; ++i) {
        r = r * static_cast<std::uint64_t>(n - k + i) / static_cast<std::uint64_t>(i);
    }
    return r;
}

std::vector<int> canonical_subset(std::vector<int> s, int limit, const char* what) {
    std::sort(s.begin(), s.end());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (s[i] < 1 || (limit > 0 && s[i] > limit))
            throw std::invalid_argument(std::string(what) + ": element " + std::to_string(s[i]) +
                                        " outside 1.." + std::to_string(limit));
        if (i > 0 && s[i] == s[i - 1])
            throw std::invalid_argument(std::string(what) + ": duplicate element " +
                                        std::to_string(s[i]));
    }
    return s;
}

bool disjoint(const std::vector<int>& s1, const std::vector<int>& s2) {
    for (int a : s1)
        for (int b : s2)
            if (a == b) return false;
    return true;
}

std::vector<std::vector<int>> subsets_lex(int n, int k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("subsets_lex: need 0 <= k <= n");
    std::vector<std::vector<int>> out;
    out.reserve(binomial(n, k));
    std::vector<int> cur(k);
    for (int i = 0; i < k; ++i) cur[i] = i + 1;
    while (true) {
        out.push_back(cur);
        int i = k - 1;
        while (i >= 0 && cur[i] == n - (k - 1 - i)) --i;
        if (i < 0) break;
        ++cur[i];
        for (int j = i + 1; j < k; ++j) cur[j] = cur[j - 1] + 1;
    }
    return out;
}

SubsetIndexer::SubsetIndexer(int n, int k) : n_(n), k_(k) {
    if (n < 0 || k < 0 || k > n) throw std::invalid_argument("SubsetIndexer: need 0 <= k <= n");
    size_ = static_cast<std::size_t>(binomial(n, k));
}

std::size_t SubsetIndexer::rank(const std::vector<int>& subset) const {
    std::vector<int> s = canonical_subset(subset, n_, "SubsetIndexer::rank");
    if (static_cast<int>(s.size()) != k_)
        throw std::invalid_argument("SubsetIndexer::rank: size " + std::to_string(s.size()) +
                                    ", expected " + std::to_string(k_));
    // lex rank: count subsets that agree on a prefix and then take a smaller value
    std::size_t r = 0;
    int prev = 0;
    for (int i = 0; i < k_; ++i) {
        for (int v = prev + 1; v < s[i]; ++v)
            r += static_cast<std::size_t>(binomial(n_ - v, k_ - 1 - i));
        prev = s[i];
    }
    return r;
}

std::vector<int> SubsetIndexer::unrank(std::size_t r) const {
    if (r >= size_) throw std::out_of_range("SubsetIndexer::unrank: rank " + std::to_string(r) +
                                            " >= " + std::to_string(size_));
    std::vector<int> s(k_);
    int prev = 0;
    for (int i = 0; i < k_; ++i) {
        int v = prev + 1;
        while (true) {
            std::size_t block = static_cast<std::size_t>(binomial(n_ - v, k_ - 1 - i));
            if (r < block) break;
            r -= block;
            ++v;
        }
        s[i] = v;
        prev = v;
    }
    return s;
}

int perm_sign(const std::vector<int>& perm) {
    const int m = static_cast<int>(perm.size());
    std::vector<bool> seen(m + 1, false);
    for (int v : perm) {
        if (v < 1 || v > m)
            throw std::invalid_argument("perm_sign: value " + std::to_string(v) +
                                        " outside 1.." + std::to_string(m));
        if (seen[v]) throw std::invalid_argument("perm_sign: repeated value " + std::to_string(v));
        seen[v] = true;
    }
    int sign = 1;
    for (int i = 0; i < m; ++i)
        for (int j = i + 1; j < m; ++j)
            if (perm[i] > perm[j]) sign = -sign;
    return sign;
}

int epsilon_one(const std::vector<int>& I, int i, const std::vector<int>& J) {
    std::vector<int> seq = canonical_subset(I, 0, "epsilon_one I");
    seq.push_back(i);
    std::vector<int> j = canonical_subset(J, 0, "epsilon_one J");
    seq.insert(seq.end(), j.begin(), j.end());
    // perm_sign validates that (I, i, J) partitions {1..n}
    return perm_sign(seq);
}

int insertion_sign(int i, const std::vector<int>& J) {
    int count = 0;
    for (int v : J) {
        if (v == i)
            throw std::invalid_argument("insertion_sign: element " + std::to_string(i) +
                                        " already present");
        if (v < i) ++count;
    }
    return (count % 2 == 0) ? 1 : -1;
}

} // namespace opspace
