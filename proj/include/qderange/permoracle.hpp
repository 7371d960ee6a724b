#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <thread>
#include <vector>

#include "qderange/integer.hpp"
#include "qderange/qpoly.hpp"

namespace qderange {

// Signed permutation of [n]: entry i holds pi_i, with barred letters encoded
// as negative integers. Under that encoding the barred order
// n' < ... < 1' < 1 < ... < n is the natural integer order.
class SignedPerm {
public:
    explicit SignedPerm(std::vector<int> entries) : e_(std::move(entries)) {
        const std::size_t n = e_.size();
        std::vector<bool> seen(n, false);
        for (int v : e_) {
            const int a = v < 0 ? -v : v;
            if (a < 1 || static_cast<std::size_t>(a) > n || seen[a - 1])
                throw std::invalid_argument("SignedPerm: |entries| must be a permutation of [n]");
            seen[a - 1] = true;
        }
    }

    std::size_t size() const { return e_.size(); }
    const std::vector<int>& entries() const { return e_; }

private:
    std::vector<int> e_;
};

// Major index of an unsigned permutation: sum of positions i (1-based) with
// pi_i > pi_{i+1}.
inline unsigned long maj_A(const std::vector<int>& perm) {
    unsigned long m = 0;
    for (std::size_t i = 1; i < perm.size(); ++i)
        if (perm[i - 1] > perm[i]) m += i;
    return m;
}

// Major index of a signed permutation under the barred order.
inline unsigned long maj_B(const SignedPerm& p) { return maj_A(p.entries()); }

inline unsigned long neg(const SignedPerm& p) {
    unsigned long c = 0;
    for (int v : p.entries())
        if (v < 0) ++c;
    return c;
}

// fmaj = 2 maj + neg.
inline unsigned long fmaj(const SignedPerm& p) { return 2 * maj_B(p) + neg(p); }

// Histogram of a statistic over an enumerated family: value -> count.
class CoefficientHistogram {
public:
    using Map = std::map<std::size_t, Integer>;

    CoefficientHistogram() = default;
    explicit CoefficientHistogram(Map counts) : counts_(std::move(counts)) {}

    const Map& counts() const { return counts_; }
    bool empty() const { return counts_.empty(); }

    Integer total() const {
        Integer t(0);
        for (const auto& [k, c] : counts_) t += c;
        return t;
    }

    QPoly to_poly() const {
        if (counts_.empty()) return QPoly::zero();
        std::vector<Integer> coeffs(counts_.rbegin()->first + 1);
        for (const auto& [k, c] : counts_) coeffs[k] = c;
        return QPoly(std::move(coeffs));
    }

    friend bool operator==(const CoefficientHistogram& a, const CoefficientHistogram& b) {
        return a.counts_ == b.counts_;
    }
    friend bool operator!=(const CoefficientHistogram& a, const CoefficientHistogram& b) {
        return !(a == b);
    }

private:
    Map counts_;
};

namespace detail {

// Runs `shard(s, counts)` for s = 0..shards-1 across `workers` threads and
// merges the per-shard tallies in shard order, so the worker count can never
// change the result.
template <typename ShardFn>
CoefficientHistogram run_sharded(std::size_t shards, unsigned workers, std::size_t max_stat,
                                 ShardFn shard) {
    std::vector<std::vector<std::uint64_t>> tallies(
        shards, std::vector<std::uint64_t>(max_stat + 1, 0));
    if (workers <= 1 || shards <= 1) {
        for (std::size_t s = 0; s < shards; ++s) shard(s, tallies[s]);
    } else {
        const unsigned w = std::min<std::size_t>(workers, shards);
        std::vector<std::thread> pool;
        pool.reserve(w);
        for (unsigned t = 0; t < w; ++t) {
            pool.emplace_back([&, t] {
                for (std::size_t s = t; s < shards; s += w) shard(s, tallies[s]);
            });
        }
        for (auto& th : pool) th.join();
    }
    CoefficientHistogram::Map merged;
    for (const auto& tally : tallies)
        for (std::size_t k = 0; k <= max_stat; ++k)
            if (tally[k]) merged[k] += Integer(static_cast<long>(tally[k]));
    return CoefficientHistogram(std::move(merged));
}

}  // namespace detail

// Histogram of maj over all derangements of [n], by exhaustive enumeration of
// the full symmetric group with the pi_i != i filter applied verbatim.
// Sharded by the value of pi_1. Limited to n <= 9.
inline CoefficientHistogram enumerate_derangements_A(unsigned long n, unsigned workers = 1) {
    if (n > 9) throw std::length_error("enumerate_derangements_A: limited to n <= 9");
    if (n == 0) {
        CoefficientHistogram::Map m;
        m[0] = Integer(1);  // the empty permutation is vacuously a derangement
        return CoefficientHistogram(std::move(m));
    }
    const std::size_t max_stat = n * (n - 1) / 2;
    return detail::run_sharded(n, workers, max_stat, [n](std::size_t s, std::vector<std::uint64_t>& tally) {
        const int first = static_cast<int>(s) + 1;
        std::vector<int> perm;
        perm.reserve(n);
        perm.push_back(first);
        for (int j = 1; j <= static_cast<int>(n); ++j)
            if (j != first) perm.push_back(j);
        do {
            bool deranged = true;
            for (std::size_t i = 0; i < n; ++i)
                if (perm[i] == static_cast<int>(i) + 1) {
                    deranged = false;
                    break;
                }
            if (deranged) ++tally[maj_A(perm)];
        } while (std::next_permutation(perm.begin() + 1, perm.end()));
    });
}

// Histogram of fmaj over all B_n-derangements (pi_i != i; pi_i = -i is
// allowed). Sharded by the signed value of pi_1. Limited to n <= 7.
inline CoefficientHistogram enumerate_derangements_B(unsigned long n, unsigned workers = 1) {
    if (n > 7) throw std::length_error("enumerate_derangements_B: limited to n <= 7");
    if (n == 0) {
        CoefficientHistogram::Map m;
        m[0] = Integer(1);
        return CoefficientHistogram(std::move(m));
    }
    const std::size_t max_stat = n * n;
    return detail::run_sharded(2 * n, workers, max_stat, [n](std::size_t s, std::vector<std::uint64_t>& tally) {
        const int letter = static_cast<int>(s / 2) + 1;
        const int first = (s % 2 == 0) ? letter : -letter;
        std::vector<int> rest;
        rest.reserve(n - 1);
        for (int j = 1; j <= static_cast<int>(n); ++j)
            if (j != letter) rest.push_back(j);
        std::vector<int> signedp(n);
        signedp[0] = first;
        do {
            for (std::uint64_t mask = 0; mask < (1ull << (n - 1)); ++mask) {
                for (std::size_t i = 0; i + 1 < n; ++i)
                    signedp[i + 1] = (mask >> i) & 1 ? -rest[i] : rest[i];
                bool deranged = true;
                unsigned long negs = first < 0 ? 1 : 0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (signedp[i] == static_cast<int>(i) + 1) {
                        deranged = false;
                        break;
                    }
                    if (i > 0 && signedp[i] < 0) ++negs;
                }
                if (deranged) ++tally[2 * maj_A(signedp) + negs];
            }
        } while (std::next_permutation(rest.begin(), rest.end()));
    });
}

}  // namespace qderange
