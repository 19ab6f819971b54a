#ifndef HATS_PHF_HPP
#define HATS_PHF_HPP

#include <optional>
#include <vector>

#include "hats/common.hpp"

namespace hats {

// Perfect hash family PHF(N; k, v, t): an N x k array over v symbols in
// which every choice of t columns has a row with pairwise-distinct entries
// on those columns.
struct PhfArray {
    int symbols = 2; // v
    int t = 2;
    int columns = 0; // k; kept explicit so zero-row arrays stay well-formed
    std::vector<std::vector<int>> rows;

    int row_count() const { return int(rows.size()); }
};

struct PhfCheck {
    bool ok = true;
    std::vector<int> witness_columns; // first failing t-subset, lexicographic
};

// Exhaustive check over all C(k, t) column subsets. Throws when t > k or the
// array is malformed (ragged rows, out-of-range entries). The witness is the
// lexicographically first violating subset for any thread count.
PhfCheck verify_phf(const PhfArray& array, int threads = 1);

enum class PhfSearchStatus { found, none_found, budget_exceeded };

struct PhfSearchResult {
    PhfSearchStatus status = PhfSearchStatus::none_found;
    std::optional<PhfArray> array;
    u64 nodes = 0;
};

// Column-by-column backtracking in deterministic lexicographic order; every
// partial prefix already satisfies the property on its own columns.
PhfSearchResult search_phf(int rows, int columns, int symbols, int t,
                           u64 budget = 50000000ULL);

// Closed form for v = t = 2: column j is the binary expansion of j over
// ceil(log2 k) rows; distinct columns differ in some row.
PhfArray binary_separating(int k);

} // namespace hats

#endif
