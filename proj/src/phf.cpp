#include "hats/phf.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

namespace hats {

namespace {

void check_shape(const PhfArray& a) {
    if (a.symbols < 1) throw error("phf: symbol count must be positive");
    if (a.t < 1) throw error("phf: t must be positive");
    if (a.columns < 1) throw error("phf: column count must be positive");
    if (a.symbols > 64) throw error("phf: more than 64 symbols unsupported");
    for (const auto& row : a.rows) {
        if (int(row.size()) != a.columns) throw error("phf: ragged rows");
        for (int x : row)
            if (x < 0 || x >= a.symbols) throw error("phf: entry out of range");
    }
}

u64 comb_count(int k, int t) {
    u128 c = 1;
    for (int i = 1; i <= t; ++i) c = c * u128(k - t + i) / u128(i);
    const u128 cap = u128(~u64(0));
    return c > cap ? ~u64(0) : u64(c);
}

// Unrank into the `rank`-th t-combination of [k] in lexicographic order.
void unrank_combination(int k, int t, u64 rank, std::vector<int>& out) {
    out.assign(t, 0);
    int c = 0;
    for (int i = 0; i < t; ++i) {
        while (true) {
            u64 block = comb_count(k - c - 1, t - i - 1);
            if (rank < block) break;
            rank -= block;
            ++c;
        }
        out[i] = c++;
    }
}

bool next_combination(std::vector<int>& comb, int k) {
    int t = int(comb.size());
    int i = t - 1;
    while (i >= 0 && comb[i] == k - t + i) --i;
    if (i < 0) return false;
    ++comb[i];
    for (int j = i + 1; j < t; ++j) comb[j] = comb[j - 1] + 1;
    return true;
}

bool subset_separated(const PhfArray& a, const std::vector<int>& cols) {
    for (const auto& row : a.rows) {
        u64 seen = 0;
        bool distinct = true;
        for (int c : cols) {
            u64 bit = u64(1) << row[c];
            if (seen & bit) {
                distinct = false;
                break;
            }
            seen |= bit;
        }
        if (distinct) return true;
    }
    return false;
}

} // namespace

PhfCheck verify_phf(const PhfArray& array, int threads) {
    check_shape(array);
    if (array.t > array.columns) throw error("phf: t exceeds column count");
    const u64 total = comb_count(array.columns, array.t);

    std::atomic<u64> first_bad{~u64(0)};
    auto worker = [&](u64 lo, u64 hi) {
        std::vector<int> cols;
        unrank_combination(array.columns, array.t, lo, cols);
        for (u64 rank = lo; rank < hi; ++rank) {
            if (rank >= first_bad.load(std::memory_order_relaxed)) break;
            if (!subset_separated(array, cols)) {
                u64 seen = first_bad.load(std::memory_order_relaxed);
                while (rank < seen && !first_bad.compare_exchange_weak(seen, rank)) {
                }
                break;
            }
            next_combination(cols, array.columns);
        }
    };

    if (threads <= 1 || total < 1024) {
        worker(0, total);
    } else {
        std::vector<std::thread> pool;
        u64 chunk = (total + u64(threads) - 1) / u64(threads);
        for (int t = 0; t < threads; ++t) {
            u64 lo = std::min(total, chunk * u64(t));
            u64 hi = std::min(total, lo + chunk);
            if (lo < hi) pool.emplace_back(worker, lo, hi);
        }
        for (auto& th : pool) th.join();
    }

    PhfCheck result;
    u64 bad = first_bad.load();
    if (bad != ~u64(0)) {
        result.ok = false;
        unrank_combination(array.columns, array.t, bad, result.witness_columns);
    }
    return result;
}

PhfSearchResult search_phf(int rows, int columns, int symbols, int t, u64 budget) {
    if (rows < 0 || columns < 1 || symbols < 1 || symbols > 64 || t < 1)
        throw error("phf search: bad parameters");

    PhfSearchResult result;
    PhfArray array;
    array.symbols = symbols;
    array.t = t;
    array.columns = columns;
    array.rows.assign(rows, std::vector<int>(columns, 0));

    // candidate columns as base-`symbols` numbers over `rows` digits
    u128 per_column = 1;
    for (int r = 0; r < rows; ++r) {
        per_column *= u128(symbols);
        if (per_column > u128(~u64(0))) throw error("phf search: column space too large");
    }
    const u64 candidates = u64(per_column);

    std::vector<u64> chosen(columns, 0);
    std::vector<int> subset;

    auto write_column = [&](int j, u64 cand) {
        for (int r = rows - 1; r >= 0; --r) {
            array.rows[r][j] = int(cand % u64(symbols));
            cand /= u64(symbols);
        }
    };
    // every (t-1)-subset of earlier columns must be separated together with j
    auto consistent = [&](int j) {
        if (j + 1 < t) return true;
        subset.assign(t - 1, 0);
        for (int i = 0; i < t - 1; ++i) subset[i] = i;
        std::vector<int> cols(t);
        do {
            for (int i = 0; i < t - 1; ++i) cols[i] = subset[i];
            cols[t - 1] = j;
            if (!subset_separated(array, cols)) return false;
        } while (next_combination(subset, j));
        return true;
    };

    int j = 0;
    u64 cand = 0;
    while (true) {
        if (cand == candidates) {
            if (j == 0) {
                result.status = PhfSearchStatus::none_found;
                return result;
            }
            --j;
            cand = chosen[j] + 1;
            continue;
        }
        if (++result.nodes > budget) {
            result.status = PhfSearchStatus::budget_exceeded;
            return result;
        }
        write_column(j, cand);
        if (consistent(j)) {
            chosen[j] = cand;
            if (j + 1 == columns) {
                if (columns >= t && !verify_phf(array).ok)
                    throw error("phf search: internal consistency failure");
                result.status = PhfSearchStatus::found;
                result.array = array;
                return result;
            }
            ++j;
            cand = 0;
        } else {
            ++cand;
        }
    }
}

PhfArray binary_separating(int k) {
    if (k < 1) throw error("binary_separating: k must be positive");
    int n = 0;
    while ((1 << n) < k) ++n;
    PhfArray array;
    array.symbols = 2;
    array.t = 2;
    array.columns = k;
    array.rows.assign(n, std::vector<int>(k, 0));
    for (int j = 0; j < k; ++j)
        for (int r = 0; r < n; ++r)
            array.rows[r][j] = (j >> (n - 1 - r)) & 1; // row 0 = most significant bit
    return array;
}

} // namespace hats
