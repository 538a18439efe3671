#pragma once

// Reference-table rows (one per odd prime q): S(q), qS(q), gamma_q,
// gamma_q/log q, (q-1)e1/e0.  Batch computation streams rows in q order
// from a small worker pool and can resume through the row cache.

#include <cstdint>
#include <filesystem>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cycloek/constants.hpp"

namespace cycloek {

struct TableRow {
    u64 q = 0;
    ddouble s_q{};
    ddouble q_s_q{};
    ddouble gamma_q{};
    ddouble gamma_over_log{};
    ddouble ratio{};
    // diagnostics
    ddouble s_tail_bound{};
    double im_ratio_sum = 0.0;
};

struct TableConfig {
    u64 pmax = kTablePmax;
    Precision precision = Precision::high;
    unsigned threads = 1;
    std::filesystem::path cache_dir;  // empty: no cache
};

// Single row; sieves its own primes when `primes` is empty.
TableRow compute_table_row(u64 q, const TableConfig& cfg,
                           std::span<const u64> primes = {});

// All rows for odd primes q <= q_max, emitted in ascending q order.
// Returns the number of cache hits.
u64 compute_table(u64 q_max, const TableConfig& cfg,
                  const std::function<void(const TableRow&)>& on_row);

// Cache of finished rows, one text file per q, keyed by code version and a
// digest of the numeric configuration; mismatches are recomputed.
class RowCache {
public:
    RowCache(std::filesystem::path dir, std::string digest);
    std::optional<TableRow> load(u64 q) const;
    // best effort: failures degrade to a warning on stderr
    void store(const TableRow& row) const;
    static std::string config_digest(const TableConfig& cfg);

private:
    std::filesystem::path dir_;
    std::string digest_;
};

inline constexpr const char* kVersionTag = "cycloek-1";

}  // namespace cycloek
