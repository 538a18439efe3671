#include "cycloek/table.hpp"

#include <atomic>
#include <condition_variable>
#include <fstream>
#include <iostream>
#include <map>
#include <mutex>
#include <sstream>
#include <thread>

#include "cycloek/specfun.hpp"

namespace cycloek {

namespace {

TableRow assemble_row(u64 q, ddouble s_q, ddouble s_tail, ddouble gamma_q,
                      double im_ratio) {
    TableRow row;
    row.q = q;
    row.s_q = s_q;
    row.q_s_q = s_q * static_cast<double>(q);
    row.gamma_q = gamma_q;
    row.gamma_over_log = gamma_q / log(ddouble(static_cast<double>(q)));
    row.ratio = e1_ratio_from(s_q, gamma_q, q);
    row.s_tail_bound = s_tail;
    row.im_ratio_sum = im_ratio;
    return row;
}

}  // namespace

TableRow compute_table_row(u64 q, const TableConfig& cfg,
                           std::span<const u64> primes) {
    PrimeModulus m = primitive_root(q);
    SqCqScan scan = primes.empty()
                        ? scan_sq_cq_with(m, cfg.pmax, ddouble(1.0), false)
                        : scan_sq_cq_primes(m, primes, cfg.pmax);
    EkOptions opts;
    opts.precision = cfg.precision;
    opts.want_alpha = false;
    opts.threads = 1;
    EkResult ek = euler_kronecker(q, opts);
    return assemble_row(q, scan.sq.value, scan.sq.tail_bound, ek.gamma_q,
                        ek.im_ratio_sum);
}

// ---- cache ----

namespace {

std::string fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    std::ostringstream os;
    os << std::hex << h;
    return os.str();
}

}  // namespace

std::string RowCache::config_digest(const TableConfig& cfg) {
    std::ostringstream os;
    os << "pmax=" << cfg.pmax
       << ";precision=" << (cfg.precision == Precision::high ? "high" : "fast")
       << ";tsum=" << detail::kTsumTerms << ";shift=32";
    return fnv1a(os.str());
}

RowCache::RowCache(std::filesystem::path dir, std::string digest)
    : dir_(std::move(dir)), digest_(std::move(digest)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec)
        std::cerr << "warning: cannot create cache directory " << dir_ << ": "
                  << ec.message() << "\n";
}

std::optional<TableRow> RowCache::load(u64 q) const {
    std::ifstream in(dir_ / ("q" + std::to_string(q) + ".row"));
    if (!in) return std::nullopt;
    std::map<std::string, std::string> kv;
    std::string key, value;
    while (in >> key >> value) kv[key] = value;
    if (kv["version"] != kVersionTag || kv["digest"] != digest_) return std::nullopt;
    try {
        if (kv.at("q") != std::to_string(q)) return std::nullopt;
        TableRow row;
        row.q = q;
        row.s_q = from_string(kv.at("s_q"));
        row.q_s_q = from_string(kv.at("q_s_q"));
        row.gamma_q = from_string(kv.at("gamma_q"));
        row.gamma_over_log = from_string(kv.at("gamma_over_log"));
        row.ratio = from_string(kv.at("ratio"));
        row.s_tail_bound = from_string(kv.at("s_tail"));
        row.im_ratio_sum = std::stod(kv.at("im_ratio"));
        return row;
    } catch (const std::exception&) {
        return std::nullopt;
    }
}

void RowCache::store(const TableRow& row) const {
    auto path = dir_ / ("q" + std::to_string(row.q) + ".row");
    std::ofstream out(path);
    if (!out) {
        std::cerr << "warning: cache write failed for q=" << row.q << "\n";
        return;
    }
    out << "version " << kVersionTag << "\n"
        << "digest " << digest_ << "\n"
        << "q " << row.q << "\n"
        << "s_q " << to_string(row.s_q) << "\n"
        << "q_s_q " << to_string(row.q_s_q) << "\n"
        << "gamma_q " << to_string(row.gamma_q) << "\n"
        << "gamma_over_log " << to_string(row.gamma_over_log) << "\n"
        << "ratio " << to_string(row.ratio) << "\n"
        << "s_tail " << to_string(row.s_tail_bound) << "\n"
        << "im_ratio " << row.im_ratio_sum << "\n";
    if (!out.good())
        std::cerr << "warning: cache write failed for q=" << row.q << "\n";
}

// ---- batch computation with ordered streaming ----

u64 compute_table(u64 q_max, const TableConfig& cfg,
                  const std::function<void(const TableRow&)>& on_row) {
    if (q_max < 3) throw std::invalid_argument("q_max must be at least 3");
    std::vector<u64> qs;
    for (u64 p : sieve_primes(q_max))
        if (p >= 3) qs.push_back(p);

    std::optional<RowCache> cache;
    if (!cfg.cache_dir.empty())
        cache.emplace(cfg.cache_dir, RowCache::config_digest(cfg));

    std::vector<u64> primes = sieve_primes(cfg.pmax);

    const std::size_t n = qs.size();
    std::vector<std::optional<TableRow>> done(n);
    std::mutex mu;
    std::condition_variable cv;
    std::atomic<std::size_t> next{0};
    std::atomic<u64> cache_hits{0};

    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            u64 q = qs[i];
            TableRow row;
            bool from_cache = false;
            if (cache) {
                if (auto hit = cache->load(q)) {
                    row = *hit;
                    from_cache = true;
                    cache_hits.fetch_add(1);
                }
            }
            if (!from_cache) {
                row = compute_table_row(q, cfg, primes);
                if (cache) cache->store(row);
            }
            {
                std::lock_guard<std::mutex> lock(mu);
                done[i] = std::move(row);
            }
            cv.notify_all();
        }
    };

    unsigned nt = std::max(1u, cfg.threads);
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);

    {
        std::unique_lock<std::mutex> lock(mu);
        for (std::size_t i = 0; i < n; ++i) {
            cv.wait(lock, [&] { return done[i].has_value(); });
            TableRow row = std::move(*done[i]);
            done[i].reset();
            lock.unlock();
            on_row(row);
            lock.lock();
        }
    }
    for (auto& t : pool) t.join();
    return cache_hits.load();
}

}  // namespace cycloek
