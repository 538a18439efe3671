#include "cycloek/chartransform.hpp"

#include <atomic>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "cycloek/errors.hpp"
#include "cycloek/specfun.hpp"

namespace cycloek {

namespace {

// ---- power-of-two FFT with cached root tables ----

template <class R>
const std::vector<cplx<R>>& fft_roots(std::size_t L) {
    // roots[j] = e^{2 pi i j / L}, j < L/2;  j/L is exact for L a power of two.
    static std::map<std::size_t, std::vector<cplx<R>>> cache;
    static std::mutex mu;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(L);
    if (it != cache.end()) return it->second;
    std::vector<cplx<R>> roots(L / 2);
    for (std::size_t j = 0; j < L / 2; ++j) {
        R frac = R(static_cast<double>(j)) / R(static_cast<double>(L));
        roots[j] = unit_root(frac);
    }
    return cache.emplace(L, std::move(roots)).first->second;
}

template <class R>
void fft_pow2(std::vector<cplx<R>>& a, bool inverse) {
    const std::size_t L = a.size();
    if (L <= 1) return;
    const auto& roots = fft_roots<R>(L);
    for (std::size_t i = 1, j = 0; i < L; ++i) {
        std::size_t bit = L >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
    for (std::size_t len = 2; len <= L; len <<= 1) {
        std::size_t step = L / len;
        for (std::size_t i = 0; i < L; i += len) {
            std::size_t ridx = 0;
            for (std::size_t k = 0; k < len / 2; ++k, ridx += step) {
                cplx<R> w = roots[ridx];
                if (inverse) w = conj(w);
                cplx<R> u = a[i + k];
                cplx<R> t = a[i + k + len / 2] * w;
                a[i + k] = u + t;
                a[i + k + len / 2] = u - t;
            }
        }
    }
    if (inverse) {
        R inv = R(1.0) / R(static_cast<double>(L));
        for (auto& x : a) x = x * inv;
    }
}

std::size_t next_pow2(std::size_t n) {
    std::size_t L = 1;
    while (L < n) L <<= 1;
    return L;
}

// Fixed-size work units dispatched to a small pool; unit boundaries are
// independent of the thread count so rounding is reproducible.
void parallel_units(u64 nunits, unsigned threads,
                    const std::function<void(u64)>& body) {
    if (threads <= 1 || nunits <= 1) {
        for (u64 u = 0; u < nunits; ++u) body(u);
        return;
    }
    std::atomic<u64> next{0};
    auto worker = [&] {
        for (;;) {
            u64 u = next.fetch_add(1);
            if (u >= nunits) return;
            body(u);
        }
    };
    unsigned nt = std::min<unsigned>(threads, static_cast<unsigned>(nunits));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (unsigned t = 0; t < nt; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
}

// C0(M) = sum_{m=1}^{M} log(m)/m, shared across all q.
template <class R>
const R& tsum_shared_const() {
    static const R value = [] {
        using ops = real_ops<R>;
        R s(0.0);
        for (u64 m = 2; m <= detail::kTsumTerms; ++m) {
            R x(static_cast<double>(m));
            s = s + ops::log(x) / x;
        }
        return s;
    }();
    return value;
}

}  // namespace

template <class R>
DftPlan<R>::DftPlan(std::size_t n) : n_(n) {
    if (n == 0) throw std::invalid_argument("dft of empty vector");
    if ((n & (n - 1)) == 0) {
        padded_ = 0;  // plain power-of-two path
        return;
    }
    padded_ = next_pow2(2 * n - 1);
    chirp_.resize(n);
    const u64 twoN = 2 * static_cast<u64>(n);
    for (std::size_t k = 0; k < n; ++k) {
        // exact integer reduction of k^2 mod 2N; no argument-reduction loss
        u64 k2 = static_cast<u64>((static_cast<u128>(k) * k) % twoN);
        R frac = R(static_cast<double>(k2)) / R(static_cast<double>(twoN));
        chirp_[k] = unit_root(frac);
    }
    std::vector<cplx<R>> b(padded_);
    b[0] = conj(chirp_[0]);
    for (std::size_t k = 1; k < n; ++k) {
        b[k] = conj(chirp_[k]);
        b[padded_ - k] = conj(chirp_[k]);
    }
    fft_pow2(b, false);
    kernel_hat_ = std::move(b);
}

template <class R>
std::vector<cplx<R>> DftPlan<R>::apply(std::span<const cplx<R>> v) const {
    if (v.size() != n_) throw std::invalid_argument("dft plan size mismatch");
    if (padded_ == 0) {
        std::vector<cplx<R>> a(v.begin(), v.end());
        fft_pow2(a, false);
        return a;
    }
    std::vector<cplx<R>> a(padded_);
    for (std::size_t k = 0; k < n_; ++k) a[k] = v[k] * chirp_[k];
    fft_pow2(a, false);
    for (std::size_t k = 0; k < padded_; ++k) a[k] = a[k] * kernel_hat_[k];
    fft_pow2(a, true);
    std::vector<cplx<R>> out(n_);
    for (std::size_t j = 0; j < n_; ++j) out[j] = chirp_[j] * a[j];
    return out;
}

template class DftPlan<ddouble>;
template class DftPlan<double>;

template <class R>
std::vector<cplx<R>> dft(std::span<const cplx<R>> v) {
    DftPlan<R> plan(v.size());
    return plan.apply(v);
}

std::vector<cdd> dft(const std::vector<cdd>& v) {
    return dft<ddouble>(std::span<const cdd>(v));
}

template <class R>
std::vector<cplx<R>> dft_direct(std::span<const cplx<R>> v) {
    const std::size_t n = v.size();
    if (n == 0) throw std::invalid_argument("dft of empty vector");
    if (n > 100000) throw refusal_error("dft_direct refuses N > 100000");
    std::vector<cplx<R>> w(n);
    for (std::size_t j = 0; j < n; ++j)
        w[j] = unit_root(R(static_cast<double>(j)) / R(static_cast<double>(n)));
    std::vector<cplx<R>> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        cplx<R> acc{};
        std::size_t idx = 0;
        for (std::size_t k = 0; k < n; ++k) {
            acc += v[k] * w[idx];
            idx += j;
            if (idx >= n) idx -= n;
        }
        out[j] = acc;
    }
    return out;
}

template std::vector<cdd> dft<ddouble>(std::span<const cdd>);
template std::vector<cfl> dft<double>(std::span<const cfl>);
template std::vector<cdd> dft_direct<ddouble>(std::span<const cdd>);
template std::vector<cfl> dft_direct<double>(std::span<const cfl>);

std::vector<cdd> dft_direct(const std::vector<cdd>& v) {
    return dft_direct<ddouble>(std::span<const cdd>(v));
}

// ---- table builder ----

template <class R>
BasicCharTable<R> build_tables_of(const PrimeModulus& m, unsigned threads) {
    using ops = real_ops<R>;
    const u64 q = m.q;
    const std::size_t n = static_cast<std::size_t>(q - 1);
    BasicCharTable<R> table;
    table.modulus = m;
    table.root_pow.resize(n);
    {
        u64 r = 1;
        for (std::size_t k = 0; k < n; ++k) {
            table.root_pow[k] = static_cast<std::uint32_t>(r);
            r = mulmod(r, m.g, q);
        }
    }

    // psi(r_k/q), embarrassingly parallel over k.
    table.psi_vec.resize(n);
    {
        constexpr u64 kPsiChunk = 4096;
        u64 units = (n + kPsiChunk - 1) / kPsiChunk;
        parallel_units(units, threads, [&](u64 u) {
            u64 hi = std::min<u64>(n, (u + 1) * kPsiChunk);
            for (u64 k = u * kPsiChunk; k < hi; ++k)
                table.psi_vec[k] = detail::digamma_impl<R>(table.root_pow[k], q);
        });
    }

    // T(r/q) for all residues at once: bucket[r] = sum_{m<M} (log v - log q)/v
    // with v = m q + r, so T(r/q) = q * bucket[r] - C0 + tail(M, r/q).
    // Residue stripes own disjoint bucket ranges; within a stripe the logs
    // advance incrementally along each m-row (v consecutive), reseeded per
    // row, so results are identical for any thread count.
    const u64 M = detail::kTsumTerms;
    std::vector<R> bucket(q, R(0.0));
    const R logq = ops::log(R(static_cast<double>(q)));
    constexpr u64 kStripe = 8192;
    const u64 nstripes = (q - 1 + kStripe - 1) / kStripe;
    parallel_units(nstripes, threads, [&](u64 s) {
        const u64 r0 = 1 + s * kStripe;
        const u64 r1 = std::min(q, r0 + kStripe);
        for (u64 mm = 0; mm < M; ++mm) {
            u64 v = mm * q + r0;
            R logv = ops::log(R(static_cast<double>(v)));
            for (u64 r = r0; r < r1; ++r, ++v) {
                bucket[r] = bucket[r] + (logv - logq) / R(static_cast<double>(v));
                if (r + 1 < r1)
                    logv = logv + ops::log1p(R(1.0) / R(static_cast<double>(v)));
            }
        }
    });

    table.t_vec.resize(n);
    const R c0 = tsum_shared_const<R>();
    const R qreal(static_cast<double>(q));
    for (std::size_t k = 0; k < n; ++k) {
        u64 r = table.root_pow[k];
        table.t_vec[k] = qreal * bucket[r] - c0 + detail::t_tail<R>(M, r, q);
    }
    return table;
}

template BasicCharTable<ddouble> build_tables_of<ddouble>(const PrimeModulus&, unsigned);
template BasicCharTable<double> build_tables_of<double>(const PrimeModulus&, unsigned);

CharTable build_tables(const PrimeModulus& m, unsigned threads) {
    return build_tables_of<ddouble>(m, threads);
}

template <class R>
BasicSpectrumPair<R> transform_tables(const BasicCharTable<R>& table) {
    const std::size_t n = table.psi_vec.size();
    DftPlan<R> plan(n);
    auto lift = [&](const std::vector<R>& v) {
        std::vector<cplx<R>> c(v.size());
        for (std::size_t i = 0; i < v.size(); ++i) c[i] = cplx<R>(v[i]);
        return c;
    };
    BasicSpectrumPair<R> out;
    auto p = lift(table.psi_vec);
    out.psi_hat = plan.apply(std::span<const cplx<R>>(p));
    auto t = lift(table.t_vec);
    out.t_hat = plan.apply(std::span<const cplx<R>>(t));
    return out;
}

template BasicSpectrumPair<ddouble> transform_tables<ddouble>(const BasicCharTable<ddouble>&);
template BasicSpectrumPair<double> transform_tables<double>(const BasicCharTable<double>&);

SpectrumPair transform_tables(const CharTable& table) {
    return transform_tables<ddouble>(table);
}

}  // namespace cycloek
