#pragma once

// Per-q tables of psi(r_k/q) and T(r_k/q) in primitive-root-power order, and
// an arbitrary-length DFT (Bluestein chirp-z over the extended-precision
// scalar) that turns the tables into all character sums at once.
//
// Index convention: entry k (0-based, k = 0..q-2) holds r_k = g^k mod q, so
// r_0 = 1.  The full-period exponential makes this identical to the 1-based
// k = 1..q-1 ordering with r_{q-1} = 1.

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "cycloek/complexdd.hpp"
#include "cycloek/ntheory.hpp"

namespace cycloek {

template <class R>
struct BasicCharTable {
    PrimeModulus modulus;
    std::vector<std::uint32_t> root_pow;  // r_k = g^k mod q, k = 0..q-2
    std::vector<R> psi_vec;               // psi(r_k/q)
    std::vector<R> t_vec;                 // T(r_k/q)
};

using CharTable = BasicCharTable<ddouble>;
using CharTableF = BasicCharTable<double>;

// The two spectra the L-value formulas consume: entry j of psi_hat is
// sum_k e^{2 pi i j k/(q-1)} psi(r_k/q), likewise t_hat for T.
template <class R>
struct BasicSpectrumPair {
    std::vector<cplx<R>> psi_hat;
    std::vector<cplx<R>> t_hat;
};
using SpectrumPair = BasicSpectrumPair<ddouble>;

// Builds both tables; the psi/T evaluations parallelize over k.
template <class R>
BasicCharTable<R> build_tables_of(const PrimeModulus& m, unsigned threads = 1);

CharTable build_tables(const PrimeModulus& m, unsigned threads = 1);

// X_j = sum_k v_k e^{+2 pi i j k / N}; O(N log N) for any N >= 1.
template <class R>
std::vector<cplx<R>> dft(std::span<const cplx<R>> v);
std::vector<cdd> dft(const std::vector<cdd>& v);

// Same contract by the defining O(N^2) sum; refuses N > 1e5.
template <class R>
std::vector<cplx<R>> dft_direct(std::span<const cplx<R>> v);
std::vector<cdd> dft_direct(const std::vector<cdd>& v);

// Reusable transform plan: chirp and kernel spectra are built once per N
// and applied to any number of inputs (the per-q pipeline runs two).
template <class R>
class DftPlan {
public:
    explicit DftPlan(std::size_t n);
    std::vector<cplx<R>> apply(std::span<const cplx<R>> v) const;
    std::size_t size() const { return n_; }

private:
    std::size_t n_;
    std::size_t padded_;                 // 0 for the pure power-of-two path
    std::vector<cplx<R>> chirp_;         // e^{+i pi k^2 / n}
    std::vector<cplx<R>> kernel_hat_;    // FFT of wrapped conj(chirp)
};

// Both transforms from one shared plan.
template <class R>
BasicSpectrumPair<R> transform_tables(const BasicCharTable<R>& table);
SpectrumPair transform_tables(const CharTable& table);

extern template class DftPlan<ddouble>;
extern template class DftPlan<double>;
extern template BasicCharTable<ddouble> build_tables_of<ddouble>(const PrimeModulus&, unsigned);
extern template BasicCharTable<double> build_tables_of<double>(const PrimeModulus&, unsigned);

}  // namespace cycloek
