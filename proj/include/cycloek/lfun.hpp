#pragma once

// L(1,chi) and L'(1,chi) for all non-principal characters mod q, the residue
// alpha of the Dedekind zeta function of Q(zeta_q) at s = 1, and the
// Euler-Kronecker constant gamma_q = gamma + sum L'(1,chi)/L(1,chi).

#include <cstdint>
#include <vector>

#include "cycloek/chartransform.hpp"
#include "cycloek/complexdd.hpp"
#include "cycloek/errors.hpp"

namespace cycloek {

enum class DftKind { fast, direct };
enum class Precision { high, fast };

struct LValueSet {
    u64 q = 0;
    // Index j-1 holds the pair for chi_1^j, j = 1..q-2.
    std::vector<cdd> L;
    std::vector<cdd> Lp;
    ddouble alpha{};           // set by residue_alpha
    ddouble gamma_q{};         // set by euler_kronecker / gamma_from_lvalues
    double im_alpha = 0.0;     // |Im| of the full L-product (discarded)
    double im_ratio_sum = 0.0; // |Im| of sum L'/L (discarded)
    double im_residual = 0.0;  // largest single discarded |Im|
    bool alpha_valid = false;
};

// Transforms the tables into all 2(q-2) values; throws precision_error when
// any |L(1,chi)| falls below 1e-12.
LValueSet l_values(const PrimeModulus& m, const CharTable& table,
                   DftKind kind = DftKind::fast);

// Re of the product of all L(1,chi); records the imaginary residual and
// fails hard on a nonpositive real part.
ddouble residue_alpha(LValueSet& set);

// gamma + Re(sum L'/L), ratios accumulated in conjugate pairs.
ddouble gamma_from_lvalues(LValueSet& set);

struct EkOptions {
    Precision precision = Precision::high;
    DftKind dft = DftKind::fast;
    unsigned threads = 1;
    bool want_alpha = true;
    u64 high_path_qmax = 2'000'000;  // memory guard for the ddouble path
};

struct EkResult {
    u64 q = 0;
    ddouble gamma_q{};
    ddouble alpha{};
    bool alpha_valid = false;
    double im_ratio_sum = 0.0;
    double im_alpha = 0.0;
    double err_estimate = 0.0;  // nonzero only on the fast path
};

// Full pipeline: primitive root -> tables -> transform -> ratio sum.
EkResult euler_kronecker(u64 q, const EkOptions& opts = {});

}  // namespace cycloek
