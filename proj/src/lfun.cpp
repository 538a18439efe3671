#include "cycloek/lfun.hpp"

#include <cmath>
#include <stdexcept>

#include "cycloek/specfun.hpp"

namespace cycloek {

namespace {

template <class R>
struct PipelineResult {
    R gamma_q{};
    R alpha{};
    bool alpha_valid = false;
    double im_ratio_sum = 0.0;
    double im_alpha = 0.0;
    double im_residual = 0.0;
    std::vector<cplx<R>> L, Lp;
};

template <class R>
std::vector<cplx<R>> transform(const std::vector<R>& v, const DftPlan<R>* plan,
                               DftKind kind) {
    std::vector<cplx<R>> c(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) c[i] = cplx<R>(v[i]);
    if (kind == DftKind::direct) return dft_direct<R>(c);
    return plan->apply(c);
}

template <class R>
PipelineResult<R> run_pipeline(const PrimeModulus& m, const BasicCharTable<R>& table,
                               DftKind kind, bool want_alpha, bool keep_values) {
    using ops = real_ops<R>;
    const u64 q = m.q;
    const std::size_t n = static_cast<std::size_t>(q - 1);

    DftPlan<R> plan_storage(kind == DftKind::fast ? n : 1);
    const DftPlan<R>* plan = kind == DftKind::fast ? &plan_storage : nullptr;
    std::vector<cplx<R>> psi_hat = transform<R>(table.psi_vec, plan, kind);
    std::vector<cplx<R>> t_hat = transform<R>(table.t_vec, plan, kind);

    const R qreal(static_cast<double>(q));
    const R logq = ops::log(qreal);

    PipelineResult<R> out;
    if (keep_values) {
        out.L.resize(q - 2);
        out.Lp.resize(q - 2);
    }

    // L(1,chi_1^j) = -psi_hat[j]/q,  L'(1,chi_1^j) = -(log q) L - t_hat[j]/q.
    auto l_at = [&](std::size_t j) {
        return cplx<R>(-(psi_hat[j].re / qreal), -(psi_hat[j].im / qreal));
    };
    auto lp_at = [&](std::size_t j, cplx<R> L) {
        cplx<R> t(t_hat[j].re / qreal, t_hat[j].im / qreal);
        return -(logq * L) - t;
    };

    R ratio_sum(0.0);
    double im_sum = 0.0, im_max = 0.0;
    cplx<R> alpha_prod(R(1.0));

    const std::size_t mid = n / 2;  // self-conjugate (real) character index
    for (std::size_t j = 1; j <= mid; ++j) {
        cplx<R> L1 = l_at(j);
        double a1 = std::abs(to_double_generic(abs(L1)));
        if (a1 < 1e-12)
            throw precision_error("numerical L-value vanishing at j=" + std::to_string(j));
        cplx<R> Lp1 = lp_at(j, L1);
        cplx<R> r1 = Lp1 / L1;
        if (keep_values) {
            out.L[j - 1] = L1;
            out.Lp[j - 1] = Lp1;
        }
        if (j == mid) {
            ratio_sum = ratio_sum + r1.re;
            im_sum += to_double_generic(r1.im);
            im_max = std::max(im_max, std::abs(to_double_generic(r1.im)));
            if (want_alpha) alpha_prod = alpha_prod * L1;
            break;
        }
        std::size_t j2 = n - j;  // conjugate partner q-1-j
        cplx<R> L2 = l_at(j2);
        double a2 = std::abs(to_double_generic(abs(L2)));
        if (a2 < 1e-12)
            throw precision_error("numerical L-value vanishing at j=" + std::to_string(j2));
        cplx<R> Lp2 = lp_at(j2, L2);
        cplx<R> r2 = Lp2 / L2;
        if (keep_values) {
            out.L[j2 - 1] = L2;
            out.Lp[j2 - 1] = Lp2;
        }
        cplx<R> pair = r1 + r2;
        ratio_sum = ratio_sum + pair.re;
        im_sum += to_double_generic(pair.im);
        im_max = std::max(im_max, std::abs(to_double_generic(pair.im)));
        if (want_alpha) alpha_prod = alpha_prod * (L1 * L2);
    }

    out.gamma_q = ops::euler_gamma() + ratio_sum;
    out.im_ratio_sum = std::abs(im_sum);
    out.im_residual = im_max;
    double gq = to_double_generic(out.gamma_q);
    if (out.im_ratio_sum > 1e-10 * (1.0 + std::abs(gq)))
        throw precision_error("imaginary residual of sum L'/L exceeds threshold");

    if (want_alpha) {
        out.alpha = alpha_prod.re;
        out.im_alpha = std::abs(to_double_generic(alpha_prod.im));
        double a = to_double_generic(out.alpha);
        if (!(a > 0.0)) throw precision_error("residue sign violation");
        if (out.im_alpha > 1e-10 * a)
            throw precision_error("imaginary residual of L-product exceeds threshold");
        out.alpha_valid = true;
    }
    return out;
}

}  // namespace

LValueSet l_values(const PrimeModulus& m, const CharTable& table, DftKind kind) {
    auto r = run_pipeline<ddouble>(m, table, kind, /*want_alpha=*/false,
                                   /*keep_values=*/true);
    LValueSet set;
    set.q = m.q;
    set.L = std::move(r.L);
    set.Lp = std::move(r.Lp);
    set.gamma_q = r.gamma_q;
    set.im_ratio_sum = r.im_ratio_sum;
    set.im_residual = r.im_residual;
    return set;
}

ddouble residue_alpha(LValueSet& set) {
    const std::size_t n = static_cast<std::size_t>(set.q - 1);
    const std::size_t mid = n / 2;
    cdd prod{ddouble(1.0)};
    double im_max = set.im_residual;
    for (std::size_t j = 1; j <= mid; ++j) {
        if (j == mid) {
            prod = prod * set.L[j - 1];
            break;
        }
        prod = prod * (set.L[j - 1] * set.L[n - j - 1]);
    }
    set.im_alpha = std::abs(to_double(prod.im));
    set.im_residual = std::max(im_max, set.im_alpha);
    double a = to_double(prod.re);
    if (!(a > 0.0)) throw precision_error("residue sign violation");
    if (set.im_alpha > 1e-10 * a)
        throw precision_error("imaginary residual of L-product exceeds threshold");
    set.alpha = prod.re;
    set.alpha_valid = true;
    return set.alpha;
}

ddouble gamma_from_lvalues(LValueSet& set) {
    const std::size_t n = static_cast<std::size_t>(set.q - 1);
    const std::size_t mid = n / 2;
    ddouble sum(0.0);
    double im_sum = 0.0, im_max = 0.0;
    for (std::size_t j = 1; j <= mid; ++j) {
        cdd r1 = set.Lp[j - 1] / set.L[j - 1];
        if (j == mid) {
            sum += r1.re;
            im_sum += to_double(r1.im);
            im_max = std::max(im_max, std::abs(to_double(r1.im)));
            break;
        }
        cdd r2 = set.Lp[n - j - 1] / set.L[n - j - 1];
        cdd pair = r1 + r2;
        sum += pair.re;
        im_sum += to_double(pair.im);
        im_max = std::max(im_max, std::abs(to_double(pair.im)));
    }
    set.gamma_q = dd_euler_gamma + sum;
    set.im_ratio_sum = std::abs(im_sum);
    set.im_residual = std::max(set.im_residual, im_max);
    if (set.im_ratio_sum > 1e-10 * (1.0 + std::abs(to_double(set.gamma_q))))
        throw precision_error("imaginary residual of sum L'/L exceeds threshold");
    return set.gamma_q;
}

EkResult euler_kronecker(u64 q, const EkOptions& opts) {
    PrimeModulus m = primitive_root(q);
    EkResult res;
    res.q = q;
    if (opts.precision == Precision::high) {
        if (q > opts.high_path_qmax)
            throw refusal_error(
                "q exceeds the high-precision size limit; request the fast path");
        CharTable table = build_tables_of<ddouble>(m, opts.threads);
        auto r = run_pipeline<ddouble>(m, table, opts.dft, opts.want_alpha, false);
        res.gamma_q = r.gamma_q;
        res.alpha = r.alpha;
        res.alpha_valid = r.alpha_valid;
        res.im_ratio_sum = r.im_ratio_sum;
        res.im_alpha = r.im_alpha;
    } else {
        CharTableF table = build_tables_of<double>(m, opts.threads);
        auto r = run_pipeline<double>(m, table, opts.dft, opts.want_alpha, false);
        res.gamma_q = ddouble(r.gamma_q);
        res.alpha = ddouble(r.alpha);
        res.alpha_valid = r.alpha_valid;
        res.im_ratio_sum = r.im_ratio_sum;
        res.im_alpha = r.im_alpha;
        // double-path rounding scales with the transform length
        double qd = static_cast<double>(q);
        res.err_estimate = 0x1p-52 * qd * std::log2(qd);
    }
    return res;
}

}  // namespace cycloek
