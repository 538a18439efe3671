// cycloek: Euler-Kronecker constants of prime cyclotomic fields and the
// companion constants S(q), C(q,1), e0(q), (q-1)e1/e0, plus census,
// Mertens-product, partial-sum estimator, scanner and greedy-sequence tools.

#include <cstdio>
#include <iostream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "cycloek/census.hpp"
#include "cycloek/constants.hpp"
#include "cycloek/ekscan.hpp"
#include "cycloek/errors.hpp"
#include "cycloek/lfun.hpp"
#include "cycloek/table.hpp"

using namespace cycloek;
using nlohmann::json;

namespace {

enum class Format { text, csv, json_fmt };

struct Options {
    Format format = Format::text;
    u64 pmax = 0;  // 0: per-command default
    unsigned threads = 0;
    Precision precision = Precision::high;
    std::string cache_dir;
    int digits = 15;        // scalar mode
    int table_digits = 6;   // table mode
};

unsigned effective_threads(const Options& o) {
    if (o.threads) return o.threads;
    unsigned hc = std::thread::hardware_concurrency();
    return hc ? hc : 1;
}

double jnum(ddouble v) { return to_double(v); }

void emit_scalar(const Options& o, const std::string& name, u64 q, ddouble value,
                 const std::vector<std::pair<std::string, std::string>>& diag) {
    switch (o.format) {
        case Format::text:
            std::printf("%s(%llu) = %s\n", name.c_str(),
                        static_cast<unsigned long long>(q),
                        to_fixed(value, o.digits).c_str());
            for (const auto& [k, v] : diag)
                std::printf("  %s = %s\n", k.c_str(), v.c_str());
            break;
        case Format::csv: {
            std::printf("q,%s\n%llu,%s\n", name.c_str(),
                        static_cast<unsigned long long>(q),
                        to_fixed(value, o.digits).c_str());
            break;
        }
        case Format::json_fmt: {
            json j;
            j["q"] = q;
            j[name] = jnum(value);
            json d;
            d[name + "_str"] = to_string(value);
            for (const auto& [k, v] : diag) d[k] = v;
            j["diagnostics"] = d;
            std::printf("%s\n", j.dump().c_str());
            break;
        }
    }
}

void emit_table_row(const Options& o, const TableRow& r) {
    const int d = o.table_digits;
    switch (o.format) {
        case Format::csv:
            std::printf("%llu,%s,%s,%s,%s,%s\n",
                        static_cast<unsigned long long>(r.q),
                        to_fixed(r.s_q, d).c_str(), to_fixed(r.q_s_q, d).c_str(),
                        to_fixed(r.gamma_q, d).c_str(),
                        to_fixed(r.gamma_over_log, d).c_str(),
                        to_fixed(r.ratio, d).c_str());
            break;
        case Format::text:
            std::printf("%7llu  %s  %s  %s  %s  %s\n",
                        static_cast<unsigned long long>(r.q),
                        to_fixed(r.s_q, d).c_str(), to_fixed(r.q_s_q, d).c_str(),
                        to_fixed(r.gamma_q, d).c_str(),
                        to_fixed(r.gamma_over_log, d).c_str(),
                        to_fixed(r.ratio, d).c_str());
            break;
        case Format::json_fmt: {
            json j;
            j["q"] = r.q;
            j["S_q"] = jnum(r.s_q);
            j["qS_q"] = jnum(r.q_s_q);
            j["gamma_q"] = jnum(r.gamma_q);
            j["gamma_q_over_log_q"] = jnum(r.gamma_over_log);
            j["ratio"] = jnum(r.ratio);
            j["diagnostics"] = {{"s_tail_bound", to_string(r.s_tail_bound)},
                                {"im_ratio_sum", r.im_ratio_sum}};
            std::printf("%s\n", j.dump().c_str());
            break;
        }
    }
}

u64 parse_prime_arg(u64 q) {
    if (q < 3 || (q & 1) == 0 || !is_prime(q))
        throw std::invalid_argument("q must be an odd prime");
    return q;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Euler-Kronecker constants of prime cyclotomic fields"};
    app.require_subcommand(1);

    Options opt;
    std::string fmt = "text", prec = "high";
    app.add_option("--format", fmt, "output format")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    app.add_option("--pmax", opt.pmax, "prime scan bound for S(q)/C(q)");
    app.add_option("--threads", opt.threads, "worker threads (default: all cores)");
    app.add_option("--precision", prec, "numeric path")
        ->check(CLI::IsMember({"high", "fast"}));
    app.add_option("--cache", opt.cache_dir, "row cache directory (table)");
    app.add_option("--digits", opt.digits, "decimals in scalar output")
        ->check(CLI::Range(1, 32));
    app.add_option("--table-digits", opt.table_digits, "decimals in table output")
        ->check(CLI::Range(1, 32));

    u64 q = 0, x = 0, q_max = 0, lo = 0, hi = 0;
    std::uint32_t A = 60;
    double min_score = 0.0, target_sum = -1.0;
    std::size_t count = 0;

    auto* c_ek = app.add_subcommand("ek", "Euler-Kronecker constant gamma_q");
    c_ek->add_option("q", q)->required();
    auto* c_sq = app.add_subcommand("sq", "S(q) with tail bound");
    c_sq->add_option("q", q)->required();
    auto* c_cq = app.add_subcommand("cq", "C(q,1) with tail bound");
    c_cq->add_option("q", q)->required();
    auto* c_e0 = app.add_subcommand("e0", "leading census coefficient e0(q)");
    c_e0->add_option("q", q)->required();
    auto* c_ratio = app.add_subcommand("ratio", "(q-1) e1(q)/e0(q)");
    c_ratio->add_option("q", q)->required();
    auto* c_table = app.add_subcommand("table", "rows for all odd primes q <= q_max");
    c_table->add_option("q_max", q_max)->required();
    auto* c_census = app.add_subcommand("census", "E_q(x) = #{n <= x : q !| phi(n)}");
    c_census->add_option("q", q)->required();
    c_census->add_option("x", x)->required();
    auto* c_compare = app.add_subcommand("compare", "Landau vs Ramanujan verdict");
    c_compare->add_option("q", q)->required();
    c_compare->add_option("x", x)->required();
    auto* c_mertens = app.add_subcommand("mertens", "Mertens progression product ratio");
    c_mertens->add_option("q", q)->required();
    c_mertens->add_option("x", x)->required();
    auto* c_ekest = app.add_subcommand("ekest", "partial-sum estimate of gamma_q");
    c_ekest->add_option("q", q)->required();
    c_ekest->add_option("x", x)->required();
    auto* c_scan = app.add_subcommand("scan", "scan primes for small-gamma candidates");
    c_scan->add_option("q_lo", lo)->required();
    c_scan->add_option("q_hi", hi)->required();
    c_scan->add_option("A", A)->required();
    c_scan->add_option("min_score", min_score)->required();
    auto* c_greedy = app.add_subcommand("greedy", "greedy admissible offset sequence");
    c_greedy->add_option("--count", count, "emit the first N entries");
    c_greedy->add_option("--target-sum", target_sum,
                         "report i0 with sum_{i>=2} 1/a(i) > target");

    for (auto* sc : app.get_subcommands({})) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    opt.format = fmt == "csv" ? Format::csv
                  : fmt == "json" ? Format::json_fmt : Format::text;
    opt.precision = prec == "fast" ? Precision::fast : Precision::high;

    try {
        if (*c_ek) {
            parse_prime_arg(q);
            EkOptions eo;
            eo.precision = opt.precision;
            eo.threads = effective_threads(opt);
            auto r = euler_kronecker(q, eo);
            emit_scalar(opt, "gamma_q", q, r.gamma_q,
                        {{"gamma_q_32", to_string(r.gamma_q)},
                         {"im_ratio_sum", std::to_string(r.im_ratio_sum)},
                         {"im_alpha", std::to_string(r.im_alpha)},
                         {"err_estimate", std::to_string(r.err_estimate)}});
        } else if (*c_sq) {
            parse_prime_arg(q);
            auto r = s_of_q(q, opt.pmax);
            emit_scalar(opt, "S_q", q, r.value,
                        {{"S_q_32", to_string(r.value)},
                         {"pmax", std::to_string(r.pmax)},
                         {"tail_bound", to_string(r.tail_bound)},
                         {"contributions", std::to_string(r.contributions.size())}});
        } else if (*c_cq) {
            parse_prime_arg(q);
            auto r = c_of_q(q, opt.pmax);
            emit_scalar(opt, "C_q", q, r.value,
                        {{"C_q_32", to_string(r.value)},
                         {"pmax", std::to_string(r.pmax)},
                         {"tail_bound", to_string(r.tail_bound)}});
        } else if (*c_e0) {
            parse_prime_arg(q);
            auto v = e0(q, opt.pmax);
            emit_scalar(opt, "e0", q, v, {{"e0_32", to_string(v)}});
        } else if (*c_ratio) {
            parse_prime_arg(q);
            auto v = e1_ratio(q, opt.pmax);
            emit_scalar(opt, "ratio", q, v, {{"ratio_32", to_string(v)}});
        } else if (*c_table) {
            TableConfig cfg;
            cfg.pmax = opt.pmax ? opt.pmax : kTablePmax;
            cfg.precision = opt.precision;
            cfg.threads = effective_threads(opt);
            if (!opt.cache_dir.empty()) cfg.cache_dir = opt.cache_dir;
            if (opt.format == Format::csv)
                std::printf("q,S_q,qS_q,gamma_q,gamma_q_over_log_q,ratio\n");
            else if (opt.format == Format::text)
                std::printf("%7s  %8s  %8s  %8s  %8s  %8s\n", "q", "S_q", "qS_q",
                            "gamma_q", "g/log q", "ratio");
            compute_table(q_max, cfg,
                          [&](const TableRow& r) { emit_table_row(opt, r); });
        } else if (*c_census) {
            parse_prime_arg(q);
            u64 n = count_eq(q, x);
            if (opt.format == Format::json_fmt) {
                json j{{"q", q}, {"x", x}, {"count", n}, {"diagnostics", json::object()}};
                std::printf("%s\n", j.dump().c_str());
            } else if (opt.format == Format::csv) {
                std::printf("q,x,count\n%llu,%llu,%llu\n",
                            (unsigned long long)q, (unsigned long long)x,
                            (unsigned long long)n);
            } else {
                std::printf("%llu\n", (unsigned long long)n);
            }
        } else if (*c_compare) {
            parse_prime_arg(q);
            auto r = compare_census(q, x);
            const char* verdict = r.verdict == Verdict::RamanujanCloser
                                      ? "RamanujanCloser"
                                      : r.verdict == Verdict::LandauCloser
                                            ? "LandauCloser" : "Tie";
            if (opt.format == Format::json_fmt) {
                json j{{"q", q},
                       {"x", x},
                       {"count", r.count},
                       {"landau", jnum(r.landau)},
                       {"ramanujan", jnum(r.ramanujan)},
                       {"verdict", verdict},
                       {"diagnostics", json::object()}};
                std::printf("%s\n", j.dump().c_str());
            } else if (opt.format == Format::csv) {
                std::printf("q,x,count,landau,ramanujan,verdict\n");
                std::printf("%llu,%llu,%llu,%s,%s,%s\n", (unsigned long long)q,
                            (unsigned long long)x, (unsigned long long)r.count,
                            to_fixed(r.landau, 3).c_str(),
                            to_fixed(r.ramanujan, 3).c_str(), verdict);
            } else {
                std::printf("E_q(x) = %llu\nlandau = %s\nramanujan = %s\nverdict = %s\n",
                            (unsigned long long)r.count, to_fixed(r.landau, 3).c_str(),
                            to_fixed(r.ramanujan, 3).c_str(), verdict);
            }
        } else if (*c_mertens) {
            parse_prime_arg(q);
            auto r = mertens_check(q, x, opt.pmax);
            emit_scalar(opt, "mertens_ratio", q, r.ratio,
                        {{"x", std::to_string(x)},
                         {"lhs", to_string(r.lhs)},
                         {"rhs", to_string(r.rhs)}});
        } else if (*c_ekest) {
            parse_prime_arg(q);
            auto r = ek_partial_sum(q, x);
            emit_scalar(opt, "gamma_q_estimate", q, r.estimate,
                        {{"x", std::to_string(x)},
                         {"terms_used", std::to_string(r.terms_used)},
                         {"estimate_at_half_x", to_fixed(r.estimate_half, 6)}});
        } else if (*c_scan) {
            auto hits = scan_candidates(lo, hi, A, min_score, effective_threads(opt));
            for (const auto& h : hits) {
                if (opt.format == Format::json_fmt) {
                    json j{{"q", h.q}, {"score", h.score}, {"witnesses", h.witnesses}};
                    std::printf("%s\n", j.dump().c_str());
                } else {
                    std::printf("q=%llu score=%.6f witnesses=",
                                (unsigned long long)h.q, h.score);
                    for (std::size_t i = 0; i < h.witnesses.size(); ++i)
                        std::printf("%s%u", i ? "," : "", h.witnesses[i]);
                    std::printf("\n");
                }
            }
        } else if (*c_greedy) {
            if (target_sum >= 0.0) {
                auto r = greedy_offsets_until(target_sum);
                if (opt.format == Format::json_fmt) {
                    json j{{"i0", r.i0},
                           {"a_i0", r.a_i0},
                           {"partial_sum", jnum(r.partial_sum)}};
                    std::printf("%s\n", j.dump().c_str());
                } else {
                    std::printf("i0=%zu a=%u\n", r.i0, r.a_i0);
                }
            } else if (count > 0) {
                auto seq = greedy_offsets(count);
                if (opt.format == Format::json_fmt) {
                    json j{{"entries", seq.entries}};
                    std::printf("%s\n", j.dump().c_str());
                } else {
                    for (std::size_t i = 0; i < seq.entries.size(); ++i)
                        std::printf("%s%u", i ? " " : "", seq.entries[i]);
                    std::printf("\n");
                }
            } else {
                std::fprintf(stderr, "greedy: need --count or --target-sum\n");
                return 1;
            }
        }
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::domain_error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "computation error: %s\n", e.what());
        return 2;
    }
    return 0;
}
