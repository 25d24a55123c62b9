#include "cmcheck/cmtest.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace cmcheck {

const char* to_string(TrialStatus s) {
    switch (s) {
        case TrialStatus::supersingular: return "ss";
        case TrialStatus::ordinary: return "ordinary";
        case TrialStatus::resampled_bad_reduction: return "resampled_bad_reduction";
        case TrialStatus::resampled_index: return "resampled_index";
        case TrialStatus::rejected_norm: return "rejected_norm";
        case TrialStatus::rejected_degree: return "rejected_degree";
    }
    return "?";
}

const char* to_string(VerdictKind k) {
    switch (k) {
        case VerdictKind::probably_cm: return "ProbablyCM";
        case VerdictKind::probably_not_cm: return "ProbablyNotCM";
        case VerdictKind::certified_not_cm: return "CertifiedNotCM";
        case VerdictKind::certified_cm: return "CertifiedCM";
    }
    return "?";
}

// ---------------------------------------------------------------- sampler --

namespace {

BigInt weight_of(const NfElem& v) {
    const PolyZ primitive = v.minpoly().clear_denominators();
    return weil_weight(primitive).coefficient_sum;
}

}  // namespace

std::uint64_t sampler_interval_top(const CurveNF& E, const SamplerConfig& cfg) {
    if (cfg.x_max != 0) return std::min(cfg.x_max, cfg.desk_ceiling);
    const int n = E.field->degree();
    const BigInt w = std::max(weight_of(E.A), weight_of(E.B));
    // (h exp(n^(2+eps)) w)^c, in logs to survive the exponential
    const double ln_top =
        cfg.c * (std::log(cfg.h_const) + std::pow(double(n), 2.0 + cfg.epsilon) + ln_abs(w));
    const double ln_cap = std::log(double(cfg.desk_ceiling));
    if (ln_top >= ln_cap) return cfg.desk_ceiling;
    return std::max<std::uint64_t>(10, std::uint64_t(std::exp(ln_top)));
}

namespace {

void log_event(std::vector<TrialRecord>* log, std::uint64_t p, int degree, BigInt norm,
               TrialStatus status) {
    if (!log) return;
    TrialRecord r;
    r.p = p;
    r.degree = degree;
    r.norm = std::move(norm);
    r.status = status;
    log->push_back(std::move(r));
}

PrimeIdeal sample_prime_impl(const NumberFieldPtr& F, const PrimeSieve& sieve,
                             const SamplerConfig& cfg, std::uint64_t x_max, Rng& rng,
                             SampleStats* stats, std::vector<TrialRecord>* log) {
    const std::size_t nprimes = sieve.count_upto(x_max);
    if (nprimes == 0) throw ConfigError("sample_prime: no primes in the interval");
    SampleStats local;
    SampleStats& st = stats ? *stats : local;
    for (std::uint64_t attempt = 0; attempt < cfg.retry_budget; ++attempt) {
        ++st.draws;
        const std::uint64_t p = sieve.primes()[rng.below(nprimes)];
        if (p < 5) {
            ++st.restarts_small_char;
            log_event(log, p, 0, BigInt(long(p)), TrialStatus::resampled_index);
            continue;
        }
        const auto split = split_prime(F, p);
        if (!split) {
            ++st.restarts_index;
            log_event(log, p, 0, BigInt(long(p)), TrialStatus::resampled_index);
            continue;
        }
        auto norm_ok = [&](const PrimeIdeal& P) {
            if (P.norm > BigInt(static_cast<unsigned long>(x_max))) return false;
            if (P.residue_degree >= 2 &&
                P.norm > BigInt(static_cast<unsigned long>(cfg.ext_norm_ceiling)))
                return false;
            return true;
        };
        if (cfg.mode == SamplerMode::paper_faithful) {
            // choose a factor uniformly, multiplicities as distinct copies
            std::uint64_t slots = 0;
            for (const auto& P : *split) slots += P.ramification;
            std::uint64_t pick = rng.below(slots);
            const PrimeIdeal* chosen = nullptr;
            for (const auto& P : *split) {
                if (pick < std::uint64_t(P.ramification)) {
                    chosen = &P;
                    break;
                }
                pick -= P.ramification;
            }
            if (!norm_ok(*chosen)) {
                ++st.rejected_norm;
                log_event(log, p, chosen->residue_degree, chosen->norm, TrialStatus::rejected_norm);
                continue;
            }
            if (rng.below(std::uint64_t(chosen->residue_degree)) != 0) {
                ++st.rejected_degree;
                log_event(log, p, chosen->residue_degree, chosen->norm,
                          TrialStatus::rejected_degree);
                continue;
            }
            return *chosen;
        }
        // exact_uniform: k-th listed prime with norm in I, k uniform in [0, n)
        std::vector<const PrimeIdeal*> eligible;
        for (const auto& P : *split)
            if (norm_ok(P)) eligible.push_back(&P);
        const std::uint64_t k = rng.below(std::uint64_t(F->degree()));
        if (k >= eligible.size()) {
            ++st.rejected_degree;
            log_event(log, p, 0, BigInt(long(p)), TrialStatus::rejected_degree);
            continue;
        }
        return *eligible[k];
    }
    throw ConfigError("sample_prime: retry budget exhausted");
}

}  // namespace

PrimeIdeal sample_prime(const NumberFieldPtr& F, const PrimeSieve& sieve, const SamplerConfig& cfg,
                        std::uint64_t x_max, Rng& rng, SampleStats* stats) {
    return sample_prime_impl(F, sieve, cfg, x_max, rng, stats, nullptr);
}

// ----------------------------------------------------------- randomized ----

namespace {

struct AcceptedTrial {
    PrimeIdeal prime;
    FrobeniusData frob;
};

// One accepted reduction: sample, reduce (resampling on bad reduction),
// count. Appends every event to the log.
AcceptedTrial run_trial(const CurveNF& E, const PrimeSieve& sieve, const SamplerConfig& cfg,
                        std::uint64_t x_max, Rng& rng, SampleStats* stats,
                        std::vector<TrialRecord>* log) {
    for (std::uint64_t attempt = 0; attempt < cfg.retry_budget; ++attempt) {
        PrimeIdeal P = sample_prime_impl(E.field, sieve, cfg, x_max, rng, stats, log);
        const auto reduced = reduce_at_prime(E, P);
        if (!reduced) {
            log_event(log, P.p, P.residue_degree, P.norm, TrialStatus::resampled_bad_reduction);
            continue;
        }
        const FrobeniusData frob = frobenius_data(*reduced, rng);
        if (log) {
            TrialRecord r;
            r.p = P.p;
            r.degree = P.residue_degree;
            r.norm = P.norm;
            r.status = frob.supersingular ? TrialStatus::supersingular : TrialStatus::ordinary;
            r.frob = frob;
            if (!frob.supersingular) r.w = frob.trace * frob.trace - 4 * frob.q;
            log->push_back(std::move(r));
        }
        return {std::move(P), frob};
    }
    throw ConfigError("run_trial: retry budget exhausted (bad reduction everywhere?)");
}

}  // namespace

CmVerdict randomized_cm_test(const CurveNF& E, long trials, const SamplerConfig& cfg, Rng& rng) {
    if (trials < 1) throw std::invalid_argument("randomized_cm_test: trials must be >= 1");
    CmVerdict verdict;
    const PolyQ jmin = E.j.minpoly();
    if (!is_algebraic_integer(jmin)) {
        verdict.kind = VerdictKind::certified_not_cm;
        return verdict;
    }
    const std::uint64_t x_max = sampler_interval_top(E, cfg);
    const PrimeSieve sieve(x_max);
    for (long t = 0; t < trials; ++t) {
        const AcceptedTrial trial = run_trial(E, sieve, cfg, x_max, rng, nullptr, &verdict.trials);
        if (trial.frob.supersingular)
            ++verdict.supersingular_count;
        else
            ++verdict.ordinary_count;
    }
    verdict.supersingular_fraction = double(verdict.supersingular_count) / double(trials);
    verdict.kind = verdict.supersingular_fraction > kSupersingularThreshold
                       ? VerdictKind::probably_cm
                       : VerdictKind::probably_not_cm;
    if (verdict.ordinary_count > 0) {
        const auto d = discriminant_from_traces(verdict.trials);
        if (d.disc && d.consistent) verdict.disc = d.disc;
    }
    return verdict;
}

DiscFromTraces discriminant_from_traces(const std::vector<TrialRecord>& records) {
    DiscFromTraces out;
    BigInt g(0);
    bool any = false;
    for (const auto& r : records) {
        if (r.status != TrialStatus::ordinary || !r.w) continue;
        any = true;
        g = gcd(g, *r.w);
    }
    if (!any)
        throw std::invalid_argument("discriminant_from_traces: no ordinary records (NeedMoreData)");
    g = -abs(g);  // all w_i are negative; keep the sign on the gcd
    out.gcd = g;

    const auto split = squarefree_part(g);
    const BigInt& s = split.squarefree;
    if (mpz_fdiv_ui(s.get_mpz_t(), 4) == 1) {
        out.disc = s;
    } else if (split.square_root % 2 == 0) {
        out.disc = 4 * s;
    } else if (is_imaginary_discriminant(g)) {
        out.disc = g;  // unreachable for w = a^2 - 4q inputs; kept for completeness
    }
    if (out.disc) {
        out.consistent = true;
        for (const auto& r : records) {
            if (r.status != TrialStatus::ordinary || !r.w) continue;
            const BigInt q = *r.w / *out.disc;
            if (*r.w % *out.disc != 0 || q < 0 ||
                mpz_perfect_square_p(q.get_mpz_t()) == 0) {
                out.consistent = false;
                break;
            }
            if (4 * r.frob->q < abs(*out.disc)) out.small_norm_flagged = true;
        }
    }
    return out;
}

OneSidedResult one_sided_non_cm(const CurveNF& E, long max_records, const SamplerConfig& cfg,
                                Rng& rng) {
    if (!is_algebraic_integer(E.j.minpoly()))
        throw std::invalid_argument("one_sided_non_cm: requires an integral j-invariant");
    OneSidedResult out;
    const std::uint64_t x_max = sampler_interval_top(E, cfg);
    const PrimeSieve sieve(x_max);
    BigInt g(0);
    while (out.ordinary_used < max_records) {
        const AcceptedTrial trial = run_trial(E, sieve, cfg, x_max, rng, nullptr, &out.trials);
        if (trial.frob.supersingular) continue;
        ++out.ordinary_used;
        const BigInt w = trial.frob.trace * trial.frob.trace - 4 * trial.frob.q;
        g = gcd(g, w);
        if (g == 1) {
            out.certified = true;
            break;
        }
    }
    out.final_gcd = -abs(g);
    if (g == 1) out.final_gcd = 1;
    return out;
}

// -------------------------------------------------------------- survey -----

SurveyResult survey_ratio(const CurveNF& E, std::uint64_t bound, int threads) {
    if (bound < 10) throw std::invalid_argument("survey_ratio: bound must be >= 10");
    const PrimeSieve sieve(bound);
    const BigInt big_bound(static_cast<unsigned long>(bound));
    const int nthreads = std::max(1, threads);
    std::vector<std::uint64_t> nums(nthreads, 0), dens(nthreads, 0);

    auto work = [&](int tid) {
        std::uint64_t num = 0, den = 0;
        for (std::size_t i = tid; i < sieve.primes().size(); i += nthreads) {
            const std::uint64_t p = sieve.primes()[i];
            const bool index_risk = mpz_fdiv_ui(E.field->disc().get_mpz_t(), p) == 0;
            const auto splits = split_prime_unchecked(E.field, p);
            for (const auto& P : splits) {
                if (P.norm > big_bound) continue;
                ++den;
                if (index_risk || p < 5) continue;  // never counted supersingular
                const auto reduced = reduce_at_prime(E, P);
                if (!reduced) continue;  // bad reduction: skip from numerator
                if (frobenius_data(*reduced).supersingular) ++num;
            }
        }
        nums[tid] = num;
        dens[tid] = den;
    };

    if (nthreads == 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(work, t);
        for (auto& th : pool) th.join();
    }
    SurveyResult out;
    std::uint64_t num = 0, den = 0;
    for (int t = 0; t < nthreads; ++t) {
        num += nums[t];
        den += dens[t];
    }
    out.numerator = BigInt(static_cast<unsigned long>(num));
    out.denominator = BigInt(static_cast<unsigned long>(den));
    out.ratio = den ? double(num) / double(den) : 0.0;
    return out;
}

}  // namespace cmcheck
