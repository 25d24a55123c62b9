#ifndef CMCHECK_CMTEST_HPP
#define CMCHECK_CMTEST_HPP

#include "cmcheck/classpoly.hpp"
#include "cmcheck/ellcurve.hpp"

namespace cmcheck {

enum class SamplerMode { paper_faithful, exact_uniform };

struct SamplerConfig {
    /// Upper end of the norm interval I = [2, x_max]. 0 means "derive from
    /// the curve": (h_const * exp(n^(2+epsilon)) * max(w(A), w(B)))^c,
    /// capped at desk_ceiling.
    std::uint64_t x_max = 0;
    double c = 1.0;
    double h_const = 1.0;
    double epsilon = 0.1;
    SamplerMode mode = SamplerMode::paper_faithful;
    std::uint64_t desk_ceiling = 10'000'000;
    std::uint64_t retry_budget = 10'000;
    /// For residue degree >= 2 the counting path is exhaustive, so norms are
    /// kept below this bound (rejected like an out-of-interval norm).
    std::uint64_t ext_norm_ceiling = 1ull << 20;
};

/// Effective x_max for a curve under a config (applies the formula + cap).
std::uint64_t sampler_interval_top(const CurveNF& E, const SamplerConfig& cfg);

struct SampleStats {
    std::uint64_t restarts_index = 0;       // p | disc(T)
    std::uint64_t restarts_small_char = 0;  // p in {2, 3}
    std::uint64_t rejected_norm = 0;        // norm outside I
    std::uint64_t rejected_degree = 0;      // lost the 1/deg acceptance coin
    std::uint64_t draws = 0;
};

/// One prime of O_L with norm in I. paper_faithful follows the
/// acceptance-rejection steps literally (uniform rational prime, uniform
/// factor with multiplicity, norm filter, 1/deg coin); exact_uniform draws a
/// slot uniformly among n candidates so the conditional law is exactly
/// uniform over {P : N(P) in I}. Throws ConfigError when the retry budget is
/// exhausted.
PrimeIdeal sample_prime(const NumberFieldPtr& F, const PrimeSieve& sieve,
                        const SamplerConfig& cfg, std::uint64_t x_max, Rng& rng,
                        SampleStats* stats = nullptr);

enum class TrialStatus {
    supersingular,
    ordinary,
    resampled_bad_reduction,
    resampled_index,
    rejected_norm,
    rejected_degree,
};

const char* to_string(TrialStatus s);

struct TrialRecord {
    std::uint64_t p = 0;
    int degree = 0;
    BigInt norm;
    TrialStatus status;
    std::optional<FrobeniusData> frob;  // accepted trials
    std::optional<BigInt> w;            // a^2 - 4 p^d, ordinary trials only
};

enum class VerdictKind { probably_cm, probably_not_cm, certified_not_cm, certified_cm };

const char* to_string(VerdictKind k);

struct CmVerdict {
    VerdictKind kind;
    std::vector<TrialRecord> trials;  // accepted + resample/reject events
    std::optional<BigInt> disc;
    long supersingular_count = 0;
    long ordinary_count = 0;
    double supersingular_fraction = 0.0;
};

/// Decision threshold on the supersingular fraction, sitting between the CM
/// expectation (>= 1/2) and the non-CM expectation (near 0).
inline constexpr double kSupersingularThreshold = 0.25;

/// The randomized test: integrality gate, `trials` accepted reductions,
/// verdict by the supersingular fraction.
CmVerdict randomized_cm_test(const CurveNF& E, long trials, const SamplerConfig& cfg, Rng& rng);

struct DiscFromTraces {
    BigInt gcd;                    // gcd of the w_i, negative sign retained
    std::optional<BigInt> disc;    // extracted discriminant candidate
    bool consistent = false;       // every w_i / disc is a perfect square
    bool small_norm_flagged = false;  // some record has 4 p^d < |disc|
};

/// Discriminant extraction from ordinary-trace records. Throws
/// std::invalid_argument when no ordinary record is present (NeedMoreData).
DiscFromTraces discriminant_from_traces(const std::vector<TrialRecord>& records);

struct OneSidedResult {
    bool certified = false;  // gcd of the w_i reached 1: definitely no CM
    long ordinary_used = 0;
    BigInt final_gcd;
    std::vector<TrialRecord> trials;
};

/// One-sided non-CM certificate: accumulate ordinary w_i until gcd = 1.
/// Sound unconditionally (never certifies a CM curve); termination on non-CM
/// curves is heuristic. Requires an integral j-invariant.
OneSidedResult one_sided_non_cm(const CurveNF& E, long max_records, const SamplerConfig& cfg,
                                Rng& rng);

struct SurveyResult {
    BigInt numerator;    // primes of supersingular good reduction, norm <= bound
    BigInt denominator;  // all primes of norm <= bound
    double ratio = 0.0;
};

/// Exhaustive supersingular-prime density up to the norm bound. Primes above
/// p | disc(T) and bad-reduction primes stay in the denominator but never the
/// numerator; residue characteristics 2 and 3 are treated the same way.
SurveyResult survey_ratio(const CurveNF& E, std::uint64_t bound, int threads = 1);

}  // namespace cmcheck

#endif
