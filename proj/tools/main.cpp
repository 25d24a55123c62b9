// Command-line front end: CM testing, discriminant recovery, supersingular
// surveys, Hilbert class polynomials and GL2 diagnostics over curve files.

#include <chrono>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "cmcheck/cmtest.hpp"
#include "cmcheck/curvefile.hpp"
#include "cmcheck/gl2.hpp"

using namespace cmcheck;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr const char* kVersion = "0.1.0";

struct GlobalOpts {
    std::uint64_t seed = 1;
    int threads = 1;
    bool csv = false;
};

std::string big_str(const BigInt& v) { return v.get_str(); }

ordered_json trial_json(const TrialRecord& r) {
    ordered_json t;
    t["p"] = r.p;
    t["degree"] = r.degree;
    t["norm"] = big_str(r.norm);
    t["status"] = to_string(r.status);
    if (r.frob) {
        t["a"] = big_str(r.frob->trace);
        t["points"] = big_str(r.frob->point_count);
    }
    if (r.w) t["w"] = big_str(*r.w);
    return t;
}

ordered_json config_json(const GlobalOpts& g, const SamplerConfig& cfg, std::uint64_t x_max,
                         long trials) {
    ordered_json c;
    c["version"] = kVersion;
    c["seed"] = g.seed;
    if (trials >= 0) c["trials"] = trials;
    c["x_max"] = x_max;
    c["mode"] = cfg.mode == SamplerMode::paper_faithful ? "faithful" : "uniform";
    return c;
}

void emit(const ordered_json& doc) { std::cout << doc.dump(2) << "\n"; }

SamplerMode parse_mode(const std::string& s) {
    if (s == "faithful") return SamplerMode::paper_faithful;
    if (s == "uniform") return SamplerMode::exact_uniform;
    throw InputError("unknown sampler mode: " + s);
}

// disc recovery loop shared by `disc` and `test --certify`
struct DiscRun {
    DiscFromTraces extraction;
    std::vector<TrialRecord> ordinaries;
    long trials_until_stable = 0;
};

DiscRun run_disc(const CurveNF& E, long max_records, const SamplerConfig& cfg, Rng& rng) {
    const std::uint64_t x_max = sampler_interval_top(E, cfg);
    const PrimeSieve sieve(x_max);
    DiscRun out;
    while (long(out.ordinaries.size()) < max_records) {
        const PrimeIdeal P = sample_prime(E.field, sieve, cfg, x_max, rng, nullptr);
        const auto red = reduce_at_prime(E, P);
        if (!red) continue;
        const FrobeniusData f = frobenius_data(*red, rng);
        if (f.supersingular) continue;
        TrialRecord r;
        r.p = P.p;
        r.degree = P.residue_degree;
        r.norm = P.norm;
        r.status = TrialStatus::ordinary;
        r.frob = f;
        r.w = f.trace * f.trace - 4 * f.q;
        out.ordinaries.push_back(std::move(r));
        out.extraction = discriminant_from_traces(out.ordinaries);
        out.trials_until_stable = long(out.ordinaries.size());
        if (out.extraction.disc && out.extraction.consistent && out.ordinaries.size() >= 2) break;
    }
    return out;
}

int cmd_test(const std::string& path, long trials, std::uint64_t xmax, const std::string& mode,
             bool certify, const GlobalOpts& g) {
    const CurveNF E = build_curve(load_curve_file(path));
    SamplerConfig cfg;
    cfg.x_max = xmax;
    cfg.mode = parse_mode(mode);
    Rng rng(g.seed);
    const auto t0 = std::chrono::steady_clock::now();
    CmVerdict v = randomized_cm_test(E, trials, cfg, rng);

    if (certify && v.kind == VerdictKind::probably_cm && v.disc) {
        const PolyQ jmin = E.j.minpoly();
        if (is_algebraic_integer(jmin) &&
            hilbert_class_poly(*v.disc).poly == jmin.to_integer()) {
            v.kind = VerdictKind::certified_cm;
        }
    }
    if (certify && v.kind == VerdictKind::probably_not_cm) {
        Rng crng(g.seed + 1);
        const auto one_sided = one_sided_non_cm(E, 25, cfg, crng);
        if (one_sided.certified) v.kind = VerdictKind::certified_not_cm;
    }

    ordered_json doc;
    doc["command"] = "test";
    doc["input"] = ordered_json::parse(spec_to_json(spec_of_curve(E)));
    doc["config"] = config_json(g, cfg, sampler_interval_top(E, cfg), trials);
    doc["verdict"] = to_string(v.kind);
    doc["supersingular_count"] = v.supersingular_count;
    doc["ordinary_count"] = v.ordinary_count;
    doc["supersingular_fraction"] = v.supersingular_fraction;
    doc["threshold"] = kSupersingularThreshold;
    doc["discriminant"] = v.disc ? ordered_json(big_str(*v.disc)) : ordered_json(nullptr);
    ordered_json ts = ordered_json::array();
    for (const auto& r : v.trials) ts.push_back(trial_json(r));
    doc["trials"] = std::move(ts);
    emit(doc);
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::cerr << "# test completed in " << dt << "s\n";
    return 0;
}

int cmd_disc(const std::string& path, long max_records, std::uint64_t xmax,
             const std::string& mode, const GlobalOpts& g) {
    const CurveNF E = build_curve(load_curve_file(path));
    if (!is_algebraic_integer(E.j.minpoly()))
        throw InputError("disc: j-invariant is not an algebraic integer (no CM)");
    SamplerConfig cfg;
    cfg.x_max = xmax;
    cfg.mode = parse_mode(mode);
    Rng rng(g.seed);
    const DiscRun run = run_disc(E, max_records, cfg, rng);
    ordered_json doc;
    doc["command"] = "disc";
    doc["config"] = config_json(g, cfg, sampler_interval_top(E, cfg), -1);
    doc["gcd"] = big_str(run.extraction.gcd);
    doc["discriminant"] =
        run.extraction.disc ? ordered_json(big_str(*run.extraction.disc)) : ordered_json(nullptr);
    doc["consistent"] = run.extraction.consistent;
    doc["ordinary_records"] = run.ordinaries.size();
    doc["small_norm_flagged"] = run.extraction.small_norm_flagged;
    ordered_json rs = ordered_json::array();
    for (const auto& r : run.ordinaries) rs.push_back(trial_json(r));
    doc["records"] = std::move(rs);
    emit(doc);
    return 0;
}

int cmd_survey(const std::string& path, std::uint64_t bound, const GlobalOpts& g) {
    const CurveNF E = build_curve(load_curve_file(path));
    const auto r = survey_ratio(E, bound, g.threads);
    if (g.csv) {
        std::cout << E.field->minpoly().str() << "," << E.field->degree() << ","
                  << big_str(r.numerator) << "," << big_str(r.denominator) << "," << r.ratio
                  << "\n";
        return 0;
    }
    ordered_json doc;
    doc["command"] = "survey";
    doc["bound"] = bound;
    doc["field_degree"] = E.field->degree();
    doc["numerator"] = big_str(r.numerator);
    doc["denominator"] = big_str(r.denominator);
    doc["ratio"] = r.ratio;
    emit(doc);
    return 0;
}

int cmd_hilbert(long D, std::uint64_t precision) {
    const BigInt disc(D);
    const HilbertPoly H = precision ? hilbert_class_poly(disc, mpfr_prec_t(precision))
                                    : hilbert_class_poly(disc);
    ordered_json doc = ordered_json::array();
    for (int i = 0; i <= H.poly.degree(); ++i) doc.push_back(big_str(H.poly.coeff(i)));
    emit(doc);
    std::cerr << "# h(" << D << ") = " << H.h << ", max rounding error " << H.max_rounding_error
              << "\n";
    return 0;
}

int cmd_classnum(long D) {
    std::cout << class_number(BigInt(D)) << "\n";
    return 0;
}

int cmd_galois(const std::string& path, std::uint16_t ell, long primes, const std::string& mode,
               const GlobalOpts& g) {
    const CurveNF E = build_curve(load_curve_file(path));
    SamplerConfig cfg;
    cfg.x_max = 10000;
    cfg.mode = parse_mode(mode);
    const std::uint64_t x_max = sampler_interval_top(E, cfg);
    const PrimeSieve sieve(x_max);
    Rng rng(g.seed);
    std::vector<CharPolyObs> obs;
    ordered_json observations = ordered_json::array();
    for (long i = 0; i < primes; ++i) {
        const PrimeIdeal P = sample_prime(E.field, sieve, cfg, x_max, rng, nullptr);
        const auto o = frobenius_obs(E, P, ell);
        if (!o) continue;
        obs.push_back(*o);
        ordered_json oj;
        oj["p"] = o->source_p;
        oj["degree"] = o->source_degree;
        oj["t"] = o->t;
        oj["n"] = o->n;
        observations.push_back(std::move(oj));
    }
    const auto cert = nonsolvable_certificate(obs, ell);
    ordered_json doc;
    doc["command"] = "galois";
    doc["ell"] = ell;
    doc["config"] = config_json(g, cfg, x_max, primes);
    doc["observations"] = std::move(observations);
    ordered_json w;
    w["split_semisimple"] = cert.witnesses.split_semisimple;
    w["nonsplit_semisimple"] = cert.witnesses.nonsplit_semisimple;
    w["large_projective_order"] = cert.witnesses.large_projective_order;
    doc["witnesses_found"] = std::move(w);
    doc["verdict"] = cert.outcome == CertOutcome::certified
                         ? "Certified: image non-solvable, no CM"
                         : "Insufficient: consistent with CM";
    emit(doc);
    return 0;
}

int cmd_gl2(std::uint16_t ell, bool ratio) {
    ordered_json doc;
    doc["command"] = "gl2";
    doc["ell"] = ell;
    if (ratio) {
        const Rational r = trace_zero_ratio(ell);
        doc["trace_zero_ratio"] = r.get_str();
        doc["trace_zero_ratio_float"] = r.get_d();
    }
    emit(doc);
    return 0;
}

int cmd_paper_tables(std::uint64_t bound, const GlobalOpts& g) {
    // CM table: maximal orders of Q(sqrt(-p)), 50 <= p <= 100, h > 1,
    // plus the non-CM quintic j-fields
    const std::vector<long> cm_discs = {-4 * 53, -59, -4 * 61, -71, -4 * 73,
                                        -79,     -83, -4 * 89, -4 * 97};
    const std::vector<std::vector<long>> quintics = {
        {-51, -22, -33, -65, -12, 1}, {19, -92, 14, 28, -78, 1}, {92, 96, 25, 7, 25, 1},
        {93, 61, 41, -71, 71, 1},     {62, -36, -17, 84, 23, 1}, {-10, 51, 78, -74, -94, 1},
        {-39, -78, 5, 97, 79, 1},     {-93, -34, 99, -17, 68, 1}};

    ordered_json cm_rows = ordered_json::array();
    for (long D : cm_discs) {
        const HilbertPoly H = hilbert_class_poly(BigInt(D));
        const CurveNF E = build_curve(spec_from_j_poly(H.poly));
        const auto r = survey_ratio(E, bound, g.threads);
        if (g.csv) {
            std::cout << "cm," << D << "," << H.h << "," << big_str(r.numerator) << ","
                      << big_str(r.denominator) << "," << r.ratio << "\n";
        }
        ordered_json row;
        row["discriminant"] = D;
        row["field_degree"] = H.h;
        row["numerator"] = big_str(r.numerator);
        row["denominator"] = big_str(r.denominator);
        row["ratio"] = r.ratio;
        cm_rows.push_back(std::move(row));
    }
    ordered_json noncm_rows = ordered_json::array();
    for (const auto& q : quintics) {
        std::vector<BigInt> coeffs;
        for (long c : q) coeffs.emplace_back(c);
        const PolyZ jpoly(std::move(coeffs));
        const CurveNF E = build_curve(spec_from_j_poly(jpoly));
        const auto r = survey_ratio(E, bound, g.threads);
        if (g.csv) {
            std::cout << "noncm," << jpoly.str() << ",5," << big_str(r.numerator) << ","
                      << big_str(r.denominator) << "," << r.ratio << "\n";
        }
        ordered_json row;
        row["j_minpoly"] = jpoly.str();
        row["numerator"] = big_str(r.numerator);
        row["denominator"] = big_str(r.denominator);
        row["ratio"] = r.ratio;
        noncm_rows.push_back(std::move(row));
    }
    if (!g.csv) {
        ordered_json doc;
        doc["command"] = "paper-tables";
        doc["bound"] = bound;
        doc["cm_curves"] = std::move(cm_rows);
        doc["non_cm_curves"] = std::move(noncm_rows);
        emit(doc);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"CM testing for elliptic curves over number fields"};
    app.require_subcommand(1);
    GlobalOpts g;
    app.add_option("--seed", g.seed, "RNG seed (reports are deterministic given input and seed)");
    app.add_option("--threads", g.threads, "survey parallelism cap");
    app.add_flag("--csv", g.csv, "CSV rows instead of JSON where applicable");

    std::string path, mode = "faithful";
    long trials = 200, max_records = 25, primes = 100;
    std::uint64_t xmax = 10000, bound = 10000, precision = 0;
    long hilbert_d = 0;
    std::uint16_t ell = 7;
    bool certify = false, ratio = false;

    auto* test = app.add_subcommand("test", "randomized CM decision");
    test->add_option("curvefile", path)->required();
    test->add_option("--trials", trials);
    test->add_option("--xmax", xmax);
    test->add_option("--mode", mode)->check(CLI::IsMember({"faithful", "uniform"}));
    test->add_flag("--certify", certify, "attempt certificate upgrades");

    auto* disc = app.add_subcommand("disc", "endomorphism discriminant from traces");
    disc->add_option("curvefile", path)->required();
    disc->add_option("--max-records", max_records);
    disc->add_option("--xmax", xmax);
    disc->add_option("--mode", mode)->check(CLI::IsMember({"faithful", "uniform"}));

    auto* survey = app.add_subcommand("survey", "supersingular prime density");
    survey->add_option("curvefile", path)->required();
    survey->add_option("--bound", bound)->required();

    auto* hilbert = app.add_subcommand("hilbert", "Hilbert class polynomial");
    hilbert->add_option("-D", hilbert_d)->required();
    hilbert->add_option("--precision", precision);

    auto* classnum = app.add_subcommand("classnum", "class number h(D)");
    classnum->add_option("-D", hilbert_d)->required();

    auto* galois = app.add_subcommand("galois", "mod-ell image certificate");
    galois->add_option("curvefile", path)->required();
    galois->add_option("--ell", ell);
    galois->add_option("--primes", primes);
    galois->add_option("--mode", mode)->check(CLI::IsMember({"faithful", "uniform"}));

    auto* gl2 = app.add_subcommand("gl2", "GL2(F_ell) diagnostics");
    gl2->add_option("--ell", ell);
    gl2->add_flag("--ratio", ratio, "exact trace-zero ratio");

    auto* tables = app.add_subcommand("paper-tables", "reproduce the survey tables");
    tables->add_option("--bound", bound);

    try {
        app.parse(argc, argv);
        if (*test) return cmd_test(path, trials, xmax, mode, certify, g);
        if (*disc) return cmd_disc(path, max_records, xmax, mode, g);
        if (*survey) return cmd_survey(path, bound, g);
        if (*hilbert) return cmd_hilbert(hilbert_d, precision);
        if (*classnum) return cmd_classnum(hilbert_d);
        if (*galois) return cmd_galois(path, ell, primes, mode, g);
        if (*gl2) return cmd_gl2(ell, ratio);
        if (*tables) return cmd_paper_tables(bound, g);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const InputError& e) {
        std::cerr << "error: input: " << e.what() << "\n";
        return 2;
    } catch (const ConfigError& e) {
        std::cerr << "error: config: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
