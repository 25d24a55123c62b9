#include "cmcheck/gl2.hpp"

#include <algorithm>
#include <unordered_set>

namespace cmcheck {

// ------------------------------------------------------------------- GL2 ---

std::uint32_t GL2::det() const {
    const std::uint32_t ad = std::uint32_t(m[0]) * m[3] % ell;
    const std::uint32_t bc = std::uint32_t(m[1]) * m[2] % ell;
    return (ad + ell - bc) % ell;
}

std::uint32_t GL2::encode() const {
    return ((std::uint32_t(m[0]) * ell + m[1]) * ell + m[2]) * ell + m[3];
}

GL2 GL2::decode(std::uint16_t ell, std::uint32_t code) {
    GL2 g{ell, {}};
    g.m[3] = code % ell;
    code /= ell;
    g.m[2] = code % ell;
    code /= ell;
    g.m[1] = code % ell;
    g.m[0] = code / ell % ell;
    return g;
}

GL2 GL2::identity(std::uint16_t ell) { return GL2{ell, {1, 0, 0, 1}}; }

GL2 GL2::operator*(const GL2& o) const {
    auto mul = [this](std::uint16_t x, std::uint16_t y) {
        return std::uint32_t(x) * y % ell;
    };
    GL2 r{ell, {}};
    r.m[0] = std::uint16_t((mul(m[0], o.m[0]) + mul(m[1], o.m[2])) % ell);
    r.m[1] = std::uint16_t((mul(m[0], o.m[1]) + mul(m[1], o.m[3])) % ell);
    r.m[2] = std::uint16_t((mul(m[2], o.m[0]) + mul(m[3], o.m[2])) % ell);
    r.m[3] = std::uint16_t((mul(m[2], o.m[1]) + mul(m[3], o.m[3])) % ell);
    return r;
}

GL2 GL2::inverse() const {
    const std::uint32_t d = det();
    if (d == 0) throw std::invalid_argument("GL2::inverse: singular matrix");
    const std::uint32_t di = std::uint32_t(invmod(d, ell));
    auto mulc = [this, di](std::uint32_t x) { return std::uint16_t(x * di % ell); };
    return GL2{ell,
               {mulc(m[3]), mulc((ell - m[1]) % ell), mulc((ell - m[2]) % ell), mulc(m[0])}};
}

bool Subgroup::contains(const GL2& g) const {
    return std::binary_search(elements.begin(), elements.end(), g.encode());
}

// ---------------------------------------------------------------- closure --

namespace {

std::optional<Subgroup> closure(const std::vector<GL2>& gens, std::size_t cap) {
    if (gens.empty()) throw std::invalid_argument("generate_subgroup: no generators");
    const std::uint16_t ell = gens.front().ell;
    for (const auto& g : gens) {
        if (g.ell != ell) throw std::invalid_argument("generate_subgroup: mixed moduli");
        if (g.det() == 0) throw std::invalid_argument("generate_subgroup: singular generator");
    }
    std::unordered_set<std::uint32_t> seen;
    std::vector<GL2> frontier{GL2::identity(ell)};
    seen.insert(frontier.front().encode());
    while (!frontier.empty()) {
        std::vector<GL2> next;
        for (const GL2& x : frontier) {
            for (const GL2& g : gens) {
                const GL2 y = x * g;
                if (seen.insert(y.encode()).second) {
                    if (seen.size() > cap) return std::nullopt;
                    next.push_back(y);
                }
            }
        }
        frontier = std::move(next);
    }
    Subgroup out;
    out.ell = ell;
    out.generators = gens;
    out.elements.assign(seen.begin(), seen.end());
    std::sort(out.elements.begin(), out.elements.end());
    return out;
}

}  // namespace

Subgroup generate_subgroup(const std::vector<GL2>& gens) {
    if (!gens.empty() && gens.front().ell > kMaxClosureEll)
        throw CapabilityError("generate_subgroup: ell > 13 not supported for exhaustive closure");
    return *closure(gens, SIZE_MAX);
}

std::optional<Subgroup> generate_subgroup_capped(const std::vector<GL2>& gens, std::size_t cap) {
    return closure(gens, cap);
}

bool is_solvable(const Subgroup& G) {
    std::vector<std::uint32_t> current = G.elements;
    const std::uint16_t ell = G.ell;
    while (current.size() > 1) {
        // commutator subgroup of the current term
        std::vector<GL2> elems;
        elems.reserve(current.size());
        for (auto code : current) elems.push_back(GL2::decode(ell, code));
        std::unordered_set<std::uint32_t> comms;
        std::vector<GL2> comm_gens;
        for (const GL2& g : elems) {
            const GL2 gi = g.inverse();
            for (const GL2& h : elems) {
                const GL2 c = gi * h.inverse() * g * h;
                if (comms.insert(c.encode()).second) comm_gens.push_back(c);
            }
        }
        const Subgroup derived = *closure(comm_gens, SIZE_MAX);
        if (derived.elements.size() == current.size()) return false;  // perfect group
        current = derived.elements;
    }
    return true;
}

// --------------------------------------------------------------- r_ell -----

Rational trace_zero_ratio(std::uint16_t ell) {
    if (ell < 3 || ell > 97 || !is_prime(BigInt(ell)))
        throw std::invalid_argument("trace_zero_ratio: ell must be an odd prime <= 97");
    // invertible trace-zero matrices: d = -a, need bc != -a^2
    std::uint64_t count = 0;
    for (std::uint32_t a = 0; a < ell; ++a) {
        const std::uint32_t target = (std::uint32_t(ell) * ell - a * a % ell) % ell;  // -a^2
        for (std::uint32_t b = 0; b < ell; ++b) {
            for (std::uint32_t c = 0; c < ell; ++c) {
                if (b * c % ell != target) ++count;
            }
        }
    }
    const std::uint64_t e2 = std::uint64_t(ell) * ell;
    const std::uint64_t order = (e2 - 1) * (e2 - ell);
    Rational r(BigInt(static_cast<unsigned long>(count)),
               BigInt(static_cast<unsigned long>(order)));
    r.canonicalize();
    return r;
}

// ----------------------------------------------------------- observations --

std::uint16_t CharPolyObs::disc() const {
    const std::uint32_t t2 = std::uint32_t(t) * t % ell;
    const std::uint32_t fourn = 4u * n % ell;
    return std::uint16_t((t2 + ell - fourn) % ell);
}

CharPolyObs obs_from_frobenius(const FrobeniusData& frob, std::uint64_t p, int degree,
                               std::uint16_t ell) {
    CharPolyObs o;
    o.ell = ell;
    o.t = std::uint16_t(mpz_fdiv_ui(frob.trace.get_mpz_t(), ell));
    o.n = std::uint16_t(mpz_fdiv_ui(frob.q.get_mpz_t(), ell));
    o.source_p = p;
    o.source_degree = degree;
    return o;
}

std::optional<CharPolyObs> frobenius_obs(const CurveNF& E, const PrimeIdeal& P,
                                         std::uint16_t ell) {
    if (P.p == ell) return std::nullopt;  // skip: p = ell
    const auto reduced = reduce_at_prime(E, P);
    if (!reduced) return std::nullopt;  // skip: bad reduction
    const FrobeniusData frob = frobenius_data(*reduced);
    return obs_from_frobenius(frob, P.p, P.residue_degree, ell);
}

WitnessState classify_obs(std::uint16_t ell, std::uint16_t t, std::uint16_t n) {
    WitnessState w;
    if (n == 0) return w;
    const std::uint32_t t2 = std::uint32_t(t) * t % ell;
    const std::uint32_t d = (t2 + ell - 4u * n % ell) % ell;
    if (t != 0 && d != 0) {
        const bool square = legendre(d, ell) == 1;
        w.split_semisimple = square;
        w.nonsplit_semisimple = !square;
    }
    // u = t^2 / n encodes the projective order: u in {4,0,1,2} for orders
    // 1,2,3,4 (and ell), u^2 - 3u + 1 = 0 for order 5.
    const std::uint32_t u = t2 * std::uint32_t(invmod(n, ell)) % ell;
    if (u != 0 && u != 1 && u != 2 && u != 4) {
        const std::uint32_t poly = (u * u % ell + 1 + 3 * (ell - u)) % ell;
        if (poly != 0) w.large_projective_order = true;
    }
    return w;
}

void WitnessState::absorb(const CharPolyObs& o) {
    const WitnessState w = classify_obs(o.ell, o.t, o.n);
    split_semisimple |= w.split_semisimple;
    nonsplit_semisimple |= w.nonsplit_semisimple;
    large_projective_order |= w.large_projective_order;
}

NonsolvableCertificate nonsolvable_certificate(const std::vector<CharPolyObs>& obs,
                                               std::uint16_t ell) {
    if (ell < 5)
        throw std::invalid_argument("nonsolvable_certificate: ell must be >= 5");
    NonsolvableCertificate cert;
    cert.observations = long(obs.size());
    for (const auto& o : obs) {
        if (o.n == 0) throw std::invalid_argument("nonsolvable_certificate: observation with n = 0");
        cert.witnesses.absorb(o);
        if (cert.witnesses.complete()) break;
    }
    cert.outcome =
        cert.witnesses.complete() ? CertOutcome::certified : CertOutcome::insufficient;
    return cert;
}

std::uint64_t mw_ell_floor(long degree, double height, double c, double gamma,
                           const BigInt& field_disc) {
    if (!(c > 0) || !(gamma > 0))
        throw ConfigError("mw_ell_floor: constants c and gamma must be supplied positive");
    const double floor_val = c * std::pow(std::max(double(degree), height), gamma);
    std::uint64_t ell = std::max<std::uint64_t>(5, std::uint64_t(std::ceil(floor_val)));
    while (true) {
        if (is_prime(BigInt(static_cast<unsigned long>(ell))) &&
            mpz_fdiv_ui(field_disc.get_mpz_t(), ell) != 0)
            return ell;
        ++ell;
    }
}

}  // namespace cmcheck
