#include "cmcheck/ellcurve.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <set>
#include <unordered_map>

namespace cmcheck {

// ---------------------------------------------------------------- CurveNF --

CurveNF make_curve(const NfElem& A, const NfElem& B) {
    const NfElem c4 = make_const(A, 4), c27 = make_const(A, 27), c16 = make_const(A, 16);
    const NfElem singular_test = c4 * A * A * A + c27 * B * B;
    if (singular_test.is_zero()) throw SingularCurveError();
    const NfElem disc = -(c16 * singular_test);
    const NfElem fourA = c4 * A;
    const NfElem j = -(make_const(A, 1728) * fourA * fourA * fourA) / disc;
    return CurveNF{A.field(), A, B, disc, j};
}

CurveNF curve_from_j(const NfElem& j) {
    const NfElem zero = make_const(j, 0), one = make_const(j, 1);
    if (j.is_zero()) return make_curve(zero, one);
    if (j == make_const(j, 1728)) return make_curve(one, zero);
    const NfElem c = j / (make_const(j, 1728) - j);
    return make_curve(make_const(j, 3) * c, make_const(j, 2) * c);
}

CurveNF quadratic_twist_nf(const CurveNF& E, const Rational& d) {
    const NfElem dE = NfElem::from_rational(E.field, d);
    return make_curve(E.A * dE * dE, E.B * dE * dE * dE);
}

std::optional<CurveFq> reduce_at_prime(const CurveNF& E, const PrimeIdeal& P) {
    if (P.p < 5) return std::nullopt;  // characteristic 2, 3 unsupported
    const FqContextPtr ctx = residue_field_of(P);
    const auto a = reduce_element(E.A, P, ctx);
    if (!a) return std::nullopt;
    const auto b = reduce_element(E.B, P, ctx);
    if (!b) return std::nullopt;
    // nonsingularity of the reduced model
    const FqElem c4 = FqElem::from_int(ctx, 4), c27 = FqElem::from_int(ctx, 27);
    if ((c4 * *a * *a * *a + c27 * *b * *b).is_zero()) return std::nullopt;
    return CurveFq{ctx, *a, *b};
}

// --------------------------------------------------------- naive counting --

namespace {

// multiplication kernel on flat coefficient arrays mod (p, g)
struct FqKern {
    std::uint64_t p;
    int d;
    std::vector<std::uint64_t> g;  // monic modulus, size d+1

    explicit FqKern(const FqContext& ctx)
        : p(ctx.p), d(ctx.d), g(ctx.modulus.coeffs()) {}

    void mul(const std::uint64_t* x, const std::uint64_t* y, std::uint64_t* out,
             std::uint64_t* tmp) const {
        const int tn = 2 * d - 1;
        for (int i = 0; i < tn; ++i) tmp[i] = 0;
        for (int i = 0; i < d; ++i) {
            if (x[i] == 0) continue;
            for (int j = 0; j < d; ++j)
                tmp[i + j] = addmod(tmp[i + j], mulmod(x[i], y[j], p), p);
        }
        for (int i = tn - 1; i >= d; --i) {
            const std::uint64_t f = tmp[i];
            if (f == 0) continue;
            tmp[i] = 0;
            for (int j = 0; j < d; ++j)
                tmp[i - d + j] = submod(tmp[i - d + j], mulmod(f, g[j], p), p);
        }
        for (int i = 0; i < d; ++i) out[i] = tmp[i];
    }

    std::uint64_t encode(const std::uint64_t* x) const {
        std::uint64_t idx = 0;
        for (int i = d; i-- > 0;) idx = idx * p + x[i];
        return idx;
    }

    bool increment(std::uint64_t* x) const {  // base-p odometer; false on wrap
        for (int i = 0; i < d; ++i) {
            if (++x[i] < p) return true;
            x[i] = 0;
        }
        return false;
    }
};

BigInt count_points_naive_prime(std::uint64_t p, std::uint64_t a, std::uint64_t b) {
    // character table of squares
    std::vector<std::uint8_t> is_sq(p, 0);
    for (std::uint64_t t = 1; t < p; ++t) is_sq[mulmod(t, t, p)] = 1;
    std::int64_t sum = 0;
    for (std::uint64_t x = 0; x < p; ++x) {
        const std::uint64_t fx = addmod(mulmod(addmod(mulmod(x, x, p), a, p), x, p), b, p);
        if (fx == 0) continue;  // chi = 0
        sum += is_sq[fx] ? 1 : -1;
    }
    return BigInt(static_cast<long>(p)) + 1 + BigInt(static_cast<long>(sum));
}

BigInt count_points_naive_ext(const CurveFq& E) {
    const FqKern kern(*E.ctx);
    if (!E.ctx->q.fits_ulong_p())
        throw CapabilityError("count_points_naive: extension field too large");
    const std::uint64_t qz = E.ctx->q.get_ui();
    if (qz > (1ull << 26))
        throw CapabilityError("count_points_naive: extension field too large");
    std::vector<bool> is_sq(qz, false);
    const int d = kern.d;
    std::vector<std::uint64_t> t(d, 0), sq(d), tmp(2 * d - 1);
    // mark squares of nonzero elements
    kern.increment(t.data());
    do {
        kern.mul(t.data(), t.data(), sq.data(), tmp.data());
        is_sq[kern.encode(sq.data())] = true;
    } while (kern.increment(t.data()));

    std::vector<std::uint64_t> a(d, 0), b(d, 0);
    for (int i = 0; i <= E.a.rep().degree(); ++i) a[i] = E.a.rep().coeff(i);
    for (int i = 0; i <= E.b.rep().degree(); ++i) b[i] = E.b.rep().coeff(i);

    BigInt count = 1;  // infinity
    std::vector<std::uint64_t> x(d, 0), x2(d), fx(d);
    do {
        kern.mul(x.data(), x.data(), x2.data(), tmp.data());
        // fx = (x^2 + a) * x + b
        for (int i = 0; i < d; ++i) x2[i] = addmod(x2[i], a[i], kern.p);
        kern.mul(x2.data(), x.data(), fx.data(), tmp.data());
        bool zero = true;
        for (int i = 0; i < d; ++i) {
            fx[i] = addmod(fx[i], b[i], kern.p);
            if (fx[i] != 0) zero = false;
        }
        if (zero)
            count += 1;
        else if (is_sq[kern.encode(fx.data())])
            count += 2;
    } while (kern.increment(x.data()));
    return count;
}

}  // namespace

BigInt count_points_naive(const CurveFq& E) {
    if (E.ctx->d == 1) {
        const std::uint64_t a = E.a.rep().coeff(0), b = E.b.rep().coeff(0);
        return count_points_naive_prime(E.ctx->p, a, b);
    }
    return count_points_naive_ext(E);
}

// ---------------------------------------------------------------- BSGS -----

namespace {

struct Pt {
    std::uint64_t x = 0, y = 0;
    bool inf = true;
};

struct PrimeCurve {
    std::uint64_t p, a, b;

    Pt add(const Pt& P, const Pt& Q) const {
        if (P.inf) return Q;
        if (Q.inf) return P;
        std::uint64_t lambda;
        if (P.x == Q.x) {
            if (addmod(P.y, Q.y, p) == 0) return Pt{};  // opposite points
            // tangent
            const std::uint64_t num = addmod(mulmod(3, mulmod(P.x, P.x, p), p), a, p);
            lambda = mulmod(num, invmod(addmod(P.y, P.y, p), p), p);
        } else {
            lambda = mulmod(submod(Q.y, P.y, p), invmod(submod(Q.x, P.x, p), p), p);
        }
        const std::uint64_t x3 = submod(submod(mulmod(lambda, lambda, p), P.x, p), Q.x, p);
        const std::uint64_t y3 = submod(mulmod(lambda, submod(P.x, x3, p), p), P.y, p);
        return Pt{x3, y3, false};
    }

    Pt neg(const Pt& P) const { return P.inf ? P : Pt{P.x, P.y == 0 ? 0 : p - P.y, false}; }

    Pt mul(std::uint64_t n, Pt P) const {
        Pt R{};
        while (n) {
            if (n & 1) R = add(R, P);
            P = add(P, P);
            n >>= 1;
        }
        return R;
    }

    Pt random_point(Rng& rng) const {
        while (true) {
            const std::uint64_t x = rng.below(p);
            const std::uint64_t fx = addmod(mulmod(addmod(mulmod(x, x, p), a, p), x, p), b, p);
            if (fx == 0) return Pt{x, 0, false};
            const auto y = sqrt_mod(fx, p);
            if (y) return Pt{x, *y, false};
        }
    }
};

// All n in [base, base + width) with nP = infinity (verified).
std::set<std::uint64_t> kill_multiples(const PrimeCurve& C, const Pt& P, std::uint64_t base,
                                       std::uint64_t width) {
    const std::uint64_t m = std::uint64_t(std::ceil(std::sqrt(double(width)))) + 1;
    std::unordered_map<std::uint64_t, std::vector<std::uint32_t>> baby;
    baby.reserve(m);
    Pt J{};
    for (std::uint64_t j = 1; j < m; ++j) {
        J = C.add(J, P);
        if (J.inf) break;  // tiny order; every multiple of j is a hit, handled by giant scan
        baby[J.x].push_back(std::uint32_t(j));
    }
    const Pt S = C.mul(m, P);
    Pt R = C.mul(base, P);
    std::set<std::uint64_t> found;
    auto verify = [&](std::uint64_t n) {
        if (n < base || n >= base + width) return;
        if (C.mul(n, P).inf) found.insert(n);
    };
    for (std::uint64_t k = 0; k * m < width + m; ++k) {
        if (R.inf) verify(base + k * m);
        else {
            auto it = baby.find(R.x);
            if (it != baby.end()) {
                for (std::uint32_t j : it->second) {
                    verify(base + k * m - j);
                    verify(base + k * m + j);
                }
            }
        }
        R = C.add(R, S);
    }
    return found;
}

std::set<std::uint64_t> order_candidates(const PrimeCurve& C, Rng& rng, std::uint64_t base,
                                         std::uint64_t width, int points) {
    std::set<std::uint64_t> candidates;
    bool first = true;
    for (int i = 0; i < points; ++i) {
        const Pt P = C.random_point(rng);
        const auto hits = kill_multiples(C, P, base, width);
        if (hits.empty()) continue;  // cannot happen for the true order; defensive
        if (first) {
            candidates = hits;
            first = false;
        } else {
            std::set<std::uint64_t> merged;
            std::set_intersection(candidates.begin(), candidates.end(), hits.begin(), hits.end(),
                                  std::inserter(merged, merged.begin()));
            candidates = std::move(merged);
        }
        if (candidates.size() <= 1) break;
    }
    return candidates;
}

}  // namespace

BigInt count_points_bsgs(const CurveFq& E, Rng& rng) {
    if (E.ctx->d != 1)
        throw CapabilityError("count_points_bsgs: prime fields only");
    const std::uint64_t p = E.ctx->p;
    const PrimeCurve C{p, E.a.rep().coeff(0), E.b.rep().coeff(0)};
    const std::uint64_t t2s = std::uint64_t(2.0 * std::sqrt(double(p)));
    const std::uint64_t base = p + 1 - t2s;
    const std::uint64_t width = 2 * t2s + 1;

    auto cand = order_candidates(C, rng, base, width, 20);
    if (cand.size() == 1) return BigInt(static_cast<unsigned long>(*cand.begin()));

    if (cand.size() > 1) {
        // quadratic twist: #E + #E' = 2p + 2
        const CurveFq T = quadratic_twist(E);
        const PrimeCurve Ct{p, T.a.rep().coeff(0), T.b.rep().coeff(0)};
        const auto tcand = order_candidates(Ct, rng, base, width, 20);
        std::vector<std::uint64_t> matches;
        for (std::uint64_t n : cand)
            if (tcand.count(2 * p + 2 - n)) matches.push_back(n);
        if (matches.size() == 1) return BigInt(static_cast<unsigned long>(matches[0]));
    }
    return count_points_naive(E);  // last resort
}

BigInt count_points(const CurveFq& E, Rng& rng) {
    constexpr std::uint64_t kNaiveLimit = 1ull << 16;
    if (E.ctx->d == 1 && E.ctx->p > kNaiveLimit) return count_points_bsgs(E, rng);
    return count_points_naive(E);
}

BigInt count_points(const CurveFq& E) {
    std::uint64_t seed = 0x6d5a2e9b3c7f1145ull ^ E.ctx->p;
    seed = seed * 0x9e3779b97f4a7c15ull + E.a.encode();
    seed = seed * 0x9e3779b97f4a7c15ull + E.b.encode();
    Rng rng(seed);
    return count_points(E, rng);
}

FrobeniusData frobenius_data(const CurveFq& E, Rng& rng) {
    const BigInt n = count_points(E, rng);
    const BigInt q = E.ctx->q;
    const BigInt a = q + 1 - n;
    if (a * a > 4 * q) throw std::logic_error("frobenius_data: Hasse bound violated");
    const bool ss = mpz_fdiv_ui(a.get_mpz_t(), E.ctx->p) == 0;
    return FrobeniusData{a, q, n, ss};
}

FrobeniusData frobenius_data(const CurveFq& E) {
    const BigInt n = count_points(E);
    const BigInt q = E.ctx->q;
    const BigInt a = q + 1 - n;
    if (a * a > 4 * q) throw std::logic_error("frobenius_data: Hasse bound violated");
    const bool ss = mpz_fdiv_ui(a.get_mpz_t(), E.ctx->p) == 0;
    return FrobeniusData{a, q, n, ss};
}

CurveFq quadratic_twist(const CurveFq& E) {
    // deterministic smallest non-square
    FqElem g = FqElem::one(E.ctx);
    for (std::uint64_t idx = 2;; ++idx) {
        g = FqElem::decode(E.ctx, idx);
        if (!g.is_zero() && !g.is_square()) break;
    }
    const FqElem g2 = g * g;
    return CurveFq{E.ctx, E.a * g2, E.b * g2 * g};
}

// -------------------------------------------------- division polynomials ---

namespace {

// Arithmetic on K[x] as plain coefficient vectors (low-to-high, trimmed).
template <class K>
void trim(std::vector<K>& v) {
    while (!v.empty() && v.back().is_zero()) v.pop_back();
}

template <class K>
std::vector<K> vadd(const std::vector<K>& a, const std::vector<K>& b, const K& zero) {
    std::vector<K> r(std::max(a.size(), b.size()), zero);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] + b[i];
    trim(r);
    return r;
}

template <class K>
std::vector<K> vsub(const std::vector<K>& a, const std::vector<K>& b, const K& zero) {
    std::vector<K> r(std::max(a.size(), b.size()), zero);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = r[i] + a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] = r[i] - b[i];
    trim(r);
    return r;
}

template <class K>
std::vector<K> vmul(const std::vector<K>& a, const std::vector<K>& b, const K& zero) {
    if (a.empty() || b.empty()) return {};
    std::vector<K> r(a.size() + b.size() - 1, zero);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] = r[i + j] + a[i] * b[j];
    }
    trim(r);
    return r;
}

template <class K>
std::vector<K> vscale(const std::vector<K>& a, const K& s) {
    std::vector<K> r(a);
    for (auto& v : r) v = v * s;
    trim(r);
    return r;
}

// exact division by a monic divisor
template <class K>
std::vector<K> vdivexact(std::vector<K> a, const std::vector<K>& m, const K& zero) {
    if (a.empty()) return {};
    const int dd = int(m.size()) - 1;
    if (int(a.size()) - 1 < dd) throw std::logic_error("vdivexact: degree underflow");
    std::vector<K> q(a.size() - dd, zero);
    for (int i = int(a.size()) - 1; i >= dd; --i) {
        const K f = a[i];
        if (f.is_zero()) continue;
        q[i - dd] = f;
        for (int j = 0; j <= dd; ++j) a[i - dd + j] = a[i - dd + j] - f * m[j];
    }
    for (const auto& v : a)
        if (!v.is_zero()) throw std::logic_error("vdivexact: nonzero remainder");
    return q;
}

// Element of K[x] + y K[x] with y^2 = x^3 + Ax + B.
template <class K>
struct YPoly {
    std::vector<K> ex, oy;
};

template <class K>
YPoly<K> ymul(const YPoly<K>& a, const YPoly<K>& b, const std::vector<K>& F, const K& zero) {
    YPoly<K> r;
    r.ex = vadd(vmul(a.ex, b.ex, zero), vmul(vmul(a.oy, b.oy, zero), F, zero), zero);
    r.oy = vadd(vmul(a.ex, b.oy, zero), vmul(a.oy, b.ex, zero), zero);
    return r;
}

template <class K>
YPoly<K> ysub(const YPoly<K>& a, const YPoly<K>& b, const K& zero) {
    return {vsub(a.ex, b.ex, zero), vsub(a.oy, b.oy, zero)};
}

// psi_0 .. psi_ell as YPoly values.
template <class K>
std::vector<YPoly<K>> division_psis(const K& A, const K& B, int ell) {
    const K zero = A - A;
    const K one = make_const(A, 1);
    const std::vector<K> F{B, A, zero, one};  // x^3 + Ax + B
    std::vector<YPoly<K>> psi(std::size_t(std::max(ell + 3, 5)));
    psi[0] = {{}, {}};
    psi[1] = {{one}, {}};
    psi[2] = {{}, {make_const(A, 2)}};
    // 3x^4 + 6Ax^2 + 12Bx - A^2
    psi[3] = {{zero - A * A, make_const(A, 12) * B, make_const(A, 6) * A, zero, make_const(A, 3)},
              {}};
    // 4y (x^6 + 5Ax^4 + 20Bx^3 - 5A^2x^2 - 4ABx - 8B^2 - A^3)
    psi[4] = {{},
              {vscale(std::vector<K>{zero - make_const(A, 8) * B * B - A * A * A,
                                     zero - make_const(A, 4) * A * B,
                                     zero - make_const(A, 5) * A * A, make_const(A, 20) * B,
                                     make_const(A, 5) * A, zero, one},
                      make_const(A, 4))}};
    trim(psi[3].ex);
    trim(psi[4].oy);
    const K inv2 = make_const(A, 2).inverse();
    for (int m = 5; m <= ell; ++m) {
        if (m % 2 == 1) {
            const int k = m / 2;
            YPoly<K> t1 = ymul(psi[k + 2], ymul(ymul(psi[k], psi[k], F, zero), psi[k], F, zero), F, zero);
            YPoly<K> t2 = ymul(psi[k - 1], ymul(ymul(psi[k + 1], psi[k + 1], F, zero), psi[k + 1], F, zero), F, zero);
            psi[m] = ysub(t1, t2, zero);
            if (!psi[m].oy.empty()) throw std::logic_error("division_psis: odd parity violated");
        } else {
            const int k = m / 2;
            YPoly<K> t1 = ymul(psi[k + 2], ymul(psi[k - 1], psi[k - 1], F, zero), F, zero);
            YPoly<K> t2 = ymul(psi[k - 2], ymul(psi[k + 1], psi[k + 1], F, zero), F, zero);
            YPoly<K> inner = ysub(t1, t2, zero);
            YPoly<K> prod = ymul(psi[k], inner, F, zero);
            // psi_2k = prod / (2y): prod must be a pure x-polynomial
            if (!prod.oy.empty()) throw std::logic_error("division_psis: even parity violated");
            psi[m] = {{}, vscale(vdivexact(prod.ex, F, zero), inv2)};
        }
    }
    return psi;
}

}  // namespace

std::vector<NfElem> division_polynomial(const CurveNF& E, int ell) {
    if (ell == 1) return {make_const(E.A, 1)};
    if (ell < 3 || ell % 2 == 0)
        throw std::invalid_argument("division_polynomial: ell must be odd and >= 1");
    auto psi = division_psis(E.A, E.B, ell);
    return psi[ell].ex;
}

PolyFq division_polynomial(const CurveFq& E, int ell) {
    if (ell == 1) return PolyFq::constant(FqElem::one(E.ctx));
    if (ell < 3 || ell % 2 == 0)
        throw std::invalid_argument("division_polynomial: ell must be odd and >= 1");
    auto psi = division_psis(E.a, E.b, ell);
    return PolyFq(E.ctx, std::move(psi[ell].ex));
}

}  // namespace cmcheck
