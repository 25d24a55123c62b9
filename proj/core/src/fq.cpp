#include "cmcheck/fq.hpp"

#include <algorithm>

namespace cmcheck {

std::shared_ptr<const FqContext> FqContext::make(std::uint64_t p, int d) {
    return make(find_irreducible(p, d));
}

std::shared_ptr<const FqContext> FqContext::make(PolyFp modulus) {
    const std::uint64_t p = modulus.p();
    if (p < 5) throw std::invalid_argument("FqContext: characteristic must be >= 5");
    if (!modulus.is_monic()) modulus = modulus.monic();
    const int d = modulus.degree();
    auto ctx = std::make_shared<FqContext>();
    ctx->p = p;
    ctx->d = d;
    ctx->modulus = std::move(modulus);
    mpz_ui_pow_ui(ctx->q.get_mpz_t(), p, d);
    return ctx;
}

// --------------------------------------------------------------- FqElem ----

FqElem::FqElem(FqContextPtr ctx, PolyFp rep) : ctx_(std::move(ctx)), rep_(rep.mod(ctx_->modulus)) {}

FqElem FqElem::zero(FqContextPtr ctx) {
    auto p = ctx->p;
    return FqElem(std::move(ctx), PolyFp(p));
}

FqElem FqElem::one(FqContextPtr ctx) { return from_int(std::move(ctx), 1); }

FqElem FqElem::from_int(FqContextPtr ctx, std::uint64_t v) {
    auto p = ctx->p;
    return FqElem(std::move(ctx), PolyFp::constant(p, v % p));
}

FqElem FqElem::operator+(const FqElem& o) const { return FqElem(ctx_, rep_ + o.rep_); }
FqElem FqElem::operator-(const FqElem& o) const { return FqElem(ctx_, rep_ - o.rep_); }
FqElem FqElem::operator*(const FqElem& o) const { return FqElem(ctx_, rep_ * o.rep_); }

FqElem FqElem::operator-() const { return FqElem(ctx_, PolyFp(ctx_->p) - rep_); }

bool FqElem::operator==(const FqElem& o) const { return rep_ == o.rep_; }

FqElem FqElem::inverse() const {
    if (is_zero()) throw std::invalid_argument("FqElem::inverse: zero element");
    // extended Euclid in F_p[x]
    const std::uint64_t p = ctx_->p;
    PolyFp r0 = ctx_->modulus, r1 = rep_;
    PolyFp s0 = PolyFp(p), s1 = PolyFp::constant(p, 1);
    while (!r1.is_zero()) {
        auto [q, r] = r0.divrem(r1);
        PolyFp s = s0 - q * s1;
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s);
    }
    // r0 = gcd (a unit since modulus is irreducible and rep != 0)
    const std::uint64_t scale = invmod(r0.lead(), p);
    return FqElem(ctx_, s0 * PolyFp::constant(p, scale));
}

FqElem FqElem::pow(const BigInt& e) const {
    if (e < 0) return inverse().pow(-e);
    FqElem result = one(ctx_);
    FqElem base = *this;
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    if (e == 0) return result;
    for (std::size_t i = bits; i-- > 0;) {
        result = result * result;
        if (mpz_tstbit(e.get_mpz_t(), i)) result = result * base;
    }
    return result;
}

bool FqElem::is_square() const {
    if (is_zero()) return true;
    return pow((ctx_->q - 1) / 2) == one(ctx_);
}

std::uint64_t FqElem::encode() const {
    std::uint64_t idx = 0;
    for (int i = ctx_->d; i-- > 0;) idx = idx * ctx_->p + rep_.coeff(i);
    return idx;
}

FqElem FqElem::decode(FqContextPtr ctx, std::uint64_t index) {
    std::vector<std::uint64_t> c(ctx->d);
    for (int i = 0; i < ctx->d; ++i) {
        c[i] = index % ctx->p;
        index /= ctx->p;
    }
    auto p = ctx->p;
    return FqElem(std::move(ctx), PolyFp(p, std::move(c)));
}

FqElem make_const(const FqElem& like, long v) {
    const std::uint64_t p = like.ctx()->p;
    const std::uint64_t r = std::uint64_t(((v % long(p)) + long(p)) % long(p));
    return FqElem::from_int(like.ctx(), r);
}

// --------------------------------------------------------------- PolyFq ----

PolyFq::PolyFq(FqContextPtr ctx, std::vector<FqElem> coeffs)
    : ctx_(std::move(ctx)), c_(std::move(coeffs)) {
    normalize();
}

void PolyFq::normalize() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

PolyFq PolyFq::x(FqContextPtr ctx) {
    std::vector<FqElem> c{FqElem::zero(ctx), FqElem::one(ctx)};
    return PolyFq(std::move(ctx), std::move(c));
}

PolyFq PolyFq::constant(const FqElem& c) { return PolyFq(c.ctx(), {c}); }

FqElem PolyFq::coeff(std::size_t i) const {
    return i < c_.size() ? c_[i] : FqElem::zero(ctx_);
}

PolyFq PolyFq::operator+(const PolyFq& o) const {
    std::vector<FqElem> r;
    const std::size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) + o.coeff(i));
    return PolyFq(ctx_, std::move(r));
}

PolyFq PolyFq::operator-(const PolyFq& o) const {
    std::vector<FqElem> r;
    const std::size_t n = std::max(c_.size(), o.c_.size());
    r.reserve(n);
    for (std::size_t i = 0; i < n; ++i) r.push_back(coeff(i) - o.coeff(i));
    return PolyFq(ctx_, std::move(r));
}

PolyFq PolyFq::operator*(const PolyFq& o) const {
    if (is_zero() || o.is_zero()) return PolyFq(ctx_);
    std::vector<FqElem> r(c_.size() + o.c_.size() - 1, FqElem::zero(ctx_));
    for (std::size_t i = 0; i < c_.size(); ++i) {
        if (c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] = r[i + j] + c_[i] * o.c_[j];
    }
    return PolyFq(ctx_, std::move(r));
}

bool PolyFq::operator==(const PolyFq& o) const {
    if (c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
        if (!(c_[i] == o.c_[i])) return false;
    return true;
}

PolyFq PolyFq::monic() const {
    if (is_zero()) return *this;
    const FqElem inv = c_.back().inverse();
    std::vector<FqElem> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(v * inv);
    return PolyFq(ctx_, std::move(r));
}

std::pair<PolyFq, PolyFq> PolyFq::divrem(const PolyFq& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyFq::divrem: division by zero");
    const int dd = divisor.degree();
    if (degree() < dd) return {PolyFq(ctx_), *this};
    std::vector<FqElem> rem(c_);
    std::vector<FqElem> quot(c_.size() - dd, FqElem::zero(ctx_));
    const FqElem lead_inv = divisor.lead().inverse();
    for (int i = int(rem.size()) - 1; i >= dd; --i) {
        if (rem[i].is_zero()) continue;
        const FqElem f = rem[i] * lead_inv;
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] = rem[i - dd + j] - f * divisor.c_[j];
    }
    return {PolyFq(ctx_, std::move(quot)), PolyFq(ctx_, std::move(rem))};
}

FqElem PolyFq::eval(const FqElem& x) const {
    FqElem acc = FqElem::zero(ctx_);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyFq gcd(PolyFq a, PolyFq b) {
    while (!b.is_zero()) {
        PolyFq r = a.mod(b);
        a = std::move(b);
        b = std::move(r);
    }
    return a.monic();
}

PolyFq powmod(const PolyFq& base, const BigInt& e, const PolyFq& m) {
    PolyFq result = PolyFq::constant(FqElem::one(m.ctx()));
    const PolyFq b = base.mod(m);
    if (e == 0) return result.mod(m);
    const std::size_t bits = mpz_sizeinbase(e.get_mpz_t(), 2);
    for (std::size_t i = bits; i-- > 0;) {
        result = (result * result).mod(m);
        if (mpz_tstbit(e.get_mpz_t(), i)) result = (result * b).mod(m);
    }
    return result;
}

int count_roots(const PolyFq& f) {
    if (f.is_zero()) throw std::invalid_argument("count_roots: zero polynomial");
    const PolyFq xq = powmod(PolyFq::x(f.ctx()), f.ctx()->q, f);
    const PolyFq g = gcd(xq - PolyFq::x(f.ctx()), f);
    return std::max(0, g.degree());
}

}  // namespace cmcheck
