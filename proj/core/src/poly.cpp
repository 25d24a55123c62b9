#include "cmcheck/poly.hpp"

#include <cmath>
#include <sstream>

namespace cmcheck {

// ---------------------------------------------------------------- PolyZ ----

PolyZ::PolyZ(std::vector<BigInt> coeffs) : c_(std::move(coeffs)) { normalize(); }

void PolyZ::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyZ PolyZ::x() { return PolyZ({BigInt(0), BigInt(1)}); }

PolyZ PolyZ::constant(const BigInt& c) { return PolyZ({c}); }

const BigInt& PolyZ::coeff(std::size_t i) const {
    static const BigInt zero(0);
    return i < c_.size() ? c_[i] : zero;
}

PolyZ PolyZ::operator+(const PolyZ& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return PolyZ(std::move(r));
}

PolyZ PolyZ::operator-(const PolyZ& o) const {
    std::vector<BigInt> r(std::max(c_.size(), o.c_.size()), BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return PolyZ(std::move(r));
}

PolyZ PolyZ::operator*(const PolyZ& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<BigInt> r(c_.size() + o.c_.size() - 1, BigInt(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return PolyZ(std::move(r));
}

PolyZ PolyZ::operator-() const {
    std::vector<BigInt> r(c_);
    for (auto& v : r) v = -v;
    return PolyZ(std::move(r));
}

BigInt PolyZ::eval(const BigInt& x) const {
    BigInt acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyZ PolyZ::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<BigInt> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * BigInt(long(i));
    return PolyZ(std::move(r));
}

BigInt PolyZ::content() const {
    BigInt g(0);
    for (const auto& v : c_) g = gcd(g, v);
    return g;
}

PolyZ PolyZ::primitive_part() const {
    if (is_zero()) return {};
    const BigInt g = content();
    std::vector<BigInt> r(c_);
    for (auto& v : r) v /= g;
    if (r.back() < 0)
        for (auto& v : r) v = -v;
    return PolyZ(std::move(r));
}

std::string PolyZ::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const BigInt& a = c_[i];
        if (a == 0) continue;
        if (!first) os << (a > 0 ? " + " : " - ");
        else if (a < 0) os << "-";
        const BigInt m = abs(a);
        if (m != 1 || i == 0) os << m.get_str();
        if (i >= 1) {
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

// ---------------------------------------------------------------- PolyQ ----

PolyQ::PolyQ(std::vector<Rational> coeffs) : c_(std::move(coeffs)) {
    for (auto& v : c_) v.canonicalize();
    normalize();
}

void PolyQ::normalize() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

PolyQ PolyQ::from(const PolyZ& f) {
    std::vector<Rational> r;
    r.reserve(f.coeffs().size());
    for (const auto& v : f.coeffs()) r.emplace_back(v);
    return PolyQ(std::move(r));
}

PolyQ PolyQ::x() { return PolyQ({Rational(0), Rational(1)}); }

PolyQ PolyQ::constant(const Rational& c) { return PolyQ({c}); }

const Rational& PolyQ::coeff(std::size_t i) const {
    static const Rational zero(0);
    return i < c_.size() ? c_[i] : zero;
}

PolyQ PolyQ::operator+(const PolyQ& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-(const PolyQ& o) const {
    std::vector<Rational> r(std::max(c_.size(), o.c_.size()), Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (std::size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator*(const PolyQ& o) const {
    if (is_zero() || o.is_zero()) return {};
    std::vector<Rational> r(c_.size() + o.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < c_.size(); ++i)
        for (std::size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return PolyQ(std::move(r));
}

PolyQ PolyQ::operator-() const {
    std::vector<Rational> r(c_);
    for (auto& v : r) v = -v;
    return PolyQ(std::move(r));
}

Rational PolyQ::eval(const Rational& x) const {
    Rational acc(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

PolyQ PolyQ::derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> r(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) r[i - 1] = c_[i] * Rational(long(i));
    return PolyQ(std::move(r));
}

PolyQ PolyQ::monic() const {
    if (is_zero()) return {};
    std::vector<Rational> r(c_);
    const Rational inv = 1 / c_.back();
    for (auto& v : r) v *= inv;
    return PolyQ(std::move(r));
}

std::pair<PolyQ, PolyQ> PolyQ::divrem(const PolyQ& divisor) const {
    if (divisor.is_zero()) throw std::invalid_argument("PolyQ::divrem: division by zero");
    std::vector<Rational> rem(c_);
    const int dd = divisor.degree();
    if (degree() < dd) return {PolyQ(), *this};
    std::vector<Rational> quot(c_.size() - dd, Rational(0));
    const Rational lead_inv = 1 / divisor.lead();
    for (int i = int(rem.size()) - 1; i >= dd; --i) {
        if (rem[i] == 0) continue;
        const Rational f = rem[i] * lead_inv;
        quot[i - dd] = f;
        for (int j = 0; j <= dd; ++j) rem[i - dd + j] -= f * divisor.c_[j];
    }
    return {PolyQ(std::move(quot)), PolyQ(std::move(rem))};
}

PolyZ PolyQ::clear_denominators() const {
    BigInt l(1);
    for (const auto& v : c_) l = lcm(l, v.get_den());
    std::vector<BigInt> r;
    r.reserve(c_.size());
    for (const auto& v : c_) {
        Rational scaled = v * Rational(l);
        scaled.canonicalize();
        r.push_back(scaled.get_num());
    }
    return PolyZ(std::move(r));
}

bool PolyQ::is_integral() const {
    for (const auto& v : c_)
        if (v.get_den() != 1) return false;
    return true;
}

PolyZ PolyQ::to_integer() const {
    if (!is_integral()) throw std::invalid_argument("PolyQ::to_integer: non-integer coefficient");
    std::vector<BigInt> r;
    r.reserve(c_.size());
    for (const auto& v : c_) r.push_back(v.get_num());
    return PolyZ(std::move(r));
}

// ------------------------------------------------------------- measures ----

double encoding_length(const PolyZ& f) {
    if (f.is_zero()) throw std::invalid_argument("encoding_length: zero polynomial");
    double total = 0;
    for (int i = 0; i <= f.degree(); ++i) {
        const BigInt& a = f.coeff(i);
        total += (a == 0) ? 1.0 : std::max(1.0, ln_abs(a));
    }
    return total;
}

WeilWeight weil_weight(const PolyZ& f) {
    if (f.is_zero()) throw std::invalid_argument("weil_weight: zero polynomial");
    BigInt w(0);
    for (int i = 0; i <= f.degree(); ++i) w += abs(f.coeff(i));
    const int d = std::max(1, f.degree());
    return {w, ln_abs(w) / double(d)};
}

namespace {

Rational rat_pow(const Rational& base, int e) {
    Rational acc(1);
    for (int i = 0; i < e; ++i) acc *= base;
    return acc;
}

}  // namespace

Rational resultant(PolyQ a, PolyQ b) {
    if (a.is_zero() || b.is_zero())
        throw std::invalid_argument("resultant: zero polynomial");
    if (a.degree() == 0) return rat_pow(a.lead(), b.degree());
    Rational sign(1), scale(1);
    while (b.degree() > 0) {
        auto [q, r] = a.divrem(b);
        (void)q;
        if (r.is_zero()) return Rational(0);
        if ((a.degree() % 2) && (b.degree() % 2)) sign = -sign;
        scale *= rat_pow(b.lead(), a.degree() - r.degree());
        a = b;
        b = r;
    }
    return sign * scale * rat_pow(b.lead(), a.degree());
}

BigInt discriminant_of_monic(const PolyZ& T) {
    if (!T.is_monic()) throw std::invalid_argument("discriminant_of_monic: polynomial must be monic");
    const int n = T.degree();
    if (n < 1) throw std::invalid_argument("discriminant_of_monic: degree must be >= 1");
    if (n == 1) return BigInt(1);
    const Rational res = resultant(PolyQ::from(T), PolyQ::from(T.derivative()));
    Rational d = ((n * (n - 1) / 2) % 2 == 0) ? res : -res;
    d.canonicalize();
    if (d.get_den() != 1) throw std::logic_error("discriminant_of_monic: non-integer resultant");
    return d.get_num();
}

}  // namespace cmcheck
