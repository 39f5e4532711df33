#include "dglift/ring.hpp"

#include <sstream>

namespace dglift {

namespace {

BigInt pow_int(std::uint64_t p, int n) {
    BigInt r = 1;
    for (int i = 0; i < n; ++i)
        r *= p;
    return r;
}

}  // namespace

TruncatedRing TruncatedRing::poly_over_q(int precision) {
    if (precision < 1)
        throw PreconditionError("precision must be >= 1");
    return TruncatedRing(Kind::PolyOverQ, 0, precision, Field::rationals());
}

TruncatedRing TruncatedRing::poly_over_fp(std::uint64_t p, int precision) {
    if (precision < 1)
        throw PreconditionError("precision must be >= 1");
    return TruncatedRing(Kind::PolyOverFp, p, precision, Field::prime_field(p));
}

TruncatedRing TruncatedRing::integers_mod_prime_power(std::uint64_t p, int precision) {
    if (precision < 1)
        throw PreconditionError("precision must be >= 1");
    TruncatedRing r(Kind::IntegersModPrimePower, p, precision, Field::prime_field(p));
    r.modulus_ = pow_int(p, precision);
    return r;
}

std::vector<Scalar> TruncatedRing::poly_of(const RingElement& x) const {
    return std::get<std::vector<Scalar>>(x.v);
}

RingElement TruncatedRing::make_poly(std::vector<Scalar> digits) const {
    if (static_cast<int>(digits.size()) > prec_)
        digits.resize(prec_);
    while (!digits.empty() && field_.is_zero(digits.back()))
        digits.pop_back();
    RingElement e;
    e.v = std::move(digits);
    return e;
}

RingElement TruncatedRing::zero() const {
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = BigInt(0);
        return e;
    }
    return make_poly({});
}

RingElement TruncatedRing::one() const { return from_int(1); }

RingElement TruncatedRing::t() const {
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = BigInt(p_) % modulus_;
        return e;
    }
    return make_poly({field_.zero(), field_.one()});
}

RingElement TruncatedRing::from_int(long long n) const {
    if (kind_ == Kind::IntegersModPrimePower) {
        BigInt r = BigInt(n) % modulus_;
        if (r < 0)
            r += modulus_;
        RingElement e;
        e.v = r;
        return e;
    }
    return make_poly({field_.from_int(n)});
}

RingElement TruncatedRing::from_digits(const std::vector<Scalar>& digits) const {
    if (static_cast<int>(digits.size()) > prec_)
        throw PreconditionError("too many digits for precision " + std::to_string(prec_));
    if (kind_ == Kind::IntegersModPrimePower) {
        BigInt acc = 0, pk = 1;
        for (const Scalar& d : digits) {
            acc += BigInt(std::get<std::uint64_t>(d.v)) * pk;
            pk *= p_;
        }
        RingElement e;
        e.v = acc % modulus_;
        return e;
    }
    return make_poly(digits);
}

Scalar TruncatedRing::digit(const RingElement& x, int j) const {
    if (j < 0 || j >= prec_)
        return field_.zero();
    if (kind_ == Kind::IntegersModPrimePower) {
        BigInt q = std::get<BigInt>(x.v);
        for (int i = 0; i < j; ++i)
            q /= p_;
        return Scalar((q % p_).convert_to<std::uint64_t>());
    }
    const auto& d = std::get<std::vector<Scalar>>(x.v);
    return j < static_cast<int>(d.size()) ? d[j] : field_.zero();
}

bool TruncatedRing::is_zero(const RingElement& x) const {
    if (kind_ == Kind::IntegersModPrimePower)
        return std::get<BigInt>(x.v) == 0;
    return std::get<std::vector<Scalar>>(x.v).empty();
}

RingElement TruncatedRing::add(const RingElement& a, const RingElement& b) const {
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = (std::get<BigInt>(a.v) + std::get<BigInt>(b.v)) % modulus_;
        return e;
    }
    const auto &x = poly_of(a), &y = poly_of(b);
    std::vector<Scalar> r(std::max(x.size(), y.size()), field_.zero());
    for (size_t i = 0; i < x.size(); ++i)
        r[i] = x[i];
    for (size_t i = 0; i < y.size(); ++i)
        r[i] = field_.add(r[i], y[i]);
    return make_poly(std::move(r));
}

RingElement TruncatedRing::sub(const RingElement& a, const RingElement& b) const {
    return add(a, neg(b));
}

RingElement TruncatedRing::mul(const RingElement& a, const RingElement& b) const {
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = (std::get<BigInt>(a.v) * std::get<BigInt>(b.v)) % modulus_;
        return e;
    }
    const auto &x = poly_of(a), &y = poly_of(b);
    if (x.empty() || y.empty())
        return zero();
    std::vector<Scalar> r(std::min<size_t>(x.size() + y.size() - 1, prec_), field_.zero());
    for (size_t i = 0; i < x.size(); ++i)
        for (size_t j = 0; j < y.size() && i + j < r.size(); ++j)
            r[i + j] = field_.add(r[i + j], field_.mul(x[i], y[j]));
    return make_poly(std::move(r));
}

RingElement TruncatedRing::neg(const RingElement& a) const {
    if (kind_ == Kind::IntegersModPrimePower) {
        BigInt x = std::get<BigInt>(a.v);
        RingElement e;
        e.v = x == 0 ? x : modulus_ - x;
        return e;
    }
    auto d = poly_of(a);
    for (auto& c : d)
        c = field_.neg(c);
    return make_poly(std::move(d));
}

int TruncatedRing::valuation(const RingElement& x) const {
    if (kind_ == Kind::IntegersModPrimePower) {
        BigInt q = std::get<BigInt>(x.v);
        if (q == 0)
            return prec_;
        int v = 0;
        while (q % p_ == 0) {
            q /= p_;
            ++v;
        }
        return v;
    }
    const auto& d = std::get<std::vector<Scalar>>(x.v);
    if (d.empty())
        return prec_;
    for (size_t i = 0; i < d.size(); ++i)
        if (!field_.is_zero(d[i]))
            return static_cast<int>(i);
    return prec_;
}

RingElement TruncatedRing::invert(const RingElement& x) const {
    if (!is_unit(x))
        throw NotAUnit("element " + to_string(x) + " is not a unit in " + description());
    if (kind_ == Kind::IntegersModPrimePower) {
        // extended Euclid mod p^N
        BigInt a = std::get<BigInt>(x.v), m = modulus_;
        BigInt t0 = 0, t1 = 1, r0 = m, r1 = a;
        while (r1 != 0) {
            BigInt q = r0 / r1;
            BigInt tmp = t0 - q * t1;
            t0 = t1;
            t1 = tmp;
            tmp = r0 - q * r1;
            r0 = r1;
            r1 = tmp;
        }
        t0 %= m;
        if (t0 < 0)
            t0 += m;
        RingElement e;
        e.v = t0;
        return e;
    }
    // digit recursion: y0 = x0^-1, yk = -x0^-1 * sum_{j=1..k} x_j y_{k-j}
    auto d = poly_of(x);
    Scalar u = field_.inv(d[0]);
    std::vector<Scalar> y(prec_, field_.zero());
    y[0] = u;
    for (int k = 1; k < prec_; ++k) {
        Scalar acc = field_.zero();
        for (int j = 1; j <= k && j < static_cast<int>(d.size()); ++j)
            acc = field_.add(acc, field_.mul(d[j], y[k - j]));
        y[k] = field_.neg(field_.mul(u, acc));
    }
    return make_poly(std::move(y));
}

RingElement TruncatedRing::mul_t_pow(const RingElement& x, int k) const {
    if (k == 0)
        return x;
    if (k >= prec_)
        return zero();
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = (std::get<BigInt>(x.v) * pow_int(p_, k)) % modulus_;
        return e;
    }
    auto d = poly_of(x);
    std::vector<Scalar> r(k, field_.zero());
    r.insert(r.end(), d.begin(), d.end());
    return make_poly(std::move(r));
}

RingElement TruncatedRing::div_t_pow(const RingElement& x, int k) const {
    if (k == 0)
        return x;
    if (valuation(x) < k)
        throw PreconditionError("element " + to_string(x) + " not divisible by t^" + std::to_string(k));
    if (kind_ == Kind::IntegersModPrimePower) {
        RingElement e;
        e.v = std::get<BigInt>(x.v) / pow_int(p_, k);
        return e;
    }
    auto d = poly_of(x);
    if (static_cast<int>(d.size()) <= k)
        return zero();
    return make_poly(std::vector<Scalar>(d.begin() + k, d.end()));
}

std::string TruncatedRing::to_string(const RingElement& x) const {
    if (is_zero(x))
        return "0";
    std::ostringstream os;
    bool first = true;
    for (int j = 0; j < prec_; ++j) {
        Scalar c = digit(x, j);
        if (field_.is_zero(c))
            continue;
        if (!first)
            os << " + ";
        first = false;
        std::string cs = field_.to_string(c);
        if (j == 0) {
            os << cs;
        } else {
            if (cs != "1")
                os << cs << "*";
            os << "t";
            if (j > 1)
                os << "^" << j;
        }
    }
    return os.str();
}

std::string TruncatedRing::description() const {
    switch (kind_) {
        case Kind::PolyOverQ:
            return "Q[t]/(t^" + std::to_string(prec_) + ")";
        case Kind::PolyOverFp:
            return "F" + std::to_string(p_) + "[t]/(t^" + std::to_string(prec_) + ")";
        default:
            return "Z/" + std::to_string(p_) + "^" + std::to_string(prec_);
    }
}

}  // namespace dglift
