#include "dglift/scalar.hpp"

namespace dglift {

Field Field::prime_field(std::uint64_t p) {
    if (p < 2)
        throw PreconditionError("prime field characteristic must be >= 2");
    for (std::uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0)
            throw PreconditionError("characteristic " + std::to_string(p) + " is not prime");
    if (p >= (std::uint64_t{1} << 31))
        throw PreconditionError("characteristic too large");
    return Field(Kind::PrimeField, p);
}

Scalar Field::zero() const {
    return kind_ == Kind::Rationals ? Scalar(BigRat(0)) : Scalar(std::uint64_t{0});
}

Scalar Field::one() const {
    return kind_ == Kind::Rationals ? Scalar(BigRat(1)) : Scalar(std::uint64_t{1});
}

Scalar Field::from_int(long long n) const {
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(n));
    long long r = n % static_cast<long long>(p_);
    if (r < 0)
        r += static_cast<long long>(p_);
    return Scalar(static_cast<std::uint64_t>(r));
}

bool Field::is_zero(const Scalar& a) const {
    if (kind_ == Kind::Rationals)
        return std::get<BigRat>(a.v) == 0;
    return std::get<std::uint64_t>(a.v) == 0;
}

Scalar Field::add(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(std::get<BigRat>(a.v) + std::get<BigRat>(b.v)));
    return Scalar((std::get<std::uint64_t>(a.v) + std::get<std::uint64_t>(b.v)) % p_);
}

Scalar Field::sub(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(std::get<BigRat>(a.v) - std::get<BigRat>(b.v)));
    return Scalar((std::get<std::uint64_t>(a.v) + p_ - std::get<std::uint64_t>(b.v)) % p_);
}

Scalar Field::mul(const Scalar& a, const Scalar& b) const {
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(std::get<BigRat>(a.v) * std::get<BigRat>(b.v)));
    return Scalar((std::get<std::uint64_t>(a.v) * std::get<std::uint64_t>(b.v)) % p_);
}

Scalar Field::neg(const Scalar& a) const {
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(-std::get<BigRat>(a.v)));
    std::uint64_t x = std::get<std::uint64_t>(a.v);
    return Scalar(x == 0 ? 0 : p_ - x);
}

Scalar Field::inv(const Scalar& a) const {
    if (is_zero(a))
        throw NotAUnit("division by zero in coefficient field");
    if (kind_ == Kind::Rationals)
        return Scalar(BigRat(1 / std::get<BigRat>(a.v)));
    // extended Euclid mod p
    long long p = static_cast<long long>(p_);
    long long x = static_cast<long long>(std::get<std::uint64_t>(a.v));
    long long t0 = 0, t1 = 1, r0 = p, r1 = x;
    while (r1 != 0) {
        long long q = r0 / r1;
        long long tmp = t0 - q * t1;
        t0 = t1;
        t1 = tmp;
        tmp = r0 - q * r1;
        r0 = r1;
        r1 = tmp;
    }
    if (t0 < 0)
        t0 += p;
    return Scalar(static_cast<std::uint64_t>(t0));
}

std::string Field::to_string(const Scalar& a) const {
    if (kind_ == Kind::Rationals) {
        const BigRat& q = std::get<BigRat>(a.v);
        if (boost::multiprecision::denominator(q) == 1)
            return boost::multiprecision::numerator(q).str();
        return q.str();
    }
    return std::to_string(std::get<std::uint64_t>(a.v));
}

Scalar Field::parse(const std::string& s) const {
    if (s.empty())
        throw SchemaError("empty scalar literal");
    try {
        if (kind_ == Kind::Rationals)
            return Scalar(BigRat(s));
        BigInt n(s);
        BigInt r = n % BigInt(p_);
        if (r < 0)
            r += BigInt(p_);
        return Scalar(r.convert_to<std::uint64_t>());
    } catch (const std::exception&) {
        throw SchemaError("bad scalar literal '" + s + "'");
    }
}

}  // namespace dglift
