#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <string>
#include <variant>

#include "errors.hpp"

namespace dglift {

using BigInt = boost::multiprecision::cpp_int;
using BigRat = boost::multiprecision::cpp_rational;

// Element of the coefficient field k: either F_p (value reduced mod p) or Q.
// All arithmetic goes through a Field descriptor so the modulus is in one
// place and matrix code stays monomorphic.
struct Scalar {
    std::variant<std::uint64_t, BigRat> v;

    Scalar() : v(std::uint64_t{0}) {}
    explicit Scalar(std::uint64_t x) : v(x) {}
    explicit Scalar(BigRat x) : v(std::move(x)) {}

    bool operator==(const Scalar& o) const { return v == o.v; }
    bool operator!=(const Scalar& o) const { return !(*this == o); }
};

class Field {
  public:
    enum class Kind { Rationals, PrimeField };

    static Field rationals() { return Field(Kind::Rationals, 0); }
    static Field prime_field(std::uint64_t p);

    Kind kind() const { return kind_; }
    std::uint64_t characteristic() const { return p_; }  // 0 for Q

    Scalar zero() const;
    Scalar one() const;
    Scalar from_int(long long n) const;

    bool is_zero(const Scalar& a) const;
    Scalar add(const Scalar& a, const Scalar& b) const;
    Scalar sub(const Scalar& a, const Scalar& b) const;
    Scalar mul(const Scalar& a, const Scalar& b) const;
    Scalar neg(const Scalar& a) const;
    Scalar inv(const Scalar& a) const;  // throws NotAUnit on zero

    std::string to_string(const Scalar& a) const;
    // Parses "c" or "c/d" (rationals) resp. a decimal integer (prime field).
    Scalar parse(const std::string& s) const;

    bool operator==(const Field& o) const { return kind_ == o.kind_ && p_ == o.p_; }
    bool operator!=(const Field& o) const { return !(*this == o); }

  private:
    Field(Kind k, std::uint64_t p) : kind_(k), p_(p) {}
    Kind kind_;
    std::uint64_t p_;
};

}  // namespace dglift
