#pragma once

#include <string>
#include <variant>
#include <vector>

#include "scalar.hpp"

namespace dglift {

// Element of a truncated ring.  For k[t]/(t^N) this is the dense digit vector
// (size <= N, trailing zeros trimmed); for Z/p^N it is the canonical
// representative in [0, p^N).
struct RingElement {
    std::variant<std::vector<Scalar>, BigInt> v;

    RingElement() : v(std::vector<Scalar>{}) {}
    bool operator==(const RingElement& o) const { return v == o.v; }
    bool operator!=(const RingElement& o) const { return !(*this == o); }
};

// A complete local ring of the supported shapes:
//   * k[t]/(t^N) with k = Q or F_p, distinguished element t;
//   * Z/p^N with distinguished element t = p.
// Truncation makes t-adic limits exact: t^N = 0.
class TruncatedRing {
  public:
    enum class Kind { PolyOverQ, PolyOverFp, IntegersModPrimePower };

    static TruncatedRing poly_over_q(int precision);
    static TruncatedRing poly_over_fp(std::uint64_t p, int precision);
    static TruncatedRing integers_mod_prime_power(std::uint64_t p, int precision);

    Kind kind() const { return kind_; }
    int precision() const { return prec_; }
    std::uint64_t prime() const { return p_; }
    // Residue field R/(t): Q for PolyOverQ, F_p otherwise.
    const Field& residue_field() const { return field_; }

    RingElement zero() const;
    RingElement one() const;
    RingElement t() const;
    RingElement from_int(long long n) const;
    // x = sum digits[j] * t^j.  Accepts up to `precision` digits.
    RingElement from_digits(const std::vector<Scalar>& digits) const;
    // Digit of t^j, as an element of the residue field.
    Scalar digit(const RingElement& x, int j) const;

    bool is_zero(const RingElement& x) const;
    RingElement add(const RingElement& a, const RingElement& b) const;
    RingElement sub(const RingElement& a, const RingElement& b) const;
    RingElement mul(const RingElement& a, const RingElement& b) const;
    RingElement neg(const RingElement& a) const;

    // Largest j <= precision with x in (t^j); valuation(0) = precision.
    int valuation(const RingElement& x) const;
    bool is_unit(const RingElement& x) const { return valuation(x) == 0; }
    RingElement invert(const RingElement& x) const;  // throws NotAUnit

    RingElement mul_t_pow(const RingElement& x, int k) const;
    // Exact division by t^k; requires valuation(x) >= k.
    RingElement div_t_pow(const RingElement& x, int k) const;

    std::string to_string(const RingElement& x) const;
    std::string description() const;

    bool operator==(const TruncatedRing& o) const {
        return kind_ == o.kind_ && p_ == o.p_ && prec_ == o.prec_;
    }
    bool operator!=(const TruncatedRing& o) const { return !(*this == o); }

  private:
    TruncatedRing(Kind k, std::uint64_t p, int prec, Field f)
        : kind_(k), p_(p), prec_(prec), field_(f) {}
    std::vector<Scalar> poly_of(const RingElement& x) const;
    RingElement make_poly(std::vector<Scalar> digits) const;

    Kind kind_;
    std::uint64_t p_;
    int prec_;
    Field field_;
    BigInt modulus_;  // p^N for IntegersModPrimePower
};

}  // namespace dglift
