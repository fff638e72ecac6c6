#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "landau/numberfield.hpp"

namespace landau {

struct IdealFactor {
    PrimeKey prime;
    unsigned exponent = 1;

    auto operator<=>(const IdealFactor&) const = default;
};

/// An integral ideal in factored form. Factors are kept sorted by PrimeKey
/// with positive exponents, so equality is structural.
class Ideal {
public:
    Ideal() = default;
    explicit Ideal(std::uint64_t field_fingerprint) : field_(field_fingerprint) {}

    /// Sorts and merges `factors`; exponents of the same prime add up.
    static Ideal from_factors(std::uint64_t field_fingerprint, std::vector<IdealFactor> factors);
    static Ideal prime(std::uint64_t field_fingerprint, const PrimeIdeal& p, unsigned exponent = 1);

    std::uint64_t field_fingerprint() const noexcept { return field_; }
    const std::vector<IdealFactor>& factors() const noexcept { return factors_; }
    Norm norm() const noexcept { return norm_; }
    unsigned omega() const noexcept;
    bool is_unit() const noexcept { return factors_.empty(); }
    bool is_prime() const noexcept { return factors_.size() == 1 && factors_[0].exponent == 1; }
    unsigned exponent_of(const PrimeKey& p) const noexcept;

    /// True iff *this divides m (componentwise exponent dominance).
    bool divides(const Ideal& m) const noexcept;

    /// "p_ordinal^e" factors joined by '*', smallest prime first; "1" for the unit ideal.
    std::string to_string() const;

    bool operator==(const Ideal& o) const noexcept { return field_ == o.field_ && factors_ == o.factors_; }
    /// Norm first, then factor list.
    bool operator<(const Ideal& o) const noexcept;

private:
    std::uint64_t field_ = 0;
    std::vector<IdealFactor> factors_;
    Norm norm_ = 1;
};

Ideal multiply(const Ideal& a, const Ideal& b);
Ideal ideal_gcd(const Ideal& a, const Ideal& b);
Ideal ideal_lcm(const Ideal& a, const Ideal& b);
/// a / b; requires b | a.
Ideal quotient(const Ideal& a, const Ideal& b);
/// N(gcd(a, b)) - 1.
std::uint64_t phi_pair(const Ideal& a, const Ideal& b);

}  // namespace landau
