#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "landau/polymodp.hpp"

namespace landau {

using Norm = std::uint64_t;
using BigInt = boost::multiprecision::cpp_int;

inline constexpr int kMaxDegree = 8;

/// A number field K = Q[x]/(f) given by a monic integer polynomial f.
/// Arithmetic is done in the order Z[theta]; primes dividing its index in
/// O_K are detected (Dedekind's criterion) and rejected, never guessed.
class FieldSpec {
public:
    const std::vector<std::int64_t>& coeffs() const noexcept { return coeffs_; }
    int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const BigInt& poly_disc() const noexcept { return disc_; }

    /// Smallest prime < 100 modulo which f is irreducible, if any.
    std::optional<std::uint64_t> irreducibility_witness() const noexcept { return witness_; }
    /// Set when no witness was found: f was accepted without a certificate.
    bool irreducibility_unverified() const noexcept { return !witness_ && degree() > 1; }

    bool disc_divisible_by(std::uint64_t p) const;

    /// Stable 64-bit identity of the defining polynomial.
    std::uint64_t fingerprint() const noexcept { return fingerprint_; }

    /// "c0,c1,...,1" -- the same form `parse_field` accepts.
    std::string to_string() const;

    bool operator==(const FieldSpec& other) const noexcept { return coeffs_ == other.coeffs_; }

private:
    friend FieldSpec parse_field(std::span<const std::int64_t> coeffs);

    std::vector<std::int64_t> coeffs_;
    BigInt disc_;
    std::optional<std::uint64_t> witness_;
    std::uint64_t fingerprint_ = 0;
};

/// Builds a FieldSpec from coefficients, constant term first.
/// Throws NonMonic, ZeroDiscriminant or RationalRootFound.
FieldSpec parse_field(std::span<const std::int64_t> coeffs);
FieldSpec parse_field(std::initializer_list<std::int64_t> coeffs);
/// Parses "1,0,1" style text.
FieldSpec parse_field(std::string_view text);

/// Discriminant of a monic integer polynomial via the Sylvester resultant.
BigInt polynomial_discriminant(std::span<const std::int64_t> coeffs);

/// Identity of a prime ideal, ordered the way every table in the library
/// is ordered: by norm, then rational prime, then ordinal above p.
struct PrimeKey {
    Norm norm = 0;
    std::uint64_t p = 0;
    std::uint32_t ordinal = 0;

    auto operator<=>(const PrimeKey&) const = default;
};

struct PrimeIdeal {
    std::uint64_t p = 0;
    unsigned e = 1;
    unsigned f = 1;
    Norm norm = 0;
    fp::Coeffs gen_tag;  // monic irreducible factor of f mod p
    std::uint32_t ordinal = 0;

    PrimeKey key() const noexcept { return {norm, p, ordinal}; }
    bool operator==(const PrimeIdeal&) const = default;
};

/// Factorization of the monic associate of `coeffs` over F_p, sorted by
/// (degree, coefficient sequence).
std::vector<fp::Factor> factor_poly_mod_p(std::span<const std::int64_t> coeffs, std::uint64_t p);

/// Dedekind's criterion: true iff p does not divide [O_K : Z[theta]], so
/// the factorization of f mod p describes the splitting of p.
bool is_regular_prime(const FieldSpec& field, std::uint64_t p);

/// Prime ideals above p, sorted by (f, gen_tag). Throws IrregularPrime.
std::vector<PrimeIdeal> factor_prime(const FieldSpec& field, std::uint64_t p);

/// The prefix of `factor_prime(field, p)` with norm <= max_norm. Skips the
/// equal-degree splitting of factors too large to matter, which is what
/// makes tables up to 10^7 cheap.
std::vector<PrimeIdeal> factor_prime_bounded(const FieldSpec& field, std::uint64_t p, Norm max_norm);

/// Checked p^k; throws Overflow.
Norm checked_pow(std::uint64_t p, unsigned k);
/// Checked a*b; throws Overflow.
Norm checked_mul(Norm a, Norm b);

}  // namespace landau
