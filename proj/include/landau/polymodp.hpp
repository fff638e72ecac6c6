#pragma once

// Dense univariate polynomials over F_p. Coefficients are stored constant
// term first with no trailing zeros; the zero polynomial is the empty vector.

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace landau::fp {

using Coeffs = std::vector<std::uint64_t>;

/// Arithmetic in Z/pZ. Requires 2 <= p < 2^63.
struct Zp {
    std::uint64_t p;

    std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
        std::uint64_t s = a + b;
        return s >= p ? s - p : s;
    }
    std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
        return a >= b ? a - b : a + (p - b);
    }
    std::uint64_t neg(std::uint64_t a) const noexcept { return a == 0 ? 0 : p - a; }
    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
        if (p <= 0xffffffffULL) return a * b % p;
        return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % p);
    }
    std::uint64_t pow(std::uint64_t a, std::uint64_t e) const noexcept;
    std::uint64_t inv(std::uint64_t a) const;
    std::uint64_t reduce(std::int64_t v) const noexcept;
};

void trim(Coeffs& a);
int degree(const Coeffs& a) noexcept;
bool is_one(const Coeffs& a) noexcept;

Coeffs reduce(std::span<const std::int64_t> coeffs, std::uint64_t p);
Coeffs add(const Coeffs& a, const Coeffs& b, const Zp& z);
Coeffs sub(const Coeffs& a, const Coeffs& b, const Zp& z);
Coeffs mul(const Coeffs& a, const Coeffs& b, const Zp& z);
/// Quotient and remainder; `b` must be nonzero.
std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, const Zp& z);
Coeffs rem(const Coeffs& a, const Coeffs& b, const Zp& z);
Coeffs quot(const Coeffs& a, const Coeffs& b, const Zp& z);
Coeffs monic(const Coeffs& a, const Zp& z);
/// Monic gcd; gcd(0, 0) = 0.
Coeffs gcd(Coeffs a, Coeffs b, const Zp& z);
Coeffs derivative(const Coeffs& a, const Zp& z);
Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, const Zp& z);
Coeffs powmod(Coeffs base, std::uint64_t e, const Coeffs& m, const Zp& z);

struct Factor {
    Coeffs poly;  // monic, irreducible
    unsigned multiplicity;

    bool operator==(const Factor&) const = default;
};

/// Canonical order: degree, then coefficient sequence (constant term first).
bool canonical_less(const Coeffs& a, const Coeffs& b) noexcept;

/// Complete factorization of the monic associate of `f` (which must be
/// nonzero). Output is sorted canonically.
std::vector<Factor> factor(const Coeffs& f, const Zp& z);

/// Only the irreducible factors of degree <= max_degree, each with its
/// multiplicity. Cheaper than `factor` when max_degree < deg f because
/// higher distinct-degree parts are never split.
std::vector<Factor> factor_bounded(const Coeffs& f, const Zp& z, int max_degree);

bool is_irreducible(const Coeffs& f, const Zp& z);

}  // namespace landau::fp
