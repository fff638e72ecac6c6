#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "landau/sieve.hpp"

namespace landau {

inline constexpr Norm kDefaultCapacity = 10'000'000;
inline constexpr double kDefaultSlack = 5.0;

/// floor(v) that forgives floating error: values within a relative 1e-12
/// of an integer are taken to be that integer.
std::int64_t robust_floor(double v);

/// Prime norms and ideal counts up to a capacity; every check in this
/// module is a pair of binary searches into it.
class ChebyshevContext {
public:
    ChebyshevContext(const FieldSpec& field, Norm capacity = kDefaultCapacity);
    ChebyshevContext(PrimeIdealTable table, std::vector<std::uint32_t> phi);

    const FieldSpec& field() const noexcept { return table_.field; }
    const PrimeIdealTable& table() const noexcept { return table_; }
    Norm capacity() const noexcept { return table_.max_norm; }
    int degree() const noexcept { return table_.field.degree(); }

    /// Prime ideals / ideals with norm in (lo, hi]; bounds are real.
    std::uint64_t primes_between(double lo, double hi) const;
    std::uint64_t ideals_between(double lo, double hi) const;
    std::uint64_t pi(double x) const { return primes_between(0, x); }
    std::uint64_t ideal_count(double x) const { return ideals_between(0, x); }

private:
    Norm to_norm(double x) const;

    PrimeIdealTable table_;
    std::vector<Norm> prime_norms_;
    std::vector<std::uint64_t> ideal_cum_;
};

struct AnnulusCensus {
    double base = 16;
    double lo_exp = 0;
    double hi_exp = 0;
    std::uint64_t prime_count = 0;
    std::uint64_t ideal_count = 0;
};

/// Counts in (b^lo, b^hi]; throws CapacityExceeded past the context.
AnnulusCensus annulus_census(const ChebyshevContext& ctx, double base, double lo_exp, double hi_exp);
AnnulusCensus annulus_census(const FieldSpec& field, double base, double lo_exp, double hi_exp);

struct BoundCheck {
    std::uint64_t observed = 0;
    double main_term = 0;
    double slack = 0;
    bool pass = false;
};

/// Primes in (x, alpha x] against (alpha log alpha) x / log x.
BoundCheck lemma3_check(const ChebyshevContext& ctx, double x, double alpha, double k_slack = kDefaultSlack);
/// pi_K(y) against y / (e log y).
BoundCheck lemma4_check(const ChebyshevContext& ctx, double y, double k_slack = kDefaultSlack);

struct Prop4Check {
    bool cond_i = false;
    bool cond_ii = false;
    std::uint64_t count_i = 0;   // primes in (b^x, b^(x+1)]
    std::uint64_t count_ii = 0;  // primes in (b^x, b^(x+eps)]
    double threshold_i = 0;      // b^x / x
    double threshold_ii = 0;     // sqrt(eps) b^x / x
};

Prop4Check prop4_check(const ChebyshevContext& ctx, double base, double x, double eps);
/// Smallest integer x in [1, x_max] from which cond (i) holds at every
/// integer up to x_max; nullopt if it fails at x_max.
std::optional<int> prop4_smallest_x(const ChebyshevContext& ctx, double base, int x_max, double eps);

/// Sum over ideals of norm <= X of the exponent of p, read off the factor lists.
std::uint64_t multiplicity_census(const IdealEnumeration& e, const PrimeKey& p);
/// The same quantity via sum_c N(X / N(p)^c).
std::uint64_t multiplicity_by_counts(const ChebyshevContext& ctx, Norm X, const PrimeKey& p);

}  // namespace landau
