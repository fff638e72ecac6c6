#include "landau/primebounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "landau/error.hpp"

namespace landau {

std::int64_t robust_floor(double v) {
    const double r = std::round(v);
    if (std::abs(v - r) <= 1e-12 * std::max(1.0, std::abs(v))) return static_cast<std::int64_t>(r);
    return static_cast<std::int64_t>(std::floor(v));
}

ChebyshevContext::ChebyshevContext(const FieldSpec& field, Norm capacity)
    : ChebyshevContext(prime_ideals_up_to(field, capacity), {}) {}

ChebyshevContext::ChebyshevContext(PrimeIdealTable table, std::vector<std::uint32_t> phi) : table_(std::move(table)) {
    if (phi.empty()) phi = ideal_count_by_norm(table_, table_.max_norm);
    if (phi.size() != table_.max_norm + 1) fail(ErrorKind::InvalidArgument, "phi does not match the table bound");
    prime_norms_ = table_.norms();
    ideal_cum_.assign(phi.size(), 0);
    for (std::size_t n = 1; n < phi.size(); ++n) ideal_cum_[n] = ideal_cum_[n - 1] + phi[n];
}

Norm ChebyshevContext::to_norm(double x) const {
    if (x < 1) return 0;
    const std::int64_t n = robust_floor(x);
    if (static_cast<Norm>(n) > table_.max_norm)
        fail(ErrorKind::CapacityExceeded,
             "norm bound " + std::to_string(n) + " exceeds capacity " + std::to_string(table_.max_norm));
    return static_cast<Norm>(n);
}

std::uint64_t ChebyshevContext::primes_between(double lo, double hi) const {
    const Norm h = to_norm(hi);
    const Norm l = std::min(to_norm(lo), h);
    auto upto = [&](Norm n) {
        return static_cast<std::uint64_t>(std::upper_bound(prime_norms_.begin(), prime_norms_.end(), n) -
                                          prime_norms_.begin());
    };
    return upto(h) - upto(l);
}

std::uint64_t ChebyshevContext::ideals_between(double lo, double hi) const {
    const Norm h = to_norm(hi);
    const Norm l = std::min(to_norm(lo), h);
    return ideal_cum_[h] - ideal_cum_[l];
}

AnnulusCensus annulus_census(const ChebyshevContext& ctx, double base, double lo_exp, double hi_exp) {
    if (!(base > 1)) fail(ErrorKind::InvalidArgument, "base must exceed 1");
    AnnulusCensus c{base, lo_exp, hi_exp, 0, 0};
    if (hi_exp <= lo_exp) return c;
    const double lo = std::pow(base, lo_exp), hi = std::pow(base, hi_exp);
    c.prime_count = ctx.primes_between(lo, hi);
    c.ideal_count = ctx.ideals_between(lo, hi);
    return c;
}

AnnulusCensus annulus_census(const FieldSpec& field, double base, double lo_exp, double hi_exp) {
    const double hi = std::pow(base, std::max(lo_exp, hi_exp));
    if (hi >= static_cast<double>(kDefaultCapacity) + 1)
        fail(ErrorKind::CapacityExceeded, "annulus reaches past the default capacity");
    return annulus_census(ChebyshevContext(field, std::max<Norm>(1, static_cast<Norm>(robust_floor(hi)))), base,
                          lo_exp, hi_exp);
}

namespace {

double slack_of(const ChebyshevContext& ctx, double x, double k_slack) {
    const double l = std::log(x);
    return k_slack * std::pow(x, -1.0 / ctx.degree()) * l * l;
}

}  // namespace

BoundCheck lemma3_check(const ChebyshevContext& ctx, double x, double alpha, double k_slack) {
    if (alpha < 1) fail(ErrorKind::InvalidArgument, "alpha must be at least 1");
    if (x < std::numbers::e) fail(ErrorKind::InvalidArgument, "x must be at least e");
    BoundCheck c;
    c.observed = ctx.primes_between(x, alpha * x);
    c.main_term = alpha * std::log(alpha) * x / std::log(x);
    c.slack = slack_of(ctx, x, k_slack);
    c.pass = static_cast<double>(c.observed) <= c.main_term * (1 + c.slack);
    return c;
}

BoundCheck lemma4_check(const ChebyshevContext& ctx, double y, double k_slack) {
    if (y < 3) fail(ErrorKind::InvalidArgument, "y must be at least 3");
    BoundCheck c;
    c.observed = ctx.pi(y);
    c.main_term = y / (std::numbers::e * std::log(y));
    c.slack = slack_of(ctx, y, k_slack);
    c.pass = static_cast<double>(c.observed) >= c.main_term * (1 - c.slack);
    return c;
}

Prop4Check prop4_check(const ChebyshevContext& ctx, double base, double x, double eps) {
    if (!(eps > 0 && eps <= 0.25)) fail(ErrorKind::InvalidArgument, "eps must lie in (0, 1/4]");
    if (!(base > 1) || !(x > 0)) fail(ErrorKind::InvalidArgument, "need base > 1 and x > 0");
    Prop4Check c;
    const double lo = std::pow(base, x);
    c.count_i = ctx.primes_between(lo, std::pow(base, x + 1));
    c.count_ii = ctx.primes_between(lo, std::pow(base, x + eps));
    c.threshold_i = lo / x;
    c.threshold_ii = std::sqrt(eps) * lo / x;
    c.cond_i = static_cast<double>(c.count_i) >= c.threshold_i;
    c.cond_ii = static_cast<double>(c.count_ii) <= c.threshold_ii;
    return c;
}

std::optional<int> prop4_smallest_x(const ChebyshevContext& ctx, double base, int x_max, double eps) {
    std::optional<int> best;
    for (int x = x_max; x >= 1; --x) {
        if (!prop4_check(ctx, base, x, eps).cond_i) break;
        best = x;
    }
    return best;
}

std::uint64_t multiplicity_census(const IdealEnumeration& e, const PrimeKey& p) {
    auto idx = e.table().index_of(p);
    if (!idx || p.norm > e.bound()) return 0;
    std::uint64_t total = 0;
#pragma omp parallel for reduction(+ : total) schedule(static)
    for (std::size_t i = 0; i < e.size(); ++i)
        for (PackedFactor f : e.factors(i))
            if (factor_index(f) == *idx) total += factor_exponent(f);
    return total;
}

std::uint64_t multiplicity_by_counts(const ChebyshevContext& ctx, Norm X, const PrimeKey& p) {
    std::uint64_t total = 0;
    for (Norm q = p.norm; q <= X; q = (q > X / p.norm) ? X + 1 : q * p.norm) total += ctx.ideal_count(X / q);
    return total;
}

}  // namespace landau
