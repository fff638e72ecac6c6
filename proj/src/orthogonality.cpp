#include "landau/orthogonality.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>

#include <omp.h>

#include "landau/error.hpp"

namespace landau {

IdealSet::IdealSet(const FieldSpec& field, std::vector<Ideal> members) : field_(field), members_(std::move(members)) {
    if (members_.empty()) fail(ErrorKind::InvalidArgument, "ideal set must be nonempty");
    std::set<std::string> seen;
    for (const auto& m : members_) {
        if (m.field_fingerprint() != field_.fingerprint())
            fail(ErrorKind::FieldMismatch, "member " + m.to_string() + " belongs to another field");
        if (!seen.insert(m.to_string()).second)
            fail(ErrorKind::InvalidArgument, "repeated member " + m.to_string());
        weight_ += 1.0 / static_cast<double>(m.norm());
    }
}

BoundedSequenceFn::BoundedSequenceFn(std::string id, std::function<Complex(std::uint64_t)> eval)
    : id_(std::move(id)), eval_(std::move(eval)) {}

Complex BoundedSequenceFn::operator()(std::uint64_t n) const {
    while (memo_.size() <= n) {
        const Complex v = eval_(memo_.size());
        if (std::abs(v) > 1 + 1e-12)
            fail(ErrorKind::InvalidArgument, "g = " + id_ + " exceeds modulus 1 at n = " + std::to_string(memo_.size()));
        memo_.push_back(v);
    }
    return memo_[n];
}

BoundedSequenceFn BoundedSequenceFn::constant_one() {
    return {"one", [](std::uint64_t) { return Complex(1, 0); }};
}

BoundedSequenceFn BoundedSequenceFn::alternating() {
    return {"alternating", [](std::uint64_t n) { return Complex(n % 2 ? -1.0 : 1.0, 0); }};
}

BoundedSequenceFn BoundedSequenceFn::additive_character(std::uint64_t a, std::uint64_t q) {
    if (q == 0) fail(ErrorKind::InvalidArgument, "q must be at least 1");
    return {"e(" + std::to_string(a) + "n/" + std::to_string(q) + ")",
            [a, q](std::uint64_t n) { return unit_phase((a % q) * (n % q), q); }};
}

BoundedSequenceFn BoundedSequenceFn::weyl_character(double alpha) {
    return {"e(alpha n)", [alpha](std::uint64_t n) { return unit_phase(alpha * static_cast<double>(n)); }};
}

Complex log_average(const IdealSet& S, const std::function<Complex(const Ideal&)>& h) {
    Complex acc = 0;
    for (const auto& m : S.members()) acc += h(m) / static_cast<double>(m.norm());
    return acc / S.log_weight_total();
}

namespace {

// Below 2^10 there is no grid to fit; c_hat = N(X)/X alone.
DensityFit fit_or_ratio(const NormProfile& prof) {
    if (prof.bound() >= 1024) return estimate_density(prof);
    DensityFit fit;
    const double X = static_cast<double>(prof.bound());
    fit.c_hat = static_cast<double>(prof.count(X)) / X;
    fit.grid.emplace_back(X, prof.count(X));
    return fit;
}

}  // namespace

OrthogonalityContext::OrthogonalityContext(const FieldSpec& field, Norm X)
    : e_(ideals_up_to(field, X, EnumerationMode::Full)), prof_(e_), fit_(fit_or_ratio(prof_)) {}

namespace {

struct PackedMember {
    Norm norm;
    std::vector<PackedFactor> factors;
};

std::vector<PackedMember> pack_members(const IdealSet& S, const IdealEnumeration& e) {
    if (S.field().fingerprint() != e.field().fingerprint())
        fail(ErrorKind::FieldMismatch, "set and enumeration belong to different fields");
    std::vector<PackedMember> out;
    for (const auto& m : S.members()) {
        if (m.norm() > e.bound())
            fail(ErrorKind::MemberNormExceedsX, "member " + m.to_string() + " has norm above X");
        PackedMember pm{m.norm(), {}};
        for (const auto& f : m.factors()) {
            auto idx = e.table().index_of(f.prime);
            if (!idx) fail(ErrorKind::MemberNormExceedsX, "member prime outside the table");
            pm.factors.push_back(pack_factor(*idx, f.exponent));
        }
        out.push_back(std::move(pm));
    }
    return out;
}

bool dominates(std::span<const PackedFactor> m, const std::vector<PackedFactor>& n) {
    std::size_t j = 0;
    for (PackedFactor f : n) {
        while (j < m.size() && factor_index(m[j]) < factor_index(f)) ++j;
        if (j == m.size() || factor_index(m[j]) != factor_index(f) || factor_exponent(m[j]) < factor_exponent(f))
            return false;
    }
    return true;
}

double phi_term(const Ideal& a, const Ideal& b) {
    return static_cast<double>(phi_pair(a, b)) / (static_cast<double>(a.norm()) * static_cast<double>(b.norm()));
}

// Phi vanishes unless the pair shares a prime, so only those pairs are
// visited; they are added in the same order as the full double loop.
double phi_weight_sum(const IdealSet& S) {
    const auto& ms = S.members();
    std::map<PrimeKey, std::vector<std::size_t>> holders;
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (const auto& f : ms[i].factors()) holders[f.prime].push_back(i);
    double acc = 0;
    std::vector<std::size_t> nb;
    for (const auto& a : ms) {
        nb.clear();
        for (const auto& f : a.factors()) {
            const auto& h = holders[f.prime];
            nb.insert(nb.end(), h.begin(), h.end());
        }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        for (std::size_t j : nb) acc += phi_term(a, ms[j]);
    }
    return acc;
}

double prop2_lhs_stream(const IdealSet& S, const IdealEnumeration& e) {
    const auto members = pack_members(S, e);
    const double A = S.log_weight_total();
    // histogram of the divisor count c(m) keeps the reduction exact
    std::vector<std::uint64_t> hist(members.size() + 1, 0);
#pragma omp parallel
    {
        std::vector<std::uint64_t> local(members.size() + 1, 0);
#pragma omp for schedule(static)
        for (std::size_t i = 0; i < e.size(); ++i) {
            const Norm nm = e[i].norm;
            const auto fs = e.factors(i);
            std::size_t c = 0;
            for (const auto& n : members)
                if (nm % n.norm == 0 && dominates(fs, n.factors)) ++c;
            ++local[c];
        }
#pragma omp critical(landau_prop2_merge)
        for (std::size_t c = 0; c < local.size(); ++c) hist[c] += local[c];
    }
    double acc = 0;
    for (std::size_t c = 0; c < hist.size(); ++c) {
        const double d = static_cast<double>(c) - A;
        acc += static_cast<double>(hist[c]) * d * d;
    }
    return acc / static_cast<double>(e.bound());
}

double bound_of(const IdealSet& S, Norm X, int d, double k_slack) {
    return k_slack * std::pow(static_cast<double>(S.size()), 1.0 + 1.0 / d) *
           std::pow(static_cast<double>(X), -1.0 / d);
}

}  // namespace

double log_average_phi(const IdealSet& S) {
    const double A = S.log_weight_total();
    return phi_weight_sum(S) / (A * A);
}

Sides prop2_sides(const IdealSet& S, const OrthogonalityContext& ctx, double k_slack) {
    Sides s;
    s.lhs = prop2_lhs_stream(S, ctx.ideals());
    s.rhs = ctx.fit().c_hat * phi_weight_sum(S);
    s.bound = bound_of(S, ctx.bound(), ctx.field().degree(), k_slack);
    return s;
}

Sides prop2_sides(const IdealSet& S, Norm X, double k_slack) {
    OrthogonalityContext ctx(S.field(), X);
    return prop2_sides(S, ctx, k_slack);
}

double prop2_lhs_by_counts(const IdealSet& S, const NormProfile& prof) {
    const double X = static_cast<double>(prof.bound());
    const double A = S.log_weight_total();
    const auto& ms = S.members();
    auto N = [&](Norm n) {
        return n > prof.bound() ? 0.0 : static_cast<double>(prof.count(static_cast<double>(prof.bound() / n)));
    };
    double pairs = 0, singles = 0;
    for (const auto& a : ms) {
        if (a.norm() > prof.bound()) fail(ErrorKind::MemberNormExceedsX, "member " + a.to_string() + " has norm above X");
        singles += N(a.norm());
        for (const auto& b : ms) pairs += N(ideal_lcm(a, b).norm());
    }
    return (pairs - 2 * A * singles + A * A * static_cast<double>(prof.count(X))) / X;
}

Sides corollary_sides(const IdealSet& S, const OrthogonalityContext& ctx, double k_slack) {
    const Sides p = prop2_sides(S, ctx, k_slack);
    const double A = S.log_weight_total();
    const double X = static_cast<double>(ctx.bound());
    Sides s;
    s.lhs = p.lhs * X / (static_cast<double>(ctx.profile().count(X)) * A * A);
    s.rhs = log_average_phi(S);
    s.bound = p.bound;
    return s;
}

Sides corollary_sides(const IdealSet& S, Norm X, double k_slack) {
    OrthogonalityContext ctx(S.field(), X);
    return corollary_sides(S, ctx, k_slack);
}

double theorem1_discrepancy(const NormProfile& prof, const BoundedSequenceFn& g, std::uint64_t k1, std::uint64_t k2) {
    const auto& hist = prof.omega_histogram();
    Complex s1 = 0, s2 = 0;
    double n = 0;
    for (std::size_t w = 0; w < hist.size(); ++w) {
        if (!hist[w]) continue;
        const double h = static_cast<double>(hist[w]);
        s1 += h * g(w + k1);
        s2 += h * g(w + k2);
        n += h;
    }
    return std::abs(s1 - s2) / n;
}

double theorem1_discrepancy(const FieldSpec& field, const BoundedSequenceFn& g, std::uint64_t k1, std::uint64_t k2,
                            Norm X) {
    const auto e = ideals_up_to(field, X);
    return theorem1_discrepancy(NormProfile(e), g, k1, k2);
}

std::vector<IdealSet> random_ideal_sets(const IdealEnumeration& e, std::size_t count, std::uint64_t seed,
                                        std::size_t max_size, Norm max_norm) {
    const std::size_t pool_size = e.count_up_to(static_cast<double>(max_norm));
    if (pool_size == 0 || max_size == 0) fail(ErrorKind::InvalidArgument, "empty sampling pool");
    std::mt19937_64 rng(seed);
    std::vector<IdealSet> out;
    std::vector<std::size_t> pool(pool_size);
    for (std::size_t s = 0; s < count; ++s) {
        for (std::size_t i = 0; i < pool_size; ++i) pool[i] = i;
        const std::size_t size = std::min(pool_size, 1 + static_cast<std::size_t>(rng() % max_size));
        std::vector<Ideal> members;
        for (std::size_t i = 0; i < size; ++i) {
            // partial Fisher-Yates
            const std::size_t j = i + static_cast<std::size_t>(rng() % (pool_size - i));
            std::swap(pool[i], pool[j]);
            members.push_back(e.ideal(pool[i]));
        }
        out.emplace_back(e.field(), std::move(members));
    }
    return out;
}

namespace serial {

double log_average_phi(const IdealSet& S) {
    double acc = 0;
    for (const auto& a : S.members())
        for (const auto& b : S.members()) acc += phi_term(a, b);
    const double A = S.log_weight_total();
    return acc / (A * A);
}

double prop2_lhs(const IdealSet& S, const IdealEnumeration& e) {
    const double A = S.log_weight_total();
    double acc = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Ideal m = e.ideal(i);
        double c = 0;
        for (const auto& n : S.members())
            if (n.divides(m)) c += 1;
        acc += (c - A) * (c - A);
    }
    return acc / static_cast<double>(e.bound());
}

}  // namespace serial

}  // namespace landau
