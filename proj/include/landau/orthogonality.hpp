#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "landau/ideal.hpp"
#include "landau/sieve.hpp"
#include "landau/stats.hpp"

namespace landau {

/// A finite nonempty set of distinct ideals of one field.
class IdealSet {
public:
    /// Throws InvalidArgument on an empty or repeated member, FieldMismatch on a foreign one.
    IdealSet(const FieldSpec& field, std::vector<Ideal> members);

    const FieldSpec& field() const noexcept { return field_; }
    const std::vector<Ideal>& members() const noexcept { return members_; }
    std::size_t size() const noexcept { return members_.size(); }
    /// sum of 1/N(n) over the members.
    double log_weight_total() const noexcept { return weight_; }

private:
    FieldSpec field_;
    std::vector<Ideal> members_;
    double weight_ = 0;
};

/// g: N_0 -> C with |g| <= 1, memoized on first use.
class BoundedSequenceFn {
public:
    BoundedSequenceFn(std::string id, std::function<Complex(std::uint64_t)> eval);

    const std::string& id() const noexcept { return id_; }
    /// Throws InvalidArgument if |g(n)| > 1.
    Complex operator()(std::uint64_t n) const;

    static BoundedSequenceFn constant_one();
    static BoundedSequenceFn alternating();  // (-1)^n
    static BoundedSequenceFn additive_character(std::uint64_t a, std::uint64_t q);  // e(an/q)
    static BoundedSequenceFn weyl_character(double alpha);  // e(alpha n)

private:
    std::string id_;
    std::function<Complex(std::uint64_t)> eval_;
    mutable std::vector<Complex> memo_;
};

/// (sum h(s)/N(s)) / (sum 1/N(s)).
Complex log_average(const IdealSet& S, const std::function<Complex(const Ideal&)>& h);

/// Full enumeration of one (field, X) plus the density fit of the same run.
/// Below X = 2^10 the fit is just c_hat = N(X)/X.
class OrthogonalityContext {
public:
    OrthogonalityContext(const FieldSpec& field, Norm X);
    OrthogonalityContext(const OrthogonalityContext&) = delete;
    OrthogonalityContext& operator=(const OrthogonalityContext&) = delete;

    const IdealEnumeration& ideals() const noexcept { return e_; }
    const NormProfile& profile() const noexcept { return prof_; }
    const DensityFit& fit() const noexcept { return fit_; }
    const FieldSpec& field() const noexcept { return e_.field(); }
    Norm bound() const noexcept { return e_.bound(); }

private:
    IdealEnumeration e_;
    NormProfile prof_;
    DensityFit fit_;
};

struct Sides {
    double lhs = 0;
    double rhs = 0;
    double bound = 0;
};

/// lhs by streaming divisibility tests over every ideal of norm <= X;
/// rhs = c_hat sum Phi(n1, n2)/(N(n1) N(n2)); bound = K |S|^(1+1/d) X^(-1/d).
Sides prop2_sides(const IdealSet& S, const OrthogonalityContext& ctx, double k_slack = 5.0);
Sides prop2_sides(const IdealSet& S, Norm X, double k_slack = 5.0);

/// The prop2 lhs by inclusion: sum N(X/N(lcm)) - 2A sum N(X/N(n)) + A^2 N(X), over X.
double prop2_lhs_by_counts(const IdealSet& S, const NormProfile& prof);

/// Expectation form: lhs scaled by X/(N(X) A^2), rhs the double log-average of Phi.
Sides corollary_sides(const IdealSet& S, const OrthogonalityContext& ctx, double k_slack = 5.0);
Sides corollary_sides(const IdealSet& S, Norm X, double k_slack = 5.0);

/// E^log E^log Phi over S x S.
double log_average_phi(const IdealSet& S);

/// |sum g(Omega + k1) - sum g(Omega + k2)| / N(X).
double theorem1_discrepancy(const NormProfile& prof, const BoundedSequenceFn& g, std::uint64_t k1, std::uint64_t k2);
double theorem1_discrepancy(const FieldSpec& field, const BoundedSequenceFn& g, std::uint64_t k1, std::uint64_t k2,
                            Norm X);

/// `count` sets with |S| uniform in [1, max_size], members drawn without
/// replacement from the ideals of norm <= max_norm.
std::vector<IdealSet> random_ideal_sets(const IdealEnumeration& e, std::size_t count, std::uint64_t seed,
                                        std::size_t max_size = 50, Norm max_norm = 100);

namespace serial {
/// Ideal-by-ideal divisibility via Ideal::divides.
double prop2_lhs(const IdealSet& S, const IdealEnumeration& e);
/// Full |S|^2 double loop.
double log_average_phi(const IdealSet& S);
}  // namespace serial

}  // namespace landau
