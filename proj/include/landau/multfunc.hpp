#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <ostream>
#include <vector>

#include <boost/rational.hpp>

#include "landau/ideal.hpp"
#include "landau/sieve.hpp"

namespace landau {

using Rational = boost::rational<std::int64_t>;

unsigned omega(const Ideal& m);
int liouville(const Ideal& m);
int moebius(const Ideal& m);
int indicator_square(const Ideal& m);

/// The ideals of norm <= X in enumeration order together with an exact
/// lookup; shared by every table over the same (field, X).
class TableDomain {
public:
    TableDomain(const FieldSpec& field, Norm X);
    explicit TableDomain(IdealEnumeration e);
    TableDomain(const TableDomain&) = delete;
    TableDomain& operator=(const TableDomain&) = delete;

    const IdealEnumeration& ideals() const noexcept { return e_; }
    const IdealIndex& index() const noexcept { return index_; }
    const FieldSpec& field() const noexcept { return e_.field(); }
    Norm bound() const noexcept { return e_.bound(); }
    std::size_t size() const noexcept { return e_.size(); }

private:
    IdealEnumeration e_;
    IdealIndex index_;
};

using DomainPtr = std::shared_ptr<const TableDomain>;
DomainPtr make_domain(const FieldSpec& field, Norm X);

class ArithTable {
public:
    ArithTable(DomainPtr domain, std::vector<Rational> values);

    const TableDomain& domain() const noexcept { return *domain_; }
    const DomainPtr& domain_ptr() const noexcept { return domain_; }
    const std::vector<Rational>& values() const noexcept { return values_; }
    const Rational& operator[](std::size_t i) const { return values_[i]; }
    /// Value at an ideal of the domain; throws DomainMismatch otherwise.
    const Rational& at(const Ideal& m) const;

    /// Same (field, X) and identical values.
    bool operator==(const ArithTable& o) const;

    /// Rows of (norm, factorization, numerator, denominator).
    void write_csv(std::ostream& os) const;

private:
    DomainPtr domain_;
    std::vector<Rational> values_;
};

/// Evaluates `fn` on every ideal of the domain.
ArithTable tabulate(const DomainPtr& domain, const std::function<Rational(const Ideal&)>& fn);
ArithTable delta_table(const DomainPtr& domain);
ArithTable one_table(const DomainPtr& domain);
ArithTable liouville_table(const DomainPtr& domain);
ArithTable moebius_table(const DomainPtr& domain);
ArithTable indicator_square_table(const DomainPtr& domain);

/// (F*G)(m) = sum over d1 d2 = m of F(d1) G(d2), by divisor enumeration of each m.
ArithTable dirichlet_convolve(const ArithTable& F, const ArithTable& G);
/// Requires F(unit) = 1; throws NonUnitLeadingValue otherwise.
ArithTable dirichlet_inverse(const ArithTable& F);

struct MFromL {
    std::int64_t left = 0;   // M(X) = sum of mu over N(m) <= X
    std::int64_t right = 0;  // sum over N(m)^2 <= X of g(m^2) L(X / N(m)^2), g the inverse of the square indicator
};

MFromL m_from_l_expansion(const FieldSpec& field, Norm X);
/// Both sides for every X = 1..Xmax from one enumeration; entry X-1 holds X.
std::vector<MFromL> m_from_l_sweep(const FieldSpec& field, Norm Xmax);

namespace serial {
/// Pairwise-product convolution; the reference for the divisor-enumeration kernel.
ArithTable dirichlet_convolve(const ArithTable& F, const ArithTable& G);
}  // namespace serial

}  // namespace landau
