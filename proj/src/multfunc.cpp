#include "landau/multfunc.hpp"

#include "landau/error.hpp"

namespace landau {

unsigned omega(const Ideal& m) { return m.omega(); }

int liouville(const Ideal& m) { return m.omega() % 2 ? -1 : 1; }

int moebius(const Ideal& m) {
    for (const auto& f : m.factors())
        if (f.exponent > 1) return 0;
    return liouville(m);
}

int indicator_square(const Ideal& m) {
    for (const auto& f : m.factors())
        if (f.exponent % 2) return 0;
    return 1;
}

TableDomain::TableDomain(const FieldSpec& field, Norm X)
    : TableDomain(ideals_up_to(field, X, EnumerationMode::Full)) {}

TableDomain::TableDomain(IdealEnumeration e) : e_(std::move(e)), index_(e_) {}

DomainPtr make_domain(const FieldSpec& field, Norm X) { return std::make_shared<const TableDomain>(field, X); }

ArithTable::ArithTable(DomainPtr domain, std::vector<Rational> values)
    : domain_(std::move(domain)), values_(std::move(values)) {
    if (!domain_ || values_.size() != domain_->size())
        fail(ErrorKind::DomainMismatch, "table size does not match its domain");
}

const Rational& ArithTable::at(const Ideal& m) const {
    auto i = domain_->index().find(m);
    if (!i) fail(ErrorKind::DomainMismatch, "ideal " + m.to_string() + " is outside the table");
    return values_[*i];
}

bool ArithTable::operator==(const ArithTable& o) const {
    return domain_->field() == o.domain_->field() && domain_->bound() == o.domain_->bound() && values_ == o.values_;
}

void ArithTable::write_csv(std::ostream& os) const {
    os << "norm,factorization,numerator,denominator\n";
    const auto& e = domain_->ideals();
    for (std::size_t i = 0; i < values_.size(); ++i)
        os << e[i].norm << ',' << e.ideal(i).to_string() << ',' << values_[i].numerator() << ','
           << values_[i].denominator() << '\n';
}

ArithTable tabulate(const DomainPtr& domain, const std::function<Rational(const Ideal&)>& fn) {
    std::vector<Rational> v(domain->size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(domain->ideals().ideal(i));
    return ArithTable(domain, std::move(v));
}

namespace {

ArithTable from_records(const DomainPtr& domain, Rational (*fn)(const IdealRecord&)) {
    std::vector<Rational> v(domain->size());
    const auto& recs = domain->ideals().records();
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = fn(recs[i]);
    return ArithTable(domain, std::move(v));
}

void require_same_domain(const ArithTable& F, const ArithTable& G) {
    if (F.domain_ptr() == G.domain_ptr()) return;
    if (!(F.domain().field() == G.domain().field()) || F.domain().bound() != G.domain().bound())
        fail(ErrorKind::DomainMismatch, "tables differ in field or norm bound");
}

// Calls visit(d1, d2) for every ordered factorization d1 d2 = m of the
// packed factor list `m`.
template <class Visit>
void for_each_divisor(std::span<const PackedFactor> m, std::vector<PackedFactor>& d1, std::vector<PackedFactor>& d2,
                      std::size_t pos, Visit& visit) {
    if (pos == m.size()) {
        visit(d1, d2);
        return;
    }
    const auto idx = factor_index(m[pos]);
    const unsigned a = factor_exponent(m[pos]);
    for (unsigned b = 0; b <= a; ++b) {
        if (b > 0) d1.push_back(pack_factor(idx, b));
        if (b < a) d2.push_back(pack_factor(idx, a - b));
        for_each_divisor(m, d1, d2, pos + 1, visit);
        if (b > 0) d1.pop_back();
        if (b < a) d2.pop_back();
    }
}

std::size_t lookup(const TableDomain& dom, std::span<const PackedFactor> f) {
    auto i = dom.index().find_packed(f);
    if (!i) fail(ErrorKind::DomainMismatch, "divisor missing from the domain");
    return *i;
}

}  // namespace

ArithTable delta_table(const DomainPtr& domain) {
    return from_records(domain, [](const IdealRecord& r) { return Rational(r.norm == 1 ? 1 : 0); });
}

ArithTable one_table(const DomainPtr& domain) {
    return from_records(domain, [](const IdealRecord&) { return Rational(1); });
}

ArithTable liouville_table(const DomainPtr& domain) {
    return from_records(domain, [](const IdealRecord& r) { return Rational(r.lambda); });
}

ArithTable moebius_table(const DomainPtr& domain) {
    return from_records(domain, [](const IdealRecord& r) { return Rational(r.mu); });
}

ArithTable indicator_square_table(const DomainPtr& domain) {
    return tabulate(domain, [](const Ideal& m) { return Rational(indicator_square(m)); });
}

ArithTable dirichlet_convolve(const ArithTable& F, const ArithTable& G) {
    require_same_domain(F, G);
    const TableDomain& dom = F.domain();
    const auto& e = dom.ideals();
    std::vector<Rational> out(dom.size());
#pragma omp parallel
    {
        std::vector<PackedFactor> d1, d2;
#pragma omp for schedule(dynamic, 64)
        for (std::size_t i = 0; i < out.size(); ++i) {
            Rational acc = 0;
            auto visit = [&](const std::vector<PackedFactor>& a, const std::vector<PackedFactor>& b) {
                acc += F[lookup(dom, a)] * G[lookup(dom, b)];
            };
            for_each_divisor(e.factors(i), d1, d2, 0, visit);
            out[i] = acc;
        }
    }
    return ArithTable(F.domain_ptr(), std::move(out));
}

ArithTable dirichlet_inverse(const ArithTable& F) {
    if (F[0] != Rational(1)) fail(ErrorKind::NonUnitLeadingValue, "F(unit) must be 1");
    const TableDomain& dom = F.domain();
    const auto& e = dom.ideals();
    std::vector<Rational> g(dom.size());
    g[0] = 1;
    std::vector<PackedFactor> d1, d2;
    // norms increase along the enumeration, so m/d is always already known
    for (std::size_t i = 1; i < g.size(); ++i) {
        Rational acc = 0;
        auto visit = [&](const std::vector<PackedFactor>& a, const std::vector<PackedFactor>& b) {
            if (a.empty()) return;
            acc += F[lookup(dom, a)] * g[lookup(dom, b)];
        };
        for_each_divisor(e.factors(i), d1, d2, 0, visit);
        g[i] = -acc;
    }
    return ArithTable(F.domain_ptr(), std::move(g));
}

namespace serial {

ArithTable dirichlet_convolve(const ArithTable& F, const ArithTable& G) {
    require_same_domain(F, G);
    const TableDomain& dom = F.domain();
    const auto& e = dom.ideals();
    const Norm X = dom.bound();
    std::vector<Rational> out(dom.size(), Rational(0));
    std::vector<PackedFactor> prod;
    for (std::size_t i = 0; i < dom.size(); ++i) {
        const Norm ni = e[i].norm;
        for (std::size_t j = 0; j < dom.size() && e[j].norm <= X / ni; ++j) {
            // merge the two sorted factor lists
            prod.clear();
            auto a = e.factors(i), b = e.factors(j);
            std::size_t x = 0, y = 0;
            while (x < a.size() || y < b.size()) {
                if (y == b.size() || (x < a.size() && factor_index(a[x]) < factor_index(b[y]))) {
                    prod.push_back(a[x++]);
                } else if (x == a.size() || factor_index(b[y]) < factor_index(a[x])) {
                    prod.push_back(b[y++]);
                } else {
                    prod.push_back(pack_factor(factor_index(a[x]), factor_exponent(a[x]) + factor_exponent(b[y])));
                    ++x;
                    ++y;
                }
            }
            out[lookup(dom, prod)] += F[i] * G[j];
        }
    }
    return ArithTable(F.domain_ptr(), std::move(out));
}

}  // namespace serial

std::vector<MFromL> m_from_l_sweep(const FieldSpec& field, Norm Xmax) {
    if (Xmax < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    auto dom = make_domain(field, Xmax);
    const auto& e = dom->ideals();
    const ArithTable g = dirichlet_inverse(indicator_square_table(dom));

    std::vector<std::int64_t> mu_at(Xmax + 1, 0), lambda_at(Xmax + 1, 0);
    for (const auto& r : e.records()) {
        mu_at[r.norm] += r.mu;
        lambda_at[r.norm] += r.lambda;
    }
    std::vector<std::int64_t> M(Xmax + 1, 0), L(Xmax + 1, 0);
    for (Norm n = 1; n <= Xmax; ++n) {
        M[n] = M[n - 1] + mu_at[n];
        L[n] = L[n - 1] + lambda_at[n];
    }

    // (N(m)^2, g(m^2)) for every m with N(m)^2 <= Xmax
    std::vector<std::pair<Norm, std::int64_t>> squares;
    std::vector<PackedFactor> sq;
    for (std::size_t i = 0; i < e.size() && e[i].norm <= Xmax / e[i].norm; ++i) {
        sq.clear();
        for (PackedFactor f : e.factors(i)) sq.push_back(pack_factor(factor_index(f), 2 * factor_exponent(f)));
        const Rational v = g[lookup(*dom, sq)];
        if (v.denominator() != 1) fail(ErrorKind::InvalidArgument, "non-integral inverse value");
        squares.emplace_back(e[i].norm * e[i].norm, v.numerator());
    }

    std::vector<MFromL> out(Xmax);
    for (Norm X = 1; X <= Xmax; ++X) {
        std::int64_t right = 0;
        for (const auto& [s, v] : squares) {
            if (s > X) break;
            right += v * L[X / s];
        }
        out[X - 1] = {M[X], right};
    }
    return out;
}

MFromL m_from_l_expansion(const FieldSpec& field, Norm X) { return m_from_l_sweep(field, X).back(); }

}  // namespace landau
