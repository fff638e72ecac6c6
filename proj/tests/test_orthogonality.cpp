#include <doctest.h>

#include <cmath>
#include <numbers>

#include "landau/error.hpp"
#include "landau/orthogonality.hpp"

using namespace landau;

namespace {

const std::vector<std::vector<std::int64_t>> kFields = {{0, 1}, {1, 0, 1}, {-2, 0, 1}, {1, 1, 1}};

const FieldSpec& gauss() {
    static const FieldSpec f = parse_field({1, 0, 1});
    return f;
}

Ideal gauss_prime(std::uint64_t p, std::size_t i = 0) {
    return Ideal::prime(gauss().fingerprint(), factor_prime(gauss(), p)[i]);
}

// (1/X) sum over m of |#{n in S : n | m} - A|^2, one ideal at a time.
double lhs_oracle(const IdealSet& S, const IdealEnumeration& e) {
    const double A = S.log_weight_total();
    double acc = 0;
    for (std::size_t i = 0; i < e.size(); ++i) {
        const Ideal m = e.ideal(i);
        int c = 0;
        for (const auto& n : S.members())
            if (n.divides(m)) ++c;
        acc += (c - A) * (c - A);
    }
    return acc / static_cast<double>(e.bound());
}

// Ideals of norm in [2, top] of an enumeration.
IdealSet small_ideals(const IdealEnumeration& e, Norm top) {
    std::vector<Ideal> ms;
    for (std::size_t i = 0; i < e.size() && e[i].norm <= top; ++i)
        if (e[i].norm >= 2) ms.push_back(e.ideal(i));
    return IdealSet(e.field(), ms);
}

}  // namespace

TEST_CASE("log averages") {
    const auto fp = gauss().fingerprint();
    const IdealSet one(gauss(), {gauss_prime(5)});
    CHECK(log_average(one, [](const Ideal& m) { return Complex(static_cast<double>(m.omega() + 3), 0); }) ==
          Complex(4, 0));
    const IdealSet S(gauss(), {Ideal(fp), gauss_prime(2)});
    CHECK(S.log_weight_total() == 1.5);
    CHECK(log_average(S, [](const Ideal&) { return Complex(1, 0); }) == Complex(1, 0));
    const auto v = log_average(S, [](const Ideal& m) { return Complex(static_cast<double>(m.norm()), 0); });
    CHECK(std::abs(v - Complex(4.0 / 3.0, 0)) < 1e-15);
    CHECK_THROWS_AS(IdealSet(gauss(), {}), Error);
    CHECK_THROWS_AS(IdealSet(gauss(), {gauss_prime(5), gauss_prime(5)}), Error);
    const auto r2 = parse_field({-2, 0, 1});
    CHECK_THROWS_AS(IdealSet(gauss(), {Ideal::prime(r2.fingerprint(), factor_prime(r2, 7)[0])}), Error);
}

TEST_CASE("orthogonality sides examples") {
    const auto fp = gauss().fingerprint();
    const OrthogonalityContext ctx(gauss(), 10);
    const auto unit = prop2_sides(IdealSet(gauss(), {Ideal(fp)}), ctx);
    CHECK(unit.lhs == 0);
    CHECK(unit.rhs == 0);

    const IdealSet q2(gauss(), {gauss_prime(2)});
    const auto s = prop2_sides(q2, ctx);
    CHECK(std::abs(s.lhs - 9.0 / 40.0) < 1e-15);
    CHECK(ctx.fit().c_hat == 0.9);
    CHECK(std::abs(s.rhs - 0.9 / 4) < 1e-15);
    CHECK(s.bound == doctest::Approx(5 * std::pow(1.0, 1.5) / std::sqrt(10.0)));

    // pairwise coprime: only the diagonal (N - 1)/N^2
    const IdealSet cop(gauss(), {gauss_prime(2), gauss_prime(5, 0), gauss_prime(5, 1), gauss_prime(3)});
    const double diag = 1.0 / 4 + 2 * 4.0 / 25 + 8.0 / 81;
    CHECK(std::abs(log_average_phi(cop) * cop.log_weight_total() * cop.log_weight_total() - diag) < 1e-15);

    try {
        prop2_sides(IdealSet(gauss(), {gauss_prime(13)}), ctx);
        FAIL("expected MemberNormExceedsX");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::MemberNormExceedsX);
    }
}

TEST_CASE("expectation form examples and the renormalization identity") {
    const auto fp = gauss().fingerprint();
    const auto unit = corollary_sides(IdealSet(gauss(), {Ideal(fp)}), 2000);
    CHECK(unit.lhs == 0);
    CHECK(unit.rhs == 0);

    const OrthogonalityContext ctx(gauss(), 10'000);
    const IdealSet fives(gauss(), {gauss_prime(5, 0), gauss_prime(5, 1)});
    const auto c = corollary_sides(fives, ctx);
    CHECK(std::abs(c.lhs - c.rhs) <= c.bound);

    for (const auto& S : random_ideal_sets(ctx.ideals(), 15, 99, 30, 200)) {
        const auto p = prop2_sides(S, ctx);
        const auto k = corollary_sides(S, ctx);
        const double A = S.log_weight_total();
        CHECK(std::abs(k.lhs - p.lhs * 10'000 / (static_cast<double>(ctx.profile().count(1e4)) * A * A)) <=
              1e-9 * std::max(1.0, k.lhs));
    }
}

TEST_CASE("orthogonality sides agree across three routes") {
    for (const auto& cf : kFields) {
        const auto field = parse_field(cf);
        const OrthogonalityContext ctx(field, 20'000);
        for (const auto& S : random_ideal_sets(ctx.ideals(), 12, 7, 50, 100)) {
            const auto s = prop2_sides(S, ctx);
            CHECK(s.lhs >= 0);
            CHECK(s.rhs >= 0);
            const double oracle = lhs_oracle(S, ctx.ideals());
            CHECK(std::abs(s.lhs - oracle) <= 1e-9 * std::max(1.0, oracle));
            CHECK(std::abs(serial::prop2_lhs(S, ctx.ideals()) - oracle) <= 1e-9 * std::max(1.0, oracle));
            CHECK(std::abs(prop2_lhs_by_counts(S, ctx.profile()) - oracle) <= 1e-9 * std::max(1.0, oracle));
            // the sparse Phi sum adds the same nonzero terms in the same order
            CHECK(log_average_phi(S) == serial::log_average_phi(S));
        }
    }
}

TEST_CASE("expectation form gap shrinks with X") {
    for (const auto& cf : kFields) {
        const auto field = parse_field(cf);
        double prev = 1e300;
        Sides last;
        for (Norm X : {Norm{10'000}, Norm{100'000}, Norm{1'000'000}}) {
            const OrthogonalityContext ctx(field, X);
            const auto S = small_ideals(ctx.ideals(), 30);
            last = corollary_sides(S, ctx);
            const double gap = std::abs(last.lhs - last.rhs);
            CHECK(gap <= prev * 1.1);
            prev = gap;
        }
        CHECK(std::abs(last.lhs - last.rhs) <= last.bound);
    }
}

TEST_CASE("bounded sequence discrepancy") {
    const auto q = ideals_up_to(parse_field({0, 1}), 10);
    const NormProfile pq(q);
    CHECK(theorem1_discrepancy(pq, BoundedSequenceFn::alternating(), 0, 1) == 0);
    for (const auto& cf : kFields) {
        const auto e = ideals_up_to(parse_field(cf), 200'000);
        const NormProfile prof(e);
        const double N = static_cast<double>(prof.count(2e5));
        CHECK(theorem1_discrepancy(prof, BoundedSequenceFn::constant_one(), 0, 3) == 0);
        CHECK(theorem1_discrepancy(prof, BoundedSequenceFn::weyl_character(std::numbers::sqrt2), 2, 2) == 0);
        CHECK(theorem1_discrepancy(prof, BoundedSequenceFn::alternating(), 0, 1) ==
              2 * std::abs(static_cast<double>(prof.liouville_sum(2e5))) / N);
        for (std::uint64_t qq : {3, 5, 6})
            for (std::uint64_t a = 1; a < qq; ++a)
                for (std::uint64_t k1 : {0, 2}) {
                    const Complex expect =
                        (Complex(1, 0) - unit_phase(a, qq)) * unit_phase(a * k1 % qq, qq) * exp_sum(prof, a, qq) / N;
                    const double got =
                        theorem1_discrepancy(prof, BoundedSequenceFn::additive_character(a, qq), k1, k1 + 1);
                    CHECK(std::abs(std::abs(expect) - got) < 1e-12);
                }
    }
    const BoundedSequenceFn big("two", [](std::uint64_t) { return Complex(2, 0); });
    CHECK_THROWS_AS(big(0), Error);
}

TEST_CASE("random ideal sets are reproducible and well formed") {
    const auto e = ideals_up_to(gauss(), 1000, EnumerationMode::Full);
    const auto a = random_ideal_sets(e, 20, 5, 10, 50);
    const auto b = random_ideal_sets(e, 20, 5, 10, 50);
    REQUIRE(a.size() == 20);
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].members() == b[i].members());
        CHECK(a[i].size() >= 1);
        CHECK(a[i].size() <= 10);
        for (const auto& m : a[i].members()) CHECK(m.norm() <= 50);
    }
}
