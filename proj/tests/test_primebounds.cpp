#include <doctest.h>

#include <cmath>

#include "landau/error.hpp"
#include "landau/primebounds.hpp"

using namespace landau;

namespace {

const std::vector<std::vector<std::int64_t>> kFields = {{0, 1}, {1, 0, 1}, {-2, 0, 1}, {1, 1, 1}};

std::vector<bool> integer_primes(std::uint64_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = is[1] = false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (is[p])
            for (std::uint64_t m = p * p; m <= n; m += p) is[m] = false;
    return is;
}

// Gaussian prime ideals by norm: 2 once, p = 1 mod 4 twice, p^2 for p = 3 mod 4.
std::uint64_t gaussian_primes_between(const std::vector<bool>& is, std::uint64_t lo, std::uint64_t hi) {
    std::uint64_t c = 0;
    for (std::uint64_t p = 2; p <= hi; ++p) {
        if (!is[p]) continue;
        if (p == 2 && lo < 2) ++c;
        if (p % 4 == 1 && p > lo) c += 2;
        if (p % 4 == 3 && p * p > lo && p * p <= hi) ++c;
    }
    return c;
}

}  // namespace

TEST_CASE("annulus census examples") {
    const ChebyshevContext g(parse_field({1, 0, 1}), 100'000);
    const auto a = annulus_census(g, 16, 0, 1);
    CHECK(a.prime_count == 6);
    CHECK(a.ideal_count == 11);  // phi(2..16) = 1,0,1,2,0,0,1,1,2,0,0,2,0,0,1
    const auto empty = annulus_census(g, 16, 2, 2);
    CHECK(empty.prime_count == 0);
    CHECK(empty.ideal_count == 0);
    const ChebyshevContext q(parse_field({0, 1}), 100'000);
    CHECK(annulus_census(q, 16, 1, 2).prime_count == 48);
    CHECK(annulus_census(q, 16, 1, 2).ideal_count == 240);
    try {
        annulus_census(q, 16, 4, 5);
        FAIL("expected CapacityExceeded");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::CapacityExceeded);
    }
}

TEST_CASE("prime counts against integer oracles") {
    const std::uint64_t X = 300'000;
    const auto is = integer_primes(X);
    const ChebyshevContext q(parse_field({0, 1}), X);
    const ChebyshevContext g(parse_field({1, 0, 1}), X);
    std::uint64_t pi = 0;
    std::size_t bad = 0;
    for (std::uint64_t n = 1; n <= X; ++n) {
        pi += is[n];
        if (q.pi(static_cast<double>(n)) != pi) ++bad;
    }
    CHECK(bad == 0);
    for (std::uint64_t lo : {0ULL, 1ULL, 7ULL, 1000ULL, 65'536ULL})
        for (std::uint64_t hi : {10ULL, 4096ULL, 99'999ULL, 300'000ULL})
            if (lo < hi)
                CHECK(g.primes_between(static_cast<double>(lo), static_cast<double>(hi)) ==
                      gaussian_primes_between(is, lo, hi));
}

TEST_CASE("annulus census is additive") {
    for (const auto& c : kFields) {
        const ChebyshevContext ctx(parse_field(c), 1'100'000);
        for (double base : {2.0, 3.5, 16.0})
            for (double lo : {0.0, 0.5, 1.25, 2.0})
                for (double mid : {lo, lo + 0.3, lo + 1.0})
                    for (double hi : {mid, mid + 0.7, mid + 1.5}) {
                        if (std::pow(base, hi) > 1'100'000) continue;
                        const auto a = annulus_census(ctx, base, lo, mid), b = annulus_census(ctx, base, mid, hi),
                                   whole = annulus_census(ctx, base, lo, hi);
                        CHECK(a.prime_count + b.prime_count == whole.prime_count);
                        CHECK(a.ideal_count + b.ideal_count == whole.ideal_count);
                        CHECK(whole.prime_count <= whole.ideal_count);
                    }
    }
}

TEST_CASE("annulus count bounds") {
    const ChebyshevContext q(parse_field({0, 1}), 1'000'000);
    const auto one = lemma3_check(q, 1000, 1);
    CHECK(one.observed == 0);
    CHECK(one.main_term == 0);
    CHECK(one.pass);
    const auto is = integer_primes(200'000);
    std::uint64_t oracle = 0;
    for (std::uint64_t n = 100'001; n <= 200'000; ++n) oracle += is[n];
    const auto l3 = lemma3_check(q, 1e5, 2);
    CHECK(oracle == 17984 - 9592);
    CHECK(l3.observed == oracle);
    CHECK(std::abs(l3.main_term - 2 * std::log(2.0) * 1e5 / std::log(1e5)) < 1e-6);
    CHECK(l3.main_term == doctest::Approx(12041.).epsilon(1e-4));
    CHECK(l3.pass);
    const auto l4 = lemma4_check(q, 1e6);
    CHECK(l4.observed == 78498);
    CHECK(l4.main_term == doctest::Approx(26626.).epsilon(1e-4));
    CHECK(l4.pass);
    const auto small = lemma4_check(q, 10);
    CHECK(small.observed == 4);
    CHECK(small.main_term == doctest::Approx(1.598).epsilon(1e-3));
    CHECK(small.pass);

    for (const auto& c : kFields) {
        const ChebyshevContext ctx(parse_field(c), 1'000'000);
        for (double y : {1e3, 1e4, 1e5, 1e6}) CHECK(lemma4_check(ctx, y).pass);
        for (double x : {1e3, 1e4, 1e5})
            for (double alpha : {1.5, 2.0, 4.0}) CHECK(lemma3_check(ctx, x, alpha).pass);
    }
}

TEST_CASE("many-primes annulus conditions") {
    const ChebyshevContext q(parse_field({0, 1}), 1 << 20);
    const auto r = prop4_check(q, 16, 4, 0.25);
    CHECK(r.count_i == 75483);
    CHECK(r.threshold_i == 16384);
    CHECK(r.cond_i);
    CHECK(r.threshold_ii == doctest::Approx(0.5 * 16384));
    const ChebyshevContext g(parse_field({1, 0, 1}), 1 << 20);
    const auto rg = prop4_check(g, 16, 4, 0.25);
    CHECK(rg.cond_i);
    CHECK(rg.cond_ii);
    // (b^x, b^(x + eps)] holds no integer
    const auto tiny = prop4_check(q, 2, 3, 1e-9);
    CHECK(tiny.count_ii == 0);
    CHECK(tiny.cond_ii);
    CHECK_THROWS_AS(prop4_check(q, 16, 5, 0.25), Error);
    CHECK_THROWS_AS(prop4_check(q, 16, 3, 0.5), Error);
    const auto sx = prop4_smallest_x(q, 16, 4, 0.25);
    REQUIRE(sx.has_value());
    for (int x = *sx; x <= 4; ++x) CHECK(prop4_check(q, 16, x, 0.25).cond_i);
}

TEST_CASE("multiplicity census") {
    const auto q = parse_field({0, 1});
    const auto eq = ideals_up_to(q, 10, EnumerationMode::Full);
    const auto two = eq.table().entries[0];
    CHECK(multiplicity_census(eq, two.key()) == 8);
    const auto e3 = ideals_up_to(q, 1, EnumerationMode::Full);
    CHECK(multiplicity_census(e3, two.key()) == 0);

    // Gaussian X = 10: (1+i) divides norms 2, 4, 8 and both ideals of norm 10
    const auto g = parse_field({1, 0, 1});
    const auto eg = ideals_up_to(g, 10, EnumerationMode::Full);
    CHECK(multiplicity_census(eg, eg.table().entries[0].key()) == 1 + 2 + 3 + 1 + 1);

    // Legendre over Q
    const auto big = ideals_up_to(q, 50'000, EnumerationMode::Full);
    for (std::size_t i = 0; i < 20; ++i) {
        const auto& p = big.table().entries[i];
        std::uint64_t legendre = 0;
        for (Norm pc = p.norm; pc <= 50'000; pc *= p.norm) legendre += 50'000 / pc;
        CHECK(multiplicity_census(big, p.key()) == legendre);
    }

    for (const auto& c : kFields) {
        const auto field = parse_field(c);
        const auto e = ideals_up_to(field, 100'000, EnumerationMode::Full);
        const ChebyshevContext ctx(field, 100'000);
        for (const auto& p : e.table().entries) {
            if (p.norm > 300) break;
            CHECK(multiplicity_census(e, p.key()) == multiplicity_by_counts(ctx, 100'000, p.key()));
        }
    }
}

TEST_CASE("robust floor") {
    CHECK(robust_floor(2.9999999999999996) == 3);
    CHECK(robust_floor(3.0000000000000004) == 3);
    CHECK(robust_floor(2.5) == 2);
    CHECK(robust_floor(-0.5) == -1);
    CHECK(robust_floor(std::pow(2.0, std::log2(1000.0))) == 1000);
}
