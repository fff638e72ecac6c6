#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>
#include <set>

#include "landau/error.hpp"
#include "landau/richter.hpp"

using namespace landau;

namespace {

ErrorKind kind_of(auto&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.kind();
    }
    FAIL("no error raised");
    return ErrorKind::InvalidArgument;
}

std::vector<std::uint64_t> integer_pi(std::uint64_t n) {
    std::vector<bool> is(n + 1, true);
    is[0] = is[1] = false;
    for (std::uint64_t p = 2; p * p <= n; ++p)
        if (is[p])
            for (std::uint64_t m = p * p; m <= n; m += p) is[m] = false;
    std::vector<std::uint64_t> pi(n + 1, 0);
    for (std::uint64_t m = 1; m <= n; ++m) pi[m] = pi[m - 1] + is[m];
    return pi;
}

std::uint64_t floor_near(double v) {
    const double r = std::round(v);
    return static_cast<std::uint64_t>(std::abs(v - r) <= 1e-9 * v ? r : std::floor(v));
}

// Rational primes in (b^x, b^(x + delta)].
std::uint64_t window(const std::vector<std::uint64_t>& pi, double b, double x, double delta) {
    return pi[floor_near(std::pow(b, x + delta))] - pi[floor_near(std::pow(b, x))];
}

// Sorted tuple sums, exhaustively.
std::vector<std::uint64_t> tuple_sums(const std::vector<std::vector<std::uint64_t>>& sets) {
    std::vector<std::uint64_t> sums{0};
    for (const auto& A : sets) {
        std::vector<std::uint64_t> next;
        for (auto s : sums)
            for (auto a : A) next.push_back(s + a);
        sums = std::move(next);
    }
    std::sort(sums.begin(), sums.end());
    return sums;
}

bool property_A_oracle(const std::vector<std::vector<std::uint64_t>>& sets, double M) {
    const auto s = tuple_sums(sets);
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            if (static_cast<double>(s[j] - s[i]) < M) return false;
    return true;
}

const ChebyshevContext& q_ctx() {
    static const ChebyshevContext c(parse_field({0, 1}), Norm{1} << 21);
    return c;
}

double diagonal_formula(const std::vector<Ideal>& primes) {
    double num = 0, w = 0;
    for (const auto& p : primes) {
        const double n = static_cast<double>(p.norm());
        num += (n - 1) / (n * n);
        w += 1 / n;
    }
    return num / (w * w);
}

}  // namespace

TEST_CASE("construction parameters") {
    const auto p = ConstructionParams::make(0.5, 2, 2, 0.24);
    CHECK(p.delta == 0.12);
    CHECK(p.separation() == 7);
    // log(1.5) / (2 log 2) is about 0.2925, but epsilon must also stay below 1/4
    CHECK(kind_of([] { ConstructionParams::make(0.5, 2, 2, 0.26); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ConstructionParams::make(0.1, 2, 16, 0.05); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ConstructionParams::make(1.0, 2, 2, 0.1); }) == ErrorKind::InvalidArgument);
    CHECK(kind_of([] { ConstructionParams::make(0.5, 0, 2, 0.1); }) == ErrorKind::InvalidArgument);
    auto bad = p;
    bad.delta = 0.1;
    CHECK_THROWS_AS(bad.validate(), Error);
    auto wide = p;
    wide.epsilon = 0.3;
    wide.delta = 0.15;
    CHECK(kind_of([&] { construct_richter_pair(q_ctx(), wide); }) == ErrorKind::InvalidArgument);
}

TEST_CASE("A-sets") {
    const auto one = build_A_sets(1, 1, 1);
    REQUIRE(one.sets.size() == 1);
    CHECK(one.steps[0] == 3);
    CHECK(one.sets[0].size() == 11);
    CHECK(one.sets[0].front() == 3);
    CHECK(one.sets[0].back() == 33);
    double h = 0;
    for (auto a : one.sets[0]) h += 1.0 / static_cast<double>(a);
    CHECK(h >= 1);
    CHECK(h - 1.0 / 33 < 1);

    const auto zero = build_A_sets(3, 0, 1, 0);
    for (const auto& A : zero.sets) CHECK(A.size() == 1);
    CHECK(zero.sets[0] == std::vector<std::uint64_t>{7});

    for (int k : {1, 2, 3})
        for (double M : {1.0, 2.0 * k + 3, 12.5}) {
            const double target = 0.05;
            const auto a = build_A_sets(k, M, 2, target);
            REQUIRE(a.sets.size() == static_cast<std::size_t>(k));
            CHECK(a.steps[0] > static_cast<std::uint64_t>(std::max(2, 2 * k)));
            std::uint64_t tops = 0;
            for (std::size_t i = 0; i < a.sets.size(); ++i) {
                const auto& A = a.sets[i];
                double mass = 0;
                for (std::size_t j = 0; j < A.size(); ++j) {
                    CHECK(A[j] == a.steps[i] * (j + 1));
                    mass += 1.0 / static_cast<double>(A[j]);
                }
                CHECK(mass >= target);
                if (i) CHECK(static_cast<double>(A.front()) > M + static_cast<double>(tops));
                tops += A.back();
            }
            CHECK(check_property_A(a.sets, M));
        }
    const auto sep = build_A_sets(2, 7, 1, 0.3);
    CHECK(check_property_A(sep.sets, 7));
    // a mass of 2k + 3 = 7 needs about e^20 multiples of s_1
    CHECK(kind_of([] { build_A_sets(2, 7, 1); }) == ErrorKind::ConstructionInfeasible);
}

TEST_CASE("property A") {
    CHECK(check_property_A({{3, 6, 9}}, 3));
    CHECK(check_property_A(build_A_sets(1, 1, 1).sets, 3));
    CHECK(property_A_oracle(build_A_sets(1, 1, 1).sets, 3));
    CHECK_FALSE(check_property_A({{1, 2}, {2, 3}}, 2));
    CHECK_FALSE(property_A_exhaustive({{1, 2}, {2, 3}}, 2));
    CHECK_FALSE(property_A_certificate({{1, 2}, {2, 3}}, 2));

    std::mt19937_64 rng(17);
    int certified = 0;
    for (int trial = 0; trial < 400; ++trial) {
        const int k = 1 + static_cast<int>(rng() % 3);
        std::vector<std::vector<std::uint64_t>> sets;
        for (int i = 0; i < k; ++i) {
            const std::uint64_t step = 1 + rng() % 40, start = 1 + rng() % 4;
            std::vector<std::uint64_t> A;
            const int len = 1 + static_cast<int>(rng() % 4);
            for (int j = 0; j < len; ++j) A.push_back(step * (start + static_cast<std::uint64_t>(j)));
            sets.push_back(A);
        }
        const double M = 1 + static_cast<double>(rng() % 12);
        const bool oracle = property_A_oracle(sets, M);
        CHECK(property_A_exhaustive(sets, M) == oracle);
        CHECK(check_property_A(sets, M) == oracle);
        if (property_A_certificate(sets, M)) {
            ++certified;
            CHECK(oracle);
        }
    }
    CHECK(certified > 0);
}

TEST_CASE("pair search against a grid-scan oracle") {
    const double eps = 0.5, delta = 0.05, b = 16;
    const auto r = lemma5_search(parse_field({0, 1}), 4, eps, delta, b);
    const auto pi = integer_pi(floor_near(std::pow(b, 5 + delta)) + 1);
    CHECK(r.n == 4);
    CHECK(r.x >= 4);
    CHECK(r.y < 5);
    CHECK(r.y - r.x > std::pow(eps, 4));
    CHECK(r.y - r.x < eps);
    CHECK(r.count_x == window(pi, b, r.x, delta));
    CHECK(r.count_y == window(pi, b, r.y, delta));
    CHECK(r.D > 0);
    CHECK(r.D < 1);
    const double need = r.D * std::pow(b, 4) / 4;
    CHECK(static_cast<double>(r.count_x) >= need * (1 - 1e-12));
    CHECK(static_cast<double>(r.count_y) >= need * (1 - 1e-12));

    const double step = std::pow(eps, 4) / 4;
    REQUIRE(r.step == step);
    std::vector<std::uint64_t> counts;
    for (int j = 0; 4 + j * step < 5; ++j) counts.push_back(window(pi, b, 4 + j * step, delta));
    CHECK(counts == r.profile);
    std::uint64_t best = 0;
    for (std::size_t i = 0; i < counts.size(); ++i)
        for (std::size_t j = i + 1; j < counts.size(); ++j) {
            const double d = static_cast<double>(j - i) * step;
            if (d > std::pow(eps, 4) && d < eps) best = std::max(best, std::min(counts[i], counts[j]));
        }
    CHECK(std::min(r.count_x, r.count_y) == best);

    const auto g = lemma5_search(parse_field({1, 0, 1}), 3, 0.5, 0.1, 16);
    CHECK(g.D > 0);
    CHECK(g.y - g.x > 0.0625);

    CHECK(kind_of([] { lemma5_search(parse_field({0, 1}), 1, 0.5, 0.05, 1.1); }) == ErrorKind::NoPairFound);
    const ChebyshevContext small(parse_field({0, 1}), 1000);
    CHECK(kind_of([&] { lemma5_search(small, 4, 0.5, 0.05, 16); }) == ErrorKind::CapacityExceeded);
}

TEST_CASE("window selection") {
    std::vector<double> xset;
    for (int n = 1; n <= 200; ++n) {
        xset.push_back(n);
        xset.push_back(n + 0.3);
    }
    const int k = 32;
    const std::vector<int> targets(k, 5);
    const auto s = lemma6_select(xset, 0.5, k, targets);
    CHECK(s.within_guarantee);
    REQUIRE(s.zs.size() == static_cast<std::size_t>(k));
    const std::set<double> members(xset.begin(), xset.end());
    double sum = 0;
    for (int i = 0; i < k; ++i) {
        CHECK(members.count(s.zs[i]) == 1);
        CHECK(s.zs[i] >= targets[i]);
        CHECK(s.zs[i] < targets[i] + 1);
        sum += s.zs[i];
    }
    CHECK(members.count(s.z) == 1);
    CHECK(sum >= s.z);
    CHECK(sum < s.z + 0.5);

    const auto one = lemma6_select({4.1, 7.3}, 0.5, 1, {4});
    CHECK(one.zs == std::vector<double>{4.1});
    CHECK(one.z == 4.1);
    CHECK_FALSE(one.within_guarantee);

    CHECK(kind_of([&] { lemma6_select(xset, 0.5, 2, {300, 5}); }) == ErrorKind::SelectionFailed);
    CHECK(kind_of([] { lemma6_select({10.0, 10.3}, 0.5, 2, {5, 5}); }) == ErrorKind::SelectionFailed);
}

TEST_CASE("k = 1 degenerate construction") {
    const auto f = parse_field({0, 1});
    const auto c = construct_richter_pair(q_ctx(), ConstructionParams::make(0.5, 1, 2, 0.24));
    REQUIRE_FALSE(c.pair.S1.empty());
    for (const auto& m : c.pair.S2) CHECK(m.omega() == 1);
    const auto v = verify_conditions(f, c.pair, 0.5, 1);
    CHECK(v.i);
    CHECK(v.ii);
    CHECK(v.iii_S1 == diagonal_formula(c.pair.S1));
    CHECK(v.iii_S2 == diagonal_formula(c.pair.S2));
}

TEST_CASE("pipeline pair on Q with base 2, k = 2, eta = 1/2") {
    const auto f = parse_field({0, 1});
    const auto params = ConstructionParams::make(0.5, 2, 2, 0.24);
    const auto c = construct_richter_pair(q_ctx(), params);
    const auto& pr = c.pair;
    REQUIRE_FALSE(pr.S1.empty());
    REQUIRE(pr.S1.size() == pr.S2.size());
    CHECK(c.D > 0);
    CHECK(c.D <= c.D_lemma5);
    CHECK(check_property_A(c.a_sets.sets, params.separation()));

    // type invariants, checked directly
    for (std::size_t i = 0; i < pr.S1.size(); ++i) {
        CHECK(pr.S1[i].omega() == 1);
        CHECK(pr.S2[i].omega() == 2);
        const double p = static_cast<double>(pr.S1[i].norm()), m = static_cast<double>(pr.S2[i].norm());
        CHECK(m >= 0.5 * p);
        CHECK(m <= 1.5 * p);
    }
    CHECK(std::set<Ideal>(pr.S1.begin(), pr.S1.end()).size() == pr.S1.size());
    CHECK(std::set<Ideal>(pr.S2.begin(), pr.S2.end()).size() == pr.S2.size());

    std::size_t expected = 0;
    for (const auto& t : c.tuples) {
        CHECK(t.products ==
              std::accumulate(t.window_sizes.begin(), t.window_sizes.end(), std::size_t{1}, std::multiplies<>()));
        CHECK(t.q_pool >= t.products);
        expected += t.products;
    }
    CHECK(pr.S2.size() == expected);

    const auto v = verify_conditions(f, pr, params.eta, params.k);
    CHECK(v.i);
    CHECK(v.ii);
    CHECK(v.iii_S1 == diagonal_formula(pr.S1));
    CHECK(v.iii_S1 <= 0.5);
    CHECK(v.iii_S2 <= 0.5);
}

TEST_CASE("raising the A-set mass never raises the Phi averages") {
    const auto f = parse_field({0, 1});
    for (int k : {1, 2}) {
        double prev1 = 1e300, prev2 = 1e300;
        int runs = 0;
        for (int level = 0; level <= 40; ++level) {
            auto p = ConstructionParams::make(0.5, k, 2, 0.24);
            p.mass = 0.05 * level;
            RichterConstruction c;
            try {
                c = construct_richter_pair(q_ctx(), p);
            } catch (const Error& e) {
                CHECK(e.kind() == ErrorKind::CapacityExceeded);
                break;
            }
            const auto v = verify_conditions(f, c.pair, 0.5, k);
            CHECK(v.iii_S1 <= prev1 + 1e-9);
            CHECK(v.iii_S2 <= prev2 + 1e-9);
            prev1 = v.iii_S1;
            prev2 = v.iii_S2;
            ++runs;
        }
        CHECK(runs >= 2);
    }
}

TEST_CASE("verify_conditions rejects broken pairs") {
    const auto f = parse_field({1, 0, 1});
    const auto fp = f.fingerprint();
    const auto p5 = factor_prime(f, 5), p13 = factor_prime(f, 13), p2 = factor_prime(f, 2);
    RichterPair pr;
    pr.S1 = {Ideal::prime(fp, p13[0]), Ideal::prime(fp, p5[0])};
    const Ideal q2 = Ideal::prime(fp, p2[0]);
    pr.S2 = {multiply(q2, q2), multiply(q2, Ideal::prime(fp, p5[1]))};
    auto v = verify_conditions(f, pr, 0.5, 2);
    CHECK(v.i);
    CHECK_FALSE(v.ii);  // N = 4 is paired with 13
    pr.S2[0] = Ideal::prime(fp, p2[0]);
    v = verify_conditions(f, pr, 0.5, 2);
    CHECK_FALSE(v.i);
    pr.S2.pop_back();
    CHECK_FALSE(verify_conditions(f, pr, 0.5, 2).ii);
}
