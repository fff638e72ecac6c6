// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <memory>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "landau/multfunc.hpp"
#include "landau/orthogonality.hpp"
#include "landau/primebounds.hpp"
#include "landau/richter.hpp"
#include "landau/stats.hpp"

using namespace landau;

namespace {

const std::vector<std::int64_t> kQ{0, 1}, kGauss{1, 0, 1}, kSqrt2{-2, 0, 1};

struct Verdict {
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "[" << what << "] ";
        }
    }
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

int failures = 0;

void criterion(int id, const char* title, double time_limit, const std::function<void(Verdict&)>& body) {
    Verdict v;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(v);
    } catch (const std::exception& e) {
        v.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (time_limit > 0) v.require(secs < time_limit, "runtime " + fmt(secs) + " s over " + fmt(time_limit) + " s");
    if (!v.pass) ++failures;
    std::printf("%s %2d %s (%.1f s) %s\n", v.pass ? "PASS" : "FAIL", id, title, secs, v.detail.str().c_str());
    std::fflush(stdout);
}

// Smallest-prime-factor sieve: Omega, mu, lambda and primality of every n <= X.
struct IntegerOracle {
    std::vector<std::uint8_t> omega;
    std::vector<std::int8_t> mu;
    std::vector<bool> prime;

    explicit IntegerOracle(std::uint64_t X) : omega(X + 1, 0), mu(X + 1, 1), prime(X + 1, false) {
        std::vector<std::uint32_t> spf(X + 1, 0);
        for (std::uint64_t p = 2; p <= X; ++p) {
            if (spf[p]) continue;
            prime[p] = true;
            for (std::uint64_t m = p; m <= X; m += p)
                if (!spf[m]) spf[m] = static_cast<std::uint32_t>(p);
        }
        for (std::uint64_t n = 2; n <= X; ++n) {
            const std::uint64_t p = spf[n], r = n / p;
            omega[n] = omega[r] + 1;
            mu[n] = static_cast<std::int8_t>(r % p == 0 ? 0 : -mu[r]);
        }
    }
};

int chi_m4(std::uint64_t d) { return d % 2 == 0 ? 0 : (d % 4 == 1 ? 1 : -1); }

void rational_oracle(Verdict& v) {
    const Norm X = 1'000'000;
    const IntegerOracle o(X);
    const auto field = parse_field(kQ);
    const auto phi = ideal_count_by_norm(field, X);
    const auto e = ideals_up_to(field, X);
    const NormProfile prof(e);
    std::size_t bad_records = 0, bad_sums = 0;
    v.require(e.size() == X, "N(10^6) != 10^6");
    for (Norm n = 1; n <= X && n <= e.size(); ++n) {
        const auto& r = e[n - 1];
        const int lambda = o.omega[n] % 2 ? -1 : 1;
        if (phi[n] != 1 || r.norm != n || r.omega != o.omega[n] || r.mu != o.mu[n] || r.lambda != lambda)
            ++bad_records;
    }
    std::int64_t L = 0, M = 0, pi = 0;
    for (Norm n = 1; n <= X; ++n) {
        const std::int64_t m_strict = M;
        L += o.omega[n] % 2 ? -1 : 1;
        M += o.mu[n];
        pi += o.prime[n];
        const double x = static_cast<double>(n);
        if (prof.liouville_sum(x) != L || prof.mertens(x) != m_strict || prof.mertens_inclusive(x) != M ||
            prof.prime_count(x) != static_cast<std::uint64_t>(pi))
            ++bad_sums;
    }
    v.require(bad_records == 0, std::to_string(bad_records) + " records differ");
    v.require(bad_sums == 0, std::to_string(bad_sums) + " summatory values differ");
    v.detail << "L(1e6)=" << L << " M(1e6)=" << prof.mertens(1e6) << " pi(1e6)=" << pi;
}

void gaussian_oracle(Verdict& v) {
    const auto field = parse_field(kGauss);
    const Norm X = 100'000;
    const auto phi = ideal_count_by_norm(field, X);
    std::vector<std::int64_t> oracle(X + 1, 0);
    for (Norm d = 1; d <= X; ++d)
        if (const int c = chi_m4(d))
            for (Norm n = d; n <= X; n += d) oracle[n] += c;
    std::size_t bad = 0;
    for (Norm n = 1; n <= X; ++n) bad += phi[n] != oracle[n];
    v.require(bad == 0, std::to_string(bad) + " phi values differ");
    const double ratio = static_cast<double>(count_ideals(field, 10'000'000)) / 1e7;
    v.require(std::abs(ratio - std::numbers::pi / 4) < 1e-3, "N(1e7)/1e7 off");
    v.detail << "N(1e7)/1e7=" << fmt(ratio) << " pi/4=" << fmt(std::numbers::pi / 4);
}

void density_exponent(Verdict& v) {
    for (const auto& c : {kGauss, kSqrt2}) {
        const auto fit = estimate_density(parse_field(c), 1'000'000);
        v.require(fit.residual_exponent_ok, parse_field(c).to_string() + " residual above C x^(1/2)");
        v.detail << parse_field(c).to_string() << ": c_hat=" << fmt(fit.c_hat) << " C=" << fmt(fit.C) << "; ";
    }
}

void landau_trend(Verdict& v) {
    for (const auto& c : {kQ, kGauss, kSqrt2}) {
        const auto field = parse_field(c);
        const auto e = ideals_up_to(field, 1'000'000);
        const NormProfile prof(e);
        std::vector<double> r;
        for (double X : {1e4, 1e5, 1e6})
            r.push_back(std::abs(static_cast<double>(prof.liouville_sum(X))) / static_cast<double>(prof.count(X)));
        for (std::size_t i = 1; i < r.size(); ++i)
            v.require(r[i] <= 1.1 * r[i - 1], field.to_string() + " |L|/N rises");
        v.require(r.back() < 0.02, field.to_string() + " |L|/N >= 0.02 at 1e6");
        const double disc = theorem1_discrepancy(prof, BoundedSequenceFn::alternating(), 0, 1);
        v.require(disc == 2 * std::abs(static_cast<double>(prof.liouville_sum(1e6))) / static_cast<double>(prof.count(1e6)),
                  field.to_string() + " discrepancy != 2|L|/N");
        v.detail << field.to_string() << ": " << fmt(r[0]) << "," << fmt(r[1]) << "," << fmt(r[2]) << "; ";
    }
}

void equidistribution(Verdict& v) {
    for (const auto& c : {kQ, kGauss}) {
        const auto field = parse_field(c);
        const auto e = ideals_up_to(field, 1'000'000);
        const NormProfile prof(e);
        const double N = static_cast<double>(prof.count(1e6));
        double worst_exp = 0, worst_bin = 0, worst_gap = 0;
        for (std::uint64_t q : {3, 4, 5}) {
            for (std::uint64_t a = 1; a < q; ++a) worst_exp = std::max(worst_exp, std::abs(exp_sum(prof, a, q)) / N);
            const auto h = residue_histogram(prof, q);
            for (auto b : h.bins)
                worst_bin = std::max(worst_bin, std::abs(static_cast<double>(b) * static_cast<double>(q) / N - 1));
            worst_gap = std::max(worst_gap, h.parseval_gap);
        }
        v.require(worst_exp < 0.05, field.to_string() + " exp sum >= 0.05 N");
        v.require(worst_bin <= 0.03, field.to_string() + " residue bin off uniform by more than 3%");
        v.require(worst_gap < 1e-9, field.to_string() + " parseval gap");
        v.detail << field.to_string() << ": max|S|/N=" << fmt(worst_exp) << " max bin dev=" << fmt(worst_bin)
                 << " parseval=" << fmt(worst_gap) << "; ";
    }
}

void orthogonality_sets(Verdict& v) {
    for (const auto& c : {kQ, kGauss, kSqrt2}) {
        const auto field = parse_field(c);
        std::vector<std::unique_ptr<OrthogonalityContext>> ctx;
        for (Norm X : {Norm{10'000}, Norm{100'000}, Norm{1'000'000}})
            ctx.push_back(std::make_unique<OrthogonalityContext>(field, X));
        const auto sets = random_ideal_sets(ctx[0]->ideals(), 20, 1, 50, 100);
        std::size_t over_bound = 0, not_decreasing = 0;
        double worst_ratio = 0;
        for (const auto& S : sets) {
            double prev = 0;
            for (std::size_t i = 0; i < ctx.size(); ++i) {
                const auto s = corollary_sides(S, *ctx[i]);
                const double gap = std::abs(s.lhs - s.rhs);
                if (i && gap > 1.1 * prev) ++not_decreasing;
                if (i + 1 == ctx.size()) {
                    if (gap > s.bound) ++over_bound;
                    worst_ratio = std::max(worst_ratio, gap / s.bound);
                }
                prev = gap;
            }
        }
        v.require(over_bound == 0, field.to_string() + " " + std::to_string(over_bound) + " sets over bound");
        v.require(not_decreasing == 0,
                  field.to_string() + " " + std::to_string(not_decreasing) + " gap increases over 10%");
        v.detail << field.to_string() << ": max gap/bound=" << fmt(worst_ratio) << " rises=" << not_decreasing << "; ";
    }
}

void chebyshev(Verdict& v) {
    for (const auto& c : {kQ, kGauss, kSqrt2}) {
        const auto field = parse_field(c);
        const ChebyshevContext ctx(field, Norm{1} << 20);
        for (double y : {1e3, 1e4, 1e5, 1e6})
            v.require(lemma4_check(ctx, y).pass, field.to_string() + " upper annulus y=" + fmt(y));
        for (double x : {1e3, 1e4, 1e5})
            for (double alpha : {1.5, 2.0, 4.0})
                v.require(lemma3_check(ctx, x, alpha).pass,
                          field.to_string() + " lower annulus x=" + fmt(x) + " alpha=" + fmt(alpha));
        if (c != kSqrt2) {
            const auto p4 = prop4_check(ctx, 16, 4, 0.25);
            v.require(p4.cond_i, field.to_string() + " many-primes cond_i");
            v.detail << field.to_string() << ": many-primes " << p4.count_i << " >= " << fmt(p4.threshold_i) << "; ";
        }
    }
}

void convolution_identities(Verdict& v) {
    for (const auto& c : {kQ, kGauss, kSqrt2}) {
        const auto field = parse_field(c);
        const auto d = make_domain(field, 10'000);
        const auto lam = liouville_table(d), mu = moebius_table(d), one = one_table(d), sq = indicator_square_table(d);
        v.require(dirichlet_convolve(lam, one) == sq, field.to_string() + " lambda*1");
        v.require(dirichlet_convolve(sq, mu) == lam, field.to_string() + " sq*mu");
        const auto g = dirichlet_inverse(sq);
        v.require(dirichlet_convolve(g, lam) == mu, field.to_string() + " sq^-1*lambda");
        bool bounded = true;
        for (std::size_t i = 0; i < d->size(); ++i) {
            if (abs(g[i]) > Rational(1)) bounded = false;
            if (g[i] != Rational(0) && indicator_square(d->ideals().ideal(i)) != 1) bounded = false;
        }
        v.require(bounded, field.to_string() + " sq^-1 bound or support");
        std::size_t bad = 0;
        for (const auto& s : m_from_l_sweep(field, 10'000)) bad += s.left != s.right;
        v.require(bad == 0, field.to_string() + " M-from-L at " + std::to_string(bad) + " X");
    }
    v.detail << "3 fields, norms <= 1e4";
}

void abel(Verdict& v) {
    for (const auto& c : {kQ, kGauss})
        for (auto g : {GFunction::One, GFunction::InvT}) {
            const auto a = abel_estimate(parse_field(c), 100'000, g);
            const double diff = std::abs(a.direct - a.formula);
            v.require(diff <= a.bound, parse_field(c).to_string() + " g=" + std::string(to_string(g)));
            v.detail << parse_field(c).to_string() << " " << to_string(g) << ": " << fmt(diff) << "<=" << fmt(a.bound)
                     << "; ";
        }
}

void richter(Verdict& v) {
    const auto params = ConstructionParams::make(0.5, 2, 2, 0.24);
    for (const auto& c : {kQ, kGauss}) {
        const auto field = parse_field(c);
        const auto con = construct_richter_pair(field, params);
        const auto r = verify_conditions(field, con.pair, params.eta, params.k);
        const auto name = field.to_string();
        v.require(r.i, name + " (i)");
        v.require(r.ii, name + " (ii)");
        v.require(r.iii_S1 <= params.eta, name + " iii_S1 > eta");
        v.require(r.iii_S2 <= params.eta, name + " iii_S2 > eta");
        v.require(check_property_A(con.a_sets.sets, 2 * params.k + 3), name + " property A");
        v.detail << name << ": |S|=" << con.pair.S1.size() << " iii=" << fmt(r.iii_S1) << "," << fmt(r.iii_S2)
                 << "; ";
    }
    const auto a = build_A_sets(params.k, 2 * params.k + 3, 1, 0.05);
    v.require(check_property_A(a.sets, 2 * params.k + 3), "standalone A-sets property A");

    std::vector<double> xset;
    for (int n = 1; n <= 200; ++n) {
        xset.push_back(n);
        xset.push_back(n + 0.3);
    }
    const std::vector<int> targets(32, 5);
    const auto s = lemma6_select(xset, 0.5, 32, targets);
    const std::set<double> members(xset.begin(), xset.end());
    bool in_windows = members.count(s.z) == 1 && s.zs.size() == targets.size();
    double sum = 0;
    for (std::size_t i = 0; i < s.zs.size(); ++i) {
        in_windows = in_windows && members.count(s.zs[i]) && s.zs[i] >= targets[i] && s.zs[i] < targets[i] + 1;
        sum += s.zs[i];
    }
    v.require(in_windows, "selection (I)");
    v.require(sum >= s.z && sum < s.z + 0.5, "selection (II)");
}

}  // namespace

int main() {
    criterion(1, "rational-field oracle equivalence to 1e6", 10, rational_oracle);
    criterion(2, "Gaussian phi = chi_-4 divisor sum to 1e5; N(1e7)/1e7 within 1e-3 of pi/4", 60, gaussian_oracle);
    criterion(3, "density error exponent on Q(i), Q(sqrt 2) to 1e6", 0, density_exponent);
    criterion(4, "|L(X)|/N(X) trend and bounded-sequence discrepancy identity", 0, landau_trend);
    criterion(5, "Omega equidistributed mod 3, 4, 5; Parseval identity", 0, equidistribution);
    criterion(6, "orthogonality expectation form on 20 random sets per field", 0, orthogonality_sets);
    criterion(7, "Chebyshev-type bounds and many-primes annuli", 0, chebyshev);
    criterion(8, "exact Dirichlet convolution identities to 1e4", 0, convolution_identities);
    criterion(9, "Abel summation within the fitted bound at 1e5", 0, abel);
    criterion(10, "Richter pairs, property A and window selection", 60, richter);
    std::printf("%d of 10 criteria failed\n", failures);
    return failures ? 1 : 0;
}
