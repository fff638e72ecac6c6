#include "landau/richter.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "landau/error.hpp"

namespace landau {

ConstructionParams ConstructionParams::make(double eta, int k, double base, double epsilon) {
    ConstructionParams p;
    p.eta = eta;
    p.k = k;
    p.base = base;
    p.epsilon = epsilon;
    p.delta = k > 0 ? epsilon / k : 0;
    p.validate();
    return p;
}

void ConstructionParams::validate() const {
    if (!(eta > 0 && eta < 1)) fail(ErrorKind::InvalidArgument, "eta must lie in (0, 1)");
    if (k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
    if (!(base > 1)) fail(ErrorKind::InvalidArgument, "base must exceed 1");
    const double eps_max = std::min(0.25, std::log1p(eta) / (2 * std::log(base)));
    if (!(epsilon > 0 && epsilon < eps_max))
        fail(ErrorKind::InvalidArgument,
             "epsilon must lie in (0, " + std::to_string(eps_max) + ") for eta = " + std::to_string(eta));
    if (std::abs(delta - epsilon / k) > 1e-15 * epsilon) fail(ErrorKind::InvalidArgument, "delta must equal epsilon / k");
    if (!(M >= 0) || !(mass >= 0)) fail(ErrorKind::InvalidArgument, "M and mass must be nonnegative");
    if (capacity < 2) fail(ErrorKind::InvalidArgument, "capacity must be at least 2");
}

namespace {

std::vector<std::uint64_t> window_profile(const ChebyshevContext& ctx, int n, double epsilon, double delta,
                                          double base, double& step) {
    step = std::pow(epsilon, 4) / 4;
    std::size_t G = 0;
    while (n + static_cast<double>(G) * step < n + 1.0) ++G;
    if (std::pow(base, n + 1 + delta) >= static_cast<double>(ctx.capacity()) + 1)
        fail(ErrorKind::CapacityExceeded, "window n = " + std::to_string(n) + " reaches past capacity " +
                                              std::to_string(ctx.capacity()));
    std::vector<std::uint64_t> counts(G);
#pragma omp parallel for schedule(static)
    for (std::size_t g = 0; g < G; ++g) {
        const double x = n + static_cast<double>(g) * step;
        counts[g] = ctx.primes_between(std::pow(base, x), std::pow(base, x + delta));
    }
    return counts;
}

/// Indices into the table of primes with norm in (lo, hi], smallest norm first.
std::pair<std::size_t, std::size_t> annulus_range(const ChebyshevContext& ctx, double lo, double hi) {
    const auto& es = ctx.table().entries;
    auto first_above = [&](double v) {
        const Norm n = v < 1 ? 0 : static_cast<Norm>(robust_floor(v));
        return static_cast<std::size_t>(
            std::upper_bound(es.begin(), es.end(), n, [](Norm a, const PrimeIdeal& p) { return a < p.norm; }) -
            es.begin());
    };
    const std::size_t b = first_above(hi);
    return {std::min(first_above(lo), b), b};
}

std::vector<Ideal> smallest_primes(const ChebyshevContext& ctx, double x, double delta, double base, std::size_t count) {
    const auto [lo, hi] = annulus_range(ctx, std::pow(base, x), std::pow(base, x + delta));
    if (hi - lo < count)
        fail(ErrorKind::ConstructionInfeasible, "window at x = " + std::to_string(x) + " holds " +
                                                    std::to_string(hi - lo) + " primes, need " + std::to_string(count));
    std::vector<Ideal> out;
    out.reserve(count);
    for (std::size_t i = lo; i < lo + count; ++i) out.push_back(ctx.table().ideal_of(static_cast<std::uint32_t>(i)));
    return out;
}

std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_add_overflow(a, b, &r)) fail(ErrorKind::ConstructionInfeasible, "A-set bounds overflow");
    return r;
}

std::uint64_t checked_times(std::uint64_t a, std::uint64_t b) {
    std::uint64_t r;
    if (__builtin_mul_overflow(a, b, &r)) fail(ErrorKind::ConstructionInfeasible, "A-set bounds overflow");
    return r;
}

constexpr std::uint64_t kMaxSetSize = 1'000'000;
constexpr std::uint64_t kMaxTuples = 100'000;

}  // namespace

LemmaFiveResult lemma5_search(const ChebyshevContext& ctx, int n, double epsilon, double delta, double base) {
    if (n < 1) fail(ErrorKind::InvalidArgument, "n must be at least 1");
    if (!(epsilon > 0 && epsilon < 1) || !(delta > 0)) fail(ErrorKind::InvalidArgument, "need 0 < epsilon < 1, delta > 0");
    LemmaFiveResult r;
    r.n = n;
    r.profile = window_profile(ctx, n, epsilon, delta, base, r.step);
    const auto& c = r.profile;
    const double gap_lo = std::pow(epsilon, 4);
    std::uint64_t best = 0;
    std::size_t bx = 0, by = 0;
    for (std::size_t gx = 0; gx < c.size(); ++gx) {
        if (c[gx] <= best) continue;
        for (std::size_t gy = gx + 1; gy < c.size(); ++gy) {
            const double d = static_cast<double>(gy - gx) * r.step;
            if (d <= gap_lo) continue;
            if (d >= epsilon) break;
            const std::uint64_t v = std::min(c[gx], c[gy]);
            if (v > best) {
                best = v;
                bx = gx;
                by = gy;
                if (best == c[gx]) break;
            }
        }
    }
    if (best == 0) {
        const auto mx = c.empty() ? 0 : *std::max_element(c.begin(), c.end());
        fail(ErrorKind::NoPairFound, "no window pair at n = " + std::to_string(n) + " with both counts positive; " +
                                         std::to_string(c.size()) + " grid points, max count " + std::to_string(mx));
    }
    r.x = n + static_cast<double>(bx) * r.step;
    r.y = n + static_cast<double>(by) * r.step;
    r.count_x = c[bx];
    r.count_y = c[by];
    r.D = std::min(static_cast<double>(best) * n / std::pow(base, n), std::nextafter(1.0, 0.0));
    return r;
}

LemmaFiveResult lemma5_search(const FieldSpec& field, int n, double epsilon, double delta, double base) {
    if (n < 1 || !(base > 1)) fail(ErrorKind::InvalidArgument, "need n >= 1 and base > 1");
    const double top = std::pow(base, n + 1 + delta);
    if (top >= static_cast<double>(kDefaultCapacity) + 1)
        fail(ErrorKind::CapacityExceeded, "windows of n = " + std::to_string(n) + " reach past the default capacity");
    return lemma5_search(ChebyshevContext(field, static_cast<Norm>(top) + 1), n, epsilon, delta, base);
}

Lemma6Selection lemma6_select(std::vector<double> xset, double epsilon, int k, const std::vector<int>& targets) {
    if (k < 1 || targets.size() != static_cast<std::size_t>(k))
        fail(ErrorKind::InvalidArgument, "need exactly k targets");
    if (!(epsilon > 0 && epsilon < 1)) fail(ErrorKind::InvalidArgument, "epsilon must lie in (0, 1)");
    std::sort(xset.begin(), xset.end());
    xset.erase(std::unique(xset.begin(), xset.end()), xset.end());

    Lemma6Selection sel;
    sel.within_guarantee = k >= static_cast<int>(std::ceil(2 / std::pow(epsilon, 4)));
    const double gap_lo = std::pow(epsilon, 4);
    std::vector<double> xs(k), ys(k);
    for (int i = 0; i < k; ++i) {
        const double n = targets[i];
        const auto lo = std::lower_bound(xset.begin(), xset.end(), n);
        const auto hi = std::lower_bound(xset.begin(), xset.end(), n + 1);
        if (lo == hi) fail(ErrorKind::SelectionFailed, "no point of Xset in [" + std::to_string(targets[i]) + ", +1)");
        bool found = false;
        for (auto a = lo; a != hi && !found; ++a)
            for (auto b = a + 1; b != hi; ++b) {
                const double d = *b - *a;
                if (d >= epsilon) break;
                if (d > gap_lo) {
                    xs[i] = *a;
                    ys[i] = *b;
                    found = true;
                    break;
                }
            }
        if (!found) {
            xs[i] = ys[i] = *lo;
            sel.within_guarantee = false;
        }
    }
    for (int j = 0; j <= k; ++j) {
        std::vector<double> zs(k);
        for (int i = 0; i < k; ++i) zs[i] = i < j ? ys[i] : xs[i];
        const double s = std::accumulate(zs.begin(), zs.end(), 0.0);
        // largest z in Xset with s - eps < z <= s
        auto it = std::upper_bound(xset.begin(), xset.end(), s);
        if (it == xset.begin()) continue;
        --it;
        if (*it > s - epsilon) {
            sel.z = *it;
            sel.zs = std::move(zs);
            return sel;
        }
    }
    fail(ErrorKind::SelectionFailed, "no point of Xset within epsilon below any interpolated sum");
}

ASets build_A_sets(int k, double M, int x0, double mass) {
    if (k < 1) fail(ErrorKind::InvalidArgument, "k must be at least 1");
    if (!(M >= 0) || !(mass >= 0)) fail(ErrorKind::InvalidArgument, "M and mass must be nonnegative");
    auto length = [&](std::uint64_t s) {
        const long double target = static_cast<long double>(s) * mass;
        std::uint64_t t = 1;
        long double h = 1;
        while (h < target) {
            if (++t > kMaxSetSize)
                fail(ErrorKind::ConstructionInfeasible,
                     "A-set with step " + std::to_string(s) + " needs more than 10^6 elements");
            h += 1.0L / static_cast<long double>(t);
        }
        return t;
    };
    const auto m_floor = static_cast<std::uint64_t>(std::floor(M));
    const auto m_ceil = static_cast<std::uint64_t>(std::ceil(M));

    ASets out;
    std::uint64_t s = static_cast<std::uint64_t>(std::max(std::max(x0, 0), 2 * k)) + 1;
    std::uint64_t t = length(s);
    if (t >= 2 && s < m_ceil) {
        s = m_ceil;
        t = length(s);
    }
    std::uint64_t max_sum = 0;
    for (int i = 0; i < k; ++i) {
        if (i > 0) {
            s = checked_add(checked_add(m_floor, max_sum), 1);
            t = length(s);
        }
        std::vector<std::uint64_t> a(t);
        for (std::uint64_t j = 0; j < t; ++j) a[j] = checked_times(s, j + 1);
        max_sum = checked_add(max_sum, a.back());
        out.steps.push_back(s);
        out.sets.push_back(std::move(a));
    }
    return out;
}

bool property_A_exhaustive(const std::vector<std::vector<std::uint64_t>>& sets, double M) {
    std::vector<std::uint64_t> sums{0};
    std::uint64_t total = 1;
    for (const auto& a : sets) {
        if (a.empty()) return true;
        total = checked_times(total, a.size());
        if (total > kMaxSetSize) fail(ErrorKind::InvalidArgument, "more than 10^6 tuples for an exhaustive check");
    }
    for (const auto& a : sets) {
        std::vector<std::uint64_t> next;
        next.reserve(sums.size() * a.size());
        for (auto s : sums)
            for (auto v : a) next.push_back(s + v);
        sums = std::move(next);
    }
    std::sort(sums.begin(), sums.end());
    for (std::size_t i = 1; i < sums.size(); ++i)
        if (static_cast<double>(sums[i] - sums[i - 1]) < M) return false;
    return true;
}

bool property_A_certificate(const std::vector<std::vector<std::uint64_t>>& sets, double M) {
    long double spread = 0;
    for (const auto& a : sets) {
        if (a.size() >= 2) {
            std::uint64_t g = 0;
            for (auto v : a) g = std::gcd(g, v);
            if (static_cast<long double>(g) - spread < M) return false;
        }
        if (!a.empty()) {
            const auto [mn, mx] = std::minmax_element(a.begin(), a.end());
            spread += static_cast<long double>(*mx - *mn);
        }
    }
    return true;
}

bool check_property_A(const std::vector<std::vector<std::uint64_t>>& sets, double M) {
    long double total = 1;
    for (const auto& a : sets) total *= static_cast<long double>(a.size());
    if (total <= static_cast<long double>(kMaxSetSize)) return property_A_exhaustive(sets, M);
    return property_A_certificate(sets, M);
}

namespace {

/// Per-window pair-search results, computed on demand.
class WindowCache {
public:
    WindowCache(const ChebyshevContext& ctx, const ConstructionParams& p) : ctx_(ctx), p_(p) {}

    const LemmaFiveResult& at(int n) {
        auto it = cache_.find(n);
        if (it == cache_.end()) it = cache_.emplace(n, lemma5_search(ctx_, n, p_.epsilon, p_.delta, p_.base)).first;
        return it->second;
    }

private:
    const ChebyshevContext& ctx_;
    const ConstructionParams& p_;
    std::map<int, LemmaFiveResult> cache_;
};

std::vector<std::vector<std::uint64_t>> all_tuples(const ASets& a) {
    std::vector<std::vector<std::uint64_t>> out{{}};
    for (const auto& set : a.sets) {
        std::vector<std::vector<std::uint64_t>> next;
        for (const auto& t : out)
            for (auto v : set) {
                next.push_back(t);
                next.back().push_back(v);
            }
        out = std::move(next);
    }
    return out;
}

}  // namespace

RichterConstruction construct_richter_pair(const ChebyshevContext& ctx, const ConstructionParams& params) {
    params.validate();
    const int k = params.k;
    const double b = params.base;
    WindowCache windows(ctx, params);

    for (int x0 = params.x0;; ++x0) {
        RichterConstruction rc;
        rc.params = params;
        rc.a_sets = build_A_sets(k, params.separation(), x0, params.mass);
        std::uint64_t top = 0;
        long double tuple_count = 1;
        for (const auto& a : rc.a_sets.sets) {
            top += a.back();
            tuple_count *= static_cast<long double>(a.size());
        }
        if (std::pow(b, static_cast<double>(top + k) + params.delta) >= static_cast<double>(ctx.capacity()) + 1)
            fail(ErrorKind::CapacityExceeded,
                 "construction needs windows up to " + std::to_string(b) + "^" + std::to_string(top + k) +
                     ", past capacity " + std::to_string(ctx.capacity()));
        if (tuple_count > kMaxTuples) fail(ErrorKind::ConstructionInfeasible, "too many A-set tuples");
        const auto tuples = all_tuples(rc.a_sets);

        // every window a P or Q set can come from
        std::vector<int> needed;
        for (const auto& a : rc.a_sets.sets)
            for (auto v : a) needed.push_back(static_cast<int>(v));
        for (const auto& m : tuples) {
            const auto sigma = static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
            for (int n = sigma - 1; n <= sigma + k - 1; ++n) needed.push_back(n);
        }
        std::sort(needed.begin(), needed.end());
        needed.erase(std::unique(needed.begin(), needed.end()), needed.end());

        bool ok = true;
        double d_lemma5 = 1;
        try {
            for (int n : needed) {
                rc.lemma5.push_back(windows.at(n));
                d_lemma5 = std::min(d_lemma5, rc.lemma5.back().D);
            }
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::NoPairFound) throw;
            ok = false;
        }
        if (!ok) continue;
        auto quota = [&](double n) { return static_cast<std::size_t>(std::floor(rc.D * std::pow(b, n) / n)); };

        auto xset_for = [&](const std::vector<std::uint64_t>& m) {
            std::vector<int> ns;
            for (auto v : m) ns.push_back(static_cast<int>(v));
            const auto sigma = static_cast<int>(std::accumulate(m.begin(), m.end(), std::uint64_t{0}));
            for (int n = sigma - 1; n <= sigma + k - 1; ++n) ns.push_back(n);
            std::vector<double> xs;
            for (int n : ns) {
                const auto& w = windows.at(n);
                const double thr = rc.D * std::pow(b, n) / n;
                for (std::size_t g = 0; g < w.profile.size(); ++g)
                    if (static_cast<double>(w.profile[g]) >= thr) xs.push_back(n + static_cast<double>(g) * w.step);
            }
            return xs;
        };

        // Any D below the searched value keeps the count bound, and a smaller D
        // admits more grid points into Xset; step down until every tuple has a
        // selection or some A-set window loses its last prime.
        std::vector<Lemma6Selection> selections;
        for (int j = 0; selections.empty(); ++j) {
            rc.D = d_lemma5 * std::pow(2.0, -j / 4.0);
            bool quotas = true;
            for (const auto& a : rc.a_sets.sets)
                for (auto v : a) quotas = quotas && quota(static_cast<double>(v)) >= 1;
            if (!quotas) break;
            try {
                for (const auto& m : tuples)
                    selections.push_back(
                        lemma6_select(xset_for(m), params.epsilon, k, std::vector<int>(m.begin(), m.end())));
            } catch (const Error& e) {
                if (e.kind() != ErrorKind::SelectionFailed) throw;
                selections.clear();
            }
        }
        if (selections.empty()) continue;
        rc.D_lemma5 = d_lemma5;

        for (std::size_t ti = 0; ti < tuples.size(); ++ti) {
            const auto& m = tuples[ti];
            const auto& sel = selections[ti];
            TupleReport rep;
            rep.m = m;
            rc.within_guarantee = rc.within_guarantee && sel.within_guarantee;
            rep.zeta = sel.z;
            rep.zetas = sel.zs;

            std::vector<std::vector<Ideal>> P;
            for (int i = 0; i < k; ++i) {
                const auto q = quota(std::floor(sel.zs[i]));
                P.push_back(smallest_primes(ctx, sel.zs[i], params.delta, b, q));
                rep.window_sizes.push_back(q);
            }
            std::vector<Ideal> products{Ideal(ctx.field().fingerprint())};
            for (const auto& Pi : P) {
                std::vector<Ideal> next;
                next.reserve(products.size() * Pi.size());
                for (const auto& x : products)
                    for (const auto& p : Pi) next.push_back(multiply(x, p));
                products = std::move(next);
            }
            std::sort(products.begin(), products.end());
            rep.products = products.size();
            rep.q_pool = quota(std::floor(sel.z));
            if (rep.q_pool < products.size())
                fail(ErrorKind::ConstructionInfeasible, "P_zeta holds " + std::to_string(rep.q_pool) +
                                                            " primes but the tuple has " +
                                                            std::to_string(products.size()) + " products");
            const auto Q = smallest_primes(ctx, sel.z, params.delta, b, products.size());
            for (std::size_t i = 0; i < products.size(); ++i) {
                rc.pair.S1.push_back(Q[i]);
                rc.pair.S2.push_back(std::move(products[i]));
            }
            rc.tuples.push_back(std::move(rep));
        }
        return rc;
    }
}

RichterConstruction construct_richter_pair(const FieldSpec& field, const ConstructionParams& params) {
    params.validate();
    return construct_richter_pair(ChebyshevContext(field, params.capacity), params);
}

RichterVerification verify_conditions(const FieldSpec& field, const RichterPair& pair, double eta, int k) {
    RichterVerification v;
    v.i = !pair.S1.empty() && std::all_of(pair.S1.begin(), pair.S1.end(), [](const Ideal& p) { return p.is_prime(); }) &&
          std::all_of(pair.S2.begin(), pair.S2.end(),
                      [k](const Ideal& m) { return m.omega() == static_cast<unsigned>(k); });
    v.ii = pair.S1.size() == pair.S2.size();
    for (std::size_t i = 0; v.ii && i < pair.S1.size(); ++i) {
        const double np = static_cast<double>(pair.S1[i].norm()), nm = static_cast<double>(pair.S2[i].norm());
        v.ii = (1 - eta) * np <= nm && nm <= (1 + eta) * np;
    }
    v.iii_S1 = log_average_phi(IdealSet(field, pair.S1));
    v.iii_S2 = log_average_phi(IdealSet(field, pair.S2));
    return v;
}

MassChoice choose_mass(const ChebyshevContext& ctx, ConstructionParams params, int max_levels) {
    params.validate();
    std::optional<MassChoice> last;
    for (int level = 0; level <= max_levels; ++level) {
        params.mass = 0.05 * level;
        MassChoice c;
        c.mass = params.mass;
        try {
            c.construction = construct_richter_pair(ctx, params);
        } catch (const Error& e) {
            if (e.kind() != ErrorKind::CapacityExceeded && e.kind() != ErrorKind::ConstructionInfeasible) throw;
            break;
        }
        c.verification = verify_conditions(ctx.field(), c.construction.pair, params.eta, params.k);
        c.reached_eta = c.verification.iii_pass(params.eta);
        last = std::move(c);
        if (last->reached_eta) break;
    }
    if (!last) fail(ErrorKind::ConstructionInfeasible, "no mass level fits in capacity");
    return std::move(*last);
}

}  // namespace landau
