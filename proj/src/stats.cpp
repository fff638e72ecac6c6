#include "landau/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

#include <omp.h>

#include "landau/error.hpp"

namespace landau {

Complex unit_phase(double y) {
    const double frac = y - std::floor(y);
    return std::polar(1.0, 2 * std::numbers::pi * frac);
}

Complex unit_phase(std::uint64_t r, std::uint64_t q) {
    r %= q;
    if (r == 0) return {1, 0};
    if (4 * r == q) return {0, 1};
    if (2 * r == q) return {-1, 0};
    if (4 * r == 3 * q) return {0, -1};
    return std::polar(1.0, 2 * std::numbers::pi * static_cast<double>(r) / static_cast<double>(q));
}

NormProfile::NormProfile(const IdealEnumeration& e) : field_(e.field()), bound_(e.bound()), e_(&e) {
    const Norm X = bound_;
    phi_.assign(X + 1, 0);
    std::vector<std::int32_t> lambda_at(X + 1, 0), mu_at(X + 1, 0);
    const auto& recs = e.records();

    // Chunks are norm ranges, so each norm is written by one thread only.
    const std::size_t chunks = static_cast<std::size_t>(std::max(1, omp_get_max_threads())) * 8;
    std::vector<std::vector<std::uint64_t>> part_hist(chunks);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t c = 0; c < chunks; ++c) {
        const Norm lo = 1 + X * c / chunks;
        const Norm hi = X * (c + 1) / chunks;  // inclusive
        auto first = std::lower_bound(recs.begin(), recs.end(), lo,
                                      [](const IdealRecord& r, Norm v) { return r.norm < v; });
        auto& h = part_hist[c];
        for (auto it = first; it != recs.end() && it->norm <= hi; ++it) {
            ++phi_[it->norm];
            lambda_at[it->norm] += it->lambda;
            mu_at[it->norm] += it->mu;
            if (it->omega >= h.size()) h.resize(it->omega + 1, 0);
            ++h[it->omega];
        }
    }
    for (const auto& h : part_hist) {
        if (h.size() > hist_.size()) hist_.resize(h.size(), 0);
        for (std::size_t w = 0; w < h.size(); ++w) hist_[w] += h[w];
    }

    count_cum_.assign(X + 1, 0);
    lambda_cum_.assign(X + 1, 0);
    mu_cum_.assign(X + 1, 0);
    prime_cum_.assign(X + 1, 0);
    for (Norm n = 1; n <= X; ++n) {
        count_cum_[n] = count_cum_[n - 1] + phi_[n];
        lambda_cum_[n] = lambda_cum_[n - 1] + lambda_at[n];
        mu_cum_[n] = mu_cum_[n - 1] + mu_at[n];
    }
    std::vector<std::uint32_t> primes_at(X + 1, 0);
    for (const auto& p : e.table().entries)
        if (p.norm <= X) ++primes_at[p.norm];
    for (Norm n = 1; n <= X; ++n) prime_cum_[n] = prime_cum_[n - 1] + primes_at[n];
}

Norm NormProfile::clamp(double x) const {
    if (x < 1) return 0;
    if (x > static_cast<double>(bound_)) {
        if (x >= static_cast<double>(bound_) + 1)
            fail(ErrorKind::CapacityExceeded, "x = " + std::to_string(x) + " beyond the enumerated bound");
        return bound_;
    }
    return static_cast<Norm>(std::floor(x));
}

std::uint64_t NormProfile::count(double x) const { return count_cum_[clamp(x)]; }
std::int64_t NormProfile::liouville_sum(double x) const { return lambda_cum_[clamp(x)]; }
std::int64_t NormProfile::mertens_inclusive(double x) const { return mu_cum_[clamp(x)]; }
std::uint64_t NormProfile::prime_count(double x) const { return prime_cum_[clamp(x)]; }

std::int64_t NormProfile::mertens(double x) const {
    // N(m) < x: for integral x drop the norm-x ideals
    const double below = std::ceil(x) - 1;
    return below < 1 ? 0 : mu_cum_[clamp(below)];
}

std::vector<std::uint64_t> NormProfile::omega_histogram(double x) const {
    const Norm n = clamp(x);
    if (n == bound_) return hist_;
    std::vector<std::uint64_t> h;
    const std::size_t stop = count_cum_[n];
    for (std::size_t i = 0; i < stop; ++i) {
        const auto w = (*e_)[i].omega;
        if (w >= h.size()) h.resize(w + 1, 0);
        ++h[w];
    }
    return h;
}

std::uint64_t count_ideals(const FieldSpec& field, Norm x) {
    const auto phi = ideal_count_by_norm(field, x);
    return std::accumulate(phi.begin(), phi.end(), std::uint64_t{0});
}

DensityFit estimate_density(const NormProfile& prof) {
    const Norm X = prof.bound();
    if (X < 1024) fail(ErrorKind::InvalidArgument, "density fit needs X >= 2^10");
    const double s = 1.0 - 1.0 / prof.degree();
    DensityFit fit;
    fit.c_hat = static_cast<double>(prof.count(static_cast<double>(X))) / static_cast<double>(X);
    for (int j = 10; j >= 0; --j) {
        const double x = static_cast<double>(X) / std::ldexp(1.0, j);
        fit.grid.emplace_back(x, prof.count(x));
    }
    auto residual = [&](const std::pair<double, std::uint64_t>& g) {
        return std::abs(static_cast<double>(g.second) - fit.c_hat * g.first) / std::pow(g.first, s);
    };
    const std::size_t lower = (fit.grid.size() + 1) / 2;
    for (std::size_t i = 0; i < lower; ++i) fit.C = std::max(fit.C, residual(fit.grid[i]));
    fit.residual_exponent_ok = true;
    for (std::size_t i = lower; i < fit.grid.size(); ++i)
        if (residual(fit.grid[i]) > fit.C) fit.residual_exponent_ok = false;
    return fit;
}

DensityFit estimate_density(const FieldSpec& field, Norm X) {
    const auto e = ideals_up_to(field, X);
    return estimate_density(NormProfile(e));
}

std::string_view to_string(SummaryKind k) {
    switch (k) {
        case SummaryKind::Count: return "count";
        case SummaryKind::L: return "L";
        case SummaryKind::M: return "M";
        case SummaryKind::PiK: return "pi_K";
        case SummaryKind::ExpSumReal: return "exp_sum_real";
        case SummaryKind::ExpSumImag: return "exp_sum_imag";
        case SummaryKind::Weyl: return "weyl";
    }
    return "?";
}

SummaryKind parse_summary_kind(std::string_view s) {
    for (auto k : {SummaryKind::Count, SummaryKind::L, SummaryKind::M, SummaryKind::PiK, SummaryKind::ExpSumReal,
                   SummaryKind::ExpSumImag, SummaryKind::Weyl})
        if (s == to_string(k)) return k;
    if (s == "pi" || s == "piK") return SummaryKind::PiK;
    fail(ErrorKind::InvalidArgument, "unknown summary kind '" + std::string(s) + "'");
}

std::vector<Norm> dyadic_points(Norm X) {
    std::vector<Norm> out;
    for (Norm x = 2; x <= X; x *= 2) {
        out.push_back(x);
        if (x > X / 2) break;
    }
    if (out.empty() || out.back() != X) out.push_back(X);
    return out;
}

namespace {

Complex exp_sum_from_hist(const std::vector<std::uint64_t>& hist, std::uint64_t a, std::uint64_t q) {
    if (q == 0) fail(ErrorKind::InvalidArgument, "q must be at least 1");
    if (a >= q) fail(ErrorKind::InvalidArgument, "a must satisfy 0 <= a < q");
    std::vector<std::uint64_t> by_residue(q, 0);
    for (std::size_t w = 0; w < hist.size(); ++w) by_residue[(a * w) % q] += hist[w];
    Complex acc = 0;
    for (std::uint64_t r = 0; r < q; ++r)
        if (by_residue[r]) acc += static_cast<double>(by_residue[r]) * unit_phase(r, q);
    return acc;
}

}  // namespace

Complex exp_sum(const NormProfile& prof, std::uint64_t a, std::uint64_t q) {
    return exp_sum_from_hist(prof.omega_histogram(), a, q);
}

Complex exp_sum(const FieldSpec& field, Norm X, std::uint64_t a, std::uint64_t q) {
    const auto e = ideals_up_to(field, X);
    return exp_sum(NormProfile(e), a, q);
}

namespace {

Complex weyl_from_hist(const std::vector<std::uint64_t>& hist, double alpha) {
    Complex acc = 0;
    for (std::size_t w = 0; w < hist.size(); ++w)
        if (hist[w]) acc += static_cast<double>(hist[w]) * unit_phase(alpha * static_cast<double>(w));
    return acc;
}

}  // namespace

Complex weyl_sum(const NormProfile& prof, double alpha) { return weyl_from_hist(prof.omega_histogram(), alpha); }

Complex weyl_sum(const FieldSpec& field, Norm X, double alpha) {
    const auto e = ideals_up_to(field, X);
    return weyl_sum(NormProfile(e), alpha);
}

SummarySeries summatory(const NormProfile& prof, SummaryKind kind, const SummaryParams& params) {
    if (prof.bound() < 2) fail(ErrorKind::InvalidArgument, "summatory needs X >= 2");
    SummarySeries s;
    s.kind = kind;
    for (Norm x : dyadic_points(prof.bound())) {
        const double xd = static_cast<double>(x);
        double v = 0;
        switch (kind) {
            case SummaryKind::Count: v = static_cast<double>(prof.count(xd)); break;
            case SummaryKind::L: v = static_cast<double>(prof.liouville_sum(xd)); break;
            case SummaryKind::M: v = static_cast<double>(prof.mertens(xd)); break;
            case SummaryKind::PiK: v = static_cast<double>(prof.prime_count(xd)); break;
            case SummaryKind::ExpSumReal: v = exp_sum_from_hist(prof.omega_histogram(xd), params.a, params.q).real(); break;
            case SummaryKind::ExpSumImag: v = exp_sum_from_hist(prof.omega_histogram(xd), params.a, params.q).imag(); break;
            case SummaryKind::Weyl: v = std::abs(weyl_from_hist(prof.omega_histogram(xd), params.alpha)); break;
        }
        s.xs.push_back(xd);
        s.values.push_back(v);
    }
    return s;
}

SummarySeries summatory(const FieldSpec& field, Norm X, SummaryKind kind, const SummaryParams& params) {
    const auto e = ideals_up_to(field, X);
    return summatory(NormProfile(e), kind, params);
}


ResidueHistogram residue_histogram(const NormProfile& prof, std::uint64_t q) {
    if (q == 0) fail(ErrorKind::InvalidArgument, "q must be at least 1");
    const auto& hist = prof.omega_histogram();
    ResidueHistogram out;
    out.bins.assign(q, 0);
    for (std::size_t w = 0; w < hist.size(); ++w) out.bins[w % q] += hist[w];
    double n = 0;
    for (auto b : out.bins) n += static_cast<double>(b);
    const double qd = static_cast<double>(q);
    for (auto b : out.bins) {
        const double t = static_cast<double>(b) / n - 1.0 / qd;
        out.lhs += t * t;
    }
    for (std::uint64_t l = 1; l < q; ++l) out.rhs += std::norm(exp_sum_from_hist(hist, l, q) / n);
    out.rhs /= qd;
    out.parseval_gap = std::abs(out.lhs - out.rhs);
    return out;
}

ResidueHistogram residue_histogram(const FieldSpec& field, Norm X, std::uint64_t q) {
    const auto e = ideals_up_to(field, X);
    return residue_histogram(NormProfile(e), q);
}

std::string_view to_string(GFunction g) {
    switch (g) {
        case GFunction::One: return "1";
        case GFunction::InvT: return "1/t";
        case GFunction::InvTPow: return "1/t^(1-1/d)";
        case GFunction::LogT: return "log";
    }
    return "?";
}

GFunction parse_g_function(std::string_view id) {
    if (id == "1" || id == "one") return GFunction::One;
    if (id == "1/t" || id == "inv") return GFunction::InvT;
    if (id == "1/t^(1-1/d)" || id == "invpow") return GFunction::InvTPow;
    if (id == "log" || id == "log t" || id == "logt") return GFunction::LogT;
    fail(ErrorKind::UnknownFunctionId, "unknown test function '" + std::string(id) + "'");
}

AbelEstimate abel_estimate(const NormProfile& prof, const DensityFit& fit, GFunction g) {
    const double X = static_cast<double>(prof.bound());
    const double s = 1.0 - 1.0 / prof.degree();  // error exponent
    const double logX = std::log(X);
    auto eval = [&](double t) {
        switch (g) {
            case GFunction::One: return 1.0;
            case GFunction::InvT: return 1.0 / t;
            case GFunction::InvTPow: return std::pow(t, -s);
            case GFunction::LogT: return std::log(t);
        }
        return 0.0;
    };
    // int_1^X t^p dt
    auto power_integral = [&](double p) {
        return std::abs(p + 1) < 1e-15 ? logX : (std::pow(X, p + 1) - 1) / (p + 1);
    };
    double integral = 0, variation = 0;
    switch (g) {
        case GFunction::One:
            integral = X - 1;
            break;
        case GFunction::InvT:
            integral = logX;
            variation = power_integral(s - 2);
            break;
        case GFunction::InvTPow:
            integral = power_integral(-s);
            variation = s * logX;
            break;
        case GFunction::LogT:
            integral = X * logX - X + 1;
            variation = power_integral(s - 1);
            break;
    }
    AbelEstimate out;
    const auto& phi = prof.phi();
    for (std::size_t n = 1; n < phi.size(); ++n)
        if (phi[n]) out.direct += phi[n] * eval(static_cast<double>(n));
    out.formula = fit.c_hat * eval(1.0) + fit.c_hat * integral;
    out.bound = fit.C * (std::abs(eval(X)) * std::pow(X, s) + variation);
    return out;
}

AbelEstimate abel_estimate(const FieldSpec& field, Norm X, GFunction g) {
    const auto e = ideals_up_to(field, X);
    NormProfile prof(e);
    return abel_estimate(prof, estimate_density(prof), g);
}

double prime_reciprocal_sum(const PrimeIdealTable& table, Norm X) {
    double s = 0;
    for (const auto& p : table.entries)
        if (p.norm <= X) s += 1.0 / static_cast<double>(p.norm);
    return s;
}

double prime_reciprocal_sum(const FieldSpec& field, Norm X) {
    if (X < 2) return 0;
    return prime_reciprocal_sum(prime_ideals_up_to(field, X), X);
}

namespace serial {

Complex weyl_sum(const IdealEnumeration& e, double alpha) {
    Complex acc = 0;
    for (const auto& r : e.records()) acc += unit_phase(alpha * r.omega);
    return acc;
}

Complex exp_sum(const IdealEnumeration& e, std::uint64_t a, std::uint64_t q) {
    Complex acc = 0;
    for (const auto& r : e.records()) acc += unit_phase(a * r.omega, q);
    return acc;
}

std::int64_t liouville_sum(const IdealEnumeration& e, double x) {
    std::int64_t s = 0;
    for (const auto& r : e.records())
        if (static_cast<double>(r.norm) <= x) s += r.lambda;
    return s;
}

std::int64_t mertens(const IdealEnumeration& e, double x) {
    std::int64_t s = 0;
    for (const auto& r : e.records())
        if (static_cast<double>(r.norm) < x) s += r.mu;
    return s;
}

}  // namespace serial

}  // namespace landau
