#pragma once

#include <complex>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "landau/sieve.hpp"

namespace landau {

using Complex = std::complex<double>;

/// e(y) = exp(2 pi i y).
Complex unit_phase(double y);
/// e(r/q) with exact values at the quarter turns.
Complex unit_phase(std::uint64_t r, std::uint64_t q);

/// Per-norm aggregates of an enumeration, enough for every statistic here.
/// Built once by a parallel fold; all integer results are exact.
class NormProfile {
public:
    explicit NormProfile(const IdealEnumeration& e);

    const FieldSpec& field() const noexcept { return field_; }
    Norm bound() const noexcept { return bound_; }
    int degree() const noexcept { return field_.degree(); }

    /// N(x): ideals with norm <= x.
    std::uint64_t count(double x) const;
    /// sum of lambda over N(m) <= x.
    std::int64_t liouville_sum(double x) const;
    /// sum of mu over N(m) <= x.
    std::int64_t mertens_inclusive(double x) const;
    /// sum of mu over N(m) < x.
    std::int64_t mertens(double x) const;
    /// Prime ideals with norm <= x.
    std::uint64_t prime_count(double x) const;
    /// Ideals with N(m) <= x grouped by Omega.
    std::vector<std::uint64_t> omega_histogram(double x) const;
    /// Same for the whole enumeration.
    const std::vector<std::uint64_t>& omega_histogram() const noexcept { return hist_; }

    const std::vector<std::uint32_t>& phi() const noexcept { return phi_; }

private:
    Norm clamp(double x) const;

    FieldSpec field_;
    Norm bound_;
    std::vector<std::uint32_t> phi_;         // ideals of norm n
    std::vector<std::uint64_t> count_cum_;   // N(n)
    std::vector<std::int64_t> lambda_cum_;
    std::vector<std::int64_t> mu_cum_;
    std::vector<std::uint64_t> prime_cum_;
    std::vector<std::uint64_t> hist_;
    const IdealEnumeration* e_;
};

std::uint64_t count_ideals(const FieldSpec& field, Norm x);

struct DensityFit {
    double c_hat = 0;
    std::vector<std::pair<double, std::uint64_t>> grid;  // (x, N(x)), x increasing
    double C = 0;                                        // fitted on the lower half of the grid
    bool residual_exponent_ok = false;
};

DensityFit estimate_density(const NormProfile& prof);
DensityFit estimate_density(const FieldSpec& field, Norm X);

enum class SummaryKind { Count, L, M, PiK, ExpSumReal, ExpSumImag, Weyl };
std::string_view to_string(SummaryKind k);
SummaryKind parse_summary_kind(std::string_view s);

struct SummarySeries {
    std::vector<double> xs;
    std::vector<double> values;
    SummaryKind kind = SummaryKind::Count;
};

/// Powers of two up to X, then X itself if it is not one.
std::vector<Norm> dyadic_points(Norm X);

struct SummaryParams {
    std::uint64_t a = 1;  // exp sums: e(a Omega / q)
    std::uint64_t q = 2;
    double alpha = 0;     // Weyl: |sum e(alpha Omega)|
};

/// M uses N(m) < x; every other kind uses N(m) <= x.
SummarySeries summatory(const NormProfile& prof, SummaryKind kind, const SummaryParams& params = {});
SummarySeries summatory(const FieldSpec& field, Norm X, SummaryKind kind, const SummaryParams& params = {});

Complex exp_sum(const NormProfile& prof, std::uint64_t a, std::uint64_t q);
Complex exp_sum(const FieldSpec& field, Norm X, std::uint64_t a, std::uint64_t q);
Complex weyl_sum(const NormProfile& prof, double alpha);
Complex weyl_sum(const FieldSpec& field, Norm X, double alpha);

struct ResidueHistogram {
    std::vector<std::uint64_t> bins;
    double parseval_gap = 0;
    double lhs = 0;
    double rhs = 0;
};

/// Counts of Omega mod q, and both sides of the Parseval identity
/// normalized by the number of ideals.
ResidueHistogram residue_histogram(const NormProfile& prof, std::uint64_t q);
ResidueHistogram residue_histogram(const FieldSpec& field, Norm X, std::uint64_t q);

enum class GFunction { One, InvT, InvTPow, LogT };
std::string_view to_string(GFunction g);
/// Accepts "1", "1/t", "1/t^(1-1/d)", "log" and the enum names; throws UnknownFunctionId.
GFunction parse_g_function(std::string_view id);

struct AbelEstimate {
    double direct = 0;
    double formula = 0;
    double bound = 0;
};

/// direct = sum g(N(m)); formula = c g(1) + c int_1^X g; bound from the density fit.
AbelEstimate abel_estimate(const NormProfile& prof, const DensityFit& fit, GFunction g);
AbelEstimate abel_estimate(const FieldSpec& field, Norm X, GFunction g);

double prime_reciprocal_sum(const PrimeIdealTable& table, Norm X);
double prime_reciprocal_sum(const FieldSpec& field, Norm X);

namespace serial {
/// Record-by-record complex summation; the reference for the histogram route.
Complex weyl_sum(const IdealEnumeration& e, double alpha);
Complex exp_sum(const IdealEnumeration& e, std::uint64_t a, std::uint64_t q);
std::int64_t liouville_sum(const IdealEnumeration& e, double x);
std::int64_t mertens(const IdealEnumeration& e, double x);
}  // namespace serial

}  // namespace landau
