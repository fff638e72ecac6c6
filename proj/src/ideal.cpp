#include "landau/ideal.hpp"

#include <algorithm>

#include "landau/error.hpp"

namespace landau {

namespace {

Norm norm_of(const std::vector<IdealFactor>& fs) {
    Norm n = 1;
    for (const auto& f : fs) n = checked_mul(n, checked_pow(f.prime.norm, f.exponent));
    return n;
}

void require_same_field(const Ideal& a, const Ideal& b) {
    if (a.field_fingerprint() != b.field_fingerprint())
        fail(ErrorKind::FieldMismatch, "ideals belong to different fields");
}

// Walks two sorted factor lists in step; `pick` maps (ea, eb) to the output exponent.
template <class Pick>
std::vector<IdealFactor> merge(const Ideal& a, const Ideal& b, Pick pick) {
    std::vector<IdealFactor> out;
    const auto& fa = a.factors();
    const auto& fb = b.factors();
    std::size_t i = 0, j = 0;
    while (i < fa.size() || j < fb.size()) {
        PrimeKey key;
        unsigned ea = 0, eb = 0;
        if (j == fb.size() || (i < fa.size() && fa[i].prime < fb[j].prime)) {
            key = fa[i].prime;
            ea = fa[i++].exponent;
        } else if (i == fa.size() || fb[j].prime < fa[i].prime) {
            key = fb[j].prime;
            eb = fb[j++].exponent;
        } else {
            key = fa[i].prime;
            ea = fa[i++].exponent;
            eb = fb[j++].exponent;
        }
        const unsigned e = pick(ea, eb);
        if (e > 0) out.push_back({key, e});
    }
    return out;
}

}  // namespace

Ideal Ideal::from_factors(std::uint64_t field_fingerprint, std::vector<IdealFactor> factors) {
    std::sort(factors.begin(), factors.end());
    Ideal out(field_fingerprint);
    for (const auto& f : factors) {
        if (f.exponent == 0) continue;
        if (!out.factors_.empty() && out.factors_.back().prime == f.prime)
            out.factors_.back().exponent += f.exponent;
        else
            out.factors_.push_back(f);
    }
    out.norm_ = norm_of(out.factors_);
    return out;
}

Ideal Ideal::prime(std::uint64_t field_fingerprint, const PrimeIdeal& p, unsigned exponent) {
    return from_factors(field_fingerprint, {{p.key(), exponent}});
}

unsigned Ideal::omega() const noexcept {
    unsigned s = 0;
    for (const auto& f : factors_) s += f.exponent;
    return s;
}

unsigned Ideal::exponent_of(const PrimeKey& p) const noexcept {
    auto it = std::lower_bound(factors_.begin(), factors_.end(), p,
                               [](const IdealFactor& f, const PrimeKey& k) { return f.prime < k; });
    return it != factors_.end() && it->prime == p ? it->exponent : 0;
}

bool Ideal::divides(const Ideal& m) const noexcept {
    if (field_ != m.field_ || m.norm_ % norm_ != 0) return false;
    std::size_t j = 0;
    const auto& mf = m.factors_;
    for (const auto& f : factors_) {
        while (j < mf.size() && mf[j].prime < f.prime) ++j;
        if (j == mf.size() || !(mf[j].prime == f.prime) || mf[j].exponent < f.exponent) return false;
    }
    return true;
}

std::string Ideal::to_string() const {
    if (factors_.empty()) return "1";
    std::string s;
    for (const auto& f : factors_) {
        if (!s.empty()) s += '*';
        s += std::to_string(f.prime.p) + '_' + std::to_string(f.prime.ordinal);
        if (f.exponent != 1) s += '^' + std::to_string(f.exponent);
    }
    return s;
}

bool Ideal::operator<(const Ideal& o) const noexcept {
    if (norm_ != o.norm_) return norm_ < o.norm_;
    return factors_ < o.factors_;
}

Ideal multiply(const Ideal& a, const Ideal& b) {
    require_same_field(a, b);
    return Ideal::from_factors(a.field_fingerprint(), merge(a, b, [](unsigned x, unsigned y) { return x + y; }));
}

Ideal ideal_gcd(const Ideal& a, const Ideal& b) {
    require_same_field(a, b);
    return Ideal::from_factors(a.field_fingerprint(),
                               merge(a, b, [](unsigned x, unsigned y) { return std::min(x, y); }));
}

Ideal ideal_lcm(const Ideal& a, const Ideal& b) {
    require_same_field(a, b);
    return Ideal::from_factors(a.field_fingerprint(),
                               merge(a, b, [](unsigned x, unsigned y) { return std::max(x, y); }));
}

Ideal quotient(const Ideal& a, const Ideal& b) {
    require_same_field(a, b);
    if (!b.divides(a)) fail(ErrorKind::InvalidArgument, "quotient of non-divisible ideals");
    return Ideal::from_factors(a.field_fingerprint(), merge(a, b, [](unsigned x, unsigned y) { return x - y; }));
}

std::uint64_t phi_pair(const Ideal& a, const Ideal& b) { return ideal_gcd(a, b).norm() - 1; }

}  // namespace landau
