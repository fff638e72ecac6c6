#include "landau/numberfield.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>

#include "landau/error.hpp"

namespace landau {

namespace {

constexpr std::uint64_t kSmallPrimes[] = {2,  3,  5,  7,  11, 13, 17, 19, 23, 29, 31, 37, 41,
                                          43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97};

// |a0| above this skips the divisor scan for rational roots (warning path).
constexpr std::uint64_t kRootScanLimit = 100'000'000'000'000ULL;

std::uint64_t mix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

BigInt bareiss_det(std::vector<std::vector<BigInt>> a) {
    const std::size_t n = a.size();
    if (n == 0) return 1;
    BigInt prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t r = k + 1;
            while (r < n && a[r][k] == 0) ++r;
            if (r == n) return 0;
            std::swap(a[k], a[r]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    return sign * a[n - 1][n - 1];
}

BigInt eval(std::span<const std::int64_t> coeffs, const BigInt& x) {
    BigInt acc = 0;
    for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + coeffs[i];
    return acc;
}

bool has_integer_root(std::span<const std::int64_t> coeffs) {
    const std::int64_t a0 = coeffs.front();
    if (a0 == 0) return true;
    const std::uint64_t mag = a0 < 0 ? 0 - static_cast<std::uint64_t>(a0) : static_cast<std::uint64_t>(a0);
    if (mag > kRootScanLimit) return false;
    auto test = [&](std::uint64_t d) {
        return eval(coeffs, BigInt(d)) == 0 || eval(coeffs, -BigInt(d)) == 0;
    };
    for (std::uint64_t d = 1; d * d <= mag; ++d) {
        if (mag % d != 0) continue;
        if (test(d) || test(mag / d)) return true;
    }
    return false;
}

// Polynomial product with coefficients reduced modulo `m` (m may be p^2).
fp::Coeffs mul_mod(const fp::Coeffs& a, const fp::Coeffs& b, const fp::Zp& m) {
    if (a.empty() || b.empty()) return {};
    fp::Coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = m.add(out[i + j], m.mul(a[i] % m.p, b[j] % m.p));
    return out;
}

}  // namespace

Norm checked_mul(Norm a, Norm b) {
    Norm out;
    if (__builtin_mul_overflow(a, b, &out)) fail(ErrorKind::Overflow, "norm product exceeds 64 bits");
    return out;
}

Norm checked_pow(std::uint64_t p, unsigned k) {
    Norm r = 1;
    for (unsigned i = 0; i < k; ++i) r = checked_mul(r, p);
    return r;
}

BigInt polynomial_discriminant(std::span<const std::int64_t> coeffs) {
    const std::size_t n = coeffs.size() - 1;  // degree of f
    if (n == 0) return 0;
    if (n == 1) return 1;
    std::vector<std::int64_t> deriv(n);
    for (std::size_t i = 1; i <= n; ++i) deriv[i - 1] = coeffs[i] * static_cast<std::int64_t>(i);
    const std::size_t m = n - 1;
    const std::size_t size = n + m;
    std::vector<std::vector<BigInt>> syl(size, std::vector<BigInt>(size, 0));
    // rows hold coefficients highest degree first
    for (std::size_t r = 0; r < m; ++r)
        for (std::size_t j = 0; j <= n; ++j) syl[r][r + j] = coeffs[n - j];
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t j = 0; j <= m; ++j) syl[m + r][r + j] = deriv[m - j];
    BigInt res = bareiss_det(std::move(syl));
    if ((n * (n - 1) / 2) % 2 == 1) res = -res;
    return res / coeffs[n];
}

FieldSpec parse_field(std::span<const std::int64_t> coeffs) {
    if (coeffs.empty()) fail(ErrorKind::InvalidArgument, "empty coefficient list");
    if (coeffs.back() != 1) fail(ErrorKind::NonMonic, "leading coefficient must be 1");
    const int d = static_cast<int>(coeffs.size()) - 1;
    if (d < 1) fail(ErrorKind::InvalidArgument, "degree must be at least 1");
    if (d > kMaxDegree) fail(ErrorKind::InvalidArgument, "degree above " + std::to_string(kMaxDegree) + " is not supported");

    FieldSpec out;
    out.coeffs_.assign(coeffs.begin(), coeffs.end());
    out.disc_ = polynomial_discriminant(coeffs);
    if (out.disc_ == 0) fail(ErrorKind::ZeroDiscriminant, "defining polynomial has a repeated root");

    if (d > 1) {
        for (std::uint64_t p : kSmallPrimes) {
            if (out.disc_divisible_by(p)) continue;
            if (fp::is_irreducible(fp::reduce(coeffs, p), fp::Zp{p})) {
                out.witness_ = p;
                break;
            }
        }
        if (!out.witness_ && has_integer_root(coeffs))
            fail(ErrorKind::RationalRootFound, "defining polynomial has a rational root");
    }

    std::uint64_t h = mix(coeffs.size());
    for (std::int64_t c : coeffs) h = mix(h ^ static_cast<std::uint64_t>(c));
    out.fingerprint_ = h;
    return out;
}

FieldSpec parse_field(std::initializer_list<std::int64_t> coeffs) {
    return parse_field(std::span<const std::int64_t>(coeffs.begin(), coeffs.size()));
}

FieldSpec parse_field(std::string_view text) {
    std::vector<std::int64_t> coeffs;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t end = text.find(',', pos);
        if (end == std::string_view::npos) end = text.size();
        std::string_view tok = text.substr(pos, end - pos);
        while (!tok.empty() && tok.front() == ' ') tok.remove_prefix(1);
        while (!tok.empty() && tok.back() == ' ') tok.remove_suffix(1);
        if (!tok.empty() && tok.front() == '+') tok.remove_prefix(1);
        std::int64_t v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (tok.empty() || ec != std::errc{} || ptr != tok.data() + tok.size())
            fail(ErrorKind::InvalidArgument, "bad coefficient '" + std::string(tok) + "' in field spec");
        coeffs.push_back(v);
        pos = end + 1;
    }
    return parse_field(std::span<const std::int64_t>(coeffs));
}

bool FieldSpec::disc_divisible_by(std::uint64_t p) const {
    return disc_ % p == 0;
}

std::string FieldSpec::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(coeffs_[i]);
    }
    return s;
}

std::vector<fp::Factor> factor_poly_mod_p(std::span<const std::int64_t> coeffs, std::uint64_t p) {
    fp::Zp z{p};
    fp::Coeffs f = fp::reduce(coeffs, p);
    if (f.empty()) fail(ErrorKind::InvalidArgument, "polynomial vanishes modulo p");
    return fp::factor(f, z);
}

bool is_regular_prime(const FieldSpec& field, std::uint64_t p) {
    if (!field.disc_divisible_by(p)) return true;
    const auto factors = factor_poly_mod_p(field.coeffs(), p);

    // f = g*h + p*F with g = prod g_i, h = prod g_i^(e_i - 1); Z[theta] is
    // p-maximal iff gcd(F mod p, g, h) = 1.
    if (p > 0xffffffffULL) fail(ErrorKind::Overflow, "Dedekind test needs p^2 < 2^64");
    const fp::Zp zp{p};
    const fp::Zp zp2{p * p};
    fp::Coeffs g{1}, h{1};
    for (const auto& fac : factors) {
        g = mul_mod(g, fac.poly, zp2);
        for (unsigned i = 1; i < fac.multiplicity; ++i) h = mul_mod(h, fac.poly, zp2);
    }
    fp::Coeffs gh = mul_mod(g, h, zp2);
    const auto& f = field.coeffs();
    fp::Coeffs big_f(std::max(f.size(), gh.size()), 0);
    for (std::size_t i = 0; i < big_f.size(); ++i) {
        std::uint64_t fi = i < f.size() ? zp2.reduce(f[i]) : 0;
        std::uint64_t gi = i < gh.size() ? gh[i] : 0;
        std::uint64_t diff = zp2.sub(fi, gi);
        if (diff % p != 0) fail(ErrorKind::InvalidArgument, "internal: f != g*h mod p");
        big_f[i] = diff / p;
    }
    fp::trim(big_f);
    fp::trim(g);
    fp::trim(h);
    for (auto& c : g) c %= p;
    for (auto& c : h) c %= p;
    fp::trim(g);
    fp::trim(h);
    fp::Coeffs d = fp::gcd(fp::gcd(big_f, g, zp), h, zp);
    return fp::is_one(d);
}

namespace {

std::vector<PrimeIdeal> to_prime_ideals(std::uint64_t p, const std::vector<fp::Factor>& factors, Norm max_norm) {
    std::vector<PrimeIdeal> out;
    out.reserve(factors.size());
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const auto& fac = factors[i];
        PrimeIdeal pi;
        pi.p = p;
        pi.e = fac.multiplicity;
        pi.f = static_cast<unsigned>(fp::degree(fac.poly));
        pi.norm = checked_pow(p, pi.f);
        pi.gen_tag = fac.poly;
        pi.ordinal = static_cast<std::uint32_t>(i);
        if (pi.norm > max_norm) break;  // sorted by degree, so nothing later fits
        out.push_back(std::move(pi));
    }
    return out;
}

}  // namespace

std::vector<PrimeIdeal> factor_prime(const FieldSpec& field, std::uint64_t p) {
    if (!is_regular_prime(field, p))
        fail(ErrorKind::IrregularPrime, "p = " + std::to_string(p) + " divides the index of Z[theta]");
    return to_prime_ideals(p, factor_poly_mod_p(field.coeffs(), p), ~Norm{0});
}

std::vector<PrimeIdeal> factor_prime_bounded(const FieldSpec& field, std::uint64_t p, Norm max_norm) {
    if (p > max_norm) return {};
    if (field.disc_divisible_by(p)) {
        if (!is_regular_prime(field, p))
            fail(ErrorKind::IrregularPrime, "p = " + std::to_string(p) + " divides the index of Z[theta]");
        return to_prime_ideals(p, factor_poly_mod_p(field.coeffs(), p), max_norm);
    }
    int max_f = 0;
    for (Norm q = 1; max_f < field.degree();) {
        Norm next;
        if (__builtin_mul_overflow(q, p, &next) || next > max_norm) break;
        q = next;
        ++max_f;
    }
    fp::Zp z{p};
    return to_prime_ideals(p, fp::factor_bounded(fp::reduce(field.coeffs(), p), z, max_f), max_norm);
}

}  // namespace landau
