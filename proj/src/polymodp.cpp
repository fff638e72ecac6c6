#include "landau/polymodp.hpp"

#include <algorithm>
#include <random>

#include "landau/error.hpp"

namespace landau::fp {

std::uint64_t Zp::pow(std::uint64_t a, std::uint64_t e) const noexcept {
    std::uint64_t r = 1 % p;
    a %= p;
    while (e) {
        if (e & 1) r = mul(r, a);
        a = mul(a, a);
        e >>= 1;
    }
    return r;
}

std::uint64_t Zp::inv(std::uint64_t a) const {
    // extended Euclid on signed 128-bit to stay clear of overflow for p near 2^63
    __int128 t = 0, new_t = 1;
    __int128 r = p, new_r = a % p;
    while (new_r != 0) {
        __int128 q = r / new_r;
        __int128 tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) fail(ErrorKind::InvalidArgument, "element not invertible modulo p");
    if (t < 0) t += p;
    return static_cast<std::uint64_t>(t);
}

std::uint64_t Zp::reduce(std::int64_t v) const noexcept {
    std::int64_t m = v % static_cast<std::int64_t>(p);
    if (m < 0) m += static_cast<std::int64_t>(p);
    return static_cast<std::uint64_t>(m);
}

void trim(Coeffs& a) {
    while (!a.empty() && a.back() == 0) a.pop_back();
}

int degree(const Coeffs& a) noexcept { return static_cast<int>(a.size()) - 1; }

bool is_one(const Coeffs& a) noexcept { return a.size() == 1 && a[0] == 1; }

Coeffs reduce(std::span<const std::int64_t> coeffs, std::uint64_t p) {
    Zp z{p};
    Coeffs out(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = z.reduce(coeffs[i]);
    trim(out);
    return out;
}

Coeffs add(const Coeffs& a, const Coeffs& b, const Zp& z) {
    Coeffs out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = z.add(out[i], b[i]);
    trim(out);
    return out;
}

Coeffs sub(const Coeffs& a, const Coeffs& b, const Zp& z) {
    Coeffs out(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i];
    for (std::size_t i = 0; i < b.size(); ++i) out[i] = z.sub(out[i], b[i]);
    trim(out);
    return out;
}

Coeffs mul(const Coeffs& a, const Coeffs& b, const Zp& z) {
    if (a.empty() || b.empty()) return {};
    Coeffs out(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = z.add(out[i + j], z.mul(a[i], b[j]));
    }
    trim(out);
    return out;
}

std::pair<Coeffs, Coeffs> divmod(const Coeffs& a, const Coeffs& b, const Zp& z) {
    if (b.empty()) fail(ErrorKind::InvalidArgument, "polynomial division by zero");
    if (a.size() < b.size()) return {{}, a};
    Coeffs r = a;
    Coeffs q(a.size() - b.size() + 1, 0);
    const std::uint64_t lead_inv = z.inv(b.back());
    for (std::size_t k = q.size(); k-- > 0;) {
        const std::uint64_t c = z.mul(r[k + b.size() - 1], lead_inv);
        q[k] = c;
        if (c == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[k + j] = z.sub(r[k + j], z.mul(c, b[j]));
    }
    trim(q);
    r.resize(b.size() - 1);
    trim(r);
    return {std::move(q), std::move(r)};
}

Coeffs rem(const Coeffs& a, const Coeffs& b, const Zp& z) { return divmod(a, b, z).second; }

Coeffs quot(const Coeffs& a, const Coeffs& b, const Zp& z) { return divmod(a, b, z).first; }

Coeffs monic(const Coeffs& a, const Zp& z) {
    if (a.empty() || a.back() == 1) return a;
    const std::uint64_t li = z.inv(a.back());
    Coeffs out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = z.mul(a[i], li);
    return out;
}

Coeffs gcd(Coeffs a, Coeffs b, const Zp& z) {
    while (!b.empty()) {
        Coeffs r = rem(a, b, z);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a, z);
}

Coeffs derivative(const Coeffs& a, const Zp& z) {
    if (a.size() <= 1) return {};
    Coeffs out(a.size() - 1);
    for (std::size_t i = 1; i < a.size(); ++i) out[i - 1] = z.mul(a[i], i % z.p);
    trim(out);
    return out;
}

Coeffs mulmod(const Coeffs& a, const Coeffs& b, const Coeffs& m, const Zp& z) {
    return rem(mul(a, b, z), m, z);
}

Coeffs powmod(Coeffs base, std::uint64_t e, const Coeffs& m, const Zp& z) {
    Coeffs result = rem(Coeffs{1}, m, z);
    base = rem(base, m, z);
    while (e) {
        if (e & 1) result = mulmod(result, base, m, z);
        e >>= 1;
        if (e) base = mulmod(base, base, m, z);
    }
    return result;
}

bool canonical_less(const Coeffs& a, const Coeffs& b) noexcept {
    if (a.size() != b.size()) return a.size() < b.size();
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t seed_for(const Coeffs& f, std::uint64_t p) {
    std::uint64_t h = splitmix(p);
    for (std::uint64_t c : f) h = splitmix(h ^ c);
    return h;
}

// p-th root of a polynomial whose only nonzero coefficients sit at multiples of p.
Coeffs pth_root(const Coeffs& c, const Zp& z) {
    Coeffs out;
    for (std::size_t i = 0; i < c.size(); i += z.p) out.push_back(c[i]);
    trim(out);
    return out;
}

void squarefree_parts(const Coeffs& f, const Zp& z, unsigned scale,
                      std::vector<std::pair<Coeffs, unsigned>>& out) {
    Coeffs c = gcd(f, derivative(f, z), z);
    Coeffs w = quot(f, c, z);
    unsigned i = 1;
    while (!is_one(w)) {
        Coeffs y = gcd(w, c, z);
        Coeffs fac = quot(w, y, z);
        if (!is_one(fac)) out.emplace_back(std::move(fac), i * scale);
        w = std::move(y);
        c = quot(c, w, z);
        ++i;
    }
    if (!is_one(c)) squarefree_parts(pth_root(c, z), z, scale * static_cast<unsigned>(z.p), out);
}

// Splits a squarefree, monic g whose irreducible factors all have degree d.
void equal_degree_split(const Coeffs& g, int d, const Zp& z, std::mt19937_64& rng,
                        std::vector<Coeffs>& out) {
    const int n = degree(g);
    if (n == d) {
        out.push_back(g);
        return;
    }
    for (;;) {
        Coeffs a(static_cast<std::size_t>(n));
        for (auto& coef : a) coef = rng() % z.p;
        trim(a);
        if (degree(a) < 1) continue;

        Coeffs b;
        if (z.p == 2) {
            // absolute trace F_{2^d} -> F_2
            Coeffs t = a;
            b = a;
            for (int j = 1; j < d; ++j) {
                t = mulmod(t, t, g, z);
                b = add(b, t, z);
            }
        } else {
            // a^((p^d - 1) / 2) = (a * a^p * ... * a^(p^(d-1)))^((p - 1) / 2)
            Coeffs t = a;
            Coeffs acc = a;
            for (int j = 1; j < d; ++j) {
                t = powmod(t, z.p, g, z);
                acc = mulmod(acc, t, g, z);
            }
            b = sub(powmod(acc, (z.p - 1) / 2, g, z), Coeffs{1}, z);
        }
        Coeffs h = gcd(g, b, z);
        const int dh = degree(h);
        if (dh > 0 && dh < n) {
            equal_degree_split(h, d, z, rng, out);
            equal_degree_split(quot(g, h, z), d, z, rng, out);
            return;
        }
    }
}

// Distinct-degree factorization of squarefree monic f, stopping after
// degree max_degree. Returns (product of degree-i factors, i).
std::vector<std::pair<Coeffs, int>> distinct_degree(const Coeffs& f, const Zp& z, int max_degree) {
    std::vector<std::pair<Coeffs, int>> out;
    Coeffs rest = f;
    const Coeffs x{0, 1};
    Coeffs h = rem(x, rest, z);
    int i = 1;
    while (i <= max_degree && degree(rest) >= 2 * i) {
        h = powmod(h, z.p, rest, z);
        Coeffs g = gcd(rest, sub(h, x, z), z);
        if (!is_one(g)) {
            rest = quot(rest, g, z);
            h = rem(h, rest, z);
            out.emplace_back(std::move(g), i);
        }
        ++i;
    }
    const int dr = degree(rest);
    if (dr >= 1 && dr < 2 * i && dr <= max_degree) out.emplace_back(rest, dr);
    return out;
}

std::vector<Factor> factor_impl(const Coeffs& f_in, const Zp& z, int max_degree) {
    Coeffs f = f_in;
    trim(f);
    if (f.empty()) fail(ErrorKind::InvalidArgument, "cannot factor the zero polynomial");
    f = monic(f, z);
    std::vector<Factor> out;
    if (degree(f) == 0) return out;

    std::mt19937_64 rng(seed_for(f, z.p));
    std::vector<std::pair<Coeffs, unsigned>> parts;
    squarefree_parts(f, z, 1, parts);
    for (auto& [part, mult] : parts) {
        for (auto& [block, d] : distinct_degree(part, z, max_degree)) {
            std::vector<Coeffs> irreducibles;
            equal_degree_split(block, d, z, rng, irreducibles);
            for (auto& g : irreducibles) out.push_back({std::move(g), mult});
        }
    }
    std::sort(out.begin(), out.end(),
              [](const Factor& a, const Factor& b) { return canonical_less(a.poly, b.poly); });
    return out;
}

}  // namespace

std::vector<Factor> factor(const Coeffs& f, const Zp& z) {
    return factor_impl(f, z, degree(f) < 1 ? 1 : degree(f));
}

std::vector<Factor> factor_bounded(const Coeffs& f, const Zp& z, int max_degree) {
    if (max_degree < 1) return {};
    return factor_impl(f, z, max_degree);
}

bool is_irreducible(const Coeffs& f, const Zp& z) {
    auto fs = factor(f, z);
    return fs.size() == 1 && fs[0].multiplicity == 1;
}

}  // namespace landau::fp
