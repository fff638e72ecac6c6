#include "landau/sieve.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>

#include "landau/error.hpp"

namespace landau {

std::vector<std::uint64_t> rational_primes_up_to(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    if (n < 2) return out;
    std::vector<bool> composite(n + 1, false);
    for (std::uint64_t i = 2; i <= n; ++i) {
        if (composite[i]) continue;
        out.push_back(i);
        if (i > n / i) continue;
        for (std::uint64_t j = i * i; j <= n; j += i) composite[j] = true;
    }
    return out;
}

std::optional<std::uint32_t> PrimeIdealTable::index_of(const PrimeKey& key) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), key,
                               [](const PrimeIdeal& e, const PrimeKey& k) { return e.key() < k; });
    if (it == entries.end() || !(it->key() == key)) return std::nullopt;
    return static_cast<std::uint32_t>(it - entries.begin());
}

Ideal PrimeIdealTable::ideal_of(std::uint32_t index, unsigned exponent) const {
    return Ideal::prime(field.fingerprint(), entries.at(index), exponent);
}

std::vector<Norm> PrimeIdealTable::norms() const {
    std::vector<Norm> out(entries.size());
    for (std::size_t i = 0; i < entries.size(); ++i) out[i] = entries[i].norm;
    return out;
}

namespace {

void sort_entries(std::vector<PrimeIdeal>& entries) {
    std::sort(entries.begin(), entries.end(),
              [](const PrimeIdeal& a, const PrimeIdeal& b) { return a.key() < b.key(); });
}

void finish_skips(PrimeIdealTable& t, bool allow_skip) {
    if (t.skipped_primes.empty() || allow_skip) return;
    fail(ErrorKind::IrregularPrime, "p = " + std::to_string(t.skipped_primes.front()) +
                                        " divides the index of Z[theta]; pass allow_skip to drop it");
}

}  // namespace

PrimeIdealTable prime_ideals_up_to(const FieldSpec& field, Norm X, bool allow_skip) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    PrimeIdealTable t{field, X, {}, {}};
    const auto primes = rational_primes_up_to(X);
    std::vector<std::vector<PrimeIdeal>> per(primes.size());
    std::vector<std::uint8_t> irregular(primes.size(), 0);
    std::string first_error;

#pragma omp parallel for schedule(dynamic, 512)
    for (std::size_t i = 0; i < primes.size(); ++i) {
        try {
            per[i] = factor_prime_bounded(field, primes[i], X);
        } catch (const Error& e) {
            if (e.kind() == ErrorKind::IrregularPrime) {
                irregular[i] = 1;
            } else {
#pragma omp critical(landau_table_error)
                if (first_error.empty()) first_error = e.what();
            }
        }
    }
    if (!first_error.empty()) fail(ErrorKind::Overflow, first_error);

    std::size_t total = 0;
    for (const auto& v : per) total += v.size();
    t.entries.reserve(total);
    for (std::size_t i = 0; i < primes.size(); ++i) {
        if (irregular[i]) t.skipped_primes.push_back(primes[i]);
        for (auto& e : per[i]) t.entries.push_back(std::move(e));
    }
    sort_entries(t.entries);
    finish_skips(t, allow_skip);
    return t;
}

namespace serial {

PrimeIdealTable prime_ideals_up_to(const FieldSpec& field, Norm X, bool allow_skip) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    PrimeIdealTable t{field, X, {}, {}};
    for (std::uint64_t p : rational_primes_up_to(X)) {
        if (!is_regular_prime(field, p)) {
            t.skipped_primes.push_back(p);
            continue;
        }
        // full factorization, then the norm filter; p^f may not fit in 64 bits
        const auto fs = factor_poly_mod_p(field.coeffs(), p);
        for (std::size_t i = 0; i < fs.size(); ++i) {
            const auto f = static_cast<unsigned>(fp::degree(fs[i].poly));
            Norm n = 1;
            bool fits = true;
            for (unsigned j = 0; j < f && fits; ++j) fits = !__builtin_mul_overflow(n, p, &n) && n <= X;
            if (fits)
                t.entries.push_back(PrimeIdeal{p, fs[i].multiplicity, f, n, fs[i].poly, static_cast<std::uint32_t>(i)});
        }
    }
    sort_entries(t.entries);
    finish_skips(t, allow_skip);
    return t;
}

}  // namespace serial

// ---------------------------------------------------------------------------
// cache

namespace {

constexpr char kMagic[8] = {'L', 'A', 'N', 'D', 'A', 'U', 'P', 'T'};
constexpr std::uint32_t kVersion = 1;

template <class T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof v);
    if (!is) fail(ErrorKind::CacheFormat, "truncated table cache");
    return v;
}

}  // namespace

void save_table(const std::filesystem::path& path, const PrimeIdealTable& table) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) fail(ErrorKind::InvalidArgument, "cannot write " + path.string());
    const auto d = static_cast<std::uint32_t>(table.field.degree());
    os.write(kMagic, sizeof kMagic);
    put(os, kVersion);
    put(os, d);
    put(os, table.field.fingerprint());
    put(os, table.max_norm);
    put(os, static_cast<std::uint64_t>(table.entries.size()));
    put(os, static_cast<std::uint64_t>(table.skipped_primes.size()));
    for (std::int64_t c : table.field.coeffs()) put(os, c);
    for (std::uint64_t p : table.skipped_primes) put(os, p);
    for (const auto& e : table.entries) {
        put(os, e.p);
        put(os, static_cast<std::uint32_t>(e.e));
        put(os, static_cast<std::uint32_t>(e.f));
        put(os, e.ordinal);
        put(os, std::uint32_t{0});
        for (std::uint32_t i = 0; i < d; ++i) put(os, i < e.f ? e.gen_tag[i] : std::uint64_t{0});
    }
    if (!os) fail(ErrorKind::InvalidArgument, "write failed for " + path.string());
}

std::optional<PrimeIdealTable> load_table(const std::filesystem::path& path, const FieldSpec& field, Norm X) {
    std::ifstream is(path, std::ios::binary);
    if (!is) return std::nullopt;
    char magic[sizeof kMagic];
    is.read(magic, sizeof magic);
    if (!is || std::memcmp(magic, kMagic, sizeof kMagic) != 0) fail(ErrorKind::CacheFormat, "bad magic");
    if (get<std::uint32_t>(is) != kVersion) fail(ErrorKind::CacheFormat, "unsupported cache version");
    const auto d = get<std::uint32_t>(is);
    const auto fingerprint = get<std::uint64_t>(is);
    const auto max_norm = get<std::uint64_t>(is);
    const auto count = get<std::uint64_t>(is);
    const auto skipped = get<std::uint64_t>(is);
    if (d > static_cast<std::uint32_t>(kMaxDegree)) fail(ErrorKind::CacheFormat, "degree out of range");
    std::vector<std::int64_t> coeffs(d + 1);
    for (auto& c : coeffs) c = get<std::int64_t>(is);
    if (fingerprint != field.fingerprint() || coeffs != field.coeffs() || max_norm != X) return std::nullopt;

    PrimeIdealTable t{field, X, {}, {}};
    t.skipped_primes.resize(skipped);
    for (auto& p : t.skipped_primes) p = get<std::uint64_t>(is);
    t.entries.resize(count);
    for (auto& e : t.entries) {
        e.p = get<std::uint64_t>(is);
        e.e = get<std::uint32_t>(is);
        e.f = get<std::uint32_t>(is);
        e.ordinal = get<std::uint32_t>(is);
        (void)get<std::uint32_t>(is);
        if (e.f == 0 || e.f > d || e.e == 0) fail(ErrorKind::CacheFormat, "bad record");
        e.gen_tag.assign(e.f + 1, 0);
        for (std::uint32_t i = 0; i < d; ++i) {
            const auto c = get<std::uint64_t>(is);
            if (i < e.f) e.gen_tag[i] = c;
        }
        e.gen_tag[e.f] = 1;
        e.norm = checked_pow(e.p, e.f);
    }
    if (is.peek() != std::char_traits<char>::eof()) fail(ErrorKind::CacheFormat, "trailing bytes");
    return t;
}

// ---------------------------------------------------------------------------
// enumeration

IdealRecord make_record(std::span<const PackedFactor> factors, Norm norm) {
    IdealRecord r;
    r.norm = norm;
    unsigned omega = 0;
    bool squarefree = true;
    for (PackedFactor f : factors) {
        omega += factor_exponent(f);
        if (factor_exponent(f) > 1) squarefree = false;
    }
    r.omega = static_cast<std::uint8_t>(omega);
    r.lambda = omega % 2 ? -1 : 1;
    r.mu = squarefree ? r.lambda : 0;
    return r;
}

IdealEnumeration::IdealEnumeration(PrimeIdealTable table, Norm bound, EnumerationMode mode,
                                   std::vector<IdealRecord> records, std::vector<std::uint64_t> offsets,
                                   std::vector<PackedFactor> factors)
    : table_(std::move(table)),
      bound_(bound),
      mode_(mode),
      records_(std::move(records)),
      offsets_(std::move(offsets)),
      factors_(std::move(factors)) {}

std::span<const PackedFactor> IdealEnumeration::factors(std::size_t i) const {
    if (!full()) fail(ErrorKind::InvalidArgument, "factor lists are kept only in full mode");
    return {factors_.data() + offsets_[i], factors_.data() + offsets_[i + 1]};
}

Ideal IdealEnumeration::ideal(std::size_t i) const {
    std::vector<IdealFactor> fs;
    for (PackedFactor f : factors(i)) fs.push_back({table_.entries[factor_index(f)].key(), factor_exponent(f)});
    return Ideal::from_factors(table_.field.fingerprint(), std::move(fs));
}

std::size_t IdealEnumeration::count_up_to(double x) const {
    if (x < 1) return 0;
    const Norm n = x >= static_cast<double>(bound_) ? bound_ : static_cast<Norm>(std::floor(x));
    return static_cast<std::size_t>(
        std::upper_bound(records_.begin(), records_.end(), n,
                         [](Norm v, const IdealRecord& r) { return v < r.norm; }) -
        records_.begin());
}

namespace {

// Depth-first walk over multisets of table primes with indices >= start.
// Emits each ideal in preorder, which is the lexicographic order of
// its (index, exponent) list.
template <class Emit>
void walk(const std::vector<Norm>& norms, std::size_t start, Norm norm, Norm X, std::vector<PackedFactor>& stack,
          Emit& emit) {
    for (std::size_t j = start; j < norms.size(); ++j) {
        const Norm q = norms[j];
        if (q > X / norm) break;
        Norm cur = norm;
        for (unsigned a = 1;; ++a) {
            cur *= q;
            stack.push_back(pack_factor(static_cast<std::uint32_t>(j), a));
            emit(cur, stack);
            walk(norms, j + 1, cur, X, stack, emit);
            stack.pop_back();
            if (q > X / cur) break;
        }
    }
}

// Subtree of ideals whose smallest prime index is j.
template <class Emit>
void walk_task(const std::vector<Norm>& norms, std::size_t j, Norm X, std::vector<PackedFactor>& stack, Emit& emit) {
    const Norm q = norms[j];
    Norm cur = 1;
    for (unsigned a = 1;; ++a) {
        cur *= q;
        stack.push_back(pack_factor(static_cast<std::uint32_t>(j), a));
        emit(cur, stack);
        walk(norms, j + 1, cur, X, stack, emit);
        stack.pop_back();
        if (q > X / cur) break;
    }
}

// Stable counting sort of the preorder output by norm.
IdealEnumeration sort_by_norm(PrimeIdealTable table, Norm X, EnumerationMode mode, std::vector<IdealRecord> recs,
                              std::vector<std::uint64_t> offsets, std::vector<PackedFactor> factors) {
    std::vector<std::uint32_t> start(X + 2, 0);
    for (const auto& r : recs) ++start[r.norm + 1];
    for (Norm n = 1; n <= X + 1; ++n) start[n] += start[n - 1];
    std::vector<std::uint32_t> perm(recs.size());
    for (std::size_t i = 0; i < recs.size(); ++i) perm[start[recs[i].norm]++] = static_cast<std::uint32_t>(i);
    start.clear();
    start.shrink_to_fit();

    std::vector<IdealRecord> sorted(recs.size());
    for (std::size_t i = 0; i < perm.size(); ++i) sorted[i] = recs[perm[i]];
    recs.clear();
    recs.shrink_to_fit();

    std::vector<std::uint64_t> new_offsets;
    std::vector<PackedFactor> new_factors;
    if (mode == EnumerationMode::Full) {
        new_offsets.resize(perm.size() + 1, 0);
        new_factors.reserve(factors.size());
        for (std::size_t i = 0; i < perm.size(); ++i) {
            const auto b = offsets[perm[i]], e = offsets[perm[i] + 1];
            new_factors.insert(new_factors.end(), factors.begin() + static_cast<std::ptrdiff_t>(b),
                               factors.begin() + static_cast<std::ptrdiff_t>(e));
            new_offsets[i + 1] = new_factors.size();
        }
    }
    return IdealEnumeration(std::move(table), X, mode, std::move(sorted), std::move(new_offsets),
                            std::move(new_factors));
}

}  // namespace

IdealEnumeration ideals_up_to(PrimeIdealTable table, Norm X, EnumerationMode mode) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    if (table.max_norm < X) fail(ErrorKind::InvalidArgument, "prime table does not reach X");
    const auto norms = table.norms();
    std::size_t tasks = 0;
    while (tasks < norms.size() && norms[tasks] <= X) ++tasks;
    const bool full = mode == EnumerationMode::Full;

    // pass 1: sizes per task
    std::vector<std::uint64_t> rec_count(tasks + 1, 0), fac_count(tasks + 1, 0);
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t j = 0; j < tasks; ++j) {
        std::vector<PackedFactor> stack;
        std::uint64_t r = 0, f = 0;
        auto emit = [&](Norm, const std::vector<PackedFactor>& s) {
            ++r;
            f += s.size();
        };
        walk_task(norms, j, X, stack, emit);
        rec_count[j + 1] = r;
        fac_count[j + 1] = f;
    }
    // unit ideal occupies slot 0
    rec_count[0] = 1;
    for (std::size_t j = 1; j <= tasks; ++j) {
        rec_count[j] += rec_count[j - 1];
        fac_count[j] += fac_count[j - 1];
    }

    // pass 2: write at prefix offsets
    std::vector<IdealRecord> recs(rec_count[tasks]);
    std::vector<std::uint64_t> offsets(full ? recs.size() + 1 : 0, 0);
    std::vector<PackedFactor> factors(full ? fac_count[tasks] : 0);
    recs[0] = IdealRecord{};
#pragma omp parallel for schedule(dynamic, 1)
    for (std::size_t j = 0; j < tasks; ++j) {
        std::vector<PackedFactor> stack;
        std::uint64_t r = rec_count[j], f = fac_count[j];
        auto emit = [&](Norm n, const std::vector<PackedFactor>& s) {
            recs[r] = make_record(s, n);
            if (full) {
                std::copy(s.begin(), s.end(), factors.begin() + static_cast<std::ptrdiff_t>(f));
                f += s.size();
                offsets[r + 1] = f;
            }
            ++r;
        };
        walk_task(norms, j, X, stack, emit);
    }
    return sort_by_norm(std::move(table), X, mode, std::move(recs), std::move(offsets), std::move(factors));
}

IdealEnumeration ideals_up_to(const FieldSpec& field, Norm X, EnumerationMode mode) {
    return ideals_up_to(prime_ideals_up_to(field, X), X, mode);
}

namespace serial {

IdealEnumeration ideals_up_to(PrimeIdealTable table, Norm X, EnumerationMode mode) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    const auto norms = table.norms();
    struct Row {
        IdealRecord rec;
        std::vector<PackedFactor> factors;
    };
    std::vector<Row> rows;
    rows.push_back({IdealRecord{}, {}});
    std::vector<PackedFactor> stack;
    auto emit = [&](Norm n, const std::vector<PackedFactor>& s) { rows.push_back({make_record(s, n), s}); };
    walk(norms, 0, 1, X, stack, emit);
    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.rec.norm < b.rec.norm; });

    std::vector<IdealRecord> recs;
    std::vector<std::uint64_t> offsets;
    std::vector<PackedFactor> factors;
    const bool full = mode == EnumerationMode::Full;
    if (full) offsets.push_back(0);
    for (auto& row : rows) {
        recs.push_back(row.rec);
        if (full) {
            factors.insert(factors.end(), row.factors.begin(), row.factors.end());
            offsets.push_back(factors.size());
        }
    }
    return IdealEnumeration(std::move(table), X, mode, std::move(recs), std::move(offsets), std::move(factors));
}

}  // namespace serial

// ---------------------------------------------------------------------------
// index

namespace {

std::string key_of(std::span<const PackedFactor> fs) {
    return std::string(reinterpret_cast<const char*>(fs.data()), fs.size() * sizeof(PackedFactor));
}

}  // namespace

IdealIndex::IdealIndex(const IdealEnumeration& e) : e_(&e) {
    if (!e.full()) fail(ErrorKind::InvalidArgument, "IdealIndex needs a full enumeration");
    map_.reserve(e.size());
    for (std::size_t i = 0; i < e.size(); ++i) map_.emplace(key_of(e.factors(i)), i);
}

std::optional<std::size_t> IdealIndex::find_packed(std::span<const PackedFactor> factors) const {
    auto it = map_.find(key_of(factors));
    if (it == map_.end()) return std::nullopt;
    return it->second;
}

std::optional<std::size_t> IdealIndex::find(const Ideal& m) const {
    if (m.field_fingerprint() != e_->field().fingerprint())
        fail(ErrorKind::FieldMismatch, "ideal belongs to another field");
    if (m.norm() > e_->bound()) return std::nullopt;
    std::vector<PackedFactor> packed;
    for (const auto& f : m.factors()) {
        auto idx = e_->table().index_of(f.prime);
        if (!idx) return std::nullopt;
        packed.push_back(pack_factor(*idx, f.exponent));
    }
    // table order and PrimeKey order agree, so `packed` is already sorted
    return find_packed(packed);
}

// ---------------------------------------------------------------------------
// priority-queue streamer

IdealStreamer::IdealStreamer(const PrimeIdealTable& table, Norm X) : table_(&table), bound_(X) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
}

void IdealStreamer::push(Node n) {
    if (n.norm <= bound_) heap_.push(std::move(n));
}

std::optional<IdealStreamer::Item> IdealStreamer::next() {
    const auto& e = table_->entries;
    if (!unit_done_) {
        unit_done_ = true;
        if (!e.empty() && e[0].norm <= bound_) push({e[0].norm, {pack_factor(0, 1)}});
        return Item{IdealRecord{}, {}};
    }
    if (heap_.empty()) return std::nullopt;
    Node v = heap_.top();
    heap_.pop();

    // Every list has a unique parent: bump the last exponent, append the
    // next prime, or (for exponent 1) shift the last prime by one.
    const PackedFactor last = v.factors.back();
    const std::uint32_t j = factor_index(last);
    const unsigned a = factor_exponent(last);
    const Norm q = e[j].norm;
    if (q <= bound_ / v.norm) {
        Node bump = v;
        bump.norm *= q;
        bump.factors.back() = pack_factor(j, a + 1);
        push(std::move(bump));
    }
    if (j + 1 < e.size()) {
        const Norm q1 = e[j + 1].norm;
        if (q1 <= bound_ / v.norm) {
            Node app = v;
            app.norm *= q1;
            app.factors.push_back(pack_factor(j + 1, 1));
            push(std::move(app));
        }
        if (a == 1) {
            const Norm base = v.norm / q;
            if (q1 <= bound_ / base) {
                Node shift = v;
                shift.norm = base * q1;
                shift.factors.back() = pack_factor(j + 1, 1);
                push(std::move(shift));
            }
        }
    }
    Item out{make_record(v.factors, v.norm), std::move(v.factors)};
    return out;
}

// ---------------------------------------------------------------------------
// local factors

std::vector<std::uint32_t> ideal_count_by_norm(const PrimeIdealTable& table, Norm X) {
    if (X < 1) fail(ErrorKind::InvalidArgument, "X must be at least 1");
    if (table.max_norm < X) fail(ErrorKind::InvalidArgument, "prime table does not reach X");
    if (!table.skipped_primes.empty())
        fail(ErrorKind::IrregularPrime, "local factor unknown at skipped prime " +
                                            std::to_string(table.skipped_primes.front()));
    // residue degrees per rational prime, p ascending
    std::vector<std::pair<std::uint64_t, unsigned>> pf;
    pf.reserve(table.entries.size());
    for (const auto& e : table.entries) pf.emplace_back(e.p, e.f);
    std::sort(pf.begin(), pf.end());

    std::vector<std::uint32_t> phi(X + 1, 1);
    phi[0] = 0;
    std::size_t cursor = 0;
    std::vector<std::uint64_t> local;
    for (std::uint64_t p : rational_primes_up_to(X)) {
        unsigned kmax = 0;
        for (Norm q = p; q <= X; q = (q > X / p) ? X + 1 : q * p) ++kmax;
        // coefficients of prod 1/(1 - t^f) up to t^kmax
        local.assign(kmax + 1, 0);
        local[0] = 1;
        while (cursor < pf.size() && pf[cursor].first < p) ++cursor;
        for (; cursor < pf.size() && pf[cursor].first == p; ++cursor) {
            const unsigned f = pf[cursor].second;
            for (unsigned k = f; k <= kmax; ++k) local[k] += local[k - f];
        }
        for (Norm m = p; m <= X; m += p) {
            Norm r = m / p;
            unsigned v = 1;
            while (r % p == 0) {
                r /= p;
                ++v;
            }
            phi[m] *= static_cast<std::uint32_t>(local[v]);
        }
    }
    return phi;
}

std::vector<std::uint32_t> ideal_count_by_norm(const FieldSpec& field, Norm X) {
    return ideal_count_by_norm(prime_ideals_up_to(field, X), X);
}

}  // namespace landau
