#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <queue>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "landau/ideal.hpp"
#include "landau/numberfield.hpp"

namespace landau {

/// Rational primes <= n (Eratosthenes).
std::vector<std::uint64_t> rational_primes_up_to(std::uint64_t n);

struct PrimeIdealTable {
    FieldSpec field;
    Norm max_norm = 0;
    std::vector<PrimeIdeal> entries;           // sorted by key()
    std::vector<std::uint64_t> skipped_primes;  // irregular p, only with allow_skip

    std::optional<std::uint32_t> index_of(const PrimeKey& key) const;
    Ideal ideal_of(std::uint32_t index, unsigned exponent = 1) const;
    /// Norms of all entries, in table order.
    std::vector<Norm> norms() const;
};

/// Prime ideals of norm <= X. An irregular rational prime is a hard error
/// unless `allow_skip`, in which case it is listed in skipped_primes.
PrimeIdealTable prime_ideals_up_to(const FieldSpec& field, Norm X, bool allow_skip = false);

/// Binary table cache; layout in docs/table-cache.md.
void save_table(const std::filesystem::path& path, const PrimeIdealTable& table);
/// Returns nullopt when the file is absent or keyed to another (field, X);
/// throws CacheFormat on a corrupt file.
std::optional<PrimeIdealTable> load_table(const std::filesystem::path& path, const FieldSpec& field, Norm X);

struct IdealRecord {
    Norm norm = 1;
    std::uint8_t omega = 0;
    std::int8_t mu = 1;
    std::int8_t lambda = 1;

    bool operator==(const IdealRecord&) const = default;
};

/// A factor of an enumerated ideal: table index in the high bits, exponent in the low six.
using PackedFactor = std::uint32_t;
inline constexpr PackedFactor pack_factor(std::uint32_t index, unsigned exponent) {
    return (index << 6) | exponent;
}
inline constexpr std::uint32_t factor_index(PackedFactor f) { return f >> 6; }
inline constexpr unsigned factor_exponent(PackedFactor f) { return f & 63u; }

enum class EnumerationMode { Light, Full };

/// All ideals of norm <= X in nondecreasing norm order; ties are ordered by
/// the factor list ((table index, exponent) pairs, lexicographic).
class IdealEnumeration {
public:
    IdealEnumeration(PrimeIdealTable table, Norm bound, EnumerationMode mode, std::vector<IdealRecord> records,
                     std::vector<std::uint64_t> offsets, std::vector<PackedFactor> factors);

    const PrimeIdealTable& table() const noexcept { return table_; }
    const FieldSpec& field() const noexcept { return table_.field; }
    Norm bound() const noexcept { return bound_; }
    bool full() const noexcept { return mode_ == EnumerationMode::Full; }
    std::size_t size() const noexcept { return records_.size(); }
    const std::vector<IdealRecord>& records() const noexcept { return records_; }
    const IdealRecord& operator[](std::size_t i) const { return records_[i]; }

    /// Factor list of record i (Full mode only).
    std::span<const PackedFactor> factors(std::size_t i) const;
    Ideal ideal(std::size_t i) const;

    /// Number of records with norm <= x.
    std::size_t count_up_to(double x) const;

private:
    PrimeIdealTable table_;
    Norm bound_;
    EnumerationMode mode_;
    std::vector<IdealRecord> records_;
    std::vector<std::uint64_t> offsets_;
    std::vector<PackedFactor> factors_;
};

IdealEnumeration ideals_up_to(const FieldSpec& field, Norm X, EnumerationMode mode = EnumerationMode::Light);
IdealEnumeration ideals_up_to(PrimeIdealTable table, Norm X, EnumerationMode mode = EnumerationMode::Light);

/// Exact lookup from an ideal to its position in a Full enumeration.
class IdealIndex {
public:
    explicit IdealIndex(const IdealEnumeration& e);
    std::optional<std::size_t> find(const Ideal& m) const;
    std::optional<std::size_t> find_packed(std::span<const PackedFactor> factors) const;

private:
    const IdealEnumeration* e_;
    std::unordered_map<std::string, std::size_t> map_;
};

/// Lazy alternative to `ideals_up_to`: a priority queue over (norm, factor
/// list) that yields the same records in the same order without
/// materializing them.
class IdealStreamer {
public:
    struct Item {
        IdealRecord record;
        std::vector<PackedFactor> factors;
    };

    IdealStreamer(const PrimeIdealTable& table, Norm X);
    std::optional<Item> next();

private:
    struct Node {
        Norm norm;
        std::vector<PackedFactor> factors;
        bool operator>(const Node& o) const {
            if (norm != o.norm) return norm > o.norm;
            return factors > o.factors;
        }
    };
    void push(Node n);

    const PrimeIdealTable* table_;
    Norm bound_;
    std::priority_queue<Node, std::vector<Node>, std::greater<Node>> heap_;
    bool unit_done_ = false;
};

/// phi[n] = number of ideals of norm exactly n, for 0 <= n <= X (phi[0] = 0).
std::vector<std::uint32_t> ideal_count_by_norm(const FieldSpec& field, Norm X);
std::vector<std::uint32_t> ideal_count_by_norm(const PrimeIdealTable& table, Norm X);

IdealRecord make_record(std::span<const PackedFactor> factors, Norm norm);

namespace serial {
PrimeIdealTable prime_ideals_up_to(const FieldSpec& field, Norm X, bool allow_skip = false);
IdealEnumeration ideals_up_to(PrimeIdealTable table, Norm X, EnumerationMode mode);
}  // namespace serial

}  // namespace landau
