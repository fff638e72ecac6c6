#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "landau/orthogonality.hpp"
#include "landau/primebounds.hpp"

namespace landau {

struct ConstructionParams {
    double eta = 0.5;
    int k = 2;
    double base = 2;
    double epsilon = 0.24;
    double delta = 0.12;      // always epsilon / k
    double M = 0;             // tuple-sum separation; 0 means 2k + 3
    double mass = 0;          // A-set target for sum 1/n
    int x0 = 1;               // lower bound for the first A-set step
    Norm capacity = kDefaultCapacity;

    /// Fills delta and validates; throws InvalidArgument when
    /// epsilon >= min(1/4, log(1 + eta) / (2 log base)).
    static ConstructionParams make(double eta, int k, double base, double epsilon);
    void validate() const;
    double separation() const noexcept { return M > 0 ? M : 2.0 * k + 3; }
};

struct LemmaFiveResult {
    int n = 0;
    double x = 0;
    double y = 0;
    double D = 0;
    std::uint64_t count_x = 0;  // primes in (b^x, b^(x+delta)]
    std::uint64_t count_y = 0;
    std::vector<std::uint64_t> profile;  // window counts along the grid
    double step = 0;                     // grid spacing, epsilon^4 / 4
};

/// Grid scan over window starts in [n, n+1); returns the pair with
/// eps^4 < y - x < eps maximizing the smaller count (ties: smallest x, then y).
/// Throws NoPairFound when every admissible pair has an empty window.
LemmaFiveResult lemma5_search(const ChebyshevContext& ctx, int n, double epsilon, double delta, double base);
/// Builds a context just large enough for the windows of n.
LemmaFiveResult lemma5_search(const FieldSpec& field, int n, double epsilon, double delta, double base);

struct Lemma6Selection {
    double z = 0;
    std::vector<double> zs;
    /// False when some window offered no well-separated pair or k < ceil(2/eps^4).
    bool within_guarantee = true;
};

/// Picks z_i in Xset cap [n_i, n_i + 1) and z in Xset with
/// z_1 + ... + z_k in [z, z + eps), by walking from the all-x choice to the
/// all-y choice one window at a time. Throws SelectionFailed.
Lemma6Selection lemma6_select(std::vector<double> xset, double epsilon, int k, const std::vector<int>& targets);

struct ASets {
    std::vector<std::uint64_t> steps;               // s_i
    std::vector<std::vector<std::uint64_t>> sets;   // A_i, consecutive multiples of s_i
};

/// s_1 > max(x0, 2k) (raised to M when A_1 has two or more elements),
/// s_(i+1) > M + max A_1 + ... + max A_i, each A_i grown until sum 1/n >= mass.
/// Throws ConstructionInfeasible when a set would exceed 10^6 elements or overflow.
ASets build_A_sets(int k, double M, int x0, double mass);
inline ASets build_A_sets(int k, double M, int x0) { return build_A_sets(k, M, x0, M); }

/// Distinct tuples have sums at least M apart. Exhaustive up to 10^6
/// tuples, otherwise decided by `property_A_certificate`.
bool check_property_A(const std::vector<std::vector<std::uint64_t>>& sets, double M);
/// Sufficient condition: g_i - sum_{j<i} (max A_j - min A_j) >= M for each
/// set with two or more elements, g_i the gcd of A_i.
bool property_A_certificate(const std::vector<std::vector<std::uint64_t>>& sets, double M);
bool property_A_exhaustive(const std::vector<std::vector<std::uint64_t>>& sets, double M);

struct RichterPair {
    std::vector<Ideal> S1;  // primes
    std::vector<Ideal> S2;  // Omega = k; S2[i] is paired with S1[i]
};

struct TupleReport {
    std::vector<std::uint64_t> m;
    double zeta = 0;
    std::vector<double> zetas;
    std::vector<std::size_t> window_sizes;  // |P_(zeta_i)|
    std::size_t q_pool = 0;                 // |P_zeta|
    std::size_t products = 0;
};

struct RichterConstruction {
    ConstructionParams params;
    ASets a_sets;
    double D_lemma5 = 0;  // smallest searched D over the windows used
    double D = 0;         // the D actually used, at most D_lemma5
    std::vector<LemmaFiveResult> lemma5;
    std::vector<TupleReport> tuples;
    bool within_guarantee = true;
    RichterPair pair;
};

RichterConstruction construct_richter_pair(const ChebyshevContext& ctx, const ConstructionParams& params);
RichterConstruction construct_richter_pair(const FieldSpec& field, const ConstructionParams& params);

struct RichterVerification {
    bool i = false;
    bool ii = false;
    double iii_S1 = 0;
    double iii_S2 = 0;
    bool iii_pass(double eta) const { return iii_S1 <= eta && iii_S2 <= eta; }
};

RichterVerification verify_conditions(const FieldSpec& field, const RichterPair& pair, double eta, int k);

struct MassChoice {
    double mass = 0;
    RichterConstruction construction;
    RichterVerification verification;
    bool reached_eta = false;
};

/// Raises the A-set mass in steps of 0.05 until (iii) holds or
/// the construction no longer fits in capacity; returns the last feasible run.
MassChoice choose_mass(const ChebyshevContext& ctx, ConstructionParams params, int max_levels = 64);

}  // namespace landau
