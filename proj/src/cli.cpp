#include "landau/cli.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>
#include <omp.h>

#include "landau/error.hpp"
#include "landau/multfunc.hpp"
#include "landau/orthogonality.hpp"
#include "landau/primebounds.hpp"
#include "landau/richter.hpp"
#include "landau/sieve.hpp"
#include "landau/stats.hpp"

namespace landau::cli {

using Json = nlohmann::ordered_json;

namespace {

struct Result {
    std::string natural_format = "csv";
    std::vector<std::string> columns;
    std::vector<std::vector<Json>> rows;
    Json meta = Json::object();
};

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string cell_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    if (j.is_number_float()) return fmt_double(j.get<double>());
    return j.dump();
}

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    return s.substr(b, s.find_last_not_of(" \t\r") - b + 1);
}

Json complex_json(Complex z) { return Json{{"re", z.real()}, {"im", z.imag()}}; }

Json ideal_list(const std::vector<Ideal>& v) {
    Json out = Json::array();
    for (const auto& m : v) out.push_back(Json{{"ideal", m.to_string()}, {"norm", m.norm()}});
    return out;
}

// -- subcommands ------------------------------------------------------------

Result do_sieve(const RunConfig& c) {
    const auto field = parse_field(c.field);
    std::optional<PrimeIdealTable> t;
    if (!c.cache.empty()) t = load_table(c.cache, field, c.X);
    if (!t) {
        t = prime_ideals_up_to(field, c.X);
        if (!c.cache.empty()) save_table(c.cache, *t);
    }
    Result r;
    r.columns = {"norm", "p", "ordinal", "e", "f"};
    for (const auto& p : t->entries) r.rows.push_back({p.norm, p.p, p.ordinal, p.e, p.f});
    r.meta["prime_ideals"] = t->entries.size();
    r.meta["skipped_primes"] = t->skipped_primes;
    return r;
}

Result do_count(const RunConfig& c) {
    const auto e = ideals_up_to(parse_field(c.field), c.X);
    const NormProfile prof(e);
    Result r;
    r.columns = {"x", "N"};
    for (Norm x : dyadic_points(c.X)) r.rows.push_back({x, prof.count(static_cast<double>(x))});
    r.meta["N"] = prof.count(static_cast<double>(c.X));
    return r;
}

Result do_density(const RunConfig& c) {
    const auto fit = estimate_density(parse_field(c.field), c.X);
    Result r;
    r.natural_format = "json";
    r.meta["c_hat"] = fit.c_hat;
    r.meta["C"] = fit.C;
    r.meta["residual_exponent_ok"] = fit.residual_exponent_ok;
    r.columns = {"x", "N"};
    for (const auto& [x, n] : fit.grid) r.rows.push_back({x, n});
    return r;
}

Result do_summatory(const RunConfig& c) {
    const auto kind = parse_summary_kind(c.kind);
    SummaryParams sp;
    sp.a = c.a;
    sp.q = c.q;
    sp.alpha = c.alpha;
    const auto s = summatory(parse_field(c.field), c.X, kind, sp);
    const bool integral = kind == SummaryKind::Count || kind == SummaryKind::L || kind == SummaryKind::M ||
                          kind == SummaryKind::PiK;
    Result r;
    r.columns = {"x", std::string(to_string(kind))};
    for (std::size_t i = 0; i < s.xs.size(); ++i) {
        const Json x = static_cast<std::uint64_t>(s.xs[i]);
        r.rows.push_back({x, integral ? Json(static_cast<std::int64_t>(s.values[i])) : Json(s.values[i])});
    }
    return r;
}

Result do_equidist(const RunConfig& c) {
    const auto e = ideals_up_to(parse_field(c.field), c.X);
    const NormProfile prof(e);
    const auto h = residue_histogram(prof, c.q);
    const double total = static_cast<double>(prof.count(static_cast<double>(c.X)));
    Result r;
    r.columns = {"residue", "count", "share"};
    for (std::size_t i = 0; i < h.bins.size(); ++i)
        r.rows.push_back({i, h.bins[i], static_cast<double>(h.bins[i]) / total});
    r.meta["parseval_gap"] = h.parseval_gap;
    r.meta["parseval_lhs"] = h.lhs;
    r.meta["parseval_rhs"] = h.rhs;
    Json sums = Json::array();
    for (std::uint64_t a = 1; a < c.q; ++a) {
        const auto z = exp_sum(prof, a, c.q);
        Json j = complex_json(z);
        j["a"] = a;
        j["abs_over_N"] = std::abs(z) / total;
        sums.push_back(j);
    }
    r.meta["exp_sums"] = sums;
    return r;
}

Result do_weyl(const RunConfig& c) {
    const auto e = ideals_up_to(parse_field(c.field), c.X);
    const NormProfile prof(e);
    const auto z = weyl_sum(prof, c.alpha);
    Result r;
    r.natural_format = "json";
    r.meta["alpha"] = c.alpha;
    r.meta["sum"] = complex_json(z);
    r.meta["abs_over_N"] = std::abs(z) / static_cast<double>(prof.count(static_cast<double>(c.X)));
    return r;
}

BoundedSequenceFn sequence_of(const RunConfig& c) {
    if (c.seq == "alternating") return BoundedSequenceFn::alternating();
    if (c.seq == "one") return BoundedSequenceFn::constant_one();
    if (c.seq == "additive") return BoundedSequenceFn::additive_character(c.a, c.q);
    if (c.seq == "weyl") return BoundedSequenceFn::weyl_character(c.alpha);
    fail(ErrorKind::UnknownFunctionId, "unknown sequence '" + c.seq + "' (alternating, one, additive, weyl)");
}

Result do_theorem1(const RunConfig& c) {
    const auto e = ideals_up_to(parse_field(c.field), c.X);
    const NormProfile prof(e);
    const auto g = sequence_of(c);
    Result r;
    r.natural_format = "json";
    r.meta["g"] = g.id();
    r.meta["discrepancy"] = theorem1_discrepancy(prof, g, c.k1, c.k2);
    const double X = static_cast<double>(c.X);
    r.meta["L_over_N"] = static_cast<double>(prof.liouville_sum(X)) / static_cast<double>(prof.count(X));
    return r;
}

Result do_prop2(const RunConfig& c) {
    if (c.max_norm > c.X) throw UsageError("--max-norm must not exceed --x");
    const OrthogonalityContext ctx(parse_field(c.field), c.X);
    const auto sets = random_ideal_sets(ctx.ideals(), c.sets, c.seed, c.max_size, c.max_norm);
    Result r;
    r.columns = {"set", "size", "prop2_lhs", "prop2_rhs", "corollary_lhs", "corollary_rhs", "bound", "pass"};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        const auto p = prop2_sides(sets[i], ctx, c.k_slack);
        const auto q = corollary_sides(sets[i], ctx, c.k_slack);
        r.rows.push_back({i, sets[i].size(), p.lhs, p.rhs, q.lhs, q.rhs, q.bound, std::abs(q.lhs - q.rhs) <= q.bound});
    }
    r.meta["c_hat"] = ctx.fit().c_hat;
    return r;
}

Result do_chebyshev(const RunConfig& c) {
    const ChebyshevContext ctx(parse_field(c.field), c.X);
    Result r;
    r.columns = {"check", "x", "alpha", "observed", "main_term", "slack", "pass"};
    auto row = [&](const char* name, double x, double alpha, const BoundCheck& b) {
        r.rows.push_back({name, x, alpha, b.observed, b.main_term, b.slack, b.pass});
    };
    const double X = static_cast<double>(c.X);
    std::vector<double> ys;
    if (c.y > 0) {
        ys.push_back(c.y);
    } else {
        for (double y = 1e3; y <= X; y *= 10) ys.push_back(y);
    }
    for (double y : ys) row("lemma4", y, 0.0, lemma4_check(ctx, y, c.k_slack));
    for (double x = 1e3; x <= X; x *= 10)
        for (double alpha : {1.5, 2.0, 4.0})
            if (alpha * x <= X) row("lemma3", x, alpha, lemma3_check(ctx, x, alpha, c.k_slack));
    return r;
}

Result do_prop4(const RunConfig& c) {
    const double top = std::pow(c.base, c.n + 1);
    if (!(top < static_cast<double>(kMaxX))) throw UsageError("--base^(--n + 1) must stay below 10^8");
    const ChebyshevContext ctx(parse_field(c.field), static_cast<Norm>(robust_floor(top)));
    const auto p = prop4_check(ctx, c.base, c.n, c.epsilon);
    Result r;
    r.natural_format = "json";
    r.meta["cond_i"] = p.cond_i;
    r.meta["cond_ii"] = p.cond_ii;
    r.meta["count_i"] = p.count_i;
    r.meta["threshold_i"] = p.threshold_i;
    r.meta["count_ii"] = p.count_ii;
    r.meta["threshold_ii"] = p.threshold_ii;
    const auto x0 = prop4_smallest_x(ctx, c.base, c.n, c.epsilon);
    r.meta["smallest_x"] = x0 ? Json(*x0) : Json(nullptr);
    return r;
}

Json richter_json(const RichterConstruction& rc, const RichterVerification& v) {
    Json j;
    const auto& p = rc.params;
    j["params"] = Json{{"eta", p.eta},     {"k", p.k},       {"base", p.base},         {"epsilon", p.epsilon},
                       {"delta", p.delta}, {"M", p.separation()}, {"mass", p.mass}, {"capacity", p.capacity}};
    j["D_lemma5"] = rc.D_lemma5;
    j["D"] = rc.D;
    j["A_sets"] = rc.a_sets.sets;
    j["within_guarantee"] = rc.within_guarantee;
    Json tuples = Json::array();
    for (const auto& t : rc.tuples)
        tuples.push_back(Json{{"m", t.m},
                              {"zeta", t.zeta},
                              {"zetas", t.zetas},
                              {"window_sizes", t.window_sizes},
                              {"q_pool", t.q_pool},
                              {"products", t.products}});
    j["tuples"] = tuples;
    j["S1"] = ideal_list(rc.pair.S1);
    j["S2"] = ideal_list(rc.pair.S2);
    Json pairing = Json::array();
    for (std::size_t i = 0; i < rc.pair.S1.size(); ++i) pairing.push_back(Json::array({i, i}));
    j["pairing"] = pairing;
    j["verification"] = Json{{"i", v.i},
                             {"ii", v.ii},
                             {"iii_S1", v.iii_S1},
                             {"iii_S2", v.iii_S2},
                             {"iii_pass", v.iii_pass(p.eta)}};
    return j;
}

Result do_richter(const RunConfig& c) {
    auto params = ConstructionParams::make(c.eta, c.k, c.base, c.epsilon);
    params.M = c.M;
    params.mass = c.mass;
    params.x0 = c.x0;
    params.capacity = c.X;
    params.validate();
    const auto field = parse_field(c.field);
    const ChebyshevContext ctx(field, params.capacity);
    Result r;
    r.natural_format = "json";
    if (c.premass) {
        const auto choice = choose_mass(ctx, params);
        r.meta = richter_json(choice.construction, choice.verification);
        r.meta["premass"] = Json{{"mass", choice.mass}, {"reached_eta", choice.reached_eta}};
    } else {
        const auto rc = construct_richter_pair(ctx, params);
        r.meta = richter_json(rc, verify_conditions(field, rc.pair, params.eta, params.k));
    }
    return r;
}

ArithTable named_table(const DomainPtr& d, const std::string& name) {
    if (name == "delta") return delta_table(d);
    if (name == "one") return one_table(d);
    if (name == "liouville") return liouville_table(d);
    if (name == "moebius") return moebius_table(d);
    if (name == "square") return indicator_square_table(d);
    fail(ErrorKind::UnknownFunctionId, "unknown table '" + name + "' (delta, one, liouville, moebius, square)");
}

Result do_convolution(const RunConfig& c) {
    const auto d = make_domain(parse_field(c.field), c.X);
    const auto F = named_table(d, c.f_table);
    ArithTable out = F;
    if (c.op == "convolve")
        out = dirichlet_convolve(F, named_table(d, c.g_table));
    else if (c.op == "inverse")
        out = dirichlet_inverse(F);
    else
        throw UsageError("--op must be convolve or inverse");
    Result r;
    r.columns = {"norm", "ideal", "num", "den"};
    for (std::size_t i = 0; i < d->size(); ++i)
        r.rows.push_back({d->ideals()[i].norm, d->ideals().ideal(i).to_string(), out[i].numerator(),
                          out[i].denominator()});
    return r;
}

Result do_abel(const RunConfig& c) {
    const auto est = abel_estimate(parse_field(c.field), c.X, parse_g_function(c.g));
    Result r;
    r.natural_format = "json";
    r.meta["g"] = std::string(to_string(parse_g_function(c.g)));
    r.meta["direct"] = est.direct;
    r.meta["formula"] = est.formula;
    r.meta["bound"] = est.bound;
    r.meta["pass"] = std::abs(est.direct - est.formula) <= est.bound;
    return r;
}

struct Command {
    const char* name;
    const char* help;
    Result (*fn)(const RunConfig&);
};

const std::vector<Command>& commands() {
    static const std::vector<Command> cs = {
        {"sieve", "Prime ideals of norm <= X by Dedekind-Kummer factorization", do_sieve},
        {"count", "Ideal counting function N(x) at dyadic points", do_count},
        {"density", "Ideal density c_K and the constant C in |N(x) - c x| <= C x^(1-1/d)", do_density},
        {"summatory", "Summatory functions: N(x), L(x), M(x), pi_K(x), exp and Weyl sums of Omega", do_summatory},
        {"equidist", "Distribution of Omega mod q with the Parseval identity for its exponential sums", do_equidist},
        {"weyl", "Weyl sum of e(alpha Omega(m)) over N(m) <= X", do_weyl},
        {"theorem1", "Discrepancy |E g(Omega + k1) - E g(Omega + k2)| over ideals of norm <= X", do_theorem1},
        {"prop2", "Prime-divisor orthogonality sides and the corollary expectation form on random ideal sets",
         do_prop2},
        {"chebyshev", "Chebyshev-type prime ideal counts: pi_K(y) lower bound and (x, alpha x] upper bound",
         do_chebyshev},
        {"prop4", "Prime ideals in (b^x, b^(x+1)] and (b^x, b^(x+eps)] against b^x / x", do_prop4},
        {"richter", "Richter pair S1 (primes) and S2 (k-fold products) with conditions (i)-(iii)", do_richter},
        {"convolution", "Dirichlet convolution and inverse of arithmetic functions on ideals", do_convolution},
        {"abel", "Abel summation of g over ideal norms against c g(1) + c int g", do_abel},
    };
    return cs;
}

void add_common(CLI::App* sub, RunConfig& c) {
    sub->add_option("--field", c.field, "Defining polynomial, constant term first (e.g. 1,0,1)");
    sub->add_option("--x", c.X, "Norm bound X")->check(CLI::Range(std::uint64_t{1}, kMaxX));
    sub->add_option("--config", "Flat key = value file; flags override it");
    sub->add_option("--output", c.output_path, "Output file (relative paths use LANDAU_OUTPUT_DIR)");
    sub->add_option("--format", c.format, "auto, csv or json")->check(CLI::IsMember({"auto", "csv", "json"}));
    sub->add_option("--threads", c.threads, "Worker threads")->check(CLI::Range(1, 4096));
}

void add_specific(const std::string& name, CLI::App* sub, RunConfig& c) {
    auto nonneg = CLI::Range(0.0, 1e300);
    if (name == "sieve") sub->add_option("--cache", c.cache, "Binary table cache file");
    if (name == "summatory") {
        sub->add_option("--kind", c.kind, "count, L, M, pi_K, exp_sum_real, exp_sum_imag or weyl");
        sub->add_option("--a", c.a, "Numerator for the exp-sum kinds");
        sub->add_option("--q", c.q, "Modulus for the exp-sum kinds")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));
        sub->add_option("--alpha", c.alpha, "Frequency for the weyl kind");
    }
    if (name == "equidist")
        sub->add_option("--q", c.q, "Modulus")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 20));
    if (name == "weyl") sub->add_option("--alpha", c.alpha, "Frequency alpha");
    if (name == "theorem1") {
        sub->add_option("--seq", c.seq, "g: alternating, one, additive (e(an/q)) or weyl (e(alpha n))");
        sub->add_option("--a", c.a, "Numerator for additive");
        sub->add_option("--q", c.q, "Modulus for additive")->check(CLI::Range(std::uint64_t{1}, std::uint64_t{1} << 32));
        sub->add_option("--alpha", c.alpha, "Frequency for weyl");
        sub->add_option("--k1", c.k1, "First shift");
        sub->add_option("--k2", c.k2, "Second shift");
    }
    if (name == "prop2") {
        sub->add_option("--seed", c.seed, "Sampling seed");
        sub->add_option("--sets", c.sets, "Number of random sets");
        sub->add_option("--max-size", c.max_size, "Largest |S|")->check(CLI::Range(std::size_t{1}, std::size_t{10000}));
        sub->add_option("--max-norm", c.max_norm, "Largest member norm")->check(CLI::Range(std::uint64_t{1}, kMaxX));
        sub->add_option("--k-slack", c.k_slack, "Constant K in the error bound")->check(nonneg);
    }
    if (name == "chebyshev") {
        sub->add_option("--y", c.y, "Single y for the pi_K lower bound (default: powers of ten)")->check(nonneg);
        sub->add_option("--k-slack", c.k_slack, "Constant K in the slack term")->check(nonneg);
    }
    if (name == "prop4") {
        sub->add_option("--base", c.base, "Base b")->check(CLI::Range(1.0001, 1e6));
        sub->add_option("--n", c.n, "Exponent x")->check(CLI::Range(1, 64));
        sub->add_option("--epsilon", c.epsilon, "Window width eps in (0, 1/4]");
    }
    if (name == "richter") {
        sub->add_option("--eta", c.eta, "Norm-ratio tolerance eta in (0, 1)");
        sub->add_option("--k", c.k, "Number of prime factors in S2")->check(CLI::Range(1, 8));
        sub->add_option("--base", c.base, "Base b")->check(CLI::Range(1.0001, 1e6));
        sub->add_option("--epsilon", c.epsilon, "epsilon; delta = epsilon / k");
        sub->add_option("--M", c.M, "Tuple-sum separation (0: 2k + 3)")->check(nonneg);
        sub->add_option("--mass", c.mass, "A-set mass target")->check(nonneg);
        sub->add_option("--x0", c.x0, "Lower bound for the first A-set step")->check(CLI::Range(0, 1000));
        sub->add_flag("--premass", c.premass, "Raise the mass until (iii) holds or capacity runs out");
    }
    if (name == "convolution") {
        sub->add_option("--f", c.f_table, "delta, one, liouville, moebius or square");
        sub->add_option("--g", c.g_table, "Second factor for --op convolve");
        sub->add_option("--op", c.op, "convolve or inverse")->check(CLI::IsMember({"convolve", "inverse"}));
    }
    if (name == "abel") sub->add_option("--g", c.g, "1, 1/t, 1/t^(1-1/d) or log");
}

bool has_flag(const std::vector<std::string>& args, const std::string& flag) {
    for (const auto& a : args)
        if (a == flag || a.rfind(flag + "=", 0) == 0) return true;
    return false;
}

/// Splices `key = value` lines from --config in front of the explicit flags.
std::vector<std::string> expand_config(const std::vector<std::string>& args) {
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
        if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
    }
    if (path.empty() || args.empty()) return args;
    std::vector<std::string> out{args[0]};
    for (const auto& [key, value] : read_config_file(path))
        if (!has_flag(args, "--" + key)) out.push_back("--" + key + "=" + value);
    out.insert(out.end(), args.begin() + 1, args.end());
    return out;
}

std::string params_text(const CLI::App* sub) {
    std::string s;
    for (const auto* opt : sub->get_options()) {
        if (opt->get_lnames().empty()) continue;
        const auto& name = opt->get_lnames()[0];
        if (name == "help" || name == "config" || name == "output" || name == "format" || name == "threads" ||
            name == "field")
            continue;
        std::string value;
        if (opt->count()) {
            for (const auto& v : opt->results()) value += (value.empty() ? "" : ",") + v;
        } else {
            value = opt->get_default_str();
        }
        s += (s.empty() ? "" : ";") + name + "=" + value;
    }
    return s;
}

void emit(const Result& r, const RunConfig& c, const std::string& params, std::ostream& os) {
    const std::string format = c.format == "auto" ? r.natural_format : c.format;
    if (format == "json") {
        Json j;
        j["field"] = c.field;
        j["command"] = c.command;
        j["params"] = params;
        for (const auto& [k, v] : r.meta.items()) j[k] = v;
        if (!r.columns.empty()) {
            j["columns"] = r.columns;
            j["rows"] = r.rows;
        }
        os << j.dump(2) << '\n';
        return;
    }
    os << "# field=" << c.field << " command=" << c.command << " params=" << params << '\n';
    for (const auto& [k, v] : r.meta.items()) os << "# " << k << '=' << cell_text(v) << '\n';
    for (std::size_t i = 0; i < r.columns.size(); ++i) os << (i ? "," : "") << r.columns[i];
    if (!r.columns.empty()) os << '\n';
    for (const auto& row : r.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
}

bool usage_kind(ErrorKind k) {
    switch (k) {
        case ErrorKind::InvalidArgument:
        case ErrorKind::UnknownFunctionId:
        case ErrorKind::NonMonic:
        case ErrorKind::ZeroDiscriminant:
        case ErrorKind::RationalRootFound:
            return true;
        default:
            return false;
    }
}

}  // namespace

std::map<std::string, std::string> read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::InvalidArgument, "cannot read config file " + path);
    std::map<std::string, std::string> out;
    std::string line;
    for (int no = 1; std::getline(in, line); ++no) {
        line = trim(line.substr(0, line.find('#')));
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos || trim(line.substr(0, eq)).empty())
            fail(ErrorKind::InvalidArgument, path + ":" + std::to_string(no) + ": expected key = value");
        out[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    return out;
}

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
    RunConfig cfg;
    CLI::App app{"Arithmetic statistics over ideals of a number field", "landau"};
    app.option_defaults()->always_capture_default();
    app.require_subcommand(1);
    std::map<std::string, CLI::App*> subs;
    for (const auto& cmd : commands()) {
        auto* sub = app.add_subcommand(cmd.name, cmd.help);
        add_common(sub, cfg);
        add_specific(cmd.name, sub, cfg);
        subs[cmd.name] = sub;
    }

    try {
        std::vector<std::string> args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());  // CLI11 consumes from the back
        app.parse(args);
    } catch (const CLI::CallForHelp& e) {
        app.exit(e, out, err);
        return 0;
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        for (const auto& [name, sub] : subs)
            if (sub->parsed()) err << sub->help();
        return 2;
    } catch (const Error& e) {
        err << "usage error: " << e.what() << '\n';
        return 2;
    }

    const CLI::App* active = app.get_subcommands().front();
    cfg.command = active->get_name();
    try {
        if (cfg.threads > 0) omp_set_num_threads(cfg.threads);
        const auto* cmd = &*std::find_if(commands().begin(), commands().end(),
                                         [&](const Command& c) { return cfg.command == c.name; });
        const Result r = cmd->fn(cfg);
        const std::string params = params_text(active);
        if (cfg.output_path.empty()) {
            emit(r, cfg, params, out);
        } else {
            std::filesystem::path p = cfg.output_path;
            if (p.is_relative())
                if (const char* dir = std::getenv("LANDAU_OUTPUT_DIR")) p = std::filesystem::path(dir) / p;
            std::ofstream f(p);
            if (!f) {
                err << "cannot write " << p.string() << '\n';
                return 1;
            }
            emit(r, cfg, params, f);
        }
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n' << active->help();
        return 2;
    } catch (const Error& e) {
        err << (usage_kind(e.kind()) ? "usage error: " : "error: ") << e.what() << '\n';
        return usage_kind(e.kind()) ? 2 : 1;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace landau::cli
