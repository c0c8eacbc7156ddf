#include "hcd/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hcd/bargaining.hpp"
#include "hcd/io.hpp"
#include "hcd/policy.hpp"
#include "hcd/sampling.hpp"
#include "hcd/sim.hpp"
#include "hcd/trace.hpp"

namespace hcd::cli {

namespace {

/// Input or constraint problem: exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

enum class Format { Csv, Json };

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

nlohmann::ordered_json json_cell(const std::string& cell)
{
    if (cell.empty()) return nullptr;
    if (cell == "true") return true;
    if (cell == "false") return false;
    double value = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), value, std::chars_format::fixed);
    if (ec == std::errc() && ptr == cell.data() + cell.size()) return nlohmann::ordered_json::parse(cell);
    return cell;
}

void render(const Table& table, Format format, std::ostream& out)
{
    if (format == Format::Csv) {
        for (std::size_t i = 0; i < table.columns.size(); ++i) out << (i ? "," : "") << table.columns[i];
        out << '\n';
        for (const auto& row : table.rows) {
            for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << row[i];
            out << '\n';
        }
        return;
    }
    nlohmann::ordered_json ordered = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj;
        for (std::size_t i = 0; i < table.columns.size(); ++i) obj[table.columns[i]] = json_cell(row[i]);
        ordered.push_back(std::move(obj));
    }
    out << ordered.dump(2) << '\n';
}

std::string yes_no(bool v) { return v ? "true" : "false"; }

template <Scalar S>
std::string fmt(const S& v)
{
    return format_scalar(v);
}

template <Scalar S>
std::string fmt(const std::optional<S>& v)
{
    return v ? format_scalar(*v) : std::string();
}

/// Options shared by every subcommand.
struct Common {
    std::string format = "csv";
    std::string mode;
    std::string output = "-";
};

void add_common(CLI::App* cmd, Common& common)
{
    cmd->add_option("--format", common.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    cmd->add_option("--mode", common.mode, "Numeric mode (default from " + std::string(kModeEnv) + ", else exact)")
        ->check(CLI::IsMember({"exact", "float"}));
    cmd->add_option("-o,--output", common.output, "Output path, - for standard output");
}

struct Context {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
    NumericMode mode = NumericMode::Exact;
    Format format = Format::Csv;
    std::string output = "-";

    void emit(const Table& table) const
    {
        if (output == "-") {
            render(table, format, out);
            return;
        }
        std::ofstream file(output);
        if (!file) throw UsageError("cannot write " + output);
        render(table, format, file);
    }

    /// Opens `path`, or the context's input stream for "-".
    template <class Fn>
    auto with_input(const std::string& path, Fn&& fn) const
    {
        if (path == "-") return fn(in);
        std::ifstream file(path);
        if (!file) throw UsageError("cannot read " + path);
        return fn(static_cast<std::istream&>(file));
    }
};

template <Scalar S>
S parse_flag(const std::string& name, const std::string& text)
{
    try {
        return parse_scalar<S>(text);
    } catch (const std::exception& e) {
        throw UsageError("--" + name + ": " + e.what());
    }
}

template <Scalar S>
std::optional<S> parse_flag(const std::string& name, const std::optional<std::string>& text)
{
    if (!text) return std::nullopt;
    return parse_flag<S>(name, *text);
}

/// Grid syntax: "a:b:step" (inclusive) or a comma list.
template <Scalar S>
std::vector<S> parse_grid(const std::string& name, const std::string& text)
{
    std::vector<S> values;
    if (std::count(text.begin(), text.end(), ':') == 2) {
        const auto c1 = text.find(':');
        const auto c2 = text.find(':', c1 + 1);
        const S lo = parse_flag<S>(name, text.substr(0, c1));
        const S hi = parse_flag<S>(name, text.substr(c1 + 1, c2 - c1 - 1));
        const S step = parse_flag<S>(name, text.substr(c2 + 1));
        if (!(step > S(0)) || hi < lo) throw UsageError("--" + name + ": need lo <= hi and step > 0");
        const double steps = to_double((hi - lo) / step);
        if (steps > 1e6) throw UsageError("--" + name + ": grid too large");
        const auto count = static_cast<std::int64_t>(std::floor(steps + 1e-9));
        for (std::int64_t i = 0; i <= count; ++i) values.push_back(lo + from_count<S>(i) * step);
    } else {
        std::stringstream ss(text);
        std::string item;
        while (std::getline(ss, item, ',')) values.push_back(parse_flag<S>(name, item));
    }
    if (values.empty()) throw UsageError("--" + name + ": empty grid");
    return values;
}

Count parse_count_flag(const std::string& name, const std::string& text)
{
    Count v = 0;
    auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
    if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
        throw UsageError("--" + name + ": expected an integer, got '" + text + "'");
    }
    return v;
}

// ---------------------------------------------------------------- price

struct PriceArgs {
    std::optional<std::string> config;
    std::optional<std::string> p_n, p_b, p_std, p_u, s;
    std::optional<std::string> x, y, f;
};

template <Scalar S>
void run_price(const PriceArgs& args, const Context& ctx)
{
    KeyValues kv;
    if (args.config) kv = ctx.with_input(*args.config, [](std::istream& is) { return parse_key_values(is); });
    auto set = [&](const char* key, const std::optional<std::string>& flag) {
        if (flag) kv.entries[key] = {*flag, 0};
    };
    set("p_n", args.p_n);
    set("p_b", args.p_b);
    set("p_std", args.p_std);
    set("p_u", args.p_u);
    set("s", args.s);
    set("x", args.x);
    set("y", args.y);
    set("f", args.f);

    for (const char* key : {"p_n", "p_std", "x", "y"}) {
        if (!kv.get(key)) throw UsageError(std::string("missing ") + key);
    }
    Cohort cohort{parse_count_flag("x", *kv.get("x")), parse_count_flag("y", *kv.get("y")),
                  kv.get("f") ? parse_count_flag("f", *kv.get("f")) : 1};
    try {
        require_valid(cohort);
    } catch (const InvalidCohort& e) {
        throw UsageError(e.what());
    }

    PriceSchedule<S> schedule;
    apply_rates(kv, schedule);
    const bool has_premium_price = kv.get("p_b").has_value();
    if (!has_premium_price && cohort.y > 0) throw UsageError("missing p_b (required when y > 0)");

    auto violations = validate(schedule);
    if (!has_premium_price) std::erase(violations, Violation::PremiumNotAboveStandard);
    if (!violations.empty()) {
        ctx.err << "constraint violations:";
        for (auto v : violations) ctx.err << ' ' << describe(v) << ';';
        ctx.err << '\n';
        throw UsageError("price schedule violates constraints");
    }

    const NbsResult<S> nbs = nbs_reward(schedule, cohort);
    const BenefitReport<S> report = benefit_report(schedule, cohort);
    const bool equilibrium_form = !(report.scenario != Scenario::AllPremium && cohort.x < 2);

    Table t{{"scenario", "x", "y", "f", "p_n", "p_b", "p_std", "nbs_status", "p_u", "ben_cp", "ben_user",
             "load_reduction", "benefit_form"},
            {}};
    t.rows.push_back({std::string(to_string(report.scenario)), std::to_string(cohort.x), std::to_string(cohort.y),
                      std::to_string(cohort.f), fmt(schedule.p_n), has_premium_price ? fmt(schedule.p_b) : "",
                      fmt(schedule.p_std), std::string(to_string(nbs.status)), fmt(nbs.reward), fmt(report.cp),
                      fmt(report.sharer), fmt(report.load_reduction), equilibrium_form ? "equilibrium" : "raw"});
    ctx.emit(t);
}

// ---------------------------------------------------------------- compare

struct CompareArgs {
    std::optional<std::string> m, n, p_b, p_std;
    std::string p_n = "1";
    std::string f = "1";
    std::string x;
    std::string y = "0";
};

template <Scalar S>
void run_compare(const CompareArgs& args, const Context& ctx)
{
    const S p_n = parse_flag<S>("pn", args.p_n);
    const S f = parse_flag<S>("f", args.f);
    S m, n;
    if (args.m && args.n) {
        m = parse_flag<S>("m", *args.m);
        n = parse_flag<S>("n", *args.n);
    } else if (args.p_b && args.p_std) {
        if (!(p_n > S(0))) throw UsageError("p_n must be positive");
        m = parse_flag<S>("pb", *args.p_b) / p_n;
        n = parse_flag<S>("pstd", *args.p_std) / p_n;
    } else {
        throw UsageError("give either --m and --n, or --pb and --pstd");
    }
    const Count x = parse_count_flag("x", args.x);
    const Count y = parse_count_flag("y", args.y);

    ComparisonReport<S> rep;
    try {
        rep = compare_cp(m, n, x, y, p_n, f);
    } catch (const DegenerateCohort& e) {
        throw UsageError(e.what());
    }
    Table t{{"m", "n", "x", "y", "ben_standard", "ben_premium", "ben_mixed", "delta_21", "delta_23", "dominant",
             "two_m_gt_n_plus_2", "m_gt_1_5"},
            {}};
    t.rows.push_back({fmt(m), fmt(n), std::to_string(x), std::to_string(y), fmt(rep.ben_standard), fmt(rep.ben_premium),
                      fmt(rep.ben_mixed), fmt(rep.delta_21), fmt(rep.delta_23), std::string(to_string(rep.dominant)),
                      yes_no(rep.two_m_gt_n_plus_2), yes_no(rep.m_gt_1_5)});
    ctx.emit(t);
}

// ---------------------------------------------------------------- sweep

struct SweepArgs {
    std::optional<std::string> preset;
    std::optional<std::string> n, k, r, x;  // grids or single values
    std::string p_n = "1";
    std::string f = "1";
};

template <Scalar S>
void run_sweep(const SweepArgs& args, const Context& ctx)
{
    std::string n_text = "2", k_text = "0:1:0.1", r_text = "1.5:4:0.5", x_text = "10";
    if (args.preset) {
        if (*args.preset == "fig4a") {
            // defaults above: k and r vary at x = 10, n = 2
        } else if (*args.preset == "fig4b") {
            k_text = "0.5";
            x_text = "10:100:10";
        } else if (*args.preset == "fig4c") {
            r_text = "2";
            x_text = "10:100:10";
        } else {
            throw UsageError("unknown preset '" + *args.preset + "' (fig4a, fig4b, fig4c)");
        }
    }
    if (args.n) n_text = *args.n;
    if (args.k) k_text = *args.k;
    if (args.r) r_text = *args.r;
    if (args.x) x_text = *args.x;

    const auto ns = parse_grid<S>("n", n_text);
    const auto ks = parse_grid<S>("k", k_text);
    const auto rs = parse_grid<S>("r", r_text);
    const auto xs = parse_grid<S>("x", x_text);
    const S p_n = parse_flag<S>("pn", args.p_n);
    const S f = parse_flag<S>("f", args.f);
    for (const S& v : ns) {
        if (!(v > S(1))) throw UsageError("--n: values must exceed 1");
    }
    for (const S& v : rs) {
        if (!(v > S(1))) throw UsageError("--r: values must exceed 1");
    }
    for (const S& v : ks) {
        if (v < S(0) || v > S(1)) throw UsageError("--k: values must lie in [0, 1]");
    }
    for (const S& v : xs) {
        if (v < S(1)) throw UsageError("--x: values must be at least 1");
    }
    if (!(p_n > S(0)) || !(f > S(0))) throw UsageError("--pn and --f must be positive");

    using Column = Eigen::Array<S, Eigen::Dynamic, 1>;
    Table t{{"n", "r", "x", "k", "benefit"}, {}};
    for (const S& n : ns) {
        for (const S& r : rs) {
            for (const S& x : xs) {
                // One column over k per (n, r, x).
                Column k(static_cast<Eigen::Index>(ks.size()));
                for (std::size_t i = 0; i < ks.size(); ++i) k(static_cast<Eigen::Index>(i)) = ks[i];
                const Column xcol = Column::Constant(k.size(), x);
                const Column benefit = ben_cp_eq_normalized<Column, S>(n, r, k, xcol, p_n, f);
                for (Eigen::Index i = 0; i < k.size(); ++i) {
                    t.rows.push_back({fmt(n), fmt(r), fmt(x), fmt(S(k(i))), fmt(S(benefit(i)))});
                }
            }
        }
    }
    ctx.emit(t);
}

// ---------------------------------------------------------------- simulate

struct SimulateArgs {
    std::optional<std::string> path;
    bool check = false;
    std::optional<std::uint64_t> seed;
    Count cases = 100;
    Count max_x = 50;
    std::string report = "ledger";
    std::optional<Tick> through;
};

template <Scalar S>
int run_simulate(const SimulateArgs& args, const Context& ctx)
{
    if (!args.path) {
        if (!args.check) throw UsageError("simulate needs a scenario file, or --check for random cases");
        if (!args.seed) throw UsageError("--check on random cases needs --seed");
        if (args.cases < 1 || args.max_x < 1) throw UsageError("--cases and --max-x must be positive");
        std::mt19937_64 rng(*args.seed);
        Count failures = 0;
        for (Count i = 0; i < args.cases; ++i) {
            const auto schedule = random_schedule<S>(rng);
            const Cohort cohort = random_cohort(rng, 1, args.max_x);
            const auto rep = oracle_check(schedule, cohort, rng());
            if (!rep.ok()) {
                ++failures;
                for (const auto& m : rep.mismatches) {
                    ctx.err << "case " << i << " (x=" << cohort.x << ", y=" << cohort.y << "): " << m << '\n';
                }
            }
        }
        ctx.emit(Table{{"cases", "mismatches"}, {{std::to_string(args.cases), std::to_string(failures)}}});
        return failures == 0 ? kOk : kVerificationFailure;
    }

    const ScenarioText text = ctx.with_input(*args.path, [](std::istream& is) { return parse_scenario_text(is); });
    const PriceSchedule<S> schedule = scenario_schedule<S>(text);
    require_valid(schedule);
    const SimOutcome<S> outcome = run(schedule, text.f, text.agents, text.requests);

    if (args.report == "ledger") {
        Table t{{"time", "payer", "payee", "amount", "reason"}, {}};
        for (const auto& e : outcome.ledger) {
            if (args.through && e.time > *args.through) continue;
            t.rows.push_back({std::to_string(e.time), to_string(e.payer), to_string(e.payee), fmt(e.amount),
                              std::string(to_string(e.reason))});
        }
        ctx.emit(t);
    } else if (args.report == "nets") {
        const auto nets = args.through ? outcome.nets_through(*args.through) : outcome.net;
        Table t{{"party", "net"}, {}};
        for (const auto& [party, value] : nets) t.rows.push_back({to_string(party), fmt(value)});
        ctx.emit(t);
    } else {
        Table t{{"time", "kind", "from", "to"}, {}};
        for (const auto& m : outcome.messages) {
            if (args.through && m.time > *args.through) continue;
            t.rows.push_back({std::to_string(m.time), std::string(to_string(m.kind)), to_string(m.from), to_string(m.to)});
        }
        ctx.emit(t);
    }

    if (!args.check) return kOk;
    bool ok = true;
    const Cohort cohort = cohort_of(outcome);
    const bool complete = outcome.input.requests.size() == outcome.input.agents.size();
    const bool fresh = std::none_of(text.agents.begin(), text.agents.end(),
                                    [](const UserAgent& a) { return a.owns_content || a.designated_sharer; });
    if (complete && fresh) {
        for (const auto& m : check_against_formulas(schedule, cohort, outcome)) {
            ctx.err << "scenario: " << m << '\n';
            ok = false;
        }
    } else {
        ctx.err << "scenario: formula check skipped (not every agent requests once from an empty start)\n";
    }
    if (!args.seed) throw UsageError("--check needs --seed");
    const auto rep = oracle_check(schedule, cohort, *args.seed);
    for (const auto& m : rep.mismatches) {
        ctx.err << "oracle: " << m << '\n';
        ok = false;
    }
    return ok ? kOk : kVerificationFailure;
}

// ---------------------------------------------------------------- calibrate / policy

struct CalibrateArgs {
    std::string r, a, b;
    std::string p_n = "1";
    Count f = 1;
};

template <Scalar S>
void run_calibrate(const CalibrateArgs& args, const Context& ctx)
{
    const S r = parse_flag<S>("r", args.r);
    const S a = parse_flag<S>("a", args.a);
    const S b = parse_flag<S>("b", args.b);
    const S p_n = parse_flag<S>("pn", args.p_n);
    if (args.f < 1) throw UsageError("--f must be at least 1");
    if (!(p_n > S(0))) throw UsageError("--pn must be positive");
    const S phi = calibrate_phi(r, a, b, p_n, args.f);
    const PolicyWeights<S> w{a, b, phi};
    require_valid(w);
    const auto prices = asymptotic_policy(w, p_n, args.f);
    Table t{{"r", "a", "b", "p_n", "f", "phi", "p_b", "p_std", "ratio", "feasible"}, {}};
    t.rows.push_back({fmt(r), fmt(a), fmt(b), fmt(p_n), std::to_string(args.f), fmt(phi), fmt(prices.p_b),
                      fmt(prices.p_std), fmt(S(prices.p_b / prices.p_std)), yes_no(prices.feasible)});
    ctx.emit(t);
}

struct PolicyArgs {
    std::string a, b, phi;
    std::string p_n = "1";
    Count f = 1;
    std::optional<Count> x;
};

template <Scalar S>
void run_policy(const PolicyArgs& args, const Context& ctx)
{
    const PolicyWeights<S> w{parse_flag<S>("a", args.a), parse_flag<S>("b", args.b), parse_flag<S>("phi", args.phi)};
    require_valid(w);
    const S p_n = parse_flag<S>("pn", args.p_n);
    if (args.f < 1) throw UsageError("--f must be at least 1");
    if (!(p_n > S(0))) throw UsageError("--pn must be positive");

    Table t{{"mode", "x", "gap", "p_b", "p_std", "ratio", "feasible", "residual", "mixed_spread"}, {}};
    auto add = [&](const PolicyPrices<S>& p, const std::string& x) {
        const std::string ratio = p.p_std == S(0) ? "" : fmt(S(p.p_b / p.p_std));
        t.rows.push_back({std::string(to_string(p.mode)), x, fmt(p.gap), fmt(p.p_b), fmt(p.p_std), ratio,
                          yes_no(p.feasible), fmt(p.residual), fmt(p.mixed_spread)});
    };
    add(asymptotic_policy(w, p_n, args.f), "");
    if (args.x) {
        if (*args.x < 2) throw UsageError("--x must be at least 2");
        add(exact_indifference(w, p_n, args.f, *args.x), std::to_string(*args.x));
    }
    ctx.emit(t);
}

// ---------------------------------------------------------------- traces

struct GeneratorArgs {
    Count users = 100;
    Count contents = 10;
    double zipf = 0.8;
    double premium_prob = 0.0;
    Count sessions = 10;
    std::int64_t size = 1'000'000'000;
};

void add_generator_options(CLI::App* cmd, GeneratorArgs& g)
{
    cmd->add_option("--users", g.users, "Number of users")->capture_default_str();
    cmd->add_option("--contents", g.contents, "Number of contents")->capture_default_str();
    cmd->add_option("--zipf", g.zipf, "Zipf exponent of content popularity")->capture_default_str();
    cmd->add_option("--premium-prob", g.premium_prob, "Per-user premium probability")->capture_default_str();
    cmd->add_option("--sessions", g.sessions, "Sessions per user")->capture_default_str();
    cmd->add_option("--size", g.size, "Content size in bytes")->capture_default_str();
}

TraceParams trace_params(const GeneratorArgs& g, std::uint64_t seed)
{
    return TraceParams{seed, g.users, g.contents, g.zipf, g.premium_prob, g.size, g.sessions};
}

struct McArgs {
    std::optional<std::string> trace;
    GeneratorArgs gen;
    double n = 2.0;
    double r = 2.0;
    std::string grid = "0:1:0.1";
    Count replicates = 200;
    std::optional<std::uint64_t> seed;
};

void run_mc(const McArgs& args, const Context& ctx)
{
    if (!args.seed) throw UsageError("mc needs --seed");
    std::vector<SessionRecord> records;
    if (args.trace) {
        records = ctx.with_input(*args.trace, [](std::istream& is) { return parse_trace(is); });
    } else {
        try {
            records = generate_trace(trace_params(args.gen, *args.seed));
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
    }
    CurveParams params;
    params.n = args.n;
    params.r = args.r;
    for (const Rational& q : parse_grid<Rational>("grid", args.grid)) params.grid.push_back(q.to_double());
    params.replicates = args.replicates;
    params.seed = *args.seed;

    const auto pool = user_pool(records);
    const auto cohorts = extract_cohorts(records);
    std::vector<CurvePoint> curve;
    try {
        curve = mc_benefit_curve(pool, cohorts, params);
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    Table t{{"premium_fraction", "mean", "ci_low", "ci_high", "replicates"}, {}};
    for (const auto& p : curve) {
        t.rows.push_back({format_double(p.premium_fraction), format_double(p.mean_benefit), format_double(p.ci_low),
                          format_double(p.ci_high), std::to_string(p.replicates)});
    }
    ctx.emit(t);
}

struct GenTraceArgs {
    GeneratorArgs gen;
    std::optional<std::uint64_t> seed;
};

void run_gen_trace(const GenTraceArgs& args, const Context& ctx)
{
    if (!args.seed) throw UsageError("gen-trace needs --seed");
    std::vector<SessionRecord> records;
    try {
        records = generate_trace(trace_params(args.gen, *args.seed));
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    if (ctx.output == "-") {
        write_trace(ctx.out, records);
        return;
    }
    std::ofstream file(ctx.output);
    if (!file) throw UsageError("cannot write " + ctx.output);
    write_trace(file, records);
}

NumericMode resolve_mode(const std::string& flag, const std::optional<std::string>& env)
{
    const std::string chosen = !flag.empty() ? flag : env.value_or("exact");
    if (chosen == "exact") return NumericMode::Exact;
    if (chosen == "float") return NumericMode::Float;
    throw UsageError(std::string(kModeEnv) + " must be exact or float, got '" + chosen + "'");
}

template <class Fn>
int dispatch(NumericMode mode, Fn&& fn)
{
    if (mode == NumericMode::Exact) return fn(Rational{});
    return fn(double{});
}

}  // namespace

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err,
        const std::optional<std::string>& default_mode)
{
    CLI::App app{"Pricing and simulation for hybrid peer-assisted content delivery", "hcd"};
    app.require_subcommand(1);

    Common common;
    PriceArgs price;
    CompareArgs compare;
    SweepArgs sweep;
    SimulateArgs simulate;
    CalibrateArgs calibrate;
    PolicyArgs policy;
    McArgs mc;
    GenTraceArgs gen;

    auto* c_price = app.add_subcommand("price", "Bargaining reward and equilibrium benefits for one content");
    add_common(c_price, common);
    c_price->add_option("--config", price.config, "key=value file with p_n, p_b, p_std, p_u, s, x, y, f");
    c_price->add_option("--pn", price.p_n, "Network fee per byte");
    c_price->add_option("--pb", price.p_b, "Premium price per byte");
    c_price->add_option("--pstd", price.p_std, "Standard price per byte");
    c_price->add_option("--pu", price.p_u, "Sharing reward (ignored: solved by bargaining)");
    c_price->add_option("--s", price.s, "Energy cost per shared byte");
    c_price->add_option("--x", price.x, "Total users");
    c_price->add_option("--y", price.y, "Premium users");
    c_price->add_option("--f", price.f, "File size in bytes");

    auto* c_compare = app.add_subcommand("compare", "Compare CP benefit across scenarios");
    add_common(c_compare, common);
    c_compare->add_option("--m", compare.m, "p_b in units of p_n");
    c_compare->add_option("--n", compare.n, "p_std in units of p_n");
    c_compare->add_option("--pb", compare.p_b, "Premium price (alternative to --m)");
    c_compare->add_option("--pstd", compare.p_std, "Standard price (alternative to --n)");
    c_compare->add_option("--pn", compare.p_n, "Network fee per byte")->capture_default_str();
    c_compare->add_option("--f", compare.f, "File size in bytes")->capture_default_str();
    c_compare->add_option("--x", compare.x, "Total users")->required();
    c_compare->add_option("--y", compare.y, "Premium users for the mixed term")->capture_default_str();

    auto* c_sweep = app.add_subcommand("sweep", "Normalized CP benefit over grids of k, r, x");
    add_common(c_sweep, common);
    c_sweep->add_option("--preset", sweep.preset, "fig4a (k, r), fig4b (r, x), fig4c (k, x)");
    c_sweep->add_option("--n", sweep.n, "Standard price multiple(s)");
    c_sweep->add_option("--k", sweep.k, "Premium fraction grid, a:b:step or list");
    c_sweep->add_option("--r", sweep.r, "Price ratio grid");
    c_sweep->add_option("--x", sweep.x, "Audience size grid");
    c_sweep->add_option("--pn", sweep.p_n, "Network fee per byte")->capture_default_str();
    c_sweep->add_option("--f", sweep.f, "File size in bytes")->capture_default_str();

    auto* c_sim = app.add_subcommand("simulate", "Run the distribution protocol on a scenario file");
    add_common(c_sim, common);
    c_sim->add_option("scenario", simulate.path, "Scenario file, - for standard input");
    c_sim->add_flag("--check", simulate.check, "Verify ledger nets against the closed forms");
    c_sim->add_option("--seed", simulate.seed, "Seed for randomized checks");
    c_sim->add_option("--cases", simulate.cases, "Random cases when no scenario is given")->capture_default_str();
    c_sim->add_option("--max-x", simulate.max_x, "Largest random audience")->capture_default_str();
    c_sim->add_option("--report", simulate.report, "ledger, nets or messages")
        ->check(CLI::IsMember({"ledger", "nets", "messages"}))
        ->capture_default_str();
    c_sim->add_option("--through", simulate.through, "Only events up to this tick");

    auto* c_cal = app.add_subcommand("calibrate", "phi giving price ratio r under the load-aware policy");
    add_common(c_cal, common);
    c_cal->add_option("--r", calibrate.r, "Target p_b / p_std")->required();
    c_cal->add_option("--a", calibrate.a, "Benefit weight")->required();
    c_cal->add_option("--b", calibrate.b, "Load weight")->required();
    c_cal->add_option("--pn", calibrate.p_n, "Network fee per byte")->capture_default_str();
    c_cal->add_option("--f", calibrate.f, "File size in bytes")->capture_default_str();

    auto* c_pol = app.add_subcommand("policy", "Load-aware prices, asymptotic and (with --x) exact");
    add_common(c_pol, common);
    c_pol->add_option("--a", policy.a, "Benefit weight")->required();
    c_pol->add_option("--b", policy.b, "Load weight")->required();
    c_pol->add_option("--phi", policy.phi, "Value of full load reduction")->required();
    c_pol->add_option("--pn", policy.p_n, "Network fee per byte")->capture_default_str();
    c_pol->add_option("--f", policy.f, "File size in bytes")->capture_default_str();
    c_pol->add_option("--x", policy.x, "Audience size for the exact solve");

    auto* c_mc = app.add_subcommand("mc", "Monte-Carlo CP benefit against premium fraction");
    add_common(c_mc, common);
    c_mc->add_option("--trace", mc.trace, "Trace CSV, - for standard input (default: generate one)");
    add_generator_options(c_mc, mc.gen);
    c_mc->add_option("--n", mc.n, "p_std / p_n")->capture_default_str();
    c_mc->add_option("--r", mc.r, "p_b / p_std")->capture_default_str();
    c_mc->add_option("--grid", mc.grid, "Premium fractions, a:b:step or list")->capture_default_str();
    c_mc->add_option("--replicates", mc.replicates, "Replicates per grid point")->capture_default_str();
    c_mc->add_option("--seed", mc.seed, "Random seed (required)");

    auto* c_gen = app.add_subcommand("gen-trace", "Write a synthetic session trace");
    add_common(c_gen, common);
    add_generator_options(c_gen, gen.gen);
    c_gen->add_option("--seed", gen.seed, "Random seed (required)");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }

    try {
        Context ctx{in, out, err};
        ctx.mode = resolve_mode(common.mode, default_mode);
        ctx.format = common.format == "json" ? Format::Json : Format::Csv;
        ctx.output = common.output;

        if (c_price->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { run_price<S>(price, ctx); return int(kOk); });
        }
        if (c_compare->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { run_compare<S>(compare, ctx); return int(kOk); });
        }
        if (c_sweep->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { run_sweep<S>(sweep, ctx); return int(kOk); });
        }
        if (c_sim->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { return run_simulate<S>(simulate, ctx); });
        }
        if (c_cal->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { run_calibrate<S>(calibrate, ctx); return int(kOk); });
        }
        if (c_pol->parsed()) {
            return dispatch(ctx.mode, [&]<class S>(S) { run_policy<S>(policy, ctx); return int(kOk); });
        }
        if (c_mc->parsed()) {
            run_mc(mc, ctx);
            return kOk;
        }
        if (c_gen->parsed()) {
            run_gen_trace(gen, ctx);
            return kOk;
        }
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const std::domain_error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    } catch (const RationalOverflow& e) {
        err << "error: " << e.what() << " (try --mode float)\n";
        return kInputError;
    }
    return kInputError;
}

}  // namespace hcd::cli
