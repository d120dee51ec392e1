#include "heilbronn/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "heilbronn/constructions.hpp"
#include "heilbronn/experiments.hpp"
#include "heilbronn/io.hpp"
#include "heilbronn/ranking.hpp"
#include "heilbronn/witnesses.hpp"

namespace heilbronn::cli {

namespace {

using Json = nlohmann::ordered_json;

// Raised by handlers for flag combinations CLI11 cannot express.
struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

Json points_json(std::span<const UnitPoint> pts) {
    Json a = Json::array();
    for (const auto& p : pts) a.push_back({p.x, p.y});
    return a;
}

Json points_json(const GridArrangement& g) {
    Json a = Json::array();
    for (const auto& p : g.points()) a.push_back({p.x, p.y});
    return a;
}

Json mu_json(const MuEstimate& m) {
    return Json{{"n", m.n},         {"trials", m.trials}, {"degenerate", m.degenerate},
                {"mean", m.mean},   {"stderr", m.stderr_}, {"lo95", m.lo95},
                {"hi95", m.hi95},   {"scaled", m.mean * std::pow(static_cast<double>(m.n), 3.0)},
                {"seed", m.seed}};
}

std::string csv_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string seed_comment(std::uint64_t seed) { return "seed=" + std::to_string(seed); }

struct Context {
    unsigned jobs = 1;
};

// A parsed command: fills params/results, may set seed, or writes raw output itself.
struct Outcome {
    Json params = Json::object();
    Json results = Json::object();
    std::optional<std::uint64_t> seed;
    std::optional<std::string> raw;  // printed verbatim instead of a JSON record
};

struct Options {
    std::string file, grid, in, out, mode = "fast", format = "json", index, kind, action, triple;
    std::vector<std::size_t> ns;
    std::size_t n = 0, trials = 0, restarts = 8, steps = 20000, baseline_trials = 2000;
    std::int64_t side = 0, p = 0;
    std::uint64_t seed = 0, stream = 0;
    double t = 0.0, delta = 0.0, slack = 0.0, c1 = 1e-4;
};

SearchMode parse_mode(const std::string& m) {
    return m == "exhaustive" ? SearchMode::exhaustive : SearchMode::fast;
}

Outcome cmd_min_triangle(const Options& o, const Context&) {
    Outcome r;
    r.params = {{"mode", o.mode}};
    const SearchMode mode = parse_mode(o.mode);
    if (!o.grid.empty()) {
        const GridArrangement g = load_grid(o.grid);
        r.params["grid"] = o.grid;
        const GridTriangle tri = min_area_triangle(g, mode);
        r.results = {{"n", g.size()},
                     {"side", g.side()},
                     {"indices", tri.idx},
                     {"twice_area", tri.twice_area},
                     {"area", tri.area}};
        return r;
    }
    const PointSet pts = load_pointset(o.file);
    r.params["file"] = o.file;
    const UnitTriangle tri = min_area_triangle(pts, mode);
    Json verts = Json::array();
    for (auto i : tri.idx) verts.push_back({pts[i].x, pts[i].y});
    r.results = {{"n", pts.size()},
                 {"indices", tri.idx},
                 {"vertices", verts},
                 {"twice_area", tri.twice_area},
                 {"area", tri.area}};
    return r;
}

Outcome cmd_sample(const Options& o, const Context&) {
    Outcome r;
    r.seed = o.seed;
    r.params = {{"n", o.n}, {"stream", o.stream}};
    if (o.side > 0) {
        r.params["K"] = o.side;
        const GridArrangement g = sample_grid_arrangement(o.side, o.n, o.seed, o.stream);
        r.results = {{"n", g.size()}, {"side", g.side()}};
        if (!o.out.empty()) {
            save_grid(g, o.out, seed_comment(o.seed));
            r.results["output"] = o.out;
        } else {
            r.results["points"] = points_json(g);
        }
        return r;
    }
    const PointSet pts = sample_unit_square(o.n, o.seed, o.stream);
    r.results = {{"n", pts.size()}};
    if (!o.out.empty()) {
        save_pointset(pts, o.out, seed_comment(o.seed));
        r.results["output"] = o.out;
    } else {
        r.results["points"] = points_json(pts);
    }
    return r;
}

Outcome cmd_scan(const Options& o, const Context& ctx) {
    Outcome r;
    r.seed = o.seed;
    r.params = {{"ns", o.ns}, {"jobs", ctx.jobs}};
    if (o.trials) r.params["trials"] = o.trials;
    std::function<std::size_t(std::size_t)> trials_for;
    if (o.trials) trials_for = [t = o.trials](std::size_t) { return t; };
    const ScanResult s = scan(o.ns, o.seed, ctx.jobs, trials_for);
    if (o.format == "csv") {
        std::ostringstream csv;
        csv << "n,trials,mean,stderr,lo95,hi95,seed\n";
        for (const auto& m : s.estimates) {
            csv << m.n << ',' << m.trials << ',' << csv_number(m.mean) << ',' << csv_number(m.stderr_)
                << ',' << csv_number(m.lo95) << ',' << csv_number(m.hi95) << ',' << m.seed << '\n';
        }
        r.raw = csv.str();
        return r;
    }
    Json est = Json::array();
    for (const auto& m : s.estimates) est.push_back(mu_json(m));
    r.results = {{"estimates", est}};
    if (s.estimates.size() >= 3) {
        r.results["fit"] = {{"slope", s.fit.slope},
                            {"intercept", s.fit.intercept},
                            {"r_squared", s.fit.r_squared}};
    }
    return r;
}

Outcome cmd_tail(const Options& o, const Context& ctx) {
    Outcome r;
    r.seed = o.seed;
    const std::size_t trials = o.trials ? o.trials : default_trials(o.n);
    r.params = {{"n", o.n}, {"t", o.t}, {"trials", trials}, {"jobs", ctx.jobs}};
    const TailEstimate e = tail_probability(o.n, o.t, trials, o.seed, ctx.jobs);
    r.results = {{"n", e.n},          {"threshold", e.threshold}, {"trials", e.trials},
                 {"below", e.below},  {"degenerate", e.degenerate}, {"fraction", e.fraction}};
    return r;
}

Outcome cmd_construct_erdos(const Options& o, const Context&) {
    Outcome r;
    r.params = {{"p", o.p}};
    const ErdosConstruction e = erdos_prime(o.p);
    r.results = {{"p", e.p},
                 {"n", e.arrangement.size()},
                 {"collinear_triples", 0},
                 {"min_twice_area", e.min_twice_area},
                 {"area_cell_scale", e.area_cell_scale},
                 {"area_grid_scale", e.area_grid_scale}};
    if (!o.out.empty()) {
        save_grid(e.arrangement, o.out);
        r.results["output"] = o.out;
    } else {
        r.results["points"] = points_json(e.arrangement);
    }
    return r;
}

Outcome cmd_optimize(const Options& o, const Context& ctx) {
    Outcome r;
    r.seed = o.seed;
    r.params = {{"n", o.n}, {"restarts", o.restarts}, {"steps", o.steps}, {"jobs", ctx.jobs}};
    const OptimizerResult res = optimize_heilbronn(o.n, o.restarts, o.steps, o.seed, ctx.jobs);
    r.results = {{"n", o.n},
                 {"value", res.value},
                 {"iterations", res.iterations},
                 {"best_restart", res.best_restart}};
    if (!o.out.empty()) {
        save_pointset(res.points, o.out, seed_comment(o.seed));
        r.results["output"] = o.out;
    } else {
        r.results["points"] = points_json(res.points);
    }
    return r;
}

Outcome cmd_rank(const Options& o, const Context&) {
    Outcome r;
    r.params = {{"grid", o.grid}};
    const GridArrangement g = load_grid(o.grid);
    const ArrangementIndex idx = rank_arrangement(g);
    r.results = {{"side", g.side()},
                 {"n", g.size()},
                 {"index", idx.value.get_str()},
                 {"domain_size", idx.domain_size.get_str()},
                 {"baseline_length", baseline_length(g.side(), g.size())}};
    return r;
}

Outcome cmd_unrank(const Options& o, const Context&) {
    Outcome r;
    r.params = {{"K", o.side}, {"n", o.n}, {"index", o.index}};
    mpz_class index;
    if (o.index.empty() || index.set_str(o.index, 10) != 0) {
        throw DataError("index must be a non-negative decimal integer", 0);
    }
    const GridArrangement g = unrank_arrangement(index, o.side, o.n);
    r.results = {{"side", g.side()}, {"n", g.size()}};
    if (!o.out.empty()) {
        save_grid(g, o.out);
        r.results["output"] = o.out;
    } else {
        r.results["points"] = points_json(g);
    }
    return r;
}

Triple parse_triple(const std::string& s) {
    Triple t{};
    std::istringstream in(s);
    char c1 = 0, c2 = 0;
    if (!(in >> t[0] >> c1 >> t[1] >> c2 >> t[2]) || c1 != ',' || c2 != ',' || !in.eof()) {
        throw UsageError("--triple expects i,j,k");
    }
    return t;
}

Outcome cmd_witness(const Options& o, const Context&) {
    Outcome r;
    const WitnessKind kind = witness_kind_from_string(o.kind);
    r.params = {{"kind", o.kind}, {"action", o.action}};
    if (o.action == "encode") {
        if (o.grid.empty()) throw UsageError("witness encode needs --grid");
        const GridArrangement g = load_grid(o.grid);
        r.params["grid"] = o.grid;
        WitnessReport rep;
        switch (kind) {
            case WitnessKind::collinear: rep = encode_collinear_witness(g); break;
            case WitnessKind::rowline: rep = encode_rowline_witness(g); break;
            case WitnessKind::small_triangle:
                rep = o.triple.empty() ? encode_small_triangle_witness(g)
                                       : encode_small_triangle_witness(g, parse_triple(o.triple));
                break;
            case WitnessKind::theorem2: rep = encode_theorem2(g); break;
        }
        const WitnessFile w{kind, g.side(), g.size(), rep.payload};
        r.results = {{"kind", o.kind},
                     {"side", g.side()},
                     {"n", g.size()},
                     {"witness_length", rep.witness_length},
                     {"baseline_length", rep.baseline_length},
                     {"savings", rep.savings},
                     {"payload", rep.payload.to_hex()}};
        if (!o.out.empty()) {
            save_witness(w, o.out);
            r.results["output"] = o.out;
        }
        return r;
    }
    if (o.in.empty()) throw UsageError("witness decode needs --in");
    const WitnessFile w = load_witness(o.in);
    r.params["in"] = o.in;
    if (w.kind != kind) {
        throw DataError("witness file holds a " + std::string(to_string(w.kind)) + " witness", 1);
    }
    const GridArrangement g = decode_witness(w.kind, w.payload, w.side, w.n);
    r.results = {{"kind", o.kind}, {"side", g.side()}, {"n", g.size()}};
    if (!o.out.empty()) {
        save_grid(g, o.out);
        r.results["output"] = o.out;
    } else {
        r.results["points"] = points_json(g);
    }
    return r;
}

Outcome cmd_stats_degenerate(const Options& o, const Context& ctx) {
    Outcome r;
    r.seed = o.seed;
    r.params = {{"K", o.side}, {"n", o.n}, {"trials", o.trials}, {"jobs", ctx.jobs}};
    const DegenerateStats s = degenerate_structure_stats(o.side, o.n, o.trials, o.seed, ctx.jobs);
    r.results = {{"side", s.side},
                 {"n", s.n},
                 {"trials", s.trials},
                 {"collinear", s.collinear},
                 {"shared_row", s.shared_row},
                 {"collinear_frequency", s.collinear_frequency},
                 {"shared_row_frequency", s.shared_row_frequency}};
    return r;
}

Outcome cmd_analyze(const Options& o, const Context& ctx) {
    Outcome r;
    r.seed = o.seed;
    r.params = {{"file", o.file}, {"baseline_trials", o.baseline_trials}, {"jobs", ctx.jobs}};
    const PointSet pts = load_pointset(o.file);
    const PointSetAnalysis a = analyze_pointset(pts, o.baseline_trials, o.seed, ctx.jobs);
    r.results = {{"n", a.n},
                 {"area", a.area},
                 {"scaled", a.scaled},
                 {"percentile", a.percentile},
                 {"indices", a.triangle},
                 {"baseline_trials", a.baseline_trials}};
    return r;
}

Outcome cmd_bound(const Options& o, const Context&) {
    Outcome r;
    r.params = {{"delta", o.delta}, {"n", o.n}, {"c1", o.c1}, {"slack", o.slack}};
    r.results = {{"upper_bound", upper_bound_formula(o.delta, static_cast<double>(o.n), o.c1, o.slack)}};
    return r;
}

using Handler = std::function<Outcome(const Options&, const Context&)>;

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Heilbronn triangle toolkit", "heilbronn"};
    app.require_subcommand(1);
    app.fallthrough();
    app.failure_message(CLI::FailureMessage::help);

    Options o;
    unsigned jobs = default_jobs();
    app.add_option("--jobs", jobs, "Worker threads (default: HEILBRONN_JOBS or all cores)")
        ->check(CLI::PositiveNumber);

    std::vector<std::pair<CLI::App*, Handler>> commands;
    auto add = [&](const char* name, const char* help, Handler h) {
        CLI::App* sub = app.add_subcommand(name, help);
        commands.emplace_back(sub, std::move(h));
        return sub;
    };
    auto mode_flag = [&](CLI::App* sub) {
        sub->add_option("--mode", o.mode, "Search mode")->check(CLI::IsMember({"fast", "exhaustive"}));
    };
    auto seed_flag = [&](CLI::App* sub) {
        sub->add_option("--seed", o.seed, "Master seed")->required();
    };

    {
        auto* s = add("min-triangle", "Smallest triangle of a point set or grid file", cmd_min_triangle);
        auto* input = s->add_option_group("input", "Exactly one of");
        input->add_option("--file", o.file, "Point-set file")->check(CLI::ExistingFile);
        input->add_option("--grid", o.grid, "Grid file")->check(CLI::ExistingFile);
        input->require_option(1);
        mode_flag(s);
    }
    {
        auto* s = add("sample", "Uniform random point set or grid arrangement", cmd_sample);
        s->add_option("--n", o.n, "Number of points")->required();
        s->add_option("--K", o.side, "Grid side; omit for the unit square")
            ->check(CLI::Range(std::int64_t{2}, kMaxGridSide));
        s->add_option("--stream", o.stream, "Stream index");
        s->add_option("--out", o.out, "Output file");
        seed_flag(s);
    }
    {
        auto* s = add("scan", "Estimate mu_n over several n and fit the exponent", cmd_scan);
        s->add_option("--ns", o.ns, "Comma-separated n values")
            ->required()
            ->delimiter(',')
            ->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
        s->add_option("--trials", o.trials, "Trials per n (default max(500, 160000/n))")
            ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
        s->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        seed_flag(s);
    }
    {
        auto* s = add("tail", "Estimate P(A < t)", cmd_tail);
        s->add_option("--n", o.n, "Number of points")->required()->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
        s->add_option("--t", o.t, "Threshold")->required();
        s->add_option("--trials", o.trials, "Trials")->check(CLI::PositiveNumber);
        seed_flag(s);
    }
    {
        auto* s = add("construct-erdos", "Erdos parabola construction on a p x p grid", cmd_construct_erdos);
        s->add_option("--p", o.p, "Prime")->required()->check(CLI::Range(std::int64_t{2}, std::int64_t{1} << 16));
        s->add_option("--out", o.out, "Grid file to write");
    }
    {
        auto* s = add("optimize", "Local search for good Heilbronn configurations", cmd_optimize);
        s->add_option("--n", o.n, "Number of points")->required()->check(CLI::Range(3, 16));
        s->add_option("--restarts", o.restarts, "Independent restarts")->check(CLI::PositiveNumber);
        s->add_option("--steps", o.steps, "Moves per restart");
        s->add_option("--out", o.out, "Point-set file to write");
        seed_flag(s);
    }
    {
        auto* s = add("rank", "Index of a grid arrangement", cmd_rank);
        s->add_option("--grid", o.grid, "Grid file")->required()->check(CLI::ExistingFile);
    }
    {
        auto* s = add("unrank", "Grid arrangement with a given index", cmd_unrank);
        s->add_option("--K", o.side, "Grid side")->required()->check(CLI::Range(std::int64_t{2}, kMaxGridSide));
        s->add_option("--n", o.n, "Number of pebbles")->required();
        s->add_option("--index", o.index, "Decimal index")->required();
        s->add_option("--out", o.out, "Grid file to write");
    }
    {
        auto* s = add("witness", "Encode or decode a compression witness", cmd_witness);
        s->add_option("kind", o.kind, "collinear | rowline | small_triangle | theorem2")
            ->required()
            ->check(CLI::IsMember({"collinear", "rowline", "small_triangle", "theorem2"}));
        s->add_option("action", o.action, "encode | decode")
            ->required()
            ->check(CLI::IsMember({"encode", "decode"}));
        s->add_option("--grid", o.grid, "Grid file to encode")->check(CLI::ExistingFile);
        s->add_option("--in", o.in, "Witness file to decode")->check(CLI::ExistingFile);
        s->add_option("--out", o.out, "Output file");
        s->add_option("--triple", o.triple, "Triangle i,j,k (small_triangle only)");
    }
    {
        auto* s = add("stats-degenerate", "Frequency of collinear triples and shared rows", cmd_stats_degenerate);
        s->add_option("--K", o.side, "Grid side")->required()->check(CLI::Range(std::int64_t{2}, kMaxGridSide));
        s->add_option("--n", o.n, "Number of pebbles")->required()->check(CLI::Range(std::size_t{2}, std::size_t{1} << 20));
        s->add_option("--trials", o.trials, "Trials")->required()->check(CLI::PositiveNumber);
        seed_flag(s);
    }
    {
        auto* s = add("analyze", "Place a point set within the random baseline", cmd_analyze);
        s->add_option("--file", o.file, "Point-set file")->required()->check(CLI::ExistingFile);
        s->add_option("--baseline-trials", o.baseline_trials, "Baseline sample size")
            ->check(CLI::Range(std::size_t{2}, std::numeric_limits<std::size_t>::max()));
        seed_flag(s);
    }
    {
        auto* s = add("bound", "Upper bound on mu_n from a deficiency budget", cmd_bound);
        s->add_option("--delta", o.delta, "Deficiency in bits")->required()->check(CLI::NonNegativeNumber);
        s->add_option("--n", o.n, "Number of points")->required()->check(CLI::PositiveNumber);
        s->add_option("--c1", o.c1, "Forbidding-line constant")->check(CLI::PositiveNumber);
        s->add_option("--slack", o.slack, "Additive slack in bits");
    }

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
    }

    const auto it = std::find_if(commands.begin(), commands.end(),
                                 [](const auto& c) { return c.first->parsed(); });
    const Context ctx{jobs};
    const auto start = std::chrono::steady_clock::now();
    Outcome result;
    try {
        result = it->second(o, ctx);
    } catch (const UsageError& e) {
        err << it->first->get_name() << ": " << e.what() << "\n\n" << it->first->help();
        return kExitUsage;
    } catch (const std::exception& e) {
        err << it->first->get_name() << ": " << e.what() << '\n';
        return kExitData;
    }
    const double ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    if (result.raw) {
        out << *result.raw;
        return kExitOk;
    }
    Json record;
    record["command"] = it->first->get_name();
    record["version"] = kOutputVersion;
    record["seed"] = result.seed ? Json(*result.seed) : Json(nullptr);
    record["params"] = std::move(result.params);
    record["results"] = std::move(result.results);
    record["timing_ms"] = ms;
    out << record.dump(2) << '\n';
    return kExitOk;
}

int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace heilbronn::cli
