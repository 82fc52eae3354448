// switchstab: certified bounds, value tables, orbit analysis, and
// sample-and-hold simulation for small switched linear systems.
//
// Output contract: one JSON report on stdout; CSV/SVG only behind explicit
// flags. Exit codes: 0 ok, 1 input error, 2 method inapplicable,
// 3 resource cap, 4 numerical non-convergence.

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "switchstab/bounds.hpp"
#include "switchstab/ctsim.hpp"
#include "switchstab/instances.hpp"
#include "switchstab/kernels.hpp"
#include "switchstab/lyapunov.hpp"
#include "switchstab/orbit.hpp"
#include "switchstab/report.hpp"
#include "switchstab/svg.hpp"

namespace {

using namespace switchstab;
using nlohmann::ordered_json;

constexpr double kPi = 3.141592653589793238462643383279502884;

struct LoadedSet {
    MatrixSet set;
    std::string source;
    std::string digest;
};

LoadedSet load_input(const std::string& input) {
    if (auto inst = find_instance(input)) {
        const std::string canon = serialize_matrix_set(inst->set);
        return {inst->set, input, fnv1a_hex(canon)};
    }
    std::ifstream f(input);
    if (!f) throw input_error("input is neither a built-in instance nor a readable file: " + input);
    std::stringstream buf;
    buf << f.rdbuf();
    MatrixSet set = parse_matrix_set(buf.str());
    std::string digest = fnv1a_hex(serialize_matrix_set(set));
    return {std::move(set), input, std::move(digest)};
}

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    }
};

void emit(const ordered_json& report) { std::cout << report.dump(2) << '\n'; }

ordered_json word_json(const MatrixSet& set, const Word& w) {
    ordered_json arr = ordered_json::array();
    for (auto m : w.modes) arr.push_back(set.labels[m]);
    return arr;
}

int run_bounds(const std::string& input, const std::string& method, int t_max, int t_bar,
               long grid) {
    Timer timer;
    const LoadedSet in = load_input(input);
    ordered_json args{{"method", method}, {"t_max", t_max}, {"t_bar", t_bar}, {"grid", grid}};
    ordered_json payload;

    if (method == "sv") {
        const auto rep = singular_value_lower_bound(in.set, t_max);
        payload["kind"] = "lower";
        payload["best"] = tagged_value(rep.best, ValueStatus::certified);
        ordered_json ph = ordered_json::array();
        for (const auto& [t, v] : rep.per_horizon)
            ph.push_back({{"t", t}, {"bound", tagged_value(v, ValueStatus::certified)}});
        payload["per_horizon"] = ph;
    } else if (method == "cone") {
        const auto res = cone_lower_bound(in.set, t_max);
        payload["kind"] = "lower";
        payload["best"] = tagged_value(res.report.best, ValueStatus::certified);
        ordered_json ph = ordered_json::array();
        for (const auto& [t, v] : res.report.per_horizon)
            ph.push_back({{"t", t}, {"bound", tagged_value(v, ValueStatus::certified)}});
        payload["per_horizon"] = ph;
        payload["certificate"] = {{"lambda", res.certificate.lambda},
                                  {"v", res.certificate.v},
                                  {"horizon", res.certificate.horizon}};
    } else if (method == "alg1") {
        const auto reps = certified_grid_upper_bounds(in.set, t_max, grid);
        payload["kind"] = "upper";
        ordered_json ph = ordered_json::array();
        double best = std::numeric_limits<double>::infinity();
        for (const auto& r : reps) {
            best = std::min(best, r.certified);
            ph.push_back({{"t", r.horizon},
                          {"empirical", tagged_value(r.empirical, ValueStatus::empirical)},
                          {"certified", tagged_value(r.certified, r.certified_valid
                                                                      ? ValueStatus::certified
                                                                      : ValueStatus::diagnostic)},
                          {"raw_gamma", tagged_value(r.raw_gamma, ValueStatus::empirical)},
                          {"lipschitz_pad", r.lipschitz_pad}});
        }
        payload["per_horizon"] = ph;
        payload["best_certified"] = tagged_value(best, reps.back().certified_valid
                                                           ? ValueStatus::certified
                                                           : ValueStatus::diagnostic);
        payload["grid"] = grid;
    } else if (method == "best-response") {
        const auto res = best_response_upper(in.set, t_bar, grid);
        payload["kind"] = "upper";
        payload["empirical"] = tagged_value(res.report.empirical, ValueStatus::empirical);
        payload["certified"] = tagged_value(res.report.certified, ValueStatus::certified);
        payload["t_bar"] = t_bar;
        payload["grid"] = grid;
        payload["arcs"] = static_cast<long>(res.map.arcs.size());
        payload["contraction_achieved"] = res.contraction_achieved;
        if (!res.contraction_achieved)
            payload["warning"] = "no contraction achieved: certified rate is >= 1";
    } else {
        throw input_error("unknown method: " + method + " (expected sv|cone|alg1|best-response)");
    }

    emit(make_report("bounds", args, in.source, in.digest, payload, timer.ms()));
    return 0;
}

int run_lyap(const std::string& input, const std::string& kind, double lambda, int grid_n,
             double tol, int horizon, int max_iter, const std::string& csv_path,
             const std::string& plot_path) {
    Timer timer;
    const LoadedSet in = load_input(input);
    ordered_json args{{"kind", kind},   {"lambda", lambda},     {"grid", grid_n},
                      {"tol", tol},     {"horizon", horizon},   {"max_iter", max_iter},
                      {"csv", csv_path}, {"plot", plot_path}};

    const AngularGrid grid(grid_n);
    ValueTable table = kind == "vhat"
                           ? inf_sup_value(in.set, lambda, grid, max_iter, tol)
                           : sup_inf_value(in.set, lambda, horizon, grid);

    const auto ratios = decrease_ratio(table, in.set);
    const double exceed = ratio_exceedance_fraction(table, in.set, lambda);
    double vmin = table.values[0], vmax = table.values[0], rmin = ratios[0], rmax = ratios[0];
    for (std::size_t k = 0; k < table.values.size(); ++k) {
        vmin = std::min(vmin, table.values[k]);
        vmax = std::max(vmax, table.values[k]);
        rmin = std::min(rmin, ratios[k]);
        rmax = std::max(rmax, ratios[k]);
    }

    ordered_json payload;
    payload["kind"] = kind;
    payload["lambda"] = lambda;
    payload["converged"] = table.converged;
    payload["iterations"] = table.iterations;
    payload["residual"] = tagged_value(table.residual, ValueStatus::diagnostic);
    payload["value_min"] = tagged_value(vmin, ValueStatus::empirical);
    payload["value_max"] = tagged_value(vmax, ValueStatus::empirical);
    payload["ratio_min"] = tagged_value(rmin, ValueStatus::empirical);
    payload["ratio_max"] = tagged_value(rmax, ValueStatus::empirical);
    payload["ratio_exceedance_fraction"] = tagged_value(exceed, ValueStatus::diagnostic);

    if (!csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        rows.reserve(table.values.size());
        for (int k = 0; k < table.grid.n; ++k)
            rows.push_back({table.grid.angle(k), table.values[static_cast<std::size_t>(k)],
                            ratios[static_cast<std::size_t>(k)]});
        write_csv(csv_path, {"angle", "value", "decrease_ratio"}, rows);
        payload["csv_written"] = csv_path;
    }
    if (!plot_path.empty()) {
        // Level set {V = 1} traced as the closed curve r(theta) = 1/V(theta),
        // mirrored to the full circle by homogeneity.
        SvgSeries level;
        for (int k = 0; k <= 2 * table.grid.n; ++k) {
            const double th = kPi * k / table.grid.n;
            const double v = interpolate(table.grid, table.values, th);
            level.x.push_back(std::cos(th) / v);
            level.y.push_back(std::sin(th) / v);
        }
        write_svg_plot(plot_path, {level}, "value-table level set", "x1", "x2", true);
        const std::string ratio_path = plot_path + ".ratio.svg";
        SvgSeries rs;
        rs.color = "#b03030";
        for (int k = 0; k < table.grid.n; ++k) {
            rs.x.push_back(table.grid.angle(k));
            rs.y.push_back(ratios[static_cast<std::size_t>(k)]);
        }
        write_svg_plot(ratio_path, {rs}, "one-step decrease ratio", "angle", "ratio", false);
        payload["plot_written"] = plot_path;
        payload["ratio_plot_written"] = ratio_path;
    }

    emit(make_report("lyap", args, in.source, in.digest, payload, timer.ms()));
    return 0;
}

int run_orbit(int depth, const std::string& query, bool rotation, long density_n,
              const std::string& export_path) {
    Timer timer;
    ordered_json args{{"depth", depth},
                      {"query", query},
                      {"rotation", rotation},
                      {"density", density_n},
                      {"export", export_path}};
    ordered_json payload;

    const auto graph = orbit::explore_orbit(depth);
    std::size_t violations = 0;
    for (const auto& n : graph.nodes)
        if (!orbit::mod4_invariant(n)) ++violations;
    payload["depth"] = depth;
    payload["nodes"] = static_cast<long>(graph.nodes.size());
    payload["edges"] = static_cast<long>(graph.edges.size());
    payload["invariant_violations"] = static_cast<long>(violations);

    if (!query.empty()) {
        const auto slash = query.find('/');
        if (slash == std::string::npos)
            throw input_error("query must look like p/q");
        unsigned long long qp = 0, qq = 0;
        try {
            qp = std::stoull(query.substr(0, slash));
            qq = std::stoull(query.substr(slash + 1));
        } catch (const std::exception&) {
            throw input_error("query must use nonnegative integers p/q");
        }
        const auto dir = orbit::RationalDirection::make(BigNat(qp), BigNat(qq));
        payload["query"] = {{"tangent", dir.to_string()},
                            {"present", graph.contains(dir)},
                            {"mod4_invariant", orbit::mod4_invariant(dir)}};
    }

    if (rotation) {
        const auto rep = orbit::rotation_check();
        payload["rotation"] = {{"trace", rep.trace},
                               {"theta", rep.theta},
                               {"cos_2theta", tagged_value(rep.cos_2theta, ValueStatus::certified)},
                               {"eigen_moduli", {rep.eigen_moduli.first, rep.eigen_moduli.second}},
                               {"nonreal_pair", rep.nonreal_pair},
                               {"commensurable_evidence", rep.commensurable_evidence}};
    }
    if (density_n >= 2) {
        payload["density_gap"] = {{"n", density_n},
                                  {"gap", tagged_value(orbit::density_gap(density_n),
                                                       ValueStatus::empirical)}};
    }
    if (!export_path.empty()) {
        std::ofstream out(export_path);
        if (!out) throw input_error("cannot open export file: " + export_path);
        out << orbit::edge_list(graph);
        payload["export_written"] = export_path;
    }

    emit(make_report("orbit", args, "stanford-urbano", fnv1a_hex(serialize_matrix_set(stanford_urbano().set)),
                     payload, timer.ms()));
    return 0;
}

int run_case_stanford(long grid, const std::string& csv_path, const std::string& plot_path) {
    Timer timer;
    ordered_json args{{"grid", grid}, {"csv", csv_path}, {"plot", plot_path}};
    const NamedInstance su = stanford_urbano();
    const auto words = stanford_urbano_case_words();

    // F(alpha) = min_i |A[i] z_alpha|^(1/t_i) over the half circle.
    const long m = grid / 2;
    std::vector<double> alphas(static_cast<std::size_t>(m));
    std::vector<double> f(static_cast<std::size_t>(m));
    std::vector<std::pair<Matrix, int>> mats;
    for (const auto& w : words) mats.emplace_back(word_matrix(su.set, w), static_cast<int>(w.length()));
    for (long k = 0; k < m; ++k) {
        const double a = 2.0 * kPi * static_cast<double>(k) / static_cast<double>(grid);
        alphas[static_cast<std::size_t>(k)] = a;
        const Vec z{std::cos(a), std::sin(a)};
        double best = std::numeric_limits<double>::infinity();
        for (const auto& [mat, len] : mats)
            best = std::min(best, std::pow(norm2(mat_vec(mat, z)), 1.0 / len));
        f[static_cast<std::size_t>(k)] = best;
    }
    double fmax = f[0];
    for (double v : f) fmax = std::max(fmax, v);

    const auto sv = singular_value_lower_bound(su.set, 1);
    const auto subr = subradius_norm_upper(su.set, 10);

    ordered_json payload;
    payload["grid"] = grid;
    payload["max_F"] = tagged_value(fmax, ValueStatus::empirical);
    payload["sv_lower_bound"] = tagged_value(sv.best, ValueStatus::certified);
    payload["subradius_norm_bound"] = tagged_value(subr.value, ValueStatus::certified);
    payload["subradius_word"] = word_json(su.set, subr.word);
    payload["four_step_squeeze_bound"] = tagged_value(std::pow(0.9, 0.25), ValueStatus::diagnostic);

    if (!csv_path.empty()) {
        std::vector<std::vector<double>> rows;
        for (long k = 0; k < m; ++k)
            rows.push_back({alphas[static_cast<std::size_t>(k)], f[static_cast<std::size_t>(k)]});
        write_csv(csv_path, {"alpha", "F"}, rows);
        payload["csv_written"] = csv_path;
    }
    if (!plot_path.empty()) {
        SvgSeries s;
        s.x = alphas;
        s.y = f;
        write_svg_plot(plot_path, {s}, "best-response rate profile", "alpha", "F(alpha)", false);
        payload["plot_written"] = plot_path;
    }

    emit(make_report("case-stanford", args, "stanford-urbano",
                     fnv1a_hex(serialize_matrix_set(su.set)), payload, timer.ms()));
    return 0;
}

int run_ct(const std::string& input, double delta, double total_time, const std::string& x0_str,
           double shift_gamma, const std::string& csv_path) {
    Timer timer;
    const LoadedSet in = load_input(input);
    ordered_json args{{"delta", delta}, {"T", total_time}, {"x0", x0_str},
                      {"shift_gamma", shift_gamma}, {"csv", csv_path}};

    Vec x0;
    {
        std::stringstream ss(x0_str);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            try {
                x0.push_back(std::stod(tok));
            } catch (const std::exception&) {
                throw input_error("x0 must be a comma-separated number list");
            }
        }
    }
    if (static_cast<int>(x0.size()) != in.set.dim)
        throw input_error("x0 length does not match system dimension");

    const CtSystem sys{in.set};
    ordered_json payload;

    if (shift_gamma != 0.0) {
        // Shift identity check on a two-segment schedule across the modes.
        Schedule sched;
        sched.segments.push_back(Schedule::mode(0, sys.generators.size(), 0.7));
        sched.segments.push_back(Schedule::mode(sys.generators.size() - 1, sys.generators.size(), 1.3));
        const auto rep = shift_scaling_check(sys, shift_gamma, sched, x0);
        payload["shift_check"] = {{"gamma", shift_gamma},
                                  {"max_rel_err", tagged_value(rep.max_rel_err, ValueStatus::diagnostic)},
                                  {"pass", rep.pass},
                                  {"samples", rep.samples}};
    }

    const auto feedback = greedy_feedback(sys, delta);
    const auto traj = sample_hold_simulate(sys, feedback, delta, x0, total_time);

    double max_norm = 0.0;
    for (const auto& s : traj.states) max_norm = std::max(max_norm, norm2(s));
    const double final_norm = norm2(traj.states.back());
    const double x0_norm = norm2(x0);
    const double span = traj.times.back() - traj.times.front();
    const double decay = span > 0.0 && final_norm > 0.0 && x0_norm > 0.0
                             ? std::log(final_norm / x0_norm) / span
                             : 0.0;

    payload["delta"] = delta;
    payload["T"] = total_time;
    payload["samples"] = static_cast<long>(traj.times.size());
    payload["final_norm"] = tagged_value(final_norm, ValueStatus::empirical);
    payload["max_norm"] = tagged_value(max_norm, ValueStatus::empirical);
    payload["mean_decay_rate"] = tagged_value(decay, ValueStatus::diagnostic);
    payload["diverged"] = traj.diverged;

    if (!csv_path.empty()) {
        std::vector<std::string> header{"time"};
        for (int i = 0; i < in.set.dim; ++i) header.push_back("x" + std::to_string(i + 1));
        std::vector<std::vector<double>> rows;
        for (std::size_t k = 0; k < traj.times.size(); ++k) {
            std::vector<double> row{traj.times[k]};
            row.insert(row.end(), traj.states[k].begin(), traj.states[k].end());
            rows.push_back(std::move(row));
        }
        write_csv(csv_path, header, rows);
        payload["csv_written"] = csv_path;
    }

    emit(make_report("ct", args, in.source, in.digest, payload, timer.ms()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"certified stabilization bounds for switched linear systems"};
    app.require_subcommand(1);

    std::string input, method = "sv", kind = "vhat", query, export_path, csv_path, plot_path;
    std::string x0_str = "1,0";
    int t_max = 4, t_bar = 9, depth = 12, horizon = 24;
    int max_iter = kDefaultValueIterations;
    long grid = 4096, density_n = 0;
    double lambda = 0.88, tol = 1e-6, delta = 0.1, total_time = 10.0, shift_gamma = 0.0;
    bool rotation = false;

    auto* bounds_cmd = app.add_subcommand("bounds", "lower/upper bounds on the stabilization radius");
    bounds_cmd->add_option("input", input, "instance name or matrix-set JSON file")->required();
    bounds_cmd->add_option("--method", method, "sv|cone|alg1|best-response");
    bounds_cmd->add_option("--t-max", t_max, "horizon for sv/cone/alg1");
    bounds_cmd->add_option("--t-bar", t_bar, "max word length for best-response");
    bounds_cmd->add_option("--grid", grid, "full-circle direction grid size");

    auto* lyap_cmd = app.add_subcommand("lyap", "value tables and decrease ratios");
    lyap_cmd->add_option("input", input)->required();
    lyap_cmd->add_option("--kind", kind, "vhat|vlam");
    lyap_cmd->add_option("--lambda", lambda, "target rate");
    lyap_cmd->add_option("--grid", grid, "half-circle node count");
    lyap_cmd->add_option("--tol", tol, "fixed-point stopping increment");
    lyap_cmd->add_option("--horizon", horizon, "truncation horizon for vlam");
    lyap_cmd->add_option("--max-iter", max_iter, "sweep cap for vhat");
    lyap_cmd->add_option("--csv", csv_path, "write table CSV here");
    lyap_cmd->add_option("--plot", plot_path, "write level-set SVG here");

    auto* orbit_cmd = app.add_subcommand("orbit", "rational-direction orbit analysis");
    orbit_cmd->add_option("--depth", depth, "BFS depth");
    orbit_cmd->add_option("--query", query, "tangent p/q to look up");
    orbit_cmd->add_flag("--rotation", rotation, "report the rotation eigen-structure");
    orbit_cmd->add_option("--density", density_n, "rotation-multiple gap sample count");
    orbit_cmd->add_option("--export", export_path, "write edge list here");

    auto* case_cmd = app.add_subcommand("case-stanford", "one-shot case-study reproduction");
    case_cmd->add_option("--grid", grid, "full-circle direction grid size");
    case_cmd->add_option("--csv", csv_path, "write F(alpha) CSV here");
    case_cmd->add_option("--plot", plot_path, "write F(alpha) SVG here");

    auto* ct_cmd = app.add_subcommand("ct", "sample-and-hold simulation");
    ct_cmd->add_option("input", input)->required();
    ct_cmd->add_option("--delta", delta, "sampling period");
    ct_cmd->add_option("--T", total_time, "simulation end time");
    ct_cmd->add_option("--x0", x0_str, "initial state, comma separated");
    ct_cmd->add_option("--shift-gamma", shift_gamma, "also run the shift identity check");
    ct_cmd->add_option("--csv", csv_path, "write trajectory CSV here");

    CLI11_PARSE(app, argc, argv);

    try {
        if (bounds_cmd->parsed()) return run_bounds(input, method, t_max, t_bar, grid);
        if (lyap_cmd->parsed())
            return run_lyap(input, kind, lambda, static_cast<int>(grid), tol, horizon, max_iter,
                            csv_path, plot_path);
        if (orbit_cmd->parsed()) return run_orbit(depth, query, rotation, density_n, export_path);
        if (case_cmd->parsed()) return run_case_stanford(grid, csv_path, plot_path);
        if (ct_cmd->parsed()) return run_ct(input, delta, total_time, x0_str, shift_gamma, csv_path);
    } catch (const input_error& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return 1;
    } catch (const method_inapplicable_error& e) {
        std::cerr << "method inapplicable: " << e.what() << '\n';
        return 2;
    } catch (const resource_limit_error& e) {
        std::cerr << "resource cap: " << e.what() << '\n';
        return 3;
    } catch (const nonconvergence_error& e) {
        std::cerr << "non-convergence: " << e.what() << '\n';
        return 4;
    }
    return 0;
}
