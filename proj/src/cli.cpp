#include "sinflow/cli.hpp"

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "sinflow/benders.hpp"

namespace sinflow {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

void write_file(const fs::path& path, const std::string& content) {
    fs::create_directories(path.parent_path().empty() ? "." : path.parent_path());
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << content;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path.string());
    std::stringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

std::string hash_hex(const std::string& bytes) {
    std::ostringstream out;
    out << std::hex << fnv1a(bytes);
    return out.str();
}

void write_manifest(const fs::path& dir, const std::vector<std::string>& argv,
                    const std::string& scenario_hash, const std::vector<std::string>& outputs,
                    std::uint64_t seed) {
    json j;
    j["schema_version"] = "1";
    j["argv"] = argv;
    j["scenario_hash"] = scenario_hash;
    j["seed"] = seed;
    j["outputs"] = outputs;
    write_file(dir / "manifest.json", j.dump(2) + "\n");
}

// Minimal polyline chart, one series per name, for convergence and sweeps.
std::string svg_line_chart(const std::string& title,
                           const std::map<std::string, std::vector<std::pair<double, double>>>&
                               series) {
    const double w = 720, h = 420, ml = 70, mr = 20, mt = 40, mb = 50;
    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& [name, pts] : series)
        for (const auto& [x, y] : pts) {
            if (!std::isfinite(x) || !std::isfinite(y)) continue;
            xmin = std::min(xmin, x), xmax = std::max(xmax, x);
            ymin = std::min(ymin, y), ymax = std::max(ymax, y);
        }
    if (xmin > xmax) xmin = 0, xmax = 1;
    if (ymin > ymax) ymin = 0, ymax = 1;
    if (xmax == xmin) xmax = xmin + 1;
    if (ymax == ymin) ymax = ymin + 1;
    auto px = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * (w - ml - mr); };
    auto py = [&](double y) { return h - mb - (y - ymin) / (ymax - ymin) * (h - mt - mb); };
    static const char* palette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                    "#ff7f0e", "#8c564b"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
        << "'>\n<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    out << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='" << h - mb
        << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
        << "' stroke='black'/>\n";
    for (int i = 0; i <= 4; ++i) {
        const double xv = xmin + (xmax - xmin) * i / 4.0;
        const double yv = ymin + (ymax - ymin) * i / 4.0;
        out << "<text x='" << px(xv) << "' y='" << h - mb + 18
            << "' text-anchor='middle' font-size='11'>" << xv << "</text>\n";
        out << "<text x='" << ml - 8 << "' y='" << py(yv) + 4
            << "' text-anchor='end' font-size='11'>" << yv << "</text>\n";
    }
    int color = 0, label = 0;
    for (const auto& [name, pts] : series) {
        out << "<polyline fill='none' stroke='" << palette[color % 6] << "' stroke-width='1.6'"
            << " points='";
        for (const auto& [x, y] : pts)
            if (std::isfinite(x) && std::isfinite(y)) out << px(x) << "," << py(y) << " ";
        out << "'/>\n";
        out << "<text x='" << w - mr - 4 << "' y='" << mt + 16 * label++
            << "' text-anchor='end' font-size='12' fill='" << palette[color % 6] << "'>"
            << name << "</text>\n";
        ++color;
    }
    out << "</svg>\n";
    return out.str();
}

json report_to_json(const SolutionReport& rep, const Scenario& sc) {
    json j;
    j["objective_mbit"] = rep.objective_mbit;
    j["delivered_per_flow"] = rep.delivered_per_flow;
    json assoc = json::array();
    for (int lf = 0; lf < sc.flow_count(); ++lf) {
        json ja;
        ja["flow"] = sc.flows[lf].id;
        ja["source_satellite_by_slot"] = rep.source_assoc[lf];
        ja["dest_satellite_by_slot"] = rep.dest_assoc[lf];
        json pl = json::array();
        for (const auto& [s, n] : rep.placement[lf])
            pl.push_back(s >= 0 ? json(sc.satellites[s].id + ":f" +
                                       std::to_string(sc.satellites[s].offered_functions[n]))
                                : json(nullptr));
        ja["placement"] = std::move(pl);
        assoc.push_back(std::move(ja));
    }
    j["flows"] = std::move(assoc);
    json lf = json::array();
    for (const auto& entry : rep.link_flows)
        lf.push_back(json{{"var", entry.label}, {"mbit", entry.value}});
    j["link_flows"] = std::move(lf);
    return j;
}

struct SchemeChoice {
    std::string name = "uvnfr";
    MilpProblem apply(const MilpProblem& milp, const Scenario& sc) const {
        if (name == "uvnfr") return milp;
        if (name == "lvnf") return restrict_baseline(milp, BaselineScheme::LVNF, sc);
        if (name == "fvnf") return restrict_baseline(milp, BaselineScheme::FVNF, sc);
        if (name == "hu") return restrict_baseline(milp, BaselineScheme::HU, sc);
        throw std::invalid_argument("unknown scheme " + name);
    }
};

// ---------------------------------------------------------------------------

int cmd_gen(const std::vector<std::string>& argv, bool paper, bool minimal, SyntheticSpec spec,
            const std::string& out_path, std::ostream& out) {
    Scenario sc;
    if (minimal)
        sc = minimal_scenario();
    else if (paper)
        sc = paper_shape_scenario(spec.seed);
    else
        sc = generate_synthetic(spec);
    const std::string text = scenario_to_json(sc);
    write_file(out_path, text);
    const fs::path dir = fs::path(out_path).parent_path();
    write_manifest(dir.empty() ? "." : dir, argv, hash_hex(text), {out_path}, spec.seed);
    out << "wrote " << out_path << " (" << sc.satellite_count() << " satellites, "
        << sc.flow_count() << " flows, T=" << sc.horizon << ")\n";
    return 0;
}

struct SolveArgs {
    std::string scenario_path;
    std::string algo = "multicut";
    std::string master = "sa";
    SchemeChoice scheme;
    int cuts = 1;
    double eps = 1e-3;
    int max_iter = 200;
    int theta_bits = 20;
    std::uint64_t seed = 0;
    int reads = 1000, sweeps = 1000;
    int jobs = 1;
    int stall = 15;
    std::string out_dir = "out";
    bool export_mfteg = false, export_milp = false, export_qubo = false, export_cuts = false;
    bool svg = false;
};

int cmd_solve(const std::vector<std::string>& argv, const SolveArgs& a, std::ostream& out) {
    const std::string text = read_file(a.scenario_path);
    const Scenario sc = parse_scenario(text);
    const MfTeg graph = build_mfteg(sc);
    const MilpProblem full = assemble(graph, sc);
    const MilpProblem milp = a.scheme.apply(full, sc);
    const fs::path dir(a.out_dir);
    std::vector<std::string> outputs;

    if (a.export_mfteg) {
        write_file(dir / "mfteg.txt", export_mfteg(graph, sc));
        outputs.push_back((dir / "mfteg.txt").string());
    }
    if (a.export_milp) {
        write_file(dir / "milp.txt", export_milp(milp));
        outputs.push_back((dir / "milp.txt").string());
    }

    SolverConfig cfg;
    cfg.eps = a.eps;
    cfg.max_iters = a.max_iter;
    cfg.cuts_per_iter = a.cuts;
    cfg.seed = a.seed;
    cfg.jobs = a.jobs;
    cfg.theta_bits = a.theta_bits;
    cfg.stall_limit = a.stall;
    cfg.schedule.reads = a.reads;
    cfg.schedule.sweeps = a.sweeps;
    cfg.backend = a.master == "sa"      ? MasterBackend::SimulatedAnnealing
                  : a.master == "brute" ? MasterBackend::BruteForce
                                        : MasterBackend::BranchAndBound;

    json jrep;
    int code = 0;
    if (a.algo == "monolithic") {
        const MonolithicResult res = solve_monolithic(milp, sc);
        jrep = report_to_json(res.report, sc);
        jrep["algo"] = a.algo;
        jrep["scheme"] = a.scheme.name;
        jrep["proven_optimal"] = res.proven_optimal;
        jrep["objective_min_form"] = res.objective_min_form;
        jrep["nodes"] = res.nodes;
        code = res.proven_optimal ? 0 : 2;
    } else {
        BendersResult res;
        if (a.algo == "hqcbd")
            res = run_hqcbd(milp, sc, cfg);
        else if (a.algo == "multicut")
            res = run_multicut(milp, sc, cfg);
        else if (a.algo == "classical-bd")
            res = run_classical_bd(milp, sc, cfg);
        else
            throw std::invalid_argument("unknown algo " + a.algo);
        jrep = report_to_json(res.report, sc);
        jrep["algo"] = a.algo;
        jrep["scheme"] = a.scheme.name;
        jrep["stop_reason"] = stop_reason_name(res.log.reason);
        jrep["converged"] = res.converged;
        jrep["iterations"] = res.log.rows.size();
        jrep["ub_min_form"] = res.state.ub;
        jrep["lb_min_form"] = res.state.lb;
        write_file(dir / "convergence.tsv", log_to_tsv(res.log));
        write_file(dir / "profile.tsv", timings_to_tsv(res.log));
        outputs.push_back((dir / "convergence.tsv").string());
        if (a.export_cuts) {
            write_file(dir / "cuts.json", cuts_to_json(res.state));
            outputs.push_back((dir / "cuts.json").string());
        }
        if (a.export_qubo && milp.vars.binary_count() + a.theta_bits <= 4096) {
            const ThetaEncoding enc =
                encode_theta(res.state.theta_lo, res.state.theta_hi, a.theta_bits);
            MasterProblem master{&milp, &res.state.feasibility_cuts,
                                 &res.state.optimality_cuts, res.state.theta_lo,
                                 res.state.theta_hi};
            write_file(dir / "master.qubo", export_qubo(build_master_qubo(master, {}, enc)));
            outputs.push_back((dir / "master.qubo").string());
        }
        if (a.svg) {
            std::map<std::string, std::vector<std::pair<double, double>>> series;
            for (const auto& r : res.log.rows) {
                if (std::isfinite(r.ub)) series["UB"].emplace_back(r.iter, r.ub);
                if (std::isfinite(r.lb)) series["LB"].emplace_back(r.iter, r.lb);
            }
            write_file(dir / "convergence.svg", svg_line_chart("bound trajectory", series));
            outputs.push_back((dir / "convergence.svg").string());
        }
        code = res.log.reason == StopReason::IterationLimit ? 2 : 0;
        if (res.log.reason == StopReason::Failure ||
            res.log.reason == StopReason::MasterInfeasible)
            code = 1;
    }
    write_file(dir / "report.json", jrep.dump(2) + "\n");
    outputs.push_back((dir / "report.json").string());
    write_manifest(dir, argv, hash_hex(text), outputs, a.seed);
    out << "objective " << jrep["objective_mbit"] << " Mbit; outputs in " << a.out_dir << "\n";
    return code;
}

struct SweepArgs {
    std::string scenario_path;
    std::string axis = "compute";
    double from = 0, to = 0, step = 1;
    std::string algo = "monolithic";
    std::uint64_t seed = 0;
    int jobs = 1;
    std::string out_dir = "out";
    bool svg = false;
    // generator shape for the flows axis
    SyntheticSpec shape{12, 4, 4, 2, 30, 0};
};

int cmd_sweep(const std::vector<std::string>& argv, const SweepArgs& a, std::ostream& out) {
    const std::string text = read_file(a.scenario_path);
    const Scenario base = parse_scenario(text);
    if (a.step <= 0) throw std::invalid_argument("sweep step must be positive");
    if (a.to < a.from) throw std::invalid_argument("sweep range is empty");
    std::vector<double> points;
    for (double v = a.from; v <= a.to + 1e-9; v += a.step) points.push_back(v);
    static const char* schemes[] = {"uvnfr", "lvnf", "fvnf", "hu"};

    auto scenario_at = [&](double v) {
        if (a.axis == "flows") {
            SyntheticSpec spec = a.shape;
            spec.seed = a.seed;
            spec.n_flows = static_cast<int>(v);
            return generate_synthetic(spec);
        }
        Scenario sc = base;
        if (a.axis == "compute") {
            for (auto& sat : sc.satellites)
                if (sat.is_function_node) sat.compute_capacity_mbit_s = v;
        } else if (a.axis == "storage") {
            for (auto& sat : sc.satellites) sat.storage_capacity_mbit = v;
        } else if (a.axis == "bandwidth") {
            sc.link_budget.bandwidth_hz = v * 1e6;
            sc.link_budget.noise_power_w = sc.link_budget.boltzmann_j_per_k *
                                           sc.link_budget.noise_temperature_k *
                                           sc.link_budget.bandwidth_hz;
        } else {
            throw std::invalid_argument("unknown axis " + a.axis);
        }
        return sc;
    };

    struct Cell {
        double value;
        std::string scheme;
        double objective;
    };
    std::vector<Cell> cells(points.size() * 4);
    auto solve_point = [&](std::size_t pi) {
        const Scenario sc = scenario_at(points[pi]);
        const MilpProblem full = assemble(build_mfteg(sc), sc);
        for (int si = 0; si < 4; ++si) {
            SchemeChoice choice{schemes[si]};
            const MilpProblem milp = choice.apply(full, sc);
            double objective = 0.0;
            if (a.algo == "monolithic") {
                objective = solve_monolithic(milp, sc).report.objective_mbit;
            } else {
                SolverConfig cfg;
                cfg.seed = a.seed;
                cfg.backend = a.algo == "classical-bd" ? MasterBackend::BranchAndBound
                                                       : MasterBackend::SimulatedAnnealing;
                cfg.cuts_per_iter = a.algo == "multicut" ? 3 : 1;
                objective = run_multicut(milp, sc, cfg).report.objective_mbit;
            }
            cells[pi * 4 + si] = {points[pi], schemes[si], objective};
        }
    };
    if (a.jobs > 1) {
        std::vector<std::thread> pool;
        const int workers = std::min<std::size_t>(a.jobs, points.size());
        for (int t = 0; t < workers; ++t)
            pool.emplace_back([&, t]() {
                for (std::size_t pi = t; pi < points.size(); pi += workers) solve_point(pi);
            });
        for (auto& th : pool) th.join();
    } else {
        for (std::size_t pi = 0; pi < points.size(); ++pi) solve_point(pi);
    }

    std::ostringstream csv;
    csv.precision(12);
    csv << "axis,value,scheme,objective_mbit\n";
    for (const auto& cell : cells)
        csv << a.axis << "," << cell.value << "," << cell.scheme << "," << cell.objective
            << "\n";
    const fs::path dir(a.out_dir);
    write_file(dir / "sweep.csv", csv.str());
    std::vector<std::string> outputs{(dir / "sweep.csv").string()};
    if (a.svg) {
        std::map<std::string, std::vector<std::pair<double, double>>> series;
        for (const auto& cell : cells)
            series[cell.scheme].emplace_back(cell.value, cell.objective);
        write_file(dir / "sweep.svg", svg_line_chart("sweep over " + a.axis, series));
        outputs.push_back((dir / "sweep.svg").string());
    }
    write_manifest(dir, argv, hash_hex(text), outputs, a.seed);
    out << "wrote " << (dir / "sweep.csv").string() << " (" << cells.size() << " rows)\n";
    return 0;
}

struct CheckArgs {
    std::uint64_t seed = 1;
    int count = 5;
    std::string replay_cuts;
    std::string scenario_path;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
    int failures = 0;
    auto verdict = [&](const std::string& name, bool ok, const std::string& detail = "") {
        out << (ok ? "PASS " : "FAIL ") << name;
        if (!detail.empty()) out << " (" << detail << ")";
        out << "\n";
        if (!ok) ++failures;
    };

    if (!a.replay_cuts.empty()) {
        const Scenario sc = load_scenario(a.scenario_path);
        const MilpProblem milp = assemble(build_mfteg(sc), sc);
        if (milp.vars.binary_count() > 20)
            throw std::invalid_argument("cut replay guard: instance too large to enumerate");
        MasterState state;
        cuts_from_json(read_file(a.replay_cuts), state);
        SubproblemSolver solver(milp);
        const auto all_w = enumerate_feasible_w(milp);
        for (std::size_t i = 0; i < state.optimality_cuts.size(); ++i) {
            const CutData& cut = state.optimality_cuts[i];
            bool ok = true;
            std::string detail;
            for (const auto& w : all_w) {
                std::vector<double> wd(w.begin(), w.end());
                const SubproblemOutcome sub = solver.solve(wd);
                if (sub.kind != SubproblemOutcome::Kind::OptimalityCut) continue;
                if (cut.value_at(wd) > sub.theta_hat + 1e-6) {
                    ok = false;
                    detail = "optimality cut " + std::to_string(i) + " overshoots theta";
                    break;
                }
            }
            verdict("cut_validity[" + std::to_string(i) + "]", ok, detail);
        }
        for (std::size_t i = 0; i < state.feasibility_cuts.size(); ++i) {
            const CutData& cut = state.feasibility_cuts[i];
            bool ok = true;
            for (const auto& w : all_w) {
                std::vector<double> wd(w.begin(), w.end());
                if (cut.value_at(wd) <= 1e-6) continue;
                if (solver.solve(wd).kind == SubproblemOutcome::Kind::OptimalityCut) ok = false;
            }
            verdict("feasibility_cut[" + std::to_string(i) + "]", ok);
        }
        return failures == 0 ? 0 : 1;
    }

    for (int i = 0; i < a.count; ++i) {
        const std::uint64_t seed = a.seed + i;
        const Scenario sc = generate_synthetic({3, 1, 2, 1, 2, seed});
        const MilpProblem milp = assemble(build_mfteg(sc), sc);
        const std::string tag = "seed=" + std::to_string(seed);

        // strong duality at the greedy point
        const auto w0 = initial_w(milp, sc);
        std::vector<double> wd(w0.begin(), w0.end());
        const SubproblemOutcome sub = solve_subproblem(milp, wd);
        bool duality_ok = sub.kind == SubproblemOutcome::Kind::OptimalityCut;
        if (duality_ok) {
            const auto rhs = milp.star_rhs(wd);
            double dual = 0.0;
            for (int r = 0; r < milp.star_rows(); ++r) dual += rhs[r] * sub.e[r];
            duality_ok = std::fabs(dual - sub.theta_hat) <=
                         1e-7 * (1.0 + std::fabs(sub.theta_hat));
        }
        verdict("strong_duality " + tag, duality_ok);

        // decomposition vs whole-problem oracle
        SolverConfig cfg;
        cfg.backend = MasterBackend::BruteForce;
        cfg.theta_bits = 12;
        cfg.max_iters = 60;
        const BendersResult bd = run_hqcbd(milp, sc, cfg);
        const MonolithicResult mono = solve_monolithic(milp, sc);
        const double rel = std::fabs(bd.objective_min_form - mono.objective_min_form) /
                           (1.0 + std::fabs(mono.objective_min_form));
        verdict("oracle_equivalence " + tag, bd.converged && rel <= 1e-5,
                "bd=" + std::to_string(bd.objective_min_form) +
                    " mono=" + std::to_string(mono.objective_min_form));

        // every optimality cut is below the true value function
        SubproblemSolver solver(milp);
        bool cuts_ok = true;
        for (const auto& w : enumerate_feasible_w(milp)) {
            std::vector<double> wx(w.begin(), w.end());
            const SubproblemOutcome s = solver.solve(wx);
            if (s.kind != SubproblemOutcome::Kind::OptimalityCut) continue;
            for (const auto& cut : bd.state.optimality_cuts)
                if (cut.value_at(wx) > s.theta_hat + 1e-6) cuts_ok = false;
        }
        verdict("cut_validity " + tag, cuts_ok);
    }
    return failures == 0 ? 0 : 1;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"NFV satellite network flow optimization via hybrid Benders decomposition"};
    app.require_subcommand(1);

    // gen
    auto* gen = app.add_subcommand("gen", "generate a synthetic scenario file");
    bool paper = false, minimal = false;
    SyntheticSpec spec{12, 4, 4, 2, 30, 0};
    std::string gen_out = "scenario.json";
    gen->add_flag("--paper-shape", paper, "12 satellites, 4 flows, 4 functions, T=30");
    gen->add_flag("--minimal", minimal, "smallest valid instance");
    gen->add_option("--sats", spec.n_sats);
    gen->add_option("--flows", spec.n_flows);
    gen->add_option("--functions", spec.n_functions);
    gen->add_option("--sfc-len", spec.sfc_len);
    gen->add_option("--horizon", spec.horizon);
    gen->add_option("--seed", spec.seed);
    gen->add_option("-o,--output", gen_out);

    // solve
    auto* solve = app.add_subcommand("solve", "solve a scenario");
    SolveArgs sa;
    solve->add_option("scenario", sa.scenario_path)->required();
    solve->add_option("--algo", sa.algo)
        ->check(CLI::IsMember({"hqcbd", "multicut", "classical-bd", "monolithic"}));
    solve->add_option("--cuts", sa.cuts);
    solve->add_option("--master", sa.master)->check(CLI::IsMember({"sa", "brute", "bnb"}));
    solve->add_option("--eps", sa.eps);
    solve->add_option("--max-iter", sa.max_iter);
    solve->add_option("--seed", sa.seed);
    solve->add_option("--scheme", sa.scheme.name)
        ->check(CLI::IsMember({"uvnfr", "lvnf", "fvnf", "hu"}));
    solve->add_option("--reads", sa.reads);
    solve->add_option("--sweeps", sa.sweeps);
    solve->add_option("--theta-bits", sa.theta_bits);
    solve->add_option("--jobs", sa.jobs);
    solve->add_option("--stall", sa.stall);
    solve->add_option("--out-dir", sa.out_dir);
    solve->add_flag("--export-mfteg", sa.export_mfteg);
    solve->add_flag("--export-milp", sa.export_milp);
    solve->add_flag("--export-qubo", sa.export_qubo);
    solve->add_flag("--export-cuts", sa.export_cuts);
    solve->add_flag("--svg", sa.svg);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "solve all schemes along a parameter axis");
    SweepArgs sw;
    sweep->add_option("scenario", sw.scenario_path)->required();
    sweep->add_option("--axis", sw.axis)
        ->check(CLI::IsMember({"compute", "storage", "flows", "bandwidth"}));
    sweep->add_option("--from", sw.from)->required();
    sweep->add_option("--to", sw.to)->required();
    sweep->add_option("--step", sw.step);
    sweep->add_option("--algo", sw.algo)
        ->check(CLI::IsMember({"monolithic", "multicut", "classical-bd"}));
    sweep->add_option("--seed", sw.seed);
    sweep->add_option("--jobs", sw.jobs);
    sweep->add_option("--out-dir", sw.out_dir);
    sweep->add_option("--gen-sats", sw.shape.n_sats);
    sweep->add_option("--gen-functions", sw.shape.n_functions);
    sweep->add_option("--gen-sfc-len", sw.shape.sfc_len);
    sweep->add_option("--gen-horizon", sw.shape.horizon);
    sweep->add_flag("--svg", sw.svg);

    // check
    auto* check = app.add_subcommand("check", "run the oracle cross-check suites");
    CheckArgs ca;
    check->add_option("--seed", ca.seed);
    check->add_option("--count", ca.count);
    check->add_option("--replay-cuts", ca.replay_cuts);
    check->add_option("--scenario", ca.scenario_path);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 1;
    }

    std::vector<std::string> argv = args;
    try {
        if (gen->parsed()) return cmd_gen(argv, paper, minimal, spec, gen_out, out);
        if (solve->parsed()) return cmd_solve(argv, sa, out);
        if (sweep->parsed()) return cmd_sweep(argv, sw, out);
        if (check->parsed()) return cmd_check(ca, out);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

}  // namespace sinflow
