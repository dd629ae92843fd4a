#include "sinflow/benders.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <queue>
#include <sstream>
#include <thread>

#include <json.hpp>

namespace sinflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
    return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

}  // namespace

// ---------------------------------------------------------------------------
// Branch and bound

namespace {

struct BnbNode {
    double bound;
    long id;
    std::vector<std::pair<int, int>> fixings;  // (column, value)
    bool operator<(const BnbNode& other) const {
        // priority_queue is a max-heap; invert for best-first, FIFO on ties
        return bound != other.bound ? bound > other.bound : id > other.id;
    }
};

LpStandardForm reduce_for_fixings(const MipProblem& mip,
                                  const std::vector<std::pair<int, int>>& fixings,
                                  std::vector<int>& col_map, double& constant) {
    const LpStandardForm& base = mip.lp;
    std::vector<int> fixed_val(base.num_vars, -1);
    for (const auto& [col, val] : fixings) fixed_val[col] = val;
    col_map.assign(base.num_vars, -1);
    LpStandardForm lp;
    for (int j = 0; j < base.num_vars; ++j) {
        if (fixed_val[j] >= 0) {
            constant += base.objective[j] * fixed_val[j];
            continue;
        }
        col_map[j] = lp.num_vars++;
        lp.objective.push_back(base.objective[j]);
        lp.upper.push_back(base.upper.empty() ? kInf : base.upper[j]);
    }
    auto reduce_rows = [&](const std::vector<SparseVec>& rows, const std::vector<double>& rhs,
                           std::vector<SparseVec>& out_rows, std::vector<double>& out_rhs) {
        for (std::size_t r = 0; r < rows.size(); ++r) {
            SparseVec row;
            double b = rhs[r];
            for (const auto& [j, v] : rows[r]) {
                if (fixed_val[j] >= 0)
                    b -= v * fixed_val[j];
                else
                    row.emplace_back(col_map[j], v);
            }
            out_rows.push_back(std::move(row));
            out_rhs.push_back(b);
        }
    };
    reduce_rows(base.a_ineq, base.b_ineq, lp.a_ineq, lp.b_ineq);
    reduce_rows(base.a_eq, base.b_eq, lp.a_eq, lp.b_eq);
    return lp;
}

}  // namespace

BnbResult branch_and_bound(const MipProblem& mip, const BnbLimits& limits) {
    BnbResult res;
    std::priority_queue<BnbNode> open;
    open.push({-kInf, 0, {}});
    long next_id = 1;
    double incumbent = kInf;
    std::vector<double> incumbent_x;
    bool failed = false;
    res.nodes = 0;

    while (!open.empty()) {
        BnbNode node = open.top();
        open.pop();
        if (node.bound >= incumbent - 1e-9) continue;
        if (res.nodes >= limits.max_nodes) {
            res.status = BnbResult::Status::NodeLimit;
            res.proven_optimal = false;
            res.best_bound = std::min(node.bound, incumbent);
            if (incumbent < kInf) {
                res.objective = incumbent;
                res.x = incumbent_x;
            }
            return res;
        }

        std::vector<int> col_map;
        double constant = mip.objective_constant;
        const LpStandardForm lp = reduce_for_fixings(mip, node.fixings, col_map, constant);
        const LpOutcome out = solve_lp(lp);
        if (out.status == LpOutcome::Status::Infeasible) continue;
        if (out.status != LpOutcome::Status::Optimal) {
            failed = true;
            break;
        }
        const double bound = out.objective + constant;
        if (bound >= incumbent - 1e-9) continue;

        // most fractional binary, ties to the lowest index
        int branch_col = -1;
        double most_frac = limits.int_tol;
        std::vector<double> full(mip.lp.num_vars, 0.0);
        for (const auto& [col, val] : node.fixings) full[col] = val;
        for (int j = 0; j < mip.lp.num_vars; ++j)
            if (col_map[j] >= 0) full[j] = out.x[col_map[j]];
        for (int col : mip.binary_cols) {
            const double frac = std::fabs(full[col] - std::round(full[col]));
            if (frac > most_frac + 1e-12) {
                most_frac = frac;
                branch_col = col;
            }
        }
        if (branch_col < 0) {
            incumbent = bound;
            incumbent_x = full;
            for (int col : mip.binary_cols)
                incumbent_x[col] = std::round(incumbent_x[col]);
            continue;
        }
        ++res.nodes;
        for (int v : {0, 1}) {
            BnbNode child{bound, next_id++, node.fixings};
            child.fixings.emplace_back(branch_col, v);
            open.push(std::move(child));
        }
    }

    if (failed) {
        res.status = BnbResult::Status::NumericalFailure;
        return res;
    }
    if (incumbent >= kInf) {
        res.status = BnbResult::Status::Infeasible;
        return res;
    }
    res.status = BnbResult::Status::Optimal;
    res.proven_optimal = true;
    res.objective = incumbent;
    res.best_bound = incumbent;
    res.x = std::move(incumbent_x);
    return res;
}

// ---------------------------------------------------------------------------
// Greedy start

std::vector<std::uint8_t> initial_w(const MilpProblem& milp, const Scenario& sc) {
    const int n0 = milp.vars.binary_count();
    std::vector<std::uint8_t> w(n0, 0);
    std::vector<std::uint8_t> forbidden(n0, 0);
    std::vector<std::uint8_t> forced(n0, 0);
    for (std::size_t r = 0; r < milp.d3.size(); ++r) {
        if (milp.tags3[r].family != RowFamily::BaselineFix) continue;
        const auto& [col, coeff] = milp.g3[r][0];
        if (coeff > 0)
            forbidden[col] = 1;
        else
            forced[col] = 1;
    }

    // capacity budgets: every cap-limit row with its remaining headroom
    std::vector<double> budget = milp.d3;
    std::vector<std::vector<int>> rows_of(n0);
    for (std::size_t r = 0; r < milp.d3.size(); ++r) {
        const RowFamily f = milp.tags3[r].family;
        if (f != RowFamily::SourceCapLimit && f != RowFamily::DestCapLimit) continue;
        for (const auto& [col, coeff] : milp.g3[r]) rows_of[col].push_back(static_cast<int>(r));
    }
    auto has_budget = [&](int col) {
        for (int r : rows_of[col])
            if (budget[r] < 1.0) return false;
        return true;
    };
    auto take = [&](int col) {
        for (int r : rows_of[col]) budget[r] -= 1.0;
        w[col] = 1;
    };

    // capacity of each association column, read off the bound rows
    std::vector<double> assoc_cap(n0, 0.0);
    for (std::size_t r = 0; r < milp.d1.size(); ++r) {
        if (milp.tags1[r].family != RowFamily::U2SCapacity &&
            milp.tags1[r].family != RowFamily::S2UCapacity)
            continue;
        for (const auto& [col, coeff] : milp.g1[r])
            assoc_cap[col] = std::max(assoc_cap[col], -coeff);
    }

    for (int c = 0; c < n0; ++c)
        if (forced[c]) take(c);

    // one satellite per (flow, slot, direction): strongest capacity first
    std::map<std::tuple<int, int, int>, std::vector<int>> groups;  // (dir, flow, slot)
    for (int c = 0; c < n0; ++c) {
        const VarKey& k = milp.vars.binary_key(c);
        if (k.kind == VarKind::PhiU2S)
            groups[{0, k.flow, k.slot}].push_back(c);
        else if (k.kind == VarKind::PhiS2U)
            groups[{1, k.flow, k.slot}].push_back(c);
    }
    for (auto& [key, cols] : groups) {
        bool done = false;
        for (int c : cols) done = done || w[c];
        if (done) continue;
        int best = -1;
        for (int c : cols) {
            if (forbidden[c] || !has_budget(c)) continue;
            if (best < 0 || assoc_cap[c] > assoc_cap[best] + 1e-15) best = c;
        }
        if (best < 0) {
            const auto [dir, flow, slot] = key;
            throw ValidationError(std::string("no feasible greedy association: ") +
                                  (dir == 0 ? "C^{U2S}" : "C^{S2U}") +
                                  " exhausted for flow " + std::to_string(flow + 1) +
                                  " at slot " + std::to_string(slot));
        }
        take(best);
    }

    // first capable virtual function node per SFC step
    std::map<std::pair<int, int>, std::vector<int>> steps;
    for (int c = 0; c < n0; ++c) {
        const VarKey& k = milp.vars.binary_key(c);
        if (k.kind == VarKind::Lambda) steps[{k.flow, k.stage}].push_back(c);
    }
    for (auto& [key, cols] : steps) {
        bool done = false;
        for (int c : cols) done = done || w[c];
        if (done) continue;
        int chosen = -1;
        for (int c : cols)
            if (!forbidden[c]) {
                chosen = c;
                break;
            }
        if (chosen < 0)
            throw ValidationError("no feasible greedy placement for flow " +
                                  std::to_string(key.first + 1) + " step " +
                                  std::to_string(key.second));
        take(chosen);
    }

    std::vector<double> wd(w.begin(), w.end());
    const Evaluation ev = evaluate_binary(milp, wd);
    if (!ev.feasible)
        throw ValidationError("greedy start violates the binary block: " +
                              ev.violations.front().tag.detail);
    (void)sc;
    return w;
}

// ---------------------------------------------------------------------------
// Shared Benders loop

double bound_gap(double ub, double lb) {
    if (!std::isfinite(ub) || !std::isfinite(lb)) return kInf;
    const double diff = std::fabs(ub - lb);
    return std::fabs(ub) < 1e-6 ? diff : std::fabs(diff / ub);
}

const char* stop_reason_name(StopReason reason) {
    switch (reason) {
        case StopReason::Converged: return "converged";
        case StopReason::Stalled: return "stalled";
        case StopReason::IterationLimit: return "iteration_limit";
        case StopReason::MasterInfeasible: return "master_infeasible";
        case StopReason::Failure: return "failure";
    }
    return "?";
}

namespace {

CutData make_cut(const MilpProblem& milp, const SubproblemOutcome& sub, int iter) {
    CutData cut;
    cut.optimality = sub.kind == SubproblemOutcome::Kind::OptimalityCut;
    cut.origin_iter = iter;
    cut.rhs_term = 0.0;
    for (std::size_t r = 0; r < milp.d1.size(); ++r) cut.rhs_term += milp.d1[r] * sub.e[r];
    for (std::size_t r = 0; r < milp.d2.size(); ++r)
        cut.rhs_term += milp.d2[r] * sub.e[milp.d1.size() + r];
    std::vector<double> dense(milp.vars.binary_count(), 0.0);
    for (std::size_t r = 0; r < milp.d1.size(); ++r) {
        if (sub.e[r] == 0.0) continue;
        for (const auto& [j, v] : milp.g1[r]) dense[j] += sub.e[r] * v;
    }
    for (std::size_t r = 0; r < milp.d2.size(); ++r) {
        if (sub.e[milp.d1.size() + r] == 0.0) continue;
        for (const auto& [j, v] : milp.g2[r]) dense[j] += sub.e[milp.d1.size() + r] * v;
    }
    for (int j = 0; j < static_cast<int>(dense.size()); ++j)
        if (std::fabs(dense[j]) > 1e-12) cut.w_coeffs.emplace_back(j, dense[j]);
    return cut;
}

bool same_cut(const CutData& a, const CutData& b) {
    if (a.optimality != b.optimality) return false;
    if (std::fabs(a.rhs_term - b.rhs_term) > 1e-9) return false;
    if (a.w_coeffs.size() != b.w_coeffs.size()) return false;
    for (std::size_t i = 0; i < a.w_coeffs.size(); ++i) {
        if (a.w_coeffs[i].first != b.w_coeffs[i].first) return false;
        if (std::fabs(a.w_coeffs[i].second - b.w_coeffs[i].second) > 1e-9) return false;
    }
    return true;
}

/// MP1 objective at a fixed w given the current cut pools.
double analytic_theta(const MasterState& state, std::span<const double> w) {
    double theta = state.theta_lo;
    for (const auto& cut : state.optimality_cuts)
        theta = std::max(theta, cut.value_at(w));
    return theta;
}

bool respects_feasibility_cuts(const MasterState& state, std::span<const double> w) {
    for (const auto& cut : state.feasibility_cuts)
        if (cut.value_at(w) > 1e-3) return false;
    return true;
}

MipProblem master_as_mip(const MilpProblem& milp, const MasterState& state) {
    MipProblem mip;
    const int n0 = milp.vars.binary_count();
    mip.lp.num_vars = n0 + 1;  // [w | theta'], theta = theta_lo + theta'
    mip.lp.objective.assign(n0 + 1, 0.0);
    mip.lp.objective[n0] = 1.0;
    mip.objective_constant = state.theta_lo;
    mip.lp.upper.assign(n0 + 1, 1.0);
    mip.lp.upper[n0] = state.theta_hi - state.theta_lo;
    for (int j = 0; j < n0; ++j) mip.binary_cols.push_back(j);
    for (std::size_t r = 0; r < milp.d3.size(); ++r) {
        mip.lp.a_ineq.push_back(milp.g3[r]);
        mip.lp.b_ineq.push_back(milp.d3[r]);
    }
    for (const auto& cut : state.feasibility_cuts) {
        SparseVec row;
        for (const auto& [j, v] : cut.w_coeffs) row.emplace_back(j, -v);
        mip.lp.a_ineq.push_back(std::move(row));
        mip.lp.b_ineq.push_back(-cut.rhs_term);
    }
    for (const auto& cut : state.optimality_cuts) {
        SparseVec row;
        for (const auto& [j, v] : cut.w_coeffs) row.emplace_back(j, -v);
        row.emplace_back(n0, -1.0);
        std::sort(row.begin(), row.end());
        mip.lp.a_ineq.push_back(std::move(row));
        mip.lp.b_ineq.push_back(-cut.rhs_term + state.theta_lo);
    }
    return mip;
}

/// Objective bound from the S2U side alone: per (flow, slot) at most the
/// best visible capacity can arrive. Computable from the MILP itself.
double s2u_side_bound(const MilpProblem& milp) {
    std::map<std::pair<int, int>, double> best;
    for (std::size_t r = 0; r < milp.d1.size(); ++r) {
        if (milp.tags1[r].family != RowFamily::S2UCapacity) continue;
        const VarKey& k = milp.vars.continuous_key(milp.b1[r][0].first);
        double cap = 0.0;
        for (const auto& [j, v] : milp.g1[r]) cap = std::max(cap, -v);
        auto& slot_best = best[{k.flow, k.slot}];
        slot_best = std::max(slot_best, cap);
    }
    double bound = 0.0;
    for (const auto& [key, cap] : best) bound += cap;
    return bound;
}

struct MasterSolveResult {
    std::vector<std::vector<std::uint8_t>> candidates;
    double lb = -kInf;
    bool certified = false;
    int bits = 0;
    double sampler_best = std::numeric_limits<double>::quiet_NaN();
    double sampler_median = std::numeric_limits<double>::quiet_NaN();
};

class BendersDriver {
  public:
    BendersDriver(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg)
        : milp_(milp), sc_(sc), cfg_(std::move(cfg)), solver_(milp) {}

    BendersResult run() {
        BendersResult result;
        MasterState& state = result.state;
        state.theta_hi = 0.0;
        state.theta_lo = -(s2u_side_bound(milp_) * 1.01 + 1.0);

        std::vector<std::vector<std::uint8_t>> candidates;
        candidates.push_back(cfg_.start_w.empty() ? initial_w(milp_, sc_) : cfg_.start_w);

        int stall = 0;
        StopReason reason = StopReason::IterationLimit;
        for (int iter = 1; iter <= cfg_.max_iters; ++iter) {
            state.iteration = iter;
            if (state.lb_certified && bound_gap(state.ub, state.lb) <= cfg_.eps) {
                reason = StopReason::Converged;
                break;
            }

            IterationRecord row;
            row.iter = iter;
            const auto sub_start = Clock::now();
            const double ub_before = state.ub;
            int added = 0;
            try {
                added = solve_candidates(state, candidates, iter);
            } catch (const std::exception&) {
                reason = StopReason::Failure;
                result.log.rows.push_back(row);
                break;
            }
            row.sub_ms = ms_since(sub_start);
            row.cuts_added = added;

            const auto master_start = Clock::now();
            MasterSolveResult master;
            try {
                master = solve_master(state, iter);
            } catch (const ValidationError&) {
                reason = StopReason::MasterInfeasible;
                result.log.rows.push_back(row);
                break;
            } catch (const std::exception&) {
                reason = StopReason::Failure;
                result.log.rows.push_back(row);
                break;
            }
            row.master_ms = ms_since(master_start);
            row.master_bits = master.bits;
            row.sampler_best = master.sampler_best;
            row.sampler_median = master.sampler_median;
            if (master.candidates.empty()) {
                reason = StopReason::Failure;
                result.log.rows.push_back(row);
                break;
            }
            state.lb = master.lb;
            state.lb_certified = master.certified;
            candidates = std::move(master.candidates);

            row.ub = state.ub;
            row.lb = state.lb;
            row.gap = bound_gap(state.ub, state.lb);
            row.lb_certified = state.lb_certified;
            result.log.rows.push_back(row);

            if (cfg_.backend == MasterBackend::SimulatedAnnealing) {
                stall = state.ub < ub_before - 1e-12 ? 0 : stall + 1;
                if (stall >= cfg_.stall_limit) {
                    reason = StopReason::Stalled;
                    break;
                }
            }
        }

        result.log.reason = reason;
        result.converged = reason == StopReason::Converged;
        result.objective_min_form = state.ub;
        if (!state.incumbent_w.empty()) {
            std::vector<double> wd(state.incumbent_w.begin(), state.incumbent_w.end());
            result.report = decode_solution(milp_, sc_, state.incumbent_q, wd);
        }
        return result;
    }

  private:
    int solve_candidates(MasterState& state,
                         const std::vector<std::vector<std::uint8_t>>& candidates, int iter) {
        // dedup within the batch, then solve anything not in the cache
        std::vector<std::vector<std::uint8_t>> distinct;
        for (const auto& w : candidates)
            if (std::find(distinct.begin(), distinct.end(), w) == distinct.end())
                distinct.push_back(w);
        std::vector<const std::vector<std::uint8_t>*> missing;
        for (const auto& w : distinct)
            if (!cache_.count(w)) missing.push_back(&w);
        if (static_cast<int>(missing.size()) > 1 && cfg_.jobs > 1) {
            std::vector<SubproblemOutcome> outs(missing.size());
            std::vector<std::thread> pool;
            const int workers = std::min<int>(cfg_.jobs, static_cast<int>(missing.size()));
            for (int t = 0; t < workers; ++t)
                pool.emplace_back([&, t]() {
                    for (std::size_t i = t; i < missing.size(); i += workers) {
                        std::vector<double> wd(missing[i]->begin(), missing[i]->end());
                        outs[i] = solver_.solve(wd);
                    }
                });
            for (auto& th : pool) th.join();
            for (std::size_t i = 0; i < missing.size(); ++i)
                cache_.emplace(*missing[i], std::move(outs[i]));
        } else {
            for (const auto* w : missing) {
                std::vector<double> wd(w->begin(), w->end());
                cache_.emplace(*w, solver_.solve(wd));
            }
        }

        int added = 0;
        for (const auto& w : distinct) {
            const SubproblemOutcome& sub = cache_.at(w);
            if (sub.kind == SubproblemOutcome::Kind::NumericalFailure)
                throw std::runtime_error("subproblem failure: " + sub.message);
            CutData cut = make_cut(milp_, sub, iter);
            auto& pool = cut.optimality ? state.optimality_cuts : state.feasibility_cuts;
            bool dup = false;
            for (const auto& existing : pool) dup = dup || same_cut(existing, cut);
            if (!dup) {
                pool.push_back(std::move(cut));
                ++added;
            }
            if (sub.kind == SubproblemOutcome::Kind::OptimalityCut &&
                sub.theta_hat < state.ub - 1e-12) {
                state.ub = sub.theta_hat;
                state.incumbent_w = w;
                state.incumbent_q = sub.q;
            }
        }
        return added;
    }

    MasterSolveResult solve_master(MasterState& state, int iter) {
        if (cfg_.backend == MasterBackend::BranchAndBound) return solve_master_bnb(state);
        if (cfg_.backend == MasterBackend::BruteForce) return solve_master_enumerate(state);
        return solve_master_qubo(state, iter);
    }

    /// Exact oracle-grade master: enumerate w, evaluate the cut envelope
    /// analytically. The compiled-QUBO ground state is checked against this
    /// elsewhere; using it here would cap agreement at the theta resolution.
    MasterSolveResult solve_master_enumerate(const MasterState& state) {
        const int n0 = milp_.vars.binary_count();
        if (n0 > 22)
            throw std::invalid_argument("brute-force master guard: " + std::to_string(n0) +
                                        " binaries");
        MasterSolveResult out;
        out.bits = n0;
        std::vector<std::pair<double, std::vector<std::uint8_t>>> scored;
        std::vector<double> wd(n0, 0.0);
        for (std::uint64_t mask = 0; mask < (1ULL << n0); ++mask) {
            for (int j = 0; j < n0; ++j) wd[j] = (mask >> j) & 1 ? 1.0 : 0.0;
            if (!evaluate_binary(milp_, wd).feasible) continue;
            bool cut_ok = true;
            for (const auto& cut : state.feasibility_cuts)
                cut_ok = cut_ok && cut.value_at(wd) <= 1e-9;
            if (!cut_ok) continue;
            scored.emplace_back(analytic_theta(state, wd),
                                std::vector<std::uint8_t>(wd.begin(), wd.end()));
        }
        if (scored.empty()) throw ValidationError("master problem infeasible");
        std::sort(scored.begin(), scored.end());
        out.lb = scored.front().first;
        out.certified = true;
        const int take = std::min<int>(cfg_.cuts_per_iter, static_cast<int>(scored.size()));
        for (int i = 0; i < take; ++i) out.candidates.push_back(std::move(scored[i].second));
        return out;
    }

    MasterSolveResult solve_master_bnb(const MasterState& state) {
        MasterSolveResult out;
        const MipProblem mip = master_as_mip(milp_, state);
        out.bits = milp_.vars.binary_count();
        const BnbResult res = branch_and_bound(mip, cfg_.master_limits);
        if (res.status == BnbResult::Status::Infeasible)
            throw ValidationError("master problem infeasible");
        if (res.status == BnbResult::Status::NumericalFailure)
            throw std::runtime_error("master branch-and-bound failed");
        std::vector<std::uint8_t> w(milp_.vars.binary_count());
        for (int j = 0; j < milp_.vars.binary_count(); ++j)
            w[j] = res.x[j] > 0.5 ? 1 : 0;
        out.lb = res.objective;
        out.certified = res.proven_optimal;
        out.candidates.push_back(std::move(w));
        return out;
    }

    MasterSolveResult solve_master_qubo(MasterState& state, int iter) {
        MasterProblem master{&milp_, &state.feasibility_cuts, &state.optimality_cuts,
                             state.theta_lo, state.theta_hi};
        const ThetaEncoding enc =
            encode_theta(state.theta_lo, state.theta_hi, cfg_.theta_bits);

        for (int attempt = 0; attempt < 5; ++attempt) {
            PenaltyConfig penalties = cfg_.penalties;
            const double scale = penalty_scale_ * (1 << attempt);
            const double width = state.theta_hi - state.theta_lo;
            const double base = 2.0 * std::max(1.0, width) * scale;
            penalties.eta1 = penalties.eta1 > 0 ? penalties.eta1 * scale : base;
            penalties.eta2 = penalties.eta2 > 0 ? penalties.eta2 * scale : base;
            penalties.eta3 = penalties.eta3 > 0 ? penalties.eta3 * scale : base;
            const QuboModel model = build_master_qubo(master, penalties, enc);

            MasterSolveResult out;
            out.bits = model.num_bits();
            const std::uint64_t iter_seed =
                cfg_.seed + 0x51ed2701ab7c3a25ULL * static_cast<std::uint64_t>(iter);
            const SampleSet samples = anneal(model, cfg_.schedule, iter_seed, cfg_.jobs);
            out.sampler_best = samples.entries.front().energy;
            int total = 0;
            for (const auto& s : samples.entries) total += s.count;
            int half = (total + 1) / 2;
            for (const auto& s : samples.entries) {
                half -= s.count;
                if (half <= 0) {
                    out.sampler_median = s.energy;
                    break;
                }
            }
            std::vector<DecodedSample> picks = extract_candidates(samples, model,
                                                                  cfg_.cuts_per_iter);

            // keep candidates that honor the feasibility cuts exactly
            std::vector<double> wd;
            for (auto& d : picks) {
                wd.assign(d.w.begin(), d.w.end());
                if (!respects_feasibility_cuts(state, wd)) continue;
                const double theta = analytic_theta(state, wd);
                out.lb = out.candidates.empty() ? theta : std::min(out.lb, theta);
                out.candidates.push_back(std::move(d.w));
            }
            if (!out.candidates.empty()) {
                out.certified = cfg_.backend == MasterBackend::BruteForce;
                if (attempt > 0) penalty_scale_ *= (1 << attempt);
                return out;
            }
            // escalation: every decoded sample violated the master block
        }
        throw std::runtime_error(
            "no master-feasible sample after penalty escalation (EmptyCandidates)");
    }

    const MilpProblem& milp_;
    const Scenario& sc_;
    SolverConfig cfg_;
    SubproblemSolver solver_;
    std::map<std::vector<std::uint8_t>, SubproblemOutcome> cache_;
    double penalty_scale_ = 1.0;
};

}  // namespace

BendersResult run_hqcbd(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg) {
    cfg.cuts_per_iter = 1;
    return BendersDriver(milp, sc, std::move(cfg)).run();
}

BendersResult run_multicut(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg) {
    return BendersDriver(milp, sc, std::move(cfg)).run();
}

BendersResult run_classical_bd(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg) {
    cfg.backend = MasterBackend::BranchAndBound;
    cfg.cuts_per_iter = 1;
    return BendersDriver(milp, sc, std::move(cfg)).run();
}

MonolithicResult solve_monolithic(const MilpProblem& milp, const Scenario& sc,
                                  const BnbLimits& limits) {
    const int m0 = milp.vars.continuous_count();
    const int n0 = milp.vars.binary_count();
    MipProblem mip;
    mip.lp.num_vars = m0 + n0;
    mip.lp.objective.assign(m0 + n0, 0.0);
    for (int j = 0; j < m0; ++j) mip.lp.objective[j] = -milp.objective[j];
    mip.lp.upper.assign(m0 + n0, kInf);
    for (int j = 0; j < n0; ++j) {
        mip.lp.upper[m0 + j] = 1.0;
        mip.binary_cols.push_back(m0 + j);
    }
    auto shift = [&](const SparseVec& gw) {
        SparseVec row;
        for (const auto& [j, v] : gw) row.emplace_back(m0 + j, v);
        return row;
    };
    for (std::size_t r = 0; r < milp.d1.size(); ++r) {
        SparseVec row = milp.b1[r];
        const SparseVec wpart = shift(milp.g1[r]);
        row.insert(row.end(), wpart.begin(), wpart.end());
        mip.lp.a_ineq.push_back(std::move(row));
        mip.lp.b_ineq.push_back(milp.d1[r]);
    }
    for (std::size_t r = 0; r < milp.d2.size(); ++r) {
        SparseVec row = milp.b2[r];
        const SparseVec wpart = shift(milp.g2[r]);
        row.insert(row.end(), wpart.begin(), wpart.end());
        mip.lp.a_eq.push_back(std::move(row));
        mip.lp.b_eq.push_back(milp.d2[r]);
    }
    for (std::size_t r = 0; r < milp.d3.size(); ++r) {
        mip.lp.a_ineq.push_back(shift(milp.g3[r]));
        mip.lp.b_ineq.push_back(milp.d3[r]);
    }

    const BnbResult res = branch_and_bound(mip, limits);
    if (res.status == BnbResult::Status::Infeasible)
        throw ValidationError("monolithic model infeasible");
    if (res.status == BnbResult::Status::NumericalFailure || res.x.empty())
        throw std::runtime_error("monolithic branch-and-bound failed");
    MonolithicResult out;
    out.proven_optimal = res.proven_optimal;
    out.objective_min_form = res.objective;
    out.best_bound = res.best_bound;
    out.nodes = res.nodes;
    std::vector<double> q(res.x.begin(), res.x.begin() + m0);
    std::vector<double> w(res.x.begin() + m0, res.x.end());
    out.report = decode_solution(milp, sc, q, w);
    return out;
}

std::vector<std::vector<std::uint8_t>> enumerate_feasible_w(const MilpProblem& milp,
                                                            int max_bits) {
    const int n0 = milp.vars.binary_count();
    if (n0 > max_bits)
        throw std::invalid_argument("enumerate_feasible_w: " + std::to_string(n0) +
                                    " binaries exceed the guard");
    std::vector<std::vector<std::uint8_t>> out;
    std::vector<double> wd(n0, 0.0);
    for (std::uint64_t mask = 0; mask < (1ULL << n0); ++mask) {
        for (int j = 0; j < n0; ++j) wd[j] = (mask >> j) & 1 ? 1.0 : 0.0;
        if (evaluate_binary(milp, wd).feasible)
            out.emplace_back(wd.begin(), wd.end());
    }
    return out;
}

// ---------------------------------------------------------------------------
// Serialization

std::string log_to_tsv(const IterationLog& log) {
    std::ostringstream out;
    out.precision(12);
    out << "iter\tub\tlb\tgap\tcuts_added\tmaster_bits\tsampler_best\tsampler_median\t"
           "lb_certified\n";
    for (const auto& r : log.rows)
        out << r.iter << "\t" << r.ub << "\t" << r.lb << "\t" << r.gap << "\t" << r.cuts_added
            << "\t" << r.master_bits << "\t" << r.sampler_best << "\t" << r.sampler_median
            << "\t" << (r.lb_certified ? 1 : 0) << "\n";
    out << "# stop\t" << stop_reason_name(log.reason) << "\n";
    return out.str();
}

std::string timings_to_tsv(const IterationLog& log) {
    std::ostringstream out;
    out.precision(6);
    out << "iter\tmaster_ms\tsub_ms\n";
    for (const auto& r : log.rows)
        out << r.iter << "\t" << r.master_ms << "\t" << r.sub_ms << "\n";
    return out.str();
}

std::string log_to_csv(const IterationLog& log) {
    std::ostringstream out;
    out.precision(12);
    out << "iter,ub,lb,gap,cuts_added,master_bits,sampler_best,sampler_median,lb_certified\n";
    for (const auto& r : log.rows)
        out << r.iter << "," << r.ub << "," << r.lb << "," << r.gap << "," << r.cuts_added
            << "," << r.master_bits << "," << r.sampler_best << "," << r.sampler_median << ","
            << (r.lb_certified ? 1 : 0) << "\n";
    return out.str();
}

std::string cuts_to_json(const MasterState& state) {
    nlohmann::json j;
    auto dump_pool = [](const std::vector<CutData>& pool) {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& cut : pool) {
            nlohmann::json jc;
            jc["optimality"] = cut.optimality;
            jc["rhs_term"] = cut.rhs_term;
            jc["origin_iter"] = cut.origin_iter;
            nlohmann::json coeffs = nlohmann::json::array();
            for (const auto& [col, v] : cut.w_coeffs)
                coeffs.push_back(nlohmann::json::array({col, v}));
            jc["w_coeffs"] = std::move(coeffs);
            arr.push_back(std::move(jc));
        }
        return arr;
    };
    j["feasibility_cuts"] = dump_pool(state.feasibility_cuts);
    j["optimality_cuts"] = dump_pool(state.optimality_cuts);
    j["theta_lo"] = state.theta_lo;
    j["theta_hi"] = state.theta_hi;
    return j.dump(2) + "\n";
}

void cuts_from_json(const std::string& text, MasterState& state) {
    nlohmann::json j = nlohmann::json::parse(text);
    auto load_pool = [](const nlohmann::json& arr) {
        std::vector<CutData> pool;
        for (const auto& jc : arr) {
            CutData cut;
            cut.optimality = jc.at("optimality").get<bool>();
            cut.rhs_term = jc.at("rhs_term").get<double>();
            cut.origin_iter = jc.at("origin_iter").get<int>();
            for (const auto& pair : jc.at("w_coeffs"))
                cut.w_coeffs.emplace_back(pair[0].get<int>(), pair[1].get<double>());
            pool.push_back(std::move(cut));
        }
        return pool;
    };
    state.feasibility_cuts = load_pool(j.at("feasibility_cuts"));
    state.optimality_cuts = load_pool(j.at("optimality_cuts"));
    state.theta_lo = j.at("theta_lo").get<double>();
    state.theta_hi = j.at("theta_hi").get<double>();
}

}  // namespace sinflow
