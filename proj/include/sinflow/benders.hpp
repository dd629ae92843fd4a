#pragma once

#include <limits>

#include "sinflow/lp.hpp"
#include "sinflow/qubo.hpp"
#include "sinflow/sampler.hpp"

namespace sinflow {

// ---------------------------------------------------------------------------
// Branch-and-bound over LP relaxations (master backend and monolithic oracle)

struct MipProblem {
    LpStandardForm lp;
    std::vector<int> binary_cols;
    double objective_constant = 0.0;
};

struct BnbLimits {
    long max_nodes = 200'000;
    double int_tol = 1e-6;
};

struct BnbResult {
    enum class Status { Optimal, Infeasible, NodeLimit, NumericalFailure };
    Status status = Status::NumericalFailure;
    bool proven_optimal = false;
    double objective = 0.0;
    double best_bound = -std::numeric_limits<double>::infinity();
    std::vector<double> x;
    long nodes = 0;  // branched nodes; 0 when the root relaxation is integral
};

/// Best-first search, branching on the most fractional binary (ties to the
/// lowest index); children fix the variable by substitution.
BnbResult branch_and_bound(const MipProblem& mip, const BnbLimits& limits);

// ---------------------------------------------------------------------------
// Benders orchestration

enum class MasterBackend { SimulatedAnnealing, BruteForce, BranchAndBound };
enum class StopReason { Converged, Stalled, IterationLimit, MasterInfeasible, Failure };

const char* stop_reason_name(StopReason reason);

struct SolverConfig {
    double eps = 1e-3;
    int max_iters = 200;
    int cuts_per_iter = 1;  // rho
    MasterBackend backend = MasterBackend::SimulatedAnnealing;
    AnnealSchedule schedule;
    PenaltyConfig penalties;
    int theta_bits = 20;
    std::uint64_t seed = 0;
    int jobs = 1;
    int stall_limit = 15;  // SA: stop after this many iterations without UB progress
    BnbLimits master_limits;
    std::vector<std::uint8_t> start_w;  // empty: greedy initial point
};

struct MasterState {
    std::vector<CutData> feasibility_cuts;
    std::vector<CutData> optimality_cuts;
    double ub = std::numeric_limits<double>::infinity();   // min form
    double lb = -std::numeric_limits<double>::infinity();  // min form
    bool lb_certified = false;
    int iteration = 0;
    double theta_lo = -1.0, theta_hi = 0.0;
    std::vector<std::uint8_t> incumbent_w;
    std::vector<double> incumbent_q;
};

struct IterationRecord {
    int iter = 0;
    double ub = 0.0, lb = 0.0, gap = 0.0;
    int cuts_added = 0;
    int master_bits = 0;
    double master_ms = 0.0, sub_ms = 0.0;
    double sampler_best = std::numeric_limits<double>::quiet_NaN();
    double sampler_median = std::numeric_limits<double>::quiet_NaN();
    bool lb_certified = false;
};

struct IterationLog {
    std::vector<IterationRecord> rows;
    StopReason reason = StopReason::Failure;
};

struct BendersResult {
    SolutionReport report;
    IterationLog log;
    MasterState state;
    bool converged = false;
    double objective_min_form = 0.0;
};

/// Relative UB/LB gap, switching to the absolute gap near zero.
double bound_gap(double ub, double lb);

/// Greedy start: strongest-capacity association obeying the user caps and
/// any baseline fixings, first capable node for every SFC step.
std::vector<std::uint8_t> initial_w(const MilpProblem& milp, const Scenario& sc);

BendersResult run_hqcbd(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg);
BendersResult run_multicut(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg);
BendersResult run_classical_bd(const MilpProblem& milp, const Scenario& sc, SolverConfig cfg);

struct MonolithicResult {
    SolutionReport report;
    bool proven_optimal = false;
    double objective_min_form = 0.0;
    double best_bound = 0.0;
    long nodes = 0;
};

/// Whole-MILP branch-and-bound; the oracle the decomposition is checked
/// against at desk scale.
MonolithicResult solve_monolithic(const MilpProblem& milp, const Scenario& sc,
                                  const BnbLimits& limits = {});

/// All w satisfying (G3, d3), by direct enumeration; guarded by bit count.
std::vector<std::vector<std::uint8_t>> enumerate_feasible_w(const MilpProblem& milp,
                                                            int max_bits = 20);

/// Convergence log (deterministic columns) and per-iteration timings.
std::string log_to_tsv(const IterationLog& log);
std::string timings_to_tsv(const IterationLog& log);
std::string log_to_csv(const IterationLog& log);

std::string cuts_to_json(const MasterState& state);
void cuts_from_json(const std::string& text, MasterState& state);

}  // namespace sinflow
