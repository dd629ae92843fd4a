#pragma once

#include <span>
#include <string>
#include <vector>

#include "sinflow/milp.hpp"

namespace sinflow {

/// min c'x  s.t.  A_ineq x <= b_ineq,  A_eq x = b_eq,  0 <= x (<= upper).
struct LpStandardForm {
    int num_vars = 0;
    std::vector<SparseVec> a_ineq;
    std::vector<double> b_ineq;
    std::vector<SparseVec> a_eq;
    std::vector<double> b_eq;
    std::vector<double> objective;
    std::vector<double> upper;  // empty, or +inf entries for unbounded columns
};

struct LpOptions {
    double feas_tol = 1e-9;
    double opt_tol = 1e-7;
    long max_pivots = 1'000'000;
    int bland_after = 500;    // degenerate pivots before Bland's rule takes over
    int refactor_every = 100;
    /// Optional structural crash basis: one column per row, -1 for the
    /// row's slack. Used when it factorizes and is bound-feasible.
    std::vector<int> basis_hint;
};

struct LpOutcome {
    enum class Status { Optimal, Infeasible, Unbounded, NumericalFailure };
    Status status = Status::NumericalFailure;
    double objective = 0.0;
    std::vector<double> x;
    // Optimal: duals are <= 0 on inequality rows, free on equalities;
    // bound_duals[j] <= 0 is the multiplier of x_j <= u_j.
    std::vector<double> duals_ineq;
    std::vector<double> duals_eq;
    std::vector<double> bound_duals;
    std::vector<double> reduced_costs;
    // Infeasible: Y >= 0 on inequality rows with A'Y + Y_bnd >= 0 and
    // b'Y + u'Y_bnd < 0.
    std::vector<double> farkas_ineq;
    std::vector<double> farkas_eq;
    std::vector<double> farkas_bounds;
    std::vector<double> primal_ray;  // Unbounded
    long pivots = 0;
    std::string message;
};

LpOutcome solve_lp(const LpStandardForm& problem, const LpOptions& opts = {});

/// Benders subproblem: fix w, minimize -c'q over the continuous blocks.
struct SubproblemOutcome {
    enum class Kind { OptimalityCut, FeasibilityCut, NumericalFailure };
    Kind kind = Kind::NumericalFailure;
    double theta_hat = 0.0;  // SP optimal value, min form (OptimalityCut)
    /// Dual vector e2 (OptimalityCut) or negated Farkas ray e1
    /// (FeasibilityCut) over the stacked [d1; d2] row space, oriented so
    /// that the cuts read (d*-G*w)'e2 <= theta and (d*-G*w)'e1 <= 0.
    std::vector<double> e;
    std::vector<double> q;  // primal optimum (OptimalityCut)
    std::string message;
};

/// Reusable structure extraction for repeated solves over the same MILP:
/// singleton rows of B1 become variable bounds, equalities keep a
/// structural crash basis (storage chains and z columns) so the all-zero
/// flow is an immediately feasible starting basis.
class SubproblemSolver {
  public:
    explicit SubproblemSolver(const MilpProblem& milp);
    SubproblemOutcome solve(std::span<const double> w, const LpOptions& opts = {}) const;
    const MilpProblem& problem() const { return *milp_; }

  private:
    const MilpProblem* milp_;
    // row classification
    std::vector<int> bound_row_of_var_;  // continuous col -> B1 row index or -1
    std::vector<int> lp_row_of_b1_;      // B1 row -> LP ineq row or -1 (bound rows)
    std::vector<int> basis_hint_;
    LpStandardForm base_;  // matrix structure; rhs/bounds filled per solve
};

SubproblemOutcome solve_subproblem(const MilpProblem& milp, std::span<const double> w,
                                   const LpOptions& opts = {});

}  // namespace sinflow
