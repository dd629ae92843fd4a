#include "sinflow/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>

namespace sinflow {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPivotTol = 1e-9;
constexpr double kDegenTol = 1e-10;
constexpr double kEtaDropTol = 1e-12;

enum class VarState : std::uint8_t { Basic, AtLower, AtUpper };

/// Bounded revised simplex over columns [structural | slack | artificial]
/// with product-form updates on top of a sparse LU of the basis.
class SimplexEngine {
  public:
    SimplexEngine(const LpStandardForm& p, const LpOptions& opts)
        : opts_(opts),
          n_struct_(p.num_vars),
          n_ineq_(static_cast<int>(p.a_ineq.size())),
          n_eq_(static_cast<int>(p.a_eq.size())),
          m_(n_ineq_ + n_eq_) {
        cols_.resize(n_struct_ + n_ineq_);
        for (int r = 0; r < n_ineq_; ++r)
            for (const auto& [j, v] : p.a_ineq[r])
                if (v != 0.0) cols_[j].emplace_back(r, v);
        for (int r = 0; r < n_eq_; ++r)
            for (const auto& [j, v] : p.a_eq[r])
                if (v != 0.0) cols_[j].emplace_back(n_ineq_ + r, v);
        for (int r = 0; r < n_ineq_; ++r) cols_[n_struct_ + r] = {{r, 1.0}};
        b_.assign(m_, 0.0);
        for (int r = 0; r < n_ineq_; ++r) b_[r] = p.b_ineq[r];
        for (int r = 0; r < n_eq_; ++r) b_[n_ineq_ + r] = p.b_eq[r];
        ub_.assign(cols_.size(), kInf);
        for (int j = 0; j < n_struct_ && j < static_cast<int>(p.upper.size()); ++j)
            ub_[j] = p.upper[j];
        cost_.assign(cols_.size(), 0.0);
        state_.assign(cols_.size(), VarState::AtLower);
        x_.assign(cols_.size(), 0.0);
        pos_of_.assign(cols_.size(), -1);
        real_cost_ = cost_;
        for (int j = 0; j < n_struct_; ++j) real_cost_[j] = p.objective[j];
    }

    LpOutcome run() {
        const bool feasible_start = try_crash_basis();
        if (!feasible_start) {
            setup_phase1();
            const Step s1 = iterate(/*phase1=*/true);
            if (s1 != Step::Optimal) return failure(s1);
            const double infeas = phase_objective();
            if (infeas > 1e-7) return extract_farkas();
            retire_artificials();
        }
        phase1_ = false;
        cost_ = real_cost_;
        cost_.resize(cols_.size(), 0.0);
        const Step s2 = iterate(/*phase1=*/false);
        if (s2 == Step::Unbounded) return extract_ray();
        if (s2 != Step::Optimal) return failure(s2);
        return extract_optimal();
    }

  private:
    enum class Step { Optimal, Unbounded, PivotLimit, Singular };

    LpOutcome failure(Step s) {
        LpOutcome out;
        out.status = LpOutcome::Status::NumericalFailure;
        out.pivots = pivots_;
        out.message = s == Step::PivotLimit ? "pivot limit reached" : "singular basis";
        return out;
    }

    // ---- factorization -----------------------------------------------------

    bool refactor() {
        if (m_ == 0) {
            etas_.clear();
            return true;
        }
        using SpMat = Eigen::SparseMatrix<double>;
        std::vector<Eigen::Triplet<double>> ts;
        for (int r = 0; r < m_; ++r)
            for (const auto& [row, v] : cols_[basic_[r]]) ts.emplace_back(row, r, v);
        SpMat bmat(m_, m_);
        bmat.setFromTriplets(ts.begin(), ts.end());
        lu_.compute(bmat);
        etas_.clear();
        return lu_.info() == Eigen::Success;
    }

    Eigen::VectorXd ftran(const SparseVec& col) const {
        if (m_ == 0) return Eigen::VectorXd(0);
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
        for (const auto& [r, v] : col) rhs[r] = v;
        Eigen::VectorXd d = lu_.solve(rhs);
        for (const auto& eta : etas_) {
            const double t = d[eta.row] / eta.diag;
            if (t != 0.0) {
                d[eta.row] = t;
                for (const auto& [r, v] : eta.off) d[r] -= v * t;
            } else {
                d[eta.row] = 0.0;
            }
        }
        return d;
    }

    Eigen::VectorXd btran(Eigen::VectorXd v) {
        if (m_ == 0) return v;
        for (auto it = etas_.rbegin(); it != etas_.rend(); ++it) {
            double t = v[it->row];
            for (const auto& [r, val] : it->off) t -= val * v[r];
            v[it->row] = t / it->diag;
        }
        return lu_.adjoint().solve(v);
    }

    void recompute_basics() {
        Eigen::VectorXd rhs = Eigen::VectorXd::Zero(m_);
        for (int r = 0; r < m_; ++r) rhs[r] = b_[r];
        for (std::size_t j = 0; j < cols_.size(); ++j)
            if (state_[j] == VarState::AtUpper)
                for (const auto& [r, v] : cols_[j]) rhs[r] -= v * ub_[j];
        Eigen::VectorXd xb = ftran_dense(rhs);
        for (int r = 0; r < m_; ++r) x_[basic_[r]] = xb[r];
    }

    Eigen::VectorXd ftran_dense(const Eigen::VectorXd& rhs) const {
        if (m_ == 0) return rhs;
        Eigen::VectorXd d = lu_.solve(rhs);
        for (const auto& eta : etas_) {
            const double t = d[eta.row] / eta.diag;
            d[eta.row] = t;
            for (const auto& [r, v] : eta.off) d[r] -= v * t;
        }
        return d;
    }

    // ---- setup -------------------------------------------------------------

    bool try_crash_basis() {
        if (opts_.basis_hint.empty()) return false;
        if (static_cast<int>(opts_.basis_hint.size()) != m_) return false;
        basic_.assign(m_, -1);
        for (int r = 0; r < m_; ++r) {
            int j = opts_.basis_hint[r];
            if (j < 0) {
                if (r >= n_ineq_) return false;  // equality rows need a real column
                j = n_struct_ + r;
            }
            basic_[r] = j;
        }
        std::fill(state_.begin(), state_.end(), VarState::AtLower);
        std::fill(pos_of_.begin(), pos_of_.end(), -1);
        for (int r = 0; r < m_; ++r) {
            state_[basic_[r]] = VarState::Basic;
            pos_of_[basic_[r]] = r;
        }
        if (!refactor()) return false;
        std::fill(x_.begin(), x_.end(), 0.0);
        recompute_basics();
        for (int r = 0; r < m_; ++r) {
            const int j = basic_[r];
            if (x_[j] < -1e-8 || x_[j] > ub_[j] + 1e-8) return false;
        }
        return true;
    }

    void setup_phase1() {
        phase1_ = true;
        basic_.assign(m_, -1);
        std::fill(state_.begin(), state_.end(), VarState::AtLower);
        std::fill(pos_of_.begin(), pos_of_.end(), -1);
        std::fill(x_.begin(), x_.end(), 0.0);
        cost_.assign(cols_.size(), 0.0);
        for (int r = 0; r < m_; ++r) {
            if (r < n_ineq_ && b_[r] >= 0.0) {
                basic_[r] = n_struct_ + r;  // slack
            } else {
                const double sign = b_[r] >= 0.0 ? 1.0 : -1.0;
                cols_.push_back({{r, sign}});
                ub_.push_back(kInf);
                cost_.push_back(1.0);
                state_.push_back(VarState::AtLower);
                x_.push_back(0.0);
                pos_of_.push_back(-1);
                real_cost_.push_back(0.0);
                artificial_from_ = std::min<int>(artificial_from_,
                                                 static_cast<int>(cols_.size()) - 1);
                basic_[r] = static_cast<int>(cols_.size()) - 1;
            }
        }
        for (int r = 0; r < m_; ++r) {
            state_[basic_[r]] = VarState::Basic;
            pos_of_[basic_[r]] = r;
        }
        refactor();
        recompute_basics();
    }

    double phase_objective() const {
        double s = 0.0;
        for (std::size_t j = 0; j < cols_.size(); ++j)
            if (cost_[j] != 0.0) s += cost_[j] * x_[j];
        return s;
    }

    /// Pivot zero-valued basic artificials out where possible, then freeze
    /// the remaining ones at zero.
    void retire_artificials() {
        for (int r = 0; r < m_; ++r) {
            const int j = basic_[r];
            if (j < artificial_from_) continue;
            bool replaced = false;
            for (int q = 0; q < artificial_from_ && !replaced; ++q) {
                if (state_[q] == VarState::Basic) continue;
                Eigen::VectorXd d = ftran(cols_[q]);
                if (std::fabs(d[r]) > 1e-7) {
                    swap_basis(r, q, d, state_[q] == VarState::AtUpper ? ub_[q] : 0.0);
                    replaced = true;
                }
            }
        }
        for (std::size_t j = artificial_from_; j < cols_.size(); ++j) ub_[j] = 0.0;
    }

    void swap_basis(int r, int q, const Eigen::VectorXd& d, double x_enter) {
        const int leave = basic_[r];
        state_[leave] = std::fabs(x_[leave] - ub_[leave]) < std::fabs(x_[leave])
                            ? VarState::AtUpper
                            : VarState::AtLower;
        pos_of_[leave] = -1;
        basic_[r] = q;
        state_[q] = VarState::Basic;
        pos_of_[q] = r;
        x_[q] = x_enter;
        Eta eta;
        eta.row = r;
        eta.diag = d[r];
        for (int i = 0; i < m_; ++i)
            if (i != r && std::fabs(d[i]) > kEtaDropTol) eta.off.emplace_back(i, d[i]);
        etas_.push_back(std::move(eta));
    }

    // ---- main loop ---------------------------------------------------------

    Step iterate(bool phase1) {
        int degenerate_streak = 0;
        bool bland = false;
        while (true) {
            if (pivots_ >= opts_.max_pivots) return Step::PivotLimit;
            if (static_cast<int>(etas_.size()) >= opts_.refactor_every) {
                if (!refactor()) return Step::Singular;
                recompute_basics();
            }
            // reduced costs via duals of the current basis
            Eigen::VectorXd cb(m_);
            for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
            const Eigen::VectorXd y = btran(cb);

            int enter = -1;
            double best = -opts_.opt_tol;
            int dir = +1;
            const int limit = static_cast<int>(cols_.size());
            for (int j = 0; j < limit; ++j) {
                if (state_[j] == VarState::Basic) continue;
                if (!phase1 && j >= artificial_from_) continue;
                if (ub_[j] == 0.0) continue;  // fixed at zero
                double dj = cost_[j];
                for (const auto& [r, v] : cols_[j]) dj -= y[r] * v;
                const double gain = state_[j] == VarState::AtLower ? dj : -dj;
                if (gain < (bland ? -opts_.opt_tol : best)) {
                    enter = j;
                    dir = state_[j] == VarState::AtLower ? +1 : -1;
                    if (bland) break;
                    best = gain;
                }
            }
            if (enter < 0) return Step::Optimal;

            const Eigen::VectorXd d = ftran(cols_[enter]);
            // two-pass ratio test: first the tightest step, then the best
            // pivot among blockers within tolerance of it
            double theta = ub_[enter] < kInf ? ub_[enter] : kInf;  // bound flip step
            auto room_at = [&](int r, bool& at_upper) {
                const double pace = static_cast<double>(dir) * d[r];
                const int bj = basic_[r];
                if (pace > kPivotTol) {
                    at_upper = false;
                    return std::max(0.0, x_[bj]) / pace;
                }
                if (pace < -kPivotTol && ub_[bj] < kInf) {
                    at_upper = true;
                    return std::max(0.0, ub_[bj] - x_[bj]) / -pace;
                }
                return kInf;
            };
            for (int r = 0; r < m_; ++r) {
                bool up;
                theta = std::min(theta, room_at(r, up));
            }
            int leave_pos = -1;
            bool leave_at_upper = false;
            if (theta < kInf) {
                double best_pivot = 0.0;
                for (int r = 0; r < m_; ++r) {
                    bool up;
                    const double room = room_at(r, up);
                    if (room > theta + kPivotTol) continue;
                    const bool better =
                        leave_pos < 0 || (bland ? basic_[r] < basic_[leave_pos]
                                                : std::fabs(d[r]) > best_pivot);
                    if (better) {
                        leave_pos = r;
                        leave_at_upper = up;
                        best_pivot = std::fabs(d[r]);
                    }
                }
            }
            if (theta >= kInf) {
                ray_enter_ = enter;
                ray_dir_ = dir;
                ray_d_ = d;
                return Step::Unbounded;
            }

            // apply the step
            if (theta > 0.0) {
                for (int r = 0; r < m_; ++r) {
                    const double delta = static_cast<double>(dir) * theta * d[r];
                    if (delta != 0.0) x_[basic_[r]] -= delta;
                }
            }
            ++pivots_;
            degenerate_streak = theta <= kDegenTol ? degenerate_streak + 1 : 0;
            if (degenerate_streak > opts_.bland_after) bland = true;

            if (leave_pos < 0) {
                // bound-to-bound flip of the entering variable
                state_[enter] =
                    dir > 0 ? VarState::AtUpper : VarState::AtLower;
                x_[enter] = dir > 0 ? ub_[enter] : 0.0;
                continue;
            }
            const int leave = basic_[leave_pos];
            const double x_enter =
                (state_[enter] == VarState::AtUpper ? ub_[enter] : 0.0) + dir * theta;
            // clamp leaving variable exactly onto its bound
            x_[leave] = leave_at_upper ? ub_[leave] : 0.0;
            pos_of_[leave] = -1;
            state_[leave] = leave_at_upper ? VarState::AtUpper : VarState::AtLower;
            basic_[leave_pos] = enter;
            state_[enter] = VarState::Basic;
            pos_of_[enter] = leave_pos;
            x_[enter] = x_enter;
            Eta eta;
            eta.row = leave_pos;
            eta.diag = d[leave_pos];
            for (int i = 0; i < m_; ++i)
                if (i != leave_pos && std::fabs(d[i]) > kEtaDropTol)
                    eta.off.emplace_back(i, d[i]);
            etas_.push_back(std::move(eta));
        }
    }

    // ---- outcome extraction --------------------------------------------------

    LpOutcome extract_optimal() {
        if (!refactor()) return failure(Step::Singular);
        recompute_basics();
        LpOutcome out;
        out.status = LpOutcome::Status::Optimal;
        out.pivots = pivots_;
        out.x.assign(n_struct_, 0.0);
        for (int j = 0; j < n_struct_; ++j) out.x[j] = x_[j];
        out.objective = 0.0;
        for (int j = 0; j < n_struct_; ++j) out.objective += real_cost_[j] * x_[j];
        Eigen::VectorXd cb(m_);
        for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
        const Eigen::VectorXd y = btran(cb);
        out.duals_ineq.assign(n_ineq_, 0.0);
        out.duals_eq.assign(n_eq_, 0.0);
        for (int r = 0; r < n_ineq_; ++r) out.duals_ineq[r] = y[r];
        for (int r = 0; r < n_eq_; ++r) out.duals_eq[r] = y[n_ineq_ + r];
        out.reduced_costs.assign(n_struct_, 0.0);
        out.bound_duals.assign(n_struct_, 0.0);
        for (int j = 0; j < n_struct_; ++j) {
            double dj = cost_[j];
            for (const auto& [r, v] : cols_[j]) dj -= y[r] * v;
            out.reduced_costs[j] = dj;
            if (state_[j] == VarState::AtUpper) out.bound_duals[j] = std::min(0.0, dj);
        }
        return out;
    }

    LpOutcome extract_farkas() {
        LpOutcome out;
        out.status = LpOutcome::Status::Infeasible;
        out.pivots = pivots_;
        if (!refactor()) return failure(Step::Singular);
        recompute_basics();
        Eigen::VectorXd cb(m_);
        for (int r = 0; r < m_; ++r) cb[r] = cost_[basic_[r]];
        const Eigen::VectorXd yhat = btran(cb);
        out.farkas_ineq.assign(n_ineq_, 0.0);
        out.farkas_eq.assign(n_eq_, 0.0);
        for (int r = 0; r < n_ineq_; ++r) out.farkas_ineq[r] = std::max(0.0, -yhat[r]);
        for (int r = 0; r < n_eq_; ++r) out.farkas_eq[r] = -yhat[n_ineq_ + r];
        out.farkas_bounds.assign(n_struct_, 0.0);
        for (int j = 0; j < n_struct_; ++j) {
            if (ub_[j] >= kInf) continue;
            double aty = 0.0;
            for (const auto& [r, v] : cols_[j])
                aty += v * (r < n_ineq_ ? out.farkas_ineq[r] : out.farkas_eq[r - n_ineq_]);
            if (aty < 0.0) out.farkas_bounds[j] = -aty;
        }
        // verify the certificate rather than trusting the arithmetic
        double combo = 0.0;
        for (int r = 0; r < n_ineq_; ++r) combo += b_[r] * out.farkas_ineq[r];
        for (int r = 0; r < n_eq_; ++r) combo += b_[n_ineq_ + r] * out.farkas_eq[r];
        for (int j = 0; j < n_struct_; ++j)
            if (out.farkas_bounds[j] > 0.0) combo += ub_[j] * out.farkas_bounds[j];
        if (!(combo < -1e-9)) {
            out.status = LpOutcome::Status::NumericalFailure;
            out.message = "infeasible but Farkas certificate failed verification";
        }
        out.message = out.message.empty() ? "infeasible" : out.message;
        return out;
    }

    LpOutcome extract_ray() {
        LpOutcome out;
        out.status = LpOutcome::Status::Unbounded;
        out.pivots = pivots_;
        out.primal_ray.assign(n_struct_, 0.0);
        if (ray_enter_ < n_struct_) out.primal_ray[ray_enter_] = ray_dir_;
        for (int r = 0; r < m_; ++r)
            if (basic_[r] < n_struct_)
                out.primal_ray[basic_[r]] = -static_cast<double>(ray_dir_) * ray_d_[r];
        out.message = "unbounded";
        return out;
    }

    struct Eta {
        int row = 0;
        double diag = 1.0;
        SparseVec off;
    };

    LpOptions opts_;
    int n_struct_, n_ineq_, n_eq_, m_;
    std::vector<SparseVec> cols_;
    std::vector<double> b_, ub_, cost_, real_cost_, x_;
    std::vector<VarState> state_;
    std::vector<int> basic_, pos_of_;
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu_;
    std::vector<Eta> etas_;
    long pivots_ = 0;
    bool phase1_ = false;
    int artificial_from_ = std::numeric_limits<int>::max();
    int ray_enter_ = -1, ray_dir_ = 1;
    Eigen::VectorXd ray_d_;
};

}  // namespace

LpOutcome solve_lp(const LpStandardForm& p, const LpOptions& opts) {
    if (static_cast<int>(p.objective.size()) != p.num_vars)
        throw std::invalid_argument("solve_lp: objective size mismatch");
    if (p.a_ineq.size() != p.b_ineq.size() || p.a_eq.size() != p.b_eq.size())
        throw std::invalid_argument("solve_lp: row/rhs size mismatch");
    SimplexEngine engine(p, opts);
    return engine.run();
}

// ---------------------------------------------------------------------------
// Benders subproblem

SubproblemSolver::SubproblemSolver(const MilpProblem& milp) : milp_(&milp) {
    const int m0 = milp.vars.continuous_count();
    base_.num_vars = m0;
    base_.objective.assign(m0, 0.0);
    for (int j = 0; j < m0; ++j) base_.objective[j] = -milp.objective[j];
    base_.upper.assign(m0, kInf);
    bound_row_of_var_.assign(m0, -1);
    lp_row_of_b1_.assign(milp.d1.size(), -1);

    for (std::size_t r = 0; r < milp.d1.size(); ++r) {
        const auto& row = milp.b1[r];
        if (row.size() == 1 && row[0].second == 1.0 &&
            bound_row_of_var_[row[0].first] < 0) {
            bound_row_of_var_[row[0].first] = static_cast<int>(r);
        } else {
            lp_row_of_b1_[r] = static_cast<int>(base_.a_ineq.size());
            base_.a_ineq.push_back(row);
            base_.b_ineq.push_back(0.0);  // filled per solve
        }
    }
    for (std::size_t r = 0; r < milp.d2.size(); ++r) {
        base_.a_eq.push_back(milp.b2[r]);
        base_.b_eq.push_back(0.0);
    }

    // structural crash basis: slack on every inequality row; the storage
    // chain column on conservation rows; the z column on scaling rows
    basis_hint_.assign(base_.a_ineq.size() + base_.a_eq.size(), -1);
    for (std::size_t r = 0; r < milp.d2.size(); ++r) {
        const RowTag& tag = milp.tags2[r];
        int chosen = -1;
        if (tag.family == RowFamily::Scaling) {
            for (const auto& [j, v] : milp.b2[r])
                if (milp.vars.continuous_key(j).kind == VarKind::Z) chosen = j;
        } else {
            // the -1 entry on o^{t,t+1} of this node/commodity/slot
            for (const auto& [j, v] : milp.b2[r]) {
                const VarKey& k = milp.vars.continuous_key(j);
                if (k.kind == VarKind::O && v == -1.0) chosen = j;
            }
        }
        basis_hint_[base_.a_ineq.size() + r] = chosen;
    }
}

SubproblemOutcome SubproblemSolver::solve(std::span<const double> w,
                                          const LpOptions& opts) const {
    const MilpProblem& p = *milp_;
    if (static_cast<int>(w.size()) != p.vars.binary_count())
        throw std::invalid_argument("solve_subproblem: w dimension mismatch");

    LpStandardForm lp = base_;
    auto gdot = [&](const SparseVec& row) {
        double s = 0.0;
        for (const auto& [j, v] : row) s += v * w[j];
        return s;
    };
    for (std::size_t r = 0; r < p.d1.size(); ++r) {
        const double rhs = p.d1[r] - gdot(p.g1[r]);
        const int lp_row = lp_row_of_b1_[r];
        if (lp_row >= 0)
            lp.b_ineq[lp_row] = rhs;
        else
            lp.upper[p.b1[r][0].first] = std::max(0.0, rhs);
    }
    for (std::size_t r = 0; r < p.d2.size(); ++r) lp.b_eq[r] = p.d2[r] - gdot(p.g2[r]);

    LpOptions o = opts;
    o.basis_hint = basis_hint_;
    const LpOutcome lpout = solve_lp(lp, o);

    SubproblemOutcome out;
    const int star = p.star_rows();
    if (lpout.status == LpOutcome::Status::Optimal) {
        out.kind = SubproblemOutcome::Kind::OptimalityCut;
        out.theta_hat = lpout.objective;
        out.q = lpout.x;
        out.e.assign(star, 0.0);
        for (std::size_t r = 0; r < p.d1.size(); ++r) {
            const int lp_row = lp_row_of_b1_[r];
            out.e[r] = lp_row >= 0 ? lpout.duals_ineq[lp_row]
                                   : lpout.bound_duals[p.b1[r][0].first];
        }
        for (std::size_t r = 0; r < p.d2.size(); ++r)
            out.e[p.d1.size() + r] = lpout.duals_eq[r];
        // strong duality across the assembled row space
        const std::vector<double> rhs = p.star_rhs(w);
        double dual_obj = 0.0;
        for (int r = 0; r < star; ++r) dual_obj += rhs[r] * out.e[r];
        if (std::fabs(dual_obj - out.theta_hat) > 1e-7 * (1.0 + std::fabs(out.theta_hat))) {
            out.kind = SubproblemOutcome::Kind::NumericalFailure;
            std::ostringstream msg;
            msg << "strong duality violated: primal " << out.theta_hat << " vs dual "
                << dual_obj;
            out.message = msg.str();
        }
        return out;
    }
    if (lpout.status == LpOutcome::Status::Infeasible) {
        out.kind = SubproblemOutcome::Kind::FeasibilityCut;
        out.e.assign(star, 0.0);
        // store e1 = -Y so the emitted cut reads (d*-G*w)'e1 <= 0
        for (std::size_t r = 0; r < p.d1.size(); ++r) {
            const int lp_row = lp_row_of_b1_[r];
            out.e[r] = lp_row >= 0 ? -lpout.farkas_ineq[lp_row]
                                   : -lpout.farkas_bounds[p.b1[r][0].first];
        }
        for (std::size_t r = 0; r < p.d2.size(); ++r)
            out.e[p.d1.size() + r] = -lpout.farkas_eq[r];
        return out;
    }
    out.kind = SubproblemOutcome::Kind::NumericalFailure;
    out.message = lpout.message.empty() ? "subproblem solve failed" : lpout.message;
    return out;
}

SubproblemOutcome solve_subproblem(const MilpProblem& milp, std::span<const double> w,
                                   const LpOptions& opts) {
    return SubproblemSolver(milp).solve(w, opts);
}

}  // namespace sinflow
