#pragma once

#include <cmath>
#include <map>
#include <span>
#include <string>
#include <vector>

#include "sinflow/milp.hpp"

namespace sinflow {

/// Binary expansion of the master objective variable: positive weights
/// 2^{-frac}..2^{pos}, then `neg` negated weights 2^0..2^{neg-1}.
struct ThetaEncoding {
    int frac_bits = 1;
    int pos_bits = 9;
    int neg_bits = 9;
    double lo = 0.0, hi = 0.0;

    int total_bits() const { return 1 + frac_bits + pos_bits + neg_bits; }
    double resolution() const { return std::ldexp(1.0, -frac_bits); }
    double min_value() const { return -(std::ldexp(1.0, neg_bits) - 1.0); }
    double max_value() const { return std::ldexp(2.0, pos_bits) - resolution(); }
    double weight(int i) const {
        return i <= frac_bits + pos_bits ? std::ldexp(1.0, i - frac_bits)
                                         : -std::ldexp(1.0, i - frac_bits - pos_bits - 1);
    }
    double decode(std::span<const std::uint8_t> v) const {
        double s = 0.0;
        for (int i = 0; i < total_bits(); ++i)
            if (v[i]) s += weight(i);
        return s;
    }
};

/// Allocate `bits` so [lo, hi] is representable; leftover bits refine the
/// resolution (capped), then extend the positive range.
ThetaEncoding encode_theta(double lo, double hi, int bits);

struct PenaltyConfig {
    double eta1 = 0.0;  // binary-only rows; 0 = auto (2 * theta range width)
    double eta2 = 0.0;  // feasibility cuts
    double eta3 = 0.0;  // optimality cuts
};

/// weight * (terms . x - rhs)^2; terms include the slack ladder.
struct PenaltyGroup {
    double weight = 1.0;
    double rhs = 0.0;
    SparseVec terms;
    int slack_offset = -1;
    int slack_count = 0;
    bool fractional = false;  // real-coefficient row: half-weight final slack bit
    double tol = 1e-6;        // violation below this counts as satisfied
    std::string tag;

    /// Violation of the underlying inequality, ignoring slack bits.
    double violation(std::span<const std::uint8_t> bits) const;
    double residual(std::span<const std::uint8_t> bits) const;
};

struct BitLayout {
    int w_count = 0;
    int theta_offset = -1;
    ThetaEncoding theta;
};

struct IsingModel {
    int num_spins = 0;
    std::vector<double> h;
    std::map<std::pair<int, int>, double> j;
    double offset = 0.0;
    double energy(std::span<const std::int8_t> s) const;
};

/// Quadratic form over bits: explicit linear/pairwise terms plus
/// squared-penalty groups kept in factored form. The expanded
/// upper-triangular view is available on demand.
class QuboModel {
  public:
    explicit QuboModel(int bits = 0) : bits_(bits), linear_(bits, 0.0) {}

    int add_bits(int count) {
        const int first = bits_;
        bits_ += count;
        linear_.resize(bits_, 0.0);
        return first;
    }
    void add_linear(int i, double v) { linear_.at(i) += v; }
    void add_quadratic(int i, int j, double v);
    void add_offset(double v) { offset_ += v; }
    void add_penalty(PenaltyGroup group) { groups_.push_back(std::move(group)); }
    void penalty_tolerance(int group, double tol) { groups_.at(group).tol = tol; }

    int num_bits() const { return bits_; }
    double constant_offset() const { return offset_; }
    const std::vector<double>& linear() const { return linear_; }
    const std::map<std::pair<int, int>, double>& quadratic() const { return quad_; }
    const std::vector<PenaltyGroup>& penalties() const { return groups_; }

    double energy(std::span<const std::uint8_t> bits) const;
    /// (coefficient map with i <= j, constant offset); penalty groups
    /// multiplied out. Throws when the expansion would exceed max_terms.
    std::pair<std::map<std::pair<int, int>, double>, double> upper_triangular(
        std::size_t max_terms = 50'000'000) const;

    BitLayout layout;

  private:
    int bits_ = 0;
    double offset_ = 0.0;
    std::vector<double> linear_;
    std::map<std::pair<int, int>, double> quad_;
    std::vector<PenaltyGroup> groups_;
};

/// Penalize row . x <= rhs with weight eta; returns the group index.
/// Slack bits are appended to the model; their count comes from the
/// interval-arithmetic maximum of rhs - row . x over the binary box.
/// Throws if the row is unsatisfiable.
int add_inequality_penalty(QuboModel& model, SparseVec row, double rhs, double eta,
                           bool integer_row, std::string tag);

/// One Benders cut in the paper's orientation:
///   optimality:  rhs_term - w_coeffs . w <= theta
///   feasibility: rhs_term - w_coeffs . w <= 0
struct CutData {
    bool optimality = false;
    double rhs_term = 0.0;
    SparseVec w_coeffs;
    int origin_iter = 0;

    double value_at(std::span<const double> w) const {
        double s = rhs_term;
        for (const auto& [j, v] : w_coeffs) s -= v * w[j];
        return s;
    }
    double value_at_bits(std::span<const std::uint8_t> w) const {
        double s = rhs_term;
        for (const auto& [j, v] : w_coeffs)
            if (w[j]) s -= v;
        return s;
    }
};

struct MasterProblem {
    const MilpProblem* milp = nullptr;
    const std::vector<CutData>* feasibility_cuts = nullptr;
    const std::vector<CutData>* optimality_cuts = nullptr;
    double theta_lo = -1.0;
    double theta_hi = 0.0;
};

QuboModel build_master_qubo(const MasterProblem& master, const PenaltyConfig& cfg,
                            const ThetaEncoding& enc);

struct DecodedSample {
    std::vector<std::uint8_t> w;
    double theta = 0.0;
    double penalty_residual = 0.0;  // energy carried by the penalty terms
    bool master_feasible = false;   // every group satisfied ignoring slack choice
    std::vector<double> violations;
};

DecodedSample decode(const QuboModel& model, std::span<const std::uint8_t> bits);

IsingModel to_ising(const QuboModel& model);
QuboModel from_ising(const IsingModel& ising);

/// Coordinate text format: header with offset/layout, then "i j value".
std::string export_qubo(const QuboModel& model);
QuboModel parse_qubo(const std::string& text);

}  // namespace sinflow
