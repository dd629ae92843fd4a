#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "sinflow/mfteg.hpp"

namespace sinflow {

enum class VarKind { X, Y, Z, O, PhiU2S, PhiS2U, Lambda };

/// Identity of one decision variable. Continuous block order is
/// [x | y | z | o], binary block order [phi_u2s | phi_s2u | lambda];
/// within a block keys sort lexicographically by (flow, stage, slot, nodes).
struct VarKey {
    VarKind kind;
    int flow = -1;   // l, 0-based
    int stage = -1;  // virtual-flow stage for x/y/z/o; SFC step k (1-based) for lambda
    int slot = 0;    // t (1-based); 0 for lambda
    int a = -1;      // x: tail canonical node; y/z/o: satellite; phi: satellite; lambda: satellite
    int b = -1;      // x: head canonical node; y/z/lambda: offered-function index

    friend auto operator<=>(const VarKey&, const VarKey&) = default;
};

std::string describe_var(const VarKey& key, const Scenario& sc);

class VariableIndex {
  public:
    void build(std::vector<VarKey> continuous, std::vector<VarKey> binary);
    int continuous_count() const { return m0_; }
    int binary_count() const { return n0_; }
    const VarKey& continuous_key(int col) const { return keys_[col]; }
    const VarKey& binary_key(int wcol) const { return keys_[m0_ + wcol]; }
    /// Column within the continuous block, or -1.
    int continuous_column(const VarKey& key) const;
    /// Column within the binary block, or -1.
    int binary_column(const VarKey& key) const;

  private:
    std::vector<VarKey> keys_;
    std::map<VarKey, int> lookup_;
    int m0_ = 0, n0_ = 0;
};

enum class RowFamily {
    U2SCapacity,
    S2UCapacity,
    S2SCapacity,
    VirtualInCapacity,
    VirtualOutCapacity,
    Computation,
    Storage,
    ConservationNonFunction,
    ConservationSubNode,
    Scaling,
    AssocSourceCard,
    AssocDestCard,
    SourceCapLimit,
    DestCapLimit,
    PlacementCard,
    AvailabilityLimit,
    CapabilityLimit,
    BaselineFix,
};

const char* family_name(RowFamily family);

struct RowTag {
    RowFamily family;
    std::string detail;
};

/// Abstract block form: minimize -c'q subject to
///   B1 q + G1 w <= d1,  B2 q + G2 w = d2,  G3 w <= d3,  q >= 0, w binary.
/// Binary-only equalities are stored as <=-pairs inside (G3, d3); the
/// availability (phi <= K) and capability (lambda <= H) families are empty
/// because columns exist only where K = 1 / H = 1.
struct MilpProblem {
    VariableIndex vars;

    std::vector<SparseVec> b1, g1;
    std::vector<double> d1;
    std::vector<RowTag> tags1;

    std::vector<SparseVec> b2, g2;
    std::vector<double> d2;
    std::vector<RowTag> tags2;

    std::vector<SparseVec> g3;
    std::vector<double> d3;
    std::vector<RowTag> tags3;

    std::vector<double> objective;  // c over continuous columns (maximize c'q)

    int star_rows() const { return static_cast<int>(d1.size() + d2.size()); }
    int family_rows(RowFamily family) const;
    /// d* - G* w for the stacked inequality+equality blocks.
    std::vector<double> star_rhs(std::span<const double> w) const;
    double objective_value(std::span<const double> q) const;
};

MilpProblem assemble(const MfTeg& graph, const Scenario& sc);

struct Violation {
    char block;  // '1', '2', '3'
    int row;
    double residual;
    RowTag tag;
};

struct Evaluation {
    bool feasible = false;
    double objective = 0.0;  // c'q, Mbit
    std::vector<Violation> violations;
};

Evaluation evaluate(const MilpProblem& milp, std::span<const double> q,
                    std::span<const double> w, double tol = 1e-6);
Evaluation evaluate_binary(const MilpProblem& milp, std::span<const double> w,
                           double tol = 1e-6);

enum class BaselineScheme { LVNF, FVNF, HU };

/// Restrict the feasible set to one of the comparison schemes.
MilpProblem restrict_baseline(const MilpProblem& milp, BaselineScheme scheme,
                              const Scenario& sc);

struct FlowEntry {
    VarKey key;
    double value;
    std::string label;
};

struct SolutionReport {
    double objective_mbit = 0.0;
    std::vector<double> delivered_per_flow;
    std::vector<std::vector<int>> source_assoc;               // [flow][t-1] = satellite or -1
    std::vector<std::vector<int>> dest_assoc;                 // [flow][t-1]
    std::vector<std::vector<std::pair<int, int>>> placement;  // [flow][k-1] = (sat, fn index)
    std::vector<FlowEntry> link_flows;                        // nonzero routing with provenance
};

SolutionReport decode_solution(const MilpProblem& milp, const Scenario& sc,
                               std::span<const double> q, std::span<const double> w);

/// Sum over flows of the tighter of the U2S and S2U per-slot cut capacities;
/// every feasible objective is below this.
double objective_upper_bound(const MilpProblem& milp, const Scenario& sc);

/// Row/col/value triplet dump of all three blocks with provenance comments.
std::string export_milp(const MilpProblem& milp);

}  // namespace sinflow
