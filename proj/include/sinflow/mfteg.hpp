#pragma once

#include <map>
#include <string>
#include <vector>

#include "sinflow/scenario.hpp"

namespace sinflow {

enum class NodeKind { SourceUser, DestUser, NonFunction, VirtualSub, VirtualFunction };
enum class LinkKind { Transmission, VirtualIn, VirtualOut, Storage };
enum class LinkClass { U2S, S2S, S2U, Virtual, Store };

struct MfTegNode {
    NodeKind kind;
    int base;      // flow index for users, satellite index otherwise
    int slot;      // 1-based
    int fn_index;  // n for VirtualFunction (0-based into offered list), else -1
    int function;  // carried function id for VirtualFunction, else 0
};

struct MfTegLink {
    LinkKind kind;
    LinkClass cls;
    int tail;  // node index
    int head;  // node index
    int slot;
    double capacity_mbit;
    bool available;
    int flow;      // owning flow for U2S/S2U links, else -1
    int sat;       // satellite index for Virtual*/Storage links, else tail/head specific
    int fn_index;  // offered-function index for Virtual* links, else -1
};

/// A virtual flow: the part of flow `flow` that has completed exactly
/// `stage` functions of its SFC (stage 0 = unprocessed).
struct VirtualFlowId {
    int flow;
    int stage;
    friend bool operator==(const VirtualFlowId&, const VirtualFlowId&) = default;
    friend auto operator<=>(const VirtualFlowId&, const VirtualFlowId&) = default;
};

/// H map: which virtual function node carries which catalog function.
class FunctionCapabilityMap {
  public:
    void add(int sat, int fn_index, int function);
    bool provides(int sat, int fn_index, int function) const;
    /// (sat, fn_index) pairs carrying `function`, in canonical order.
    const std::vector<std::pair<int, int>>& nodes_for(int function) const;

  private:
    std::map<std::pair<int, int>, int> carried_;
    std::map<int, std::vector<std::pair<int, int>>> by_function_;
    static const std::vector<std::pair<int, int>> kEmpty;
};

struct MfTeg {
    int horizon = 0;
    int flow_count = 0;
    std::vector<MfTegNode> nodes;
    std::vector<MfTegLink> links;
    FunctionCapabilityMap capability;
    std::map<std::tuple<int, int, int, int>, int> node_lookup;  // (kind, base, slot, fn) -> idx

    int node_index(NodeKind kind, int base, int slot, int fn_index = -1) const;
};

/// Maps each SFC step (flow, k) to the chosen virtual function node (sat, n).
using LambdaAssignment = std::map<std::pair<int, int>, std::pair<int, int>>;

MfTeg build_mfteg(const Scenario& sc);

/// Stages of `flow` admitted on `link` under the given placement.
std::vector<VirtualFlowId> admissible_flows(const MfTeg& graph, const Scenario& sc,
                                            const MfTegLink& link, int flow,
                                            const LambdaAssignment& placement);

/// One node or link per line: kind, identity, slot, capacity.
std::string export_mfteg(const MfTeg& graph, const Scenario& sc);

}  // namespace sinflow
