#include "sinflow/mfteg.hpp"

#include <algorithm>
#include <sstream>

namespace sinflow {

const std::vector<std::pair<int, int>> FunctionCapabilityMap::kEmpty{};

void FunctionCapabilityMap::add(int sat, int fn_index, int function) {
    carried_[{sat, fn_index}] = function;
    by_function_[function].emplace_back(sat, fn_index);
}

bool FunctionCapabilityMap::provides(int sat, int fn_index, int function) const {
    auto it = carried_.find({sat, fn_index});
    return it != carried_.end() && it->second == function;
}

const std::vector<std::pair<int, int>>& FunctionCapabilityMap::nodes_for(int function) const {
    auto it = by_function_.find(function);
    return it == by_function_.end() ? kEmpty : it->second;
}

int MfTeg::node_index(NodeKind kind, int base, int slot, int fn_index) const {
    auto it = node_lookup.find({static_cast<int>(kind), base, slot, fn_index});
    return it == node_lookup.end() ? -1 : it->second;
}

MfTeg build_mfteg(const Scenario& sc) {
    MfTeg g;
    g.horizon = sc.horizon;
    g.flow_count = sc.flow_count();

    auto add_node = [&](NodeKind kind, int base, int slot, int fn_index, int function) {
        g.node_lookup[{static_cast<int>(kind), base, slot, fn_index}] =
            static_cast<int>(g.nodes.size());
        g.nodes.push_back({kind, base, slot, fn_index, function});
    };

    // Nodes in lexicographic (kind, base, slot, function index) order.
    for (int lf = 0; lf < sc.flow_count(); ++lf)
        for (int t = 1; t <= sc.horizon; ++t) add_node(NodeKind::SourceUser, lf, t, -1, 0);
    for (int lf = 0; lf < sc.flow_count(); ++lf)
        for (int t = 1; t <= sc.horizon; ++t) add_node(NodeKind::DestUser, lf, t, -1, 0);
    for (int s = 0; s < sc.satellite_count(); ++s) {
        if (sc.satellites[s].is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t) add_node(NodeKind::NonFunction, s, t, -1, 0);
    }
    for (int s = 0; s < sc.satellite_count(); ++s) {
        if (!sc.satellites[s].is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t) add_node(NodeKind::VirtualSub, s, t, -1, 0);
    }
    for (int s = 0; s < sc.satellite_count(); ++s) {
        const auto& sat = sc.satellites[s];
        if (!sat.is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t)
            for (int nIdx = 0; nIdx < static_cast<int>(sat.offered_functions.size()); ++nIdx) {
                add_node(NodeKind::VirtualFunction, s, t, nIdx, sat.offered_functions[nIdx]);
                if (t == 1) g.capability.add(s, nIdx, sat.offered_functions[nIdx]);
            }
    }

    // The physical-layer stand-in for a satellite: itself when it has no
    // functions, its virtual sub-node otherwise (the sub-node inherits all
    // transmission and storage links of the parent).
    auto sat_phy = [&](int s, int t) {
        return sc.satellites[s].is_function_node ? g.node_index(NodeKind::VirtualSub, s, t)
                                                 : g.node_index(NodeKind::NonFunction, s, t);
    };

    // Transmission links for available pairs, in (slot, class, tail, head) order.
    for (int t = 1; t <= sc.horizon; ++t) {
        for (int lf = 0; lf < sc.flow_count(); ++lf)
            for (int s = 0; s < sc.satellite_count(); ++s) {
                if (!sc.visibility.available(sc.source_node(lf), sc.sat_node(s), t)) continue;
                const double rate =
                    pair_rate_mbit_s(sc, sc.source_node(lf), sc.sat_node(s), t);
                g.links.push_back({LinkKind::Transmission, LinkClass::U2S,
                                   g.node_index(NodeKind::SourceUser, lf, t), sat_phy(s, t), t,
                                   link_capacity_mbit(rate, sc.slot_duration_s), true, lf, s,
                                   -1});
            }
        for (int si = 0; si < sc.satellite_count(); ++si)
            for (int sj = 0; sj < sc.satellite_count(); ++sj) {
                if (si == sj) continue;
                if (!sc.visibility.available(sc.sat_node(si), sc.sat_node(sj), t)) continue;
                const double rate = pair_rate_mbit_s(sc, sc.sat_node(si), sc.sat_node(sj), t);
                g.links.push_back({LinkKind::Transmission, LinkClass::S2S, sat_phy(si, t),
                                   sat_phy(sj, t), t,
                                   link_capacity_mbit(rate, sc.slot_duration_s), true, -1, si,
                                   -1});
            }
        for (int s = 0; s < sc.satellite_count(); ++s)
            for (int lf = 0; lf < sc.flow_count(); ++lf) {
                if (!sc.visibility.available(sc.sat_node(s), sc.dest_node(lf), t)) continue;
                const double rate = pair_rate_mbit_s(sc, sc.sat_node(s), sc.dest_node(lf), t);
                g.links.push_back({LinkKind::Transmission, LinkClass::S2U, sat_phy(s, t),
                                   g.node_index(NodeKind::DestUser, lf, t), t,
                                   link_capacity_mbit(rate, sc.slot_duration_s), true, lf, s,
                                   -1});
            }
    }

    // Virtual links between each sub-node and its function nodes, per slot.
    for (int s = 0; s < sc.satellite_count(); ++s) {
        const auto& sat = sc.satellites[s];
        if (!sat.is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t) {
            const int sub = g.node_index(NodeKind::VirtualSub, s, t);
            for (int nIdx = 0; nIdx < static_cast<int>(sat.offered_functions.size()); ++nIdx) {
                const int vfn = g.node_index(NodeKind::VirtualFunction, s, t, nIdx);
                g.links.push_back({LinkKind::VirtualIn, LinkClass::Virtual, sub, vfn, t,
                                   sc.virtual_link_capacity_mbit, true, -1, s, nIdx});
            }
        }
    }
    for (int s = 0; s < sc.satellite_count(); ++s) {
        const auto& sat = sc.satellites[s];
        if (!sat.is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t) {
            const int sub = g.node_index(NodeKind::VirtualSub, s, t);
            for (int nIdx = 0; nIdx < static_cast<int>(sat.offered_functions.size()); ++nIdx) {
                const int vfn = g.node_index(NodeKind::VirtualFunction, s, t, nIdx);
                g.links.push_back({LinkKind::VirtualOut, LinkClass::Virtual, vfn, sub, t,
                                   sc.virtual_link_capacity_mbit, true, -1, s, nIdx});
            }
        }
    }

    // Storage links between consecutive layers for satellites only.
    for (int s = 0; s < sc.satellite_count(); ++s)
        for (int t = 1; t < sc.horizon; ++t)
            g.links.push_back({LinkKind::Storage, LinkClass::Store, sat_phy(s, t),
                               sat_phy(s, t + 1), t, sc.satellites[s].storage_capacity_mbit,
                               true, -1, s, -1});

    return g;
}

std::vector<VirtualFlowId> admissible_flows(const MfTeg& g, const Scenario& sc,
                                            const MfTegLink& link, int flow,
                                            const LambdaAssignment& placement) {
    const auto& spec = sc.flows.at(flow);
    const int chain = spec.chain_length();
    std::vector<VirtualFlowId> out;
    switch (link.kind) {
        case LinkKind::Transmission:
            if (link.cls == LinkClass::U2S) {
                if (link.flow == flow) out.push_back({flow, 0});
            } else if (link.cls == LinkClass::S2U) {
                if (link.flow == flow) out.push_back({flow, chain});
            } else {
                for (int k = 0; k <= chain; ++k) out.push_back({flow, k});
            }
            return out;
        case LinkKind::Storage:
            for (int k = 0; k <= chain; ++k) out.push_back({flow, k});
            return out;
        case LinkKind::VirtualIn:
        case LinkKind::VirtualOut:
            for (int k = 1; k <= chain; ++k) {
                auto it = placement.find({flow, k});
                if (it == placement.end())
                    throw std::invalid_argument("no virtual function node assigned to flow " +
                                                std::to_string(flow + 1) + " step " +
                                                std::to_string(k));
                if (it->second == std::make_pair(link.sat, link.fn_index))
                    out.push_back({flow, link.kind == LinkKind::VirtualIn ? k - 1 : k});
            }
            return out;
    }
    return out;
}

std::string export_mfteg(const MfTeg& g, const Scenario& sc) {
    static const char* node_names[] = {"source_user", "dest_user", "non_function",
                                       "virtual_sub", "virtual_function"};
    static const char* link_names[] = {"transmission", "virtual_in", "virtual_out", "storage"};
    std::ostringstream out;
    out << "# mfteg v1 nodes=" << g.nodes.size() << " links=" << g.links.size() << "\n";
    for (const auto& nd : g.nodes) {
        out << "node\t" << node_names[static_cast<int>(nd.kind)] << "\t";
        if (nd.kind == NodeKind::SourceUser)
            out << sc.flows[nd.base].source_user;
        else if (nd.kind == NodeKind::DestUser)
            out << sc.flows[nd.base].dest_user;
        else
            out << sc.satellites[nd.base].id;
        if (nd.kind == NodeKind::VirtualFunction) out << ":f" << nd.function;
        out << "\t" << nd.slot << "\n";
    }
    for (const auto& lk : g.links) {
        out << "link\t" << link_names[static_cast<int>(lk.kind)] << "\t" << lk.tail << "\t"
            << lk.head << "\t" << lk.slot << "\t" << lk.capacity_mbit << "\t"
            << (lk.available ? 1 : 0) << "\n";
    }
    return out.str();
}

}  // namespace sinflow
