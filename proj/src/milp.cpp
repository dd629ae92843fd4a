#include "sinflow/milp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sinflow {

namespace {

std::string node_name(const Scenario& sc, int canonical) {
    return sc.visibility.nodes.at(canonical);
}

double dot_block(const SparseVec& row, std::span<const double> v) {
    double s = 0.0;
    for (const auto& [j, c] : row) s += c * v[j];
    return s;
}

}  // namespace

std::string describe_var(const VarKey& key, const Scenario& sc) {
    std::ostringstream out;
    switch (key.kind) {
        case VarKind::X:
            out << "x[l=" << key.flow + 1 << ",xi=" << key.stage << ",t=" << key.slot << ","
                << node_name(sc, key.a) << "->" << node_name(sc, key.b) << "]";
            break;
        case VarKind::Y:
            out << "y[l=" << key.flow + 1 << ",xi=" << key.stage << ",t=" << key.slot << ","
                << sc.satellites[key.a].id << ":f"
                << sc.satellites[key.a].offered_functions[key.b] << "]";
            break;
        case VarKind::Z:
            out << "z[l=" << key.flow + 1 << ",xi=" << key.stage << ",t=" << key.slot << ","
                << sc.satellites[key.a].id << ":f"
                << sc.satellites[key.a].offered_functions[key.b] << "]";
            break;
        case VarKind::O:
            out << "o[l=" << key.flow + 1 << ",xi=" << key.stage << ",t=" << key.slot << ".."
                << key.slot + 1 << "," << sc.satellites[key.a].id << "]";
            break;
        case VarKind::PhiU2S:
            out << "phi_u2s[l=" << key.flow + 1 << ",t=" << key.slot << ","
                << sc.satellites[key.a].id << "]";
            break;
        case VarKind::PhiS2U:
            out << "phi_s2u[l=" << key.flow + 1 << ",t=" << key.slot << ","
                << sc.satellites[key.a].id << "]";
            break;
        case VarKind::Lambda:
            out << "lambda[l=" << key.flow + 1 << ",k=" << key.stage << ","
                << sc.satellites[key.a].id << ":f"
                << sc.satellites[key.a].offered_functions[key.b] << "]";
            break;
    }
    return out.str();
}

void VariableIndex::build(std::vector<VarKey> continuous, std::vector<VarKey> binary) {
    m0_ = static_cast<int>(continuous.size());
    n0_ = static_cast<int>(binary.size());
    keys_ = std::move(continuous);
    keys_.insert(keys_.end(), binary.begin(), binary.end());
    lookup_.clear();
    for (int i = 0; i < static_cast<int>(keys_.size()); ++i) lookup_[keys_[i]] = i;
}

int VariableIndex::continuous_column(const VarKey& key) const {
    auto it = lookup_.find(key);
    return it == lookup_.end() || it->second >= m0_ ? -1 : it->second;
}

int VariableIndex::binary_column(const VarKey& key) const {
    auto it = lookup_.find(key);
    return it == lookup_.end() || it->second < m0_ ? -1 : it->second - m0_;
}

const char* family_name(RowFamily family) {
    switch (family) {
        case RowFamily::U2SCapacity: return "u2s_capacity";
        case RowFamily::S2UCapacity: return "s2u_capacity";
        case RowFamily::S2SCapacity: return "s2s_capacity";
        case RowFamily::VirtualInCapacity: return "virtual_in_capacity";
        case RowFamily::VirtualOutCapacity: return "virtual_out_capacity";
        case RowFamily::Computation: return "computation";
        case RowFamily::Storage: return "storage";
        case RowFamily::ConservationNonFunction: return "conservation_non_function";
        case RowFamily::ConservationSubNode: return "conservation_sub_node";
        case RowFamily::Scaling: return "scaling";
        case RowFamily::AssocSourceCard: return "source_association_cardinality";
        case RowFamily::AssocDestCard: return "dest_association_cardinality";
        case RowFamily::SourceCapLimit: return "source_user_cap";
        case RowFamily::DestCapLimit: return "dest_user_cap";
        case RowFamily::PlacementCard: return "placement_cardinality";
        case RowFamily::AvailabilityLimit: return "availability_limit";
        case RowFamily::CapabilityLimit: return "capability_limit";
        case RowFamily::BaselineFix: return "baseline_fix";
    }
    return "?";
}

int MilpProblem::family_rows(RowFamily family) const {
    int n = 0;
    for (const auto& t : tags1) n += t.family == family;
    for (const auto& t : tags2) n += t.family == family;
    for (const auto& t : tags3) n += t.family == family;
    return n;
}

std::vector<double> MilpProblem::star_rhs(std::span<const double> w) const {
    std::vector<double> rhs;
    rhs.reserve(d1.size() + d2.size());
    for (std::size_t r = 0; r < d1.size(); ++r) rhs.push_back(d1[r] - dot_block(g1[r], w));
    for (std::size_t r = 0; r < d2.size(); ++r) rhs.push_back(d2[r] - dot_block(g2[r], w));
    return rhs;
}

double MilpProblem::objective_value(std::span<const double> q) const {
    double s = 0.0;
    for (int j = 0; j < vars.continuous_count(); ++j)
        if (objective[j] != 0.0) s += objective[j] * q[j];
    return s;
}

// ---------------------------------------------------------------------------
// Assembly

MilpProblem assemble(const MfTeg& g, const Scenario& sc) {
    MilpProblem p;
    const int num_flows = sc.flow_count();
    const double vl_cap = sc.virtual_link_capacity_mbit;

    std::vector<VarKey> xs, ys, zs, os, phi_u, phi_s, lams;
    // capacities keyed the same way the variables are
    std::map<std::tuple<int, int, int>, double> cap_u2s, cap_s2u;         // (flow, sat, t)
    std::map<std::tuple<int, int, int>, double> cap_s2s;                  // (si, sj, t)

    for (const auto& lk : g.links) {
        if (lk.kind != LinkKind::Transmission) continue;
        const int t = lk.slot;
        if (lk.cls == LinkClass::U2S) {
            const int lf = lk.flow, s = lk.sat;
            xs.push_back({VarKind::X, lf, 0, t, sc.source_node(lf), sc.sat_node(s)});
            phi_u.push_back({VarKind::PhiU2S, lf, -1, t, s, -1});
            cap_u2s[{lf, s, t}] = lk.capacity_mbit;
        } else if (lk.cls == LinkClass::S2U) {
            const int lf = lk.flow, s = lk.sat;
            const int chain = sc.flows[lf].chain_length();
            xs.push_back({VarKind::X, lf, chain, t, sc.sat_node(s), sc.dest_node(lf)});
            phi_s.push_back({VarKind::PhiS2U, lf, -1, t, s, -1});
            cap_s2u[{lf, s, t}] = lk.capacity_mbit;
        } else {
            const int si = lk.sat, sj = g.nodes[lk.head].base;
            cap_s2s[{si, sj, t}] = lk.capacity_mbit;
            for (int lf = 0; lf < num_flows; ++lf)
                for (int k = 0; k <= sc.flows[lf].chain_length(); ++k)
                    xs.push_back({VarKind::X, lf, k, t, sc.sat_node(si), sc.sat_node(sj)});
        }
    }

    // y/z exist where the virtual function node carries the step's function
    for (int s = 0; s < sc.satellite_count(); ++s) {
        const auto& sat = sc.satellites[s];
        for (int n = 0; n < static_cast<int>(sat.offered_functions.size()); ++n) {
            const int f = sat.offered_functions[n];
            for (int lf = 0; lf < num_flows; ++lf) {
                const auto& sfc = sc.flows[lf].sfc;
                for (int k = 1; k <= static_cast<int>(sfc.size()); ++k) {
                    if (sfc[k - 1] != f) continue;
                    lams.push_back({VarKind::Lambda, lf, k, 0, s, n});
                    for (int t = 1; t <= sc.horizon; ++t) {
                        ys.push_back({VarKind::Y, lf, k - 1, t, s, n});
                        zs.push_back({VarKind::Z, lf, k, t, s, n});
                    }
                }
            }
        }
    }

    // storage, including the carry-out past the horizon at t = T
    for (int s = 0; s < sc.satellite_count(); ++s)
        for (int t = 1; t <= sc.horizon; ++t)
            for (int lf = 0; lf < num_flows; ++lf)
                for (int k = 0; k <= sc.flows[lf].chain_length(); ++k)
                    os.push_back({VarKind::O, lf, k, t, s, -1});

    auto sorted = [](std::vector<VarKey> v) {
        std::sort(v.begin(), v.end());
        return v;
    };
    std::vector<VarKey> continuous = sorted(std::move(xs));
    for (auto block : {&ys, &zs, &os}) {
        auto s = sorted(std::move(*block));
        continuous.insert(continuous.end(), s.begin(), s.end());
    }
    std::vector<VarKey> binary = sorted(std::move(phi_u));
    for (auto block : {&phi_s, &lams}) {
        auto s = sorted(std::move(*block));
        binary.insert(binary.end(), s.begin(), s.end());
    }
    p.vars.build(std::move(continuous), std::move(binary));
    const int m0 = p.vars.continuous_count();
    p.objective.assign(m0, 0.0);

    auto qcol = [&](const VarKey& k) {
        const int c = p.vars.continuous_column(k);
        if (c < 0) throw std::logic_error("missing continuous column");
        return c;
    };
    auto wcol = [&](const VarKey& k) {
        const int c = p.vars.binary_column(k);
        if (c < 0) throw std::logic_error("missing binary column");
        return c;
    };
    auto tag = [](RowFamily f, std::string detail) { return RowTag{f, std::move(detail)}; };

    auto add1 = [&](SparseVec bq, SparseVec gw, double d, RowTag t) {
        p.b1.push_back(std::move(bq));
        p.g1.push_back(std::move(gw));
        p.d1.push_back(d);
        p.tags1.push_back(std::move(t));
    };
    auto add2 = [&](SparseVec bq, double d, RowTag t) {
        p.b2.push_back(std::move(bq));
        p.g2.emplace_back();
        p.d2.push_back(d);
        p.tags2.push_back(std::move(t));
    };
    auto add3 = [&](SparseVec gw, double d, RowTag t) {
        p.g3.push_back(std::move(gw));
        p.d3.push_back(d);
        p.tags3.push_back(std::move(t));
    };

    // --- (B1, G1, d1): one row per U2S/S2U variable; count = |cap_u2s| + |cap_s2u|
    for (const auto& [key, cap] : cap_u2s) {
        const auto [lf, s, t] = key;
        add1({{qcol({VarKind::X, lf, 0, t, sc.source_node(lf), sc.sat_node(s)}), 1.0}},
             {{wcol({VarKind::PhiU2S, lf, -1, t, s, -1}), -cap}}, 0.0,
             tag(RowFamily::U2SCapacity, "l=" + std::to_string(lf + 1) + " sat=" +
                                             sc.satellites[s].id + " t=" + std::to_string(t)));
    }
    for (const auto& [key, cap] : cap_s2u) {
        const auto [lf, s, t] = key;
        const int chain = sc.flows[lf].chain_length();
        add1({{qcol({VarKind::X, lf, chain, t, sc.sat_node(s), sc.dest_node(lf)}), 1.0}},
             {{wcol({VarKind::PhiS2U, lf, -1, t, s, -1}), -cap}}, 0.0,
             tag(RowFamily::S2UCapacity, "l=" + std::to_string(lf + 1) + " sat=" +
                                             sc.satellites[s].id + " t=" + std::to_string(t)));
    }
    // one row per available ordered satellite pair per slot
    for (const auto& [key, cap] : cap_s2s) {
        const auto [si, sj, t] = key;
        SparseVec row;
        for (int lf = 0; lf < num_flows; ++lf)
            for (int k = 0; k <= sc.flows[lf].chain_length(); ++k)
                row.emplace_back(qcol({VarKind::X, lf, k, t, sc.sat_node(si), sc.sat_node(sj)}),
                                 1.0);
        std::sort(row.begin(), row.end());
        add1(std::move(row), {}, cap,
             tag(RowFamily::S2SCapacity, sc.satellites[si].id + "->" + sc.satellites[sj].id +
                                             " t=" + std::to_string(t)));
    }
    // one row per y / z variable
    for (int j = 0; j < m0; ++j) {
        const VarKey& k = p.vars.continuous_key(j);
        if (k.kind == VarKind::Y) {
            add1({{j, 1.0}}, {{wcol({VarKind::Lambda, k.flow, k.stage + 1, 0, k.a, k.b}),
                               -vl_cap}},
                 0.0,
                 tag(RowFamily::VirtualInCapacity,
                     "l=" + std::to_string(k.flow + 1) + " k=" + std::to_string(k.stage + 1) +
                         " sat=" + sc.satellites[k.a].id + " t=" + std::to_string(k.slot)));
        } else if (k.kind == VarKind::Z) {
            add1({{j, 1.0}},
                 {{wcol({VarKind::Lambda, k.flow, k.stage, 0, k.a, k.b}), -vl_cap}}, 0.0,
                 tag(RowFamily::VirtualOutCapacity,
                     "l=" + std::to_string(k.flow + 1) + " k=" + std::to_string(k.stage) +
                         " sat=" + sc.satellites[k.a].id + " t=" + std::to_string(k.slot)));
        }
    }
    // computation: one row per function node per slot
    for (int s = 0; s < sc.satellite_count(); ++s) {
        if (!sc.satellites[s].is_function_node) continue;
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int j = 0; j < m0; ++j) {
                const VarKey& k = p.vars.continuous_key(j);
                if (k.kind == VarKind::Y && k.a == s && k.slot == t)
                    row.emplace_back(j, sc.flows[k.flow].compute_factors[k.stage]);
            }
            std::sort(row.begin(), row.end());
            add1(std::move(row), {},
                 sc.satellites[s].compute_capacity_mbit_s * sc.slot_duration_s,
                 tag(RowFamily::Computation,
                     "sat=" + sc.satellites[s].id + " t=" + std::to_string(t)));
        }
    }
    // storage: one row per satellite per slot (t = T bounds the carry-out)
    for (int s = 0; s < sc.satellite_count(); ++s) {
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int lf = 0; lf < num_flows; ++lf)
                for (int k = 0; k <= sc.flows[lf].chain_length(); ++k)
                    row.emplace_back(qcol({VarKind::O, lf, k, t, s, -1}), 1.0);
            std::sort(row.begin(), row.end());
            add1(std::move(row), {}, sc.satellites[s].storage_capacity_mbit,
                 tag(RowFamily::Storage,
                     "sat=" + sc.satellites[s].id + " t=" + std::to_string(t)));
        }
    }

    // --- (B2, G2, d2): conservation per satellite-layer node per virtual flow,
    // then one scaling row per y/z pair.
    for (int s = 0; s < sc.satellite_count(); ++s) {
        const bool fn = sc.satellites[s].is_function_node;
        for (int t = 1; t <= sc.horizon; ++t) {
            for (int lf = 0; lf < num_flows; ++lf) {
                for (int k = 0; k <= sc.flows[lf].chain_length(); ++k) {
                    SparseVec row;
                    // transmission in/out
                    for (const auto& [key, cap] : cap_s2s) {
                        const auto [si, sj, tt] = key;
                        if (tt != t) continue;
                        if (sj == s)
                            row.emplace_back(
                                qcol({VarKind::X, lf, k, t, sc.sat_node(si), sc.sat_node(sj)}),
                                1.0);
                        if (si == s)
                            row.emplace_back(
                                qcol({VarKind::X, lf, k, t, sc.sat_node(si), sc.sat_node(sj)}),
                                -1.0);
                    }
                    if (k == 0 && cap_u2s.count({lf, s, t}))
                        row.emplace_back(
                            qcol({VarKind::X, lf, 0, t, sc.source_node(lf), sc.sat_node(s)}),
                            1.0);
                    if (k == sc.flows[lf].chain_length() && cap_s2u.count({lf, s, t}))
                        row.emplace_back(
                            qcol({VarKind::X, lf, k, t, sc.sat_node(s), sc.dest_node(lf)}),
                            -1.0);
                    // storage in/out
                    if (t > 1) row.emplace_back(qcol({VarKind::O, lf, k, t - 1, s, -1}), 1.0);
                    row.emplace_back(qcol({VarKind::O, lf, k, t, s, -1}), -1.0);
                    // virtual links at sub-nodes
                    if (fn) {
                        const auto& offered = sc.satellites[s].offered_functions;
                        for (int n = 0; n < static_cast<int>(offered.size()); ++n) {
                            if (k >= 1 && sc.flows[lf].sfc[k - 1] == offered[n])
                                row.emplace_back(qcol({VarKind::Z, lf, k, t, s, n}), 1.0);
                            if (k < sc.flows[lf].chain_length() &&
                                sc.flows[lf].sfc[k] == offered[n])
                                row.emplace_back(qcol({VarKind::Y, lf, k, t, s, n}), -1.0);
                        }
                    }
                    std::sort(row.begin(), row.end());
                    add2(std::move(row), 0.0,
                         tag(fn ? RowFamily::ConservationSubNode
                                : RowFamily::ConservationNonFunction,
                             "sat=" + sc.satellites[s].id + " t=" + std::to_string(t) +
                                 " l=" + std::to_string(lf + 1) + " xi=" + std::to_string(k)));
                }
            }
        }
    }
    for (int j = 0; j < m0; ++j) {
        const VarKey& k = p.vars.continuous_key(j);
        if (k.kind != VarKind::Y) continue;
        const double beta = sc.flows[k.flow].scaling_factors[k.stage];
        SparseVec row{{j, 1.0},
                      {qcol({VarKind::Z, k.flow, k.stage + 1, k.slot, k.a, k.b}), -beta}};
        std::sort(row.begin(), row.end());
        add2(std::move(row), 0.0,
             tag(RowFamily::Scaling,
                 "l=" + std::to_string(k.flow + 1) + " k=" + std::to_string(k.stage + 1) +
                     " sat=" + sc.satellites[k.a].id + " t=" + std::to_string(k.slot)));
    }

    // --- (G3, d3): association cardinalities as <=-pairs, association caps,
    // then placement cardinalities. Availability/capability families are
    // empty: binary columns exist only where K = 1 / H = 1.
    const int n0 = p.vars.binary_count();
    for (int lf = 0; lf < num_flows; ++lf) {
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int s = 0; s < sc.satellite_count(); ++s)
                if (cap_u2s.count({lf, s, t}))
                    row.emplace_back(wcol({VarKind::PhiU2S, lf, -1, t, s, -1}), 1.0);
            SparseVec neg = row;
            for (auto& [c, v] : neg) v = -v;
            const std::string where = "l=" + std::to_string(lf + 1) + " t=" + std::to_string(t);
            add3(std::move(row), 1.0, tag(RowFamily::AssocSourceCard, where + " ub"));
            add3(std::move(neg), -1.0, tag(RowFamily::AssocSourceCard, where + " lb"));
        }
    }
    for (int lf = 0; lf < num_flows; ++lf) {
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int s = 0; s < sc.satellite_count(); ++s)
                if (cap_s2u.count({lf, s, t}))
                    row.emplace_back(wcol({VarKind::PhiS2U, lf, -1, t, s, -1}), 1.0);
            SparseVec neg = row;
            for (auto& [c, v] : neg) v = -v;
            const std::string where = "l=" + std::to_string(lf + 1) + " t=" + std::to_string(t);
            add3(std::move(row), 1.0, tag(RowFamily::AssocDestCard, where + " ub"));
            add3(std::move(neg), -1.0, tag(RowFamily::AssocDestCard, where + " lb"));
        }
    }
    for (int s = 0; s < sc.satellite_count(); ++s) {
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int lf = 0; lf < num_flows; ++lf)
                if (cap_u2s.count({lf, s, t}))
                    row.emplace_back(wcol({VarKind::PhiU2S, lf, -1, t, s, -1}), 1.0);
            if (static_cast<int>(row.size()) > sc.satellites[s].max_source_users)
                add3(std::move(row), sc.satellites[s].max_source_users,
                     tag(RowFamily::SourceCapLimit,
                         "sat=" + sc.satellites[s].id + " t=" + std::to_string(t)));
        }
    }
    for (int s = 0; s < sc.satellite_count(); ++s) {
        for (int t = 1; t <= sc.horizon; ++t) {
            SparseVec row;
            for (int lf = 0; lf < num_flows; ++lf)
                if (cap_s2u.count({lf, s, t}))
                    row.emplace_back(wcol({VarKind::PhiS2U, lf, -1, t, s, -1}), 1.0);
            if (static_cast<int>(row.size()) > sc.satellites[s].max_dest_users)
                add3(std::move(row), sc.satellites[s].max_dest_users,
                     tag(RowFamily::DestCapLimit,
                         "sat=" + sc.satellites[s].id + " t=" + std::to_string(t)));
        }
    }
    for (int lf = 0; lf < num_flows; ++lf) {
        for (int k = 1; k <= sc.flows[lf].chain_length(); ++k) {
            SparseVec row;
            for (int c = 0; c < n0; ++c) {
                const VarKey& key = p.vars.binary_key(c);
                if (key.kind == VarKind::Lambda && key.flow == lf && key.stage == k)
                    row.emplace_back(c, 1.0);
            }
            SparseVec neg = row;
            for (auto& [c, v] : neg) v = -v;
            const std::string where = "l=" + std::to_string(lf + 1) + " k=" + std::to_string(k);
            add3(std::move(row), 1.0, tag(RowFamily::PlacementCard, where + " ub"));
            add3(std::move(neg), -1.0, tag(RowFamily::PlacementCard, where + " lb"));
        }
    }

    // objective: data arriving at destination users (Eq. 30 structure)
    for (int j = 0; j < m0; ++j) {
        const VarKey& k = p.vars.continuous_key(j);
        if (k.kind == VarKind::X && k.b >= num_flows && k.b < 2 * num_flows)
            p.objective[j] = 1.0;
    }
    return p;
}

// ---------------------------------------------------------------------------

Evaluation evaluate(const MilpProblem& p, std::span<const double> q,
                    std::span<const double> w, double tol) {
    if (static_cast<int>(q.size()) != p.vars.continuous_count() ||
        static_cast<int>(w.size()) != p.vars.binary_count())
        throw std::invalid_argument("evaluate: dimension mismatch");
    Evaluation ev;
    ev.objective = p.objective_value(q);
    for (std::size_t r = 0; r < p.d1.size(); ++r) {
        const double resid = dot_block(p.b1[r], q) + dot_block(p.g1[r], w) - p.d1[r];
        if (resid > tol) ev.violations.push_back({'1', static_cast<int>(r), resid, p.tags1[r]});
    }
    for (std::size_t r = 0; r < p.d2.size(); ++r) {
        const double resid = dot_block(p.b2[r], q) + dot_block(p.g2[r], w) - p.d2[r];
        if (std::fabs(resid) > tol)
            ev.violations.push_back({'2', static_cast<int>(r), resid, p.tags2[r]});
    }
    for (std::size_t r = 0; r < p.d3.size(); ++r) {
        const double resid = dot_block(p.g3[r], w) - p.d3[r];
        if (resid > tol) ev.violations.push_back({'3', static_cast<int>(r), resid, p.tags3[r]});
    }
    for (int j = 0; j < p.vars.continuous_count(); ++j)
        if (q[j] < -tol)
            ev.violations.push_back({'q', j, -q[j], {RowFamily::BaselineFix, "q >= 0"}});
    ev.feasible = ev.violations.empty();
    return ev;
}

Evaluation evaluate_binary(const MilpProblem& p, std::span<const double> w, double tol) {
    if (static_cast<int>(w.size()) != p.vars.binary_count())
        throw std::invalid_argument("evaluate_binary: dimension mismatch");
    Evaluation ev;
    for (std::size_t r = 0; r < p.d3.size(); ++r) {
        const double resid = dot_block(p.g3[r], w) - p.d3[r];
        if (resid > tol) ev.violations.push_back({'3', static_cast<int>(r), resid, p.tags3[r]});
    }
    ev.feasible = ev.violations.empty();
    return ev;
}

// ---------------------------------------------------------------------------
// Baseline restrictions

namespace {

void fix_binary(MilpProblem& p, int wcol, int value, const std::string& why) {
    if (value == 0)
        p.g3.push_back({{wcol, 1.0}});
    else
        p.g3.push_back({{wcol, -1.0}});
    p.d3.push_back(value == 0 ? 0.0 : -1.0);
    p.tags3.push_back({RowFamily::BaselineFix, why});
}

}  // namespace

MilpProblem restrict_baseline(const MilpProblem& milp, BaselineScheme scheme,
                              const Scenario& sc) {
    MilpProblem p = milp;
    const int n0 = p.vars.binary_count();

    if (scheme == BaselineScheme::LVNF) {
        // keep only the first offered function of every function node
        for (int c = 0; c < n0; ++c) {
            const VarKey& k = p.vars.binary_key(c);
            if (k.kind == VarKind::Lambda && k.b != 0)
                fix_binary(p, c, 0, "lvnf drops " + describe_var(k, sc));
        }
        for (std::size_t r = 0; r < p.d1.size(); ++r) {
            if (p.tags1[r].family != RowFamily::VirtualInCapacity &&
                p.tags1[r].family != RowFamily::VirtualOutCapacity)
                continue;
            const VarKey& vk = p.vars.continuous_key(p.b1[r][0].first);
            if (vk.b != 0) p.g1[r].clear();  // capacity 0: y/z <= 0
        }
        return p;
    }

    if (scheme == BaselineScheme::FVNF) {
        // rotate the pinned node over the capable list, flows in index order
        std::map<int, std::size_t> rotation;
        MfTeg g = build_mfteg(sc);
        for (int lf = 0; lf < sc.flow_count(); ++lf) {
            for (int k = 1; k <= sc.flows[lf].chain_length(); ++k) {
                const int f = sc.flows[lf].sfc[k - 1];
                const auto& capable = g.capability.nodes_for(f);
                if (capable.empty())
                    throw ValidationError("fvnf pinning impossible: no capable node for flow " +
                                          std::to_string(lf + 1) + " step " + std::to_string(k));
                const auto [s, n] = capable[rotation[f]++ % capable.size()];
                const int c = p.vars.binary_column({VarKind::Lambda, lf, k, 0, s, n});
                fix_binary(p, c, 1,
                           "fvnf pins l=" + std::to_string(lf + 1) + " k=" + std::to_string(k) +
                               " to " + sc.satellites[s].id + ":n" + std::to_string(n));
            }
        }
        return p;
    }

    // HU: per slot, strongest-signal association honoring the user caps,
    // flows in index order, ties to the lowest satellite index.
    for (int t = 1; t <= sc.horizon; ++t) {
        for (int side = 0; side < 2; ++side) {
            std::vector<int> used(sc.satellite_count(), 0);
            for (int lf = 0; lf < sc.flow_count(); ++lf) {
                int best = -1;
                double best_snr = -1.0;
                for (int s = 0; s < sc.satellite_count(); ++s) {
                    const int from = side == 0 ? sc.source_node(lf) : sc.sat_node(s);
                    const int to = side == 0 ? sc.sat_node(s) : sc.dest_node(lf);
                    if (!sc.visibility.available(from, to, t)) continue;
                    const int cap = side == 0 ? sc.satellites[s].max_source_users
                                              : sc.satellites[s].max_dest_users;
                    if (used[s] >= cap) continue;
                    const double snr = ground_snr(
                        sc.link_budget, sc.visibility.range(from, to, t),
                        side == 0 ? GroundDirection::U2S : GroundDirection::S2U);
                    if (snr > best_snr + 1e-15) {
                        best_snr = snr;
                        best = s;
                    }
                }
                if (best < 0)
                    throw ValidationError(
                        std::string("hu association failed: ") +
                        (side == 0 ? "C^{U2S}" : "C^{S2U}") + " exhausted for user " +
                        (side == 0 ? sc.flows[lf].source_user : sc.flows[lf].dest_user) +
                        " at slot " + std::to_string(t));
                ++used[best];
                const VarKind kind = side == 0 ? VarKind::PhiU2S : VarKind::PhiS2U;
                const int c = p.vars.binary_column({kind, lf, -1, t, best, -1});
                fix_binary(p, c, 1,
                           "hu pins " + describe_var(p.vars.binary_key(c), sc));
            }
        }
    }
    return p;
}

// ---------------------------------------------------------------------------

SolutionReport decode_solution(const MilpProblem& p, const Scenario& sc,
                               std::span<const double> q, std::span<const double> w) {
    Evaluation ev = evaluate(p, q, w);
    if (!ev.feasible) {
        std::ostringstream msg;
        msg << "decode_solution: infeasible input (" << ev.violations.size() << " violations):";
        for (std::size_t i = 0; i < std::min<std::size_t>(5, ev.violations.size()); ++i)
            msg << " [" << family_name(ev.violations[i].tag.family) << " "
                << ev.violations[i].tag.detail << " residual=" << ev.violations[i].residual
                << "]";
        throw ValidationError(msg.str());
    }

    SolutionReport rep;
    rep.objective_mbit = ev.objective;
    rep.delivered_per_flow.assign(sc.flow_count(), 0.0);
    rep.source_assoc.assign(sc.flow_count(), std::vector<int>(sc.horizon, -1));
    rep.dest_assoc.assign(sc.flow_count(), std::vector<int>(sc.horizon, -1));
    rep.placement.resize(sc.flow_count());
    for (int lf = 0; lf < sc.flow_count(); ++lf)
        rep.placement[lf].assign(sc.flows[lf].chain_length(), {-1, -1});

    for (int j = 0; j < p.vars.continuous_count(); ++j) {
        const VarKey& k = p.vars.continuous_key(j);
        if (p.objective[j] != 0.0) rep.delivered_per_flow[k.flow] += q[j];
        if (q[j] > 1e-9) rep.link_flows.push_back({k, q[j], describe_var(k, sc)});
    }
    for (int c = 0; c < p.vars.binary_count(); ++c) {
        if (w[c] < 0.5) continue;
        const VarKey& k = p.vars.binary_key(c);
        if (k.kind == VarKind::PhiU2S)
            rep.source_assoc[k.flow][k.slot - 1] = k.a;
        else if (k.kind == VarKind::PhiS2U)
            rep.dest_assoc[k.flow][k.slot - 1] = k.a;
        else
            rep.placement[k.flow][k.stage - 1] = {k.a, k.b};
    }
    return rep;
}

double objective_upper_bound(const MilpProblem& p, const Scenario& sc) {
    // per flow: best visible U2S and S2U capacity per slot
    std::vector<double> u2s_side(sc.flow_count(), 0.0), s2u_side(sc.flow_count(), 0.0);
    std::vector<std::vector<double>> best_u(sc.flow_count(),
                                            std::vector<double>(sc.horizon + 1, 0.0));
    std::vector<std::vector<double>> best_s(sc.flow_count(),
                                            std::vector<double>(sc.horizon + 1, 0.0));
    for (std::size_t r = 0; r < p.d1.size(); ++r) {
        const RowFamily fam = p.tags1[r].family;
        if (fam != RowFamily::U2SCapacity && fam != RowFamily::S2UCapacity) continue;
        const VarKey& k = p.vars.continuous_key(p.b1[r][0].first);
        const double cap = -p.g1[r][0].second;
        auto& best = fam == RowFamily::U2SCapacity ? best_u : best_s;
        best[k.flow][k.slot] = std::max(best[k.flow][k.slot], cap);
    }
    double bound = 0.0;
    for (int lf = 0; lf < sc.flow_count(); ++lf) {
        for (int t = 1; t <= sc.horizon; ++t) {
            u2s_side[lf] += best_u[lf][t];
            s2u_side[lf] += best_s[lf][t];
        }
        double gain = 1.0;
        for (double beta : sc.flows[lf].scaling_factors) gain /= beta;
        bound += std::min(s2u_side[lf], u2s_side[lf] * gain);
    }
    return bound;
}

std::string export_milp(const MilpProblem& p) {
    std::ostringstream out;
    out << "# milp v1 m0=" << p.vars.continuous_count() << " n0=" << p.vars.binary_count()
        << "\n";
    out << "# blocks: 1 = B1 q + G1 w <= d1, 2 = B2 q + G2 w = d2, 3 = G3 w <= d3\n";
    auto dump = [&](char block, const std::vector<SparseVec>* bq,
                    const std::vector<SparseVec>& gw, const std::vector<double>& d,
                    const std::vector<RowTag>& tags) {
        for (std::size_t r = 0; r < d.size(); ++r) {
            out << "# " << block << ":" << r << " " << family_name(tags[r].family) << " "
                << tags[r].detail << "\n";
            if (bq)
                for (const auto& [j, v] : (*bq)[r])
                    out << block << " " << r << " q" << j << " " << v << "\n";
            for (const auto& [j, v] : gw[r]) out << block << " " << r << " w" << j << " " << v
                                                 << "\n";
            out << block << " " << r << " rhs " << d[r] << "\n";
        }
    };
    dump('1', &p.b1, p.g1, p.d1, p.tags1);
    dump('2', &p.b2, p.g2, p.d2, p.tags2);
    dump('3', nullptr, p.g3, p.d3, p.tags3);
    for (int j = 0; j < p.vars.continuous_count(); ++j)
        if (p.objective[j] != 0.0) out << "c q" << j << " " << p.objective[j] << "\n";
    return out.str();
}

}  // namespace sinflow
