#pragma once

#include <vector>

#include "prowl/graph.hpp"

namespace prowl {

/// Walk reach of the B-set: r-1 for r >= 2, but never below 1.
inline int bset_reach(int r) { return r >= 2 ? r - 1 : 1; }

namespace detail {

/// Mask of the union of closed neighborhoods of the given slots.
inline std::vector<std::uint8_t> access_nb_mask(const NetworkInstance& g,
                                                const std::vector<Slot>& units) {
    std::vector<std::uint8_t> mask(g.node_count(), 0);
    for (Slot s : units) {
        mask[s] = 1;
        for (Slot t : g.adj(s)) mask[t] = 1;
    }
    return mask;
}

inline std::vector<Slot> mask_to_slots(const std::vector<std::uint8_t>& mask, bool value) {
    std::vector<Slot> out;
    for (Slot s = 0; s < mask.size(); ++s)
        if ((mask[s] != 0) == value) out.push_back(s);
    return out;
}

inline NodeSet slots_to_set(const NetworkInstance& g, const std::vector<Slot>& slots) {
    std::vector<NodeId> ids;
    ids.reserve(slots.size());
    for (Slot s : slots) ids.push_back(g.id_at(s));
    return NodeSet(std::move(ids));
}

}  // namespace detail

/// Nodes outside the accessible region of the given units.
inline NodeSet exterior_set(const NetworkInstance& g, const std::vector<NodeId>& units, int r) {
    auto reach = g.reach_mask(g.slots_of(units), r);
    return detail::slots_to_set(g, detail::mask_to_slots(reach, false));
}

/// Nodes within bset_reach(r) of the exterior set. Contains the exterior
/// itself plus a shell reaching back into the accessible region.
inline NodeSet b_set(const NetworkInstance& g, const std::vector<NodeId>& units, int r) {
    auto reach = g.reach_mask(g.slots_of(units), r);
    auto exterior = detail::mask_to_slots(reach, false);
    auto bmask = g.reach_mask(exterior, bset_reach(r));
    return detail::slots_to_set(g, detail::mask_to_slots(bmask, true));
}

/// Union of closed neighborhoods of the units (the access neighborhood).
inline NodeSet access_neighborhood(const NetworkInstance& g, const std::vector<NodeId>& units) {
    auto mask = detail::access_nb_mask(g, g.slots_of(units));
    return detail::slots_to_set(g, detail::mask_to_slots(mask, true));
}

/// Number of v's neighbors outside the access neighborhood of the units.
inline int n_degree(const NetworkInstance& g, const std::vector<NodeId>& units, NodeId v) {
    auto mask = detail::access_nb_mask(g, g.slots_of(units));
    int count = 0;
    for (Slot t : g.adj(g.slot_of(v)))
        if (!mask[t]) ++count;
    return count;
}

struct StructuralSets {
    NodeSet exterior;   // nodes outside the accessible region
    NodeSet bset;       // exterior plus its bset_reach(r) shell
    NodeSet access_nb;  // union of closed unit neighborhoods
    NodeSet anti_nb;    // complement of access_nb
};

inline StructuralSets compute_structural_sets(const NetworkInstance& g,
                                              const std::vector<NodeId>& units, int r) {
    StructuralSets out;
    auto unit_slots = g.slots_of(units);
    auto reach = g.reach_mask(unit_slots, r);
    auto exterior_slots = detail::mask_to_slots(reach, false);
    out.exterior = detail::slots_to_set(g, exterior_slots);
    out.bset = detail::slots_to_set(
        g, detail::mask_to_slots(g.reach_mask(exterior_slots, bset_reach(r)), true));
    auto nb = detail::access_nb_mask(g, unit_slots);
    out.access_nb = detail::slots_to_set(g, detail::mask_to_slots(nb, true));
    out.anti_nb = detail::slots_to_set(g, detail::mask_to_slots(nb, false));
    return out;
}

}  // namespace prowl
