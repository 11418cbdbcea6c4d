#pragma once

// Seeded dynamic-network models. Each model is an endless EventSource with
// unit growth: a tick carries at most one node arrival (plus its edges), or
// for the rich-club model possibly just one edge between existing nodes.
//
//   BA  preferential attachment; every arrival brings avg_degree/2 edges
//   SB  three equal communities; arrivals wire within their community with
//       probability p_in and across with p_in * inter_ratio, where p_in
//       shrinks with network size to hold the average degree
//   JR  meeting-based attachment: an arrival meets uniform "parents" and
//       random neighbors of those parents, linking to each with fixed
//       probability
//   RC  rich club: with probability alpha a new node attaches to one
//       degree-proportional endpoint, otherwise a degree-proportional edge
//       joins two existing nodes
//
// The models keep their own adjacency mirror so they stay usable as pure
// event streams, independent of any NetworkInstance.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "prowl/events.hpp"
#include "prowl/graph.hpp"
#include "prowl/random.hpp"

namespace prowl {

enum class ModelKind { BA, SB, JR, RC };

inline const char* to_string(ModelKind m) {
    switch (m) {
        case ModelKind::BA: return "BA";
        case ModelKind::SB: return "SB";
        case ModelKind::JR: return "JR";
        case ModelKind::RC: return "RC";
    }
    return "?";
}

inline ModelKind parse_model(const std::string& name) {
    if (name == "BA" || name == "ba") return ModelKind::BA;
    if (name == "SB" || name == "sb") return ModelKind::SB;
    if (name == "JR" || name == "jr") return ModelKind::JR;
    if (name == "RC" || name == "rc") return ModelKind::RC;
    throw std::invalid_argument("unknown model '" + name + "'");
}

struct GeneratorSpec {
    ModelKind model = ModelKind::BA;
    std::size_t initial_size = 1000;  // grow-to size before a run starts
    int avg_degree = 6;
    std::uint64_t seed = 1;
    double sb_inter_ratio = 1.0 / 6.0;
    double jr_link_prob = 0.5;
    double rc_alpha = 0.0;  // 0 = default 2/avg_degree
};

class GrowthModel : public EventSource {
public:
    explicit GrowthModel(const GeneratorSpec& spec) : spec_(spec), rng_(spec.seed) {
        if (spec.avg_degree < 2) throw std::invalid_argument("avg_degree must be >= 2");
        if ((spec.model == ModelKind::BA || spec.model == ModelKind::JR) &&
            spec.avg_degree % 2 != 0)
            throw std::invalid_argument("BA/JR need an even avg_degree");
        if (spec.initial_size < static_cast<std::size_t>(spec.avg_degree))
            throw std::invalid_argument("initial_size must be >= avg_degree");
    }

    std::optional<std::vector<GraphEvent>> next_tick() override {
        ++tick_;
        std::vector<GraphEvent> batch;
        if (node_count() == 0) {
            bootstrap(batch);
            return batch;
        }
        switch (spec_.model) {
            case ModelKind::BA: tick_ba(batch); break;
            case ModelKind::SB: tick_sb(batch); break;
            case ModelKind::JR: tick_jr(batch); break;
            case ModelKind::RC: tick_rc(batch); break;
        }
        return batch;
    }

    std::size_t node_count() const { return adj_.size(); }
    std::size_t edge_count() const { return edge_count_; }
    int degree(std::uint32_t v) const { return static_cast<int>(adj_[v].size()); }

private:
    int attach_count() const { return spec_.avg_degree / 2; }

    void bootstrap(std::vector<GraphEvent>& batch) {
        // BA/JR: a clique large enough to host the first attachment round.
        // SB: one seed node per community. RC: a triangle.
        std::size_t n = 3;
        if (spec_.model == ModelKind::BA || spec_.model == ModelKind::JR)
            n = static_cast<std::size_t>(attach_count()) + 1;
        n = std::max<std::size_t>(n, 3);
        for (std::size_t i = 0; i < n; ++i) {
            std::uint32_t v = add_node();
            if (spec_.model == ModelKind::SB) community_[v] = static_cast<int>(i % 3);
        }
        for (std::uint32_t i = 0; i < n; ++i)
            for (std::uint32_t j = i + 1; j < n; ++j) add_edge(i, j, batch);
    }

    void tick_ba(std::vector<GraphEvent>& batch) {
        int m = attach_count();
        std::vector<std::uint32_t> targets;
        while (static_cast<int>(targets.size()) < m) {
            std::uint32_t t = uniform_pick(rng_, weighted_);
            if (std::find(targets.begin(), targets.end(), t) == targets.end())
                targets.push_back(t);
        }
        std::uint32_t w = add_node();
        for (std::uint32_t t : targets) add_edge(w, t, batch);
    }

    void tick_sb(std::vector<GraphEvent>& batch) {
        std::size_t n = node_count();
        double p_in = std::min(1.0, 9.0 * spec_.avg_degree / (8.0 * static_cast<double>(n)));
        int comm = static_cast<int>(uniform_index(rng_, 3));
        std::vector<std::uint32_t> picks;
        do {
            picks.clear();
            for (std::uint32_t u = 0; u < n; ++u) {
                double p = (community_[u] == comm) ? p_in : p_in * spec_.sb_inter_ratio;
                if (chance(rng_, p)) picks.push_back(u);
            }
        } while (picks.empty());  // an arrival must connect somewhere
        std::uint32_t w = add_node();
        community_[w] = comm;
        for (std::uint32_t u : picks) add_edge(w, u, batch);
    }

    void tick_jr(std::vector<GraphEvent>& batch) {
        std::size_t n = node_count();
        int m = attach_count();
        std::vector<std::uint32_t> met;
        std::vector<std::uint32_t> links;
        do {
            met.clear();
            links.clear();
            // Parents: m distinct uniform picks.
            while (static_cast<int>(met.size()) < m) {
                std::uint32_t u = static_cast<std::uint32_t>(uniform_index(rng_, n));
                if (std::find(met.begin(), met.end(), u) == met.end()) met.push_back(u);
            }
            // Friends-of-parents: up to m distinct picks from the parents'
            // joint neighborhood.
            std::vector<std::uint32_t> pool;
            for (int i = 0; i < m; ++i)
                for (std::uint32_t x : adj_[met[i]])
                    if (std::find(met.begin(), met.end(), x) == met.end() &&
                        std::find(pool.begin(), pool.end(), x) == pool.end())
                        pool.push_back(x);
            for (int i = 0; i < m && !pool.empty(); ++i) {
                std::size_t j = uniform_index(rng_, pool.size());
                met.push_back(pool[j]);
                pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(j));
            }
            for (std::uint32_t u : met)
                if (chance(rng_, spec_.jr_link_prob)) links.push_back(u);
        } while (links.empty());
        std::uint32_t w = add_node();
        for (std::uint32_t u : links) add_edge(w, u, batch);
    }

    void tick_rc(std::vector<GraphEvent>& batch) {
        double alpha = spec_.rc_alpha > 0 ? spec_.rc_alpha : 2.0 / spec_.avg_degree;
        if (chance(rng_, alpha)) {
            std::uint32_t t = uniform_pick(rng_, weighted_);
            std::uint32_t w = add_node();
            add_edge(w, t, batch);
            return;
        }
        for (int attempt = 0; attempt < 50; ++attempt) {
            std::uint32_t u = uniform_pick(rng_, weighted_);
            std::uint32_t v = uniform_pick(rng_, weighted_);
            if (u == v || has_edge(u, v)) continue;
            add_edge(u, v, batch);
            return;
        }
        // Dense corner case: no fresh edge found; the tick stays empty.
    }

    std::uint32_t add_node() {
        adj_.emplace_back();
        community_.push_back(0);
        return static_cast<std::uint32_t>(adj_.size() - 1);
    }

    bool has_edge(std::uint32_t u, std::uint32_t v) const {
        const auto& a = adj_[u].size() <= adj_[v].size() ? adj_[u] : adj_[v];
        std::uint32_t needle = adj_[u].size() <= adj_[v].size() ? v : u;
        return std::find(a.begin(), a.end(), needle) != a.end();
    }

    void add_edge(std::uint32_t u, std::uint32_t v, std::vector<GraphEvent>& batch) {
        adj_[u].push_back(v);
        adj_[v].push_back(u);
        weighted_.push_back(u);
        weighted_.push_back(v);
        ++edge_count_;
        batch.push_back({static_cast<NodeId>(u), static_cast<NodeId>(v), tick_});
    }

    GeneratorSpec spec_;
    Rng rng_;
    std::vector<std::vector<std::uint32_t>> adj_;
    std::vector<int> community_;
    std::vector<std::uint32_t> weighted_;  // each node repeated per degree
    std::size_t edge_count_ = 0;
    std::int64_t tick_ = 0;
};

inline std::unique_ptr<GrowthModel> make_model(const GeneratorSpec& spec) {
    return std::make_unique<GrowthModel>(spec);
}

/// Applies ticks until the instance holds at least `target` nodes.
inline NetworkInstance grow_to(GrowthModel& model, std::size_t target) {
    NetworkInstance g;
    while (g.node_count() < target) {
        auto batch = model.next_tick();
        for (const auto& ev : *batch) g.apply(ev);
    }
    return g;
}

/// Warm-up instance of `initial_size` nodes plus the live continuation.
inline PreparedRun prepare_model_run(const GeneratorSpec& spec) {
    auto model = make_model(spec);
    PreparedRun out;
    out.start = grow_to(*model, spec.initial_size);
    out.events = std::move(model);
    return out;
}

}  // namespace prowl
