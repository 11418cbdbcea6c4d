#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "prowl/graph.hpp"

namespace prowl {

/// Produces the edge arrivals for one tick at a time. Exhaustion (nullopt)
/// freezes the network; the simulation keeps ticking on the frozen graph.
class EventSource {
public:
    virtual ~EventSource() = default;
    virtual std::optional<std::vector<GraphEvent>> next_tick() = 0;
};

/// Replays a fixed event sequence. In line mode every event is its own
/// tick; in group mode consecutive events sharing a stamp arrive together.
class ReplaySource : public EventSource {
public:
    explicit ReplaySource(std::vector<GraphEvent> events, bool group_by_stamp = false)
        : events_(std::move(events)), group_(group_by_stamp) {}

    std::optional<std::vector<GraphEvent>> next_tick() override {
        if (pos_ >= events_.size()) return std::nullopt;
        std::vector<GraphEvent> batch;
        batch.push_back(events_[pos_++]);
        if (group_) {
            while (pos_ < events_.size() && events_[pos_].stamp == batch.front().stamp)
                batch.push_back(events_[pos_++]);
        }
        return batch;
    }

private:
    std::vector<GraphEvent> events_;
    std::size_t pos_ = 0;
    bool group_;
};

/// No events at all: a frozen, pre-loaded network.
class StaticSource : public EventSource {
public:
    std::optional<std::vector<GraphEvent>> next_tick() override { return std::nullopt; }
};

/// A warm-up instance plus the stream that continues it.
struct PreparedRun {
    NetworkInstance start;
    std::unique_ptr<EventSource> events;
};

}  // namespace prowl
