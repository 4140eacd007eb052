#pragma once

#include <cstdint>
#include <queue>
#include <vector>

namespace bobtail::net {

enum class EventKind : std::uint8_t { proof_found, proof_arrival, block_found, block_arrival };

struct SimEvent {
    double time = 0.0;
    EventKind kind = EventKind::proof_found;
    std::uint64_t payload = 0; // index into the trial's proof or block list
    int origin = -1;
    int destination = -1;
    std::uint64_t seq = 0;     // assigned by the queue
};

/// Min-queue on (time, insertion order). Equal-time events therefore come
/// out FIFO, which also keeps each (origin, destination) channel FIFO.
class EventQueue {
public:
    /// Throws std::logic_error if `e.time` is earlier than the last popped event.
    void push(SimEvent e);
    SimEvent pop();

    bool empty() const noexcept { return heap_.empty(); }
    std::size_t size() const noexcept { return heap_.size(); }
    double now() const noexcept { return now_; }
    const SimEvent& top() const { return heap_.top(); }

private:
    struct Later {
        bool operator()(const SimEvent& a, const SimEvent& b) const noexcept
        {
            return a.time > b.time || (a.time == b.time && a.seq > b.seq);
        }
    };
    std::priority_queue<SimEvent, std::vector<SimEvent>, Later> heap_;
    std::uint64_t next_seq_ = 0;
    double now_ = 0.0;
};

/// Folds an event into a running trace digest.
std::uint64_t trace_mix(std::uint64_t h, const SimEvent& e) noexcept;

} // namespace bobtail::net
