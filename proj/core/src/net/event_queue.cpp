#include <bobtail/net/event_queue.hpp>

#include <bobtail/common/rng.hpp>

#include <bit>
#include <stdexcept>

namespace bobtail::net {

void EventQueue::push(SimEvent e)
{
    if (e.time < now_)
        throw std::logic_error("EventQueue: event scheduled in the past");
    e.seq = next_seq_++;
    heap_.push(e);
}

SimEvent EventQueue::pop()
{
    if (heap_.empty())
        throw std::logic_error("EventQueue: pop on empty queue");
    SimEvent e = heap_.top();
    heap_.pop();
    now_ = e.time;
    return e;
}

std::uint64_t trace_mix(std::uint64_t h, const SimEvent& e) noexcept
{
    h = mix64(h ^ std::bit_cast<std::uint64_t>(e.time));
    h = mix64(h ^ static_cast<std::uint64_t>(e.kind));
    h = mix64(h ^ e.payload);
    h = mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(e.origin)));
    return mix64(h ^ static_cast<std::uint64_t>(static_cast<std::int64_t>(e.destination)));
}

} // namespace bobtail::net
