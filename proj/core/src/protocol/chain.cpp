#include <bobtail/protocol/chain.hpp>

#include <stdexcept>

namespace bobtail::protocol {

double aggregate_work(const ChainView& chain)
{
    double work = 0.0;
    for (double w : chain.w_k) {
        if (!(w > 0.0))
            throw std::invalid_argument("aggregate_work: w_k must be positive");
        work += chain.hash_space / w;
    }
    return work;
}

std::size_t fork_choice(std::span<const ChainView> chains)
{
    if (chains.empty())
        throw std::invalid_argument("fork_choice: no chains");
    std::size_t best = 0;
    double best_work = aggregate_work(chains[0]);
    for (std::size_t i = 1; i < chains.size(); ++i) {
        const double work = aggregate_work(chains[i]);
        if (work > best_work) {
            best = i;
            best_work = work;
        }
    }
    return best;
}

} // namespace bobtail::protocol
