#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace bobtail::protocol {

/// A candidate chain as fork choice sees it: the W_k of each block from
/// genesis to tip, on a hash space of size `hash_space`.
struct ChainView {
    std::vector<double> w_k;
    double hash_space = 0.0;
};

/// Sum of S / w_k over the blocks, the inferred number of hashes.
double aggregate_work(const ChainView& chain);

/// Index of the chain with the most aggregate work. On an exact tie the
/// earliest chain in the list (first seen) wins. Throws
/// std::invalid_argument on empty input.
std::size_t fork_choice(std::span<const ChainView> chains);

} // namespace bobtail::protocol
