#pragma once

#include <bobtail/protocol/types.hpp>

namespace bobtail::protocol {

/// new = prev * desired / observed, clamped to [prev / 4, 4 prev].
/// An observed mean of zero (or below) takes the upper clamp.
double retarget(double prev_difficulty, double observed_mean_time, double desired_time);

/// Target for package size k at difficulty d: (k+1)/2 * (2^256 - 1) / d,
/// saturating at the maximum. Throws std::invalid_argument for d == 0 or k < 1.
Uint256 target_from_difficulty(std::uint64_t difficulty, int k);

/// Which of two conflicting transactions to mine. `first` arrived
/// `receipt_gap` seconds before `second`. Past the grace period the late one
/// is ignored; otherwise the higher fee wins and equal fees go to the lower
/// transaction hash.
const Transaction& select_canonical_tx(const Transaction& first, const Transaction& second,
                                       double receipt_gap, double grace,
                                       const Digest& digest = default_digest());

} // namespace bobtail::protocol
