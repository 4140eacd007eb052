#include <bobtail/protocol/policy.hpp>

#include <algorithm>
#include <stdexcept>

namespace bobtail::protocol {

double retarget(double prev_difficulty, double observed_mean_time, double desired_time)
{
    if (!(prev_difficulty > 0.0) || !(desired_time > 0.0))
        throw std::invalid_argument("retarget: difficulty and desired time must be positive");
    const double lo = prev_difficulty / 4.0;
    const double hi = prev_difficulty * 4.0;
    if (!(observed_mean_time > 0.0))
        return hi;
    return std::clamp(prev_difficulty * desired_time / observed_mean_time, lo, hi);
}

Uint256 target_from_difficulty(std::uint64_t difficulty, int k)
{
    if (difficulty == 0 || k < 1)
        throw std::invalid_argument("target_from_difficulty: need d > 0 and k >= 1");
    Uint320 t = Uint256::max().resize<5>() / difficulty;
    t *= static_cast<std::uint64_t>(k) + 1;
    t /= 2;
    return t.fits<4>() ? t.resize<4>() : Uint256::max();
}

const Transaction& select_canonical_tx(const Transaction& first, const Transaction& second,
                                       double receipt_gap, double grace, const Digest& digest)
{
    if (receipt_gap > grace)
        return first;
    if (first.fee != second.fee)
        return first.fee > second.fee ? first : second;
    return transaction_hash(second, digest) < transaction_hash(first, digest) ? second : first;
}

} // namespace bobtail::protocol
