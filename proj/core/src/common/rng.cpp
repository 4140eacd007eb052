#include <bobtail/common/rng.hpp>

namespace bobtail {

std::uint64_t entropy_seed()
{
    std::random_device rd;
    return (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
}

} // namespace bobtail
