#pragma once

#include <bobtail/protocol/types.hpp>

#include <string>

namespace bobtail::protocol {

/// Debug rendering. 256-bit fields are big-endian hex; byte strings are hex.
std::string to_json(const ProofSet& proof, int indent = 2);
std::string to_json(const Block& block, int indent = 2);

} // namespace bobtail::protocol
