#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace photostamp {

std::string base64_encode(std::span<const std::uint8_t> data);

// Strict RFC 4648 decode; throws Error on invalid characters or bad padding.
std::vector<std::uint8_t> base64_decode(const std::string& text);

} // namespace photostamp
