#pragma once

#include <cstddef>
#include <cstdint>

namespace css {

int or_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S);
int and_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S);
// busy iff active-bit mean >= 0.5 (tie busy)
int majority_fuse(const uint8_t* bits, const uint8_t* active, std::size_t S);

} // namespace css
