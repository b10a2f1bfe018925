#pragma once

#include <array>
#include <cstdint>

namespace pamd {

// 12-bit operand of the <16,2> significand multiplier; normalized
// significands (hidden bit plus 11 fraction bits) live in [2^11, 2^12),
// but any 12-bit value is accepted in raw test mode.
using Significand12 = uint32_t;

// Five signed radix-8 rows; row i carries weight 8^i.
struct PartialProductArray {
    std::array<int32_t, 5> rows{};
};

struct BoothProduct {
    uint32_t top13 = 0;   // product bits 23..11
    bool sticky = false;  // OR of product bits 10..0
    uint32_t full = 0;    // full 24-bit product
};

// Conditional 2's complement with the ripple rule: bits up to and
// including the lowest set bit pass through, every higher bit inverts.
// sel == 0 passes the input unchanged.
uint32_t twos_complement_block(uint32_t a, int width, bool sel);

// Radix-8 Booth recoding of the zero-extended unsigned multiplier into
// digits {0, +-1, +-2, +-3, +-4}; negative multiples go through the 2's
// complement block, so no deferred +1 correction bits exist in the array.
PartialProductArray ppg_radix8(Significand12 multiplicand, Significand12 multiplier);

struct CarrySaveRows {
    uint32_t s = 0;
    uint32_t c = 0;
};

// Carry-save reduction to two addends; their sum mod 2^24 equals the sum
// of all partial-product rows mod 2^24.
CarrySaveRows ppr_reduce(const PartialProductArray& array);

// Split final addition: the 13 MSBs of s+c (with the true carry out of
// the low 11 columns) plus a sticky over the truncated bits.
BoothProduct final_add_split(uint32_t s, uint32_t c);

BoothProduct booth_multiply(Significand12 a, Significand12 b);

}  // namespace pamd
