#include "pamd/booth.hpp"

#include <stdexcept>

namespace pamd {

uint32_t twos_complement_block(uint32_t a, int width, bool sel) {
    if (width < 1 || width > 31) throw std::invalid_argument("width out of range");
    const uint32_t mask = (1u << width) - 1;
    a &= mask;
    if (!sel) return a;
    // Carry chain per the block design: c goes high at the lowest set bit
    // and stays high, inverting all later bits.
    uint32_t out = 0, carry = 0;
    for (int i = 0; i < width; ++i) {
        const uint32_t ai = (a >> i) & 1;
        out |= (ai ^ carry) << i;
        carry |= ai;
    }
    return out;
}

PartialProductArray ppg_radix8(Significand12 multiplicand, Significand12 multiplier) {
    multiplicand &= 0xFFF;
    multiplier &= 0xFFF;
    // Digit of the overlapping 4-bit window b[3i+2] b[3i+1] b[3i] b[3i-1].
    static constexpr int8_t kDigit[16] = {0, 1, 1, 2, 2, 3, 3, 4, -4, -3, -3, -2, -2, -1, -1, 0};
    const uint32_t triple = 3 * multiplicand;  // the one hard multiple, one addition
    const uint32_t x = multiplier << 1;        // append b[-1] = 0
    PartialProductArray out;
    for (int i = 0; i < 5; ++i) {
        const int d = kDigit[(x >> (3 * i)) & 0xF];
        uint32_t mag;
        switch (d < 0 ? -d : d) {
            case 0: mag = 0; break;
            case 1: mag = multiplicand; break;
            case 2: mag = multiplicand << 1; break;
            case 3: mag = triple; break;
            default: mag = multiplicand << 2; break;
        }
        const uint32_t bits = twos_complement_block(mag, 15, d < 0);
        out.rows[i] = (d < 0 && bits != 0) ? int32_t(bits) - (1 << 15) : int32_t(bits);
    }
    return out;
}

namespace {

CarrySaveRows csa(uint32_t x, uint32_t y, uint32_t z) {
    constexpr uint32_t mask = 0xFFFFFF;
    CarrySaveRows out;
    out.s = (x ^ y ^ z) & mask;
    out.c = (((x & y) | (x & z) | (y & z)) << 1) & mask;
    return out;
}

}  // namespace

CarrySaveRows ppr_reduce(const PartialProductArray& array) {
    constexpr uint32_t mask = 0xFFFFFF;
    uint32_t r[5];
    for (int i = 0; i < 5; ++i) {
        r[i] = uint32_t(int64_t(array.rows[i]) << (3 * i)) & mask;
    }
    const CarrySaveRows l1a = csa(r[0], r[1], r[2]);
    const CarrySaveRows l1b = csa(l1a.s, l1a.c, r[3]);
    return csa(l1b.s, l1b.c, r[4]);
}

BoothProduct final_add_split(uint32_t s, uint32_t c) {
    s &= 0xFFFFFF;
    c &= 0xFFFFFF;
    const uint32_t low = (s & 0x7FF) + (c & 0x7FF);
    const uint32_t carry11 = low >> 11;  // carry-generator contract
    BoothProduct out;
    out.top13 = ((s >> 11) + (c >> 11) + carry11) & 0x1FFF;
    out.sticky = (low & 0x7FF) != 0;
    out.full = ((out.top13 << 11) | (low & 0x7FF)) & 0xFFFFFF;
    return out;
}

BoothProduct booth_multiply(Significand12 a, Significand12 b) {
    const CarrySaveRows sc = ppr_reduce(ppg_radix8(a, b));
    return final_add_split(sc.s, sc.c);
}

}  // namespace pamd
