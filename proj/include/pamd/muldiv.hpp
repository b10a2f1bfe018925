#pragma once

#include <cstdint>

#include "pamd/posit.hpp"
#include "pamd/recip.hpp"

namespace pamd {

struct OpMode {
    bool div = false;  // 0 = multiply, 1 = divide
};

// 2-bit exception code: 00 normal, 01 force zero, 11 force NaR. Bit 1 is
// ORed into the output sign field, which is exactly what turns the forced
// zero pattern into NaR. Code 10 is never produced.
enum class Excep : uint8_t { normal = 0b00, force_zero = 0b01, force_nar = 0b11 };

struct ExcepFlags {
    Excep code = Excep::normal;
    bool chck_a = false;
    bool chck_b = false;
};

// Exception combinations, keyed on the chck flags and the sign bits that
// distinguish the zero pattern (sign 0) from NaR (sign 1):
//   mul: zero * normal -> zero, normal * zero -> zero, NaR anywhere -> NaR
//   div: x / NaR -> zero (strict_nar restores NaR), NaR / y -> NaR,
//        x / 0 -> NaR, 0 / normal -> zero, 0 / 0 -> NaR, NaR / NaR -> NaR
ExcepFlags exception_detect(bool div, bool sign_a, bool chck_a, bool sign_b, bool chck_b,
                            bool strict_nar = false);

// Output scale: exponents plus the significand overflow carry in one
// adder, regimes in another, regime sum shifted left by ES and combined.
// Equals the plain sum of the two scales plus the carry.
int scale_add(const DecodedPosit& a, const DecodedPosit& b, int norm_carry);

struct ExecOptions {
    bool strict_nar = false;   // posit-standard semantics for x / NaR
    bool paper_round = false;  // round from the 13 retained product bits only
};

struct UnitOutput {
    PositWord word;
    ExcepFlags excep;
    int raw_scale = 0;          // pre-saturation scale
    uint64_t raw_frac_ext = 0;  // pre-rounding fraction, guard and sticky in bits 1..0
};

// The unified datapath: exact multiply when mode.div == 0, approximate
// divide via the corrected reciprocal when mode.div == 1. The corrected
// reciprocal fraction feeds the multiplier unrounded; a single rounding
// happens at encode.
UnitOutput execute(PositWord a, PositWord b, OpMode mode, const EcLut& lut,
                   ExecOptions opts = {});

}  // namespace pamd
