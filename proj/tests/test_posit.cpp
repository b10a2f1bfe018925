#include <cmath>

#include "doctest.h"
#include "pamd/posit.hpp"

using namespace pamd;

namespace {
const PositConfig p16 = make_config(16);
}

TEST_CASE("config invariants") {
    CHECK(p16.fb() == 11);
    CHECK(p16.max_scale() == 56);
    CHECK(make_config(32).fb() == 27);
    CHECK_THROWS_AS(make_config(7), std::invalid_argument);
    CHECK_THROWS_AS(make_config(33), std::invalid_argument);
}

TEST_CASE("decode identity and exception patterns") {
    const DecodedPosit one = decode(make_word(0x4000, p16));
    CHECK_FALSE(one.sign);
    CHECK(one.k == 0);
    CHECK(one.e == 0);
    CHECK(one.frac == 0);
    CHECK(one.scale == 0);
    CHECK_FALSE(one.chck);
    CHECK(one.sadd_cin);

    CHECK(decode(make_word(0x8000, p16)).chck);
    CHECK(decode(make_word(0x8000, p16)).sign);
    CHECK(decode(make_word(0x0000, p16)).chck);
    CHECK_FALSE(decode(make_word(0x0000, p16)).sign);

    // 0 10 10 0...0: regime k=0, exponent 2
    const DecodedPosit four = decode(make_word(0x5000, p16));
    CHECK(four.k == 0);
    CHECK(four.e == 2);
    CHECK(four.frac == 0);
    CHECK(four.scale == 2);
}

TEST_CASE("encode examples") {
    CHECK(encode(false, 0, 0, 0, p16).bits == 0x4000);
    // scale 5: regime k=1, exponent 1 -> 0 110 01 0000000000
    CHECK(encode(false, 5, 0, 0, p16).bits == 0x6400);
    CHECK(encode(false, 120, 0x3FF, 0, p16).bits == 0x7FFF);
    CHECK(encode(false, -1000, 1, 0, p16).bits == 0x0001);
    CHECK(encode(true, 0, 0, 0, p16).bits == 0xC000);
}

TEST_CASE("to_real examples") {
    CHECK(to_real(make_word(0x4000, p16)) == 1.0);
    CHECK(to_real(make_word(0xC000, p16)) == -1.0);
    CHECK(to_real(make_word(0x3800, p16)) == 0.5);
    CHECK(to_real(make_word(0x0000, p16)) == 0.0);
    CHECK(to_real(make_word(0x7FFF, p16)) == 0x1p56);
    CHECK(to_real(make_word(0x0001, p16)) == 0x1p-56);
    CHECK(std::isnan(to_real(make_word(0x8000, p16))));
    CHECK(to_real(make_word(0x4400, p16)) == 1.5);
}

TEST_CASE("roundtrip, dual formula, negation: all 65536 patterns") {
    for (uint32_t bits = 0; bits < 0x10000; ++bits) {
        const PositWord w = make_word(bits, p16);
        const DecodedPosit d = decode(w);
        if (d.chck) {
            CHECK((w.is_zero() || w.is_nar()));
            continue;
        }
        // decode -> encode identity with zero extension bits
        const PositWord back = encode(d.sign, d.scale, d.frac, 0, p16);
        REQUIRE(back.bits == bits);
        // raw-field evaluation agrees with the decoded-field evaluation exactly
        REQUIRE(dyadic_equal(value_from_raw_fields(w), value_from_decoded(d, p16)));
        // negation: value of the 2's complement is the negated value
        const PositWord neg = make_word(~bits + 1, p16);
        DyadicValue v = value_from_raw_fields(w);
        v.negative = !v.negative;
        REQUIRE(dyadic_equal(value_from_raw_fields(neg), v));
        // sadd_cin exactly flags a zero fraction
        REQUIRE(d.sadd_cin == (d.frac == 0));
        REQUIRE(d.k >= -15);
        REQUIRE(d.k <= 14);
    }
}

TEST_CASE("regime run length is shared by scales m and -m-1") {
    // underpins the lossless reciprocal fraction width
    auto run_length = [](int k) { return k >= 0 ? k + 2 : 1 - k; };
    for (int m = -56; m <= 56; ++m) {
        const int k1 = detail::floor_div4(m);
        const int k2 = detail::floor_div4(-m - 1);
        CHECK(run_length(k1) == run_length(k2));
    }
}

TEST_CASE("rounding: ties to even, saturation") {
    // 1 + 1024.5/2048 has guard set, sticky clear: tie -> even fraction 1024
    const PositWord tie = encode(false, 0, (1024u << 1) | 1, 1, p16);
    CHECK(tie.bits == encode(false, 0, 1024, 0, p16).bits);
    // guard + sticky rounds up
    const PositWord up = encode(false, 0, (1024u << 2) | 0b11, 2, p16);
    CHECK(up.bits == encode(false, 0, 1025, 0, p16).bits);
    // odd fraction tie rounds up to even
    const PositWord tie_odd = encode(false, 0, (1023u << 1) | 1, 1, p16);
    CHECK(tie_odd.bits == encode(false, 0, 1024, 0, p16).bits);
    // beyond maxpos saturates, never wraps to NaR
    CHECK(encode(false, 57, 2047, 0, p16).bits == 0x7FFF);
    CHECK(encode(true, 200, 0, 0, p16).bits == 0x8001);
    // below minpos saturates to minpos, never to zero
    CHECK(encode(false, -57, 0, 0, p16).bits == 0x0001);
    CHECK(encode(true, -60, 13, 0, p16).bits == 0xFFFF);
}

TEST_CASE("8-bit format roundtrips exhaustively") {
    const PositConfig p8 = make_config(8);
    CHECK(p8.fb() == 3);
    for (uint32_t bits = 0; bits < 0x100; ++bits) {
        const PositWord w = make_word(bits, p8);
        const DecodedPosit d = decode(w);
        if (d.chck) continue;
        REQUIRE(encode(d.sign, d.scale, d.frac, 0, p8).bits == bits);
        REQUIRE(dyadic_equal(value_from_raw_fields(w), value_from_decoded(d, p8)));
    }
}

TEST_CASE("32-bit format basics") {
    const PositConfig p32 = make_config(32);
    CHECK(to_real(make_word(0x40000000u, p32)) == 1.0);
    CHECK(to_real(make_word(0x38000000u, p32)) == 0.5);
    for (uint32_t bits : {0x40000001u, 0x7FFFFFFFu, 0x00000001u, 0x9234ABCDu, 0x5A5A5A5Au}) {
        const PositWord w = make_word(bits, p32);
        const DecodedPosit d = decode(w);
        REQUIRE_FALSE(d.chck);
        CHECK(encode(d.sign, d.scale, d.frac, 0, p32).bits == bits);
        CHECK(dyadic_equal(value_from_raw_fields(w), value_from_decoded(d, p32)));
    }
}
