#include <cmath>
#include <sstream>

#include "doctest.h"
#include "pamd/oracle.hpp"
#include "pamd/recip.hpp"

using namespace pamd;

namespace {
const PositConfig p16 = make_config(16);
const PositConfig p32 = make_config(32);
}

TEST_CASE("ec_exact formula") {
    CHECK(ec_exact(0.0, 11) == 0.0);
    CHECK(ec_exact(0.5, 11) == doctest::Approx(1024.0 / 3.0).epsilon(1e-12));  // 341.333...
    // the maximum sits at f = sqrt(2) - 1 with value (3 - 2*sqrt(2)) * 2^fb
    const double argmax = std::sqrt(2.0) - 1.0;
    const double peak = (3.0 - 2.0 * std::sqrt(2.0)) * 2048.0;
    CHECK(ec_exact(argmax, 11) == doctest::Approx(peak).epsilon(1e-12));
    double scan_max = 0.0;
    uint32_t scan_arg = 0;
    for (uint32_t f = 0; f < 2048; ++f) {
        const double v = ec_exact(f / 2048.0, 11);
        if (v > scan_max) {
            scan_max = v;
            scan_arg = f;
        }
    }
    CHECK(scan_max <= peak);
    CHECK(scan_max == doctest::Approx(peak).epsilon(1e-3));
    CHECK(std::fabs(scan_arg / 2048.0 - argmax) < 1.0 / 2048.0);
}

TEST_CASE("EC LUT construction and sizes") {
    const EcLut l16a5 = build_ec_lut(p16, 5);
    CHECK(l16a5.entries.size() == 32);
    CHECK(l16a5.entry_width == 9);
    CHECK(l16a5.byte_size() == 36);
    CHECK(l16a5.entries[0] == 0);
    // round(ec_exact(16/32)) with the edge sample = round(341.33) = 341
    CHECK(l16a5.entries[16] == 341);
    // last interval: round(ec_exact(31/32)) = round(31.49) = 31
    CHECK(l16a5.entries[31] == 31);

    CHECK(build_ec_lut(p16, 8).byte_size() == 288);
    CHECK(build_ec_lut(p32, 5).byte_size() == 100);
    CHECK(build_ec_lut(p32, 8).byte_size() == 800);

    // every entry fits in fb-2 bits, bounded by the analytic peak
    for (const PositConfig& cfg : {p16, p32}) {
        for (int bits : {5, 8}) {
            const EcLut lut = build_ec_lut(cfg, bits);
            const uint32_t analytic =
                uint32_t(std::ceil((3.0 - 2.0 * std::sqrt(2.0)) * std::exp2(cfg.fb())));
            for (uint32_t e : lut.entries) {
                REQUIRE(e <= analytic);
                REQUIRE(e < (1u << (cfg.fb() - 2)));
            }
        }
    }

    // midpoint sampling shifts the sample half an interval up
    const EcLut mid = build_ec_lut(p16, 5, LutSampling::midpoint);
    CHECK(mid.entries[0] == 31);  // round(ec_exact(1/64)) = round(31.01)

    // no-correction table
    const EcLut none = build_ec_lut(p16, 0);
    CHECK(none.entries.size() == 1);
    CHECK(none.entries[0] == 0);
}

TEST_CASE("LUT dump round-trips") {
    const EcLut lut = build_ec_lut(p16, 5);
    std::stringstream ss;
    dump_lut(lut, ss);
    std::string first;
    std::getline(ss, first);
    CHECK(first == "# posit N=16 ES=2 FB=11 A=5 W=9");
    std::string second;
    std::getline(ss, second);
    CHECK(second == "000");  // 3 hex digits for 9-bit entries
    ss.clear();
    ss.seekg(0);
    const EcLut back = parse_lut(ss);
    CHECK(back.entries == lut.entries);
    CHECK(back.msb_bits == lut.msb_bits);
    CHECK(back.entry_width == lut.entry_width);
    CHECK(back.config == lut.config);
}

TEST_CASE("approx_reciprocal examples") {
    const EcLut lut = build_ec_lut(p16, 5);
    CHECK(approx_reciprocal(make_word(0x4000, p16), lut).word.bits == 0x4000);  // 1/1
    CHECK(approx_reciprocal(make_word(0x4800, p16), lut).word.bits == 0x3800);  // 1/2
    CHECK(approx_reciprocal(make_word(0x5000, p16), lut).word.bits == 0x3000);  // 1/4

    // 1.5 -> corrected fraction 2048 - 1024 - 341 = 683, scale -1
    const ReciprocalResult r = approx_reciprocal(make_word(0x4400, p16), lut);
    CHECK(r.decoded.frac == 683);
    CHECK(r.decoded.scale == -1);
    CHECK(dyadic_to_double(value_from_decoded(r.decoded, p16)) ==
          doctest::Approx(0.666748046875).epsilon(1e-12));

    CHECK_THROWS_AS(approx_reciprocal(make_word(0x0000, p16), lut), std::invalid_argument);
    CHECK_THROWS_AS(approx_reciprocal(make_word(0x8000, p16), lut), std::invalid_argument);
}

TEST_CASE("reciprocal is exact on power-of-two inputs") {
    const EcLut lut = build_ec_lut(p16, 5);
    const PositWord one = make_word(0x4000, p16);
    for (uint32_t bits = 1; bits < 0x10000; ++bits) {
        const PositWord w = make_word(bits, p16);
        if (w.is_nar()) continue;
        const DecodedPosit d = decode(w);
        if (d.frac != 0) continue;
        const ReciprocalResult r = approx_reciprocal(w, lut);
        REQUIRE(r.word == exact_div(one, w));
        REQUIRE(r.decoded.scale == -d.scale);
        REQUIRE(r.decoded.frac == 0);
    }
}

TEST_CASE("reciprocal scale identity and range over all inputs") {
    const EcLut lut = build_ec_lut(p16, 5);
    for (uint32_t bits = 1; bits < 0x10000; ++bits) {
        const PositWord w = make_word(bits, p16);
        if (w.is_nar()) continue;
        const DecodedPosit d = decode(w);
        const ReciprocalResult r = approx_reciprocal(w, lut);
        // corrected significand stays normalized
        REQUIRE(r.decoded.frac < (1u << 11));
        if (d.frac != 0) {
            // scale -m-1, or -m-2 when the sampled entry overshoots near f=1
            REQUIRE((r.decoded.scale == -d.scale - 1 || r.decoded.scale == -d.scale - 2));
        } else {
            REQUIRE(r.decoded.scale == -d.scale);
        }
    }
}

TEST_CASE("reciprocal sign antisymmetry at the word level") {
    const EcLut lut = build_ec_lut(p16, 5);
    for (uint32_t bits = 1; bits < 0x8000; ++bits) {
        const PositWord pos = make_word(bits, p16);
        const PositWord neg = make_word(~bits + 1, p16);
        const uint32_t rp = approx_reciprocal(pos, lut).word.bits;
        const uint32_t rn = approx_reciprocal(neg, lut).word.bits;
        REQUIRE(rn == ((~rp + 1) & 0xFFFF));
    }
}

TEST_CASE("rel_error_analytic matches the direct computation") {
    CHECK(rel_error_analytic(0.0, 0.0, 11) == 0.0);
    CHECK(rel_error_analytic(0.5, 0.0, 11) == doctest::Approx(-0.125).epsilon(1e-12));
    // cross-check against (exact - approx) / exact at f = 0.5, no correction
    const double exact = 1.0 / 1.5;
    const double approx = (2.0 - 0.5) / 2.0;
    CHECK(rel_error_analytic(0.5, 0.0, 11) == doctest::Approx((exact - approx) / exact));
    // mean magnitude over all fractions with no correction: 1/12
    double sum = 0.0;
    for (uint32_t f = 0; f < 2048; ++f) sum += std::fabs(rel_error_analytic(f / 2048.0, 0.0, 11));
    CHECK(100.0 * sum / 2048.0 == doctest::Approx(8.3333).epsilon(2e-4));
    // with the applied integer correction it reproduces the sweep error exactly
    const EcLut lut = build_ec_lut(p16, 5);
    for (uint32_t f = 1; f < 2048; f += 37) {
        const double fr = f / 2048.0;
        const double ec = lut.entries[f >> 6];
        const double ex = 1.0 / (1.0 + fr);
        const double ap = (2.0 - fr - ec / 2048.0) / 2.0;
        REQUIRE(rel_error_analytic(fr, ec, 11) == doctest::Approx((ex - ap) / ex).epsilon(1e-10));
    }
}

TEST_CASE("nr_refine fixed point and quadratic convergence") {
    const int qbits = 24;
    const uint64_t one = uint64_t(1) << qbits;
    // x = 1/d exactly stays put: d = 2.0 representable, x = 0.5
    const NrResult fp = nr_refine(one / 2, 2 * one, 3, qbits);
    CHECK(fp.converged);
    CHECK(fp.value == one / 2);

    // d = 1.5, x0 = 0.66675 -> one step lands near 2/3 with ~1.5e-8 error
    const uint64_t d = (3 * one) / 2;
    const uint64_t x0 = uint64_t(std::llround(0.66675 * double(one)));
    const NrResult r1 = nr_refine(x0, d, 1, qbits);
    CHECK(r1.converged);
    const double v1 = std::ldexp(double(r1.value), -qbits);
    // ~1.5e-8 in real arithmetic plus up to one fixed-point quantum
    CHECK(std::fabs(v1 - 2.0 / 3.0) / (2.0 / 3.0) < 1.2e-7);

    // relative error roughly squares per step over a sweep of seeds
    for (uint32_t f = 1; f < 2048; f += 2) {
        const uint64_t dq = (uint64_t(2048 + f)) << (qbits - 11);
        const double exact = 2048.0 / (2048.0 + f);
        const double seed_err = 0.004;  // a seed off by ~0.4%
        const uint64_t x = uint64_t(std::llround(exact * (1.0 - seed_err) * double(one)));
        const NrResult r = nr_refine(x, dq, 1, qbits);
        REQUIRE(r.converged);
        const double err = std::fabs(std::ldexp(double(r.value), -qbits) - exact) / exact;
        REQUIRE(err < 2.0 * seed_err * seed_err + 1e-6);
    }

    // divergent estimates are flagged
    CHECK_FALSE(nr_refine(3 * one, 2 * one, 1, qbits).converged);
    CHECK_FALSE(nr_refine(0, one, 1, qbits).converged);
}
