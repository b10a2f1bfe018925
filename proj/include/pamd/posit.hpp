#pragma once

#include <cstdint>
#include <stdexcept>

namespace pamd {

// Posit<N,2> format parameters. ES is fixed to 2 by the ratified posit
// standard, so the fraction field tops out at N-5 bits (one sign bit, at
// least two regime bits, two exponent bits).
struct PositConfig {
    int n_bits = 16;

    static constexpr int es = 2;

    constexpr int fb() const { return n_bits - 5; }
    constexpr int max_scale() const { return 4 * (n_bits - 2); }

    constexpr uint32_t word_mask() const {
        return n_bits == 32 ? 0xFFFFFFFFu : ((1u << n_bits) - 1u);
    }
    constexpr uint32_t sign_mask() const { return 1u << (n_bits - 1); }
    constexpr uint32_t payload_mask() const { return sign_mask() - 1u; }

    constexpr uint32_t zero_bits() const { return 0; }
    constexpr uint32_t nar_bits() const { return sign_mask(); }
    constexpr uint32_t maxpos_bits() const { return payload_mask(); }
    constexpr uint32_t minpos_bits() const { return 1; }

    bool operator==(const PositConfig&) const = default;
};

// Throws unless 8 <= n_bits <= 32.
PositConfig make_config(int n_bits);

struct PositWord {
    uint32_t bits = 0;
    PositConfig config;

    bool is_zero() const { return bits == 0; }
    bool is_nar() const { return bits == config.nar_bits(); }
    bool operator==(const PositWord&) const = default;
};

inline PositWord make_word(uint32_t bits, PositConfig cfg) {
    return PositWord{bits & cfg.word_mask(), cfg};
}

// Fields after sign preprocessing (2's complement of the lower N-1 bits
// when the sign bit is set). scale == 4*k + e. chck flags the two
// exception patterns (zero, NaR); the numeric fields are meaningless when
// it is set. sadd_cin reports an all-zero fraction field.
struct DecodedPosit {
    bool sign = false;
    int k = 0;
    int e = 0;
    uint32_t frac = 0;  // left-aligned to fb bits
    int scale = 0;
    bool chck = false;
    bool sadd_cin = false;
};

DecodedPosit decode(PositWord word);

// Round-to-nearest-even encoder, saturating at maxpos/minpos (never at
// zero or NaR). frac_ext carries the fb fraction bits with ext_bits
// guard/round/sticky bits below them; ext_bits == 0 encodes exactly.
PositWord encode(bool sign, int scale, uint64_t frac_ext, int ext_bits, PositConfig cfg);

// Exact signed dyadic value: (negative ? -1 : 1) * magnitude * 2^exp2.
struct DyadicValue {
    bool negative = false;
    uint64_t magnitude = 0;
    int exp2 = 0;
};

DyadicValue dyadic_normalize(DyadicValue v);
bool dyadic_equal(DyadicValue a, DyadicValue b);
double dyadic_to_double(DyadicValue v);

// Value from the raw, pre-complement fields: (1 - 3s + f) * 2^((1-2s)(4k+e+s)).
// The zero pattern yields magnitude 0; NaR throws.
DyadicValue value_from_raw_fields(PositWord word);

// Value from the decoded fields: (1 - 2s) * (1 + f) * 2^(4k+e).
DyadicValue value_from_decoded(const DecodedPosit& dec, PositConfig cfg);

// Real value of a word; the zero pattern returns 0.0 and NaR returns NaN.
double to_real(PositWord word);

namespace detail {

int floor_div4(int x);

// 2's complement of the lower N-1 bits.
uint32_t complement_payload(uint32_t payload, PositConfig cfg);

struct RawFields {
    int k = 0;
    int e = 0;
    uint32_t frac = 0;
};

// Regime/exponent/fraction extraction on a nonzero N-1 bit payload.
// Exponent bits cut off by a long regime read as zero; the fraction is
// left-aligned to fb bits.
RawFields extract_fields(uint32_t payload, PositConfig cfg);

PositWord encode_core(bool sign, int scale, uint64_t frac, bool guard, bool sticky,
                      PositConfig cfg);

}  // namespace detail

}  // namespace pamd
