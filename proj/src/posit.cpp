#include "pamd/posit.hpp"

#include <bit>
#include <cmath>
#include <limits>

namespace pamd {

PositConfig make_config(int n_bits) {
    if (n_bits < 8 || n_bits > 32) {
        throw std::invalid_argument("posit word size must be in [8, 32]");
    }
    return PositConfig{n_bits};
}

namespace detail {

int floor_div4(int x) { return (x >= 0) ? x / 4 : -((-x + 3) / 4); }

uint32_t complement_payload(uint32_t payload, PositConfig cfg) {
    return (~payload + 1u) & cfg.payload_mask();
}

RawFields extract_fields(uint32_t payload, PositConfig cfg) {
    const int nb = cfg.n_bits - 1;  // payload width
    const int fb = cfg.fb();
    // Left-justify in 32 bits so shifted-in zeros model the standard's
    // zero padding for fields cut off by the regime.
    const uint32_t top = payload << (32 - nb);
    int k, rs;
    if (top >> 31) {
        int ones = std::countl_one(top);
        if (ones >= nb) {
            ones = nb;
            rs = nb;  // run reaches the end of the word, no terminator
        } else {
            rs = ones + 1;
        }
        k = ones - 1;
    } else {
        const int zeros = std::countl_zero(top);  // < nb, payload != 0
        rs = zeros + 1;
        k = -zeros;
    }
    const uint32_t tail = (rs < 32) ? (top << rs) : 0;
    RawFields out;
    out.k = k;
    out.e = int(tail >> 30);
    out.frac = (tail << 2) >> (32 - fb);
    return out;
}

PositWord encode_core(bool sign, int scale, uint64_t frac, bool guard, bool sticky,
                      PositConfig cfg) {
    const int fb = cfg.fb();
    if (frac >> fb) throw std::invalid_argument("fraction wider than the format allows");
    uint32_t payload;
    if (scale > cfg.max_scale()) {
        payload = cfg.maxpos_bits();
    } else if (scale < -cfg.max_scale()) {
        payload = cfg.minpos_bits();
    } else {
        const int k = floor_div4(scale);
        const int e = scale - 4 * k;
        const int rs = (k >= 0) ? k + 2 : 1 - k;
        const uint64_t regime = (k >= 0) ? (((uint64_t(1) << (k + 1)) - 1) << 1) : 1;
        // Bit string [regime rs][e 2][frac fb][guard][sticky]; the top
        // N-1 bits become the payload, the rest round it.
        const uint64_t big = (regime << (fb + 4)) | (uint64_t(e) << (fb + 2)) | (frac << 2) |
                             (uint64_t(guard) << 1) | uint64_t(sticky);
        const int cut = rs;  // string width is rs + (N-1)
        payload = uint32_t(big >> cut);
        const uint64_t dropped = big & ((uint64_t(1) << cut) - 1);
        const bool g = (dropped >> (cut - 1)) & 1;
        const bool s = (dropped & ((uint64_t(1) << (cut - 1)) - 1)) != 0;
        if (g && (s || (payload & 1))) payload += 1;
        if (payload > cfg.maxpos_bits()) payload = cfg.maxpos_bits();
        if (payload == 0) payload = cfg.minpos_bits();
    }
    const uint32_t bits = sign ? ((~payload + 1u) & cfg.word_mask()) : payload;
    return PositWord{bits, cfg};
}

}  // namespace detail

DecodedPosit decode(PositWord word) {
    const PositConfig cfg = word.config;
    DecodedPosit out;
    out.sign = (word.bits & cfg.sign_mask()) != 0;
    if (word.is_zero() || word.is_nar()) {
        out.chck = true;
        return out;
    }
    uint32_t payload = word.bits & cfg.payload_mask();
    if (out.sign) payload = detail::complement_payload(payload, cfg);
    const auto f = detail::extract_fields(payload, cfg);
    out.k = f.k;
    out.e = f.e;
    out.frac = f.frac;
    out.scale = 4 * f.k + f.e;
    out.sadd_cin = (f.frac == 0);
    return out;
}

PositWord encode(bool sign, int scale, uint64_t frac_ext, int ext_bits, PositConfig cfg) {
    if (ext_bits < 0 || ext_bits > 32) throw std::invalid_argument("ext_bits out of range");
    const uint64_t frac = frac_ext >> ext_bits;
    const bool guard = ext_bits > 0 && ((frac_ext >> (ext_bits - 1)) & 1);
    const bool sticky =
        ext_bits > 1 && (frac_ext & ((uint64_t(1) << (ext_bits - 1)) - 1)) != 0;
    return detail::encode_core(sign, scale, frac, guard, sticky, cfg);
}

DyadicValue dyadic_normalize(DyadicValue v) {
    if (v.magnitude == 0) return DyadicValue{};
    while ((v.magnitude & 1) == 0) {
        v.magnitude >>= 1;
        v.exp2 += 1;
    }
    return v;
}

bool dyadic_equal(DyadicValue a, DyadicValue b) {
    a = dyadic_normalize(a);
    b = dyadic_normalize(b);
    return a.negative == b.negative && a.magnitude == b.magnitude && a.exp2 == b.exp2;
}

double dyadic_to_double(DyadicValue v) {
    const double hi = std::ldexp(double(v.magnitude >> 32), v.exp2 + 32);
    const double lo = std::ldexp(double(v.magnitude & 0xFFFFFFFFu), v.exp2);
    const double mag = hi + lo;
    return v.negative ? -mag : mag;
}

DyadicValue value_from_raw_fields(PositWord word) {
    if (word.is_nar()) throw std::invalid_argument("NaR has no real value");
    if (word.is_zero()) return DyadicValue{};
    const PositConfig cfg = word.config;
    const bool s = (word.bits & cfg.sign_mask()) != 0;
    const auto f = detail::extract_fields(word.bits & cfg.payload_mask(), cfg);
    const int fb = cfg.fb();
    const int m = 4 * f.k + f.e;
    if (!s) {
        return dyadic_normalize({false, (uint64_t(1) << fb) + f.frac, m - fb});
    }
    // (1 - 3 + f) * 2^(-(4k+e+1)) == -(2 - f) * 2^(-(m+1))
    return dyadic_normalize({true, (uint64_t(1) << (fb + 1)) - f.frac, -(m + 1) - fb});
}

DyadicValue value_from_decoded(const DecodedPosit& dec, PositConfig cfg) {
    if (dec.chck) throw std::invalid_argument("decoded exception has no numeric value");
    const int fb = cfg.fb();
    return dyadic_normalize({dec.sign, (uint64_t(1) << fb) + dec.frac, dec.scale - fb});
}

double to_real(PositWord word) {
    if (word.is_nar()) return std::numeric_limits<double>::quiet_NaN();
    return dyadic_to_double(value_from_raw_fields(word));
}

}  // namespace pamd
