#include "pamd/oracle.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "pamd/recip.hpp"

namespace pamd {

PositWord round_to_posit(DyadicValue v, PositConfig cfg, bool extra_sticky) {
    if (v.magnitude == 0) {
        // A nonzero remainder below an all-zero magnitude still rounds to
        // minpos; exact zero stays zero.
        return make_word(extra_sticky ? cfg.minpos_bits() : cfg.zero_bits(), cfg);
    }
    const int msb = 63 - std::countl_zero(v.magnitude);
    const int scale = v.exp2 + msb;
    const int fb = cfg.fb();
    const uint64_t below = v.magnitude ^ (uint64_t(1) << msb);
    uint64_t frac;
    bool g, s;
    if (msb <= fb) {
        frac = below << (fb - msb);
        g = false;
        s = extra_sticky;
    } else {
        const int shift = msb - fb;
        frac = below >> shift;
        const uint64_t dropped = below & ((uint64_t(1) << shift) - 1);
        g = (dropped >> (shift - 1)) & 1;
        s = (dropped & ((uint64_t(1) << (shift - 1)) - 1)) != 0 || extra_sticky;
    }
    return detail::encode_core(v.negative, scale, frac, g, s, cfg);
}

PositWord exact_mul(PositWord a, PositWord b) {
    const PositConfig cfg = a.config;
    if (!(b.config == cfg)) throw std::invalid_argument("operand configs differ");
    if (a.is_nar() || b.is_nar()) return make_word(cfg.nar_bits(), cfg);
    if (a.is_zero() || b.is_zero()) return make_word(cfg.zero_bits(), cfg);
    const DecodedPosit da = decode(a), db = decode(b);
    const int fb = cfg.fb();
    const uint64_t sig_a = (uint64_t(1) << fb) + da.frac;
    const uint64_t sig_b = (uint64_t(1) << fb) + db.frac;
    return round_to_posit({da.sign != db.sign, sig_a * sig_b, da.scale + db.scale - 2 * fb},
                          cfg);
}

PositWord exact_div(PositWord a, PositWord b) {
    const PositConfig cfg = a.config;
    if (!(b.config == cfg)) throw std::invalid_argument("operand configs differ");
    if (a.is_nar() || b.is_nar() || b.is_zero()) return make_word(cfg.nar_bits(), cfg);
    if (a.is_zero()) return make_word(cfg.zero_bits(), cfg);
    const DecodedPosit da = decode(a), db = decode(b);
    const int fb = cfg.fb();
    const uint64_t sig_a = (uint64_t(1) << fb) + da.frac;
    const uint64_t sig_b = (uint64_t(1) << fb) + db.frac;
    // Quotient to fb+3 bits below the leading one, remainder kept sticky.
    const int sh = fb + 3;
    const uint64_t numer = sig_a << sh;
    const uint64_t q = numer / sig_b;
    const uint64_t rem = numer % sig_b;
    return round_to_posit({da.sign != db.sign, q, da.scale - db.scale - sh}, cfg, rem != 0);
}

namespace {

// Seed table shape chosen to reproduce the published accuracy of the
// baseline's seed (mean relative error ~0.61% at 8 address bits): entries
// sample the reciprocal at the lower edge of each fraction interval and
// keep 6 fractional bits, rounded to nearest. The edge sample leaves
// power-of-two divisors exact.
constexpr int kSeedEntryFracBits = 6;

}  // namespace

double pacogen_seed(uint32_t frac, int fb, int seed_addr_bits) {
    if (seed_addr_bits < 1 || seed_addr_bits > fb) {
        throw std::invalid_argument("seed_addr_bits out of range");
    }
    const uint32_t addr = frac >> (fb - seed_addr_bits);
    const double f = double(addr) / double(1u << seed_addr_bits);
    const double scale = double(1u << kSeedEntryFracBits);
    return std::round(scale / (1.0 + f)) / scale;
}

PositWord pacogen_divide(PositWord a, PositWord b, int seed_addr_bits, int nr_iters) {
    const PositConfig cfg = a.config;
    if (!(b.config == cfg)) throw std::invalid_argument("operand configs differ");
    if (a.is_nar() || b.is_nar() || b.is_zero()) return make_word(cfg.nar_bits(), cfg);
    if (a.is_zero()) return make_word(cfg.zero_bits(), cfg);
    const DecodedPosit da = decode(a), db = decode(b);
    const int fb = cfg.fb();
    const int qbits = 2 * fb + 2;

    const uint64_t d_fix = ((uint64_t(1) << fb) + db.frac) << (qbits - fb);
    uint64_t x_fix =
        uint64_t(std::llround(pacogen_seed(db.frac, fb, seed_addr_bits) * std::exp2(qbits)));
    x_fix = nr_refine(x_fix, d_fix, nr_iters, qbits).value;

    // First rounding: reciprocal to fb fraction bits.
    uint64_t sig_r;
    int scale_r;
    if (x_fix >= (uint64_t(1) << qbits)) {
        sig_r = uint64_t(1) << fb;
        scale_r = -db.scale;
    } else {
        // x in (0.5, 1): significand 2x - 1, scale -m - 1
        uint64_t fr = 2 * x_fix - (uint64_t(1) << qbits);  // qbits fraction bits
        const int drop = qbits - fb;
        uint64_t kept = fr >> drop;
        const uint64_t dropped = fr & ((uint64_t(1) << drop) - 1);
        const bool g = (dropped >> (drop - 1)) & 1;
        const bool s = (dropped & ((uint64_t(1) << (drop - 1)) - 1)) != 0;
        if (g && (s || (kept & 1))) kept += 1;
        if (kept >> fb) {
            sig_r = uint64_t(1) << fb;  // rounded up to 2.0: back to a power of two
            scale_r = -db.scale;
        } else {
            sig_r = (uint64_t(1) << fb) + kept;
            scale_r = -db.scale - 1;
        }
    }

    // Second rounding: dividend significand times rounded reciprocal.
    const uint64_t sig_a = (uint64_t(1) << fb) + da.frac;
    return round_to_posit({da.sign != db.sign, sig_a * sig_r, da.scale + scale_r - 2 * fb},
                          cfg);
}

namespace {

int32_t word_order_key(PositWord w) {
    const int sh = 32 - w.config.n_bits;
    return int32_t(w.bits << sh) >> sh;  // sign-extended pattern, monotone in value
}

}  // namespace

int64_t ulp_distance(PositWord x, PositWord y) {
    if (!(x.config == y.config)) throw std::invalid_argument("operand configs differ");
    if (x.is_nar() || y.is_nar()) throw std::invalid_argument("ulp distance undefined for NaR");
    return int64_t(word_order_key(x)) - int64_t(word_order_key(y));
}

PositTable::PositTable(PositConfig cfg) : cfg_(cfg) {
    if (cfg.n_bits > 20) throw std::invalid_argument("table too large for this word size");
    const uint32_t count = 1u << cfg.n_bits;
    words_.reserve(count - 1);
    for (uint32_t bits = 0; bits < count; ++bits) {
        PositWord w = make_word(bits, cfg);
        if (w.is_nar()) continue;
        words_.push_back(w);
    }
    std::sort(words_.begin(), words_.end(), [](PositWord a, PositWord b) {
        return word_order_key(a) < word_order_key(b);
    });
    values_.reserve(words_.size());
    for (PositWord w : words_) values_.push_back(value_from_raw_fields(w));
}

namespace {

// Compare sign*num/den*2^exp2 against a dyadic value, exactly.
int cmp_rational_dyadic(bool neg, uint64_t num, uint64_t den, int exp2, DyadicValue v) {
    if (num == 0) {
        if (v.magnitude == 0) return 0;
        return v.negative ? 1 : -1;
    }
    if (v.magnitude == 0) return neg ? -1 : 1;
    if (neg != v.negative) return neg ? -1 : 1;
    const int flip = neg ? -1 : 1;
    const int d = exp2 - v.exp2;
    // num * 2^d  vs  mag * den; both sides below 2^90, shifts clamped.
    if (d > 100) return flip;
    if (d < -100) return -flip;
    unsigned __int128 lhs = num;
    unsigned __int128 rhs = (unsigned __int128)v.magnitude * den;
    if (d >= 0) lhs <<= d;
    else rhs <<= -d;
    if (lhs < rhs) return -flip;
    if (lhs > rhs) return flip;
    return 0;
}

}  // namespace

PositWord PositTable::nearest(bool negative, uint64_t num, uint64_t den, int exp2) const {
    if (den == 0) throw std::invalid_argument("zero denominator");
    // Binary search for the first table value >= x.
    size_t lo = 0, hi = values_.size();
    while (lo < hi) {
        const size_t mid = lo + (hi - lo) / 2;
        if (cmp_rational_dyadic(negative, num, den, exp2, values_[mid]) <= 0) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    if (lo == values_.size()) return words_.back();  // beyond maxpos
    if (cmp_rational_dyadic(negative, num, den, exp2, values_[lo]) == 0) return words_[lo];
    if (lo == 0) return words_.front();  // below -maxpos
    const PositWord down = words_[lo - 1], up = words_[lo];
    // Tie boundary: the value interleaved between the neighbors in the
    // next-wider format.
    const PositConfig cfg17 = make_config(cfg_.n_bits + 1);
    const int32_t key17 = word_order_key(down) * 2 + 1;
    const PositWord boundary = make_word(uint32_t(key17) & cfg17.word_mask(), cfg17);
    const int c = cmp_rational_dyadic(negative, num, den, exp2, value_from_raw_fields(boundary));
    PositWord chosen;
    if (c < 0) {
        chosen = down;
    } else if (c > 0) {
        chosen = up;
    } else {
        chosen = (down.bits & 1) == 0 ? down : up;
    }
    if (chosen.is_zero() && num != 0) {
        // Nonzero reals never round to zero.
        return make_word(negative ? cfg_.word_mask() : cfg_.minpos_bits(), cfg_);
    }
    return chosen;
}

}  // namespace pamd
