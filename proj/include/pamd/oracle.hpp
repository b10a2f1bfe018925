#pragma once

#include <cstdint>
#include <vector>

#include "pamd/posit.hpp"

namespace pamd {

// Round an exact dyadic value to the nearest posit (nearest-even in the
// bit encoding, saturating). extra_sticky ORs into the sticky bit, for
// callers tracking a nonzero remainder below the magnitude.
PositWord round_to_posit(DyadicValue v, PositConfig cfg, bool extra_sticky = false);

// Correctly rounded product; exception semantics per the posit standard
// (any NaR operand gives NaR, otherwise a zero operand gives zero).
PositWord exact_mul(PositWord a, PositWord b);

// Correctly rounded quotient via long division with a sticky remainder
// (a single rounding). Zero or NaR divisors give NaR.
PositWord exact_div(PositWord a, PositWord b);

// Reciprocal seed of the iterative baseline divider: the quantized
// reciprocal of 1 + f sampled once per address interval. Returned as a
// real in (0.5, 1].
double pacogen_seed(uint32_t frac, int fb, int seed_addr_bits);

// Baseline divider flow: seed LUT, nr_iters Newton-Raphson refinements,
// round the reciprocal to fb fraction bits, multiply by the dividend
// significand and round again (two roundings).
PositWord pacogen_divide(PositWord a, PositWord b, int seed_addr_bits, int nr_iters);

// Distance in the monotone ordering of posit bit patterns (words read as
// 2's complement integers). Throws on NaR.
int64_t ulp_distance(PositWord x, PositWord y);

// Every word of a small-format posit sorted by value: the brute-force
// referee for rounded results. Rounding decisions between neighbors use
// the interleaved <N+1,2> value as the tie boundary, matching the
// encoder's nearest-even convention.
class PositTable {
public:
    explicit PositTable(PositConfig cfg);

    // Nearest posit to the exact rational sign * (num / den) * 2^exp2.
    PositWord nearest(bool negative, uint64_t num, uint64_t den, int exp2) const;

    const std::vector<PositWord>& sorted_words() const { return words_; }

private:
    PositConfig cfg_;
    std::vector<PositWord> words_;     // sorted by value
    std::vector<DyadicValue> values_;  // parallel to words_
};

}  // namespace pamd
