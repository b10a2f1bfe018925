#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "pamd/posit.hpp"

namespace pamd {

// Sample point of each address interval when tabulating the correction.
// left_edge keeps entry 0 at zero, which preserves exact reciprocals for
// power-of-two inputs; midpoint is kept for comparison sweeps.
enum class LutSampling { left_edge, midpoint };

// Error-correction table subtracted from the complemented fraction during
// reciprocal computation. Entries are fb-2 bits wide and addressed by the
// top msb_bits of the divisor fraction. msb_bits == 0 disables correction
// (a single zero entry). Entries are stored uncomplemented; a hardware
// subtractor would precomplement them, with no observable difference.
struct EcLut {
    int msb_bits = 5;
    int entry_width = 9;
    std::vector<uint32_t> entries;
    PositConfig config;
    LutSampling sampling = LutSampling::left_edge;

    size_t byte_size() const { return entries.size() * size_t(entry_width) / 8; }
};

// f(1-f)/(1+f) * 2^fb, the correction that zeroes the linearization error.
double ec_exact(double f, int fb);

EcLut build_ec_lut(PositConfig cfg, int msb_bits, LutSampling sampling = LutSampling::left_edge);

// One entry per line, lowercase hex, zero-padded to ceil(W/4) digits,
// after a "# posit N=<n> ES=2 FB=<fb> A=<a> W=<w>" header.
void dump_lut(const EcLut& lut, std::ostream& os);
EcLut parse_lut(std::istream& is);

struct ReciprocalResult {
    DecodedPosit decoded;  // corrected sign/scale/fraction, full fb precision
    PositWord word;        // re-encoded standalone form
};

// Approximate reciprocal: 2's complement of the magnitude payload, decode,
// subtract the EC entry addressed by the original-magnitude fraction MSBs.
// Exact whenever the input fraction is zero. Input must be neither zero
// nor NaR.
ReciprocalResult approx_reciprocal(PositWord word, const EcLut& lut);

// Relative error of the significand-level reciprocal for fraction f when
// an integer correction ec_applied is used: -f(1-f)/2 + ec_applied*(1+f)/2^(fb+1).
double rel_error_analytic(double f, double ec_applied, int fb);

struct NrResult {
    uint64_t value = 0;     // fixed-point reciprocal estimate
    bool converged = true;  // false when an iterate left the (0, 2/d) region
};

// Newton-Raphson steps X <- X*(2 - D*X) in fixed point with frac_bits
// fractional bits; d is the divisor significand in [1, 2).
NrResult nr_refine(uint64_t x_est, uint64_t d, int iters, int frac_bits);

}  // namespace pamd
