#include "pamd/recip.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <string>

namespace pamd {

double ec_exact(double f, int fb) {
    if (f < 0.0 || f >= 1.0) throw std::invalid_argument("fraction must lie in [0, 1)");
    return f * (1.0 - f) / (1.0 + f) * double(uint64_t(1) << fb);
}

EcLut build_ec_lut(PositConfig cfg, int msb_bits, LutSampling sampling) {
    if (msb_bits < 0 || msb_bits > cfg.fb()) {
        throw std::invalid_argument("msb_bits must lie in [0, fb]");
    }
    EcLut lut;
    lut.msb_bits = msb_bits;
    lut.entry_width = cfg.fb() - 2;
    lut.config = cfg;
    lut.sampling = sampling;
    const int64_t count = int64_t(1) << msb_bits;
    lut.entries.resize(size_t(count));
    for (int64_t j = 0; j < count; ++j) {
        // round(f(1-f)/(1+f) * 2^fb) at the sample point f = p/q, done in
        // exact integers: p(q-p)*2^fb / (q(q+p)), round half up.
        int64_t p, q;
        if (sampling == LutSampling::left_edge) {
            p = j;
            q = count;
        } else {
            p = 2 * j + 1;
            q = 2 * count;
        }
        const __int128 num = (__int128(p) * (q - p)) << cfg.fb();
        const __int128 den = __int128(q) * (q + p);
        lut.entries[size_t(j)] = uint32_t((2 * num + den) / (2 * den));
    }
    return lut;
}

void dump_lut(const EcLut& lut, std::ostream& os) {
    os << "# posit N=" << lut.config.n_bits << " ES=2 FB=" << lut.config.fb()
       << " A=" << lut.msb_bits << " W=" << lut.entry_width << "\n";
    const int digits = (lut.entry_width + 3) / 4;
    char buf[16];
    for (uint32_t entry : lut.entries) {
        std::snprintf(buf, sizeof buf, "%0*x", digits, entry);
        os << buf << "\n";
    }
}

EcLut parse_lut(std::istream& is) {
    std::string header;
    if (!std::getline(is, header)) throw std::runtime_error("empty LUT dump");
    int n = 0, fb = 0, a = 0, w = 0;
    if (std::sscanf(header.c_str(), "# posit N=%d ES=2 FB=%d A=%d W=%d", &n, &fb, &a, &w) != 4) {
        throw std::runtime_error("bad LUT header: " + header);
    }
    EcLut lut;
    lut.config = make_config(n);
    if (lut.config.fb() != fb) throw std::runtime_error("LUT header FB mismatch");
    lut.msb_bits = a;
    lut.entry_width = w;
    std::string line;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        lut.entries.push_back(uint32_t(std::stoul(line, nullptr, 16)));
    }
    if (lut.entries.size() != size_t(1) << a) throw std::runtime_error("LUT entry count mismatch");
    return lut;
}

ReciprocalResult approx_reciprocal(PositWord word, const EcLut& lut) {
    const PositConfig cfg = word.config;
    if (!(lut.config == cfg)) throw std::invalid_argument("LUT built for a different config");
    if (word.is_zero() || word.is_nar()) {
        throw std::invalid_argument("reciprocal requires a nonzero, non-NaR input");
    }
    const int fb = cfg.fb();
    const bool sign = (word.bits & cfg.sign_mask()) != 0;
    uint32_t mag = word.bits & cfg.payload_mask();
    if (sign) mag = detail::complement_payload(mag, cfg);

    // The table is ordered for positive inputs; address with the
    // original-magnitude fraction MSBs.
    const auto mf = detail::extract_fields(mag, cfg);
    const uint32_t addr = mf.frac >> (fb - lut.msb_bits);

    const uint32_t rec = detail::complement_payload(mag, cfg);
    const auto rf = detail::extract_fields(rec, cfg);
    int scale = 4 * rf.k + rf.e;
    int64_t corrected = int64_t(rf.frac) - int64_t(lut.entries[addr]);
    if (corrected < 0) {
        // The sampled entry can overshoot the true correction just below
        // f = 1; fold the borrow into the scale.
        corrected = 2 * corrected + (int64_t(1) << fb);
        scale -= 1;
    }

    ReciprocalResult out;
    out.decoded.sign = sign;
    out.decoded.k = detail::floor_div4(scale);
    out.decoded.e = scale - 4 * out.decoded.k;
    out.decoded.frac = uint32_t(corrected);
    out.decoded.scale = scale;
    out.decoded.sadd_cin = (corrected == 0);
    out.word = encode(sign, scale, uint64_t(corrected), 0, cfg);
    return out;
}

double rel_error_analytic(double f, double ec_applied, int fb) {
    return -f * (1.0 - f) / 2.0 + ec_applied * (1.0 + f) / double(uint64_t(1) << (fb + 1));
}

NrResult nr_refine(uint64_t x_est, uint64_t d, int iters, int frac_bits) {
    if (frac_bits < 1 || frac_bits > 60) throw std::invalid_argument("frac_bits out of range");
    const uint64_t one = uint64_t(1) << frac_bits;
    NrResult r{x_est, true};
    for (int i = 0; i < iters; ++i) {
        const unsigned __int128 dx = (unsigned __int128)(r.value) * d >> frac_bits;
        if (r.value == 0 || dx >= 2 * one) {
            r.converged = false;  // outside the convergence region, would diverge
            return r;
        }
        const uint64_t t = uint64_t(2 * one - uint64_t(dx));
        r.value = uint64_t((unsigned __int128)(r.value) * t >> frac_bits);
    }
    return r;
}

}  // namespace pamd
