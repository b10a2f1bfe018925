#include "pamd/muldiv.hpp"

#include "pamd/booth.hpp"

namespace pamd {

ExcepFlags exception_detect(bool div, bool sign_a, bool chck_a, bool sign_b, bool chck_b,
                            bool strict_nar) {
    ExcepFlags out;
    out.chck_a = chck_a;
    out.chck_b = chck_b;
    if (!chck_a && !chck_b) return out;

    const bool a_nar = chck_a && sign_a;
    const bool b_nar = chck_b && sign_b;
    const bool b_zero = chck_b && !sign_b;

    if (!div) {
        out.code = (a_nar || b_nar) ? Excep::force_nar : Excep::force_zero;
        return out;
    }
    if (a_nar || b_zero) {
        out.code = Excep::force_nar;  // NaR dividend, or division by zero
    } else if (b_nar) {
        // x / NaR gives zero in the unit's table; the standard says NaR.
        out.code = strict_nar ? Excep::force_nar : Excep::force_zero;
    } else {
        out.code = Excep::force_zero;  // zero dividend, normal divisor
    }
    return out;
}

int scale_add(const DecodedPosit& a, const DecodedPosit& b, int norm_carry) {
    const int exp_sum = a.e + b.e + norm_carry;
    const int reg_sum = a.k + b.k;
    return (reg_sum << PositConfig::es) + exp_sum;
}

UnitOutput execute(PositWord a, PositWord b, OpMode mode, const EcLut& lut, ExecOptions opts) {
    const PositConfig cfg = a.config;
    if (!(b.config == cfg)) throw std::invalid_argument("operand configs differ");
    if (!(lut.config == cfg)) throw std::invalid_argument("LUT config differs from operands");
    const int fb = cfg.fb();

    const DecodedPosit da = decode(a);
    const DecodedPosit db = decode(b);
    UnitOutput out;
    out.excep = exception_detect(mode.div, da.sign, da.chck, db.sign, db.chck, opts.strict_nar);
    if (out.excep.code == Excep::force_zero) {
        out.word = make_word(cfg.zero_bits(), cfg);
        return out;
    }
    if (out.excep.code == Excep::force_nar) {
        out.word = make_word(cfg.nar_bits(), cfg);
        return out;
    }

    const bool sign = da.sign != db.sign;
    DecodedPosit dec_b = db;
    if (mode.div) dec_b = approx_reciprocal(b, lut).decoded;

    const uint64_t sig_a = (uint64_t(1) << fb) + da.frac;
    const uint64_t sig_b = (uint64_t(1) << fb) + dec_b.frac;

    uint64_t full;
    uint32_t top13 = 0;
    if (cfg.n_bits == 16) {
        const BoothProduct p = booth_multiply(Significand12(sig_a), Significand12(sig_b));
        full = p.full;
        top13 = p.top13;
    } else {
        full = sig_a * sig_b;
    }

    const int carry = int((full >> (2 * fb + 1)) & 1);
    const int scale = scale_add(da, dec_b, carry);

    const uint64_t fmask = (uint64_t(1) << fb) - 1;
    uint64_t frac;
    bool g, s;
    if (opts.paper_round && cfg.n_bits == 16) {
        // Diagnostic mode: only the 13 retained product bits participate;
        // the kept boundary bit rounds up when present (carry case), the
        // rest truncates.
        if (carry) {
            frac = (top13 >> 1) & fmask;
            g = top13 & 1;
            s = g;  // ties up
        } else {
            frac = top13 & fmask;
            g = false;
            s = false;
        }
    } else if (carry) {
        frac = (full >> (fb + 1)) & fmask;
        g = (full >> fb) & 1;
        s = (full & fmask) != 0;
    } else {
        frac = (full >> fb) & fmask;
        g = (full >> (fb - 1)) & 1;
        s = (full & (fmask >> 1)) != 0;
    }

    out.raw_scale = scale;
    out.raw_frac_ext = (frac << 2) | (uint64_t(g) << 1) | uint64_t(s);
    out.word = detail::encode_core(sign, scale, frac, g, s, cfg);
    return out;
}

}  // namespace pamd
