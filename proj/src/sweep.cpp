#include "pamd/sweep.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "pamd/parallel.hpp"

namespace pamd {

namespace {

constexpr uint64_t kChunk = 1u << 16;

uint64_t splitmix64(uint64_t& state) {
    uint64_t z = (state += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

uint64_t chunk_seed(uint64_t seed, uint64_t chunk) {
    uint64_t s = seed ^ (0xD1B54A32D192ED03ull * (chunk + 1));
    splitmix64(s);
    return s;
}

struct Accum {
    double sum_abs = 0.0;
    double sum_rel = 0.0;
    double max_rel = 0.0;
    double max_exact = 0.0;
    std::map<int64_t, uint64_t> hist;
    uint64_t count = 0;

    void add(double exact, double approx, int64_t ulp) {
        const double err = std::fabs(exact - approx);
        const double rel = err / std::fabs(exact);
        sum_abs += err;
        sum_rel += rel;
        if (rel > max_rel) max_rel = rel;
        const double mag = std::fabs(exact);
        if (mag > max_exact) max_exact = mag;
        hist[ulp] += 1;
        count += 1;
    }

    void merge(const Accum& o) {
        sum_abs += o.sum_abs;
        sum_rel += o.sum_rel;
        if (o.max_rel > max_rel) max_rel = o.max_rel;
        if (o.max_exact > max_exact) max_exact = o.max_exact;
        for (const auto& [k, v] : o.hist) hist[k] += v;
        count += o.count;
    }
};

ErrorReport finish(const Accum& a) {
    ErrorReport r;
    r.sweep_size = a.count;
    r.ulp_histogram = a.hist;
    if (a.count == 0) return r;
    r.med = 100.0 * a.sum_abs / double(a.count);
    r.mred = 100.0 * a.sum_rel / double(a.count);
    r.nmed = a.max_exact > 0 ? r.med / a.max_exact : 0.0;
    r.max_red = 100.0 * a.max_rel;
    return r;
}

// Ordered-merge wrapper: chunk results land in a slot vector and are
// merged in index order, so reports are identical for any thread count.
ErrorReport run_chunked(uint64_t total, int threads,
                        const std::function<void(uint64_t, uint64_t, uint64_t, Accum&)>& body) {
    const size_t chunks = size_t((total + kChunk - 1) / kChunk);
    std::vector<Accum> partial(chunks);
    parallel_chunks(total, kChunk, threads, [&](uint64_t c, uint64_t b, uint64_t e) {
        body(c, b, e, partial[size_t(c)]);
    });
    Accum all;
    for (const Accum& p : partial) all.merge(p);
    return finish(all);
}

uint32_t random_word_bits(uint64_t& rng, PositConfig cfg) {
    // Non-exception patterns only.
    for (;;) {
        const uint32_t bits = uint32_t(splitmix64(rng)) & cfg.word_mask();
        if (bits != cfg.zero_bits() && bits != cfg.nar_bits()) return bits;
    }
}

}  // namespace

ErrorReport sweep_reciprocal(const SweepConfig& sc) {
    const PositConfig cfg = sc.config;
    const int fb = cfg.fb();
    const uint64_t space = uint64_t(1) << fb;
    const bool exhaustive = sc.sampling == SamplingKind::exhaustive;
    if (exhaustive && space > (uint64_t(1) << 26)) {
        throw std::invalid_argument("exhaustive sweep too large; use random sampling");
    }
    const uint64_t total = exhaustive ? space : sc.sample_count;
    const EcLut lut = build_ec_lut(cfg, sc.lut_msb_bits, sc.lut_sampling);
    const PositWord one = encode(false, 0, 0, 0, cfg);

    return run_chunked(total, sc.threads, [&](uint64_t c, uint64_t b, uint64_t e, Accum& acc) {
        uint64_t rng = chunk_seed(sc.seed, c);
        for (uint64_t i = b; i < e; ++i) {
            const uint32_t f = exhaustive ? uint32_t(i) : uint32_t(splitmix64(rng) & (space - 1));
            const PositWord w = encode(false, 0, f, 0, cfg);
            const ReciprocalResult rec = approx_reciprocal(w, lut);
            const double exact = double(space) / double(space + f);
            const double approx = dyadic_to_double(value_from_decoded(rec.decoded, cfg));
            const int64_t ulp = ulp_distance(rec.word, exact_div(one, w));
            acc.add(exact, approx, ulp);
        }
    });
}

namespace {

ErrorReport sweep_pairs(const SweepConfig& sc, bool divide) {
    const PositConfig cfg = sc.config;
    if (sc.sampling == SamplingKind::exhaustive) {
        throw std::invalid_argument("pair sweeps are sampled; set a sample count");
    }
    const EcLut lut = build_ec_lut(cfg, sc.lut_msb_bits, sc.lut_sampling);
    const ExecOptions opts{sc.strict_nar, sc.paper_round};
    const OpMode mode{divide};

    return run_chunked(sc.sample_count, sc.threads,
                       [&](uint64_t c, uint64_t b, uint64_t e, Accum& acc) {
                           uint64_t rng = chunk_seed(sc.seed, c);
                           for (uint64_t i = b; i < e; ++i) {
                               const PositWord a = make_word(random_word_bits(rng, cfg), cfg);
                               const PositWord d = make_word(random_word_bits(rng, cfg), cfg);
                               const UnitOutput out = execute(a, d, mode, lut, opts);
                               const PositWord ref = divide ? exact_div(a, d) : exact_mul(a, d);
                               acc.add(to_real(ref), to_real(out.word),
                                       ulp_distance(out.word, ref));
                           }
                       });
}

}  // namespace

ErrorReport sweep_divide(const SweepConfig& sc) { return sweep_pairs(sc, true); }

ErrorReport sweep_multiply(const SweepConfig& sc) { return sweep_pairs(sc, false); }

std::vector<NrComparisonRow> compare_nr(PositConfig cfg) {
    const int fb = cfg.fb();
    const int qbits = 2 * fb + 2;
    const uint64_t space = uint64_t(1) << fb;
    const bool exhaustive = fb <= 20;
    const uint64_t total = exhaustive ? space : 1u << 20;

    struct Source {
        std::string label;
        int lut_bits = 0;  // 0 marks the baseline seed
    };
    const Source sources[] = {
        {"corrected reciprocal, 2^5 LUT", 5},
        {"corrected reciprocal, 2^8 LUT", 8},
        {"baseline seed, 2^8 LUT", 0},
    };

    std::vector<NrComparisonRow> rows;
    for (const Source& src : sources) {
        EcLut lut;
        if (src.lut_bits > 0) lut = build_ec_lut(cfg, src.lut_bits);
        double seed_sum = 0.0, ref_sum = 0.0;
        uint64_t rng = 0x706F736974ull;
        for (uint64_t i = 0; i < total; ++i) {
            const uint32_t f = exhaustive ? uint32_t(i) : uint32_t(splitmix64(rng) & (space - 1));
            const double exact = double(space) / double(space + f);
            uint64_t x_q;
            if (src.lut_bits > 0) {
                const ReciprocalResult rec = approx_reciprocal(encode(false, 0, f, 0, cfg), lut);
                const uint64_t sig = space + rec.decoded.frac;
                x_q = sig << (qbits - fb + rec.decoded.scale);
            } else {
                x_q = uint64_t(std::llround(pacogen_seed(f, fb, 8) * std::exp2(qbits)));
            }
            const uint64_t d_q = (space + f) << (qbits - fb);
            const uint64_t x1 = nr_refine(x_q, d_q, 1, qbits).value;
            seed_sum += std::fabs(exact - std::ldexp(double(x_q), -qbits)) / exact;
            ref_sum += std::fabs(exact - std::ldexp(double(x1), -qbits)) / exact;
        }
        rows.push_back({src.label, 100.0 * seed_sum / double(total),
                        100.0 * ref_sum / double(total)});
    }
    return rows;
}

void emit_report(const ErrorReport& report, ReportFormat format, std::ostream& os) {
    char buf[64];
    const auto fmt = [&](double v) {
        std::snprintf(buf, sizeof buf, "%.17g", v);
        return std::string(buf);
    };
    if (format == ReportFormat::csv) {
        os << "metric,value,unit\n";
        os << "med," << fmt(report.med) << ",percent\n";
        os << "mred," << fmt(report.mred) << ",percent\n";
        os << "nmed," << fmt(report.nmed) << ",percent\n";
        os << "max_red," << fmt(report.max_red) << ",percent\n";
        os << "sweep_size," << report.sweep_size << ",#\n";
        for (const auto& [ulp, count] : report.ulp_histogram) {
            os << "ulp_" << ulp << "," << count << ",#\n";
        }
        return;
    }
    os << "| Metric | Value | Unit |\n|---|---|---|\n";
    os << "| MED | " << fmt(report.med) << " | % |\n";
    os << "| MRED | " << fmt(report.mred) << " | % |\n";
    os << "| NMED | " << fmt(report.nmed) << " | % |\n";
    os << "| MaxRED | " << fmt(report.max_red) << " | % |\n";
    os << "| samples | " << report.sweep_size << " | # |\n";
    for (const auto& [ulp, count] : report.ulp_histogram) {
        os << "| ULP " << ulp << " | " << count << " | # |\n";
    }
}

ErrorReport parse_report_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "metric,value,unit") {
        throw std::runtime_error("bad report header");
    }
    ErrorReport r;
    while (std::getline(is, line)) {
        if (line.empty()) continue;
        const size_t c1 = line.find(',');
        const size_t c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos) {
            throw std::runtime_error("bad report row: " + line);
        }
        const std::string key = line.substr(0, c1);
        const std::string value = line.substr(c1 + 1, c2 - c1 - 1);
        if (key == "med") {
            r.med = std::stod(value);
        } else if (key == "mred") {
            r.mred = std::stod(value);
        } else if (key == "nmed") {
            r.nmed = std::stod(value);
        } else if (key == "max_red") {
            r.max_red = std::stod(value);
        } else if (key == "sweep_size") {
            r.sweep_size = std::stoull(value);
        } else if (key.rfind("ulp_", 0) == 0) {
            r.ulp_histogram[std::stoll(key.substr(4))] = std::stoull(value);
        } else {
            throw std::runtime_error("unknown report metric: " + key);
        }
    }
    return r;
}

}  // namespace pamd
