#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "pamd/muldiv.hpp"
#include "pamd/oracle.hpp"
#include "pamd/posit.hpp"
#include "pamd/recip.hpp"
#include "pamd/sweep.hpp"

namespace py = pybind11;
using namespace pamd;

namespace {

PositConfig cfg_of(int n) { return make_config(n); }

LutSampling sampling_of(const std::string& s) {
    if (s == "edge") return LutSampling::left_edge;
    if (s == "midpoint") return LutSampling::midpoint;
    throw py::value_error("sampling must be 'edge' or 'midpoint'");
}

py::dict report_dict(const ErrorReport& r) {
    py::dict d;
    d["med"] = r.med;
    d["mred"] = r.mred;
    d["nmed"] = r.nmed;
    d["max_red"] = r.max_red;
    d["sweep_size"] = r.sweep_size;
    py::dict hist;
    for (const auto& [ulp, count] : r.ulp_histogram) hist[py::int_(ulp)] = count;
    d["ulp_histogram"] = hist;
    return d;
}

}  // namespace

PYBIND11_MODULE(positamd, m) {
    m.doc() = "bit-accurate model of a unified posit multiply-divide unit";

    py::class_<EcLut>(m, "EcLut")
        .def_readonly("msb_bits", &EcLut::msb_bits)
        .def_readonly("entry_width", &EcLut::entry_width)
        .def_readonly("entries", &EcLut::entries)
        .def_property_readonly("byte_size", &EcLut::byte_size)
        .def("dump", [](const EcLut& lut) {
            std::ostringstream os;
            dump_lut(lut, os);
            return os.str();
        });

    m.def(
        "build_ec_lut",
        [](int n, int msb_bits, const std::string& sampling) {
            return build_ec_lut(cfg_of(n), msb_bits, sampling_of(sampling));
        },
        py::arg("n") = 16, py::arg("msb_bits") = 5, py::arg("sampling") = "edge");

    m.def(
        "decode",
        [](uint32_t bits, int n) {
            const DecodedPosit d = decode(make_word(bits, cfg_of(n)));
            py::dict out;
            out["sign"] = d.sign;
            out["k"] = d.k;
            out["e"] = d.e;
            out["frac"] = d.frac;
            out["scale"] = d.scale;
            out["chck"] = d.chck;
            out["sadd_cin"] = d.sadd_cin;
            return out;
        },
        py::arg("bits"), py::arg("n") = 16);

    m.def(
        "encode",
        [](bool sign, int scale, uint64_t frac_ext, int ext_bits, int n) {
            return encode(sign, scale, frac_ext, ext_bits, cfg_of(n)).bits;
        },
        py::arg("sign"), py::arg("scale"), py::arg("frac_ext") = 0, py::arg("ext_bits") = 0,
        py::arg("n") = 16);

    m.def(
        "to_real", [](uint32_t bits, int n) { return to_real(make_word(bits, cfg_of(n))); },
        py::arg("bits"), py::arg("n") = 16);

    m.def(
        "approx_reciprocal",
        [](uint32_t bits, const EcLut& lut) {
            const ReciprocalResult r = approx_reciprocal(make_word(bits, lut.config), lut);
            py::dict out;
            out["word"] = r.word.bits;
            out["scale"] = r.decoded.scale;
            out["frac"] = r.decoded.frac;
            out["sign"] = r.decoded.sign;
            return out;
        },
        py::arg("bits"), py::arg("lut"));

    m.def(
        "mul",
        [](uint32_t a, uint32_t b, int n) {
            const PositConfig cfg = cfg_of(n);
            const EcLut lut = build_ec_lut(cfg, 5);
            return execute(make_word(a, cfg), make_word(b, cfg), OpMode{false}, lut).word.bits;
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16);

    m.def(
        "div",
        [](uint32_t a, uint32_t b, int n, int lut_bits, bool strict_nar, bool paper_round) {
            const PositConfig cfg = cfg_of(n);
            const EcLut lut = build_ec_lut(cfg, lut_bits);
            return execute(make_word(a, cfg), make_word(b, cfg), OpMode{true}, lut,
                           {strict_nar, paper_round})
                .word.bits;
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16, py::arg("lut_bits") = 5,
        py::arg("strict_nar") = false, py::arg("paper_round") = false);

    m.def(
        "exact_mul",
        [](uint32_t a, uint32_t b, int n) {
            const PositConfig cfg = cfg_of(n);
            return exact_mul(make_word(a, cfg), make_word(b, cfg)).bits;
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16);

    m.def(
        "exact_div",
        [](uint32_t a, uint32_t b, int n) {
            const PositConfig cfg = cfg_of(n);
            return exact_div(make_word(a, cfg), make_word(b, cfg)).bits;
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16);

    m.def(
        "pacogen_divide",
        [](uint32_t a, uint32_t b, int n, int seed_addr_bits, int nr_iters) {
            const PositConfig cfg = cfg_of(n);
            return pacogen_divide(make_word(a, cfg), make_word(b, cfg), seed_addr_bits, nr_iters)
                .bits;
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16, py::arg("seed_addr_bits") = 8,
        py::arg("nr_iters") = 1);

    m.def(
        "ulp_distance",
        [](uint32_t a, uint32_t b, int n) {
            const PositConfig cfg = cfg_of(n);
            return ulp_distance(make_word(a, cfg), make_word(b, cfg));
        },
        py::arg("a"), py::arg("b"), py::arg("n") = 16);

    m.def(
        "sweep_reciprocal",
        [](int n, int lut_bits, const std::string& sampling, uint64_t samples, uint64_t seed,
           int threads) {
            SweepConfig sc;
            sc.config = cfg_of(n);
            sc.lut_msb_bits = lut_bits;
            sc.lut_sampling = sampling_of(sampling);
            sc.threads = threads;
            sc.seed = seed;
            if (samples > 0 || sc.config.fb() > 26) {
                sc.sampling = SamplingKind::random;
                sc.sample_count = samples ? samples : 1'000'000;
            }
            return report_dict(sweep_reciprocal(sc));
        },
        py::arg("n") = 16, py::arg("lut_bits") = 5, py::arg("sampling") = "edge",
        py::arg("samples") = 0, py::arg("seed") = 0, py::arg("threads") = 0);

    m.def(
        "sweep_divide",
        [](int n, int lut_bits, uint64_t samples, uint64_t seed, int threads) {
            SweepConfig sc;
            sc.config = cfg_of(n);
            sc.lut_msb_bits = lut_bits;
            sc.mode = SweepMode::divide;
            sc.sampling = SamplingKind::random;
            sc.sample_count = samples;
            sc.seed = seed;
            sc.threads = threads;
            return report_dict(sweep_divide(sc));
        },
        py::arg("n") = 16, py::arg("lut_bits") = 5, py::arg("samples") = 100000,
        py::arg("seed") = 0, py::arg("threads") = 0);

    m.def("compare_nr", [](int n) {
        py::list rows;
        for (const auto& r : compare_nr(cfg_of(n))) {
            py::dict d;
            d["label"] = r.label;
            d["seed_mred"] = r.seed_mred;
            d["refined_mred"] = r.refined_mred;
            rows.append(d);
        }
        return rows;
    }, py::arg("n") = 16);

    m.attr("__version__") = "0.1.0";
}
