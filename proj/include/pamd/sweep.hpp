#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "pamd/muldiv.hpp"
#include "pamd/oracle.hpp"
#include "pamd/recip.hpp"

namespace pamd {

struct ErrorReport {
    double med = 0.0;      // mean |exact - approx|, percent of unity
    double mred = 0.0;     // mean |exact - approx| / |exact|, percent
    double nmed = 0.0;     // med normalized by max |exact| over the sweep
    double max_red = 0.0;  // percent
    std::map<int64_t, uint64_t> ulp_histogram;
    uint64_t sweep_size = 0;

    bool operator==(const ErrorReport&) const = default;
};

enum class SweepMode { reciprocal, divide, multiply };
enum class SamplingKind { exhaustive, random };

struct SweepConfig {
    PositConfig config;
    int lut_msb_bits = 5;  // 0 disables correction
    LutSampling lut_sampling = LutSampling::left_edge;
    SweepMode mode = SweepMode::reciprocal;
    SamplingKind sampling = SamplingKind::exhaustive;
    uint64_t sample_count = 0;  // random sampling only
    uint64_t seed = 0;
    int threads = 0;  // 0 = hardware concurrency
    bool strict_nar = false;
    bool paper_round = false;
};

// Reciprocal accuracy over the divisor fraction space (scale fixed at 0):
// corrected reciprocal value against the exact real reciprocal.
ErrorReport sweep_reciprocal(const SweepConfig& cfg);

// Datapath division against the correctly rounded quotient over sampled
// non-exception operand pairs.
ErrorReport sweep_divide(const SweepConfig& cfg);

// Datapath multiplication against the correctly rounded product.
ErrorReport sweep_multiply(const SweepConfig& cfg);

struct NrComparisonRow {
    std::string label;
    double seed_mred = 0.0;     // percent
    double refined_mred = 0.0;  // percent, after one Newton-Raphson step
};

// Seed accuracy of the corrected-reciprocal tables (5 and 8 address bits)
// against the iterative baseline's seed, before and after one refinement.
std::vector<NrComparisonRow> compare_nr(PositConfig cfg);

enum class ReportFormat { csv, markdown };

void emit_report(const ErrorReport& report, ReportFormat format, std::ostream& os);
ErrorReport parse_report_csv(std::istream& is);

}  // namespace pamd
