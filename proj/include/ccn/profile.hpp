#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ccn/common.hpp"

namespace ccn {

// Where y-relative thresholds come from: a fixed power of n, or a fraction
// of the set being examined (the workable choice at small n).
enum class SizeRule { power_of_n, fraction_of_y };

// Threshold for the small-set avoidance check: n^indep_exp * log2 n, or a
// fraction of the expected count (n - s) * 2^-s at the largest set size.
enum class AvoidanceRule { power_of_n, expectation_fraction };

// Every constant the certificate machinery and the bound calculators depend
// on, in one tunable bundle.  "paper" carries the asymptotic-regime values;
// "desk" rescales the ones that are vacuous or statistically hopeless at
// small n.
struct ParameterProfile {
    std::string name = "paper";

    double class_coeff = 1.0 / 2000; // s_max = ceil(class_coeff * log2 n)
    double indep_exp = 0.999;        // avoidance/significance exponent
    double indep_exp_hi = 0.9995;    // expectation exponent inside the avoidance tail
    double bad_frac = 0.41;          // outside vertex is "bad" when <= bad_frac*|y| non-neighbors
    double bad_frac_after = 0.405;   // same margin after the carved sets are removed
    double bad_count_coeff = 0.25;   // r = bad cap = ceil(bad_count_coeff * log2 n)
    double k_coeff = 1.9;            // covering clique size k = ceil(k_coeff * log2 n)
    double s_coeff = 1.65;           // sampled sets s = k - r; k_coeff = bad_count_coeff + s_coeff
    double m_exp = 0.99;             // set size m = ceil(n^m_exp) under power_of_n
    double z_hit_frac = 0.4;         // required non-neighbor share per sampled set
    double miss_base = 0.6;          // 1 - z_hit_frac; per-set miss probability bound

    SizeRule sig_rule = SizeRule::power_of_n;
    double sig_frac = 0.05; // significance threshold = ceil(sig_frac * |y|) under fraction_of_y

    SizeRule m_rule = SizeRule::power_of_n; // fraction_of_y: m = floor(|y| / (2k))

    AvoidanceRule avoid_rule = AvoidanceRule::power_of_n;
    double avoid_frac = 0.25;

    void validate() const; // throws InputError when the identities fail
};

ParameterProfile paper_profile();
ParameterProfile desk_profile();

// plain "key=value" lines, '#' comments; unknown keys are errors
ParameterProfile load_profile(std::istream& in);
ParameterProfile load_profile_file(const std::string& path);
void save_profile(const ParameterProfile& p, std::ostream& out);

// "paper" and "desk" by name, anything else read as a profile file path
ParameterProfile resolve_profile_arg(const std::string& arg);

// Integer thresholds for a concrete n.  Rounding is by ceiling throughout,
// with one exception: the fraction-of-y set size floors so that k disjoint
// sets always fit inside y.
struct ResolvedThresholds {
    int n = 0;
    double log2_n = 0;
    int s_max = 0;
    int k = 0;
    int r = 0;                             // also the bad-vertex cap
    std::int64_t avoidance_threshold = 0;  // small-set avoidance bound
    std::int64_t sig_nonneighbor = 0;      // ceil(n^indep_exp)
    std::int64_t m_fixed = 0;              // ceil(n^m_exp)

    ParameterProfile profile;

    std::int64_t sig_threshold(std::int64_t y_size) const;
    std::int64_t z_size(std::int64_t y_size) const;
};

ResolvedThresholds resolve_thresholds(const ParameterProfile& p, int n);

} // namespace ccn
