#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "ccn/profile.hpp"

namespace ccn {

// a probability (or any positive quantity) carried as its base-2 logarithm
struct LogProb {
    double log2_value = 0;
};

// sign * 2^log2_abs.  Union-bound totals are differences of terms like
// 2^(0.9995 L); at large L even their logarithms overflow a double, so the
// log of the magnitude plus a sign is the working representation.
struct SignedLogValue {
    int sign = 0;        // -1, 0, +1
    double log2_abs = 0; // meaningful when sign != 0

    static SignedLogValue from_value(double x);
    static SignedLogValue positive(double log2_abs);
    static SignedLogValue negative(double log2_abs);
    static SignedLogValue difference(double log2_a, double log2_b); // 2^a - 2^b

    bool is_negative() const { return sign < 0; }
    double to_double() const;      // saturates to +-inf outside double range
    std::string to_string() const; // decimal when representable, else "(+/-)2^mag"
};

double log2_sum_exp(const std::vector<double>& log2_terms);
double log2_binomial(double k, double i); // real k via lgamma, 0 <= i <= k

struct ReportLine {
    std::string label;
    SignedLogValue value;
    std::optional<bool> verdict;
    std::string note;
};

struct BoundReport {
    std::string title;
    std::string profile_name;
    double L = 0; // log2 n
    double k = 0, r = 0, s = 0, log2_m = 0;
    std::vector<ReportLine> lines;

    const ReportLine& line(const std::string& label) const;
    bool all_verdicts_hold() const;
    void write_table(std::ostream& out) const;
    void write_csv(std::ostream& out, bool header = true) const; // L,expression,log2_value,verdict
};

// log2 of exp(-2 dev^2 x y): additive-deviation tail for x*y fair coin flips
LogProb chernoff_upper(double x, double y, double dev);

// log2 of exp(-2 dev^2 draws): the same bound for sampling without
// replacement
LogProb hypergeometric_tail(double population, double successes, double draws, double dev);

// chi_c(G(n,p)) grows at least as coeff * log2 n; coeff = 1 / log2(1/p)
double lower_bound_coefficient(double p);

// "every set of at most s_max vertices leaves many vertices untouched":
// expectation of the untouched count, the tail below half of it, the number
// of candidate sets, and the union total.  Verdict: total < 0.
BoundReport avoidance_union_bound(double L, const ParameterProfile& p);

// "few outside vertices have too few non-neighbors in a large y": dominant
// summand times summand count.  Verdict: total < 0.
BoundReport bad_vertex_union_bound(double L, const ParameterProfile& p);

// Second-moment accounting for the transversal clique family over k
// disjoint m-sets: log2 mu, the overlap ratio Delta/mu^2 (exact sum and the
// three display bounds by overlap size), the union total over 2^n target
// sets, and the per-set transversal miss rate.
BoundReport janson_report(double L, const ParameterProfile& p);

// L at which log2 mu crosses 10 L, by bisection on the report's evaluator
double janson_mu_crossover(const ParameterProfile& p);

} // namespace ccn
