#include "ccn/tail_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <iomanip>
#include <limits>
#include <numbers>
#include <ostream>

namespace ccn {

namespace {

constexpr double kLog2E = std::numbers::log2e;
// targets quoted by the verdicts below
constexpr double kMuSlack = 10.0;          // want log2 mu >= 10 L
constexpr double kEpsilonTol = 0.01;       // overlap ratio within 1% of k^2/m^2
constexpr double kMissTarget = -1.1;       // per-L miss coefficient must sit below this
constexpr double kMissFracTol = 0.01;      // family miss share under 1%
constexpr double kDenseExponent = 0.016;   // floor for 2*dev^2 in the bad-vertex tail
constexpr double kBadExponent = 0.002;     // surviving exponent of the bad-vertex summand

double log2_of(double x) { return std::log2(x); }

} // namespace

SignedLogValue SignedLogValue::from_value(double x) {
    if (x == 0) return {0, 0};
    return {x > 0 ? 1 : -1, std::log2(std::abs(x))};
}

SignedLogValue SignedLogValue::positive(double log2_abs) { return {1, log2_abs}; }
SignedLogValue SignedLogValue::negative(double log2_abs) { return {-1, log2_abs}; }

SignedLogValue SignedLogValue::difference(double log2_a, double log2_b) {
    if (log2_a == log2_b) return {0, 0};
    double hi = std::max(log2_a, log2_b), lo = std::min(log2_a, log2_b);
    double corr = 0;
    double gap = lo - hi; // <= 0
    if (gap > -60) corr = std::log2(1.0 - std::exp2(gap));
    return {log2_a > log2_b ? 1 : -1, hi + corr};
}

double SignedLogValue::to_double() const {
    if (sign == 0) return 0;
    if (log2_abs > 1024) return sign > 0 ? std::numeric_limits<double>::infinity()
                                         : -std::numeric_limits<double>::infinity();
    return sign * std::exp2(log2_abs);
}

std::string SignedLogValue::to_string() const {
    char buf[64];
    if (sign == 0) return "0";
    if (std::abs(log2_abs) <= 1000) {
        std::snprintf(buf, sizeof buf, "%.6g", sign * std::exp2(log2_abs));
    } else {
        std::snprintf(buf, sizeof buf, "%s2^%.4f", sign > 0 ? "" : "-", log2_abs);
    }
    return buf;
}

double log2_sum_exp(const std::vector<double>& log2_terms) {
    if (log2_terms.empty()) return -std::numeric_limits<double>::infinity();
    double hi = *std::max_element(log2_terms.begin(), log2_terms.end());
    if (!std::isfinite(hi)) return hi;
    double acc = 0;
    for (double t : log2_terms) acc += std::exp2(t - hi);
    return hi + std::log2(acc);
}

double log2_binomial(double k, double i) {
    if (i < 0 || i > k) throw InputError("log2_binomial: need 0 <= i <= k");
    return (std::lgamma(k + 1) - std::lgamma(i + 1) - std::lgamma(k - i + 1)) * kLog2E;
}

const ReportLine& BoundReport::line(const std::string& label) const {
    for (const auto& l : lines)
        if (l.label == label) return l;
    throw InputError("report has no line '" + label + "'");
}

bool BoundReport::all_verdicts_hold() const {
    for (const auto& l : lines)
        if (l.verdict && !*l.verdict) return false;
    return true;
}

void BoundReport::write_table(std::ostream& out) const {
    out << title << "  [profile " << profile_name << ", L=" << L << ", k=" << k << ", r=" << r
        << ", s=" << s << ", log2 m=" << log2_m << "]\n";
    for (const auto& l : lines) {
        out << "  " << std::left << std::setw(26) << l.label << " " << std::setw(18)
            << l.value.to_string();
        out << " " << std::setw(4) << (l.verdict ? (*l.verdict ? "ok" : "FAIL") : "");
        if (!l.note.empty()) out << " " << l.note;
        out << "\n";
    }
}

void BoundReport::write_csv(std::ostream& out, bool header) const {
    if (header) out << "L,expression,log2_value,verdict\n";
    for (const auto& l : lines) {
        out << L << "," << l.label << "," << l.value.to_string() << ",";
        if (l.verdict) out << (*l.verdict ? 1 : 0);
        out << "\n";
    }
}

LogProb chernoff_upper(double x, double y, double dev) {
    if (x < 1 || y < 1) throw InputError("chernoff_upper: counts must be >= 1");
    if (!(dev > 0 && dev <= 0.5)) throw InputError("chernoff_upper: dev must lie in (0, 1/2]");
    return {-2.0 * dev * dev * x * y * kLog2E};
}

LogProb hypergeometric_tail(double population, double successes, double draws, double dev) {
    if (draws > population) throw InputError("hypergeometric_tail: draws exceed population");
    if (successes > population) throw InputError("hypergeometric_tail: successes exceed population");
    if (!(dev > 0)) throw InputError("hypergeometric_tail: dev must be positive");
    if (draws < 1) throw InputError("hypergeometric_tail: draws must be >= 1");
    return {-2.0 * dev * dev * draws * kLog2E};
}

double lower_bound_coefficient(double p) {
    if (!(p > 0 && p < 1)) throw InputError("lower_bound_coefficient: p must lie in (0,1)");
    return 1.0 / std::log2(1.0 / p);
}

namespace {

double resolved_log2_m(double L, const ParameterProfile& p) {
    if (p.m_rule == SizeRule::power_of_n) return p.m_exp * L;
    // balanced-class stand-in: y = n/2, m = y / (2k)
    return L - 2.0 - std::log2(p.k_coeff * L);
}

double janson_log2_mu(double L, const ParameterProfile& p) {
    double k = p.k_coeff * L;
    double log2m = resolved_log2_m(L, p);
    return k * log2m - k * (k - 1) / 2.0;
}

} // namespace

BoundReport avoidance_union_bound(double L, const ParameterProfile& p) {
    p.validate();
    if (!(L >= 2)) throw InputError("avoidance_union_bound: L must be >= 2");
    BoundReport rep;
    rep.title = "small-set avoidance union bound";
    rep.profile_name = p.name;
    rep.L = L;
    rep.k = p.k_coeff * L;
    rep.r = p.bad_count_coeff * L;
    rep.s = p.s_coeff * L;
    rep.log2_m = resolved_log2_m(L, p);

    double s = p.class_coeff * L; // largest examined set size
    double frac = s * std::exp2(-L);
    double exact = L + (frac < 1 ? std::log2(1 - frac) : -std::numeric_limits<double>::infinity()) - s;
    double floor = p.indep_exp_hi * L;
    double tail_mag = p.indep_exp_hi * L + std::log2(kLog2E / 9.0); // |log2 exp(-n^hi / 9)|

    rep.lines.push_back({"log2_expectation_exact", SignedLogValue::from_value(exact), std::nullopt,
                         "log2((n-s) 2^-s), s at s_max"});
    rep.lines.push_back({"log2_expectation_floor", SignedLogValue::from_value(floor), std::nullopt,
                         "within (1-o(1)) of the exact line"});
    rep.lines.push_back({"log2_tail", SignedLogValue::negative(tail_mag), std::nullopt,
                         "log2 of the below-half tail"});
    rep.lines.push_back({"log2_set_count", SignedLogValue::from_value(1 + p.class_coeff * L * L),
                         std::nullopt, "2 n^(class_coeff L)"});
    rep.lines.push_back({"log2_set_count_display", SignedLogValue::from_value(L * L), std::nullopt,
                         "n^(log2 n)"});
    SignedLogValue total = SignedLogValue::difference(log2_of(L * L), tail_mag);
    rep.lines.push_back({"union_total", total, total.is_negative(), "L^2 + log2_tail"});
    return rep;
}

BoundReport bad_vertex_union_bound(double L, const ParameterProfile& p) {
    p.validate();
    if (!(L >= 2)) throw InputError("bad_vertex_union_bound: L must be >= 2");
    BoundReport rep;
    rep.title = "bad-vertex union bound";
    rep.profile_name = p.name;
    rep.L = L;
    rep.k = p.k_coeff * L;
    rep.r = p.bad_count_coeff * L;
    rep.s = p.s_coeff * L;
    rep.log2_m = resolved_log2_m(L, p);

    double dev = 0.5 - p.bad_frac;
    double expnt = 2 * dev * dev;
    rep.lines.push_back({"chernoff_exponent", SignedLogValue::from_value(expnt),
                         expnt >= kDenseExponent, "2 dev^2 vs 0.016"});

    // summand: n^(r) * n^(-0.002 n^indep_exp) with r = bad_count_coeff * L
    double pos = p.bad_count_coeff * L * L;
    double neg_mag = p.indep_exp * L + std::log2(kBadExponent * L);
    rep.lines.push_back({"log2_dominant", SignedLogValue::difference(log2_of(pos), neg_mag),
                         std::nullopt, "r L - 0.002 L n^indep_exp"});
    rep.lines.push_back({"log2_summand_count", SignedLogValue::from_value(L), std::nullopt,
                         "at most n set sizes"});
    SignedLogValue total = SignedLogValue::difference(log2_of(L + pos), neg_mag);
    rep.lines.push_back({"union_total", total, total.is_negative(), "count + dominant"});
    return rep;
}

BoundReport janson_report(double L, const ParameterProfile& p) {
    p.validate();
    if (!(L >= 2)) throw InputError("janson_report: L must be >= 2");
    BoundReport rep;
    rep.title = "transversal clique second-moment report";
    rep.profile_name = p.name;
    rep.L = L;
    double k = p.k_coeff * L;
    rep.k = k;
    rep.r = p.bad_count_coeff * L;
    rep.s = p.s_coeff * L;
    double log2m = resolved_log2_m(L, p);
    rep.log2_m = log2m;
    double log2k = std::log2(k);

    double log2mu = janson_log2_mu(L, p);
    rep.lines.push_back({"log2_mu", SignedLogValue::from_value(log2mu), log2mu >= kMuSlack * L,
                         "k log2 m - C(k,2); want >= 10 L"});

    auto exact_term = [&](int i) { return log2_binomial(k, i) + i * (i - 1) / 2.0 - i * log2m; };
    auto loose_term = [&](double i) { return i * (log2k + i / 2.0 - log2m); };

    int i_max = int(std::floor(k - 1 + 1e-9));
    std::vector<double> terms;
    for (int i = 2; i <= i_max; ++i) terms.push_back(exact_term(i));
    double delta_ratio = log2_sum_exp(terms);
    rep.lines.push_back({"delta_ratio_log2", SignedLogValue::from_value(delta_ratio), std::nullopt,
                         "log2 sum_i Delta_i / mu^2"});

    if (!terms.empty()) {
        double k2m2 = 2 * log2k - 2 * log2m;
        double eps = std::expm1((delta_ratio - k2m2) * std::numbers::ln2);
        rep.lines.push_back({"overlap_ratio_epsilon", SignedLogValue::from_value(eps),
                             eps <= kEpsilonTol, "Delta/mu^2 vs k^2/m^2, want within 1%"});
        rep.lines.push_back({"overlap_pair_log2", SignedLogValue::from_value(exact_term(2)),
                             exact_term(2) <= k2m2 + 1e-9, "i=2 term vs k^2/m^2"});
    }

    int small_hi = std::min(99, i_max);
    if (small_hi >= 3) {
        double mx = -std::numeric_limits<double>::infinity();
        double mx_loose = -std::numeric_limits<double>::infinity();
        for (int i = 3; i <= small_hi; ++i) {
            mx = std::max(mx, exact_term(i));
            mx_loose = std::max(mx_loose, loose_term(i));
        }
        double display = 3 * (log2k + 50 - log2m);
        rep.lines.push_back({"overlap_small_max_log2", SignedLogValue::from_value(mx),
                             mx <= display + 1e-9, "max over 3 <= i < 100"});
        rep.lines.push_back({"overlap_small_display", SignedLogValue::from_value(display),
                             mx_loose <= display + 1e-9, "(k 2^50 / m)^3 envelope"});
    }

    int large_hi = int(std::floor(k - 2 + 1e-9));
    if (large_hi >= 100) {
        double mx = -std::numeric_limits<double>::infinity();
        double mx_loose = -std::numeric_limits<double>::infinity();
        for (int i = 100; i <= large_hi; ++i) {
            mx = std::max(mx, exact_term(i));
            mx_loose = std::max(mx_loose, loose_term(i));
        }
        double factor = log2k + (k - 2) / 2.0 - log2m; // log2 of the largest per-factor value
        double display = 100 * factor;
        char note[96];
        std::snprintf(note, sizeof note, "factor^100; factor log2 = %.3f, display = -4L + %.1f",
                      factor, display + 4 * L);
        rep.lines.push_back({"overlap_large_max_log2", SignedLogValue::from_value(mx),
                             mx <= display + 1e-9, "max over 100 <= i <= k-2"});
        rep.lines.push_back({"overlap_large_display", SignedLogValue::from_value(display),
                             factor < 0 && mx_loose <= display + 1e-9, note});
    }

    // union verdict: 2^n * exp(-mu^2 / 2 Delta) in log2 form
    double ratio_mag = -1.0 - delta_ratio + std::log2(kLog2E); // log2( (mu^2/2Delta) log2 e )
    SignedLogValue total = SignedLogValue::difference(L, ratio_mag);
    rep.lines.push_back({"union_total", total, total.is_negative(), "2^n + log2 exp(-mu^2/2Delta)"});

    double family_miss = L + rep.s * std::log2(p.miss_base);
    rep.lines.push_back({"family_miss_log2", SignedLogValue::from_value(family_miss),
                         family_miss <= std::log2(kMissFracTol),
                         "n miss_base^s, transversals missing some vertex"});
    double coeff = p.s_coeff * std::log2(p.miss_base);
    rep.lines.push_back({"miss_coefficient", SignedLogValue::from_value(coeff), coeff < kMissTarget,
                         "s_coeff log2 miss_base, want < -1.1"});
    rep.lines.push_back({"mu_crossover_L", SignedLogValue::from_value(janson_mu_crossover(p)),
                         std::nullopt, "L where log2 mu meets 10 L"});
    return rep;
}

double janson_mu_crossover(const ParameterProfile& p) {
    auto g = [&](double L) { return janson_log2_mu(L, p) - kMuSlack * L; };
    double lo = 1.0, hi = 20000.0;
    if (g(lo) >= 0) return lo;
    if (g(hi) <= 0) return hi;
    for (int it = 0; it < 200; ++it) {
        double mid = (lo + hi) / 2;
        (g(mid) < 0 ? lo : hi) = mid;
    }
    return (lo + hi) / 2;
}

} // namespace ccn
