#pragma once

// Exact log-domain evaluation of the union-bound machinery: the functional
// g(p,s,r,i) = n C(n,s) C(n^2,r) (p C(s,i) p^i)^r, its margin against n^-5,
// the Chernoff exponent constant, and the small-constant constraint system.
//
// Binomial arguments are real-valued via log-Gamma, since the appendix
// claims substitute expressions like p n^2 / ln n for r.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace f5lab {

inline double ln_binom(double a, double b) {
    if (!(a >= 0.0) || !(b >= 0.0) || b > a) throw std::domain_error("ln_binom requires 0 <= b <= a");
    return std::lgamma(a + 1.0) - std::lgamma(b + 1.0) - std::lgamma(a - b + 1.0);
}

/// ln g = ln n + ln C(n,s) + ln C(n^2,r) + r (ln p + ln C(s,i) + i ln p).
inline double ln_g(double n, double p, double s, double r, double i) {
    if (!(s >= 1.0) || s > n) throw std::domain_error("ln_g requires 1 <= s <= n");
    if (!(r >= 0.0) || r > n * n) throw std::domain_error("ln_g requires 0 <= r <= n^2");
    if (!(i >= 0.0) || i > s) throw std::domain_error("ln_g requires 0 <= i <= s");
    if (!(p > 0.0) || p > 1.0) throw std::domain_error("ln_g requires 0 < p <= 1");
    return std::log(n) + ln_binom(n, s) + ln_binom(n * n, r) + r * (std::log(p) + ln_binom(s, i) + i * std::log(p));
}

/// c_eps = min{ (1+eps) ln(1+eps) - eps, eps^2/2 }; strictly positive.
inline double chernoff_c(double eps) {
    if (!(eps > 0.0)) throw std::domain_error("chernoff_c requires eps > 0");
    const double entropy_branch = (1.0 + eps) * std::log1p(eps) - eps;
    return std::min(entropy_branch, eps * eps / 2.0);
}

/// The small positive constants of the proof, plus the schedule constant.
struct Constants {
    double delta = 1e-100;
    double eps1 = 1.0 / 3000.0;
    double eps2 = 1.0 / 400.0;
    double eps3 = 1e-10;
    double bigC = 1e4;

    static Constants paper_example() { return Constants{}; }
};

struct ConstraintReport {
    std::string name;
    double lhs = 0.0, rhs = 0.0;
    bool holds = false;
};

/// The five constraints the constants must satisfy.
inline std::vector<ConstraintReport> check_constants(const Constants& k) {
    std::vector<ConstraintReport> out;
    out.push_back({"1/(72 eps1) >= 30", 1.0 / (72.0 * k.eps1), 30.0, 1.0 / (72.0 * k.eps1) >= 30.0});
    out.push_back({"(1/20)(1/(2 eps2)) >= 10", 1.0 / (40.0 * k.eps2), 10.0, 1.0 / (40.0 * k.eps2) >= 10.0});
    out.push_back({"1/10 - eps2 >= 1/20", 0.1 - k.eps2, 0.05, 0.1 - k.eps2 >= 0.05});
    const bool window = 100.0 * k.delta / k.eps1 <= k.eps3 && k.eps3 <= k.eps1;
    out.push_back({"100 delta/eps1 <= eps3 <= eps1", 100.0 * k.delta / k.eps1, k.eps1, window});
    out.push_back({"(eps1 eps2/4)/(3 eps3) >= 20", 0.25 * k.eps1 * k.eps2 / (3.0 * k.eps3), 20.0,
                   0.25 * k.eps1 * k.eps2 / (3.0 * k.eps3) >= 20.0});
    return out;
}

enum class ClaimId { A171, A172, Apn, A161, A162 };

inline std::string to_string(ClaimId id) {
    switch (id) {
        case ClaimId::A171: return "A171";
        case ClaimId::A172: return "A172";
        case ClaimId::Apn: return "Apn";
        case ClaimId::A161: return "A161";
        case ClaimId::A162: return "A162";
    }
    return "?";
}

inline ClaimId claim_from_string(const std::string& s) {
    if (s == "A171") return ClaimId::A171;
    if (s == "A172") return ClaimId::A172;
    if (s == "Apn") return ClaimId::Apn;
    if (s == "A161") return ClaimId::A161;
    if (s == "A162") return ClaimId::A162;
    throw std::invalid_argument("unknown claim id: " + s);
}

inline std::vector<ClaimId> all_claims() {
    return {ClaimId::A171, ClaimId::A172, ClaimId::Apn, ClaimId::A161, ClaimId::A162};
}

/// Integer s-range of a claim at size n: [lo, hi], empty when hi < lo.
struct SRange {
    std::int64_t lo = 1, hi = 0;
    bool empty() const { return hi < lo; }
};

inline SRange claim_s_range(ClaimId id, double n, const Constants& k) {
    const double ln_n = std::log(n), sq = std::sqrt(ln_n);
    SRange r;
    switch (id) {
        case ClaimId::A171: r.lo = 1; r.hi = static_cast<std::int64_t>(std::floor(k.eps1 * n / sq)); break;
        case ClaimId::A172:
            r.lo = static_cast<std::int64_t>(std::floor(k.eps1 * n / sq)) + 1;
            r.hi = static_cast<std::int64_t>(std::floor(k.eps1 * n));
            break;
        case ClaimId::Apn: r.lo = 1; r.hi = static_cast<std::int64_t>(n); break;
        case ClaimId::A161: r.lo = 1; r.hi = static_cast<std::int64_t>(std::floor(k.eps3 * n / sq)); break;
        case ClaimId::A162: r.lo = 1; r.hi = static_cast<std::int64_t>(std::floor(k.eps3 * n)); break;
    }
    return r;
}

/// The claim's (r, i) substitution at (n, p, s).
inline std::pair<double, double> claim_r_i(ClaimId id, double n, double p, double s, const Constants& k) {
    const double ln_n = std::log(n), sq = std::sqrt(ln_n), lln = std::log(ln_n);
    const double pn = p * n;
    switch (id) {
        case ClaimId::A171: return {pn * s / sq, pn * lln / (500.0 * sq)};
        case ClaimId::A172: return {pn * s / 500.0, 3.0 * k.eps1 * pn};
        case ClaimId::Apn: return {p * n * n / ln_n, 3.0 * pn};
        case ClaimId::A161: return {k.eps2 * p * n * n / 2.0, 3.0 * k.eps3 * pn / sq};
        case ClaimId::A162: return {k.eps2 * p * n * n / 2.0, 3.0 * k.eps3 * pn};
    }
    throw std::logic_error("unreachable");
}

/// One grid point: margin = ln g + 5 ln n, holds iff margin < 0. Flagged
/// (degenerate) points are excluded from acceptance counting; vacuous flags
/// still report holds=true because the underlying event is certain (g = 0).
struct BoundReport {
    std::string claim_id;
    double n = 0, bigC = 0, s = 0, r = 0, i = 0;
    double ln_g_value = 0.0;
    double margin = 0.0;
    bool holds = false;
    std::string flags;  // ';'-joined; empty means non-degenerate
};

/// Log-spaced integer grid over the claim's s-range; empty when the range is.
inline std::vector<double> default_s_grid(ClaimId id, double n, const Constants& k, int points = 32) {
    const SRange range = claim_s_range(id, n, k);
    std::vector<double> out;
    if (range.empty()) return out;
    const double lo = static_cast<double>(range.lo), hi = static_cast<double>(range.hi);
    for (int j = 0; j < points; ++j) {
        const double t = points == 1 ? 0.0 : static_cast<double>(j) / (points - 1);
        const double s = std::round(lo * std::pow(hi / lo, t));
        if (out.empty() || s != out.back()) out.push_back(s);
    }
    return out;
}

inline std::vector<BoundReport> check_claim(ClaimId id, double n, double bigC, const Constants& k,
                                            const std::vector<double>& s_grid) {
    std::vector<BoundReport> out;
    const double p = bigC * std::sqrt(std::log(n)) / n;
    const SRange range = claim_s_range(id, n, k);
    for (double s_req : s_grid) {
        BoundReport rep;
        rep.claim_id = to_string(id);
        rep.n = n;
        rep.bigC = bigC;
        std::vector<std::string> flags;
        double s = s_req;
        if (range.empty()) {
            flags.push_back("empty_range");
        } else if (s < static_cast<double>(range.lo) || s > static_cast<double>(range.hi)) {
            s = std::min(std::max(s, static_cast<double>(range.lo)), static_cast<double>(range.hi));
            flags.push_back("clipped");
        }
        rep.s = s;
        if (!(p > 0.0) || p > 1.0) {
            flags.push_back("p_out_of_domain");
            rep.ln_g_value = std::numeric_limits<double>::quiet_NaN();
            rep.margin = std::numeric_limits<double>::quiet_NaN();
            rep.holds = false;
        } else if (range.empty()) {
            rep.ln_g_value = std::numeric_limits<double>::quiet_NaN();
            rep.margin = std::numeric_limits<double>::quiet_NaN();
            rep.holds = false;
        } else {
            const auto [r, i] = claim_r_i(id, n, p, s, k);
            rep.r = r;
            rep.i = i;
            if (r > n * n) {  // more pairs demanded than exist: event certain
                flags.push_back("vacuous_r_gt_n2");
                rep.ln_g_value = -std::numeric_limits<double>::infinity();
                rep.margin = -std::numeric_limits<double>::infinity();
                rep.holds = true;
            } else if (i > s) {  // d_S(y,z) >= i impossible with |S| = s: event certain
                flags.push_back("vacuous_i_gt_s");
                rep.ln_g_value = -std::numeric_limits<double>::infinity();
                rep.margin = -std::numeric_limits<double>::infinity();
                rep.holds = true;
            } else if (r == 0.0) {  // empty exponent degenerates g to n C(n,s)
                flags.push_back("r_zero");
                rep.ln_g_value = std::log(n) + ln_binom(n, s);
                rep.margin = rep.ln_g_value + 5.0 * std::log(n);
                rep.holds = rep.margin < 0.0;
            } else {
                rep.ln_g_value = ln_g(n, p, s, r, i);
                rep.margin = rep.ln_g_value + 5.0 * std::log(n);
                rep.holds = rep.margin < 0.0;
            }
        }
        for (std::size_t f = 0; f < flags.size(); ++f) rep.flags += (f ? ";" : "") + flags[f];
        out.push_back(rep);
    }
    return out;
}

/// Default verification grid: every claim at the given n values.
inline std::vector<BoundReport> check_all_claims(const std::vector<double>& n_values, double bigC,
                                                 const Constants& k, int points = 32) {
    std::vector<BoundReport> out;
    for (ClaimId id : all_claims())
        for (double n : n_values) {
            const auto grid = default_s_grid(id, n, k, points);
            if (grid.empty()) {
                BoundReport marker;
                marker.claim_id = to_string(id);
                marker.n = n;
                marker.bigC = bigC;
                marker.s = std::numeric_limits<double>::quiet_NaN();
                marker.ln_g_value = std::numeric_limits<double>::quiet_NaN();
                marker.margin = std::numeric_limits<double>::quiet_NaN();
                marker.flags = "empty_range";
                out.push_back(marker);
                continue;
            }
            const auto reports = check_claim(id, n, bigC, k, grid);
            out.insert(out.end(), reports.begin(), reports.end());
        }
    return out;
}

/// Smallest bigC from `c_grid` whose non-degenerate default-grid points all
/// hold across the given n values; nullopt when none qualifies.
inline std::optional<double> min_passing_bigC(ClaimId id, const std::vector<double>& n_values, const Constants& k,
                                              const std::vector<double>& c_grid = {10.0, 100.0, 1000.0, 10000.0},
                                              int points = 32) {
    for (double c : c_grid) {
        bool all_hold = true;
        for (double n : n_values) {
            for (const BoundReport& rep : check_claim(id, n, c, k, default_s_grid(id, n, k, points))) {
                if (!rep.flags.empty()) continue;
                if (!rep.holds) {
                    all_hold = false;
                    break;
                }
            }
            if (!all_hold) break;
        }
        if (all_hold) return c;
    }
    return std::nullopt;
}

}  // namespace f5lab
