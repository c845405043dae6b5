#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// All bound values are in the same units as vanishing_count: the number of
/// leading moments m_0, m_1, ... that can vanish for a nonzero signal
/// (equivalently, the index of the first moment forced to be nonzero is at
/// most the bound).
struct BoundValue {
    long value = 0;
    bool applicable = true;
    std::string note;
};

/// (p+2)n + alpha - 1, valid when at least one jump sits at a regular point
/// of the operator. Since the jump locations are unknown a priori, the
/// applicability flag reports the family-level sufficient conditions:
/// deg p_n < p+2 (p_n cannot vanish at every node), or p_n nonvanishing on
/// [a,b] when an interval is supplied.
inline BoundValue sigma_bound_regular(const DiffOperator<Rat>& op, int p,
                                      std::optional<std::pair<Rat, Rat>> interval = std::nullopt) {
    if (p < 0) throw RangeError("sigma_bound_regular: p >= 0");
    const int n = op.order();
    const int alpha = alpha_profile(op).alpha;
    BoundValue result;
    result.value = static_cast<long>(p + 2) * n + alpha - 1;
    if (op.coeff_degree(n) < p + 2) {
        result.note = "deg p_n < p+2: some jump is a regular point of Op";
        return result;
    }
    if (interval) {
        if (interval->first >= interval->second) throw RangeError("sigma_bound_regular: need a < b");
        if (op.coeff(n)(interval->first) != 0 &&
            count_real_roots_in(op.coeff(n), interval->first, interval->second) == 0) {
            result.note = "p_n nonvanishing on [a,b]";
            return result;
        }
    }
    result.applicable = false;
    result.note = interval ? "p_n has a root in [a,b] and deg p_n >= p+2; jumps may all be singular points"
                           : "deg p_n >= p+2 and no interval supplied; applicability unknown";
    return result;
}

/// max{n(p+2)-1, Lambda(Op)} + alpha(Op); valid for every operator.
inline long sigma_bound_general(const DiffOperator<Rat>& op, int p) {
    if (p < 0) throw RangeError("sigma_bound_general: p >= 0");
    const int n = op.order();
    const int alpha = alpha_profile(op).alpha;
    return std::max<long>(static_cast<long>(n) * (p + 2) - 1, lambda_cap(op)) + alpha;
}

/// Fuchsian-class refinement max{(p+2)n, lambda} + d_n - n - 1, with
/// lambda = 0 when there is no positive integer characteristic exponent.
inline BoundValue sigma_bound_fuchsian(const DiffOperator<Rat>& op, int p) {
    if (p < 0) throw RangeError("sigma_bound_fuchsian: p >= 0");
    InfinityAnalysis inf = infinity_analysis(op);
    BoundValue result;
    if (!inf.fuchsian) {
        result.applicable = false;
        result.note = "operator fails the Fuchsian degree condition at infinity";
        return result;
    }
    const int n = op.order();
    const long lambda = inf.lambda.value_or(0);
    result.value = std::max<long>(static_cast<long>(p + 2) * n, lambda) + op.coeff_degree(n) - n - 1;
    if (!inf.lambda) result.note = "no positive integer characteristic exponent; lambda sentinel 0";
    return result;
}

/// Upper bound on the moment uniqueness index: tau(Op,p) <= sigma(Op,2p).
/// This many leading moments suffice to distinguish any two members of
/// PD(Op,p).
inline long tau_bound(const DiffOperator<Rat>& op, int p) { return sigma_bound_general(op, 2 * p); }

struct VanishingCount {
    long count = 0;      // largest r with m_0 = ... = m_{r-1} = 0
    bool truncated = false;  // every available moment was zero
};

inline VanishingCount vanishing_count(const MomentSequence<Rat>& m) {
    VanishingCount result;
    for (const Rat& v : m.values()) {
        if (v != 0) return result;
        ++result.count;
    }
    result.truncated = true;
    return result;
}

/// Floating variant: zero means |m_k| <= tol * max |m|.
inline VanishingCount vanishing_count(const MomentSequence<double>& m, double rel_tol = 1e-10) {
    double scale = 0.0;
    for (double v : m.values()) scale = std::max(scale, std::abs(v));
    VanishingCount result;
    for (double v : m.values()) {
        if (std::abs(v) > rel_tol * scale) return result;
        ++result.count;
    }
    result.truncated = true;
    return result;
}

/// Everything the `bound` command reports for one (Op, p).
struct BoundReport {
    int p = 0;
    int n = 1;
    int alpha = 0;
    long lambda_cap = 0;
    bool lambda_sentinel = false;  // q_alpha had no positive integer zero
    BoundValue regular;
    long general = 0;
    BoundValue fuchsian;
    long tau = 0;
};

inline BoundReport bound_report(const DiffOperator<Rat>& op, int p,
                                std::optional<std::pair<Rat, Rat>> interval = std::nullopt) {
    BoundReport report;
    report.p = p;
    report.n = op.order();
    report.alpha = alpha_profile(op).alpha;
    report.lambda_cap = lambda_cap(op);
    report.lambda_sentinel = positive_integer_roots(q_poly(op, report.alpha)).empty();
    report.regular = sigma_bound_regular(op, p, interval);
    report.general = sigma_bound_general(op, p);
    report.fuchsian = sigma_bound_fuchsian(op, p);
    report.tau = tau_bound(op, p);
    return report;
}

}  // namespace pdmom
