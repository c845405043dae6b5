#pragma once

#include <string>
#include <utility>
#include <vector>

#include "pdmom/concomitant.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Moments m_0..m_K; indices below zero read as zero by convention,
/// indices above K are unavailable and raise InsufficientMoments.
template <class Scalar>
class MomentSequence {
public:
    MomentSequence() = default;
    explicit MomentSequence(std::vector<Scalar> values) : values_(std::move(values)) {}

    long max_index() const { return static_cast<long>(values_.size()) - 1; }
    const std::vector<Scalar>& values() const { return values_; }

    Scalar at(long k) const {
        if (k < 0) return Scalar(0);
        if (k > max_index())
            throw InsufficientMomentsError("moment m_" + std::to_string(k) + " not available (K = " +
                                           std::to_string(max_index()) + ")");
        return values_[static_cast<size_t>(k)];
    }

    template <class To>
    MomentSequence<To> convert() const {
        std::vector<To> v;
        v.reserve(values_.size());
        for (const Scalar& m : values_) v.push_back(static_cast<To>(to_double(m)));
        return MomentSequence<To>(std::move(v));
    }

private:
    std::vector<Scalar> values_;
};

/// Left-hand side of the moment recurrence:
/// mu_k = sum_j sum_{i=0}^{d_j} a_{i,j} (-1)^j (i+k)_j m_{i-j+k}.
template <class Scalar>
Scalar moment_form(const DiffOperator<Scalar>& op, const MomentSequence<Scalar>& m, long k) {
    if (k < 0) throw RangeError("moment_form: k must be >= 0");
    const int alpha = alpha_profile(op).alpha;
    if (k + alpha > m.max_index())
        throw InsufficientMomentsError("moment_form: mu_" + std::to_string(k) + " needs moments through m_" +
                                       std::to_string(k + alpha));
    Scalar acc(0);
    for (int j = 0; j <= op.order(); ++j) {
        for (int i = 0; i <= op.coeff_degree(j); ++i) {
            Scalar a = op.entry(i, j);
            if (a == Scalar(0)) continue;
            Scalar term = a * falling_factorial<Scalar>(i + k, j) * m.at(i - j + k);
            acc += (j % 2 == 0) ? term : -term;
        }
    }
    return acc;
}

/// Same linear form grouped by moment offset: sum_l q_l(k) m_{k+l}.
/// Used to cross-check the grouping identity against moment_form.
template <class Scalar>
Scalar moment_form_grouped(const DiffOperator<Scalar>& op, const MomentSequence<Scalar>& m, long k) {
    if (k < 0) throw RangeError("moment_form_grouped: k must be >= 0");
    const int alpha = alpha_profile(op).alpha;
    if (k + alpha > m.max_index())
        throw InsufficientMomentsError("moment_form_grouped: insufficient moments");
    Scalar acc(0);
    for (int ell = -op.order(); ell <= alpha; ++ell) acc += q_poly(op, ell)(Scalar(k)) * m.at(k + ell);
    return acc;
}

/// The sequence (mu_0, mu_1, ...) up to the largest index the moment data
/// supports (k + alpha <= K).
template <class Scalar>
std::vector<Scalar> epsilon_from_moments(const DiffOperator<Scalar>& op, const MomentSequence<Scalar>& m) {
    const int alpha = alpha_profile(op).alpha;
    const long last = m.max_index() - alpha;
    if (last < 0) throw InsufficientMomentsError("epsilon_from_moments: no index is computable");
    std::vector<Scalar> eps;
    eps.reserve(static_cast<size_t>(last) + 1);
    for (long k = 0; k <= last; ++k) eps.push_back(moment_form(op, m, k));
    return eps;
}

/// Forward moment generation from the recurrence, solving each instance for
/// its highest-index moment m_{k+alpha}:
///   m_{k+alpha} = (eps_k - sum_{l<alpha} q_l(k) m_{k+l}) / q_alpha(k).
/// The seed supplies m_0..m_{k0+alpha-1}, which fixes the starting index
/// k0 = len(seed) - alpha; generation requires q_alpha(k) != 0 for every k
/// used, which holds for all k > Lambda(Op).
template <class Scalar>
MomentSequence<Scalar> generate_moments(const DiffOperator<Scalar>& op, const std::vector<Scalar>& eps,
                                        const std::vector<Scalar>& seed, long target_K) {
    const int n = op.order();
    const int alpha = alpha_profile(op).alpha;
    const long k0 = static_cast<long>(seed.size()) - alpha;
    if (k0 < 0)
        throw InsufficientSeedError("generate_moments: seed must cover m_0..m_{k0+alpha-1} with k0 >= 0");

    std::vector<Polynomial<Scalar>> q;
    for (int ell = -n; ell <= alpha; ++ell) q.push_back(q_poly(op, ell));
    const Polynomial<Scalar>& q_lead = q.back();

    std::vector<Scalar> m = seed;
    auto moment_at = [&](long idx) { return idx < 0 ? Scalar(0) : m[static_cast<size_t>(idx)]; };

    for (long k = k0; k + alpha <= target_K; ++k) {
        if (k >= static_cast<long>(eps.size()))
            throw InsufficientSeedError("generate_moments: epsilon sequence too short (need eps_" +
                                        std::to_string(k) + ")");
        Scalar lead = q_lead(Scalar(k));
        if (lead == Scalar(0))
            throw LeadingZeroError("generate_moments: q_alpha(" + std::to_string(k) +
                                   ") = 0; start beyond Lambda(Op)");
        Scalar acc = eps[static_cast<size_t>(k)];
        for (int ell = -n; ell < alpha; ++ell)
            acc -= q[static_cast<size_t>(ell + n)](Scalar(k)) * moment_at(k + ell);
        m.push_back(acc / lead);
    }
    if (static_cast<long>(m.size()) > target_K + 1) m.resize(static_cast<size_t>(target_K) + 1);
    return MomentSequence<Scalar>(std::move(m));
}

/// Residual table of the recurrence identity mu_k = eps_k over every
/// computable k. Exactly zero in rational arithmetic for any piecewise
/// solution of L with the given jump data.
template <class Scalar>
struct RecurrenceReport {
    std::vector<Scalar> residuals;  // residuals[k] = mu_k - eps_k
    Scalar max_abs{0};
    long first_nonzero = -1;

    bool exact_zero() const { return first_nonzero < 0; }
};

template <class Scalar>
RecurrenceReport<Scalar> verify_recurrence(const DiffOperator<Scalar>& op, const MomentSequence<Scalar>& m,
                                           const JumpData<Scalar>& jumps) {
    RecurrenceReport<Scalar> report;
    std::vector<Scalar> mu = epsilon_from_moments(op, m);
    for (long k = 0; k < static_cast<long>(mu.size()); ++k) {
        Scalar r = mu[static_cast<size_t>(k)] - epsilon_direct(op, jumps, k);
        Scalar mag = r < Scalar(0) ? Scalar(-r) : r;
        if (mag > report.max_abs) report.max_abs = mag;
        if (report.first_nonzero < 0 && r != Scalar(0)) report.first_nonzero = k;
        report.residuals.push_back(std::move(r));
    }
    return report;
}

}  // namespace pdmom
