#pragma once

#include <string>
#include <vector>

#include "pdmom/concomitant.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/laurent.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/powersum.hpp"
#include "pdmom/rational_function.hpp"

namespace pdmom {

/// Moment generating function I_f(z) = sum_k m_k z^(-k-1) as a truncated tail.
template <class Scalar>
LaurentTail<Scalar> moment_series(const MomentSequence<Scalar>& m) {
    std::vector<Scalar> coeffs = m.values();
    const int trunc = static_cast<int>(coeffs.size());
    if (trunc == 0) return LaurentTail<Scalar>(0);
    return LaurentTail<Scalar>(1, std::move(coeffs), trunc);
}

/// Formal application sum_j p_j(z) s^(j)(z) with exact term-wise
/// differentiation and polynomial multiplication. The result is trusted
/// through (input order - alpha); nonnegative powers of z are clipped, so
/// this is the principal part of L s at infinity.
template <class Scalar>
LaurentTail<Scalar> apply_operator_series(const DiffOperator<Scalar>& op, const LaurentTail<Scalar>& s) {
    // Term j is trusted through (input order + j - d_j); summation narrows the
    // accumulator to the minimum over the nonzero terms, i.e. input order - alpha.
    LaurentTail<Scalar> acc(s.truncation_order() + op.order());
    LaurentTail<Scalar> ds = s;
    for (int j = 0; j <= op.order(); ++j) {
        if (!op.coeff(j).is_zero()) acc = acc + ds.mul_poly(op.coeff(j));
        ds = ds.derivative();
    }
    return acc;
}

/// The rational right-hand side R_f of the generating-function ODE: poles at
/// the jump nodes, weights l! c_{l,j} with c from the concomitant matrix.
/// Its expansion at infinity reproduces the epsilon sequence exactly.
template <class Scalar>
RationalFunction<Scalar> rhs_rational(const DiffOperator<Scalar>& op, const JumpData<Scalar>& jumps) {
    return generating_function(power_sum_from_jumps(op, jumps));
}

/// Coefficient-wise comparison of Op I_f against the expansion of R_f,
/// through z^(-K-1): residuals[k] = [z^(-k-1)](Op I_f - R_f) = mu_k - eps_k.
template <class Scalar>
struct MgfReport {
    std::vector<Scalar> residuals;
    Scalar max_abs{0};
    long first_nonzero = -1;

    bool exact_zero() const { return first_nonzero < 0; }
};

template <class Scalar>
MgfReport<Scalar> verify_mgf_ode(const DiffOperator<Scalar>& op, const MomentSequence<Scalar>& m,
                                 const JumpData<Scalar>& jumps, long K) {
    LaurentTail<Scalar> lhs = apply_operator_series(op, moment_series(m));
    if (lhs.truncation_order() < K + 1)
        throw InsufficientMomentsError("verify_mgf_ode: order " + std::to_string(K) + " needs moments through m_" +
                                       std::to_string(K + alpha_profile(op).alpha));
    LaurentTail<Scalar> rhs = rhs_rational(op, jumps).laurent(static_cast<int>(K) + 1);
    MgfReport<Scalar> report;
    for (long k = 0; k <= K; ++k) {
        Scalar r = lhs.coeff(static_cast<int>(k) + 1) - rhs.coeff(static_cast<int>(k) + 1);
        Scalar mag = r < Scalar(0) ? Scalar(-r) : r;
        if (mag > report.max_abs) report.max_abs = mag;
        if (report.first_nonzero < 0 && r != Scalar(0)) report.first_nonzero = k;
        report.residuals.push_back(std::move(r));
    }
    return report;
}

}  // namespace pdmom
