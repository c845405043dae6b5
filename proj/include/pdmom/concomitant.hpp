#pragma once

#include <utility>
#include <vector>

#include "pdmom/errors.hpp"
#include "pdmom/linalg.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/rational.hpp"

namespace pdmom {

/// Row r of the bilinear concomitant as a polynomial in x:
/// sum_{s=0}^{n-r-1} (-1)^s d^s(p_{r+s+1} v), the factor multiplying u^(r).
template <class Scalar>
Polynomial<Scalar> concomitant_row(const DiffOperator<Scalar>& op, int r, const Polynomial<Scalar>& v) {
    Polynomial<Scalar> acc;
    for (int s = 0; s + r + 1 <= op.order(); ++s) {
        Polynomial<Scalar> term = (op.coeff(r + s + 1) * v).derivative(s);
        acc = (s % 2 == 0) ? acc + term : acc - term;
    }
    return acc;
}

/// Exact value of the bilinear concomitant P_L(u,v)(x).
template <class Scalar>
Scalar concomitant_eval(const DiffOperator<Scalar>& op, const Polynomial<Scalar>& u,
                        const Polynomial<Scalar>& v, const Scalar& x) {
    Scalar acc(0);
    Polynomial<Scalar> du = u;
    for (int r = 0; r < op.order(); ++r) {
        acc += du(x) * concomitant_row(op, r, v)(x);
        du = du.derivative();
    }
    return acc;
}

/// Green's formula residual
/// int_a^b [v Lu - u L*v] - [P_L(u,v)(b) - P_L(u,v)(a)]; identically zero.
template <class Scalar>
Scalar greens_residual(const DiffOperator<Scalar>& op, const Polynomial<Scalar>& u,
                       const Polynomial<Scalar>& v, const Scalar& a, const Scalar& b) {
    if (!(a < b)) throw RangeError("greens_residual: requires a < b");
    Polynomial<Scalar> integrand = v * op.apply(u) - u * op.adjoint().apply(v);
    Scalar lhs = integrand.integral(a, b);
    Scalar rhs = concomitant_eval(op, u, v, b) - concomitant_eval(op, u, v, a);
    return lhs - rhs;
}

/// Discontinuity data of a piecewise solution: nodes xi_0 < ... < xi_{p+1}
/// (endpoints included) and per node the jump vector
/// Delta^(i) = f^(i)(xi^+) - f^(i)(xi^-), i = 0..n-1, with f identically zero
/// outside [a,b] so endpoint jumps encode the boundary values.
template <class Scalar>
struct JumpData {
    std::vector<Scalar> nodes;
    std::vector<std::vector<Scalar>> jumps;

    int node_count() const { return static_cast<int>(nodes.size()); }
    int order() const { return jumps.empty() ? 0 : static_cast<int>(jumps.front().size()); }

    void validate() const {
        if (nodes.size() < 2) throw RangeError("JumpData: need at least the two endpoints");
        if (jumps.size() != nodes.size()) throw RangeError("JumpData: one jump vector per node");
        for (size_t i = 0; i + 1 < nodes.size(); ++i)
            if (!(nodes[i] < nodes[i + 1])) throw RangeError("JumpData: nodes must be strictly increasing");
        for (const auto& d : jumps)
            if (d.size() != jumps.front().size()) throw RangeError("JumpData: ragged jump vectors");
    }
};

/// The n x n matrix M(L,xi) with c = M * Delta, mapping a node's jump vector
/// to the coefficients c_0..c_{n-1} of its power-sum terms (k)_l xi^(k-l).
/// Built by expanding d^s(p_m(x) x^k) by Leibniz in the basis
/// {(k)_l x^(k-l)}: M[l][r] = sum_{s=l}^{n-r-1} (-1)^s C(s,l) p_{r+s+1}^(s-l)(xi).
/// M is anti-triangular with anti-diagonal entries (-1)^l p_n(xi), so
/// |det M| = |p_n(xi)|^n and M is invertible iff p_n(xi) != 0.
template <class Scalar>
struct CMatrix {
    Scalar node;
    Matrix<Scalar> m;

    std::vector<Scalar> apply(const std::vector<Scalar>& delta) const {
        std::vector<Scalar> c(m.rows(), Scalar(0));
        for (size_t l = 0; l < m.rows(); ++l)
            for (size_t r = 0; r < m.cols(); ++r) c[l] += m(l, r) * delta[r];
        return c;
    }

    Scalar determinant() const { return pdmom::determinant(m); }
};

template <class Scalar>
CMatrix<Scalar> jump_to_c(const DiffOperator<Scalar>& op, const Scalar& xi) {
    const int n = op.order();
    CMatrix<Scalar> result{xi, Matrix<Scalar>(static_cast<size_t>(n), static_cast<size_t>(n))};
    for (int l = 0; l < n; ++l) {
        for (int r = 0; r < n; ++r) {
            Scalar acc(0);
            for (int s = l; s <= n - r - 1; ++s) {
                Scalar c = Scalar(binomial(s, l).template convert_to<long>());
                if (s % 2 != 0) c = -c;
                acc += c * op.coeff(r + s + 1).derivative(s - l)(xi);
            }
            result.m(static_cast<size_t>(l), static_cast<size_t>(r)) = acc;
        }
    }
    return result;
}

/// Inverse of jump_to_c at a regular node: solves M Delta = c by
/// back-substitution along the anti-triangular structure (row n-1 fixes
/// Delta^(0), row n-2 then fixes Delta^(1), ...).
template <class Scalar>
std::vector<Scalar> c_to_jump(const DiffOperator<Scalar>& op, const Scalar& xi,
                              const std::vector<Scalar>& c) {
    const int n = op.order();
    if (static_cast<int>(c.size()) != n) throw RangeError("c_to_jump: c vector must have length n");
    if (op.coeff(n)(xi) == Scalar(0))
        throw SingularNodeError("c_to_jump: p_n vanishes at the node; matrix not invertible");
    CMatrix<Scalar> cm = jump_to_c(op, xi);
    std::vector<Scalar> delta(static_cast<size_t>(n), Scalar(0));
    for (int l = n - 1; l >= 0; --l) {
        const int r = n - 1 - l;  // unknown this row determines
        Scalar acc = c[static_cast<size_t>(l)];
        for (int t = 0; t < r; ++t) acc -= cm.m(static_cast<size_t>(l), static_cast<size_t>(t)) * delta[static_cast<size_t>(t)];
        delta[static_cast<size_t>(r)] = acc / cm.m(static_cast<size_t>(l), static_cast<size_t>(r));
    }
    return delta;
}

/// epsilon_k computed from jump vectors only: at each node the p_m and x^k
/// factors are continuous, so the concomitant jump collapses to
/// sum_r Delta^(r) * [row_r with v = x^k](xi). Independent of the Leibniz
/// basis expansion used by jump_to_c; the two routes are cross-checked in tests.
template <class Scalar>
Scalar epsilon_direct(const DiffOperator<Scalar>& op, const JumpData<Scalar>& jumps, long k) {
    jumps.validate();
    if (jumps.order() != op.order()) throw RangeError("epsilon_direct: jump vectors must have length n");
    Polynomial<Scalar> xk = Polynomial<Scalar>::monomial(Scalar(1), static_cast<int>(k));
    std::vector<Polynomial<Scalar>> rows;
    for (int r = 0; r < op.order(); ++r) rows.push_back(concomitant_row(op, r, xk));
    Scalar acc(0);
    for (size_t j = 0; j < jumps.nodes.size(); ++j)
        for (int r = 0; r < op.order(); ++r)
            acc += jumps.jumps[j][static_cast<size_t>(r)] * rows[static_cast<size_t>(r)](jumps.nodes[j]);
    return acc;
}

}  // namespace pdmom
