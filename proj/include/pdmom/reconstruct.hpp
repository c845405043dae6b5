#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include "pdmom/concomitant.hpp"
#include "pdmom/corpus.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/powersum.hpp"

namespace pdmom {

struct ReconstructConfig {
    NodeRecoveryConfig recovery;
    double singular_node_rtol = 1e-9;  // relative |p_n(node)| cutoff
    int series_degree = 40;            // power-series budget for rebuilding
    int refine_iterations = 3;         // Gauss-Newton polish of (nodes, coeffs)
};

struct JumpEstimate {
    JumpData<double> jumps;
    NodeRecoveryResult recovery;        // node-stage diagnostics
    double vandermonde_condition = 0.0;
    double coeff_residual = 0.0;        // relative residual of the coefficient fit
};

/// Moments needed by recover_jumps for a given operator and p_max:
/// 2n(p_max+2) values of mu_k, and mu_k reads moments up to k + max(alpha, 0).
inline long required_moment_count(const DiffOperator<Rat>& op, int p_max) {
    const long mu_count = 2L * op.order() * (p_max + 2);
    return mu_count + std::max(alpha_profile(op).alpha, 0);
}

/// Inverse problem: from the first moments of an unknown member of
/// PD(Op, p <= p_max), recover the discontinuity locations and jump vectors.
/// Pipeline: mu_k by the moment form, annihilator fit + root clustering for
/// the nodes, confluent Vandermonde least squares for the power-sum
/// coefficients, then the concomitant back-substitution per node.
inline JumpEstimate recover_jumps(const DiffOperator<Rat>& op, const MomentSequence<double>& moments,
                                  int p_max, const ReconstructConfig& cfg = {}) {
    const DiffOperator<double> dop = op.convert<double>();
    const int n = op.order();
    if (moments.max_index() + 1 < required_moment_count(op, p_max))
        throw InsufficientMomentsError("recover_jumps: need at least " +
                                       std::to_string(required_moment_count(op, p_max)) +
                                       " moments for p_max = " + std::to_string(p_max));

    std::vector<double> mu = epsilon_from_moments(dop, moments);

    JumpEstimate est;
    est.recovery = recover_nodes(mu, n, p_max, cfg.recovery);
    const std::vector<double>& nodes = est.recovery.nodes;

    // Least-squares confluent Vandermonde for the c coefficients over all
    // samples, solved in the rescaled variable (nodes near the unit disk):
    // mu_k / sigma^k is the power sum on nodes xi/sigma with coefficients
    // c_{l,j} sigma^(-l).
    double sigma = 1.0;
    for (double xi : nodes) sigma = std::max(sigma, std::abs(xi));
    const long cols = static_cast<long>(nodes.size()) * n;
    Eigen::MatrixXd vand(static_cast<long>(mu.size()), cols);
    Eigen::VectorXd rhs(static_cast<long>(mu.size()));
    double power = 1.0;
    for (long k = 0; k < static_cast<long>(mu.size()); ++k, power /= sigma) {
        rhs(k) = mu[static_cast<size_t>(k)] * power;
        for (size_t j = 0; j < nodes.size(); ++j)
            for (int l = 0; l < n; ++l)
                vand(k, static_cast<long>(j) * n + l) = power_sum_term(nodes[j] / sigma, l, k);
    }
    Eigen::VectorXd colnorm(cols);
    for (long col = 0; col < cols; ++col) {
        colnorm(col) = vand.col(col).norm();
        if (colnorm(col) == 0.0) colnorm(col) = 1.0;
        vand.col(col) /= colnorm(col);
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(vand, Eigen::ComputeThinU | Eigen::ComputeThinV);
    est.vandermonde_condition = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    if (!std::isfinite(est.vandermonde_condition) || est.vandermonde_condition > cfg.recovery.condition_limit)
        throw IllConditionedError("recover_jumps: Vandermonde condition estimate " +
                                  std::to_string(est.vandermonde_condition));
    Eigen::VectorXd c = svd.solve(rhs);
    est.coeff_residual = (vand * c - rhs).norm() / (rhs.norm() + 1.0);
    c = c.cwiseQuotient(colnorm);
    for (size_t j = 0; j < nodes.size(); ++j) {
        double unscale = 1.0;
        for (int l = 0; l < n; ++l, unscale *= sigma) c(static_cast<long>(j) * n + l) *= unscale;
    }

    // Scale-aware regularity check at each recovered node, then invert the
    // concomitant map node by node.
    const Polynomial<double>& pn = dop.coeff(n);
    est.jumps.nodes = nodes;
    for (size_t j = 0; j < nodes.size(); ++j) {
        double scale = 0.0;
        for (int i = 0; i <= pn.degree(); ++i)
            scale += std::abs(pn.coeff(i)) * std::pow(std::max(1.0, std::abs(nodes[j])), i);
        if (std::abs(pn(nodes[j])) <= cfg.singular_node_rtol * scale)
            throw SingularNodeError("recover_jumps: recovered node " + std::to_string(nodes[j]) +
                                    " is a root of p_n; jumps there are not identifiable this way");
        std::vector<double> cj(c.data() + static_cast<long>(j) * n, c.data() + static_cast<long>(j + 1) * n);
        est.jumps.jumps.push_back(c_to_jump(dop, nodes[j], cj));
    }
    return est;
}

/// Rebuilds the signal on a grid from jump data: per interval, the power
/// series solution from the accumulated initial vector (previous piece's
/// right limit plus the node's jump vector). Grid points outside [a,b]
/// evaluate to zero.
inline std::vector<double> rebuild_signal(const DiffOperator<Rat>& op, const JumpData<double>& jumps,
                                          const std::vector<double>& grid, const ReconstructConfig& cfg = {}) {
    jumps.validate();
    const DiffOperator<double> dop = op.convert<double>();
    const int n = op.order();
    if (jumps.order() != n) throw RangeError("rebuild_signal: jump vectors must have length n");

    std::vector<double> samples(grid.size(), 0.0);
    std::vector<double> state(static_cast<size_t>(n), 0.0);  // f, f', ... left limit at current node
    for (size_t j = 0; j + 1 < jumps.nodes.size(); ++j) {
        const double left = jumps.nodes[j];
        const double right = jumps.nodes[j + 1];
        std::vector<double> ic = state;
        for (int i = 0; i < n; ++i) ic[static_cast<size_t>(i)] += jumps.jumps[j][static_cast<size_t>(i)];
        Polynomial<double> piece = series_solution(dop, left, ic, cfg.series_degree);

        const bool last = (j + 2 == jumps.nodes.size());
        for (size_t g = 0; g < grid.size(); ++g)
            if (grid[g] >= left && (grid[g] < right || (last && grid[g] == right)))
                samples[g] = piece(grid[g] - left);
        for (int i = 0; i < n; ++i) state[static_cast<size_t>(i)] = piece.derivative(i)(right - left);
    }
    return samples;
}

/// Consistency report for an estimated jump set against the given moments:
/// the recurrence residual max_k |mu_k - eps_k(J)|, and, where forward
/// generation applies, the mismatch of regenerated higher moments.
struct ResidualReport {
    double max_recurrence_residual = 0.0;
    std::optional<double> max_moment_residual;
};

inline ResidualReport residual_report(const DiffOperator<Rat>& op, const MomentSequence<double>& moments,
                                      const JumpData<double>& estimate) {
    const DiffOperator<double> dop = op.convert<double>();
    const int alpha = alpha_profile(op).alpha;
    const long K = moments.max_index();
    ResidualReport report;
    if (K - alpha < 0) return report;  // nothing computable

    std::vector<double> mu = epsilon_from_moments(dop, moments);
    for (long k = 0; k < static_cast<long>(mu.size()); ++k)
        report.max_recurrence_residual =
            std::max(report.max_recurrence_residual,
                     std::abs(mu[static_cast<size_t>(k)] - epsilon_direct(dop, estimate, k)));

    const long k0 = lambda_cap(op) + 1;
    const long seed_len = k0 + alpha;
    if (seed_len >= 0 && seed_len <= K + 1) {
        std::vector<double> eps;
        for (long k = 0; k <= K - alpha; ++k) eps.push_back(epsilon_direct(dop, estimate, k));
        std::vector<double> seed(moments.values().begin(), moments.values().begin() + seed_len);
        MomentSequence<double> regen = generate_moments(dop, eps, seed, K);
        double worst = 0.0;
        for (long k = 0; k <= regen.max_index(); ++k) worst = std::max(worst, std::abs(regen.at(k) - moments.at(k)));
        report.max_moment_residual = worst;
    }
    return report;
}

}  // namespace pdmom
