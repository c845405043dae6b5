#pragma once

#include <complex>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "pdmom/errors.hpp"
#include "pdmom/polynomial.hpp"

namespace pdmom {

/// All complex roots of p via companion-matrix eigenvalues.
inline std::vector<std::complex<double>> polynomial_roots(const Polynomial<double>& p) {
    if (p.is_zero()) throw ZeroPolynomialError("polynomial_roots: zero polynomial");
    const int n = p.degree();
    if (n == 0) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) companion(i, n - 1) = -p.coeff(i) / p.leading();
    for (int i = 1; i < n; ++i) companion(i, i - 1) = 1.0;
    Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
    std::vector<std::complex<double>> roots(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) roots[static_cast<size_t>(i)] = solver.eigenvalues()(i);
    return roots;
}

}  // namespace pdmom
