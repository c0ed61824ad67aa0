// Test-side oracles, deliberately independent of the library implementation:
// fixed-grid Simpson quadrature and a scaled-and-squared Taylor-series matrix
// exponential.

#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <complex>
#include <functional>

namespace oracles {

using Mat = Eigen::MatrixXcd;
using Vec = Eigen::VectorXcd;

// Composite Simpson rule on a fixed grid of n intervals (n forced even).
inline double simpson_fixed(const std::function<double(double)>& f, double a, double b,
                            long n = 100000) {
    if (n % 2) ++n;
    const double h = (b - a) / static_cast<double>(n);
    double acc = f(a) + f(b);
    for (long k = 1; k < n; ++k) acc += f(a + k * h) * (k % 2 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

// exp(A) by Taylor series with scaling and squaring.
inline Mat expm_taylor(const Mat& a) {
    double nrm = a.cwiseAbs().rowwise().sum().maxCoeff();
    int s = 0;
    while (nrm > 0.5) {
        nrm *= 0.5;
        ++s;
    }
    Mat x = a / std::pow(2.0, s);
    Mat term = Mat::Identity(a.rows(), a.cols());
    Mat sum = term;
    for (int k = 1; k <= 24; ++k) {
        term = term * x / static_cast<double>(k);
        sum += term;
    }
    for (int i = 0; i < s; ++i) sum = sum * sum;
    return sum;
}

// exp(-i H t) for the evolve oracle.
inline Mat evolve_oracle(const Mat& h, double t) {
    return expm_taylor(std::complex<double>(0.0, -t) * h);
}

}  // namespace oracles
