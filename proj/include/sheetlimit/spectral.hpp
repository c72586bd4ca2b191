/// @file spectral.hpp
/// @brief Periodic Fourier utilities on M equispaced nodes theta_j = 2 pi j / M.
#pragma once

#include <Eigen/Dense>
#include <complex>

namespace sheetlimit {

using cplx = std::complex<double>;
using Vec = Eigen::VectorXd;
using CVec = Eigen::VectorXcd;
using Mat = Eigen::MatrixXd;
using CMat = Eigen::MatrixXcd;

namespace spectral {

/// Signed wavenumber of FFT slot j (Nyquist maps to -M/2).
int wavenumber(Eigen::Index j, Eigen::Index M);

/// Normalized coefficients: c_k = (1/M) sum_j f_j exp(-i k theta_j).
CVec forward(const CVec& f);
CVec forward(const Vec& f);
CVec inverse(const CVec& c);

CVec derivative(const CVec& f, int order = 1);
Vec derivative(const Vec& f, int order = 1);

/// Periodic antiderivative of a zero-mean sequence (mean of result is zero).
Vec antiderivative(const Vec& f);

/// Zeroes modes above the dealias index and coefficients below threshold.
CVec filter_coefficients(const CVec& c, Eigen::Index dealias_index, double threshold);
CVec filter(const CVec& f, Eigen::Index dealias_index, double threshold);
Vec filter(const Vec& f, Eigen::Index dealias_index, double threshold);

/// Trigonometric interpolant evaluated at arbitrary parameter values.
CVec interpolate(const CVec& f, const Vec& theta);
Vec interpolate(const Vec& f, const Vec& theta);

/// Spectral resampling to a different (even) node count.
CVec resample(const CVec& f, Eigen::Index M2);
Vec resample(const Vec& f, Eigen::Index M2);

/// First-derivative matrix (Nyquist mode dropped), real skew-symmetric.
Mat derivative_matrix(Eigen::Index M);

/// Node parameters theta_j.
Vec nodes(Eigen::Index M);

}  // namespace spectral
}  // namespace sheetlimit
