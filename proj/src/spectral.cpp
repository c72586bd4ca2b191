#include "sheetlimit/spectral.hpp"

#include <unsupported/Eigen/FFT>
#include <cmath>
#include <vector>

namespace sheetlimit::spectral {

namespace {

std::vector<cplx> to_std(const CVec& f) { return std::vector<cplx>(f.data(), f.data() + f.size()); }

CVec from_std(const std::vector<cplx>& v) {
  CVec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) out(static_cast<Eigen::Index>(i)) = v[i];
  return out;
}

}  // namespace

int wavenumber(Eigen::Index j, Eigen::Index M) {
  return static_cast<int>(j < M / 2 ? j : j - M);
}

CVec forward(const CVec& f) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.fwd(out, to_std(f));
  return from_std(out) / static_cast<double>(f.size());
}

CVec forward(const Vec& f) { return forward(CVec(f.cast<cplx>())); }

CVec inverse(const CVec& c) {
  Eigen::FFT<double> fft;
  std::vector<cplx> out;
  fft.inv(out, to_std(c));
  return from_std(out) * static_cast<double>(c.size());
}

CVec derivative(const CVec& f, int order) {
  const Eigen::Index M = f.size();
  CVec c = forward(f);
  for (Eigen::Index j = 0; j < M; ++j) {
    int k = wavenumber(j, M);
    if (2 * std::abs(k) == M && order % 2 == 1) {
      c(j) = 0.0;
      continue;
    }
    c(j) *= std::pow(cplx(0.0, k), order);
  }
  return inverse(c);
}

Vec derivative(const Vec& f, int order) { return derivative(CVec(f.cast<cplx>()), order).real(); }

Vec antiderivative(const Vec& f) {
  const Eigen::Index M = f.size();
  CVec c = forward(f);
  c(0) = 0.0;
  for (Eigen::Index j = 1; j < M; ++j) {
    int k = wavenumber(j, M);
    if (2 * std::abs(k) == M) {
      c(j) = 0.0;
      continue;
    }
    c(j) /= cplx(0.0, k);
  }
  return inverse(c).real();
}

CVec filter_coefficients(const CVec& c, Eigen::Index dealias_index, double threshold) {
  const Eigen::Index M = c.size();
  CVec out = c;
  for (Eigen::Index j = 0; j < M; ++j) {
    int k = std::abs(wavenumber(j, M));
    if (k > dealias_index || std::abs(out(j)) < threshold) out(j) = 0.0;
  }
  return out;
}

CVec filter(const CVec& f, Eigen::Index dealias_index, double threshold) {
  return inverse(filter_coefficients(forward(f), dealias_index, threshold));
}

Vec filter(const Vec& f, Eigen::Index dealias_index, double threshold) {
  return filter(CVec(f.cast<cplx>()), dealias_index, threshold).real();
}

CVec interpolate(const CVec& f, const Vec& theta) {
  const Eigen::Index M = f.size();
  CVec c = forward(f);
  CVec out = CVec::Zero(theta.size());
  for (Eigen::Index i = 0; i < theta.size(); ++i) {
    cplx acc = 0.0;
    for (Eigen::Index j = 0; j < M; ++j) {
      int k = wavenumber(j, M);
      if (2 * std::abs(k) == M) {
        acc += c(j) * std::cos(0.5 * M * theta(i));
      } else {
        acc += c(j) * std::exp(cplx(0.0, k * theta(i)));
      }
    }
    out(i) = acc;
  }
  return out;
}

Vec interpolate(const Vec& f, const Vec& theta) { return interpolate(CVec(f.cast<cplx>()), theta).real(); }

CVec resample(const CVec& f, Eigen::Index M2) {
  const Eigen::Index M = f.size();
  CVec c = forward(f);
  CVec c2 = CVec::Zero(M2);
  const Eigen::Index half = std::min(M, M2) / 2;
  for (Eigen::Index j = 0; j < M; ++j) {
    int k = wavenumber(j, M);
    if (std::abs(k) >= half) {
      if (std::abs(k) == half && M2 > M) {
        // split the Nyquist mode symmetrically
        c2(half) += 0.5 * c(j);
        c2(M2 - half) += 0.5 * c(j);
      } else if (std::abs(k) == half && M2 == M) {
        c2(j) = c(j);
      }
      continue;
    }
    c2(k >= 0 ? k : M2 + k) = c(j);
  }
  return inverse(c2);
}

Vec resample(const Vec& f, Eigen::Index M2) { return resample(CVec(f.cast<cplx>()), M2).real(); }

Mat derivative_matrix(Eigen::Index M) {
  Mat D(M, M);
  for (Eigen::Index j = 0; j < M; ++j) {
    Vec e = Vec::Zero(M);
    e(j) = 1.0;
    D.col(j) = derivative(e);
  }
  return D;
}

Vec nodes(Eigen::Index M) {
  Vec t(M);
  for (Eigen::Index j = 0; j < M; ++j) t(j) = 2.0 * M_PI * static_cast<double>(j) / static_cast<double>(M);
  return t;
}

}  // namespace sheetlimit::spectral
