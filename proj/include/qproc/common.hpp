#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace qproc {

using cplx = std::complex<double>;
using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Shared default tolerance for all max-norm "equals" checks. Operations that
/// compare matrices accept an explicit tolerance; this is the fallback.
inline constexpr double kDefaultTol = 1e-10;

/// Max-norm of a matrix (largest |entry|).
inline double max_abs(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

inline bool approx_equal(const Matrix& a, const Matrix& b, double tol = kDefaultTol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs(a - b) <= tol;
}

inline Matrix dagger(const Matrix& m) { return m.adjoint(); }

inline Matrix identity(Index d) { return Matrix::Identity(d, d); }

inline bool is_unitary(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m.adjoint() * m - identity(m.rows())) <= tol;
}

inline bool is_hermitian(const Matrix& m, double tol = kDefaultTol) {
  if (m.rows() != m.cols()) return false;
  return max_abs(m - m.adjoint()) <= tol;
}

/// Clamp a nominally-[0,1] quantity (fidelity, probability, error) into range.
/// Overshoot beyond `slack` indicates a genuine numerical failure and throws.
inline double clamp01(double x, double slack = 1e-8) {
  if (x < -slack || x > 1.0 + slack)
    throw std::runtime_error("value " + std::to_string(x) +
                             " outside [0,1] beyond numerical slack");
  return x < 0.0 ? 0.0 : (x > 1.0 ? 1.0 : x);
}

/// Data/program register sizes of a processor. Register order is fixed as
/// data (x) program everywhere; joint indices are data_index * program + program_index.
struct Dims {
  Index data = 0;
  Index program = 0;
  Index joint() const { return data * program; }
  bool operator==(const Dims&) const = default;
};

enum class Register { data, program };

}  // namespace qproc
