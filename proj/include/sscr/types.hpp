#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace sscr {

using Real = double;
using Complex = std::complex<Real>;

using Vec3 = Eigen::Vector3d;
using VecX = Eigen::VectorXd;
using CxVec = Eigen::VectorXcd;
using MatX = Eigen::MatrixXd;
using CxMat = Eigen::MatrixXcd;

inline constexpr Real kSpeedOfLight = 299792458.0;  // m/s
inline constexpr Real kPi = 3.14159265358979323846;

/// Thrown when an input file or configuration violates a documented invariant.
/// The message names the first violated invariant.
class ValidationError : public std::runtime_error {
 public:
  explicit ValidationError(const std::string& what_arg)
      : std::runtime_error(what_arg) {}
};

inline Real db_to_amplitude(Real db) { return std::pow(10.0, db / 20.0); }
inline Real db_to_power(Real db) { return std::pow(10.0, db / 10.0); }
inline Real power_to_db(Real p) { return 10.0 * std::log10(p); }

}  // namespace sscr
