#ifndef CAUSALMETRICS_COMMON_HPP
#define CAUSALMETRICS_COMMON_HPP

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace causalmetrics {

using Complex = std::complex<double>;
using CMat = Eigen::MatrixXcd;
using CVec = Eigen::VectorXcd;
using RMat = Eigen::MatrixXd;
using RVec = Eigen::VectorXd;

namespace tol {
inline constexpr double hermitian = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double state_norm = 1e-10;
inline constexpr double kraus_completeness = 1e-9;
inline constexpr double choi_tp = 1e-9;
inline constexpr double eig_cutoff = 1e-12;     // Kraus rank truncation
inline constexpr double cptp_projection = 1e-8; // Dykstra stopping violation
inline constexpr double ascent_gain = 1e-9;
inline constexpr double seesaw_stall = 1e-7;
} // namespace tol

namespace limits {
inline constexpr int cptp_projection_max_iter = 5000;
inline constexpr int ascent_max_iter = 500;
inline constexpr int seesaw_max_rounds = 200;
inline constexpr int seesaw_stall_rounds = 5;
inline constexpr int reference_max_dim = 16; // input dimension cap for diamond_reference
inline constexpr int max_state_dim = 256;    // total dimension cap for estimator witnesses
inline constexpr int max_subsystem_dim = 64;
} // namespace limits

/// Raised when an iterative solver fails to meet its stopping criterion.
class convergence_error : public std::runtime_error {
 public:
  explicit convergence_error(const std::string& what) : std::runtime_error(what) {}
};

/// Raised when a constructed object breaks one of its structural invariants.
class invariant_error : public std::runtime_error {
 public:
  explicit invariant_error(const std::string& what) : std::runtime_error(what) {}
};

bool is_hermitian(const CMat& m, double eps = tol::hermitian);
bool is_unitary(const CMat& m, double eps = tol::unitary);
bool is_psd(const CMat& m, double eps = tol::psd);

/// (M + M†)/2, discarding antihermitian numerical noise.
CMat hermitize(const CMat& m);

} // namespace causalmetrics

#endif
