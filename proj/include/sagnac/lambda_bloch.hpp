#pragma once

// Local density-matrix dynamics of the Lambda system in the co-rotating frame.
//
// Elements are vectorised in the fixed order
//   (rho11, rho12, rho13, rho21, rho22, rho23, rho31, rho32, rho33)
// and evolve as d/dt vec(rho) = (M + v_rec D d/dx) vec(rho). Non-local
// terms <Phi_mu^dagger d/dx Phi_1> are dropped, and Omega R d/dx drift is kept
// only in `rotation_drift` for diagnostics.

#include <complex>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "sagnac/units.hpp"

namespace sagnac {

using cplx = std::complex<double>;
using Vector9c = Eigen::Matrix<cplx, 9, 1>;
using Matrix9c = Eigen::Matrix<cplx, 9, 9>;
using Matrix9d = Eigen::Matrix<double, 9, 9>;
using Vector8c = Eigen::Matrix<cplx, 8, 1>;
using Matrix8c = Eigen::Matrix<cplx, 8, 8>;

/// Position of rho_{mu nu} (levels 1..3) in the vectorised layout.
constexpr int element_index(int mu, int nu) noexcept { return 3 * (mu - 1) + (nu - 1); }

struct BlochParams {
  double gamma1 = 0.0;
  double gamma3 = 0.0;
  double gamma13 = 0.0;
  cplx rabi_p{0.0, 0.0};
  cplx rabi_c{0.0, 0.0};
  double delta2 = 0.0;
  double delta3 = 0.0;
  double rotation_rate = 0.0;
  double radius = 0.0;
  double k_p = 0.0;

  double gamma2() const noexcept { return gamma1 + gamma3; }
};

/// Real-valued fields at the source (x = 0) taken from the physical inputs.
BlochParams bloch_params(const AtomSpecies& atom, const ProbeControlFields& fields,
                         const RingGeometry& geometry);

struct BlochGenerator {
  Matrix9c M;                // local generator
  Matrix9d D;                // coefficients of v_rec d/dx
  Matrix9d rotation_drift;   // coefficients of Omega R d/dx, not used by the solvers
  Matrix8c reduced;          // M with rho33 = n - rho11 - rho22 substituted, rho33 row dropped
  Vector8c source;           // reduced * y + source * n = 0 in steady state
};

/// Throws DegenerateEit when the control Rabi frequency is zero.
BlochGenerator build_generator(const BlochParams& params);

class DensityMatrix {
 public:
  DensityMatrix() = default;
  DensityMatrix(const Eigen::Matrix3cd& rho, double norm) : rho_(rho), norm_(norm) {}

  static DensityMatrix from_vector(const Vector9c& v, double norm);
  /// Rebuilds rho33 from the trace constraint.
  static DensityMatrix from_reduced(const Vector8c& y, double norm);

  /// 1-based access, rho(1, 2) is rho_12.
  cplx operator()(int mu, int nu) const { return rho_(mu - 1, nu - 1); }

  const Eigen::Matrix3cd& matrix() const noexcept { return rho_; }
  double norm() const noexcept { return norm_; }

  Vector9c vector() const;
  Vector8c reduced_vector() const;

  /// max |rho - rho^dagger| / norm
  double hermiticity_residual() const;
  /// |tr rho - norm| / norm
  double trace_residual() const;
  /// smallest real diagonal entry / norm
  double min_population() const;

 private:
  Eigen::Matrix3cd rho_ = Eigen::Matrix3cd::Zero();
  double norm_ = 1.0;
};

/// Solves M rho = 0 with tr rho = norm through the reduced 8x8 system.
/// Throws DegenerateSteadyState (carrying dim ker M) when the solution is not unique.
DensityMatrix steady_state(const BlochGenerator& gen, double norm);

/// rho_21, the coherence that sources the probe polarisation.
cplx coherence_rho21(const DensityMatrix& rho);

/// k_p |Omega| R / (gamma2 / 2): small values justify dropping the non-local terms.
double nonlocal_neglect_ratio(const BlochParams& params);

struct FirstOrderResult {
  std::vector<DensityMatrix> profile;
  /// v_rec T / L with T = ||reduced^-1|| and L the shortest length scale of the input profile.
  double expansion_parameter = 0.0;
  std::vector<std::string> warnings;
};

/// Applies (1 - v_rec reduced^-1 D d/dx) to a zeroth-order steady-state profile on a
/// uniform grid with spacing dx. d/dx uses second-order centred differences and
/// second-order one-sided stencils at the ends. One generator per grid point.
FirstOrderResult first_order_correction(std::span<const DensityMatrix> rho0,
                                        std::span<const BlochGenerator> generators,
                                        double v_rec, double dx);

/// Same, with one generator shared by every grid point.
FirstOrderResult first_order_correction(std::span<const DensityMatrix> rho0,
                                        const BlochGenerator& generator, double v_rec,
                                        double dx);

/// Second-order finite-difference derivative on a uniform grid.
std::vector<Vector8c> finite_difference(std::span<const Vector8c> values, double dx);

/// CSV dump of M (9 rows) followed by D (9 rows); each row has 18 columns holding the
/// real and imaginary parts of the 9 entries. Comment lines start with '#'.
void write_generator_csv(std::ostream& out, const BlochGenerator& gen);

}  // namespace sagnac
