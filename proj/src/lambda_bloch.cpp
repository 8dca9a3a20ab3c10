#include "sagnac/lambda_bloch.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <sstream>

#include "sagnac/errors.hpp"

namespace sagnac {

namespace {

constexpr cplx I{0.0, 1.0};

constexpr int idx(int mu, int nu) { return element_index(mu, nu); }

constexpr int transposed(int k) { return 3 * (k % 3) + k / 3; }

int rank_of(const Matrix9c& M) {
  Eigen::FullPivLU<Matrix9c> lu(M);
  lu.setThreshold(1e-12);
  return static_cast<int>(lu.rank());
}

}  // namespace

BlochParams bloch_params(const AtomSpecies& atom, const ProbeControlFields& fields,
                         const RingGeometry& geometry) {
  BlochParams p;
  p.gamma1 = atom.gamma1;
  p.gamma3 = atom.gamma3;
  p.gamma13 = atom.gamma13;
  p.rabi_p = cplx(fields.rabi_p0, 0.0);
  p.rabi_c = cplx(fields.rabi_c, 0.0);
  p.delta2 = fields.delta2;
  p.delta3 = fields.delta3;
  p.rotation_rate = geometry.rotation_rate;
  p.radius = geometry.radius;
  p.k_p = fields.k_p();
  return p;
}

BlochGenerator build_generator(const BlochParams& p) {
  if (std::abs(p.rabi_c) == 0.0) {
    throw DegenerateEit("control Rabi frequency is zero: no EIT");
  }
  const cplx op = p.rabi_p;
  const cplx oc = p.rabi_c;
  const cplx opc = std::conj(op);
  const cplx occ = std::conj(oc);
  const double g2 = p.gamma2();
  const double shift = p.rotation_rate * p.radius * p.k_p;

  BlochGenerator gen;
  Matrix9c& M = gen.M;
  M.setZero();

  // Rows for rho11, rho22, rho33, rho12, rho13, rho23; the rest follow by conjugation.
  M(idx(1, 1), idx(2, 2)) = p.gamma1;
  M(idx(1, 1), idx(2, 1)) = -I * opc;
  M(idx(1, 1), idx(1, 2)) = I * op;

  M(idx(2, 2), idx(2, 2)) = -g2;
  M(idx(2, 2), idx(2, 1)) = I * opc;
  M(idx(2, 2), idx(1, 2)) = -I * op;
  M(idx(2, 2), idx(2, 3)) = I * occ;
  M(idx(2, 2), idx(3, 2)) = -I * oc;

  M(idx(3, 3), idx(2, 2)) = p.gamma3;
  M(idx(3, 3), idx(2, 3)) = -I * occ;
  M(idx(3, 3), idx(3, 2)) = I * oc;

  M(idx(1, 2), idx(1, 2)) = -(I * (p.delta2 + shift) + g2 / 2.0);
  M(idx(1, 2), idx(1, 3)) = I * occ;
  M(idx(1, 2), idx(2, 2)) = -I * opc;
  M(idx(1, 2), idx(1, 1)) = I * opc;

  M(idx(1, 3), idx(1, 3)) = -(I * (p.delta3 + shift) + p.gamma13);
  M(idx(1, 3), idx(2, 3)) = -I * opc;
  M(idx(1, 3), idx(1, 2)) = I * oc;

  M(idx(2, 3), idx(2, 3)) = I * (p.delta2 - p.delta3) - g2 / 2.0;
  M(idx(2, 3), idx(1, 3)) = -I * op;
  M(idx(2, 3), idx(3, 3)) = -I * oc;
  M(idx(2, 3), idx(2, 2)) = I * oc;

  for (auto [mu, nu] : {std::pair{2, 1}, std::pair{3, 1}, std::pair{3, 2}}) {
    const int row = idx(mu, nu);
    const int src = idx(nu, mu);
    for (int col = 0; col < 9; ++col) {
      M(row, transposed(col)) = std::conj(M(src, col));
    }
  }

  gen.D = Matrix9d::Identity();
  gen.D(idx(1, 1), idx(1, 1)) = 0.0;
  gen.rotation_drift = Matrix9d::Identity();

  const int r33 = idx(3, 3);
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) gen.reduced(i, j) = M(i, j);
    gen.reduced(i, idx(1, 1)) -= M(i, r33);
    gen.reduced(i, idx(2, 2)) -= M(i, r33);
    gen.source(i) = M(i, r33);
  }
  return gen;
}

DensityMatrix DensityMatrix::from_vector(const Vector9c& v, double norm) {
  Eigen::Matrix3cd rho;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) rho(mu, nu) = v(3 * mu + nu);
  }
  return DensityMatrix(rho, norm);
}

DensityMatrix DensityMatrix::from_reduced(const Vector8c& y, double norm) {
  Vector9c v;
  v.head<8>() = y;
  v(8) = norm - y(idx(1, 1)) - y(idx(2, 2));
  return from_vector(v, norm);
}

Vector9c DensityMatrix::vector() const {
  Vector9c v;
  for (int mu = 0; mu < 3; ++mu) {
    for (int nu = 0; nu < 3; ++nu) v(3 * mu + nu) = rho_(mu, nu);
  }
  return v;
}

Vector8c DensityMatrix::reduced_vector() const { return vector().head<8>(); }

double DensityMatrix::hermiticity_residual() const {
  return (rho_ - rho_.adjoint()).cwiseAbs().maxCoeff() / std::abs(norm_);
}

double DensityMatrix::trace_residual() const {
  return std::abs(rho_.trace() - norm_) / std::abs(norm_);
}

double DensityMatrix::min_population() const {
  return rho_.diagonal().real().minCoeff() / norm_;
}

DensityMatrix steady_state(const BlochGenerator& gen, double norm) {
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw InvalidParameter("steady_state: norm must be positive");
  }
  const double scale = gen.reduced.cwiseAbs().maxCoeff();
  Eigen::FullPivLU<Matrix8c> lu(gen.reduced / scale);
  lu.setThreshold(1e-12);
  if (!lu.isInvertible()) {
    const double mscale = gen.M.cwiseAbs().maxCoeff();
    const int nullity = 9 - rank_of(gen.M / mscale);
    std::ostringstream msg;
    msg << "steady state is not unique: generator has a " << nullity
        << "-dimensional null space";
    throw DegenerateSteadyState(msg.str(), nullity);
  }
  const Vector8c y = lu.solve(-gen.source * (norm / scale));
  return DensityMatrix::from_reduced(y, norm);
}

cplx coherence_rho21(const DensityMatrix& rho) { return rho(2, 1); }

double nonlocal_neglect_ratio(const BlochParams& p) {
  const double g2 = p.gamma2();
  if (g2 <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(p.k_p * p.rotation_rate * p.radius) / (g2 / 2.0);
}

std::vector<Vector8c> finite_difference(std::span<const Vector8c> f, double dx) {
  const std::size_t n = f.size();
  if (n < 3) throw InvalidParameter("finite_difference: need at least 3 grid points");
  if (!(dx > 0.0)) throw InvalidParameter("finite_difference: dx must be positive");
  std::vector<Vector8c> d(n);
  d[0] = (-3.0 * f[0] + 4.0 * f[1] - f[2]) / (2.0 * dx);
  for (std::size_t i = 1; i + 1 < n; ++i) d[i] = (f[i + 1] - f[i - 1]) / (2.0 * dx);
  d[n - 1] = (3.0 * f[n - 1] - 4.0 * f[n - 2] + f[n - 3]) / (2.0 * dx);
  return d;
}

FirstOrderResult first_order_correction(std::span<const DensityMatrix> rho0,
                                        std::span<const BlochGenerator> generators,
                                        double v_rec, double dx) {
  const std::size_t n = rho0.size();
  if (generators.size() != n && generators.size() != 1) {
    throw InvalidParameter("first_order_correction: need one generator per grid point");
  }
  std::vector<Vector8c> y0(n);
  for (std::size_t i = 0; i < n; ++i) y0[i] = rho0[i].reduced_vector();
  const std::vector<Vector8c> dy = finite_difference(y0, dx);

  FirstOrderResult out;
  out.profile.reserve(n);
  double max_t = 0.0;
  double min_len = std::numeric_limits<double>::infinity();
  const Eigen::Matrix<double, 8, 8> d8 = generators[0].D.topLeftCorner<8, 8>();

  for (std::size_t i = 0; i < n; ++i) {
    const BlochGenerator& gen = generators.size() == 1 ? generators[0] : generators[i];
    Eigen::FullPivLU<Matrix8c> lu(gen.reduced);
    if (!lu.isInvertible()) {
      throw DegenerateSteadyState("first_order_correction: reduced generator is singular",
                                  9 - rank_of(gen.M));
    }
    const Matrix8c inv = lu.inverse();
    max_t = std::max(max_t, inv.cwiseAbs().rowwise().sum().maxCoeff());

    const double slope = dy[i].norm();
    if (slope > 0.0) min_len = std::min(min_len, y0[i].norm() / slope);

    const Vector8c correction = -v_rec * (inv * (d8.cast<cplx>() * dy[i]));
    out.profile.push_back(DensityMatrix::from_reduced(y0[i] + correction, rho0[i].norm()));
  }

  out.expansion_parameter = std::isfinite(min_len) ? std::abs(v_rec) * max_t / min_len : 0.0;
  if (out.expansion_parameter >= 0.1) {
    std::ostringstream msg;
    msg << "first-order correction: expansion parameter v_rec*T/L = "
        << out.expansion_parameter << " is not small";
    out.warnings.push_back(msg.str());
  }
  return out;
}

FirstOrderResult first_order_correction(std::span<const DensityMatrix> rho0,
                                        const BlochGenerator& generator, double v_rec,
                                        double dx) {
  return first_order_correction(rho0, std::span<const BlochGenerator>(&generator, 1), v_rec,
                                dx);
}

void write_generator_csv(std::ostream& out, const BlochGenerator& gen) {
  static const char* names[9] = {"rho11", "rho12", "rho13", "rho21", "rho22",
                                 "rho23", "rho31", "rho32", "rho33"};
  const auto old_flags = out.flags();
  const auto old_prec = out.precision();
  out.precision(17);
  out << "# rows: M then D, in the order";
  for (const char* n : names) out << ' ' << n;
  out << "\n# columns: re,im of each entry in the same order\n";
  out << "# interpreted: row rho23 detuning term +i(delta2-delta3) - gamma2/2\n";
  auto write_row = [&](auto&& row) {
    for (int j = 0; j < 9; ++j) {
      if (j) out << ',';
      out << std::real(row(j)) << ',' << std::imag(row(j));
    }
    out << '\n';
  };
  for (int i = 0; i < 9; ++i) write_row(gen.M.row(i));
  for (int i = 0; i < 9; ++i) {
    const Vector9c row = gen.D.row(i).transpose().cast<cplx>();
    write_row(row);
  }
  out.flags(old_flags);
  out.precision(old_prec);
}

}  // namespace sagnac
