#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "chaoskit/chaos.hpp"

namespace chaoskit {

// Nodes t_k = k T / N, k = 0..N.
struct GridSpec {
  double T = 1.0;
  int N = 2;
  GridSpec(double T_, int N_);
  double dt() const { return T / N; }
  double node(int k) const { return T * k / N; }
};

// dZ = -gamma Z dt + sqrt(a) dzeta, gamma = lambda - i omega, zeta a complex fBm of index H.
struct OUModel {
  double lambda = 1.0, omega = 0.0, a = 1.0, H = 0.5;
  Complex z0 = 0.0;
  OUModel(double lambda_, double omega_, double a_, double H_, Complex z0_ = 0.0);
  Complex gamma() const { return {lambda, -omega}; }
};

enum class PathKind { fbm, ou };

// `gaussians` are the standard complex coordinates (E|xi|^2 = 1) that generated the path.
struct ComplexPath {
  GridSpec grid;
  PathKind kind;
  std::vector<Complex> values;
  std::vector<Complex> gaussians;
};

// G_{jk} = <1_[t_j,t_{j+1}), 1_[t_k,t_{k+1})>_phi, phi = H(2H-1)|s-t|^{2H-2}; diag(dt) at H = 1/2.
Eigen::MatrixXd phi_gram(const GridSpec& grid, double H);

// Cholesky G = L L^T and E = L^T, so <f, g>_phi = <E f, E g> for step functions with
// cell values f. At H = 1/2, L = sqrt(dt) I is kept implicit.
class GramEmbedding {
 public:
  GramEmbedding(const GridSpec& grid, double H);
  const GridSpec& grid() const { return grid_; }
  double hurst() const { return H_; }
  bool diagonal() const { return diagonal_; }
  // Increments L xi: complex fBm increments from standard coordinates.
  std::vector<Complex> increments(const std::vector<Complex>& xi) const;
  // E f
  std::vector<Complex> embed(const std::vector<Complex>& f) const;
  // E K E^T for a cell kernel K[p][q] (holomorphic row, antiholomorphic column).
  Eigen::MatrixXcd embed_kernel(const Eigen::MatrixXcd& K) const;
  const Eigen::MatrixXd& lower() const { return L_; }

 private:
  GridSpec grid_;
  double H_;
  bool diagonal_;
  Eigen::MatrixXd L_;
};

ComplexPath simulate_cfbm(const GramEmbedding& emb, std::uint64_t seed);
ComplexPath simulate_cfbm(const GridSpec& grid, double H, std::uint64_t seed);

// H = 1/2: exact transition Z_{k+1} = e^{-gamma dt} Z_k + sqrt(a) s xi_k,
// s^2 = (1 - e^{-2 lambda dt}) / (2 lambda). H > 1/2: Z_{k+1} = e^{-gamma dt} Z_k + sqrt(a) dzeta_k.
ComplexPath simulate_cou(const OUModel& model, const GramEmbedding& emb, std::uint64_t seed);
ComplexPath simulate_cou(const OUModel& model, const GridSpec& grid, std::uint64_t seed);

// gamma_hat = -sum conj(Z_k)(Z_{k+1} - Z_k) / sum |Z_k|^2 dt
Complex lse_estimate(const ComplexPath& path);

// Cell kernel K[k][j] = T^{-1/2} e^{-conj(gamma)(t_k - t_{j+1})} for j < k, zero otherwise.
Eigen::MatrixXcd i11_cell_kernel(const OUModel& model, const GridSpec& grid);

// sqrt(T)(gamma_hat - gamma) = -a I_{1,1}(E K E^T)(xi) / ((1/T) int |Z|^2), with the
// trapezoid time average. eval_integral is used up to kDenseI11Limit cells; beyond that
// (H = 1/2 only) the same strictly lower-triangular form is summed by recursion.
inline constexpr int kDenseI11Limit = 1024;
struct I11Result {
  Complex numerator;  // I_{1,1}(E K E^T)(xi)
  double average = 0.0;
  Complex statistic;  // -a numerator / average
  ComplexPath path;
};
// E K E^T as a (1,1) kernel over d = N coordinates; reusable across replicas.
Kernel i11_embedded_kernel(const OUModel& model, const GramEmbedding& emb);
I11Result i11_statistic(const OUModel& model, const GramEmbedding& emb, std::uint64_t seed,
                        const Kernel* embedded = nullptr);
I11Result i11_statistic(const OUModel& model, const GridSpec& grid, std::uint64_t seed);

// Per-replica gamma_hat over `replicas` seeds derive_seed(seed, r). H = 1/2 uses
// lse_estimate; H > 1/2 uses gamma + statistic / sqrt(T) from i11_statistic.
struct OUExperiment {
  std::vector<Complex> gamma_hat;
  std::vector<Complex> sqrt_t_error;
  Complex mean_gamma_hat;
  double se_re = 0.0, se_im = 0.0;
  double normality = 0.0;  // sliced energy distance of sqrt(T) errors against a fitted complex Gaussian
  double normality_null = 0.0;
};
OUExperiment run_ou_experiment(const OUModel& model, const GridSpec& grid, int replicas, std::uint64_t seed,
                               unsigned workers = 1);

// Heat flow in coordinate k: sum_j s^j / j! (d_k dbar_k)^j p, i.e. E over an added
// Gaussian of variance s in coordinate k.
WickPoly heat_flow(const WickPoly& p, int k, const Rational& s);
// p with coordinate k set to zero.
WickPoly zero_coordinate(const WickPoly& p, int k);

// Clark-Ocone check at H = 1/2 for F = P(xi), xi_k the standard coordinate of cell k. The
// cell-k potential Phi_k(w, tau) = E[F | xi_0..xi_{k-1}, partial increment w at time
// fraction tau] is the heat flow of P_k = E[F | xi_0..xi_k] with variance 1 - tau.
struct ClarkOconeReport {
  // d_w Phi_k and dbar_w Phi_k equal the conditional expectations of D F and Dbar F,
  // exactly, at tau in {0, 1/3, 1}.
  bool integrand_matches = false;
  // Phi_k(xi_k, 1) = P_k and Phi_k(0, 0) = P_{k-1}, exactly.
  bool endpoints_match = false;
  // max over paths of |F - E F - sum_k int_cell (d Phi_k dW + dbar Phi_k dWbar)|
  double max_residual = 0.0;
  // max over paths of the left-point sum residual F - E F - sum_k (E[D F|F_k] xi_k + E[Dbar F|F_k] conj xi_k)
  double max_left_point_residual = 0.0;
  // E[D_{t_k} F | F_{t_k}] as polynomials, k = 0..N-1
  std::vector<WickPoly> integrands;
};
ClarkOconeReport clark_ocone_residual(const WickPoly& P, const GridSpec& grid, double H, std::size_t paths,
                                      std::uint64_t seed);

}  // namespace chaoskit
