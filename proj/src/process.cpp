#include "chaoskit/process.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "chaoskit/moments.hpp"

namespace chaoskit {

GridSpec::GridSpec(double T_, int N_) : T(T_), N(N_) {
  if (!(T > 0.0)) throw std::invalid_argument("GridSpec: need T > 0");
  if (N < 2) throw std::invalid_argument("GridSpec: need N >= 2");
}

OUModel::OUModel(double lambda_, double omega_, double a_, double H_, Complex z0_)
    : lambda(lambda_), omega(omega_), a(a_), H(H_), z0(z0_) {
  if (!(lambda > 0.0)) throw std::invalid_argument("OUModel: need lambda > 0");
  if (a < 0.0) throw std::invalid_argument("OUModel: need a >= 0");
  if (!(H >= 0.5 && H < 0.75)) throw std::invalid_argument("OUModel: need H in [1/2, 3/4)");
}

namespace {

void require_hurst(double H, double hi, const char* who) {
  if (!(H >= 0.5 && H < hi)) throw std::invalid_argument(std::string(who) + ": Hurst index out of range");
}

std::vector<Complex> standard_coordinates(int n, std::uint64_t seed) {
  Rng rng(derive_seed(seed, 0));
  return draw_complex_gaussians(rng, static_cast<std::size_t>(n));
}

double trapezoid_mean_sq(const ComplexPath& path) {
  const auto& z = path.values;
  double acc = 0.5 * (std::norm(z.front()) + std::norm(z.back()));
  for (std::size_t k = 1; k + 1 < z.size(); ++k) acc += std::norm(z[k]);
  return acc * path.grid.dt() / path.grid.T;
}

}  // namespace

Eigen::MatrixXd phi_gram(const GridSpec& grid, double H) {
  require_hurst(H, 1.0, "phi_gram");
  const int N = grid.N;
  const double h2 = 2.0 * H;
  const double scale = 0.5 * std::pow(grid.dt(), h2);
  // Toeplitz in j - k: increments of t^{2H} on the integer lattice.
  std::vector<double> row(static_cast<std::size_t>(N));
  for (int k = 0; k < N; ++k)
    row[k] = scale * (std::pow(k + 1.0, h2) + std::pow(std::abs(k - 1.0), h2) - 2.0 * std::pow(static_cast<double>(k), h2));
  Eigen::MatrixXd G(N, N);
  for (int j = 0; j < N; ++j)
    for (int k = 0; k < N; ++k) G(j, k) = row[std::abs(j - k)];
  return G;
}

GramEmbedding::GramEmbedding(const GridSpec& grid, double H) : grid_(grid), H_(H), diagonal_(H == 0.5) {
  require_hurst(H, 1.0, "GramEmbedding");
  if (diagonal_) return;
  const Eigen::MatrixXd G = phi_gram(grid, H);
  Eigen::LLT<Eigen::MatrixXd> llt(G);
  bool ok = llt.info() == Eigen::Success;
  if (ok) {
    L_ = llt.matrixL();
    ok = L_.diagonal().minCoeff() > 1e-12 * std::sqrt(G.diagonal().maxCoeff());
  }
  if (!ok) {
    const double lo = Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd>(G, Eigen::EigenvaluesOnly).eigenvalues().minCoeff();
    throw std::domain_error("GramEmbedding: Gram matrix numerically singular, smallest eigenvalue " + std::to_string(lo));
  }
}

std::vector<Complex> GramEmbedding::increments(const std::vector<Complex>& xi) const {
  const int N = grid_.N;
  if (static_cast<int>(xi.size()) != N) throw std::invalid_argument("GramEmbedding: coordinate count");
  std::vector<Complex> out(xi.size());
  if (diagonal_) {
    const double s = std::sqrt(grid_.dt());
    for (int k = 0; k < N; ++k) out[k] = s * xi[k];
    return out;
  }
  for (int j = 0; j < N; ++j) {
    Complex acc = 0.0;
    for (int k = 0; k <= j; ++k) acc += L_(j, k) * xi[k];
    out[j] = acc;
  }
  return out;
}

std::vector<Complex> GramEmbedding::embed(const std::vector<Complex>& f) const {
  const int N = grid_.N;
  if (static_cast<int>(f.size()) != N) throw std::invalid_argument("GramEmbedding: cell count");
  std::vector<Complex> out(f.size());
  if (diagonal_) {
    const double s = std::sqrt(grid_.dt());
    for (int k = 0; k < N; ++k) out[k] = s * f[k];
    return out;
  }
  for (int a = 0; a < N; ++a) {
    Complex acc = 0.0;
    for (int k = a; k < N; ++k) acc += L_(k, a) * f[k];
    out[a] = acc;
  }
  return out;
}

Eigen::MatrixXcd GramEmbedding::embed_kernel(const Eigen::MatrixXcd& K) const {
  if (K.rows() != grid_.N || K.cols() != grid_.N) throw std::invalid_argument("GramEmbedding: kernel shape");
  if (diagonal_) return K * grid_.dt();
  const Eigen::MatrixXcd Lc = L_.cast<Complex>();
  return Lc.transpose() * K * Lc;
}

ComplexPath simulate_cfbm(const GramEmbedding& emb, std::uint64_t seed) {
  require_hurst(emb.hurst(), 0.75, "simulate_cfbm");
  ComplexPath path{emb.grid(), PathKind::fbm, {}, standard_coordinates(emb.grid().N, seed)};
  const std::vector<Complex> dz = emb.increments(path.gaussians);
  path.values.assign(dz.size() + 1, 0.0);
  for (std::size_t k = 0; k < dz.size(); ++k) path.values[k + 1] = path.values[k] + dz[k];
  return path;
}

ComplexPath simulate_cfbm(const GridSpec& grid, double H, std::uint64_t seed) {
  return simulate_cfbm(GramEmbedding(grid, H), seed);
}

ComplexPath simulate_cou(const OUModel& model, const GramEmbedding& emb, std::uint64_t seed) {
  if (emb.hurst() != model.H) throw std::invalid_argument("simulate_cou: embedding and model Hurst differ");
  const GridSpec& grid = emb.grid();
  ComplexPath path{grid, PathKind::ou, {}, standard_coordinates(grid.N, seed)};
  const double dt = grid.dt();
  const Complex decay = std::exp(-model.gamma() * dt);
  std::vector<Complex> noise;
  if (emb.diagonal()) {
    const double s = std::sqrt((1.0 - std::exp(-2.0 * model.lambda * dt)) / (2.0 * model.lambda));
    for (const Complex& x : path.gaussians) noise.push_back(s * x);
  } else {
    noise = emb.increments(path.gaussians);
  }
  const double amp = std::sqrt(model.a);
  path.values.resize(static_cast<std::size_t>(grid.N) + 1);
  path.values[0] = model.z0;
  for (int k = 0; k < grid.N; ++k) path.values[k + 1] = decay * path.values[k] + amp * noise[k];
  return path;
}

ComplexPath simulate_cou(const OUModel& model, const GridSpec& grid, std::uint64_t seed) {
  return simulate_cou(model, GramEmbedding(grid, model.H), seed);
}

Complex lse_estimate(const ComplexPath& path) {
  const auto& z = path.values;
  Complex num = 0.0;
  double den = 0.0;
  for (std::size_t k = 0; k + 1 < z.size(); ++k) {
    num += std::conj(z[k]) * (z[k + 1] - z[k]);
    den += std::norm(z[k]);
  }
  den *= path.grid.dt();
  if (den == 0.0) throw std::domain_error("lse_estimate: degenerate path");
  return -num / den;
}

Eigen::MatrixXcd i11_cell_kernel(const OUModel& model, const GridSpec& grid) {
  const int N = grid.N;
  const Complex gbar = std::conj(model.gamma());
  const double c = 1.0 / std::sqrt(grid.T);
  Eigen::MatrixXcd K = Eigen::MatrixXcd::Zero(N, N);
  for (int k = 0; k < N; ++k)
    for (int j = 0; j < k; ++j) K(k, j) = c * std::exp(-gbar * (grid.dt() * (k - j - 1)));
  return K;
}

Kernel i11_embedded_kernel(const OUModel& model, const GramEmbedding& emb) {
  const int N = emb.grid().N;
  if (N > kDenseI11Limit) throw std::invalid_argument("i11_embedded_kernel: grid above the dense limit");
  const Eigen::MatrixXcd Kp = emb.embed_kernel(i11_cell_kernel(model, emb.grid()));
  Kernel out(N, 1, 1);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) out.at({a, b}) = Kp(a, b);
  return out;
}

I11Result i11_statistic(const OUModel& model, const GramEmbedding& emb, std::uint64_t seed, const Kernel* embedded) {
  I11Result res{0.0, 0.0, 0.0, simulate_cou(model, emb, seed)};
  const GridSpec& grid = emb.grid();
  const std::vector<Complex>& xi = res.path.gaussians;
  if (embedded != nullptr || grid.N <= kDenseI11Limit) {
    if (embedded != nullptr) {
      res.numerator = eval_integral(*embedded, xi);
    } else {
      res.numerator = eval_integral(i11_embedded_kernel(model, emb), xi);
    }
  } else {
    if (!emb.diagonal()) throw std::invalid_argument("i11_statistic: dense limit exceeded for H > 1/2");
    // sum_{j<k} K[k][j] dt xi_k conj(xi_j); the trace term vanishes for a strictly lower kernel.
    const Complex step = std::exp(-std::conj(model.gamma()) * grid.dt());
    Complex w = 0.0, acc = 0.0;
    for (int k = 0; k < grid.N; ++k) {
      if (k > 0) w = step * w + std::conj(xi[k - 1]);
      acc += w * xi[k];
    }
    res.numerator = acc * grid.dt() / std::sqrt(grid.T);
  }
  res.average = trapezoid_mean_sq(res.path);
  if (res.average == 0.0) throw std::domain_error("i11_statistic: degenerate path");
  res.statistic = -model.a * res.numerator / res.average;
  return res;
}

I11Result i11_statistic(const OUModel& model, const GridSpec& grid, std::uint64_t seed) {
  return i11_statistic(model, GramEmbedding(grid, model.H), seed);
}

OUExperiment run_ou_experiment(const OUModel& model, const GridSpec& grid, int replicas, std::uint64_t seed,
                               unsigned workers) {
  if (replicas < 2) throw std::invalid_argument("run_ou_experiment: need at least 2 replicas");
  const GramEmbedding emb(grid, model.H);
  const bool direct = emb.diagonal();
  Kernel embedded;
  if (!direct) embedded = i11_embedded_kernel(model, emb);
  const double rt = std::sqrt(grid.T);
  OUExperiment out;
  out.gamma_hat.resize(static_cast<std::size_t>(replicas));
  out.sqrt_t_error.resize(static_cast<std::size_t>(replicas));
  parallel_for(static_cast<std::size_t>(replicas), workers, [&](std::size_t r) {
    const std::uint64_t s = derive_seed(seed, r);
    const Complex g = direct ? lse_estimate(simulate_cou(model, emb, s))
                             : model.gamma() + i11_statistic(model, emb, s, &embedded).statistic / rt;
    out.gamma_hat[r] = g;
    out.sqrt_t_error[r] = rt * (g - model.gamma());
  });
  const double n = replicas;
  Complex mean = 0.0;
  for (const Complex& g : out.gamma_hat) mean += g;
  mean /= n;
  double vr = 0.0, vi = 0.0, s2 = 0.0;
  Complex sq = 0.0;
  for (std::size_t r = 0; r < out.gamma_hat.size(); ++r) {
    vr += std::pow(out.gamma_hat[r].real() - mean.real(), 2);
    vi += std::pow(out.gamma_hat[r].imag() - mean.imag(), 2);
    s2 += std::norm(out.sqrt_t_error[r]);
    sq += out.sqrt_t_error[r] * out.sqrt_t_error[r];
  }
  out.mean_gamma_hat = mean;
  out.se_re = std::sqrt(vr / (n - 1) / n);
  out.se_im = std::sqrt(vi / (n - 1) / n);
  s2 /= n;
  sq /= n;
  const std::uint64_t ref_seed = derive_seed(seed, 1ULL << 40);
  const auto ref = bivariate_normal_samples(s2, sq.real(), sq.imag(), out.sqrt_t_error.size(), ref_seed, workers);
  const auto null = bivariate_normal_samples(s2, sq.real(), sq.imag(), out.sqrt_t_error.size(), ref_seed + 1, workers);
  out.normality = sliced_energy_distance(out.sqrt_t_error, ref);
  out.normality_null = sliced_energy_distance(null, ref);
  return out;
}

WickPoly heat_flow(const WickPoly& p, int k, const Rational& s) {
  WickPoly acc = p, term = p;
  for (int j = 1; !term.is_zero(); ++j) {
    term = term.d_z(k).d_zbar(k) * QComplex(s / Rational(j));
    acc += term;
  }
  return acc;
}

WickPoly zero_coordinate(const WickPoly& p, int k) {
  WickPoly out(p.d());
  for (const auto& [e, c] : p.terms())
    if (e[k] == 0 && e[p.d() + k] == 0) out.add_term(e, c);
  return out;
}

ClarkOconeReport clark_ocone_residual(const WickPoly& P, const GridSpec& grid, double H, std::size_t paths,
                                      std::uint64_t seed) {
  if (H != 0.5) throw std::invalid_argument("clark_ocone_residual: only H = 1/2 is supported");
  const int N = grid.N;
  if (P.d() != N) throw std::invalid_argument("clark_ocone_residual: polynomial must have one coordinate per cell");
  auto future = [N](int k, bool inclusive) {
    std::vector<bool> mask(static_cast<std::size_t>(N), false);
    for (int j = inclusive ? k : k + 1; j < N; ++j) mask[j] = true;
    return mask;
  };
  ClarkOconeReport rep;
  rep.integrand_matches = true;
  rep.endpoints_match = true;
  const QComplex mean = expect_gaussian(P);
  std::vector<WickPoly> start, finish, left, left_bar;
  WickPoly previous = WickPoly::constant(N, mean);
  for (int k = 0; k < N; ++k) {
    const WickPoly Pk = expect_partial(P, future(k, false));
    const WickPoly dk = expect_partial(P.d_z(k), future(k, false));
    const WickPoly dbk = expect_partial(P.d_zbar(k), future(k, false));
    for (const Rational tau : {Rational(0), Rational(1, 3), Rational(1)}) {
      const WickPoly phi = heat_flow(Pk, k, 1 - tau);
      if (phi.d_z(k) != heat_flow(dk, k, 1 - tau) || phi.d_zbar(k) != heat_flow(dbk, k, 1 - tau))
        rep.integrand_matches = false;
    }
    const WickPoly at_start = zero_coordinate(heat_flow(Pk, k, Rational(1)), k);
    if (at_start != previous) rep.endpoints_match = false;
    start.push_back(at_start);
    finish.push_back(Pk);
    previous = Pk;
    left.push_back(expect_partial(P.d_z(k), future(k, true)));
    left_bar.push_back(expect_partial(P.d_zbar(k), future(k, true)));
  }
  rep.integrands = left;

  const CompiledPoly F(P);
  std::vector<CompiledPoly> cs, cf, cl, clb;
  for (int k = 0; k < N; ++k) {
    cs.emplace_back(start[k]);
    cf.emplace_back(finish[k]);
    cl.emplace_back(left[k]);
    clb.emplace_back(left_bar[k]);
  }
  const Complex ef = to_complex(mean);
  for (std::size_t p = 0; p < paths; ++p) {
    Rng rng(derive_seed(seed, p));
    const std::vector<Complex> xi = draw_complex_gaussians(rng, static_cast<std::size_t>(N));
    const Complex centered = F(xi) - ef;
    Complex cells = 0.0, riemann = 0.0;
    for (int k = 0; k < N; ++k) {
      cells += cf[k](xi) - cs[k](xi);
      riemann += cl[k](xi) * xi[k] + clb[k](xi) * std::conj(xi[k]);
    }
    rep.max_residual = std::max(rep.max_residual, std::abs(centered - cells));
    rep.max_left_point_residual = std::max(rep.max_left_point_residual, std::abs(centered - riemann));
  }
  return rep;
}

}  // namespace chaoskit
