// SU(2) backend.
//
// Elements are unit quaternions q = (w,x,y,z) identified with
//   U(q) = w I - i (x s1 + y s2 + z s3)
// for Pauli matrices s1,s2,s3. Irreps are Wigner-D matrices in the weight
// basis ordered m = l, l-1, ..., -l (rows/columns indexed u with m_u = l-u),
// evaluated through ZYZ Euler angles:
//   D^l(a,b,c)_{uv} = e^{-i m_u a} d^l_{uv}(b) e^{-i m_v c}.
// The little-d matrix is obtained from the eigendecomposition of the
// tridiagonal J_y, which is exact to roundoff and stable at every band used
// here. Generators: Y_j = -i s_j / 2, so sigma_{Y_3}(l) = i diag(-l..l) and the
// Laplace-Beltrami eigenvalue is l(l+1) (Killing-normalized convention).
//
// Half-integer labels are stored as two_ell = 2l. Quadrature uses a product
// rule uniform in both Euler phases over their full 4*pi ranges (so products of
// integer and half-integer coefficients integrate exactly) and Gauss-Legendre
// in cos(beta).

#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <random>

#include "groupquant/group.hpp"
#include "groupquant/parallel.hpp"

namespace gq {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct Euler {
  double alpha, beta, gamma;
};

GroupElement quat(double w, double x, double y, double z) {
  GroupElement q(4);
  q << w, x, y, z;
  return q;
}

GroupElement quat_multiply(const GroupElement& a, const GroupElement& b) {
  const double w1 = a[0], x1 = a[1], y1 = a[2], z1 = a[3];
  const double w2 = b[0], x2 = b[1], y2 = b[2], z2 = b[3];
  return quat(w1 * w2 - x1 * x2 - y1 * y2 - z1 * z2,
              w1 * x2 + x1 * w2 + y1 * z2 - z1 * y2,
              w1 * y2 - x1 * z2 + y1 * w2 + z1 * x2,
              w1 * z2 + x1 * y2 - y1 * x2 + z1 * w2);
}

GroupElement quat_from_euler(double alpha, double beta, double gamma) {
  GroupElement za = quat(std::cos(alpha / 2), 0, 0, std::sin(alpha / 2));
  GroupElement yb = quat(std::cos(beta / 2), 0, std::sin(beta / 2), 0);
  GroupElement zc = quat(std::cos(gamma / 2), 0, 0, std::sin(gamma / 2));
  return quat_multiply(quat_multiply(za, yb), zc);
}

// ZYZ extraction. U00 = cos(b/2) e^{-i(a+c)/2}, U10 = sin(b/2) e^{i(a-c)/2};
// the returned triple reproduces U exactly, including the central sign.
Euler euler_from_quat(const GroupElement& q) {
  const Complex u00(q[0], -q[3]);
  const Complex u10(q[2], -q[1]);
  const double c = std::abs(u00);
  const double s = std::abs(u10);
  Euler e;
  e.beta = 2.0 * std::atan2(s, c);
  double psi = (c > 1e-300) ? -std::arg(u00) : 0.0;  // (a+c)/2
  double chi = (s > 1e-300) ? std::arg(u10) : 0.0;   // (a-c)/2
  e.alpha = psi + chi;
  e.gamma = psi - chi;
  return e;
}

// Gauss-Legendre nodes/weights on [-1,1] by Newton iteration.
void gauss_legendre(int n, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(n, 0.0);
  weights.assign(n, 0.0);
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    nodes[i] = -x;
    nodes[n - 1 - i] = x;
    weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
    weights[n - 1 - i] = weights[i];
  }
}

// Eigendata of the phase-conjugated J_y (real symmetric tridiagonal T with
// off-diagonal -a_m/2); d^l(beta) = D^{-1} exp(-i beta T) D for D = diag(i^u).
struct WignerData {
  Eigen::MatrixXd V;
  Eigen::VectorXd eigs;
};

class SU2Model final : public GroupModel {
public:
  explicit SU2Model(std::vector<int> sub_gens) : sub_gens_(std::move(sub_gens)) {
    for (int j : sub_gens_)
      if (j < 0 || j > 2) throw std::invalid_argument("SU(2) generator index out of range");
    if (sub_gens_.empty()) throw std::invalid_argument("empty sub-Laplacian generator set");
  }

  std::string name() const override { return "SU2"; }

  LieBasis lie_basis() const override {
    LieBasis b;
    b.dim = 3;
    b.split_index = 2;  // m = span{Y1, Y2}, k = span{Y3}
    b.metric = Eigen::MatrixXd::Identity(3, 3);
    return b;
  }

  std::vector<IrrepId> enumerate_dual(int band) const override {
    if (band < 0) throw std::invalid_argument("band must be nonnegative");
    std::vector<IrrepId> dual;
    dual.reserve(2 * band + 1);
    for (int two_ell = 0; two_ell <= 2 * band; ++two_ell)
      dual.push_back(IrrepId{{two_ell}, two_ell + 1});
    return dual;
  }

  GroupElement identity() const override { return quat(1, 0, 0, 0); }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    return quat_multiply(a, b);
  }

  GroupElement inverse(const GroupElement& a) const override {
    return quat(a[0], -a[1], -a[2], -a[3]);
  }

  GroupElement exp_generator(int j, double t) const override {
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    switch (j) {
      case 0: return quat(c, s, 0, 0);
      case 1: return quat(c, 0, s, 0);
      case 2: return quat(c, 0, 0, s);
      default: throw std::invalid_argument("SU(2) generator index out of range");
    }
  }

  GroupElement random_element(std::uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    GroupElement q(4);
    do {
      for (int i = 0; i < 4; ++i) q[i] = gauss(rng);
    } while (q.norm() < 1e-8);
    q /= q.norm();
    return q;
  }

  MatrixXcd irrep_matrix(const IrrepId& xi, const GroupElement& g) const override {
    const int two_ell = label_of(xi);
    const Euler e = euler_from_quat(g);
    MatrixXcd d = little_d(two_ell, e.beta);
    const int dim = two_ell + 1;
    MatrixXcd out(dim, dim);
    for (int u = 0; u < dim; ++u) {
      const double mu = 0.5 * (two_ell - 2 * u);
      const Complex pa = std::polar(1.0, -mu * e.alpha);
      for (int v = 0; v < dim; ++v) {
        const double mv = 0.5 * (two_ell - 2 * v);
        out(u, v) = pa * d(u, v) * std::polar(1.0, -mv * e.gamma);
      }
    }
    return out;
  }

  MatrixXcd vector_field_symbol(int j, const IrrepId& xi) const override {
    const int two_ell = label_of(xi);
    const int dim = two_ell + 1;
    const double ell = 0.5 * two_ell;
    MatrixXcd out = MatrixXcd::Zero(dim, dim);
    const Complex I(0.0, 1.0);
    if (j == 2) {
      for (int u = 0; u < dim; ++u) out(u, u) = -I * (ell - u);
      return out;
    }
    // ladder elements a(m') = sqrt(l(l+1) - m'(m'+1)) coupling u <-> u+1
    for (int u = 0; u + 1 < dim; ++u) {
      const double mp = ell - u - 1;
      const double a = std::sqrt(ell * (ell + 1) - mp * (mp + 1));
      if (j == 0) {  // -i J_x
        out(u, u + 1) = -I * (a / 2.0);
        out(u + 1, u) = -I * (a / 2.0);
      } else {  // -i J_y
        out(u, u + 1) = -I * (-I * (a / 2.0));
        out(u + 1, u) = -I * (I * (a / 2.0));
      }
    }
    return out;
  }

  double laplace_eigenvalue(const IrrepId& xi) const override {
    const double ell = 0.5 * label_of(xi);
    return ell * (ell + 1.0);
  }

  VectorXd sub_laplacian_diagonal(const IrrepId& xi) const override {
    const int two_ell = label_of(xi);
    const int dim = two_ell + 1;
    const double ell = 0.5 * two_ell;
    // closed forms for the two diagonal cases, generic matrix check otherwise
    if (is_gen_set({0, 1})) {
      VectorXd d(dim);
      for (int u = 0; u < dim; ++u) {
        const double m = ell - u;
        d[u] = ell * (ell + 1) - m * m;
      }
      return d;
    }
    if (is_gen_set({0, 1, 2})) return VectorXd::Constant(dim, ell * (ell + 1));
    MatrixXcd L = MatrixXcd::Zero(dim, dim);
    for (int j : sub_gens_) {
      MatrixXcd s = vector_field_symbol(j, xi);
      L -= s * s;
    }
    MatrixXcd off = L;
    off.diagonal().setZero();
    if (off.norm() > 1e-10 * std::max(1.0, L.norm()))
      throw std::invalid_argument(
          "sub-Laplacian symbol is not diagonal in the weight basis for this generator set");
    return L.diagonal().real();
  }

  std::vector<int> sub_laplacian_generators() const override { return sub_gens_; }

  int hormander_step() const override { return sub_gens_.size() == 3 ? 1 : 2; }

  QuadratureGrid quadrature(int band) const override {
    if (band < 0) throw std::invalid_argument("band must be nonnegative");
    const int np = 2 * band + 2;  // phase nodes per Euler angle
    const int nb = band + 1;      // Gauss-Legendre nodes in cos(beta)
    std::vector<double> u, wu;
    gauss_legendre(nb, u, wu);
    QuadratureGrid grid;
    grid.band = band;
    grid.nodes.reserve(std::size_t(np) * nb * np);
    grid.weights.resize(Eigen::Index(std::size_t(np) * nb * np));
    std::size_t idx = 0;
    for (int a = 0; a < np; ++a) {
      const double alpha = 2.0 * kTwoPi * a / np;  // full 4*pi range
      for (int b = 0; b < nb; ++b) {
        const double beta = std::acos(u[b]);
        for (int c = 0; c < np; ++c) {
          const double gamma = 2.0 * kTwoPi * c / np;
          grid.nodes.push_back(quat_from_euler(alpha, beta, gamma));
          grid.weights[Eigen::Index(idx++)] = (wu[b] / 2.0) / (double(np) * np);
        }
      }
    }
    return grid;
  }

  SubgroupInfo subgroup() const override {
    SubgroupInfo k;
    k.trivial = false;
    k.period = 2.0 * kTwoPi;  // exp(t Y_3) has period 4*pi
    const int nk = 32;
    k.quadrature_angles.resize(nk);
    for (int i = 0; i < nk; ++i) k.quadrature_angles[i] = k.period * i / nk;
    return k;
  }

  GroupElement subgroup_element(double angle) const override { return exp_generator(2, angle); }

  void forward_scalar(const QuadratureGrid& grid, const VectorXcd& values, int band,
                      std::vector<MatrixXcd>& out) const override {
    const int e = grid.band;
    const int np = 2 * e + 2, nb = e + 1;
    if (grid.size() != std::size_t(np) * nb * np || band > e) {
      GroupModel::forward_scalar(grid, values, band, out);
      return;
    }
    // separated sums over the product grid; mu = 2m runs over [-2*band, 2*band]
    const int nmu = 4 * band + 1;
    std::vector<double> u, wu;
    gauss_legendre(nb, u, wu);
    // step 1: phase sum in alpha
    std::vector<Complex> g1(std::size_t(nmu) * nb * np, Complex(0, 0));
    parallel_for(std::size_t(nb) * np, [&](std::size_t bc) {
      const std::size_t b = bc / np, c = bc % np;
      for (int a = 0; a < np; ++a) {
        const Complex f = values[Eigen::Index((a * nb + b) * np + c)];
        const double s = kTwoPi * a / np;  // alpha / 2
        for (int mu = -2 * band; mu <= 2 * band; ++mu) {
          g1[(std::size_t(mu + 2 * band) * nb + b) * np + c] +=
              f * std::polar(1.0 / np, mu * s);
        }
      }
    });
    // step 2: phase sum in gamma
    std::vector<Complex> g2(std::size_t(nmu) * nb * nmu, Complex(0, 0));
    parallel_for(std::size_t(nmu) * nb, [&](std::size_t mb) {
      const std::size_t mi = mb / nb, b = mb % nb;
      for (int c = 0; c < np; ++c) {
        const Complex f = g1[(mi * nb + b) * np + c];
        const double t = kTwoPi * c / np;  // gamma / 2
        for (int nu = -2 * band; nu <= 2 * band; ++nu)
          g2[(mi * nb + b) * nmu + (nu + 2 * band)] += f * std::polar(1.0 / np, nu * t);
      }
    });
    // step 3: beta integral against little-d. The transform is the adjoint of
    // the irrep: f_hat(xi)_{uv} = int f conj(D_{vu}).
    auto dual = enumerate_dual(band);
    out.assign(dual.size(), MatrixXcd());
    parallel_for(dual.size(), [&](std::size_t j) {
      const int two_ell = dual[j].label[0];
      const int dim = two_ell + 1;
      MatrixXcd acc = MatrixXcd::Zero(dim, dim);
      for (int b = 0; b < nb; ++b) {
        MatrixXcd d = little_d(two_ell, std::acos(u[b]));
        const double w = wu[b] / 2.0;
        for (int uu = 0; uu < dim; ++uu) {
          const int mu = two_ell - 2 * uu;  // gamma frequency of conj(D_{vu})
          for (int vv = 0; vv < dim; ++vv) {
            const int nu = two_ell - 2 * vv;  // alpha frequency
            acc(uu, vv) += w * d(vv, uu) *
                           g2[(std::size_t(nu + 2 * band) * nb + b) * nmu + (mu + 2 * band)];
          }
        }
      }
      out[j] = acc;
    });
  }

  void inverse_scalar(const QuadratureGrid& grid, const std::vector<MatrixXcd>& coeff, int band,
                      VectorXcd& values) const override {
    const int e = grid.band;
    const int np = 2 * e + 2, nb = e + 1;
    if (grid.size() != std::size_t(np) * nb * np || band > e) {
      GroupModel::inverse_scalar(grid, coeff, band, values);
      return;
    }
    auto dual = enumerate_dual(band);
    const int nmu = 4 * band + 1;
    std::vector<double> u, wu;
    gauss_legendre(nb, u, wu);
    // step 1: H(mu, b, nu) = sum_l d_l d^l_{uv}(beta_b) C(l)_{vu}
    std::vector<Complex> h(std::size_t(nmu) * nb * nmu, Complex(0, 0));
    for (std::size_t j = 0; j < dual.size(); ++j) {
      const int two_ell = dual[j].label[0];
      const int dim = two_ell + 1;
      for (int b = 0; b < nb; ++b) {
        MatrixXcd d = little_d(two_ell, std::acos(u[b]));
        for (int uu = 0; uu < dim; ++uu) {
          const int mu = two_ell - 2 * uu;
          for (int vv = 0; vv < dim; ++vv) {
            const int nu = two_ell - 2 * vv;
            h[(std::size_t(mu + 2 * band) * nb + b) * nmu + (nu + 2 * band)] +=
                double(dim) * d(uu, vv) * coeff[j](vv, uu);
          }
        }
      }
    }
    // step 2: gamma phases
    std::vector<Complex> t2(std::size_t(nmu) * nb * np, Complex(0, 0));
    parallel_for(std::size_t(nmu) * nb, [&](std::size_t mb) {
      const std::size_t mi = mb / nb, b = mb % nb;
      for (int c = 0; c < np; ++c) {
        const double t = kTwoPi * c / np;
        Complex acc = 0.0;
        for (int nu = -2 * band; nu <= 2 * band; ++nu)
          acc += h[(mi * nb + b) * nmu + (nu + 2 * band)] * std::polar(1.0, -nu * t);
        t2[(mi * nb + b) * np + c] = acc;
      }
    });
    // step 3: alpha phases
    values = VectorXcd::Zero(Eigen::Index(grid.size()));
    parallel_for(std::size_t(nb) * np, [&](std::size_t bc) {
      const std::size_t b = bc / np, c = bc % np;
      for (int a = 0; a < np; ++a) {
        const double s = kTwoPi * a / np;
        Complex acc = 0.0;
        for (int mu = -2 * band; mu <= 2 * band; ++mu)
          acc += t2[(std::size_t(mu + 2 * band) * nb + b) * np + c] * std::polar(1.0, -mu * s);
        values[Eigen::Index((a * nb + b) * np + c)] = acc;
      }
    });
  }

  // d^l(beta) with rows m = l..-l; real orthogonal.
  MatrixXcd little_d(int two_ell, double beta) const {
    const WignerData& wd = wigner(two_ell);
    const int dim = two_ell + 1;
    VectorXcd phases(dim);
    for (int k = 0; k < dim; ++k) phases[k] = std::polar(1.0, -beta * wd.eigs[k]);
    MatrixXcd x = wd.V * phases.asDiagonal() * wd.V.transpose();
    MatrixXcd d(dim, dim);
    static const Complex kPow4[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};  // i^k
    for (int uu = 0; uu < dim; ++uu)
      for (int vv = 0; vv < dim; ++vv) d(uu, vv) = kPow4[((vv - uu) % 4 + 4) % 4] * x(uu, vv);
    return d.real().cast<Complex>();
  }

private:
  int label_of(const IrrepId& xi) const {
    if (xi.label.size() != 1 || xi.label[0] < 0)
      throw std::out_of_range("SU(2) irrep label must be a single nonnegative integer 2l");
    return xi.label[0];
  }

  bool is_gen_set(std::vector<int> s) const {
    std::vector<int> g = sub_gens_;
    std::sort(g.begin(), g.end());
    return g == s;
  }

  const WignerData& wigner(int two_ell) const {
    std::scoped_lock lock(mutex_);
    auto it = wigner_.find(two_ell);
    if (it != wigner_.end()) return it->second;
    const int dim = two_ell + 1;
    const double ell = 0.5 * two_ell;
    Eigen::MatrixXd t = Eigen::MatrixXd::Zero(dim, dim);
    for (int u = 0; u + 1 < dim; ++u) {
      const double mp = ell - u - 1;
      const double a = std::sqrt(ell * (ell + 1) - mp * (mp + 1));
      t(u, u + 1) = -a / 2;
      t(u + 1, u) = -a / 2;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(t);
    WignerData wd{es.eigenvectors(), es.eigenvalues()};
    return wigner_.emplace(two_ell, std::move(wd)).first->second;
  }

  std::vector<int> sub_gens_;
  mutable std::mutex mutex_;
  mutable std::map<int, WignerData> wigner_;
};

}  // namespace

std::shared_ptr<GroupModel> make_su2() { return std::make_shared<SU2Model>(std::vector<int>{0, 1}); }

std::shared_ptr<GroupModel> make_su2(std::vector<int> sub_laplacian_generators) {
  return std::make_shared<SU2Model>(std::move(sub_laplacian_generators));
}

}  // namespace gq
