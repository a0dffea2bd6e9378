// Torus backend T^n: irreps are the characters e^{i k.theta}, quadrature is
// the uniform product rule, everything is available in closed form.

#include <cmath>
#include <numbers>
#include <random>

#include "groupquant/group.hpp"

namespace gq {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

class TorusModel final : public GroupModel {
public:
  explicit TorusModel(int n) : n_(n) {
    if (n < 1) throw std::invalid_argument("torus dimension must be positive");
  }

  std::string name() const override { return n_ == 1 ? "T1" : "T" + std::to_string(n_); }

  LieBasis lie_basis() const override {
    LieBasis b;
    b.dim = n_;
    b.split_index = n_;  // K is trivial, m = g
    b.metric = Eigen::MatrixXd::Identity(n_, n_);
    return b;
  }

  std::vector<IrrepId> enumerate_dual(int band) const override {
    if (band < 0) throw std::invalid_argument("band must be nonnegative");
    std::vector<IrrepId> dual;
    std::vector<int> k(n_, -band);
    // lexicographic sweep over the box |k|_inf <= band
    while (true) {
      dual.push_back(IrrepId{k, 1});
      int j = n_ - 1;
      while (j >= 0 && k[j] == band) k[j--] = -band;
      if (j < 0) break;
      ++k[j];
    }
    return dual;
  }

  GroupElement identity() const override { return GroupElement::Zero(n_); }

  GroupElement multiply(const GroupElement& a, const GroupElement& b) const override {
    GroupElement c = a + b;
    for (int i = 0; i < n_; ++i) c[i] = std::fmod(c[i], kTwoPi);
    return c;
  }

  GroupElement inverse(const GroupElement& a) const override { return -a; }

  GroupElement exp_generator(int j, double t) const override {
    GroupElement g = GroupElement::Zero(n_);
    g[j] = t;
    return g;
  }

  GroupElement random_element(std::uint64_t seed) const override {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    GroupElement g(n_);
    for (int i = 0; i < n_; ++i) g[i] = u(rng);
    return g;
  }

  MatrixXcd irrep_matrix(const IrrepId& xi, const GroupElement& g) const override {
    check(xi);
    double phase = 0.0;
    for (int i = 0; i < n_; ++i) phase += xi.label[i] * g[i];
    MatrixXcd m(1, 1);
    m(0, 0) = std::polar(1.0, phase);
    return m;
  }

  MatrixXcd vector_field_symbol(int j, const IrrepId& xi) const override {
    check(xi);
    MatrixXcd m(1, 1);
    m(0, 0) = Complex(0.0, static_cast<double>(xi.label[j]));
    return m;
  }

  double laplace_eigenvalue(const IrrepId& xi) const override {
    check(xi);
    double s = 0.0;
    for (int i = 0; i < n_; ++i) s += double(xi.label[i]) * xi.label[i];
    return s;
  }

  VectorXd sub_laplacian_diagonal(const IrrepId& xi) const override {
    // full basis: the sub-Laplacian is the Laplacian, step 1
    VectorXd d(1);
    d[0] = laplace_eigenvalue(xi);
    return d;
  }

  std::vector<int> sub_laplacian_generators() const override {
    std::vector<int> g(n_);
    for (int i = 0; i < n_; ++i) g[i] = i;
    return g;
  }

  int hormander_step() const override { return 1; }

  QuadratureGrid quadrature(int band) const override {
    if (band < 0) throw std::invalid_argument("band must be nonnegative");
    const int pts = 2 * band + 1;  // exact for |k| <= band per circle factor
    QuadratureGrid grid;
    grid.band = band;
    std::size_t total = 1;
    for (int i = 0; i < n_; ++i) total *= pts;
    grid.nodes.reserve(total);
    std::vector<int> idx(n_, 0);
    while (true) {
      GroupElement g(n_);
      for (int i = 0; i < n_; ++i) g[i] = kTwoPi * idx[i] / pts;
      grid.nodes.push_back(g);
      int j = n_ - 1;
      while (j >= 0 && idx[j] == pts - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
    grid.weights = VectorXd::Constant(grid.nodes.size(), 1.0 / double(grid.nodes.size()));
    return grid;
  }

  SubgroupInfo subgroup() const override { return SubgroupInfo{}; }

  GroupElement subgroup_element(double) const override { return identity(); }

private:
  void check(const IrrepId& xi) const {
    if (static_cast<int>(xi.label.size()) != n_)
      throw std::out_of_range("torus irrep label has wrong length");
  }

  int n_;
};

}  // namespace

std::shared_ptr<GroupModel> make_torus(int dimension) {
  return std::make_shared<TorusModel>(dimension);
}

}  // namespace gq
