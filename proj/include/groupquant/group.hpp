#ifndef GROUPQUANT_GROUP_HPP
#define GROUPQUANT_GROUP_HPP

#include <Eigen/Dense>
#include <complex>
#include <memory>
#include <string>
#include <vector>

#include "groupquant/errors.hpp"

namespace gq {

using Complex = std::complex<double>;
using MatrixXcd = Eigen::MatrixXcd;
using VectorXcd = Eigen::VectorXcd;
using VectorXd = Eigen::VectorXd;

// Group elements are coordinate vectors: angles for the torus, a unit
// quaternion (w,x,y,z) for SU(2).
using GroupElement = Eigen::VectorXd;

// Discrete label of an irreducible representation. Torus: the frequency
// vector k. SU(2): {2l}, so half-integer spins stay integer-labelled.
struct IrrepId {
  std::vector<int> label;
  int dim = 1;

  bool operator==(const IrrepId& o) const { return label == o.label; }
};

enum class WeightKind { Elliptic, Subelliptic };

struct QuadratureGrid {
  std::vector<GroupElement> nodes;
  VectorXd weights;  // normalized Haar: sums to 1
  int band = 0;      // integrates irrep matrix coefficients up to this band exactly

  std::size_t size() const { return nodes.size(); }
};

// Orthonormal Lie-algebra basis Y_1..Y_n with the Cartan split g = m (+) k:
// Y_1..Y_m span m, the rest span k.
struct LieBasis {
  int dim = 0;          // n = dim G
  int split_index = 0;  // m = dim(G/K)
  Eigen::MatrixXd metric;
};

// Descriptor of the closed subgroup K used in bundle mode. K is always a
// circle here (U(1) in SU(2), or the trivial group on the torus); elements are
// parameterized by one angle.
struct SubgroupInfo {
  bool trivial = true;
  double period = 0.0;                      // parameter period of K
  std::vector<double> quadrature_angles;    // uniform rule on [0, period)
};

class GroupModel {
public:
  virtual ~GroupModel() = default;

  virtual std::string name() const = 0;
  virtual LieBasis lie_basis() const = 0;

  // Truncated unitary dual, deterministic ordering.
  virtual std::vector<IrrepId> enumerate_dual(int band) const = 0;

  virtual GroupElement identity() const = 0;
  virtual GroupElement multiply(const GroupElement& a, const GroupElement& b) const = 0;
  virtual GroupElement inverse(const GroupElement& a) const = 0;
  virtual GroupElement exp_generator(int j, double t) const = 0;  // exp(t Y_j)
  virtual GroupElement random_element(std::uint64_t seed) const = 0;

  virtual MatrixXcd irrep_matrix(const IrrepId& xi, const GroupElement& g) const = 0;

  // d/dt xi(exp(t Y_j)) at t = 0; skew-Hermitian.
  virtual MatrixXcd vector_field_symbol(int j, const IrrepId& xi) const = 0;

  // Laplace-Beltrami eigenvalue and the diagonal of the sub-Laplacian symbol
  // for the configured generator subset.
  virtual double laplace_eigenvalue(const IrrepId& xi) const = 0;
  virtual VectorXd sub_laplacian_diagonal(const IrrepId& xi) const = 0;

  // Generator subset of the sub-Laplacian and its Hormander step.
  virtual std::vector<int> sub_laplacian_generators() const = 0;
  virtual int hormander_step() const = 0;

  virtual QuadratureGrid quadrature(int band) const = 0;

  virtual SubgroupInfo subgroup() const = 0;
  // Embeds the K-parameter angle into the group.
  virtual GroupElement subgroup_element(double angle) const = 0;

  // Scalar group Fourier transform of grid samples: out[j] = sum_x w_x f(x) xi_j(x)^*.
  // The base implementation evaluates irreps pointwise; backends may override
  // with separated sums over product grids.
  virtual void forward_scalar(const QuadratureGrid& grid, const VectorXcd& values, int band,
                              std::vector<MatrixXcd>& out) const {
    auto dual = enumerate_dual(band);
    out.assign(dual.size(), MatrixXcd());
    for (std::size_t j = 0; j < dual.size(); ++j)
      out[j] = MatrixXcd::Zero(dual[j].dim, dual[j].dim);
    for (std::size_t x = 0; x < grid.size(); ++x) {
      const Complex fw = values[static_cast<Eigen::Index>(x)] * grid.weights[static_cast<Eigen::Index>(x)];
      for (std::size_t j = 0; j < dual.size(); ++j)
        out[j] += fw * irrep_matrix(dual[j], grid.nodes[x]).adjoint();
    }
  }

  // Pointwise Peter-Weyl sum: values[x] = sum_j d_j Tr[xi_j(x) coeff[j]].
  virtual void inverse_scalar(const QuadratureGrid& grid, const std::vector<MatrixXcd>& coeff,
                              int band, VectorXcd& values) const {
    auto dual = enumerate_dual(band);
    values = VectorXcd::Zero(static_cast<Eigen::Index>(grid.size()));
    for (std::size_t x = 0; x < grid.size(); ++x) {
      Complex acc = 0.0;
      for (std::size_t j = 0; j < dual.size(); ++j)
        acc += double(dual[j].dim) * (irrep_matrix(dual[j], grid.nodes[x]) * coeff[j]).trace();
      values[static_cast<Eigen::Index>(x)] = acc;
    }
  }

  // Single-point Peter-Weyl sum.
  Complex inverse_at(const GroupElement& g, const std::vector<MatrixXcd>& coeff, int band) const {
    auto dual = enumerate_dual(band);
    Complex acc = 0.0;
    for (std::size_t j = 0; j < dual.size(); ++j)
      acc += double(dual[j].dim) * (irrep_matrix(dual[j], g) * coeff[j]).trace();
    return acc;
  }

  // diag((1+nu_ii^2)^{s/2}) or (1+lambda)^{s/2} I.
  Eigen::VectorXd weight_diagonal(const IrrepId& xi, double s, WeightKind kind) const {
    Eigen::VectorXd w(xi.dim);
    if (kind == WeightKind::Elliptic) {
      w.setConstant(std::pow(1.0 + laplace_eigenvalue(xi), 0.5 * s));
    } else {
      VectorXd nu2 = sub_laplacian_diagonal(xi);
      for (int i = 0; i < xi.dim; ++i) w[i] = std::pow(1.0 + nu2[i], 0.5 * s);
    }
    return w;
  }

  int irrep_index(const IrrepId& xi, int band) const {
    auto dual = enumerate_dual(band);
    for (std::size_t i = 0; i < dual.size(); ++i)
      if (dual[i] == xi) return static_cast<int>(i);
    throw std::out_of_range("irrep label not in the enumerated dual");
  }
};

std::shared_ptr<GroupModel> make_torus(int dimension);
std::shared_ptr<GroupModel> make_su2();
std::shared_ptr<GroupModel> make_su2(std::vector<int> sub_laplacian_generators);

}  // namespace gq

#endif
