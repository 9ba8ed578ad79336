#pragma once

#include <random>
#include <span>
#include <vector>

#include "exovdc/body.hpp"

namespace exovdc {

// Gaussian RBF network state: psi_k(chi) = exp(-||chi - c_k||^2 / b_k^2),
// estimate W^T psi + eps_hat.
struct RbfNet {
  int units = 0;
  int input_dim = 0;
  int output_dim = 0;
  std::vector<double> centers;  // units x input_dim, row-major
  std::vector<double> widths;   // units, all > 0
  std::vector<double> weights;  // units x output_dim, row-major
  std::vector<double> eps_hat;  // output_dim

  // Centers drawn uniformly from [c_min, c_max] with the supplied generator.
  static RbfNet make(int units, int input_dim, int output_dim,
                     std::mt19937_64& rng, double c_min, double c_max,
                     double width);

  double weight_norm() const;  // Frobenius
  double eps_norm() const;
};

// Basis vector; throws DimensionError on input size mismatch.
void rbf_basis(const RbfNet& net, std::span<const double> chi,
               std::span<double> psi);

void nn_estimate(const RbfNet& net, std::span<const double> chi,
                 std::span<double> out);

// W += dt * Gamma psi err^T (units x out outer update), eps += dt gamma2 err.
void update_body_net(RbfNet& net, std::span<const double> chi,
                     const Vec6& vel_err, std::span<const double> gamma,
                     double gamma2, double dt);

// Scalar analogue: W += dt beta1 err psi, eps += dt beta2 err.
void update_joint_net(RbfNet& net, std::span<const double> chi, double err,
                      double beta1, double beta2, double dt);

// Natural-adaptation-law state: pseudo-inertia estimate plus its gain.
struct NalState {
  PseudoInertia L_hat;
  double gain = 1.0;  // gamma1 for bodies, zeta for joints

  Vec10 phi_hat() const { return pseudo_to_phi(L_hat).phi; }
};

// L <- L + (dt/gain) L S L, symmetrized. When the result loses positive
// definiteness the step is halved (up to 20 times); if that fails, throws
// NotPositiveDefiniteError with a diagnostic.
void nal_step(NalState& state, const Mat4& S, double dt);

}  // namespace exovdc
