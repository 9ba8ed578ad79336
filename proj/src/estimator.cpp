#include "exovdc/estimator.hpp"

#include <cmath>
#include <string>

namespace exovdc {

RbfNet RbfNet::make(int units, int input_dim, int output_dim,
                    std::mt19937_64& rng, double c_min, double c_max,
                    double width) {
  RbfNet net;
  net.units = units;
  net.input_dim = input_dim;
  net.output_dim = output_dim;
  net.centers.resize(static_cast<std::size_t>(units) * input_dim);
  std::uniform_real_distribution<double> dist(c_min, c_max);
  for (double& c : net.centers) c = dist(rng);
  net.widths.assign(units, width);
  net.weights.assign(static_cast<std::size_t>(units) * output_dim, 0.0);
  net.eps_hat.assign(output_dim, 0.0);
  return net;
}

double RbfNet::weight_norm() const {
  return std::sqrt(kern::ops().dot(weights.data(), weights.data(),
                                   weights.size()));
}

double RbfNet::eps_norm() const {
  return std::sqrt(kern::ops().dot(eps_hat.data(), eps_hat.data(),
                                   eps_hat.size()));
}

void rbf_basis(const RbfNet& net, std::span<const double> chi,
               std::span<double> psi) {
  if (static_cast<int>(chi.size()) != net.input_dim)
    throw DimensionError("rbf input has " + std::to_string(chi.size()) +
                         " components, network expects " +
                         std::to_string(net.input_dim));
  kern::ops().sq_dist(chi.data(), net.centers.data(), net.units, net.input_dim,
                      psi.data());
  for (int k = 0; k < net.units; ++k)
    psi[k] = std::exp(-psi[k] / (net.widths[k] * net.widths[k]));
}

void nn_estimate(const RbfNet& net, std::span<const double> chi,
                 std::span<double> out) {
  std::vector<double> psi(net.units);
  rbf_basis(net, chi, psi);
  for (int c = 0; c < net.output_dim; ++c) out[c] = net.eps_hat[c];
  for (int k = 0; k < net.units; ++k)
    kern::ops().axpy(psi[k], net.weights.data() + k * net.output_dim,
                     out.data(), net.output_dim);
}

void update_body_net(RbfNet& net, std::span<const double> chi,
                     const Vec6& vel_err, std::span<const double> gamma,
                     double gamma2, double dt) {
  if (net.output_dim != 6)
    throw DimensionError("body-net update needs a 6-output network");
  if (gamma.size() != static_cast<std::size_t>(net.units) * net.units)
    throw DimensionError("weight gain matrix must be units x units");
  std::vector<double> psi(net.units);
  rbf_basis(net, chi, psi);
  std::vector<double> gpsi(net.units, 0.0);
  for (int r = 0; r < net.units; ++r)
    gpsi[r] = kern::ops().dot(gamma.data() + r * net.units, psi.data(),
                              net.units);
  kern::ops().outer_acc(net.weights.data(), gpsi.data(), vel_err.data(), dt,
                        net.units, net.output_dim);
  kern::ops().axpy(dt * gamma2, vel_err.data(), net.eps_hat.data(),
                   net.eps_hat.size());
}

void update_joint_net(RbfNet& net, std::span<const double> chi, double err,
                      double beta1, double beta2, double dt) {
  if (net.output_dim != 1)
    throw DimensionError("joint-net update needs a scalar-output network");
  std::vector<double> psi(net.units);
  rbf_basis(net, chi, psi);
  kern::ops().axpy(dt * beta1 * err, psi.data(), net.weights.data(),
                   net.units);
  net.eps_hat[0] += dt * beta2 * err;
}

void nal_step(NalState& state, const Mat4& S, double dt) {
  const Mat4& L = state.L_hat.L;
  const Mat4 LSL = L * S * L;
  double step = dt / state.gain;
  for (int attempt = 0; attempt <= 20; ++attempt) {
    Mat4 next = L + LSL * step;
    next.symmetrize();
    Mat4 chol;
    if (cholesky4(next, chol)) {
      state.L_hat.L = next;
      return;
    }
    step *= 0.5;
  }
  throw NotPositiveDefiniteError(
      "natural adaptation step lost positive definiteness after 20 halvings");
}

}  // namespace exovdc
