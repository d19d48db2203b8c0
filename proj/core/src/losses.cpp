#include "ppa/losses.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "ppa/error.hpp"

namespace ppa {

namespace {

constexpr double kProbabilityFloor = 1e-12;

void check_ce(std::span<const std::vector<double>> distributions, std::span<const std::size_t> targets) {
  if (distributions.size() != targets.size()) {
    throw Error(ErrorCode::InvalidArgument, "need one target per distribution");
  }
  for (std::size_t i = 0; i < targets.size(); ++i) {
    if (targets[i] >= distributions[i].size()) {
      throw Error(ErrorCode::InvalidArgument, "target " + std::to_string(i) + " is outside its distribution");
    }
  }
}

void check_pmse(std::span<const std::vector<double>> outputs, std::span<const std::vector<double>> targets) {
  if (outputs.empty()) throw Error(ErrorCode::InvalidArgument, "p_mse_loss needs at least one output");
  if (outputs.size() != targets.size()) throw Error(ErrorCode::InvalidArgument, "need one target per output");
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (outputs[i].size() != targets[i].size()) {
      throw Error(ErrorCode::InvalidArgument, "output " + std::to_string(i) + " and its target differ in length");
    }
  }
}

}  // namespace

double ce_loss(std::span<const std::vector<double>> distributions, std::span<const std::size_t> targets) {
  check_ce(distributions, targets);
  double loss = 0.0;
  for (std::size_t i = 0; i < targets.size(); ++i) {
    loss -= std::log(std::max(distributions[i][targets[i]], kProbabilityFloor));
  }
  return loss;
}

std::vector<std::vector<double>> ce_loss_gradient(std::span<const std::vector<double>> distributions,
                                                  std::span<const std::size_t> targets) {
  check_ce(distributions, targets);
  std::vector<std::vector<double>> grad;
  grad.reserve(distributions.size());
  for (std::size_t i = 0; i < targets.size(); ++i) {
    std::vector<double> g(distributions[i].size(), 0.0);
    const double p = distributions[i][targets[i]];
    if (p > kProbabilityFloor) g[targets[i]] = -1.0 / p;
    grad.push_back(std::move(g));
  }
  return grad;
}

double p_mse_loss(std::span<const std::vector<double>> outputs, std::span<const std::vector<double>> targets) {
  check_pmse(outputs, targets);
  double sum = 0.0;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    for (std::size_t k = 0; k < outputs[i].size(); ++k) {
      const double d = outputs[i][k] - targets[i][k];
      sum += d * d;
    }
  }
  return sum / static_cast<double>(outputs.size());
}

std::vector<std::vector<double>> p_mse_loss_gradient(std::span<const std::vector<double>> outputs,
                                                     std::span<const std::vector<double>> targets) {
  check_pmse(outputs, targets);
  const double scale = 2.0 / static_cast<double>(outputs.size());
  std::vector<std::vector<double>> grad;
  grad.reserve(outputs.size());
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    std::vector<double> g(outputs[i].size());
    for (std::size_t k = 0; k < g.size(); ++k) g[k] = scale * (outputs[i][k] - targets[i][k]);
    grad.push_back(std::move(g));
  }
  return grad;
}

double total_loss(double l_ce, double l_pmse, double lambda_ce, double lambda_pmse) {
  return lambda_ce * l_ce + lambda_pmse * l_pmse;
}

}  // namespace ppa
