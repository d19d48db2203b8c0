#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace ppa {

/// Cross-entropy of one-hot targets: -Σ log p[target] over tokens, with each
/// probability clamped below at 1e-12. `distributions[i]` is the predicted
/// distribution for token i.
double ce_loss(std::span<const std::vector<double>> distributions, std::span<const std::size_t> targets);

/// d ce_loss / d distributions: -1/p at each target slot (0 where clamped).
std::vector<std::vector<double>> ce_loss_gradient(std::span<const std::vector<double>> distributions,
                                                  std::span<const std::size_t> targets);

/// Parametric MSE: (1/N) Σ ||output_i - target_i||² over N regression outputs.
double p_mse_loss(std::span<const std::vector<double>> outputs, std::span<const std::vector<double>> targets);

/// d p_mse_loss / d outputs = 2 (output_i - target_i) / N.
std::vector<std::vector<double>> p_mse_loss_gradient(std::span<const std::vector<double>> outputs,
                                                     std::span<const std::vector<double>> targets);

/// λ_ce · l_ce + λ_pmse · l_pmse.
double total_loss(double l_ce, double l_pmse, double lambda_ce, double lambda_pmse);

}  // namespace ppa
