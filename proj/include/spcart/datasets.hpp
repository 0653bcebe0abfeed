#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <string_view>

#include "spcart/matrix_input.hpp"

namespace spcart {

/// Three hidden Gaussian factors: h1 ~ N(0, 290), h2 ~ N(0, 300),
/// h3 = -0.3·h1 + 0.925·h2 + ε, and ten observed variables a_i = h_g(i) + ε_i
/// with groups {1..4} → h1, {5..8} → h2, {9,10} → h3. All noise is N(0, 1).
struct SyntheticModel {
  double var_h1 = 290.0;
  double var_h2 = 300.0;
  double mix_h1 = -0.3;
  double mix_h2 = 0.925;
  double noise_var = 1.0;
  std::array<int, 10> groups{0, 0, 0, 0, 1, 1, 1, 1, 2, 2};

  double var_h3() const;
  double cov_h1_h3() const { return mix_h1 * var_h1; }
  double cov_h2_h3() const { return mix_h2 * var_h2; }
  /// 3×3 covariance of (h1, h2, h3).
  Matrix factor_covariance() const;
};

/// Exact 10×10 covariance of the observed variables.
Matrix synthetic_covariance(const SyntheticModel& model = {});

/// n×10 Gaussian samples from the generative model.
Matrix synthetic_samples(Eigen::Index n, std::uint64_t seed, const SyntheticModel& model = {});

enum class ArtificialMode {
  SquareRoot,         // Ã = V·Σ^{1/2}·Vᵀ, so ÃᵀÃ = C
  LiteralInverseSqrt, // Ã = V·Σ^{-1/2}·Vᵀ as printed; inverts the spectrum
};

/// A p×p data matrix sharing its loadings with the covariance C.
Matrix artificial_data_from_covariance(const Matrix& c,
                                       ArtificialMode mode = ArtificialMode::SquareRoot);

/// The 13×13 Pitprops correlation matrix bundled with the library,
/// verified against its SHA-256 before parsing.
Matrix load_pitprops();
/// Same, from a file that must match the bundled checksum.
Matrix load_pitprops(const std::filesystem::path& path);
std::string_view pitprops_sha256();

/// Subtract each row's mean from that row.
Matrix remove_dc(const Matrix& rows);

/// n×p matrix U·diag(decay⁰, decay¹, …)·Wᵀ with Haar-random orthonormal U
/// (n×p) and W (p×p). Requires n ≥ p.
Matrix decaying_spectrum_data(Eigen::Index n, Eigen::Index p, double decay, std::uint64_t seed);

}  // namespace spcart
