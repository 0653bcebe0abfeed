#include "spcart/datasets.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "spcart/csv.hpp"
#include "spcart/errors.hpp"
#include "spcart/linalg.hpp"

namespace spcart {

namespace detail {
extern const std::string_view kPitpropsCsv;
}

namespace {

constexpr std::string_view kPitpropsSha256 =
    "34b786b5f1373dc5060b93ccaf77a32853ddb664b9535759b1e1d5bf158f8016";

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1)
    throw DataIntegrityError("sha256 computation failed");
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  hex.reserve(2 * length);
  for (unsigned int i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 0xF];
  }
  return hex;
}

Matrix parse_pitprops(std::string_view text, const std::string& origin) {
  const std::string digest = sha256_hex(text);
  if (digest != kPitpropsSha256)
    throw DataIntegrityError("pitprops data from " + origin + " has sha256 " + digest +
                             ", expected " + std::string(kPitpropsSha256));
  Matrix c = parse_matrix_csv(text).values;
  if (c.rows() != 13 || c.cols() != 13)
    throw DataIntegrityError("pitprops matrix is not 13x13");
  return c;
}

Matrix haar_orthonormal(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  Matrix g(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) g(i, j) = normal(rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ() * Matrix::Identity(rows, cols);
  // Sign fix on R's diagonal makes the draw Haar-distributed.
  const Matrix r = qr.matrixQR().topLeftCorner(cols, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    if (r(j, j) < 0.0) q.col(j) = -q.col(j);
  return q;
}

}  // namespace

double SyntheticModel::var_h3() const {
  return mix_h1 * mix_h1 * var_h1 + mix_h2 * mix_h2 * var_h2 + noise_var;
}

Matrix SyntheticModel::factor_covariance() const {
  Matrix f(3, 3);
  f << var_h1, 0.0, cov_h1_h3(),
       0.0, var_h2, cov_h2_h3(),
       cov_h1_h3(), cov_h2_h3(), var_h3();
  return f;
}

Matrix synthetic_covariance(const SyntheticModel& model) {
  const Matrix f = model.factor_covariance();
  Matrix c(10, 10);
  for (int i = 0; i < 10; ++i)
    for (int j = 0; j < 10; ++j)
      c(i, j) = f(model.groups[i], model.groups[j]) + (i == j ? model.noise_var : 0.0);
  return c;
}

Matrix synthetic_samples(Eigen::Index n, std::uint64_t seed, const SyntheticModel& model) {
  if (n < 1) throw ArgumentError("n", "n >= 1", "got " + std::to_string(n));
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  const double noise_sd = std::sqrt(model.noise_var);
  Matrix a(n, 10);
  for (Eigen::Index s = 0; s < n; ++s) {
    const double h1 = std::sqrt(model.var_h1) * normal(rng);
    const double h2 = std::sqrt(model.var_h2) * normal(rng);
    const double h3 = model.mix_h1 * h1 + model.mix_h2 * h2 + noise_sd * normal(rng);
    const double h[3] = {h1, h2, h3};
    for (int i = 0; i < 10; ++i) a(s, i) = h[model.groups[i]] + noise_sd * normal(rng);
  }
  return a;
}

Matrix artificial_data_from_covariance(const Matrix& c, ArtificialMode mode) {
  const MatrixInput checked = MatrixInput::covariance(c);
  Eigen::SelfAdjointEigenSolver<Matrix> eig(checked.matrix());
  if (eig.info() != Eigen::Success) throw InputError("eigendecomposition failed");
  Vector values = eig.eigenvalues();
  const double top = std::max(1.0, values.maxCoeff());
  if (values.minCoeff() < -kCovarianceTolerance * top)
    throw InputError("covariance matrix is indefinite (smallest eigenvalue " +
                     std::to_string(values.minCoeff()) + ")");
  values = values.cwiseMax(0.0);
  Vector scale(values.size());
  if (mode == ArtificialMode::SquareRoot) {
    scale = values.cwiseSqrt();
  } else {
    if (values.minCoeff() <= 1e-12 * top)
      throw DegeneracyError("literal inverse square root of a singular covariance",
                            values.minCoeff());
    scale = values.cwiseSqrt().cwiseInverse();
  }
  const Matrix& v = eig.eigenvectors();
  return v * scale.asDiagonal() * v.transpose();
}

Matrix load_pitprops() { return parse_pitprops(detail::kPitpropsCsv, "bundled resource"); }

Matrix load_pitprops(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_pitprops(buf.str(), "'" + path.string() + "'");
}

std::string_view pitprops_sha256() { return kPitpropsSha256; }

Matrix remove_dc(const Matrix& rows) {
  return rows.colwise() - rows.rowwise().mean();
}

Matrix decaying_spectrum_data(Eigen::Index n, Eigen::Index p, double decay, std::uint64_t seed) {
  if (p < 1 || n < p)
    throw ArgumentError("n", "n >= p >= 1", "got n=" + std::to_string(n) + ", p=" + std::to_string(p));
  if (!(decay > 0.0))
    throw ArgumentError("decay", "> 0", "got " + std::to_string(decay));
  std::mt19937_64 rng(seed);
  const Matrix u = haar_orthonormal(n, p, rng);
  const Matrix w = haar_orthonormal(p, p, rng);
  Vector sigma(p);
  for (Eigen::Index i = 0; i < p; ++i) sigma(i) = std::pow(decay, static_cast<double>(i));
  return u * sigma.asDiagonal() * w.transpose();
}

}  // namespace spcart
