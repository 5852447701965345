#pragma once

#include <cstdint>
#include <initializer_list>
#include <random>

#include <Eigen/Dense>

#include "slpkit/geometry.hpp"

namespace slp {

/// Derives a decorrelated seed from a root seed and a tag path, e.g.
/// {kChannelStream, realization, user}. Two distinct paths give independent
/// substreams, so Monte Carlo trials can be generated in any order (or in
/// parallel) and still reproduce bit-identically from the same root seed.
///
/// Scheme: s0 = splitmix64(root), s_{i+1} = splitmix64(s_i ^ GOLDEN*(tag_i+1)).
std::uint64_t substream_seed(std::uint64_t root, std::initializer_list<std::uint64_t> path);

/// Seeded generator handle. Wraps mt19937_64 with explicit uniform and
/// Gaussian (Box-Muller) draws so sampled sequences do not depend on the
/// standard library's distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform on [0, 1), 53-bit resolution.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

  /// Standard normal via Box-Muller (one spare cached per pair).
  double gaussian();

  /// Uniform integer in [0, bound).
  int uniform_int(int bound);

 private:
  std::mt19937_64 engine_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

/// Real 2x2N lift of a length-N complex row vector h:
///   [ Re(h)  -Im(h) ]
///   [ Im(h)   Re(h) ]
/// For u with real stack u~ = [Re(u); Im(u)], T(h)*u~ carries the real and
/// imaginary parts of the complex product h*u. ||T(h)||_F = sqrt(2)*||h||_2.
Eigen::Matrix2Xd t_transform(const Eigen::RowVectorXcd& h);

enum class UncertaintyKind { Perfect, Spherical, Gaussian };

/// CSI error description: none, norm-bounded (radius epsilon), or
/// circularly-symmetric Gaussian with per-entry variance xi2.
struct UncertaintyModel {
  UncertaintyKind kind = UncertaintyKind::Perfect;
  double epsilon = 0.0;
  double xi2 = 0.0;

  static UncertaintyModel perfect() { return {}; }
  static UncertaintyModel spherical(double epsilon);
  static UncertaintyModel gaussian(double xi2);
};

/// i.i.d. CN(0,1) row vector (real/imag parts each with variance 1/2).
Eigen::RowVectorXcd sample_channel(Rng& rng, int n);

enum class SphericalMode {
  Surface,  // ||e|| = epsilon exactly
  Ball,     // uniform over the closed ball, radius law U^(1/2N)
};

/// Norm-bounded CSI error draw.
Eigen::RowVectorXcd sample_spherical_error(Rng& rng, int n, double epsilon, SphericalMode mode);

/// i.i.d. CN(0, xi2) CSI error draw.
Eigen::RowVectorXcd sample_gaussian_error(Rng& rng, int n, double xi2);

/// Covariance of the uncertain region term q = A * T(e) * u for Gaussian e:
/// (1/2) * xi2 * ||u||^2 * A A'.
Eigen::Matrix2d q_covariance(const CirMatrix& cir, const Eigen::VectorXd& u, double xi2);

/// Whitening transform C^{-1/2} = sqrt(2)/(xi*||u||) * (A A')^{-1/2}.
/// Throws std::invalid_argument when xi or ||u|| vanishes (degenerate whitening).
Eigen::Matrix2d whitening_matrix(const CirMatrix& cir, const Eigen::VectorXd& u, double xi);

}  // namespace slp
