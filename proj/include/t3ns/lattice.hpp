#pragma once

#include <array>
#include <cstddef>
#include <memory>
#include <vector>

#include "t3ns/kernels.hpp"

namespace t3ns {

using cplx = std::complex<double>;

/// Integer wavevector of the truncated lattice with cached |k|^2.
struct WaveIndex {
  std::array<int, 3> k{0, 0, 0};
  int ksq = 0;

  int max_norm() const;
};

/// The truncated Fourier lattice of the 2*pi-periodic 3-torus: every integer
/// wavevector with max-norm <= K, enumerated lexicographically in (k1,k2,k3)
/// from -K to K. That enumeration's flat index is the canonical coefficient
/// storage order used everywhere.
class Lattice {
 public:
  /// Throws std::invalid_argument for truncation < 1 (no nonconstant modes).
  Lattice(int truncation, bool dealias);

  int truncation() const { return K_; }
  bool dealias_active() const { return dealias_; }
  /// floor(2K/3); the retained band of the 2/3 rule when dealiasing is on.
  int dealias_bound() const { return dealias_bound_; }
  int grid_points() const { return 2 * K_ + 1; }
  std::size_t size() const { return modes_.size(); }
  const std::vector<WaveIndex>& modes() const { return modes_; }
  const WaveIndex& mode(std::size_t flat) const { return modes_[flat]; }
  std::size_t index_of(const std::array<int, 3>& k) const;
  std::size_t index_of_negated(std::size_t flat) const;
  bool in_band(const WaveIndex& w) const { return w.max_norm() <= dealias_bound_; }
  bool same_as(const Lattice& other) const {
    return K_ == other.K_ && dealias_ == other.dealias_;
  }
  const kernels::DftPlan& plan() const { return plan_; }

 private:
  int K_;
  bool dealias_;
  int dealias_bound_;
  std::vector<WaveIndex> modes_;
  kernels::DftPlan plan_;
};

std::shared_ptr<const Lattice> build_lattice(int truncation, bool dealias = true);

}  // namespace t3ns
