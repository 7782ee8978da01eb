#include "t3ns/lattice.hpp"

#include <cmath>
#include <stdexcept>

namespace t3ns {

int WaveIndex::max_norm() const {
  return std::max({std::abs(k[0]), std::abs(k[1]), std::abs(k[2])});
}

Lattice::Lattice(int truncation, bool dealias)
    : K_(truncation), dealias_(dealias), dealias_bound_(2 * truncation / 3) {
  if (truncation < 1)
    throw std::invalid_argument("lattice: truncation must be at least 1");
  const int n = 2 * K_ + 1;
  modes_.reserve(static_cast<std::size_t>(n) * n * n);
  for (int k1 = -K_; k1 <= K_; ++k1)
    for (int k2 = -K_; k2 <= K_; ++k2)
      for (int k3 = -K_; k3 <= K_; ++k3)
        modes_.push_back(WaveIndex{{k1, k2, k3}, k1 * k1 + k2 * k2 + k3 * k3});
  plan_ = kernels::make_plan(K_, n);
}

std::size_t Lattice::index_of(const std::array<int, 3>& k) const {
  for (int a = 0; a < 3; ++a)
    if (k[a] < -K_ || k[a] > K_)
      throw std::out_of_range("lattice: wavevector outside truncation");
  const int n = 2 * K_ + 1;
  return (static_cast<std::size_t>(k[0] + K_) * n + (k[1] + K_)) * n + (k[2] + K_);
}

std::size_t Lattice::index_of_negated(std::size_t flat) const {
  const auto& w = modes_[flat];
  return index_of({-w.k[0], -w.k[1], -w.k[2]});
}

std::shared_ptr<const Lattice> build_lattice(int truncation, bool dealias) {
  return std::make_shared<const Lattice>(truncation, dealias);
}

}  // namespace t3ns
