#pragma once

#include <cmath>
#include <string>

#include "wavelab/error.hpp"
#include "wavelab/types.hpp"

namespace wavelab {

enum class GridKind { uniform_1d, radial };

inline const char* to_string(GridKind kind) {
  return kind == GridKind::radial ? "radial" : "uniform-1d";
}

/// Equally spaced nodes on [start, stop] with trapezoid weights.
///
/// A radial grid never contains the origin: its first node sits at r1 = h,
/// so the Coulomb term is finite at every node. Integrals over the radial
/// volume element use volume_weights(), which add the [0, r1] segment (the
/// integrand carries r^2 and vanishes at r = 0).
template <typename Scalar = double>
class Grid {
 public:
  static Grid uniform(Scalar start, Scalar stop, Index n) {
    return Grid(GridKind::uniform_1d, start, stop, n);
  }

  /// Periodic cell [start, start + length) sampled at n nodes; the node at
  /// start + length is the periodic image of the first and is omitted.
  static Grid periodic(Scalar start, Scalar length, Index n) {
    if (n < 3) throw PreconditionError("grid needs at least 3 nodes");
    return Grid(GridKind::uniform_1d, start, start + length * Scalar(n - 1) / Scalar(n), n);
  }

  /// Nodes r_i = i h, i = 1..n, h = r_max / n.
  static Grid radial(Scalar r_max, Index n) {
    if (n < 3) throw PreconditionError("grid needs at least 3 nodes");
    if (!(r_max > 0) || !std::isfinite(r_max)) throw DomainError("radial grid needs finite r_max > 0");
    const Scalar h = r_max / Scalar(n);
    return Grid(GridKind::radial, h, r_max, n);
  }

  GridKind kind() const { return kind_; }
  bool is_radial() const { return kind_ == GridKind::radial; }
  Scalar start() const { return start_; }
  Scalar stop() const { return stop_; }
  Index size() const { return nodes_.size(); }
  Scalar spacing() const { return h_; }
  Scalar operator[](Index i) const { return nodes_[i]; }
  const VecX<Scalar>& nodes() const { return nodes_; }
  const VecX<Scalar>& weights() const { return weights_; }
  const VecX<Scalar>& volume_weights() const { return volume_weights_; }

  /// Index of the node closest to x (clamped to the grid).
  Index nearest(Scalar x) const {
    const Scalar t = std::round((x - start_) / h_);
    if (t <= 0) return 0;
    if (t >= Scalar(size() - 1)) return size() - 1;
    return static_cast<Index>(t);
  }

  /// Linear interpolation of node samples at x; clamped outside the grid.
  template <typename Derived>
  typename Derived::Scalar interpolate(const Eigen::MatrixBase<Derived>& f, Scalar x) const {
    if (x <= start_) return f[0];
    if (x >= stop_) return f[size() - 1];
    const Scalar t = (x - start_) / h_;
    Index i = static_cast<Index>(std::floor(t));
    if (i >= size() - 1) i = size() - 2;
    const Scalar w = t - Scalar(i);
    return f[i] * (Scalar(1) - w) + f[i + 1] * w;
  }

  bool operator==(const Grid& other) const {
    return kind_ == other.kind_ && start_ == other.start_ && stop_ == other.stop_ &&
           size() == other.size();
  }

 private:
  Grid(GridKind kind, Scalar start, Scalar stop, Index n) : kind_(kind), start_(start), stop_(stop) {
    if (n < 3) throw PreconditionError("grid needs at least 3 nodes");
    if (!std::isfinite(start) || !std::isfinite(stop)) throw DomainError("grid bounds must be finite");
    h_ = (stop - start) / Scalar(n - 1);
    if (!(h_ > 0)) throw DomainError("grid spacing must be positive");
    nodes_.resize(n);
    for (Index i = 0; i < n; ++i) nodes_[i] = start + h_ * Scalar(i);
    nodes_[n - 1] = stop;
    weights_ = VecX<Scalar>::Constant(n, h_);
    weights_[0] = weights_[n - 1] = h_ / 2;
    if (kind == GridKind::radial) {
      volume_weights_ = weights_;
      volume_weights_[0] = h_;  // trapezoid over [0, r1] with a vanishing origin value
      volume_weights_.array() *= Scalar(4) * pi<Scalar> * nodes_.array().square();
    } else {
      volume_weights_ = weights_;
    }
  }

  GridKind kind_;
  Scalar start_;
  Scalar stop_;
  Scalar h_{};
  VecX<Scalar> nodes_;
  VecX<Scalar> weights_;
  VecX<Scalar> volume_weights_;
};

}  // namespace wavelab
