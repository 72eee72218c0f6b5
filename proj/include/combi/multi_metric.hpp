#pragma once

// Fixed points of contractions on a multi-metric space whose parts are
// disjoint closed intervals of the real line.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace combi::metric {

/// Closed interval [lo, hi] with metric scale * |x - y|.
struct MetricPart {
  double lo = 0.0;
  double hi = 0.0;
  double scale = 1.0;
};

class MultiMetricSpace {
 public:
  /// Throws ValidationError for an empty list, empty or non-finite
  /// intervals, non-positive scales or overlapping parts.
  explicit MultiMetricSpace(std::vector<MetricPart> parts);

  std::size_t part_count() const noexcept { return parts_.size(); }
  const std::vector<MetricPart>& parts() const noexcept { return parts_; }
  /// Index of the part containing x, or part_count() if none.
  std::size_t part_of(double x) const;

 private:
  std::vector<MetricPart> parts_;
};

/// A self-map given piecewise: `pieces[i]` is applied to points of part i
/// and `factors[i]` is the declared contraction factor on that part.
struct SelfMap {
  std::vector<std::function<double(double)>> pieces;
  std::vector<double> factors;
};

struct AffinePiece {
  double a = 0.0;
  double b = 0.0;
};

/// x -> a x + b on each part, with declared factor |a|.
SelfMap affine_self_map(const std::vector<AffinePiece>& pieces);

struct FixedPointOptions {
  std::size_t seeds_per_part = 16;
  double tol = 1e-12;
  std::size_t max_iterations = 1'000'000;  // per seed
  std::size_t samples_per_part = 1000;     // contraction spot checks
  std::uint64_t rng_seed = 20240601;
};

struct FixedPoint {
  double x = 0.0;
  std::size_t part = 0;
  double residual = 0.0;  // |T(x) - x|
};

/// Iterates from a uniform seed grid in every part until successive points
/// are closer than tol, then merges points within 10 tol. Throws
/// ValidationError when the map leaves the space, moves a part across parts
/// or breaks its declared factor on a sampled pair, and LimitExceeded when a
/// seed does not settle within the iteration budget.
std::vector<FixedPoint> fixed_points(const MultiMetricSpace& space, const SelfMap& t,
                                     const FixedPointOptions& opts = {});

}  // namespace combi::metric
