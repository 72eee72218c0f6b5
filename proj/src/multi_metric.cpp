#include "combi/multi_metric.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "combi/errors.hpp"

namespace combi::metric {

MultiMetricSpace::MultiMetricSpace(std::vector<MetricPart> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw ValidationError("a multi-metric space needs at least one part");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const auto& p = parts_[i];
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi) || p.lo > p.hi)
      throw ValidationError("part " + std::to_string(i + 1) + " is not a closed interval");
    if (!(p.scale > 0) || !std::isfinite(p.scale))
      throw ValidationError("part " + std::to_string(i + 1) + " has a non-positive metric scale");
  }
  for (std::size_t i = 0; i < parts_.size(); ++i)
    for (std::size_t j = i + 1; j < parts_.size(); ++j)
      if (parts_[i].lo <= parts_[j].hi && parts_[j].lo <= parts_[i].hi)
        throw ValidationError("parts " + std::to_string(i + 1) + " and " + std::to_string(j + 1) +
                              " overlap");
}

std::size_t MultiMetricSpace::part_of(double x) const {
  for (std::size_t i = 0; i < parts_.size(); ++i)
    if (parts_[i].lo <= x && x <= parts_[i].hi) return i;
  return parts_.size();
}

SelfMap affine_self_map(const std::vector<AffinePiece>& pieces) {
  SelfMap t;
  for (const auto& p : pieces) {
    t.pieces.push_back([p](double x) { return p.a * x + p.b; });
    t.factors.push_back(std::abs(p.a));
  }
  return t;
}

namespace {

double apply(const MultiMetricSpace& space, const SelfMap& t, double x, std::size_t part) {
  const double y = t.pieces[part](x);
  if (space.part_of(y) == space.part_count())
    throw ValidationError("T(" + std::to_string(x) + ") = " + std::to_string(y) +
                          " lies outside the space");
  return y;
}

void spot_check(const MultiMetricSpace& space, const SelfMap& t, const FixedPointOptions& opts) {
  std::mt19937_64 rng(opts.rng_seed);
  for (std::size_t i = 0; i < space.part_count(); ++i) {
    const auto& p = space.parts()[i];
    const double k = t.factors[i];
    if (!(k >= 0) || !(k < 1))
      throw ValidationError("declared factor of part " + std::to_string(i + 1) + " is not in [0, 1)");
    std::uniform_real_distribution<double> u(p.lo, p.hi);
    for (std::size_t s = 0; s < opts.samples_per_part; ++s) {
      const double x = s == 0 ? p.lo : u(rng);
      const double y = s == 0 ? p.hi : u(rng);
      const double tx = apply(space, t, x, i), ty = apply(space, t, y, i);
      const auto j = space.part_of(tx);
      if (space.part_of(ty) != j)
        throw ValidationError("T splits part " + std::to_string(i + 1) + " across parts");
      const double before = p.scale * std::abs(x - y);
      const double after = space.parts()[j].scale * std::abs(tx - ty);
      // Slack for the rounding of tx - ty, which cancels badly for close pairs.
      const double rounding = 4 * std::numeric_limits<double>::epsilon() * space.parts()[j].scale *
                              (std::abs(tx) + std::abs(ty));
      if (after > k * before * (1 + 1e-12) + rounding)
        throw ValidationError("declared contraction factor of part " + std::to_string(i + 1) +
                              " fails at (" + std::to_string(x) + ", " + std::to_string(y) + ")");
    }
  }
}

}  // namespace

std::vector<FixedPoint> fixed_points(const MultiMetricSpace& space, const SelfMap& t,
                                     const FixedPointOptions& opts) {
  if (t.pieces.size() != space.part_count() || t.factors.size() != space.part_count())
    throw PreconditionError("the map needs one piece and one factor per part");
  if (!(opts.tol > 0)) throw PreconditionError("tolerance must be positive");
  if (opts.seeds_per_part == 0) throw PreconditionError("at least one seed per part is required");
  spot_check(space, t, opts);

  std::vector<FixedPoint> found;
  for (std::size_t i = 0; i < space.part_count(); ++i) {
    const auto& p = space.parts()[i];
    for (std::size_t s = 0; s < opts.seeds_per_part; ++s) {
      double x = opts.seeds_per_part == 1
                     ? (p.lo + p.hi) / 2
                     : p.lo + (p.hi - p.lo) * static_cast<double>(s) /
                                  static_cast<double>(opts.seeds_per_part - 1);
      std::size_t part = i;
      bool settled = false;
      for (std::size_t it = 0; it < opts.max_iterations; ++it) {
        const double y = apply(space, t, x, part);
        const auto next_part = space.part_of(y);
        const bool close = next_part == part && space.parts()[part].scale * std::abs(y - x) < opts.tol;
        x = y;
        part = next_part;
        if (close) {
          settled = true;
          break;
        }
      }
      if (!settled)
        throw LimitExceeded("iteration from a seed of part " + std::to_string(i + 1) +
                            " did not settle within " + std::to_string(opts.max_iterations) + " steps");
      found.push_back({x, part, std::abs(t.pieces[part](x) - x)});
    }
  }

  std::sort(found.begin(), found.end(), [](const FixedPoint& a, const FixedPoint& b) { return a.x < b.x; });
  std::vector<FixedPoint> out;
  for (const auto& f : found) {
    if (!out.empty() && out.back().part == f.part && std::abs(f.x - out.back().x) <= 10 * opts.tol) {
      if (f.residual < out.back().residual) out.back() = f;
      continue;
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace combi::metric
