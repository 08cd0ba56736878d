#pragma once

#include <vector>

#include "resing/lattice.hpp"

namespace resing {

struct SubdivisionStep {
  LatticeVector ray;
  std::vector<Integer> multiplicities_before;  // sorted
  std::vector<Integer> multiplicities_after;   // sorted
};

struct SubdivisionHistory {
  std::vector<SubdivisionStep> steps;
};

struct ToricResolution {
  Fan fan;
  SubdivisionHistory history;
};

struct ToricOptions {
  std::size_t max_steps = 10000;
};

/// Thrown when `max_steps` subdivisions did not reach a smooth fan.
class ToricBudgetExceeded : public Error {
 public:
  ToricBudgetExceeded(ToricResolution partial)
      : Error("toric resolution exceeded its step budget"), partial_(std::move(partial)) {}
  const ToricResolution& partial() const noexcept { return partial_; }

 private:
  ToricResolution partial_;
};

/// Star-subdivides until every cone is smooth, always attacking the
/// lexicographically first cone of maximal multiplicity.
inline ToricResolution resolve_fan(const Fan& fan, const ToricOptions& options = {}) {
  ToricResolution result{fan, {}};
  while (!result.fan.is_smooth()) {
    if (result.history.steps.size() >= options.max_steps) throw ToricBudgetExceeded(std::move(result));
    const Cone* worst = nullptr;
    for (const auto& c : result.fan.cones()) {
      if (!worst || c.multiplicity() > worst->multiplicity() ||
          (c.multiplicity() == worst->multiplicity() && c.canonical() < worst->canonical()))
        worst = &c;
    }
    LatticeVector ray = pick_subdivision_ray(*worst);
    SubdivisionStep step{ray, result.fan.multiplicities(), {}};
    result.fan = star_subdivide(result.fan, ray);
    step.multiplicities_after = result.fan.multiplicities();
    if (step.multiplicities_after.back() > step.multiplicities_before.back())
      throw InvariantViolation("maximal cone multiplicity increased during subdivision");
    result.history.steps.push_back(std::move(step));
  }
  return result;
}

}  // namespace resing
