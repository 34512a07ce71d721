#pragma once

#include <string>
#include <vector>

namespace kframe {

/// One named hypothesis of a theorem, as checked numerically.
struct Hypothesis {
  std::string name;
  bool holds = false;
  double residual = 0.0;
};

inline bool all_hold(const std::vector<Hypothesis>& log) {
  for (const auto& h : log) {
    if (!h.holds) return false;
  }
  return true;
}

}  // namespace kframe
