#pragma once

#include <map>

#include "ultra/function_spec.hpp"
#include "ultra/metric.hpp"

namespace ultra {

/// The raw image f∘d, with no semimetric validation.
inline DistanceMatrix apply_raw(const FiniteSemimetricSpace& s, const FunctionSpec& f) {
  DistanceMatrix m = s.to_matrix();
  std::map<double, double> cache;
  for (auto& row : m.dist)
    for (double& d : row) {
      auto [it, fresh] = cache.try_emplace(d, 0.0);
      if (fresh) it->second = f.raw(d);
      d = it->second;
    }
  return m;
}

/// (X, f∘d). f must vanish at 0 and be positive on the spectrum of the
/// space, otherwise the image is not a semimetric.
inline FiniteSemimetricSpace apply_function(const FiniteSemimetricSpace& s, const FunctionSpec& f) {
  const double f0 = f.raw(0.0);
  if (f0 != 0.0) throw Error(ErrorCode::NotAmenableOnSpectrum, "f(0) = " + format_number(f0) + ", expected 0");
  for (double d : distance_spectrum(s)) {
    const double fd = f.raw(d);
    if (!(fd > 0.0) || !std::isfinite(fd))
      throw Error(ErrorCode::NotAmenableOnSpectrum,
                  "f(" + format_number(d) + ") = " + format_number(fd) + " is not positive");
  }
  return validate_space(apply_raw(s, f));
}

}  // namespace ultra
