#pragma once

#include <numbers>

// Internally every rate and frequency is measured in units of the total
// molecular linewidth gamma, so gamma = 1. Physical units appear only at the
// command-line boundary.
namespace molqi::units {

// gamma = 2*pi * 20 MHz, in rad/s.
inline constexpr double kGammaRadPerSecond = 2.0 * std::numbers::pi * 20.0e6;

inline constexpr double ns_to_gamma_time(double t_ns) {
  return t_ns * 1e-9 * kGammaRadPerSecond;
}
inline constexpr double gamma_time_to_ns(double t) {
  return t / kGammaRadPerSecond * 1e9;
}
// Angular frequency 2*pi*f with f in MHz, expressed in units of gamma.
inline constexpr double mhz_to_gamma(double f_mhz) {
  return 2.0 * std::numbers::pi * f_mhz * 1e6 / kGammaRadPerSecond;
}
inline constexpr double gamma_to_mhz(double w) {
  return w * kGammaRadPerSecond / (2.0 * std::numbers::pi * 1e6);
}

}  // namespace molqi::units
