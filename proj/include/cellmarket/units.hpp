#pragma once

#include <cmath>

// Unit conversions between user-facing units (dBm, dB, BS per km^2) and the
// strict SI units (Watts, linear ratios, BS per m^2) used internally.
namespace cellmarket::units {

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double watts) { return 10.0 * std::log10(watts) + 30.0; }
inline double db_to_linear(double db) { return std::pow(10.0, db / 10.0); }
inline double linear_to_db(double linear) { return 10.0 * std::log10(linear); }
inline double per_km2_to_per_m2(double per_km2) { return per_km2 * 1e-6; }
inline double per_m2_to_per_km2(double per_m2) { return per_m2 * 1e6; }

}  // namespace cellmarket::units
