#pragma once

#include <cmath>
#include <numbers>

namespace scatter::units {

inline constexpr double speed_of_light = 3.0e8;  // m/s, as used for the 868 MHz wavelength

inline double db_to_ratio(double db) { return std::pow(10.0, db / 10.0); }
inline double ratio_to_db(double ratio) { return 10.0 * std::log10(ratio); }
inline double dbm_to_watts(double dbm) { return 1e-3 * db_to_ratio(dbm); }
inline double watts_to_dbm(double watts) { return ratio_to_db(watts / 1e-3); }
inline double wavelength(double carrier_hz) { return speed_of_light / carrier_hz; }

}  // namespace scatter::units
