#pragma once

// CODATA 2018 values (SI). Every SI conversion reads from here.

namespace conehydro::constants {

inline constexpr double pi = 3.14159265358979323846;
inline constexpr double hbar = 1.054571817e-34;             // J s
inline constexpr double elementary_charge = 1.602176634e-19; // C
inline constexpr double epsilon0 = 8.8541878128e-12;        // F m^-1
inline constexpr double electron_mass = 9.1093837015e-31;   // kg
inline constexpr double proton_mass = 1.67262192369e-27;    // kg
inline constexpr double euler_gamma = 0.577215664901533;    // 15 digits

inline constexpr double electron_volt = elementary_charge; // J
inline constexpr double nanometre = 1e-9;                  // m

/// e^2 / (4 pi eps0), J m.
inline constexpr double coulomb_prefactor =
    elementary_charge * elementary_charge / (4.0 * pi * epsilon0);

/// Electron-proton reduced mass.
inline constexpr double hydrogen_reduced_mass =
    electron_mass * proton_mass / (electron_mass + proton_mass);

} // namespace conehydro::constants
