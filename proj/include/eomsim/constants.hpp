#pragma once

// Physical constants (SI). Values follow the 2019 SI redefinition; hbar is the
// conventional rounded value so results are reproducible against the test anchors.
namespace eomsim::constants {

inline constexpr double hbar = 1.054571817e-34;   // J s
inline constexpr double k_B = 1.380649e-23;       // J/K (exact)
inline constexpr double c_light = 299792458.0;    // m/s (exact)
inline constexpr double pi = 3.141592653589793238462643383279502884;

}  // namespace eomsim::constants
