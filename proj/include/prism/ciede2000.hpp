#pragma once

#include "prism/color_space.hpp"

namespace prism {

/// CIEDE2000 color difference with kL = kC = kH = 1.
///
/// Hue angles are handled in degrees, following the published wrap rules
/// for the mean hue and the hue difference. Symmetric in its arguments and
/// zero for identical inputs.
[[nodiscard]] double ciede2000(const LabTriple& x, const LabTriple& y) noexcept;

}  // namespace prism
