#pragma once

namespace bsdist {
inline constexpr const char* kVersionString = "0.1.0";
}
