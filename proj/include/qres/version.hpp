#pragma once

namespace qres {

inline constexpr const char* version = "1.0.0";

} // namespace qres
