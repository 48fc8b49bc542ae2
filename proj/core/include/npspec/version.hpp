#pragma once

namespace npspec {

inline constexpr const char* version = "0.1.0";

} // namespace npspec
