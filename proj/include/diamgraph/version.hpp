#pragma once

namespace diamgraph {

inline constexpr const char* kVersion = "1.0.0";

}  // namespace diamgraph
