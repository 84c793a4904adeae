#pragma once

namespace hgraph {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace hgraph
