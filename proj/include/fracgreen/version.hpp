#pragma once

namespace fracgreen {

// Library version, echoed into run manifests so outputs are traceable.
inline constexpr const char* version_string = "0.1.0";

}
