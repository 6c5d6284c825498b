#pragma once

#include <string>

namespace exciton {

// %.17g, which round-trips every double; "nan", "inf", "-inf" otherwise.
std::string format_double(double v);

}  // namespace exciton
