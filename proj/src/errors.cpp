#include "qes/errors.hpp"

#include <cstdio>

namespace qes {

std::string LocatedError::format_location(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

}  // namespace qes
