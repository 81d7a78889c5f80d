#include "dirac1c/version.hpp"

namespace dirac1c {

const char* library_version() { return "1.0.0"; }

}  // namespace dirac1c
