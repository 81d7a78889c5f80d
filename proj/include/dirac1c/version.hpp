#pragma once

namespace dirac1c {

const char* library_version();

}  // namespace dirac1c
