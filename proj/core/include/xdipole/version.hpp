#ifndef XDIPOLE_VERSION_HPP
#define XDIPOLE_VERSION_HPP

namespace xdipole {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace xdipole

#endif  // XDIPOLE_VERSION_HPP
