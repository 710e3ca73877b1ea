#ifndef BFTC_VERSION_HPP
#define BFTC_VERSION_HPP

namespace bftc {

inline constexpr const char* kVersion = "1.0.0";

} // namespace bftc

#endif
