#ifndef OAX_VERSION_HPP
#define OAX_VERSION_HPP

namespace oax {

inline constexpr const char* kVersion = "0.1.0";

}

#endif
