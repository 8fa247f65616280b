#ifndef AFCSIM_VERSION_HPP
#define AFCSIM_VERSION_HPP

namespace afcsim {

inline constexpr const char* version_string = "0.1.0";

}  // namespace afcsim

#endif
