#ifndef DDL_VERSION_HPP
#define DDL_VERSION_HPP

namespace ddl
{
inline constexpr const char* kVersion = "1.0.0";
}

#endif // DDL_VERSION_HPP
