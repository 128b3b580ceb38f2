// SPDX-License-Identifier: Apache-2.0

#ifndef YEEFEM_FORMAT_HPP
#define YEEFEM_FORMAT_HPP

#include <charconv>
#include <string>

namespace yeefem
{

// Shortest decimal form that round-trips to the same double.
inline std::string format_double(double x)
{
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
  return std::string(buf, ptr);
}

}  // namespace yeefem

#endif  // YEEFEM_FORMAT_HPP
