#include "hweyl/format.hpp"

#include <array>
#include <charconv>

namespace hweyl {

std::string format_real(double value) {
  std::array<char, 64> buffer{};
  const auto result = std::to_chars(buffer.data(), buffer.data() + buffer.size(), value,
                                    std::chars_format::general, 17);
  return std::string(buffer.data(), result.ptr);
}

}  // namespace hweyl
