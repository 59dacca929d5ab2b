#pragma once

// Byte <-> color mapping. A byte with hex digits xy becomes the color xy0000,
// i.e. a shade of red whose intensity is the byte value.

#include <array>
#include <cstdint>
#include <string>
#include <string_view>

#include "fmviz/error.hpp"

namespace fmviz {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend constexpr bool operator==(const Rgb&, const Rgb&) = default;
};

namespace color {

/// Six uppercase hex digits, `RRGGBB`, no `#`.
class HexTriplet {
 public:
  static HexTriplet parse(std::string_view text) {
    if (text.size() != 6) throw Error(Errc::InvalidHexDigit, "hex triplet must have 6 digits");
    std::string upper(text);
    for (char& c : upper) {
      if (c >= 'a' && c <= 'f') c = static_cast<char>(c - 'a' + 'A');
      if (!((c >= '0' && c <= '9') || (c >= 'A' && c <= 'F'))) {
        throw Error(Errc::InvalidHexDigit, "invalid hex digit in triplet: " + std::string(text));
      }
    }
    return HexTriplet(std::move(upper));
  }

  const std::string& text() const noexcept { return text_; }

  Rgb to_rgb() const {
    auto nibble = [](char c) { return c <= '9' ? c - '0' : c - 'A' + 10; };
    auto channel = [&](std::size_t i) {
      return static_cast<std::uint8_t>(nibble(text_[i]) << 4 | nibble(text_[i + 1]));
    };
    return {channel(0), channel(2), channel(4)};
  }

  friend bool operator==(const HexTriplet&, const HexTriplet&) = default;

 private:
  explicit HexTriplet(std::string text) : text_(std::move(text)) {}
  friend HexTriplet color_to_hex_triplet(Rgb c);

  std::string text_;
};

constexpr Rgb byte_to_color(std::uint8_t value) noexcept { return {value, 0, 0}; }

inline HexTriplet color_to_hex_triplet(Rgb c) {
  constexpr char kHex[] = "0123456789ABCDEF";
  std::string text(6, '0');
  const std::array<std::uint8_t, 3> channels{c.r, c.g, c.b};
  for (std::size_t i = 0; i < channels.size(); ++i) {
    text[2 * i] = kHex[channels[i] >> 4];
    text[2 * i + 1] = kHex[channels[i] & 0x0F];
  }
  return HexTriplet(std::move(text));
}

inline std::uint8_t color_to_byte(Rgb c) {
  if (c.g != 0 || c.b != 0) {
    throw Error(Errc::NotARedShade, "color " + color_to_hex_triplet(c).text() + " is not a red shade");
  }
  return c.r;
}

}  // namespace color
}  // namespace fmviz
