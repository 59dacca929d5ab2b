#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "fmviz/color.hpp"
#include "fmviz/error.hpp"

namespace fmviz {

// Row-major pixel buffer; pixels.size() == width * height always.
class Frame {
 public:
  Frame(std::size_t width, std::size_t height, Rgb fill = {})
      : width_(width), height_(height), pixels_(checked_area(width, height), fill) {}

  std::size_t width() const noexcept { return width_; }
  std::size_t height() const noexcept { return height_; }
  const std::vector<Rgb>& pixels() const noexcept { return pixels_; }

  Rgb& at(std::size_t x, std::size_t y) { return pixels_[y * width_ + x]; }
  Rgb at(std::size_t x, std::size_t y) const { return pixels_[y * width_ + x]; }

  void fill_rect(std::size_t x0, std::size_t y0, std::size_t w, std::size_t h, Rgb c) {
    for (std::size_t y = y0; y < y0 + h; ++y) {
      Rgb* row = pixels_.data() + y * width_ + x0;
      std::fill(row, row + w, c);
    }
  }

  friend bool operator==(const Frame&, const Frame&) = default;

 private:
  static std::size_t checked_area(std::size_t width, std::size_t height) {
    if (width == 0 || height == 0) throw Error(Errc::InvalidLayout, "frame dimensions must be positive");
    return width * height;
  }

  std::size_t width_;
  std::size_t height_;
  std::vector<Rgb> pixels_;
};

static_assert(sizeof(Rgb) == 3, "Rgb must be tightly packed");

}  // namespace fmviz
