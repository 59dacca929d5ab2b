#pragma once

// Box-grid rendering: one box per payload byte, laid out row-major with
// optional gutters, changed bytes marked by an outline ring.

#include <atomic>
#include <cstdio>
#include <exception>
#include <filesystem>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <thread>
#include <variant>
#include <vector>

#include "fmviz/color.hpp"
#include "fmviz/corpus.hpp"
#include "fmviz/diff.hpp"
#include "fmviz/error.hpp"
#include "fmviz/frame.hpp"
#include "fmviz/png.hpp"

namespace fmviz {

struct GridLayout {
  std::size_t box_width_px = 16;
  std::size_t box_height_px = 16;
  std::size_t bytes_per_row = 32;
  std::size_t gutter_px = 1;
  Rgb background{255, 255, 255};
  Rgb gutter_color{200, 200, 200};

  void validate() const {
    if (box_width_px < 1 || box_height_px < 1) throw Error(Errc::InvalidLayout, "box dimensions must be >= 1");
    if (bytes_per_row < 1) throw Error(Errc::InvalidLayout, "bytes per row must be >= 1");
  }
};

struct NoHighlight {};

struct Outline {
  Rgb color{255, 255, 0};
  std::size_t thickness_px = 2;
};

using HighlightStyle = std::variant<NoHighlight, Outline>;

inline HighlightStyle default_highlight() { return Outline{}; }

inline void validate_style(const HighlightStyle& style, const GridLayout& layout) {
  if (const auto* outline = std::get_if<Outline>(&style)) {
    const std::size_t limit = std::min(layout.box_width_px, layout.box_height_px) / 2;
    if (outline->thickness_px < 1 || outline->thickness_px > limit) {
      throw Error(Errc::InvalidLayout, "outline thickness " + std::to_string(outline->thickness_px) +
                                           " must be in [1, " + std::to_string(limit) + "] for " +
                                           std::to_string(layout.box_width_px) + "x" +
                                           std::to_string(layout.box_height_px) + " boxes");
    }
  }
}

namespace render {

struct FrameGeometry {
  std::size_t width_px = 0;
  std::size_t height_px = 0;
  std::size_t rows = 0;

  friend bool operator==(const FrameGeometry&, const FrameGeometry&) = default;
};

inline FrameGeometry frame_geometry(std::size_t payload_length, const GridLayout& layout) {
  layout.validate();
  if (payload_length < 1) throw Error(Errc::InvalidLayout, "payload length must be >= 1");
  const std::size_t bpr = layout.bytes_per_row;
  const std::size_t rows = (payload_length + bpr - 1) / bpr;
  return {bpr * layout.box_width_px + (bpr - 1) * layout.gutter_px,
          rows * layout.box_height_px + (rows - 1) * layout.gutter_px, rows};
}

/// `changed` may be in any order, but every offset must address a byte of
/// `input`. Cells past the end of a partial last row get the background color.
inline Frame render_input(const TestInput& input, const GridLayout& layout,
                          std::span<const std::size_t> changed = {}, const HighlightStyle& style = NoHighlight{}) {
  validate_style(style, layout);
  const FrameGeometry geo = frame_geometry(input.payload.size(), layout);
  for (std::size_t offset : changed) {
    if (offset >= input.payload.size()) {
      throw Error(Errc::OffsetOutOfRange, "changed offset " + std::to_string(offset) + " >= payload length " +
                                              std::to_string(input.payload.size()));
    }
  }

  const std::size_t bw = layout.box_width_px;
  const std::size_t bh = layout.box_height_px;
  const std::size_t pitch_x = bw + layout.gutter_px;
  const std::size_t pitch_y = bh + layout.gutter_px;

  Frame frame(geo.width_px, geo.height_px, layout.gutter_color);
  const std::size_t cells = geo.rows * layout.bytes_per_row;
  for (std::size_t i = 0; i < cells; ++i) {
    const std::size_t x = (i % layout.bytes_per_row) * pitch_x;
    const std::size_t y = (i / layout.bytes_per_row) * pitch_y;
    const Rgb fill = i < input.payload.size() ? color::byte_to_color(input.payload[i]) : layout.background;
    frame.fill_rect(x, y, bw, bh, fill);
  }

  if (const auto* outline = std::get_if<Outline>(&style)) {
    const std::size_t t = outline->thickness_px;
    for (std::size_t offset : changed) {
      const std::size_t x = (offset % layout.bytes_per_row) * pitch_x;
      const std::size_t y = (offset / layout.bytes_per_row) * pitch_y;
      frame.fill_rect(x, y, bw, t, outline->color);
      frame.fill_rect(x, y + bh - t, bw, t, outline->color);
      frame.fill_rect(x, y + t, t, bh - 2 * t, outline->color);
      frame.fill_rect(x + bw - t, y + t, t, bh - 2 * t, outline->color);
    }
  }
  return frame;
}

enum class DiffBaseline { Previous, First, None };

inline std::string frame_filename(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "file_%09zu.png", index);
  return name;
}

struct RenderOptions {
  unsigned threads = 0;  // 0: hardware concurrency
  int png_level = 6;
};

/// Changed offsets of input `i` against the chosen baseline, limited to the
/// bytes input `i` actually has (a shrunk input cannot outline missing boxes).
inline std::vector<std::size_t> highlight_offsets(const Corpus& corpus, std::size_t i, DiffBaseline baseline) {
  if (baseline == DiffBaseline::None || i == 0) return {};
  const TestInput& base = baseline == DiffBaseline::Previous ? corpus[i - 1] : corpus.front();
  std::vector<std::size_t> offsets = diff::changed_offsets(base.payload, corpus[i].payload);
  const std::size_t len = corpus[i].payload.size();
  offsets.erase(std::lower_bound(offsets.begin(), offsets.end(), len), offsets.end());
  return offsets;
}

/// Renders every input to `out_dir/file_NNNNNNNNN.png` and returns the
/// filenames in index order. Frames are produced in parallel, but each file's
/// content depends only on its input, so the output matches a sequential run.
/// On failure every frame written by this call is removed before rethrowing.
inline std::vector<std::string> render_corpus(const Corpus& corpus, const GridLayout& layout,
                                              const HighlightStyle& style, DiffBaseline baseline,
                                              const std::filesystem::path& out_dir, RenderOptions options = {}) {
  namespace fs = std::filesystem;
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "nothing to render");
  layout.validate();
  const HighlightStyle effective = baseline == DiffBaseline::None ? HighlightStyle{NoHighlight{}} : style;
  validate_style(effective, layout);

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec || !fs::is_directory(out_dir)) {
    throw Error(Errc::IoFailure, "cannot create output directory " + out_dir.string());
  }

  std::vector<std::string> names(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) names[i] = frame_filename(corpus[i].index);

  std::vector<char> written(corpus.size(), 0);
  std::atomic<std::size_t> next{0};
  std::atomic<bool> failed{false};
  std::mutex error_mutex;
  std::size_t error_index = corpus.size();
  std::exception_ptr error;

  auto worker = [&] {
    for (std::size_t i = next++; i < corpus.size() && !failed.load(); i = next++) {
      try {
        const std::vector<std::size_t> changed = highlight_offsets(corpus, i, baseline);
        const Frame frame = render_input(corpus[i], layout, changed, effective);
        const std::vector<std::uint8_t> bytes = png::encode_png(frame, options.png_level);
        corpus::detail::write_file_bytes(out_dir / names[i], bytes.data(), bytes.size());
        written[i] = 1;
      } catch (...) {
        std::lock_guard lock(error_mutex);
        if (i < error_index) {
          error_index = i;
          error = std::current_exception();
        }
        failed = true;
      }
    }
  };

  unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, corpus.size()));
  if (threads <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(threads);
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker);
  }

  if (error) {
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      if (written[i]) fs::remove(out_dir / names[i], ec);
    }
    std::rethrow_exception(error);
  }
  return names;
}

inline nlohmann::json manifest_json(const std::vector<std::string>& names) { return nlohmann::json(names); }

}  // namespace render
}  // namespace fmviz
