#pragma once

// Minimal PNG writer: 8-bit truecolor, no alpha, no interlace, a single IDAT
// chunk. Output bytes depend only on the frame, so repeated encodes match.

#include <zlib.h>

#include <array>
#include <cstdint>
#include <cstring>
#include <string_view>
#include <vector>

#include "fmviz/error.hpp"
#include "fmviz/frame.hpp"

namespace fmviz::png {

namespace detail {

inline void put_u32(std::vector<std::uint8_t>& out, std::uint32_t v) {
  out.push_back(static_cast<std::uint8_t>(v >> 24));
  out.push_back(static_cast<std::uint8_t>(v >> 16));
  out.push_back(static_cast<std::uint8_t>(v >> 8));
  out.push_back(static_cast<std::uint8_t>(v));
}

inline void put_chunk(std::vector<std::uint8_t>& out, std::string_view type, const std::uint8_t* data,
                      std::size_t size) {
  put_u32(out, static_cast<std::uint32_t>(size));
  const std::size_t type_pos = out.size();
  out.insert(out.end(), type.begin(), type.end());
  if (size > 0) out.insert(out.end(), data, data + size);
  const uLong crc = crc32(0L, out.data() + type_pos, static_cast<uInt>(4 + size));
  put_u32(out, static_cast<std::uint32_t>(crc));
}

// Sub filter on every scanline: flat box interiors become zero runs.
inline std::vector<std::uint8_t> filtered_scanlines(const Frame& frame) {
  const std::size_t stride = frame.width() * 3;
  std::vector<std::uint8_t> raw((stride + 1) * frame.height());
  const auto* src = reinterpret_cast<const std::uint8_t*>(frame.pixels().data());
  for (std::size_t y = 0; y < frame.height(); ++y) {
    std::uint8_t* dst = raw.data() + y * (stride + 1);
    const std::uint8_t* row = src + y * stride;
    dst[0] = 1;
    std::memcpy(dst + 1, row, std::min<std::size_t>(3, stride));
    for (std::size_t i = 3; i < stride; ++i) dst[1 + i] = static_cast<std::uint8_t>(row[i] - row[i - 3]);
  }
  return raw;
}

}  // namespace detail

inline constexpr std::array<std::uint8_t, 8> kSignature{0x89, 'P', 'N', 'G', '\r', '\n', 0x1A, '\n'};

/// `level` is the zlib compression level (0-9).
inline std::vector<std::uint8_t> encode_png(const Frame& frame, int level = 6) {
  if (frame.width() > 0x7FFFFFFFu || frame.height() > 0x7FFFFFFFu) {
    throw Error(Errc::EncodingFailure, "frame too large for PNG");
  }
  const std::vector<std::uint8_t> raw = detail::filtered_scanlines(frame);

  z_stream zs{};
  if (deflateInit(&zs, level) != Z_OK) throw Error(Errc::EncodingFailure, "deflateInit failed");
  std::vector<std::uint8_t> idat(deflateBound(&zs, static_cast<uLong>(raw.size())));
  zs.next_in = const_cast<Bytef*>(raw.data());
  zs.avail_in = static_cast<uInt>(raw.size());
  zs.next_out = idat.data();
  zs.avail_out = static_cast<uInt>(idat.size());
  const int rc = deflate(&zs, Z_FINISH);
  const std::size_t idat_size = zs.total_out;
  deflateEnd(&zs);
  if (rc != Z_STREAM_END) throw Error(Errc::EncodingFailure, "deflate failed");

  std::vector<std::uint8_t> out(kSignature.begin(), kSignature.end());
  out.reserve(out.size() + idat_size + 64);

  std::vector<std::uint8_t> ihdr;
  detail::put_u32(ihdr, static_cast<std::uint32_t>(frame.width()));
  detail::put_u32(ihdr, static_cast<std::uint32_t>(frame.height()));
  ihdr.insert(ihdr.end(), {8, 2, 0, 0, 0});  // depth 8, truecolor, deflate, adaptive filters, no interlace
  detail::put_chunk(out, "IHDR", ihdr.data(), ihdr.size());
  detail::put_chunk(out, "IDAT", idat.data(), idat_size);
  detail::put_chunk(out, "IEND", nullptr, 0);
  return out;
}

}  // namespace fmviz::png
