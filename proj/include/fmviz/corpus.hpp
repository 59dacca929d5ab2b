#pragma once

// Ordered test-input sequences: the line-oriented hex dump format and
// directories of raw input files (e.g. an AFL queue).

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <string_view>
#include <system_error>
#include <variant>
#include <vector>

#include "fmviz/error.hpp"

namespace fmviz {

using Bytes = std::vector<std::uint8_t>;

struct TestInput {
  std::size_t index = 0;
  Bytes payload;

  friend bool operator==(const TestInput&, const TestInput&) = default;
};

using Corpus = std::vector<TestInput>;

namespace corpus {

struct HexDump {
  std::filesystem::path path;
};

struct Directory {
  std::filesystem::path path;
};

using Source = std::variant<HexDump, Directory>;

namespace detail {

inline int hex_value(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  return -1;
}

inline constexpr char kUpperHex[] = "0123456789ABCDEF";

inline Bytes read_file_bytes(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoFailure, "cannot open " + path.string());
  Bytes data((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (in.bad()) throw Error(Errc::IoFailure, "read failed: " + path.string());
  return data;
}

inline void write_file_bytes(const std::filesystem::path& path, const void* data, std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoFailure, "cannot open " + path.string() + " for writing");
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  out.flush();
  if (!out) throw Error(Errc::IoFailure, "write failed: " + path.string());
}

}  // namespace detail

/// Decodes a dump: one input per non-blank line, two hex digits per byte.
/// Line numbers in errors count every physical line (1-based), blank ones included.
/// A trailing '\r' is tolerated so CRLF dumps load.
inline Corpus parse_hex_dump(std::string_view text) {
  Corpus out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (line.empty()) continue;

    for (std::size_t i = 0; i < line.size(); ++i) {
      if (detail::hex_value(line[i]) < 0) {
        throw Error(Errc::InvalidHexDigit,
                    "line " + std::to_string(line_no) + ", column " + std::to_string(i + 1) +
                        ": invalid hex digit",
                    line_no, i + 1);
      }
    }
    if (line.size() % 2 != 0) {
      throw Error(Errc::OddDigitCount,
                  "line " + std::to_string(line_no) + ": odd number of hex digits (" +
                      std::to_string(line.size()) + ")",
                  line_no);
    }

    TestInput input{out.size(), {}};
    input.payload.resize(line.size() / 2);
    for (std::size_t i = 0; i < input.payload.size(); ++i) {
      input.payload[i] = static_cast<std::uint8_t>(detail::hex_value(line[2 * i]) << 4 |
                                                   detail::hex_value(line[2 * i + 1]));
    }
    out.push_back(std::move(input));
  }
  if (out.empty()) throw Error(Errc::EmptyCorpus, "dump contains no test inputs");
  return out;
}

inline std::string write_hex_dump(const Corpus& corpus) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "cannot write an empty corpus");
  std::size_t total = 0;
  for (const auto& input : corpus) total += input.payload.size() * 2 + 1;
  std::string text;
  text.reserve(total);
  for (const auto& input : corpus) {
    for (std::uint8_t b : input.payload) {
      text.push_back(detail::kUpperHex[b >> 4]);
      text.push_back(detail::kUpperHex[b & 0x0F]);
    }
    text.push_back('\n');
  }
  return text;
}

inline Corpus load_hex_dump(const std::filesystem::path& path) {
  const Bytes raw = detail::read_file_bytes(path);
  return parse_hex_dump(std::string_view(reinterpret_cast<const char*>(raw.data()), raw.size()));
}

inline void save_hex_dump(const Corpus& corpus, const std::filesystem::path& path) {
  const std::string text = write_hex_dump(corpus);
  detail::write_file_bytes(path, text.data(), text.size());
}

// Regular files only, ordered by raw filename bytes. AFL queue names are
// zero-padded, so this matches generation order.
inline Corpus load_directory(const Directory& source) {
  namespace fs = std::filesystem;
  std::error_code ec;
  if (!fs::is_directory(source.path, ec)) {
    throw Error(Errc::IoFailure, "not a directory: " + source.path.string());
  }
  std::vector<fs::path> files;
  fs::directory_iterator it(source.path, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot list " + source.path.string() + ": " + ec.message());
  for (; it != fs::directory_iterator(); it.increment(ec)) {
    if (ec) throw Error(Errc::IoFailure, "cannot list " + source.path.string() + ": " + ec.message());
    if (it->is_regular_file(ec)) files.push_back(it->path());
  }
  if (files.empty()) throw Error(Errc::EmptyCorpus, "no regular files in " + source.path.string());
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return a.filename().string() < b.filename().string();
  });

  Corpus out;
  out.reserve(files.size());
  for (const auto& file : files) {
    Bytes payload = detail::read_file_bytes(file);
    if (payload.empty()) {
      throw Error(Errc::EmptyFile, "empty test input file: " + file.filename().string());
    }
    out.push_back({out.size(), std::move(payload)});
  }
  return out;
}

inline Corpus load(const Source& source) {
  return std::visit(
      [](const auto& s) -> Corpus {
        if constexpr (std::is_same_v<std::decay_t<decltype(s)>, HexDump>) {
          return load_hex_dump(s.path);
        } else {
          return load_directory(s);
        }
      },
      source);
}

inline std::string input_filename(std::size_t index) {
  char name[32];
  std::snprintf(name, sizeof(name), "input_%09zu.bin", index);
  return name;
}

/// Writes each payload as `input_NNNNNNNNN.bin`, so reloading the directory
/// reproduces the corpus order. Returns the filenames in index order.
inline std::vector<std::string> write_directory(const Corpus& corpus, const std::filesystem::path& dir) {
  if (corpus.empty()) throw Error(Errc::EmptyCorpus, "cannot write an empty corpus");
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error(Errc::IoFailure, "cannot create " + dir.string() + ": " + ec.message());
  std::vector<std::string> names;
  names.reserve(corpus.size());
  for (const auto& input : corpus) {
    names.push_back(input_filename(input.index));
    detail::write_file_bytes(dir / names.back(), input.payload.data(), input.payload.size());
  }
  return names;
}

}  // namespace corpus
}  // namespace fmviz
