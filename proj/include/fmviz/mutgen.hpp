#pragma once

// Deterministic AFL-style mutation stages used as fixtures. Each stage output
// starts with the unmodified seed so seed-relative diffs need no extra input.

#include <cstdint>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fmviz/corpus.hpp"
#include "fmviz/error.hpp"

namespace fmviz::mutgen {

/// Flips `bits` consecutive bits (1, 2 or 4), walking one bit at a time.
struct WalkingBitFlip {
  std::size_t bits = 1;
};

/// XORs `bytes` consecutive bytes (1, 2 or 4) with 0xFF, walking one byte at a time.
struct WalkingByteFlip {
  std::size_t bytes = 1;
};

/// Overwrites the byte at `offset` with each of `values` in turn.
struct ByteValueSweep {
  std::size_t offset = 0;
  std::vector<std::uint8_t> values;
};

using MutationStage = std::variant<WalkingBitFlip, WalkingByteFlip, ByteValueSweep>;

namespace detail {

inline void check_width(std::size_t width, const char* what) {
  if (width != 1 && width != 2 && width != 4) {
    throw Error(Errc::InvalidStage, std::string(what) + " width must be 1, 2 or 4, got " + std::to_string(width));
  }
}

inline std::vector<Bytes> mutants(const Bytes& seed, const WalkingByteFlip& stage) {
  check_width(stage.bytes, "byte flip");
  if (seed.size() < stage.bytes) {
    throw Error(Errc::SeedTooShort, "seed of " + std::to_string(seed.size()) + " bytes is shorter than a " +
                                        std::to_string(stage.bytes) + "-byte flip");
  }
  std::vector<Bytes> out;
  for (std::size_t i = 0; i + stage.bytes <= seed.size(); ++i) {
    Bytes m = seed;
    for (std::size_t j = i; j < i + stage.bytes; ++j) m[j] ^= 0xFF;
    out.push_back(std::move(m));
  }
  return out;
}

// Bit j lives in byte j / 8 at mask 0x80 >> (j % 8), matching AFL's FLIP_BIT.
inline std::vector<Bytes> mutants(const Bytes& seed, const WalkingBitFlip& stage) {
  check_width(stage.bits, "bit flip");
  const std::size_t total_bits = seed.size() * 8;
  if (total_bits < stage.bits) throw Error(Errc::SeedTooShort, "seed is shorter than the bit flip width");
  std::vector<Bytes> out;
  for (std::size_t i = 0; i + stage.bits <= total_bits; ++i) {
    Bytes m = seed;
    for (std::size_t j = i; j < i + stage.bits; ++j) {
      m[j / 8] ^= static_cast<std::uint8_t>(0x80u >> (j % 8));
    }
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Bytes> mutants(const Bytes& seed, const ByteValueSweep& stage) {
  if (stage.offset >= seed.size()) {
    throw Error(Errc::OffsetOutOfRange, "sweep offset " + std::to_string(stage.offset) + " >= seed length " +
                                            std::to_string(seed.size()));
  }
  std::set<std::uint8_t> seen;
  for (std::uint8_t v : stage.values) {
    if (v == seed[stage.offset]) {
      throw Error(Errc::InvalidStage, "sweep value equals the seed byte at offset " + std::to_string(stage.offset));
    }
    if (!seen.insert(v).second) throw Error(Errc::InvalidStage, "sweep values must be distinct");
  }
  std::vector<Bytes> out;
  for (std::uint8_t v : stage.values) {
    Bytes m = seed;
    m[stage.offset] = v;
    out.push_back(std::move(m));
  }
  return out;
}

inline std::vector<Bytes> mutants(const Bytes& seed, const MutationStage& stage) {
  return std::visit([&](const auto& s) { return mutants(seed, s); }, stage);
}

}  // namespace detail

inline Corpus generate_stage(const Bytes& seed, const MutationStage& stage) {
  if (seed.empty()) throw Error(Errc::SeedTooShort, "seed is empty");
  std::vector<Bytes> mutated = detail::mutants(seed, stage);
  Corpus out;
  out.reserve(mutated.size() + 1);
  out.push_back({0, seed});
  for (auto& m : mutated) out.push_back({out.size(), std::move(m)});
  return out;
}

/// The seed once at index 0, then each stage's mutants in order.
inline Corpus generate_demo_corpus(const Bytes& seed, const std::vector<MutationStage>& stages) {
  if (seed.empty()) throw Error(Errc::SeedTooShort, "seed is empty");
  Corpus out{{0, seed}};
  for (const auto& stage : stages) {
    for (auto& m : detail::mutants(seed, stage)) out.push_back({out.size(), std::move(m)});
  }
  return out;
}

/// Stage spec syntax: `bitflip:B`, `byteflip:K`, `sweep:OFFSET:HH,HH,...`
/// (offset decimal, values two-digit hex).
inline MutationStage parse_stage(std::string_view spec) {
  auto fail = [&](const std::string& why) -> MutationStage {
    throw Error(Errc::InvalidStage, "invalid stage '" + std::string(spec) + "': " + why);
  };
  auto parse_uint = [&](std::string_view s) -> std::size_t {
    if (s.empty() || s.size() > 9) fail("expected a number");
    std::size_t v = 0;
    for (char c : s) {
      if (c < '0' || c > '9') fail("expected a number");
      v = v * 10 + static_cast<std::size_t>(c - '0');
    }
    return v;
  };

  const std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos) return fail("missing ':'");
  const std::string_view kind = spec.substr(0, colon);
  const std::string_view rest = spec.substr(colon + 1);

  if (kind == "bitflip" || kind == "byteflip") {
    const std::size_t width = parse_uint(rest);
    if (width != 1 && width != 2 && width != 4) return fail("width must be 1, 2 or 4");
    if (kind == "bitflip") return WalkingBitFlip{width};
    return WalkingByteFlip{width};
  }
  if (kind == "sweep") {
    const std::size_t colon2 = rest.find(':');
    if (colon2 == std::string_view::npos) return fail("expected sweep:OFFSET:VALUES");
    ByteValueSweep sweep{parse_uint(rest.substr(0, colon2)), {}};
    std::string_view values = rest.substr(colon2 + 1);
    while (!values.empty()) {
      const std::size_t comma = values.find(',');
      const std::string_view tok = values.substr(0, comma);
      if (tok.size() != 2 || corpus::detail::hex_value(tok[0]) < 0 || corpus::detail::hex_value(tok[1]) < 0) {
        return fail("sweep values must be two-digit hex bytes");
      }
      sweep.values.push_back(
          static_cast<std::uint8_t>(corpus::detail::hex_value(tok[0]) << 4 | corpus::detail::hex_value(tok[1])));
      if (comma == std::string_view::npos) break;
      values.remove_prefix(comma + 1);
      if (values.empty()) return fail("trailing ','");
    }
    if (sweep.values.empty()) return fail("no sweep values");
    return sweep;
  }
  return fail("unknown stage kind '" + std::string(kind) + "'");
}

}  // namespace fmviz::mutgen
