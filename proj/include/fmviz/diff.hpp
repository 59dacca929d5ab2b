#pragma once

// Positional changed-byte sets between test inputs. No alignment: an
// insertion marks every following offset as changed.

#include <algorithm>
#include <cstddef>
#include <vector>

#include "fmviz/corpus.hpp"
#include "fmviz/error.hpp"
#include "json.hpp"

namespace fmviz {

struct DiffRecord {
  std::size_t from_index = 0;
  std::size_t to_index = 0;
  std::vector<std::size_t> changed_offsets;  // strictly increasing
  std::size_t length_from = 0;
  std::size_t length_to = 0;

  friend bool operator==(const DiffRecord&, const DiffRecord&) = default;
};

enum class BaselineMode { Previous, First };

namespace diff {

inline std::vector<std::size_t> changed_offsets(const Bytes& a, const Bytes& b) {
  const std::size_t common = std::min(a.size(), b.size());
  const std::size_t longest = std::max(a.size(), b.size());
  std::vector<std::size_t> out;
  for (std::size_t o = 0; o < common; ++o) {
    if (a[o] != b[o]) out.push_back(o);
  }
  for (std::size_t o = common; o < longest; ++o) out.push_back(o);
  return out;
}

inline DiffRecord diff_inputs(const TestInput& a, const TestInput& b) {
  return {a.index, b.index, changed_offsets(a.payload, b.payload), a.payload.size(), b.payload.size()};
}

inline std::vector<DiffRecord> diff_stream(const Corpus& corpus, BaselineMode mode) {
  if (corpus.size() < 2) {
    throw Error(Errc::CorpusTooSmall, "need at least 2 inputs to diff, got " + std::to_string(corpus.size()));
  }
  std::vector<DiffRecord> out;
  out.reserve(corpus.size() - 1);
  for (std::size_t i = 1; i < corpus.size(); ++i) {
    const TestInput& base = mode == BaselineMode::Previous ? corpus[i - 1] : corpus.front();
    out.push_back(diff_inputs(base, corpus[i]));
  }
  return out;
}

inline nlohmann::json to_json(const DiffRecord& rec) {
  return {{"from", rec.from_index},
          {"to", rec.to_index},
          {"changed", rec.changed_offsets},
          {"len_from", rec.length_from},
          {"len_to", rec.length_to}};
}

inline DiffRecord diff_record_from_json(const nlohmann::json& j) {
  DiffRecord rec;
  rec.from_index = j.at("from").get<std::size_t>();
  rec.to_index = j.at("to").get<std::size_t>();
  rec.changed_offsets = j.at("changed").get<std::vector<std::size_t>>();
  rec.length_from = j.at("len_from").get<std::size_t>();
  rec.length_to = j.at("len_to").get<std::size_t>();
  return rec;
}

}  // namespace diff
}  // namespace fmviz
