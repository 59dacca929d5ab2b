#pragma once

// Segments a seed-relative diff stream into mutation pattern runs:
//   k-byte shifting  - a contiguous k-byte window advancing by a fixed stride
//   single-byte fixed - the same single byte rewritten with a new value each step
// Anything else lands in unclassified runs.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fmviz/corpus.hpp"
#include "fmviz/diff.hpp"
#include "fmviz/error.hpp"
#include "json.hpp"

namespace fmviz {

struct KByteShifting {
  std::size_t k = 0;
  std::size_t stride = 0;
  std::size_t start_offset = 0;
  std::size_t run_length = 0;
  friend bool operator==(const KByteShifting&, const KByteShifting&) = default;
};

struct SingleByteFixed {
  std::size_t offset = 0;
  std::size_t run_length = 0;
  friend bool operator==(const SingleByteFixed&, const SingleByteFixed&) = default;
};

struct Unclassified {
  std::size_t first_index = 0;
  std::size_t run_length = 0;
  friend bool operator==(const Unclassified&, const Unclassified&) = default;
};

using PatternClass = std::variant<KByteShifting, SingleByteFixed, Unclassified>;

struct PatternRun {
  std::size_t from = 0;  // first input index, inclusive
  std::size_t to = 0;    // last input index, inclusive
  PatternClass pattern;
  friend bool operator==(const PatternRun&, const PatternRun&) = default;
};

struct PatternReport {
  std::vector<PatternRun> runs;
  friend bool operator==(const PatternReport&, const PatternReport&) = default;
};

namespace patterns {

inline constexpr std::size_t kDefaultMinRun = 4;

struct Window {
  std::size_t start = 0;
  std::size_t k = 0;
  friend bool operator==(const Window&, const Window&) = default;
};

/// A sorted offset set is a window iff it is non-empty and gap-free.
inline std::optional<Window> classify_window(std::span<const std::size_t> offsets) {
  if (offsets.empty()) return std::nullopt;
  if (offsets.back() - offsets.front() + 1 != offsets.size()) return std::nullopt;
  return Window{offsets.front(), offsets.size()};
}

namespace detail {

inline std::optional<std::uint8_t> byte_at(const Bytes& payload, std::size_t offset) {
  if (offset < payload.size()) return payload[offset];
  return std::nullopt;
}

class Scanner {
 public:
  Scanner(std::span<const DiffRecord> diffs, const Corpus& corpus) : diffs_(diffs), corpus_(corpus) {
    windows_.reserve(diffs.size());
    for (const auto& rec : diffs) windows_.push_back(classify_window(rec.changed_offsets));
  }

  // Longest run from p whose windows share k and advance by one stride >= 1.
  // Returns {length, stride}; stride is 0 when the run has a single record.
  std::pair<std::size_t, std::size_t> shifting_run(std::size_t p) const {
    if (!windows_[p]) return {0, 0};
    if (p + 1 >= windows_.size() || !advances(p, windows_[p + 1])) return {1, 0};
    const std::size_t stride = windows_[p + 1]->start - windows_[p]->start;
    std::size_t q = p + 1;
    while (q + 1 < windows_.size() && windows_[q + 1] && windows_[q + 1]->k == windows_[p]->k &&
           windows_[q + 1]->start == windows_[q]->start + stride) {
      ++q;
    }
    return {q - p + 1, stride};
  }

  // Longest run from p where every diff is the same singleton {o} and the
  // byte at o changes between each adjacent pair of inputs.
  std::size_t fixed_run(std::size_t p) const {
    if (!windows_[p] || windows_[p]->k != 1) return 0;
    const std::size_t offset = windows_[p]->start;
    std::size_t q = p;
    while (q + 1 < windows_.size() && windows_[q + 1] == windows_[p] &&
           byte_at(payload(q), offset) != byte_at(payload(q + 1), offset)) {
      ++q;
    }
    return q - p + 1;
  }

  const Window& window(std::size_t p) const { return *windows_[p]; }
  std::size_t size() const { return windows_.size(); }
  std::size_t input_index(std::size_t p) const { return diffs_[p].to_index; }

 private:
  bool advances(std::size_t p, const std::optional<Window>& next) const {
    return next && next->k == windows_[p]->k && next->start > windows_[p]->start;
  }
  const Bytes& payload(std::size_t p) const { return corpus_[diffs_[p].to_index].payload; }

  std::span<const DiffRecord> diffs_;
  const Corpus& corpus_;
  std::vector<std::optional<Window>> windows_;
};

}  // namespace detail

/// Greedy left-to-right maximal-run segmentation of First-baseline diffs
/// (records (0,1), (0,2), ...). A single-byte fixed run wins when both kinds
/// reach `min_run` at the same position.
inline PatternReport detect_patterns(std::span<const DiffRecord> diffs, const Corpus& corpus,
                                     std::size_t min_run = kDefaultMinRun) {
  if (min_run < 2) throw Error(Errc::InvalidArgument, "min_run must be >= 2");
  for (std::size_t i = 0; i < diffs.size(); ++i) {
    if (diffs[i].from_index != 0) {
      throw Error(Errc::BaselineModeMismatch, "record (" + std::to_string(diffs[i].from_index) + "," +
                                                  std::to_string(diffs[i].to_index) +
                                                  ") is not relative to input 0");
    }
    if (diffs[i].to_index != i + 1 || diffs[i].to_index >= corpus.size()) {
      throw Error(Errc::IndexGap, "expected record for input " + std::to_string(i + 1) + ", got " +
                                      std::to_string(diffs[i].to_index));
    }
  }

  const detail::Scanner scan(diffs, corpus);
  PatternReport report;
  auto emit_unclassified = [&](std::size_t p) {
    const std::size_t idx = scan.input_index(p);
    if (!report.runs.empty()) {
      auto& last = report.runs.back();
      if (auto* u = std::get_if<Unclassified>(&last.pattern); u && last.to + 1 == idx) {
        last.to = idx;
        ++u->run_length;
        return;
      }
    }
    report.runs.push_back({idx, idx, Unclassified{idx, 1}});
  };

  std::size_t p = 0;
  while (p < scan.size()) {
    if (const std::size_t len = scan.fixed_run(p); len >= min_run) {
      report.runs.push_back(
          {scan.input_index(p), scan.input_index(p + len - 1), SingleByteFixed{scan.window(p).start, len}});
      p += len;
      continue;
    }
    if (const auto [len, stride] = scan.shifting_run(p); len >= min_run) {
      report.runs.push_back({scan.input_index(p), scan.input_index(p + len - 1),
                             KByteShifting{scan.window(p).k, stride, scan.window(p).start, len}});
      p += len;
      continue;
    }
    emit_unclassified(p);
    ++p;
  }
  return report;
}

/// Convenience: First-baseline diff of the corpus, then detection.
inline PatternReport detect_corpus(const Corpus& corpus, std::size_t min_run = kDefaultMinRun) {
  const std::vector<DiffRecord> diffs = diff::diff_stream(corpus, BaselineMode::First);
  return detect_patterns(diffs, corpus, min_run);
}

// The index range carries run_length (and first_index for unclassified runs).
inline std::string describe(const PatternRun& run) {
  std::string line = "inputs " + std::to_string(run.from) + ".." + std::to_string(run.to) + ": ";
  std::visit(
      [&](const auto& p) {
        using T = std::decay_t<decltype(p)>;
        if constexpr (std::is_same_v<T, KByteShifting>) {
          line += std::to_string(p.k) + "-byte shifting window, stride " + std::to_string(p.stride) +
                  ", from offset " + std::to_string(p.start_offset);
        } else if constexpr (std::is_same_v<T, SingleByteFixed>) {
          line += "single-byte fixed at offset " + std::to_string(p.offset);
        } else {
          line += "unclassified";
        }
      },
      run.pattern);
  return line;
}

inline std::string summarize_text(const PatternReport& report) {
  std::string text;
  for (const auto& run : report.runs) text += describe(run) + "\n";
  return text;
}

inline nlohmann::json to_json(const PatternReport& report) {
  nlohmann::json runs = nlohmann::json::array();
  for (const auto& run : report.runs) {
    nlohmann::json j{{"from", run.from}, {"to", run.to}};
    std::visit(
        [&](const auto& p) {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, KByteShifting>) {
            j["class"] = "k_byte_shifting";
            j["k"] = p.k;
            j["stride"] = p.stride;
            j["start_offset"] = p.start_offset;
          } else if constexpr (std::is_same_v<T, SingleByteFixed>) {
            j["class"] = "single_byte_fixed";
            j["offset"] = p.offset;
          } else {
            j["class"] = "unclassified";
            j["first_index"] = p.first_index;
          }
          j["run_length"] = p.run_length;
        },
        run.pattern);
    runs.push_back(std::move(j));
  }
  return {{"runs", std::move(runs)}};
}

inline PatternReport report_from_json(const nlohmann::json& j) {
  PatternReport report;
  for (const auto& r : j.at("runs")) {
    PatternRun run;
    run.from = r.at("from").get<std::size_t>();
    run.to = r.at("to").get<std::size_t>();
    const auto cls = r.at("class").get<std::string>();
    const auto len = r.at("run_length").get<std::size_t>();
    if (cls == "k_byte_shifting") {
      run.pattern = KByteShifting{r.at("k").get<std::size_t>(), r.at("stride").get<std::size_t>(),
                                  r.at("start_offset").get<std::size_t>(), len};
    } else if (cls == "single_byte_fixed") {
      run.pattern = SingleByteFixed{r.at("offset").get<std::size_t>(), len};
    } else if (cls == "unclassified") {
      run.pattern = Unclassified{r.at("first_index").get<std::size_t>(), len};
    } else {
      throw Error(Errc::InvalidArgument, "unknown pattern class: " + cls);
    }
    report.runs.push_back(std::move(run));
  }
  return report;
}

}  // namespace patterns
}  // namespace fmviz
