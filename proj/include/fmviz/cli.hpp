#pragma once

// `fmviz` command line: convert, render, detect, gen.
// Exit codes: 0 ok, 2 input/format, 3 I/O, 4 semantic (corpus too small).

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fmviz/corpus.hpp"
#include "fmviz/diff.hpp"
#include "fmviz/error.hpp"
#include "fmviz/mutgen.hpp"
#include "fmviz/patterns.hpp"
#include "fmviz/render.hpp"
#include "json.hpp"

namespace fmviz::cli {

enum ExitCode : int { kOk = 0, kInputError = 2, kIoError = 3, kSemanticError = 4 };

struct RunConfig {
  std::string subcommand;
  std::filesystem::path input;
  std::filesystem::path output;
  std::string box = "16x16";
  std::size_t bytes_per_row = 32;
  std::size_t gutter = 1;
  std::string diff = "previous";
  std::string highlight = "outline";
  std::size_t min_run = patterns::kDefaultMinRun;
  std::vector<std::string> stages;
  bool quiet = false;
};

struct Streams {
  std::ostream& out;
  std::ostream& err;
};

namespace detail {

inline corpus::Source source_for(const std::filesystem::path& path) {
  if (std::filesystem::is_directory(path)) return corpus::Directory{path};
  return corpus::HexDump{path};
}

inline int report(Streams io, int code, const std::string& what) {
  io.err << "fmviz: " << what << "\n";
  return code;
}

inline std::optional<Corpus> load_input(const RunConfig& cfg, Streams io, int& code) {
  try {
    return corpus::load(source_for(cfg.input));
  } catch (const Error& e) {
    code = report(io, kInputError, "cannot load " + cfg.input.string() + ": " + e.what());
    return std::nullopt;
  }
}

inline bool parse_box(const std::string& text, std::size_t& w, std::size_t& h) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos || x == 0 || x + 1 >= text.size()) return false;
  try {
    std::size_t used = 0;
    const std::string ws = text.substr(0, x), hs = text.substr(x + 1);
    if (ws.find_first_not_of("0123456789") != std::string::npos) return false;
    if (hs.find_first_not_of("0123456789") != std::string::npos) return false;
    w = std::stoul(ws, &used);
    h = std::stoul(hs, &used);
  } catch (const std::exception&) {
    return false;
  }
  return w >= 1 && h >= 1;
}

inline void ensure_parent(const std::filesystem::path& file) {
  if (file.has_parent_path()) {
    std::error_code ec;
    std::filesystem::create_directories(file.parent_path(), ec);
    if (ec) throw Error(Errc::IoFailure, "cannot create " + file.parent_path().string() + ": " + ec.message());
  }
}

}  // namespace detail

inline int cmd_convert(const RunConfig& cfg, Streams io) {
  int code = kOk;
  const bool from_dir = std::filesystem::is_directory(cfg.input);
  auto loaded = detail::load_input(cfg, io, code);
  if (!loaded) return code;
  try {
    if (from_dir) {
      detail::ensure_parent(cfg.output);
      corpus::save_hex_dump(*loaded, cfg.output);
    } else {
      corpus::write_directory(*loaded, cfg.output);
    }
  } catch (const Error& e) {
    return detail::report(io, kIoError, e.what());
  }
  if (!cfg.quiet) io.out << "converted " << loaded->size() << " inputs\n";
  return kOk;
}

inline int cmd_render(const RunConfig& cfg, Streams io) {
  GridLayout layout;
  if (!detail::parse_box(cfg.box, layout.box_width_px, layout.box_height_px)) {
    return detail::report(io, kInputError, "--box expects WxH with positive integers, got '" + cfg.box + "'");
  }
  layout.bytes_per_row = cfg.bytes_per_row;
  layout.gutter_px = cfg.gutter;

  render::DiffBaseline baseline = render::DiffBaseline::None;
  if (cfg.diff == "previous") baseline = render::DiffBaseline::Previous;
  else if (cfg.diff == "first") baseline = render::DiffBaseline::First;

  HighlightStyle style = NoHighlight{};
  if (cfg.highlight == "outline") {
    Outline outline;
    outline.thickness_px = std::min(outline.thickness_px, std::min(layout.box_width_px, layout.box_height_px) / 2);
    style = outline;
  }
  try {
    layout.validate();
    if (baseline != render::DiffBaseline::None) validate_style(style, layout);
  } catch (const Error& e) {
    return detail::report(io, kInputError, std::string(e.what()) + " (use --highlight none for tiny boxes)");
  }

  int code = kOk;
  auto loaded = detail::load_input(cfg, io, code);
  if (!loaded) return code;

  const auto start = std::chrono::steady_clock::now();
  std::vector<std::string> names;
  try {
    names = render::render_corpus(*loaded, layout, style, baseline, cfg.output);
  } catch (const Error& e) {
    return detail::report(io, kIoError, std::string(e.what()) + "; no frames kept");
  }
  try {
    const std::string manifest = render::manifest_json(names).dump(2) + "\n";
    corpus::detail::write_file_bytes(cfg.output / "manifest.json", manifest.data(), manifest.size());
  } catch (const Error& e) {
    return detail::report(io, kIoError, std::string(e.what()) + "; last complete frame " + names.back());
  }
  const std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;
  if (!cfg.quiet) {
    io.out << "rendered " << names.size() << " frames\n";
    io.err << "elapsed " << std::fixed << std::setprecision(2) << elapsed.count() << " s\n";
  }
  return kOk;
}

inline int cmd_detect(const RunConfig& cfg, Streams io) {
  if (cfg.min_run < 2) return detail::report(io, kInputError, "--min-run must be >= 2");
  int code = kOk;
  auto loaded = detail::load_input(cfg, io, code);
  if (!loaded) return code;
  if (loaded->size() < 2) {
    return detail::report(io, kSemanticError,
                          "pattern detection needs at least 2 inputs, got " + std::to_string(loaded->size()));
  }
  const PatternReport report = patterns::detect_corpus(*loaded, cfg.min_run);
  try {
    std::error_code ec;
    std::filesystem::create_directories(cfg.output, ec);
    if (ec) throw Error(Errc::IoFailure, "cannot create " + cfg.output.string() + ": " + ec.message());
    const std::string json = patterns::to_json(report).dump(2) + "\n";
    corpus::detail::write_file_bytes(cfg.output / "patterns.json", json.data(), json.size());
  } catch (const Error& e) {
    return detail::report(io, kIoError, e.what());
  }
  if (!cfg.quiet) io.out << patterns::summarize_text(report);
  return kOk;
}

inline int cmd_gen(const RunConfig& cfg, Streams io, const std::string& usage = {}) {
  Bytes seed;
  try {
    seed = corpus::detail::read_file_bytes(cfg.input);
  } catch (const Error& e) {
    return detail::report(io, kInputError, e.what());
  }
  if (seed.empty()) return detail::report(io, kInputError, "seed file " + cfg.input.string() + " is empty");

  Corpus generated;
  try {
    std::vector<mutgen::MutationStage> stages;
    for (const auto& spec : cfg.stages) stages.push_back(mutgen::parse_stage(spec));
    generated = mutgen::generate_demo_corpus(seed, stages);
  } catch (const Error& e) {
    detail::report(io, kInputError, e.what());
    io.err << usage;
    return kInputError;
  }

  try {
    if (cfg.output.empty()) {
      io.out << corpus::write_hex_dump(generated);
    } else {
      detail::ensure_parent(cfg.output);
      corpus::save_hex_dump(generated, cfg.output);
      if (!cfg.quiet) io.err << "generated " << generated.size() << " inputs\n";
    }
  } catch (const Error& e) {
    return detail::report(io, kIoError, e.what());
  }
  return kOk;
}

/// Builds the argument parser; subcommand options write into `cfg`.
inline std::unique_ptr<CLI::App> make_app(RunConfig& cfg) {
  auto app = std::make_unique<CLI::App>("Byte-level visualization of fuzzer-generated test inputs", "fmviz");
  app->require_subcommand(1);

  auto add_quiet = [&](CLI::App* sub) { sub->add_flag("-q,--quiet", cfg.quiet, "Suppress progress output"); };

  auto* convert = app->add_subcommand("convert", "Convert a directory of inputs to a hex dump, or a dump to a directory");
  convert->add_option("-i,--input", cfg.input, "Input directory or hex dump file")->required();
  convert->add_option("-o,--out", cfg.output, "Output dump file (from a directory) or directory (from a dump)")
      ->required();
  add_quiet(convert);

  auto* render = app->add_subcommand("render", "Render each input as a PNG box grid (file_NNNNNNNNN.png)");
  render->add_option("-i,--input", cfg.input, "Input directory or hex dump file")->required();
  render->add_option("-o,--out", cfg.output, "Output directory for frames and manifest.json")->required();
  render->add_option("--box", cfg.box, "Box size in pixels, WxH")->capture_default_str();
  render->add_option("--bpr", cfg.bytes_per_row, "Bytes per row")->capture_default_str()->check(CLI::PositiveNumber);
  render->add_option("--gutter", cfg.gutter, "Gutter between boxes in pixels")->capture_default_str();
  render->add_option("--diff", cfg.diff, "Change baseline: previous, first or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"previous", "first", "none"}));
  render->add_option("--highlight", cfg.highlight, "Changed-byte highlight: outline or none")
      ->capture_default_str()
      ->check(CLI::IsMember({"outline", "none"}));
  add_quiet(render);

  auto* detect = app->add_subcommand("detect", "Classify mutation runs against the first input (writes patterns.json)");
  detect->add_option("-i,--input", cfg.input, "Input directory or hex dump file")->required();
  detect->add_option("-o,--out", cfg.output, "Output directory for patterns.json")->required();
  detect->add_option("--min-run", cfg.min_run, "Minimum inputs in a classified run (>= 2)")->capture_default_str();
  add_quiet(detect);

  auto* gen = app->add_subcommand("gen", "Generate a fixture corpus from a seed file and mutation stages");
  gen->add_option("-i,--input", cfg.input, "Seed file (raw bytes)")->required();
  gen->add_option("-o,--out", cfg.output, "Output hex dump file (default: stdout)");
  gen->add_option("stages", cfg.stages, "Stages: bitflip:B, byteflip:K (B,K in 1,2,4), sweep:OFFSET:HH,HH,...");
  add_quiet(gen);

  return app;
}

inline int run(int argc, const char* const* argv, Streams io) {
  RunConfig cfg;
  auto app = make_app(cfg);
  try {
    app->parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app->exit(e, io.out, io.err);
  } catch (const CLI::CallForAllHelp& e) {
    return app->exit(e, io.out, io.err);
  } catch (const CLI::ParseError& e) {
    app->exit(e, io.out, io.err);
    return kInputError;
  }
  for (const CLI::App* sub : app->get_subcommands()) {
    cfg.subcommand = sub->get_name();
    if (cfg.subcommand == "convert") return cmd_convert(cfg, io);
    if (cfg.subcommand == "render") return cmd_render(cfg, io);
    if (cfg.subcommand == "detect") return cmd_detect(cfg, io);
    if (cfg.subcommand == "gen") return cmd_gen(cfg, io, sub->help());
  }
  return kInputError;
}

inline int run(const std::vector<std::string>& args, Streams io) {
  std::vector<const char*> argv{"fmviz"};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), io);
}

}  // namespace fmviz::cli
