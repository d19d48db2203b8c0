#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "ppa/constraints.hpp"
#include "ppa/dimensions.hpp"
#include "ppa/document.hpp"
#include "ppa/raster.hpp"
#include "ppa/report.hpp"

namespace ppa {

enum class CorpusMode : std::uint8_t { sketchgraph, cadl, custom };

std::string_view to_string(CorpusMode m) noexcept;
std::optional<CorpusMode> corpus_mode_from_string(std::string_view name) noexcept;

struct PipelineConfig {
  CorpusMode mode = CorpusMode::sketchgraph;
  std::size_t min_primitives = 6;
  std::size_t max_primitives = 30;
  bool dedup = false;
  bool annotate = true;
  std::uint64_t seed = 0;
  ToleranceConfig tolerances;
  AnnotationPolicy annotation;
  RenderOptions render;
  std::size_t workers = 0;  // 0: hardware concurrency

  /// Preset bounds: sketchgraph [6, 30], cadl [1, 25]; custom keeps the
  /// current bounds.
  static PipelineConfig for_mode(CorpusMode mode);

  /// Throws InvalidArgument unless 1 <= min <= max and the tolerances and
  /// render options are usable.
  void validate() const;
};

/// Reads a .dxf or .json document. Throws UnreadableInput when the file cannot
/// be read or has another extension; codec errors propagate.
Document load_document(const std::filesystem::path& path);

/// SHA-256 (hex) of the normalized sketch with primitives sorted by kind and
/// parameter vector, so that documents equal up to primitive order, position
/// and uniform scale hash alike.
std::string canonical_hash(const Sketch& sketch);

enum class EntryStatus : std::uint8_t { retained, out_of_range, duplicate, error };

std::string_view to_string(EntryStatus s) noexcept;

struct OutputPaths {
  std::string plain_dxf;
  std::string annotated_dxf;  // empty when annotation is off
  std::string json;
  std::string png;
};

struct ManifestEntry {
  std::string input;
  std::size_t primitive_count = 0;
  bool retained = false;
  std::string dedup_hash;  // empty when the input could not be read
  EntryStatus status = EntryStatus::error;
  std::string reason;      // for everything but retained
  std::optional<OutputPaths> outputs;
};

struct CorpusManifest {
  std::vector<ManifestEntry> entries;  // sorted by input path

  std::size_t retained_count() const;
  std::size_t error_count() const;
};

/// One JSON object per line, in entry order.
std::string manifest_to_jsonl(const CorpusManifest& manifest);

/// Loads every input on a bounded worker pool, then decides in sorted path
/// order: out-of-range primitive counts are excluded, and with dedup on a
/// document whose canonical hash was already retained is dropped. Read and
/// parse failures are recorded as errors and never abort the batch.
CorpusManifest filter_dataset(const std::vector<std::filesystem::path>& inputs, const PipelineConfig& cfg);

struct ProcessedDocument {
  Document document;  // normalized, with constraints and dimensions
  std::string plain_dxf;
  std::optional<std::string> annotated_dxf;
  std::string json;
  std::vector<std::uint8_t> png;
};

/// Normalizes (when the sketch has no frame), extracts constraints,
/// synthesizes and places dimensions (when annotating) and renders every
/// output format. The same input always yields the same bytes, and feeding
/// the JSON output back in reproduces it.
ProcessedDocument process_document(const Document& doc, const PipelineConfig& cfg);

/// Writes <stem>.dxf, <stem>.annotated.dxf, <stem>.json and <stem>.png and
/// returns their file names (relative to `out_dir`).
OutputPaths write_outputs(const ProcessedDocument& processed, const std::filesystem::path& out_dir,
                          const std::string& stem);

/// filter_dataset, then process_document and write_outputs for every retained
/// entry (in parallel), then manifest.jsonl in `out_dir`. Processing failures
/// are recorded on their entry.
CorpusManifest run_pipeline(const std::vector<std::filesystem::path>& inputs, const std::filesystem::path& out_dir,
                            const PipelineConfig& cfg);

/// .dxf and .json files directly inside `dir`, sorted. Throws UnreadableInput
/// if `dir` is not a directory.
std::vector<std::filesystem::path> list_documents(const std::filesystem::path& dir);

/// Pairs documents of the two directories by file name and scores each pair.
/// A file present on one side only is skipped as MissingPair; a file that
/// fails to load or score is skipped with its error.
CorpusReport evaluate_corpus(const std::filesystem::path& gt_dir, const std::filesystem::path& pred_dir,
                             const EvalConfig& cfg, std::size_t workers = 0);

}  // namespace ppa
