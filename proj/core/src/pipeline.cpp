#include "ppa/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <thread>
#include <unordered_set>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "ppa/dxf.hpp"
#include "ppa/error.hpp"
#include "ppa/json_codec.hpp"

namespace fs = std::filesystem;

namespace ppa {

std::string_view to_string(CorpusMode m) noexcept {
  switch (m) {
    case CorpusMode::sketchgraph: return "sketchgraph";
    case CorpusMode::cadl: return "cadl";
    case CorpusMode::custom: return "custom";
  }
  return "unknown";
}

std::optional<CorpusMode> corpus_mode_from_string(std::string_view name) noexcept {
  for (auto m : {CorpusMode::sketchgraph, CorpusMode::cadl, CorpusMode::custom}) {
    if (to_string(m) == name) return m;
  }
  return std::nullopt;
}

std::string_view to_string(EntryStatus s) noexcept {
  switch (s) {
    case EntryStatus::retained: return "retained";
    case EntryStatus::out_of_range: return "out_of_range";
    case EntryStatus::duplicate: return "duplicate";
    case EntryStatus::error: return "error";
  }
  return "unknown";
}

PipelineConfig PipelineConfig::for_mode(CorpusMode mode) {
  PipelineConfig cfg;
  cfg.mode = mode;
  switch (mode) {
    case CorpusMode::sketchgraph:
      cfg.min_primitives = 6;
      cfg.max_primitives = 30;
      break;
    case CorpusMode::cadl:
      cfg.min_primitives = 1;
      cfg.max_primitives = 25;
      break;
    case CorpusMode::custom: break;
  }
  return cfg;
}

void PipelineConfig::validate() const {
  if (min_primitives < 1 || min_primitives > max_primitives) {
    throw Error(ErrorCode::InvalidArgument, "primitive bounds need 1 <= min <= max, got [" +
                                                std::to_string(min_primitives) + ", " +
                                                std::to_string(max_primitives) + "]");
  }
  tolerances.validate();
  if (render.width == 0 || render.height == 0 || render.stroke < 1.0) {
    throw Error(ErrorCode::InvalidArgument, "render size must be positive and stroke at least 1");
  }
  if (!(annotation.gap >= 0.0)) throw Error(ErrorCode::InvalidArgument, "dimension gap must be non-negative");
}

namespace {

template <class Fn>
void parallel_for(std::size_t n, std::size_t workers, Fn&& fn) {
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, n);
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  }
}

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::UnreadableInput, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  if (in.bad()) throw Error(ErrorCode::UnreadableInput, "cannot read " + path.string());
  return buf.str();
}

void write_file(const fs::path& path, std::string_view bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::UnreadableInput, "cannot write " + path.string());
}

std::string lower_extension(const fs::path& path) {
  auto ext = path.extension().string();
  std::transform(ext.begin(), ext.end(), ext.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return ext;
}

std::string sha256_hex(std::string_view data) {
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md, &len, EVP_sha256(), nullptr) != 1) {
    throw Error(ErrorCode::InvalidArgument, "SHA-256 digest failed");
  }
  static constexpr char hex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 0xF];
  }
  return out;
}

std::string error_text(const std::exception& e) { return e.what(); }

}  // namespace

Document load_document(const fs::path& path) {
  const auto ext = lower_extension(path);
  if (ext != ".dxf" && ext != ".json") {
    throw Error(ErrorCode::UnreadableInput, path.string() + ": expected a .dxf or .json file");
  }
  const auto text = read_file(path);
  return ext == ".dxf" ? parse_dxf(text) : parse_json(text);
}

std::string canonical_hash(const Sketch& sketch) {
  Sketch raw{sketch.primitives, std::nullopt};
  Sketch canonical = raw;
  if (!raw.primitives.empty()) {
    try {
      canonical = normalize_sketch(raw).sketch;
    } catch (const Error& e) {
      if (e.code() != ErrorCode::DegenerateBoundingBox) throw;
    }
  }
  std::vector<ParamVector> params;
  params.reserve(canonical.primitives.size());
  for (const auto& p : canonical.primitives) params.push_back(param_vector(p));
  std::sort(params.begin(), params.end(), [](const ParamVector& a, const ParamVector& b) {
    if (a.kind != b.kind) return a.kind < b.kind;
    return a.values < b.values;
  });
  std::string text;
  char buf[64];
  for (const auto& p : params) {
    text += to_string(p.kind);
    for (double v : p.values) {
      std::snprintf(buf, sizeof buf, " %.6f", v + 0.0);
      text += buf;
    }
    text += '\n';
  }
  return sha256_hex(text);
}

std::size_t CorpusManifest::retained_count() const {
  return static_cast<std::size_t>(std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.retained; }));
}

std::size_t CorpusManifest::error_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries.begin(), entries.end(), [](const auto& e) { return e.status == EntryStatus::error; }));
}

std::string manifest_to_jsonl(const CorpusManifest& manifest) {
  std::string out;
  for (const auto& e : manifest.entries) {
    nlohmann::ordered_json j;
    j["input"] = e.input;
    j["primitive_count"] = e.primitive_count;
    j["retained"] = e.retained;
    j["dedup_hash"] = e.dedup_hash;
    j["status"] = std::string(to_string(e.status));
    if (!e.reason.empty()) j["reason"] = e.reason;
    if (e.outputs) {
      j["outputs"] = {{"dxf", e.outputs->plain_dxf},
                      {"annotated_dxf", e.outputs->annotated_dxf.empty() ? nlohmann::ordered_json(nullptr)
                                                                         : nlohmann::ordered_json(e.outputs->annotated_dxf)},
                      {"json", e.outputs->json},
                      {"png", e.outputs->png}};
    }
    out += j.dump();
    out += '\n';
  }
  return out;
}

namespace {

struct FilterResult {
  CorpusManifest manifest;
  std::vector<std::optional<Document>> documents;  // parallel to entries; set for retained ones
};

FilterResult filter_impl(const std::vector<fs::path>& inputs, const PipelineConfig& cfg) {
  cfg.validate();
  std::vector<fs::path> sorted = inputs;
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());

  FilterResult result;
  auto& entries = result.manifest.entries;
  entries.resize(sorted.size());
  result.documents.resize(sorted.size());
  parallel_for(sorted.size(), cfg.workers, [&](std::size_t i) {
    auto& e = entries[i];
    e.input = sorted[i].string();
    try {
      auto doc = load_document(sorted[i]);
      e.primitive_count = doc.sketch.primitives.size();
      e.dedup_hash = canonical_hash(doc.sketch);
      e.status = EntryStatus::retained;
      result.documents[i] = std::move(doc);
    } catch (const std::exception& ex) {
      e.status = EntryStatus::error;
      e.reason = error_text(ex);
    }
  });

  std::unordered_set<std::string> seen;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    auto& e = entries[i];
    if (e.status == EntryStatus::error) continue;
    if (e.primitive_count < cfg.min_primitives || e.primitive_count > cfg.max_primitives) {
      e.status = EntryStatus::out_of_range;
      e.reason = std::to_string(e.primitive_count) + " primitives outside [" + std::to_string(cfg.min_primitives) +
                 ", " + std::to_string(cfg.max_primitives) + "]";
    } else if (cfg.dedup && !seen.insert(e.dedup_hash).second) {
      e.status = EntryStatus::duplicate;
      e.reason = "canonical hash already retained";
    } else {
      e.retained = true;
      continue;
    }
    result.documents[i].reset();
  }
  return result;
}

}  // namespace

CorpusManifest filter_dataset(const std::vector<fs::path>& inputs, const PipelineConfig& cfg) {
  return filter_impl(inputs, cfg).manifest;
}

ProcessedDocument process_document(const Document& doc, const PipelineConfig& cfg) {
  cfg.validate();
  ProcessedDocument out;
  auto& d = out.document;
  d.source = doc.source;
  d.sketch = doc.sketch.frame ? doc.sketch : normalize_sketch(doc.sketch).sketch;
  d.constraints = extract_constraints(d.sketch, cfg.tolerances);
  if (cfg.annotate) d.dimensions = annotate_sketch(d.sketch, cfg.annotation);
  out.plain_dxf = emit_dxf(d, false);
  if (cfg.annotate) out.annotated_dxf = emit_dxf(d, true);
  out.json = emit_json(d);
  out.png = encode_png(render(d.sketch, cfg.render));
  return out;
}

OutputPaths write_outputs(const ProcessedDocument& processed, const fs::path& out_dir, const std::string& stem) {
  OutputPaths paths;
  paths.plain_dxf = stem + ".dxf";
  paths.json = stem + ".json";
  paths.png = stem + ".png";
  write_file(out_dir / paths.plain_dxf, processed.plain_dxf);
  if (processed.annotated_dxf) {
    paths.annotated_dxf = stem + ".annotated.dxf";
    write_file(out_dir / paths.annotated_dxf, *processed.annotated_dxf);
  }
  write_file(out_dir / paths.json, processed.json);
  write_file(out_dir / paths.png,
             std::string_view(reinterpret_cast<const char*>(processed.png.data()), processed.png.size()));
  return paths;
}

CorpusManifest run_pipeline(const std::vector<fs::path>& inputs, const fs::path& out_dir, const PipelineConfig& cfg) {
  auto filtered = filter_impl(inputs, cfg);
  auto& entries = filtered.manifest.entries;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec) throw Error(ErrorCode::UnreadableInput, "cannot create " + out_dir.string() + ": " + ec.message());

  std::vector<std::string> stems(entries.size());
  std::map<std::string, std::size_t> owner;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (!entries[i].retained) continue;
    stems[i] = fs::path(entries[i].input).stem().string();
    const auto [it, fresh] = owner.emplace(stems[i], i);
    if (!fresh) {
      entries[i].status = EntryStatus::error;
      entries[i].reason = "output name '" + stems[i] + "' already used by " + entries[it->second].input;
      filtered.documents[i].reset();
    }
  }

  parallel_for(entries.size(), cfg.workers, [&](std::size_t i) {
    if (!filtered.documents[i]) return;
    try {
      entries[i].outputs = write_outputs(process_document(*filtered.documents[i], cfg), out_dir, stems[i]);
    } catch (const std::exception& ex) {
      entries[i].status = EntryStatus::error;
      entries[i].reason = error_text(ex);
    }
  });

  write_file(out_dir / "manifest.jsonl", manifest_to_jsonl(filtered.manifest));
  return filtered.manifest;
}

std::vector<fs::path> list_documents(const fs::path& dir) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw Error(ErrorCode::UnreadableInput, dir.string() + " is not a directory");
  std::vector<fs::path> out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (!entry.is_regular_file()) continue;
    const auto ext = lower_extension(entry.path());
    if (ext == ".dxf" || ext == ".json") out.push_back(entry.path());
  }
  std::sort(out.begin(), out.end());
  return out;
}

CorpusReport evaluate_corpus(const fs::path& gt_dir, const fs::path& pred_dir, const EvalConfig& cfg,
                             std::size_t workers) {
  cfg.validate();
  std::set<std::string> gt_names;
  std::set<std::string> pred_names;
  for (const auto& p : list_documents(gt_dir)) gt_names.insert(p.filename().string());
  for (const auto& p : list_documents(pred_dir)) pred_names.insert(p.filename().string());

  CorpusReport report;
  report.paradigm = cfg.paradigm;
  std::vector<std::string> paired;
  for (const auto& name : gt_names) {
    if (pred_names.count(name)) {
      paired.push_back(name);
    } else {
      report.skipped.push_back({name, std::string(to_string(ErrorCode::MissingPair)) + ": no prediction file"});
    }
  }
  for (const auto& name : pred_names) {
    if (!gt_names.count(name)) {
      report.skipped.push_back({name, std::string(to_string(ErrorCode::MissingPair)) + ": no ground-truth file"});
    }
  }

  std::vector<std::optional<EvalReport>> scored(paired.size());
  std::vector<std::string> failures(paired.size());
  parallel_for(paired.size(), workers, [&](std::size_t i) {
    try {
      const auto gt = load_document(gt_dir / paired[i]);
      const auto pred = load_document(pred_dir / paired[i]);
      scored[i] = evaluate_pair(gt, pred, cfg);
    } catch (const std::exception& ex) {
      failures[i] = error_text(ex);
    }
  });
  for (std::size_t i = 0; i < paired.size(); ++i) {
    if (scored[i]) {
      report.pairs.push_back({paired[i], std::move(*scored[i])});
    } else {
      report.skipped.push_back({paired[i], failures[i]});
    }
  }
  aggregate(report);
  return report;
}

}  // namespace ppa
