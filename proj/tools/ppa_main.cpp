#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#ifdef PPA_CLI11_SINGLE_HEADER
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "ppa/constraints.hpp"
#include "ppa/dimensions.hpp"
#include "ppa/dxf.hpp"
#include "ppa/error.hpp"
#include "ppa/fixtures.hpp"
#include "ppa/json_codec.hpp"
#include "ppa/pipeline.hpp"
#include "ppa/raster.hpp"
#include "ppa/report.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitError = 1;
constexpr int kExitPartial = 2;

struct Options {
  std::vector<std::string> inputs;
  std::string out;
  std::string mode = "sketchgraph";
  std::size_t min_prims = 0;
  std::size_t max_prims = 0;
  bool dedup = false;
  bool no_annotate = false;
  bool arc_angles = false;
  double tau_pos = ppa::ToleranceConfig{}.tau_pos;
  double tau_ang = ppa::ToleranceConfig{}.tau_ang;
  double tau_v = ppa::DAConfig{}.tau_v;
  double tau_e = ppa::DAConfig{}.tau_e;
  double match_threshold = ppa::kDefaultMatchThreshold;
  std::size_t render_size = ppa::RenderOptions{}.width;
  std::uint64_t seed = 0;
  std::size_t workers = 0;

  // convert
  bool plain = false;
  // evaluate
  std::string gt_dir;
  std::string pred_dir;
  std::string paradigm = "standard";
  std::string format = "table";
  // gen-fixtures
  std::size_t count = 20;
  std::string fixture_format = "json";
  double perturb = 0.0;
  std::string pred_out;
};

void write_text(const std::string& path, std::string_view text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw ppa::Error(ppa::ErrorCode::UnreadableInput, "cannot write " + path);
}

std::vector<fs::path> expand_inputs(const std::vector<std::string>& inputs) {
  std::vector<fs::path> out;
  for (const auto& in : inputs) {
    if (fs::is_directory(in)) {
      const auto files = ppa::list_documents(in);
      out.insert(out.end(), files.begin(), files.end());
    } else {
      out.emplace_back(in);
    }
  }
  return out;
}

ppa::PipelineConfig pipeline_config(const Options& o) {
  const auto mode = ppa::corpus_mode_from_string(o.mode);
  if (!mode) throw ppa::Error(ppa::ErrorCode::InvalidArgument, "unknown mode '" + o.mode + "'");
  auto cfg = ppa::PipelineConfig::for_mode(*mode);
  if (o.min_prims) cfg.min_primitives = o.min_prims;
  if (o.max_prims) cfg.max_primitives = o.max_prims;
  cfg.dedup = o.dedup;
  cfg.annotate = !o.no_annotate;
  cfg.annotation.arc_angles = o.arc_angles;
  cfg.seed = o.seed;
  cfg.tolerances = {o.tau_pos, o.tau_ang};
  cfg.render.width = cfg.render.height = o.render_size;
  cfg.workers = o.workers;
  cfg.validate();
  return cfg;
}

ppa::Document normalized(ppa::Document doc) {
  if (!doc.sketch.frame) doc.sketch = ppa::normalize_sketch(doc.sketch).sketch;
  return doc;
}

std::string extension_of(const std::string& path) { return fs::path(path).extension().string(); }

void print_manifest_summary(const ppa::CorpusManifest& m) {
  std::fprintf(stderr, "%zu inputs, %zu retained, %zu errors\n", m.entries.size(), m.retained_count(),
               m.error_count());
  for (const auto& e : m.entries) {
    if (e.status == ppa::EntryStatus::error) std::fprintf(stderr, "  %s: %s\n", e.input.c_str(), e.reason.c_str());
  }
}

int run_filter(const Options& o) {
  const auto manifest = ppa::filter_dataset(expand_inputs(o.inputs), pipeline_config(o));
  write_text(o.out, ppa::manifest_to_jsonl(manifest));
  print_manifest_summary(manifest);
  return manifest.error_count() ? kExitPartial : kExitOk;
}

int run_process(const Options& o) {
  const auto manifest = ppa::run_pipeline(expand_inputs(o.inputs), o.out, pipeline_config(o));
  print_manifest_summary(manifest);
  return manifest.error_count() ? kExitPartial : kExitOk;
}

int run_convert(const Options& o) {
  const auto doc = ppa::load_document(o.inputs.at(0));
  const auto ext = extension_of(o.out);
  if (ext == ".json") {
    write_text(o.out, ppa::emit_json(doc));
  } else if (ext == ".dxf") {
    write_text(o.out, ppa::emit_dxf(doc, !o.plain));
  } else if (ext == ".png") {
    ppa::RenderOptions ro;
    ro.width = ro.height = o.render_size;
    const auto png = ppa::encode_png(ppa::render(normalized(doc).sketch, ro));
    write_text(o.out, std::string_view(reinterpret_cast<const char*>(png.data()), png.size()));
  } else {
    throw ppa::Error(ppa::ErrorCode::InvalidArgument, "--out must end in .json, .dxf or .png");
  }
  return kExitOk;
}

void write_document(const std::string& out, const ppa::Document& doc) {
  if (extension_of(out) == ".dxf") {
    write_text(out, ppa::emit_dxf(doc, true));
  } else {
    write_text(out, ppa::emit_json(doc));
  }
}

int run_annotate(const Options& o) {
  auto doc = normalized(ppa::load_document(o.inputs.at(0)));
  ppa::AnnotationPolicy policy;
  policy.arc_angles = o.arc_angles;
  doc.dimensions = ppa::annotate_sketch(doc.sketch, policy);
  write_document(o.out, doc);
  return kExitOk;
}

int run_extract(const Options& o) {
  auto doc = normalized(ppa::load_document(o.inputs.at(0)));
  doc.constraints = ppa::extract_constraints(doc.sketch, {o.tau_pos, o.tau_ang});
  write_text(o.out, ppa::emit_json(doc));
  return kExitOk;
}

int run_evaluate(const Options& o) {
  const auto paradigm = ppa::paradigm_from_string(o.paradigm);
  if (!paradigm) throw ppa::Error(ppa::ErrorCode::InvalidArgument, "unknown paradigm '" + o.paradigm + "'");
  ppa::EvalConfig cfg;
  cfg.paradigm = *paradigm;
  cfg.match_threshold = o.match_threshold;
  cfg.da = {o.tau_v, o.tau_e};
  cfg.render.width = cfg.render.height = o.render_size;
  const auto report = ppa::evaluate_corpus(o.gt_dir, o.pred_dir, cfg, o.workers);
  if (o.format == "json") {
    write_text(o.out, ppa::report_to_json(report));
  } else {
    write_text(o.out, ppa::report_to_table(report));
  }
  return report.skipped.empty() ? kExitOk : kExitPartial;
}

int run_gen_fixtures(const Options& o) {
  ppa::RandomDocumentOptions opts;
  if (o.min_prims) opts.min_primitives = o.min_prims;
  if (o.max_prims) opts.max_primitives = o.max_prims;
  opts.arc_angles = o.arc_angles;
  const bool as_dxf = o.fixture_format == "dxf";
  fs::create_directories(o.out);
  if (!o.pred_out.empty()) fs::create_directories(o.pred_out);
  ppa::Rng noise(o.seed ^ 0x9e3779b97f4a7c15ULL);
  for (const auto& [name, doc] : ppa::fixture_corpus(o.seed, o.count, opts)) {
    const auto file = name + (as_dxf ? ".dxf" : ".json");
    write_document((fs::path(o.out) / file).string(), doc);
    if (!o.pred_out.empty()) {
      write_document((fs::path(o.pred_out) / file).string(), ppa::perturb_document(doc, noise, o.perturb));
    }
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ppa: 2D engineering drawing pipeline and evaluation"};
  app.require_subcommand(1);
  Options o;
  int rc = kExitOk;

  auto add_tolerances = [&](CLI::App* sub) {
    sub->add_option("--tau-pos", o.tau_pos, "Positional tolerance for constraints (frame units)");
    sub->add_option("--tau-ang", o.tau_ang, "Angular tolerance for constraints (degrees)");
  };
  auto add_bounds = [&](CLI::App* sub) {
    sub->add_option("--mode", o.mode, "Corpus preset: sketchgraph [6,30], cadl [1,25], custom")
        ->check(CLI::IsMember({"sketchgraph", "cadl", "custom"}));
    sub->add_option("--min-prims", o.min_prims, "Override the minimum primitive count");
    sub->add_option("--max-prims", o.max_prims, "Override the maximum primitive count");
    sub->add_flag("--dedup", o.dedup, "Drop documents whose canonical hash repeats");
    sub->add_option("--workers", o.workers, "Worker threads (0: all cores)");
  };

  auto* filter = app.add_subcommand("filter", "Apply primitive-count bounds and dedup; print a JSON-lines manifest");
  filter->add_option("inputs", o.inputs, "Files or directories")->required();
  filter->add_option("--out", o.out, "Manifest path (default stdout)");
  add_bounds(filter);
  filter->callback([&] { rc = run_filter(o); });

  auto* process = app.add_subcommand("process", "Filter, then emit DXF, annotated DXF, JSON and PNG per document");
  process->add_option("inputs", o.inputs, "Files or directories")->required();
  process->add_option("--out", o.out, "Output directory")->required();
  add_bounds(process);
  add_tolerances(process);
  process->add_flag("--no-annotate", o.no_annotate, "Skip dimension synthesis");
  process->add_flag("--arc-angles", o.arc_angles, "Also dimension arc sweeps");
  process->add_option("--render-size", o.render_size, "PNG width and height in pixels");
  process->add_option("--seed", o.seed, "Seed recorded in the configuration");
  process->callback([&] { rc = run_process(o); });

  auto* convert = app.add_subcommand("convert", "Convert between DXF and JSON, or render to PNG");
  convert->add_option("input", o.inputs, "Input .dxf or .json")->required()->expected(1);
  convert->add_option("--out", o.out, "Output .json, .dxf or .png")->required();
  convert->add_flag("--plain", o.plain, "Omit dimensions from DXF output");
  convert->add_option("--render-size", o.render_size, "PNG width and height in pixels");
  convert->callback([&] { rc = run_convert(o); });

  auto* annotate = app.add_subcommand("annotate", "Replace the dimension layer with synthesized dimensions");
  annotate->add_option("input", o.inputs, "Input .dxf or .json")->required()->expected(1);
  annotate->add_option("--out", o.out, "Output .json or .dxf (default: JSON on stdout)");
  annotate->add_flag("--arc-angles", o.arc_angles, "Also dimension arc sweeps");
  annotate->callback([&] { rc = run_annotate(o); });

  auto* extract = app.add_subcommand("extract-constraints", "Replace the constraint layer with extracted constraints");
  extract->add_option("input", o.inputs, "Input .dxf or .json")->required()->expected(1);
  extract->add_option("--out", o.out, "Output .json (default stdout)");
  add_tolerances(extract);
  extract->callback([&] { rc = run_extract(o); });

  auto* evaluate = app.add_subcommand("evaluate", "Score predictions against ground truth, paired by file name");
  evaluate->add_option("gt_dir", o.gt_dir, "Ground-truth directory")->required();
  evaluate->add_option("pred_dir", o.pred_dir, "Prediction directory")->required();
  evaluate->add_option("--paradigm", o.paradigm, "standard, zeroshot or dimension")
      ->check(CLI::IsMember({"standard", "zeroshot", "dimension"}));
  evaluate->add_option("--tau-v", o.tau_v, "Dimension value tolerance");
  evaluate->add_option("--tau-e", o.tau_e, "Dimension element tolerance (frame units)");
  evaluate->add_option("--match-threshold", o.match_threshold, "Primitive match threshold (frame units)");
  evaluate->add_option("--render-size", o.render_size, "Render width and height for ImgMSE");
  evaluate->add_option("--format", o.format, "table or json")->check(CLI::IsMember({"table", "json"}));
  evaluate->add_option("--out", o.out, "Report path (default stdout)");
  evaluate->add_option("--workers", o.workers, "Worker threads (0: all cores)");
  evaluate->callback([&] { rc = run_evaluate(o); });

  auto* gen = app.add_subcommand("gen-fixtures", "Write a seeded synthetic corpus");
  gen->add_option("--out", o.out, "Output directory")->required();
  gen->add_option("--count", o.count, "Number of documents");
  gen->add_option("--seed", o.seed, "Generator seed");
  gen->add_option("--min-prims", o.min_prims, "Minimum primitives per document");
  gen->add_option("--max-prims", o.max_prims, "Maximum primitives per document");
  gen->add_flag("--arc-angles", o.arc_angles, "Also dimension arc sweeps");
  gen->add_option("--format", o.fixture_format, "json or dxf")->check(CLI::IsMember({"json", "dxf"}));
  gen->add_option("--perturb", o.perturb, "Noise sigma for the prediction corpus");
  gen->add_option("--pred-out", o.pred_out, "Also write a perturbed copy here");
  gen->callback([&] { rc = run_gen_fixtures(o); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return rc;
}
