#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>

#include <nlohmann/json.hpp>

#include "ppa/error.hpp"
#include "ppa/fixtures.hpp"
#include "ppa/json_codec.hpp"
#include "ppa/pipeline.hpp"
#include "support/oracles.hpp"

using namespace ppa;
namespace fs = std::filesystem;

namespace {

Document points_document(std::size_t n, double shift = 0.0) {
  Document d;
  for (std::size_t i = 0; i < n; ++i) {
    d.sketch.primitives.push_back(Point{10.0 * static_cast<double>(i) + shift, 3.0 * static_cast<double>(i * i)});
  }
  return d;
}

fs::path write_doc(const fs::path& dir, const std::string& name, const Document& d) {
  const auto p = dir / name;
  oracle::write_file(p, emit_json(d));
  return p;
}

const ManifestEntry& entry_for(const CorpusManifest& m, const std::string& file) {
  const auto it = std::find_if(m.entries.begin(), m.entries.end(),
                               [&](const auto& e) { return fs::path(e.input).filename() == file; });
  if (it == m.entries.end()) throw std::runtime_error("no entry for " + file);
  return *it;
}

PipelineConfig fast_config(CorpusMode mode = CorpusMode::sketchgraph) {
  auto cfg = PipelineConfig::for_mode(mode);
  cfg.render.width = cfg.render.height = 64;
  cfg.workers = 2;
  return cfg;
}

}  // namespace

TEST(PipelineConfig, Presets) {
  const auto sg = PipelineConfig::for_mode(CorpusMode::sketchgraph);
  EXPECT_EQ(sg.min_primitives, 6u);
  EXPECT_EQ(sg.max_primitives, 30u);
  const auto cadl = PipelineConfig::for_mode(CorpusMode::cadl);
  EXPECT_EQ(cadl.min_primitives, 1u);
  EXPECT_EQ(cadl.max_primitives, 25u);
  EXPECT_EQ(corpus_mode_from_string("cadl"), CorpusMode::cadl);
  EXPECT_FALSE(corpus_mode_from_string("abc"));

  PipelineConfig bad;
  bad.min_primitives = 8;
  bad.max_primitives = 7;
  EXPECT_THROW(bad.validate(), Error);
  bad = PipelineConfig{};
  bad.min_primitives = 0;
  EXPECT_THROW(bad.validate(), Error);
}

TEST(Filter, ModeBounds) {
  oracle::TempDir dir("filter");
  std::vector<fs::path> inputs;
  for (std::size_t n : {3, 6, 25, 30, 31}) {
    inputs.push_back(write_doc(dir.path(), "n" + std::to_string(n) + ".json", points_document(n)));
  }
  auto retained = [&](CorpusMode mode) {
    std::vector<std::size_t> out;
    for (const auto& e : filter_dataset(inputs, fast_config(mode)).entries) {
      if (e.retained) out.push_back(e.primitive_count);
    }
    std::sort(out.begin(), out.end());
    return out;
  };
  EXPECT_EQ(retained(CorpusMode::sketchgraph), (std::vector<std::size_t>{6, 25, 30}));
  EXPECT_EQ(retained(CorpusMode::cadl), (std::vector<std::size_t>{3, 6, 25}));

  const auto m = filter_dataset(inputs, fast_config());
  EXPECT_EQ(entry_for(m, "n3.json").status, EntryStatus::out_of_range);
  EXPECT_FALSE(entry_for(m, "n3.json").reason.empty());
  EXPECT_EQ(m.entries.size(), 5u);
  EXPECT_TRUE(std::is_sorted(m.entries.begin(), m.entries.end(),
                             [](const auto& a, const auto& b) { return a.input < b.input; }));
}

TEST(Filter, DedupIgnoresOrderPositionAndScale) {
  oracle::TempDir dir("dedup");
  auto base = points_document(8);
  base.sketch.primitives.push_back(Circle{40, 40, 5});
  auto reversed = base;
  std::reverse(reversed.sketch.primitives.begin(), reversed.sketch.primitives.end());
  Document moved;
  for (const auto& p : base.sketch.primitives) {
    if (const auto* q = std::get_if<Point>(&p)) moved.sketch.primitives.push_back(Point{q->x_p * 3 + 7, q->y_p * 3 - 2});
    if (const auto* c = std::get_if<Circle>(&p)) moved.sketch.primitives.push_back(Circle{c->x_c * 3 + 7, c->y_c * 3 - 2, 15});
  }
  auto other = points_document(9, 1.0);

  const std::vector<fs::path> inputs{write_doc(dir.path(), "a.json", base), write_doc(dir.path(), "b.json", reversed),
                                     write_doc(dir.path(), "c.json", moved), write_doc(dir.path(), "d.json", other)};
  auto cfg = fast_config();
  cfg.dedup = true;
  const auto m = filter_dataset(inputs, cfg);
  EXPECT_TRUE(entry_for(m, "a.json").retained);
  EXPECT_EQ(entry_for(m, "b.json").status, EntryStatus::duplicate);
  EXPECT_EQ(entry_for(m, "c.json").status, EntryStatus::duplicate);
  EXPECT_TRUE(entry_for(m, "d.json").retained);
  EXPECT_EQ(m.retained_count(), 2u);

  cfg.dedup = false;
  EXPECT_EQ(filter_dataset(inputs, cfg).retained_count(), 4u);
}

TEST(Filter, UnreadableInputsAreRecorded) {
  oracle::TempDir dir("broken");
  const auto good = write_doc(dir.path(), "good.json", points_document(7));
  const auto bad = dir.path() / "bad.json";
  oracle::write_file(bad, "{ not json");
  const auto missing = dir.path() / "missing.dxf";
  const auto text = dir.path() / "notes.txt";
  oracle::write_file(text, "hello");
  const auto m = filter_dataset({good, bad, missing, text}, fast_config());
  EXPECT_EQ(m.error_count(), 3u);
  EXPECT_EQ(m.retained_count(), 1u);
  EXPECT_NE(entry_for(m, "bad.json").reason.find("SchemaViolation"), std::string::npos);
  EXPECT_TRUE(entry_for(m, "missing.dxf").dedup_hash.empty());
}

TEST(CanonicalHash, Properties) {
  const auto a = points_document(5).sketch;
  auto b = a;
  std::rotate(b.primitives.begin(), b.primitives.begin() + 2, b.primitives.end());
  EXPECT_EQ(canonical_hash(a), canonical_hash(b));
  EXPECT_EQ(canonical_hash(a).size(), 64u);
  EXPECT_NE(canonical_hash(a), canonical_hash(points_document(6).sketch));
  // A single point has a degenerate box and still hashes.
  EXPECT_EQ(canonical_hash(points_document(1).sketch).size(), 64u);
  EXPECT_EQ(canonical_hash(Sketch{}).size(), 64u);
}

TEST(Process, RectangleFixture) {
  Document d;
  d.sketch = rectangle_sketch(0, 0, 40, 20);
  const auto out = process_document(d, fast_config());
  const auto j = nlohmann::json::parse(out.json);
  EXPECT_EQ(j["primitives"].size(), 4u);
  EXPECT_EQ(j["constraints"].size(), 14u);
  EXPECT_EQ(j["dimensions"].size(), 4u);
  EXPECT_TRUE(out.annotated_dxf.has_value());
  EXPECT_NE(out.annotated_dxf->find("DIMENSION"), std::string::npos);
  EXPECT_EQ(out.plain_dxf.find("DIMENSION"), std::string::npos);
  EXPECT_EQ(out.png[1], 'P');
  ASSERT_TRUE(out.document.sketch.frame);
  EXPECT_DOUBLE_EQ(out.document.sketch.frame->scale, 999.0 / 40.0);
}

TEST(Process, WithoutAnnotation) {
  Document d;
  d.sketch = rectangle_sketch(0, 0, 40, 20);
  auto cfg = fast_config();
  cfg.annotate = false;
  const auto out = process_document(d, cfg);
  EXPECT_TRUE(nlohmann::json::parse(out.json)["dimensions"].empty());
  EXPECT_FALSE(out.annotated_dxf);

  oracle::TempDir dir("noannot");
  const auto paths = write_outputs(out, dir.path(), "rect");
  EXPECT_TRUE(paths.annotated_dxf.empty());
  EXPECT_FALSE(fs::exists(dir.path() / "rect.annotated.dxf"));
  EXPECT_TRUE(fs::exists(dir.path() / "rect.png"));
}

TEST(Process, IdempotentOnItsOwnOutput) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    Document d;
    d.sketch = random_raw_sketch(rng, 2 + rng.index(9));
    const auto first = process_document(d, fast_config());
    const auto again = process_document(parse_json(first.json), fast_config());
    EXPECT_EQ(again.json, first.json) << trial;
    EXPECT_EQ(again.plain_dxf, first.plain_dxf) << trial;
    EXPECT_EQ(again.png, first.png) << trial;
    EXPECT_EQ(process_document(d, fast_config()).json, first.json);
  }
}

TEST(RunPipeline, DeterministicTreeAndManifest) {
  oracle::TempDir in("run_in");
  std::vector<fs::path> inputs;
  for (const auto& nd : fixture_corpus(3, 12, {.min_primitives = 4, .max_primitives = 14})) {
    inputs.push_back(write_doc(in.path(), nd.name + ".json", nd.document));
  }
  oracle::write_file(in.path() / "broken.json", "[]");
  inputs.push_back(in.path() / "broken.json");

  oracle::TempDir out1("run_a"), out2("run_b");
  auto cfg = fast_config();
  const auto m1 = run_pipeline(inputs, out1.path(), cfg);
  cfg.workers = 1;
  std::reverse(inputs.begin(), inputs.end());
  const auto m2 = run_pipeline(inputs, out2.path(), cfg);
  EXPECT_EQ(oracle::tree_digest(out1.path()), oracle::tree_digest(out2.path()));
  EXPECT_EQ(manifest_to_jsonl(m1), manifest_to_jsonl(m2));
  EXPECT_EQ(m1.error_count(), 1u);

  const auto lines = oracle::read_file(out1.path() / "manifest.jsonl");
  EXPECT_EQ(static_cast<std::size_t>(std::count(lines.begin(), lines.end(), '\n')), m1.entries.size());
  for (const auto& e : m1.entries) {
    if (e.status != EntryStatus::retained) continue;
    ASSERT_TRUE(e.outputs);
    EXPECT_TRUE(fs::exists(out1.path() / e.outputs->json));
  }
}

TEST(RunPipeline, StemCollisionIsAnError) {
  oracle::TempDir in("stem");
  const auto a = write_doc(in.path(), "same.json", points_document(7));
  const auto b = in.path() / "same.dxf";
  oracle::write_file(b, "0\nSECTION\n2\nENTITIES\n0\nLINE\n10\n1\n20\n2\n11\n5\n21\n2\n0\nENDSEC\n0\nEOF\n");
  auto cfg = fast_config(CorpusMode::cadl);
  oracle::TempDir out("stem_out");
  const auto m = run_pipeline({a, b}, out.path(), cfg);
  EXPECT_EQ(m.error_count(), 1u);
  EXPECT_EQ(entry_for(m, "same.json").status, EntryStatus::error);
  EXPECT_TRUE(entry_for(m, "same.dxf").outputs.has_value());
}

TEST(ListDocuments, FiltersAndSorts) {
  oracle::TempDir dir("list");
  oracle::write_file(dir.path() / "b.json", "{}");
  oracle::write_file(dir.path() / "a.DXF", "");
  oracle::write_file(dir.path() / "c.txt", "");
  fs::create_directory(dir.path() / "d.json");
  const auto docs = list_documents(dir.path());
  ASSERT_EQ(docs.size(), 2u);
  EXPECT_EQ(docs[0].filename(), "a.DXF");
  EXPECT_THROW(list_documents(dir.path() / "nope"), Error);
}

class EvaluateCorpus : public ::testing::Test {
 protected:
  void SetUp() override {
    gt_ = std::make_unique<oracle::TempDir>("eval_gt");
    pred_ = std::make_unique<oracle::TempDir>("eval_pred");
    Rng rng(61);
    for (const auto& nd : fixture_corpus(60, 10, {.min_primitives = 2, .max_primitives = 8})) {
      gt_docs_.push_back(nd);
      write_doc(gt_->path(), nd.name + ".json", nd.document);
      const auto pred = perturb_document(nd.document, rng, 1.0);
      pred_docs_.push_back({nd.name, pred});
      write_doc(pred_->path(), nd.name + ".json", pred);
    }
    cfg_.paradigm = Paradigm::dimension;
    cfg_.render.width = cfg_.render.height = 64;
  }

  std::unique_ptr<oracle::TempDir> gt_, pred_;
  std::vector<NamedDocument> gt_docs_, pred_docs_;
  EvalConfig cfg_;
};

TEST_F(EvaluateCorpus, SelfComparisonIsPerfect) {
  const auto r = evaluate_corpus(gt_->path(), gt_->path(), cfg_, 2);
  ASSERT_EQ(r.pairs.size(), 10u);
  EXPECT_TRUE(r.skipped.empty());
  const auto& a = r.aggregate;
  EXPECT_EQ(a.acc, 1.0);
  EXPECT_EQ(a.pf1, 1.0);
  EXPECT_EQ(a.cf1, 1.0);
  EXPECT_EQ(*a.da, 1.0);
  EXPECT_EQ(a.param_mse, 0.0);
  EXPECT_EQ(a.img_mse, 0.0);
  EXPECT_EQ(a.cd, 0.0);
}

TEST_F(EvaluateCorpus, CorruptPredictionIsSkipped) {
  oracle::write_file(pred_->path() / "fixture_0004.json", "{\"primitives\": 3}");
  const auto r = evaluate_corpus(gt_->path(), pred_->path(), cfg_, 2);
  EXPECT_EQ(r.pairs.size(), 9u);
  ASSERT_EQ(r.skipped.size(), 1u);
  EXPECT_EQ(r.skipped[0].name, "fixture_0004.json");
}

TEST_F(EvaluateCorpus, MissingFilesAreSkipped) {
  fs::remove(pred_->path() / "fixture_0001.json");
  write_doc(pred_->path(), "extra.json", pred_docs_[0].document);
  const auto r = evaluate_corpus(gt_->path(), pred_->path(), cfg_, 1);
  EXPECT_EQ(r.pairs.size(), 9u);
  ASSERT_EQ(r.skipped.size(), 2u);
  EXPECT_EQ(r.skipped[0].name, "extra.json");
  EXPECT_NE(r.skipped[0].reason.find("MissingPair"), std::string::npos);
  EXPECT_EQ(r.skipped[1].name, "fixture_0001.json");
}

TEST_F(EvaluateCorpus, AggregateIsMeanOfPairs) {
  const auto r = evaluate_corpus(gt_->path(), pred_->path(), cfg_, 2);
  ASSERT_EQ(r.pairs.size(), 10u);
  double acc = 0, pmse = 0, img = 0, cd = 0, pf1 = 0, cf1 = 0, da = 0;
  for (std::size_t i = 0; i < gt_docs_.size(); ++i) {
    // Scored from the in-memory documents, then compared with what was read back.
    const auto direct = evaluate_pair(parse_json(emit_json(gt_docs_[i].document)),
                                      parse_json(emit_json(pred_docs_[i].document)), cfg_);
    const auto& got = r.pairs[i].report;
    EXPECT_EQ(r.pairs[i].name, gt_docs_[i].name + ".json");
    EXPECT_EQ(got.acc, direct.acc);
    EXPECT_EQ(got.param_mse, direct.param_mse);
    EXPECT_EQ(got.cd, direct.cd);
    acc += direct.acc;
    pmse += direct.param_mse;
    img += direct.img_mse;
    cd += direct.cd;
    pf1 += direct.pf1;
    cf1 += direct.cf1;
    da += *direct.da;
  }
  const double n = 10.0;
  EXPECT_NEAR(r.aggregate.acc, acc / n, 1e-12);
  EXPECT_NEAR(r.aggregate.param_mse, pmse / n, 1e-12);
  EXPECT_NEAR(r.aggregate.img_mse, img / n, 1e-12);
  EXPECT_NEAR(r.aggregate.cd, cd / n, 1e-12);
  EXPECT_NEAR(r.aggregate.pf1, pf1 / n, 1e-12);
  EXPECT_NEAR(r.aggregate.cf1, cf1 / n, 1e-12);
  EXPECT_NEAR(*r.aggregate.da, da / n, 1e-12);
}
