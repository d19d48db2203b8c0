#include "ppa/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include <nlohmann/json.hpp>

#include "ppa/error.hpp"

namespace ppa {

std::string_view to_string(Paradigm p) noexcept {
  switch (p) {
    case Paradigm::standard: return "standard";
    case Paradigm::zeroshot: return "zeroshot";
    case Paradigm::dimension: return "dimension";
  }
  return "unknown";
}

std::optional<Paradigm> paradigm_from_string(std::string_view name) noexcept {
  for (auto p : {Paradigm::standard, Paradigm::zeroshot, Paradigm::dimension}) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

void EvalConfig::validate() const {
  if (!(match_threshold >= 0.0)) throw Error(ErrorCode::InvalidArgument, "match threshold must be non-negative");
  if (!(grid_step > 0.0)) throw Error(ErrorCode::InvalidArgument, "grid step must be positive");
  if (samples_per_primitive < 2) throw Error(ErrorCode::InvalidArgument, "need at least 2 samples per primitive");
  da.validate();
}

double empty_side_chamfer() { return kFrameExtent * std::sqrt(2.0); }

EvalReport evaluate_pair(const Document& gt, const Document& pred, const EvalConfig& cfg) {
  cfg.validate();
  EvalReport r;
  r.counts.gt_primitives = gt.sketch.primitives.size();
  r.counts.pred_primitives = pred.sketch.primitives.size();
  r.counts.gt_constraints = gt.constraints.size();
  r.counts.pred_constraints = pred.constraints.size();
  r.counts.gt_dimensions = gt.dimensions.size();
  r.counts.pred_dimensions = pred.dimensions.size();

  const auto pf = primitive_f1(gt.sketch, pred.sketch, cfg.match_threshold);
  r.pf1 = pf.pf1;
  r.counts.matched_primitives = pf.matching.pairs.size();
  r.cf1 = constraint_f1(gt.constraints, pred.constraints, pf.matching);
  r.param_mse = param_mse(gt.sketch, pred.sketch, pf.matching).value;
  r.acc = accuracy(gt.sketch, pred.sketch, pf.matching, cfg.grid_step);
  r.img_mse = img_mse(render(gt.sketch, cfg.render), render(pred.sketch, cfg.render));

  const bool gt_empty = gt.sketch.primitives.empty();
  const bool pred_empty = pred.sketch.primitives.empty();
  if (gt_empty && pred_empty) {
    r.cd = 0.0;
  } else if (gt_empty || pred_empty) {
    r.cd = empty_side_chamfer();
  } else {
    r.cd = chamfer(sample_points(gt.sketch, cfg.samples_per_primitive),
                   sample_points(pred.sketch, cfg.samples_per_primitive));
  }

  if (cfg.paradigm == Paradigm::dimension) {
    auto da = dimension_accuracy(gt.dimensions, pred.dimensions, gt.sketch, pred.sketch, cfg.da);
    r.da = da.da;
    r.da_breakdown = std::move(da.breakdown);
  }
  return r;
}

void aggregate(CorpusReport& report) {
  std::sort(report.pairs.begin(), report.pairs.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  std::sort(report.skipped.begin(), report.skipped.end(), [](const auto& a, const auto& b) { return a.name < b.name; });
  EvalReport mean;
  if (report.paradigm == Paradigm::dimension) mean.da = 0.0;
  for (const auto& p : report.pairs) {
    const auto& r = p.report;
    mean.acc += r.acc;
    mean.param_mse += r.param_mse;
    mean.img_mse += r.img_mse;
    mean.cd += r.cd;
    mean.pf1 += r.pf1;
    mean.cf1 += r.cf1;
    if (mean.da && r.da) *mean.da += *r.da;
    mean.counts.gt_primitives += r.counts.gt_primitives;
    mean.counts.pred_primitives += r.counts.pred_primitives;
    mean.counts.matched_primitives += r.counts.matched_primitives;
    mean.counts.gt_constraints += r.counts.gt_constraints;
    mean.counts.pred_constraints += r.counts.pred_constraints;
    mean.counts.gt_dimensions += r.counts.gt_dimensions;
    mean.counts.pred_dimensions += r.counts.pred_dimensions;
  }
  if (!report.pairs.empty()) {
    const double n = static_cast<double>(report.pairs.size());
    mean.acc /= n;
    mean.param_mse /= n;
    mean.img_mse /= n;
    mean.cd /= n;
    mean.pf1 /= n;
    mean.cf1 /= n;
    if (mean.da) *mean.da /= n;
  }
  report.aggregate = std::move(mean);
}

namespace {

using nlohmann::ordered_json;

ordered_json metrics_json(const EvalReport& r) {
  ordered_json j;
  j["acc"] = r.acc;
  j["param_mse"] = r.param_mse;
  j["img_mse"] = r.img_mse;
  j["cd"] = r.cd;
  j["pf1"] = r.pf1;
  j["cf1"] = r.cf1;
  if (r.da) j["da"] = *r.da;
  j["counts"] = {
      {"gt_primitives", r.counts.gt_primitives},     {"pred_primitives", r.counts.pred_primitives},
      {"matched_primitives", r.counts.matched_primitives}, {"gt_constraints", r.counts.gt_constraints},
      {"pred_constraints", r.counts.pred_constraints}, {"gt_dimensions", r.counts.gt_dimensions},
      {"pred_dimensions", r.counts.pred_dimensions},
  };
  return j;
}

}  // namespace

std::string report_to_json(const CorpusReport& report) {
  ordered_json root;
  root["paradigm"] = std::string(to_string(report.paradigm));
  root["scored"] = report.pairs.size();
  root["skipped_count"] = report.skipped.size();
  root["aggregate"] = metrics_json(report.aggregate);
  ordered_json pairs = ordered_json::array();
  for (const auto& p : report.pairs) {
    ordered_json j;
    j["name"] = p.name;
    j["metrics"] = metrics_json(p.report);
    if (p.report.da) {
      ordered_json checks = ordered_json::array();
      for (const auto& c : p.report.da_breakdown) {
        ordered_json cj;
        cj["gt_index"] = c.gt_index;
        cj["pred_index"] = c.pred_index ? ordered_json(*c.pred_index) : ordered_json(nullptr);
        cj["T"] = c.type ? 1 : 0;
        cj["V"] = c.value ? 1 : 0;
        cj["E"] = c.element ? 1 : 0;
        checks.push_back(std::move(cj));
      }
      j["da_breakdown"] = std::move(checks);
    }
    pairs.push_back(std::move(j));
  }
  root["pairs"] = std::move(pairs);
  ordered_json skipped = ordered_json::array();
  for (const auto& s : report.skipped) skipped.push_back({{"name", s.name}, {"reason", s.reason}});
  root["skipped"] = std::move(skipped);
  return root.dump(2) + "\n";
}

std::string report_to_table(const CorpusReport& report) {
  const bool with_da = report.paradigm == Paradigm::dimension;
  std::string out;
  char line[256];
  auto row = [&](const std::string& name, const EvalReport& r) {
    std::snprintf(line, sizeof line, "%-28s %7.4f %10.4f %9.6f %9.4f %7.4f %7.4f", name.c_str(), r.acc, r.param_mse,
                  r.img_mse, r.cd, r.pf1, r.cf1);
    out += line;
    if (with_da) {
      std::snprintf(line, sizeof line, " %7.4f", r.da.value_or(0.0));
      out += line;
    }
    out += '\n';
  };
  std::snprintf(line, sizeof line, "%-28s %7s %10s %9s %9s %7s %7s", "pair", "Acc", "ParamMSE", "ImgMSE", "CD", "PF1",
                "CF1");
  out += line;
  if (with_da) out += "      DA";
  out += '\n';
  for (const auto& p : report.pairs) row(p.name, p.report);
  row("mean (" + std::to_string(report.pairs.size()) + " pairs)", report.aggregate);
  for (const auto& s : report.skipped) out += "skipped " + s.name + ": " + s.reason + "\n";
  return out;
}

}  // namespace ppa
