#include "support/da_table.hpp"

#include <utility>

namespace oracle {

using namespace ppa;

namespace {

Sketch base_sketch() {
  Sketch s;
  s.primitives = {Circle{500, 500, 100}, Line{100, 100, 600, 100, true}, Arc{300, 700, 50, 0, 90}};
  s.frame = NormalizationTransform{};
  return s;
}

Dimension dim(DimensionKind kind, double value, std::size_t index) { return {kind, value, {{index, SubElement::whole}}, {}}; }

std::vector<Dimension> base_dims() {
  return {dim(DimensionKind::diameter, 200, 0), dim(DimensionKind::length, 500, 1), dim(DimensionKind::radius, 50, 2)};
}

DaCase make_case(std::string name, std::size_t correct) {
  DaCase c;
  c.name = std::move(name);
  c.gt_sketch = base_sketch();
  c.gt_dims = base_dims();
  c.pred_sketch = base_sketch();
  c.pred_dims = base_dims();
  c.cfg = DAConfig{0.5, 5.0};
  c.correct = correct;
  c.total = 3;
  return c;
}

}  // namespace

std::vector<DaCase> da_case_table() {
  std::vector<DaCase> t;

  t.push_back(make_case("identical", 3));

  auto c = make_case("diameter within tau_v", 3);
  c.pred_dims[0].value = 200.4;
  t.push_back(c);

  c = make_case("diameter at tau_v", 3);
  c.pred_dims[0].value = 200.5;
  t.push_back(c);

  c = make_case("diameter past tau_v", 2);
  c.pred_dims[0].value = 200.500001;
  t.push_back(c);

  c = make_case("length short by 0.6", 2);
  c.pred_dims[1].value = 499.4;
  t.push_back(c);

  c = make_case("diameter typed as radius", 2);
  c.pred_dims[0].kind = DimensionKind::radius;
  t.push_back(c);

  c = make_case("circle center past tau_e", 2);
  std::get<Circle>(c.pred_sketch.primitives[0]).x_c = 505.001;
  t.push_back(c);

  c = make_case("circle center at tau_e", 3);
  std::get<Circle>(c.pred_sketch.primitives[0]).x_c = 505;
  t.push_back(c);

  c = make_case("line end past tau_e", 2);
  std::get<Line>(c.pred_sketch.primitives[1]).y_end = 105.01;
  t.push_back(c);

  c = make_case("line drawn reversed", 3);
  c.pred_sketch.primitives[1] = Line{600, 100, 100, 100, true};
  t.push_back(c);

  c = make_case("arc center shifted", 2);
  std::get<Arc>(c.pred_sketch.primitives[2]).y_a = 706;
  t.push_back(c);

  c = make_case("length missing", 2);
  c.pred_dims.erase(c.pred_dims.begin() + 1);
  t.push_back(c);

  c = make_case("no predictions", 0);
  c.pred_dims.clear();
  t.push_back(c);

  c = make_case("spurious extra angle", 3);
  c.pred_dims.push_back(dim(DimensionKind::angle, 90, 2));
  t.push_back(c);

  c = make_case("value and element fail together", 2);
  c.pred_dims[0].value = 203;
  std::get<Circle>(c.pred_sketch.primitives[0]).y_c = 490;
  t.push_back(c);

  c = make_case("value and element fail apart", 1);
  c.pred_dims[0].value = 201;
  std::get<Line>(c.pred_sketch.primitives[1]).x_start = 90;
  t.push_back(c);

  c = make_case("all three fail", 0);
  c.pred_dims[0].kind = DimensionKind::radius;
  c.pred_dims[1].value = 510;
  std::get<Arc>(c.pred_sketch.primitives[2]).x_a = 320;
  t.push_back(c);

  c = make_case("two dimensions, length off by 3", 1);
  c.cfg.tau_v = 1.0;
  c.gt_dims.pop_back();
  c.pred_dims.pop_back();
  c.pred_dims[1].value = 503;
  c.total = 2;
  t.push_back(c);

  c = make_case("predictions listed backwards", 3);
  std::swap(c.pred_dims[0], c.pred_dims[2]);
  t.push_back(c);

  c = make_case("length on the wrong line", 2);
  c.pred_sketch.primitives.push_back(Line{100, 300, 600, 300, true});
  c.pred_dims[1].refs[0].index = 3;
  t.push_back(c);

  return t;
}

}  // namespace oracle
