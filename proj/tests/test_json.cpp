#include <gtest/gtest.h>

#include <string>

#include "ppa/error.hpp"
#include "ppa/fixtures.hpp"
#include "ppa/json_codec.hpp"

using namespace ppa;

namespace {

ErrorCode parse_error(const std::string& text) {
  try {
    parse_json(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "parse succeeded: " << text;
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST(Json, CircleWithDiameter) {
  Document doc;
  doc.sketch.primitives = {Circle{500, 500, 100}};
  doc.dimensions = {{DimensionKind::diameter, 200, {{0, SubElement::whole}}, {}}};
  const auto text = emit_json(doc);
  EXPECT_NE(text.find("\"kind\": \"circle\""), std::string::npos);
  EXPECT_NE(text.find("\"value\": 200.0"), std::string::npos);
  const auto back = parse_json(text);
  EXPECT_EQ(std::get<Circle>(back.sketch.primitives[0]), (Circle{500, 500, 100}));
  EXPECT_EQ(back.dimensions[0].value, 200.0);
  EXPECT_EQ(back.source, SourceFormat::json);
}

TEST(Json, EmptyLayersStayPresent) {
  Document doc;
  doc.sketch.primitives = {Point{1, 2}};
  const auto text = emit_json(doc);
  EXPECT_NE(text.find("\"constraints\": []"), std::string::npos);
  EXPECT_NE(text.find("\"dimensions\": []"), std::string::npos);
  EXPECT_EQ(text.find("frame"), std::string::npos);
}

TEST(Json, CanonicalKeyOrderAndNewline) {
  Document doc;
  doc.sketch.primitives = {Line{1, 2, 3, 4, false}};
  doc.sketch.frame = NormalizationTransform{2, 0.5, 0.25};
  const auto text = emit_json(doc);
  EXPECT_LT(text.find("\"constraints\""), text.find("\"dimensions\""));
  EXPECT_LT(text.find("\"dimensions\""), text.find("\"frame\""));
  EXPECT_LT(text.find("\"frame\""), text.find("\"primitives\""));
  EXPECT_NE(text.find("\"v\": 0"), std::string::npos);
  EXPECT_TRUE(text.ends_with("}\n"));
  EXPECT_EQ(parse_json(text).sketch.frame, doc.sketch.frame);
}

TEST(Json, DanglingReferences) {
  const std::string prims = R"("primitives":[{"kind":"point","x_p":0,"y_p":0},{"kind":"point","x_p":1,"y_p":1},{"kind":"point","x_p":2,"y_p":2}])";
  EXPECT_EQ(parse_error("{" + prims +
                        R"(,"constraints":[{"kind":"coincident","refs":[{"index":0,"element":"whole"},{"index":7,"element":"whole"}]}],"dimensions":[]})"),
            ErrorCode::DanglingReference);
  EXPECT_EQ(parse_error("{" + prims +
                        R"(,"constraints":[],"dimensions":[{"kind":"length","value":1,"refs":[{"index":3,"element":"whole"}]}]})"),
            ErrorCode::DanglingReference);
}

TEST(Json, SchemaViolations) {
  EXPECT_EQ(parse_error("not json"), ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error("[]"), ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[],"constraints":[]})"), ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"spline"}],"constraints":[],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"circle","x_c":1,"y_c":1}],"constraints":[],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"point","x_p":"1","y_p":1}],"constraints":[],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"line","x_start":0,"y_start":0,"x_end":1,"y_end":1,"v":2}],"constraints":[],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"point","x_p":1,"y_p":1}],"constraints":[{"kind":"horizontal","refs":[]}],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"point","x_p":1,"y_p":1}],"constraints":[{"kind":"glued","refs":[]}],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"point","x_p":1,"y_p":1}],"constraints":[],"dimensions":[{"kind":"length","value":1,"refs":[{"index":-1,"element":"whole"}]}]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"primitives":[{"kind":"point","x_p":1,"y_p":1}],"constraints":[],"dimensions":[{"kind":"length","value":1,"refs":[{"index":0,"element":"side"}]}]})"),
            ErrorCode::SchemaViolation);
  EXPECT_EQ(parse_error(R"({"frame":{"scale":0,"offset_x":0,"offset_y":0},"primitives":[],"constraints":[],"dimensions":[]})"),
            ErrorCode::SchemaViolation);
}

TEST(Json, AcceptsBooleanValidityAndDefaultsToSolid) {
  const auto doc = parse_json(
      R"({"primitives":[{"kind":"line","x_start":0,"y_start":0,"x_end":1,"y_end":1,"v":false},)"
      R"({"kind":"line","x_start":0,"y_start":0,"x_end":2,"y_end":1}],"constraints":[],"dimensions":[]})");
  EXPECT_FALSE(std::get<Line>(doc.sketch.primitives[0]).solid);
  EXPECT_TRUE(std::get<Line>(doc.sketch.primitives[1]).solid);
}

TEST(JsonRoundTrip, RandomDocumentsExact) {
  Rng rng(33);
  RandomDocumentOptions opts;
  opts.grid = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const auto doc = random_document(rng, opts);
    const auto text = emit_json(doc);
    const auto back = parse_json(text);
    EXPECT_EQ(back, doc) << trial;
    EXPECT_EQ(back.sketch.frame, doc.sketch.frame);
    EXPECT_EQ(emit_json(back), text);
  }
}
