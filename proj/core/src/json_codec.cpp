#include "ppa/json_codec.hpp"

#include <string>

#include <nlohmann/json.hpp>

#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

namespace {

using detail::overloaded;
using nlohmann::json;

[[noreturn]] void violation(const std::string& where, const std::string& what) {
  throw Error(ErrorCode::SchemaViolation, where + ": " + what);
}

const json& field(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object()) violation(where, "expected an object");
  const auto it = obj.find(key);
  if (it == obj.end()) violation(where, std::string("missing field '") + key + "'");
  return *it;
}

double number(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_number()) violation(where + "." + key, "expected a number");
  return v.get<double>();
}

std::string text(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_string()) violation(where + "." + key, "expected a string");
  return v.get<std::string>();
}

const json& array(const json& obj, const char* key, const std::string& where) {
  const auto& v = field(obj, key, where);
  if (!v.is_array()) violation(where + "." + key, "expected an array");
  return v;
}

Primitive read_primitive(const json& j, const std::string& where) {
  const auto kind_name = text(j, "kind", where);
  const auto kind = primitive_kind_from_string(kind_name);
  if (!kind) violation(where + ".kind", "unknown primitive kind '" + kind_name + "'");
  switch (*kind) {
    case PrimitiveKind::point: return Point{number(j, "x_p", where), number(j, "y_p", where)};
    case PrimitiveKind::line: {
      Line l{number(j, "x_start", where), number(j, "y_start", where), number(j, "x_end", where),
             number(j, "y_end", where), true};
      if (const auto it = j.find("v"); it != j.end()) {
        if (it->is_boolean()) {
          l.solid = it->get<bool>();
        } else if (it->is_number() && (it->get<double>() == 0.0 || it->get<double>() == 1.0)) {
          l.solid = it->get<double>() == 1.0;
        } else {
          violation(where + ".v", "expected 0 or 1");
        }
      }
      return l;
    }
    case PrimitiveKind::circle: return Circle{number(j, "x_c", where), number(j, "y_c", where), number(j, "r", where)};
    case PrimitiveKind::arc:
      return Arc{number(j, "x_a", where), number(j, "y_a", where), number(j, "r", where), number(j, "theta_start", where),
                 number(j, "theta_end", where)};
  }
  violation(where, "unreachable primitive kind");
}

std::vector<ElementRef> read_refs(const json& j, const std::string& where) {
  std::vector<ElementRef> refs;
  const auto& arr = array(j, "refs", where);
  for (std::size_t k = 0; k < arr.size(); ++k) {
    const auto at = where + ".refs[" + std::to_string(k) + "]";
    const auto& idx = field(arr[k], "index", at);
    if (!idx.is_number_integer() || idx.get<long long>() < 0) violation(at + ".index", "expected a non-negative integer");
    const auto element_name = text(arr[k], "element", at);
    const auto element = sub_element_from_string(element_name);
    if (!element) violation(at + ".element", "unknown element '" + element_name + "'");
    refs.push_back({static_cast<std::size_t>(idx.get<long long>()), *element});
  }
  return refs;
}

json write_refs(const std::vector<ElementRef>& refs) {
  json arr = json::array();
  for (const auto& r : refs) arr.push_back({{"index", r.index}, {"element", std::string(to_string(r.element))}});
  return arr;
}

json write_primitive(const Primitive& p) {
  return std::visit(overloaded{
                        [](const Point& q) -> json { return {{"kind", "point"}, {"x_p", q.x_p}, {"y_p", q.y_p}}; },
                        [](const Line& l) -> json {
                          return {{"kind", "line"},      {"x_start", l.x_start}, {"y_start", l.y_start},
                                  {"x_end", l.x_end},    {"y_end", l.y_end},     {"v", l.solid ? 1 : 0}};
                        },
                        [](const Circle& c) -> json {
                          return {{"kind", "circle"}, {"x_c", c.x_c}, {"y_c", c.y_c}, {"r", c.r}};
                        },
                        [](const Arc& a) -> json {
                          return {{"kind", "arc"},
                                  {"x_a", a.x_a},
                                  {"y_a", a.y_a},
                                  {"r", a.r},
                                  {"theta_start", a.theta_start},
                                  {"theta_end", a.theta_end}};
                        },
                    },
                    p);
}

}  // namespace

Document parse_json(std::string_view input) {
  json root;
  try {
    root = json::parse(input.begin(), input.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::SchemaViolation, std::string("not valid JSON: ") + e.what());
  }
  if (!root.is_object()) violation("$", "expected an object");

  Document doc;
  doc.source = SourceFormat::json;

  if (const auto it = root.find("frame"); it != root.end() && !it->is_null()) {
    NormalizationTransform t{number(*it, "scale", "$.frame"), number(*it, "offset_x", "$.frame"),
                             number(*it, "offset_y", "$.frame")};
    if (!(t.scale > 0.0)) violation("$.frame.scale", "must be positive");
    doc.sketch.frame = t;
  }

  const auto& prims = array(root, "primitives", "$");
  for (std::size_t i = 0; i < prims.size(); ++i) {
    doc.sketch.primitives.push_back(read_primitive(prims[i], "$.primitives[" + std::to_string(i) + "]"));
  }

  const auto& cons = array(root, "constraints", "$");
  for (std::size_t i = 0; i < cons.size(); ++i) {
    const auto where = "$.constraints[" + std::to_string(i) + "]";
    const auto kind_name = text(cons[i], "kind", where);
    const auto kind = constraint_kind_from_string(kind_name);
    if (!kind) violation(where + ".kind", "unknown constraint kind '" + kind_name + "'");
    Constraint c{*kind, read_refs(cons[i], where)};
    if (c.refs.size() != constraint_arity(c.kind)) {
      violation(where + ".refs", kind_name + " takes " + std::to_string(constraint_arity(c.kind)) + " references");
    }
    doc.constraints.push_back(std::move(c));
  }

  const auto& dims = array(root, "dimensions", "$");
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const auto where = "$.dimensions[" + std::to_string(i) + "]";
    const auto kind_name = text(dims[i], "kind", where);
    const auto kind = dimension_kind_from_string(kind_name);
    if (!kind) violation(where + ".kind", "unknown dimension kind '" + kind_name + "'");
    Dimension d{*kind, number(dims[i], "value", where), read_refs(dims[i], where), std::nullopt};
    if (const auto it = dims[i].find("placement"); it != dims[i].end() && !it->is_null()) {
      const auto at = where + ".placement";
      d.placement = Placement{number(*it, "offset", at), {number(*it, "anchor_x", at), number(*it, "anchor_y", at)}};
    }
    doc.dimensions.push_back(std::move(d));
  }

  check_references(doc);
  return doc;
}

std::string emit_json(const Document& doc) {
  json root = json::object();
  if (doc.sketch.frame) {
    root["frame"] = {{"scale", doc.sketch.frame->scale},
                     {"offset_x", doc.sketch.frame->offset_x},
                     {"offset_y", doc.sketch.frame->offset_y}};
  }
  json prims = json::array();
  for (const auto& p : doc.sketch.primitives) prims.push_back(write_primitive(p));
  root["primitives"] = std::move(prims);

  json cons = json::array();
  for (const auto& c : doc.constraints) {
    cons.push_back({{"kind", std::string(to_string(c.kind))}, {"refs", write_refs(c.refs)}});
  }
  root["constraints"] = std::move(cons);

  json dims = json::array();
  for (const auto& d : doc.dimensions) {
    json jd = {{"kind", std::string(to_string(d.kind))}, {"value", d.value}, {"refs", write_refs(d.refs)}};
    if (d.placement) {
      jd["placement"] = {{"offset", d.placement->offset},
                         {"anchor_x", d.placement->anchor.x},
                         {"anchor_y", d.placement->anchor.y}};
    }
    dims.push_back(std::move(jd));
  }
  root["dimensions"] = std::move(dims);

  return root.dump(2) + "\n";
}

}  // namespace ppa
