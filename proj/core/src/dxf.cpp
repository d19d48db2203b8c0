#include "ppa/dxf.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "ppa/error.hpp"
#include "overloaded.hpp"

namespace ppa {

namespace {

using detail::overloaded;

constexpr std::string_view kAppId = "PPA";

struct GroupPair {
  int code;
  std::string_view value;
  std::size_t line;  // 1-based line of the code
};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::vector<GroupPair> tokenize(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const auto nl = text.find('\n', pos);
    const auto end = nl == std::string_view::npos ? text.size() : nl;
    lines.push_back(text.substr(pos, end - pos));
    pos = end + 1;
  }
  // A trailing blank line is just the final newline.
  while (!lines.empty() && trim(lines.back()).empty()) lines.pop_back();

  std::vector<GroupPair> pairs;
  pairs.reserve(lines.size() / 2);
  for (std::size_t i = 0; i < lines.size(); i += 2) {
    const auto code_text = trim(lines[i]);
    int code = 0;
    const auto [ptr, ec] = std::from_chars(code_text.data(), code_text.data() + code_text.size(), code);
    if (code_text.empty() || ec != std::errc{} || ptr != code_text.data() + code_text.size()) {
      throw Error(ErrorCode::MalformedGroupCode,
                  "line " + std::to_string(i + 1) + ": '" + std::string(code_text) + "' is not a group code");
    }
    if (i + 1 >= lines.size()) {
      throw Error(ErrorCode::TruncatedEntity, "line " + std::to_string(i + 1) + ": group code without a value");
    }
    pairs.push_back({code, trim(lines[i + 1]), i + 1});
  }
  return pairs;
}

double to_double(const GroupPair& p) {
  double v = 0.0;
  const auto s = p.value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedValue, "line " + std::to_string(p.line + 1) + ": '" + std::string(s) +
                                               "' is not a number (group code " + std::to_string(p.code) + ")");
  }
  return v;
}

long to_integer(const GroupPair& p) {
  long v = 0;
  const auto s = p.value;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size()) {
    throw Error(ErrorCode::MalformedValue, "line " + std::to_string(p.line + 1) + ": '" + std::string(s) +
                                               "' is not an integer (group code " + std::to_string(p.code) + ")");
  }
  return v;
}

// Group codes of one entity, excluding the leading (0, TYPE).
struct Entity {
  std::string_view type;
  std::size_t line;
  std::vector<GroupPair> codes;

  const GroupPair* find(int code) const {
    // Last occurrence wins before any extended data begins.
    const GroupPair* hit = nullptr;
    for (const auto& c : codes) {
      if (c.code >= 1000) break;
      if (c.code == code) hit = &c;
    }
    return hit;
  }

  double require(int code) const {
    const auto* p = find(code);
    if (!p) {
      throw Error(ErrorCode::TruncatedEntity, std::string(type) + " at line " + std::to_string(line) +
                                                  " lacks group code " + std::to_string(code));
    }
    return to_double(*p);
  }
};

bool dashed_linetype(std::string_view name) {
  std::string upper(name);
  std::transform(upper.begin(), upper.end(), upper.begin(), [](unsigned char c) { return std::toupper(c); });
  return upper.starts_with("DASH") || upper.starts_with("HIDDEN") || upper.starts_with("CENTER") ||
         upper.starts_with("PHANTOM") || upper.starts_with("DOT");
}

std::optional<DimensionKind> dimension_kind_from_code(long flags) {
  switch (flags & 0x7) {
    case 0:
    case 1: return DimensionKind::length;
    case 2:
    case 5: return DimensionKind::angle;
    case 3: return DimensionKind::diameter;
    case 4: return DimensionKind::radius;
    default: return std::nullopt;  // ordinate
  }
}

int dimension_code(DimensionKind kind) {
  switch (kind) {
    case DimensionKind::length: return 0;
    case DimensionKind::angle: return 2;
    case DimensionKind::diameter: return 3;
    case DimensionKind::radius: return 4;
  }
  return 0;
}

std::optional<Dimension> read_dimension(const Entity& e) {
  const auto* flags = e.find(70);
  if (!flags) {
    throw Error(ErrorCode::TruncatedEntity, "DIMENSION at line " + std::to_string(e.line) + " lacks group code 70");
  }
  const auto kind = dimension_kind_from_code(to_integer(*flags));
  if (!kind) return std::nullopt;

  Dimension d;
  d.kind = *kind;
  d.value = e.require(42);
  const auto* ax = e.find(11);
  const auto* ay = e.find(21);
  std::optional<double> offset;

  bool ours = false;
  std::size_t pending_index = 0;
  bool pending = false;
  for (const auto& c : e.codes) {
    if (c.code == 1001) {
      ours = c.value == kAppId;
      continue;
    }
    if (!ours || c.code < 1000) continue;
    if (c.code == 1071) {
      const long idx = to_integer(c);
      if (idx < 0) throw Error(ErrorCode::MalformedValue, "negative element index at line " + std::to_string(c.line + 1));
      pending_index = static_cast<std::size_t>(idx);
      pending = true;
    } else if (c.code == 1000 && pending) {
      const auto element = sub_element_from_string(c.value);
      if (!element) {
        throw Error(ErrorCode::MalformedValue, "unknown element '" + std::string(c.value) + "' at line " +
                                                   std::to_string(c.line + 1));
      }
      d.refs.push_back({pending_index, *element});
      pending = false;
    } else if (c.code == 1040) {
      offset = to_double(c);
    }
  }
  if (pending) {
    throw Error(ErrorCode::TruncatedEntity, "DIMENSION at line " + std::to_string(e.line) +
                                                " has an element index without an element name");
  }
  if (ax && ay) d.placement = Placement{offset.value_or(0.0), {to_double(*ax), to_double(*ay)}};
  return d;
}

// ---------------------------------------------------------------------------

class Writer {
 public:
  void pair(int code, std::string_view value) {
    char buf[8];
    std::snprintf(buf, sizeof buf, "%3d", code);
    out_ += buf;
    out_ += '\n';
    out_ += value;
    out_ += '\n';
  }
  void number(int code, double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", v);
    pair(code, buf);
  }
  void integer(int code, long long v) { pair(code, std::to_string(v)); }

  std::string take() { return std::move(out_); }

 private:
  std::string out_;
};

void write_header(Writer& w) {
  w.pair(0, "SECTION");
  w.pair(2, "HEADER");
  w.pair(9, "$ACADVER");
  w.pair(1, "AC1009");
  w.pair(0, "ENDSEC");
  w.pair(0, "SECTION");
  w.pair(2, "TABLES");
  w.pair(0, "TABLE");
  w.pair(2, "APPID");
  w.integer(70, 1);
  w.pair(0, "APPID");
  w.pair(2, kAppId);
  w.integer(70, 0);
  w.pair(0, "ENDTAB");
  w.pair(0, "ENDSEC");
}

void write_primitive(Writer& w, const Primitive& p) {
  std::visit(overloaded{
                 [&](const Point& q) {
                   w.pair(0, "POINT");
                   w.pair(8, "0");
                   w.number(10, q.x_p);
                   w.number(20, q.y_p);
                 },
                 [&](const Line& l) {
                   w.pair(0, "LINE");
                   w.pair(8, "0");
                   if (!l.solid) w.pair(6, "DASHED");
                   w.number(10, l.x_start);
                   w.number(20, l.y_start);
                   w.number(11, l.x_end);
                   w.number(21, l.y_end);
                 },
                 [&](const Circle& c) {
                   w.pair(0, "CIRCLE");
                   w.pair(8, "0");
                   w.number(10, c.x_c);
                   w.number(20, c.y_c);
                   w.number(40, c.r);
                 },
                 [&](const Arc& a) {
                   w.pair(0, "ARC");
                   w.pair(8, "0");
                   w.number(10, a.x_a);
                   w.number(20, a.y_a);
                   w.number(40, a.r);
                   w.number(50, a.theta_start);
                   w.number(51, a.theta_end);
                 },
             },
             p);
}

void write_dimension(Writer& w, const Dimension& d) {
  w.pair(0, "DIMENSION");
  w.pair(8, "0");
  if (d.placement) {
    w.number(11, d.placement->anchor.x);
    w.number(21, d.placement->anchor.y);
  }
  w.integer(70, dimension_code(d.kind));
  w.number(42, d.value);
  w.pair(1001, kAppId);
  for (const auto& r : d.refs) {
    w.integer(1071, static_cast<long long>(r.index));
    w.pair(1000, to_string(r.element));
  }
  if (d.placement) w.number(1040, d.placement->offset);
}

}  // namespace

std::size_t DxfDiagnostics::total_skipped() const {
  std::size_t n = 0;
  for (const auto& [_, count] : skipped) n += count;
  return n;
}

Document parse_dxf(std::string_view text, DxfDiagnostics* diagnostics) {
  const auto pairs = tokenize(text);

  // Locate ENTITIES.
  std::size_t i = 0;
  bool found = false;
  for (; i + 1 < pairs.size(); ++i) {
    if (pairs[i].code == 0 && pairs[i].value == "SECTION" && pairs[i + 1].code == 2 && pairs[i + 1].value == "ENTITIES") {
      i += 2;
      found = true;
      break;
    }
  }
  if (!found) throw Error(ErrorCode::EmptyEntities, "no ENTITIES section");

  std::vector<Entity> entities;
  while (i < pairs.size()) {
    const auto& head = pairs[i];
    if (head.code != 0) {
      throw Error(ErrorCode::TruncatedEntity, "line " + std::to_string(head.line) + ": expected an entity start (code 0)");
    }
    if (head.value == "ENDSEC" || head.value == "EOF") break;
    Entity e{head.value, head.line, {}};
    for (++i; i < pairs.size() && pairs[i].code != 0; ++i) e.codes.push_back(pairs[i]);
    entities.push_back(std::move(e));
  }
  if (entities.empty()) throw Error(ErrorCode::EmptyEntities, "ENTITIES section is empty");

  Document doc;
  doc.source = SourceFormat::dxf;
  DxfDiagnostics diag;
  for (const auto& e : entities) {
    if (e.type == "POINT") {
      doc.sketch.primitives.push_back(Point{e.require(10), e.require(20)});
    } else if (e.type == "LINE") {
      Line l{e.require(10), e.require(20), e.require(11), e.require(21), true};
      if (const auto* lt = e.find(6)) l.solid = !dashed_linetype(lt->value);
      doc.sketch.primitives.push_back(l);
    } else if (e.type == "CIRCLE") {
      doc.sketch.primitives.push_back(Circle{e.require(10), e.require(20), e.require(40)});
    } else if (e.type == "ARC") {
      doc.sketch.primitives.push_back(Arc{e.require(10), e.require(20), e.require(40), e.require(50), e.require(51)});
    } else if (e.type == "DIMENSION") {
      if (auto d = read_dimension(e)) {
        doc.dimensions.push_back(std::move(*d));
      } else {
        ++diag.skipped["DIMENSION(ordinate)"];
      }
    } else {
      ++diag.skipped[std::string(e.type)];
    }
  }
  check_references(doc);
  if (diagnostics) *diagnostics = std::move(diag);
  return doc;
}

std::string emit_dxf(const Document& doc, bool annotated) {
  Writer w;
  write_header(w);
  w.pair(0, "SECTION");
  w.pair(2, "ENTITIES");
  for (const auto& p : doc.sketch.primitives) write_primitive(w, p);
  if (annotated) {
    for (const auto& d : doc.dimensions) write_dimension(w, d);
  }
  w.pair(0, "ENDSEC");
  w.pair(0, "EOF");
  return w.take();
}

}  // namespace ppa
