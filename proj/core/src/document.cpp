#include "ppa/document.hpp"

#include <string>

#include "ppa/error.hpp"

namespace ppa {

std::string_view to_string(SourceFormat f) noexcept { return f == SourceFormat::dxf ? "dxf" : "json"; }

void check_references(const Document& doc) {
  const std::size_t n = doc.sketch.primitives.size();
  auto check = [n](const std::vector<ElementRef>& refs, std::string_view what, std::size_t item) {
    for (const auto& r : refs) {
      if (r.index >= n) {
        throw Error(ErrorCode::DanglingReference, std::string(what) + " " + std::to_string(item) +
                                                      " references primitive " + std::to_string(r.index) +
                                                      " but the sketch has " + std::to_string(n));
      }
    }
  };
  for (std::size_t i = 0; i < doc.constraints.size(); ++i) check(doc.constraints[i].refs, "constraint", i);
  for (std::size_t i = 0; i < doc.dimensions.size(); ++i) check(doc.dimensions[i].refs, "dimension", i);
}

}  // namespace ppa
