#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>

#include "ppa/error.hpp"
#include "ppa/raster.hpp"

namespace ppa {

namespace {

void append_bytes(png_structp png, png_bytep data, png_size_t length) {
  auto* out = static_cast<std::vector<std::uint8_t>*>(png_get_io_ptr(png));
  out->insert(out->end(), data, data + length);
}

void flush_nothing(png_structp) {}

// Kept free of C++ objects with destructors: libpng reports errors by
// longjmp-ing back into this frame.
bool write_png(const std::uint8_t* rows, std::size_t width, std::size_t height, std::vector<std::uint8_t>* out) {
  png_structp png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr, nullptr);
  if (!png) return false;
  png_infop info = png_create_info_struct(png);
  if (!info || setjmp(png_jmpbuf(png))) {
    png_destroy_write_struct(&png, &info);
    return false;
  }
  png_set_write_fn(png, out, append_bytes, flush_nothing);
  png_set_IHDR(png, info, static_cast<png_uint_32>(width), static_cast<png_uint_32>(height), 8, PNG_COLOR_TYPE_GRAY,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT, PNG_FILTER_TYPE_DEFAULT);
  png_write_info(png, info);
  for (std::size_t r = 0; r < height; ++r) png_write_row(png, rows + r * width);
  png_write_end(png, nullptr);
  png_destroy_write_struct(&png, &info);
  return true;
}

}  // namespace

std::vector<std::uint8_t> encode_png(const RasterImage& image) {
  if (image.width == 0 || image.height == 0) throw Error(ErrorCode::InvalidArgument, "cannot encode an empty image");

  std::vector<std::uint8_t> rows(image.width * image.height);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const double coverage = std::clamp(image.pixels[i], 0.0, 1.0);
    rows[i] = static_cast<std::uint8_t>(255 - std::lround(coverage * 255.0));
  }
  std::vector<std::uint8_t> out;
  if (!write_png(rows.data(), image.width, image.height, &out)) {
    throw Error(ErrorCode::InvalidArgument, "png encoding failed");
  }
  return out;
}

}  // namespace ppa
