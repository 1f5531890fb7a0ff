#pragma once

// PNG (via libpng's simplified API) and binary PPM (P6) raster I/O, plus
// single-channel PNG masks where values above 127 mark foreground.

#include <png.h>

#include <cctype>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <string>
#include <vector>

#include "mcm/error.hpp"
#include "mcm/imaging.hpp"

namespace mcm {

namespace io_detail {

inline std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw_io("cannot open file: " + path.string());
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_file(const std::filesystem::path& path, const void* data,
                       std::size_t size) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw_io("cannot write file: " + path.string());
  out.write(static_cast<const char*>(data), static_cast<std::streamsize>(size));
  if (!out) throw_io("write failed: " + path.string());
}

inline bool is_png(const std::vector<std::uint8_t>& bytes) {
  return bytes.size() >= 8 && png_sig_cmp(bytes.data(), 0, 8) == 0;
}

// Decodes a PNG held in memory to 8-bit samples in the requested layout.
inline std::vector<std::uint8_t> decode_png(const std::vector<std::uint8_t>& bytes,
                                            png_uint_32 format, int& width,
                                            int& height,
                                            const std::string& name) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&image, bytes.data(), bytes.size())) {
    throw_io("cannot decode PNG " + name + ": " + image.message);
  }
  image.format = format;
  if (image.width == 0 || image.height == 0) {
    png_image_free(&image);
    throw_io("zero-dimension image: " + name);
  }
  std::vector<std::uint8_t> samples(PNG_IMAGE_SIZE(image));
  if (!png_image_finish_read(&image, nullptr, samples.data(), 0, nullptr)) {
    std::string message = image.message;
    png_image_free(&image);
    throw_io("cannot decode PNG " + name + ": " + message);
  }
  width = static_cast<int>(image.width);
  height = static_cast<int>(image.height);
  return samples;
}

inline std::vector<std::uint8_t> encode_png(const std::uint8_t* samples,
                                            int width, int height,
                                            png_uint_32 format) {
  png_image image;
  std::memset(&image, 0, sizeof image);
  image.version = PNG_IMAGE_VERSION;
  image.width = static_cast<png_uint_32>(width);
  image.height = static_cast<png_uint_32>(height);
  image.format = format;

  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&image, nullptr, &size, 0, samples, 0,
                                 nullptr)) {
    throw_io(std::string("PNG encode failed: ") + image.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&image, out.data(), &size, 0, samples, 0,
                                 nullptr)) {
    throw_io(std::string("PNG encode failed: ") + image.message);
  }
  out.resize(size);
  return out;
}

// Minimal P6 reader: whitespace/comment separated header, maxval <= 255.
inline ImageRaster decode_ppm(const std::vector<std::uint8_t>& bytes,
                              const std::string& name) {
  std::size_t pos = 2;
  auto next_token = [&]() -> long {
    while (pos < bytes.size()) {
      if (bytes[pos] == '#') {
        while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
      } else if (std::isspace(bytes[pos])) {
        ++pos;
      } else {
        break;
      }
    }
    if (pos >= bytes.size() || !std::isdigit(bytes[pos])) {
      throw_io("malformed PPM header: " + name);
    }
    long value = 0;
    while (pos < bytes.size() && std::isdigit(bytes[pos])) {
      value = value * 10 + (bytes[pos++] - '0');
      if (value > (1L << 24)) throw_io("PPM dimension too large: " + name);
    }
    return value;
  };

  const long width = next_token();
  const long height = next_token();
  const long maxval = next_token();
  if (width == 0 || height == 0) throw_io("zero-dimension image: " + name);
  if (maxval <= 0 || maxval > 255) {
    throw_io("unsupported PPM maxval " + std::to_string(maxval) + ": " + name);
  }
  if (pos >= bytes.size() || !std::isspace(bytes[pos])) {
    throw_io("malformed PPM header: " + name);
  }
  ++pos;

  const std::size_t count = static_cast<std::size_t>(width) * height;
  if (bytes.size() - pos < count * 3) throw_io("truncated PPM data: " + name);

  std::vector<Rgb> pixels(count);
  auto scale = [maxval](std::uint8_t v) {
    if (maxval == 255) return v;
    const long scaled = (static_cast<long>(v) * 255 + maxval / 2) / maxval;
    return static_cast<std::uint8_t>(std::min(255L, scaled));
  };
  for (std::size_t i = 0; i < count; ++i) {
    const std::uint8_t* p = &bytes[pos + 3 * i];
    pixels[i] = {scale(p[0]), scale(p[1]), scale(p[2])};
  }
  return ImageRaster(static_cast<int>(width), static_cast<int>(height),
                     std::move(pixels));
}

}  // namespace io_detail

// Loads a PNG or binary PPM (P6) file, detected by content.
inline ImageRaster load_image(const std::filesystem::path& path) {
  const auto bytes = io_detail::read_file(path);
  const std::string name = path.string();
  if (io_detail::is_png(bytes)) {
    int width = 0, height = 0;
    auto samples =
        io_detail::decode_png(bytes, PNG_FORMAT_RGB, width, height, name);
    std::vector<Rgb> pixels(static_cast<std::size_t>(width) * height);
    for (std::size_t i = 0; i < pixels.size(); ++i) {
      pixels[i] = {samples[3 * i], samples[3 * i + 1], samples[3 * i + 2]};
    }
    return ImageRaster(width, height, std::move(pixels));
  }
  if (bytes.size() >= 2 && bytes[0] == 'P' && bytes[1] == '6') {
    return io_detail::decode_ppm(bytes, name);
  }
  throw_io("unsupported image format (expected PNG or P6 PPM): " + name);
}

inline BlobMask load_mask(const std::filesystem::path& path) {
  const auto bytes = io_detail::read_file(path);
  const std::string name = path.string();
  if (!io_detail::is_png(bytes)) throw_io("mask is not a PNG file: " + name);
  int width = 0, height = 0;
  const auto samples =
      io_detail::decode_png(bytes, PNG_FORMAT_GRAY, width, height, name);
  BlobMask mask(width, height);
  for (int y = 0; y < height; ++y) {
    for (int x = 0; x < width; ++x) {
      mask.set(x, y, samples[static_cast<std::size_t>(y) * width + x] > 127);
    }
  }
  return mask;
}

inline std::vector<std::uint8_t> encode_png(const ImageRaster& raster) {
  std::vector<std::uint8_t> samples;
  samples.reserve(raster.pixels().size() * 3);
  for (const Rgb& px : raster.pixels()) {
    samples.insert(samples.end(), {px.r, px.g, px.b});
  }
  return io_detail::encode_png(samples.data(), raster.width(), raster.height(),
                               PNG_FORMAT_RGB);
}

inline void save_png(const ImageRaster& raster,
                     const std::filesystem::path& path) {
  const auto bytes = encode_png(raster);
  io_detail::write_file(path, bytes.data(), bytes.size());
}

inline void save_mask_png(const BlobMask& mask,
                          const std::filesystem::path& path) {
  std::vector<std::uint8_t> samples(mask.flags().size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    samples[i] = mask.flags()[i] ? 255 : 0;
  }
  const auto bytes = io_detail::encode_png(samples.data(), mask.width(),
                                           mask.height(), PNG_FORMAT_GRAY);
  io_detail::write_file(path, bytes.data(), bytes.size());
}

inline void save_ppm(const ImageRaster& raster,
                     const std::filesystem::path& path) {
  std::string data = "P6\n" + std::to_string(raster.width()) + " " +
                     std::to_string(raster.height()) + "\n255\n";
  for (const Rgb& px : raster.pixels()) {
    data.push_back(static_cast<char>(px.r));
    data.push_back(static_cast<char>(px.g));
    data.push_back(static_cast<char>(px.b));
  }
  io_detail::write_file(path, data.data(), data.size());
}

}  // namespace mcm
