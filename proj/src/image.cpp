// Copyright 2026 The scseg Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "scseg/image.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include <png.h>

namespace scseg {

namespace {

bool EndsWith(const std::string& s, const std::string& suffix) {
  if (s.size() < suffix.size()) return false;
  std::string tail = s.substr(s.size() - suffix.size());
  std::transform(tail.begin(), tail.end(), tail.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return tail == suffix;
}

std::vector<std::uint8_t> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

// Skips whitespace and '#' comments in a netpbm header.
int ReadHeaderInt(const std::vector<std::uint8_t>& buf, std::size_t& pos, const std::string& path) {
  while (pos < buf.size()) {
    if (buf[pos] == '#') {
      while (pos < buf.size() && buf[pos] != '\n') ++pos;
    } else if (std::isspace(buf[pos])) {
      ++pos;
    } else {
      break;
    }
  }
  int value = 0;
  bool any = false;
  while (pos < buf.size() && std::isdigit(buf[pos])) {
    value = value * 10 + (buf[pos] - '0');
    if (value > (1 << 24)) throw InputError(path + ": netpbm header value too large");
    any = true;
    ++pos;
  }
  if (!any) throw InputError(path + ": malformed netpbm header");
  return value;
}

Image DecodeNetpbm(const std::vector<std::uint8_t>& buf, const std::string& path) {
  const int channels = buf[1] == '5' ? 1 : 3;
  std::size_t pos = 2;
  const int w = ReadHeaderInt(buf, pos, path);
  const int h = ReadHeaderInt(buf, pos, path);
  const int maxval = ReadHeaderInt(buf, pos, path);
  if (maxval != 255) throw InputError(path + ": only 8-bit netpbm (maxval 255) is supported");
  ++pos;  // single whitespace before raster
  Image img(w, h, channels);
  if (buf.size() < pos + img.data.size()) throw InputError(path + ": truncated raster");
  std::copy_n(buf.begin() + static_cast<std::ptrdiff_t>(pos), img.data.size(), img.data.begin());
  return img;
}

Image DecodePng(const std::vector<std::uint8_t>& buf, const std::string& path) {
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  if (!png_image_begin_read_from_memory(&png, buf.data(), buf.size())) {
    throw InputError(path + ": " + png.message);
  }
  if (png.format & PNG_FORMAT_FLAG_LINEAR) {
    png_image_free(&png);
    throw InputError(path + ": 16-bit images are not supported");
  }
  const bool color = (png.format & PNG_FORMAT_FLAG_COLOR) != 0;
  png.format = color ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  Image img(static_cast<int>(png.width), static_cast<int>(png.height), color ? 3 : 1);
  if (!png_image_finish_read(&png, nullptr, img.data.data(), 0, nullptr)) {
    const std::string msg = png.message;
    png_image_free(&png);
    throw InputError(path + ": " + msg);
  }
  return img;
}

}  // namespace

Image ReadImage(const std::string& path) {
  const std::vector<std::uint8_t> buf = ReadFile(path);
  if (buf.size() >= 2 && buf[0] == 'P' && (buf[1] == '5' || buf[1] == '6')) {
    return DecodeNetpbm(buf, path);
  }
  if (buf.size() >= 8 && png_sig_cmp(buf.data(), 0, 8) == 0) return DecodePng(buf, path);
  throw InputError(path + ": not an 8-bit PNG or binary PGM/PPM");
}

std::vector<std::uint8_t> EncodePng(const Image& image) {
  if (image.channels != 1 && image.channels != 3) {
    throw ParameterError("EncodePng: channels must be 1 or 3");
  }
  png_image png;
  std::memset(&png, 0, sizeof(png));
  png.version = PNG_IMAGE_VERSION;
  png.width = static_cast<png_uint_32>(image.width);
  png.height = static_cast<png_uint_32>(image.height);
  png.format = image.channels == 3 ? PNG_FORMAT_RGB : PNG_FORMAT_GRAY;
  png_alloc_size_t size = 0;
  if (!png_image_write_to_memory(&png, nullptr, &size, 0, image.data.data(), 0, nullptr)) {
    throw InputError(std::string("png encode: ") + png.message);
  }
  std::vector<std::uint8_t> out(size);
  if (!png_image_write_to_memory(&png, out.data(), &size, 0, image.data.data(), 0, nullptr)) {
    throw InputError(std::string("png encode: ") + png.message);
  }
  out.resize(size);
  return out;
}

void WriteImage(const std::string& path, const Image& image) {
  std::vector<std::uint8_t> bytes;
  if (EndsWith(path, ".pgm") || EndsWith(path, ".ppm")) {
    std::ostringstream header;
    header << (image.channels == 1 ? "P5" : "P6") << "\n"
           << image.width << " " << image.height << "\n255\n";
    const std::string h = header.str();
    bytes.assign(h.begin(), h.end());
    bytes.insert(bytes.end(), image.data.begin(), image.data.end());
  } else {
    bytes = EncodePng(image);
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw InputError("write failed for " + path);
}

ImagePlanes ToPlanes(const Image& image) {
  ImagePlanes planes;
  planes.luma.resize(image.height, image.width);
  if (image.channels == 1) {
    for (int r = 0; r < image.height; ++r)
      for (int c = 0; c < image.width; ++c) planes.luma(r, c) = image.at(r, c);
    return planes;
  }
  if (image.channels != 3) throw InputError("ToPlanes: unsupported channel count");
  Eigen::MatrixXd cb(image.height, image.width), cr(image.height, image.width);
  auto clamp = [](double v) { return std::clamp(v, 0.0, 255.0); };
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      const double red = image.at(r, c, 0);
      const double green = image.at(r, c, 1);
      const double blue = image.at(r, c, 2);
      planes.luma(r, c) = clamp(0.299 * red + 0.587 * green + 0.114 * blue);
      cb(r, c) = clamp(128.0 - 0.168736 * red - 0.331264 * green + 0.5 * blue);
      cr(r, c) = clamp(128.0 + 0.5 * red - 0.418688 * green - 0.081312 * blue);
    }
  }
  planes.cb = std::move(cb);
  planes.cr = std::move(cr);
  return planes;
}

Image PadToMultiple(const Image& image, int multiple) {
  if (multiple < 1) throw ParameterError("PadToMultiple: multiple must be positive");
  const int w = (image.width + multiple - 1) / multiple * multiple;
  const int h = (image.height + multiple - 1) / multiple * multiple;
  Image out(w, h, image.channels);
  for (int r = 0; r < h; ++r) {
    const int sr = std::min(r, image.height - 1);
    for (int c = 0; c < w; ++c) {
      const int sc = std::min(c, image.width - 1);
      for (int ch = 0; ch < image.channels; ++ch) out.at(r, c, ch) = image.at(sr, sc, ch);
    }
  }
  return out;
}

Image MaskToImage(const ForegroundMask& mask) {
  Image img(mask.cols(), mask.rows(), 1);
  for (int r = 0; r < mask.rows(); ++r)
    for (int c = 0; c < mask.cols(); ++c) img.at(r, c) = mask(r, c) ? 255 : 0;
  return img;
}

ForegroundMask ImageToMask(const Image& image) {
  ForegroundMask mask(image.height, image.width);
  for (int r = 0; r < image.height; ++r)
    for (int c = 0; c < image.width; ++c) mask.set(r, c, image.at(r, c, 0) != 0);
  return mask;
}

Image MatrixToImage(const Eigen::MatrixXd& m) {
  Image img(static_cast<int>(m.cols()), static_cast<int>(m.rows()), 1);
  for (int r = 0; r < m.rows(); ++r) {
    for (int c = 0; c < m.cols(); ++c) {
      img.at(r, c) = static_cast<std::uint8_t>(std::lround(std::clamp(m(r, c), 0.0, 255.0)));
    }
  }
  return img;
}

}  // namespace scseg
