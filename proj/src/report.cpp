#include "projdyn/report.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>

#include "projdyn/error.hpp"

namespace projdyn {

std::string fmt_double(double x, int significant) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) x = 0.0;  // normalize -0
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.*g", significant, x);
  return buf;
}

Report::Report(const std::string& schema) { body_ = schema + "\n"; }

void Report::kv(const std::string& key, const std::string& value) {
  body_ += key + ": " + value + "\n";
}
void Report::kv(const std::string& key, const char* value) {
  kv(key, std::string(value));
}
void Report::kv(const std::string& key, long long value) {
  kv(key, std::to_string(value));
}
void Report::kv(const std::string& key, int value) {
  kv(key, std::to_string(value));
}
void Report::kv(const std::string& key, double value) {
  kv(key, fmt_double(value));
}
void Report::kv(const std::string& key, bool value) {
  kv(key, value ? "yes" : "no");
}
void Report::line(const std::string& raw) { body_ += raw + "\n"; }

void Report::write(const std::string& path) const {
  write_text_file(path, body_);
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open for writing: " + path);
  out << content;
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

namespace {

void write_binary(const std::string& path, const std::string& header,
                  const std::vector<unsigned char>& pixels) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(Errc::IoError, "cannot open for writing: " + path);
  out << header;
  out.write(reinterpret_cast<const char*>(pixels.data()),
            static_cast<std::streamsize>(pixels.size()));
  if (!out) throw Error(Errc::IoError, "write failed: " + path);
}

}  // namespace

void write_pgm(const std::string& path, int width, int height,
               const std::vector<double>& values, double lo, double hi) {
  if (lo >= hi) {
    lo = 1e300;
    hi = -1e300;
    for (double v : values)
      if (std::isfinite(v)) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    if (lo >= hi) { lo = 0; hi = 1; }
  }
  std::vector<unsigned char> px(values.size(), 0);
  for (size_t k = 0; k < values.size(); ++k) {
    double v = values[k];
    if (!std::isfinite(v)) continue;
    double t = (v - lo) / (hi - lo);
    t = std::min(1.0, std::max(0.0, t));
    px[k] = static_cast<unsigned char>(std::lround(t * 255.0));
  }
  char header[128];
  std::snprintf(header, sizeof header, "P5\n# range %s %s\n%d %d\n255\n",
                fmt_double(lo).c_str(), fmt_double(hi).c_str(), width, height);
  write_binary(path, header, px);
}

void write_pgm_mask(const std::string& path, const SuppMask& mask) {
  std::vector<unsigned char> px(mask.mask.size());
  for (size_t k = 0; k < mask.mask.size(); ++k) px[k] = mask.mask[k] ? 255 : 0;
  char header[128];
  std::snprintf(header, sizeof header, "P5\n# tau %s\n%d %d\n255\n",
                fmt_double(mask.tau).c_str(), mask.slice.width,
                mask.slice.height);
  write_binary(path, header, px);
}

namespace {

// Component palette; labels cycle through it.
const unsigned char kPalette[12][3] = {
    {66, 135, 245},  {86, 196, 145},  {244, 180, 65},  {156, 102, 235},
    {52, 183, 235},  {235, 137, 190}, {148, 201, 88},  {230, 112, 70},
    {96, 125, 210},  {90, 210, 200},  {200, 175, 60},  {170, 90, 160},
};

}  // namespace

void write_ppm_raster(const std::string& path, const FatouRaster& raster) {
  const int w = raster.slice.width, h = raster.slice.height;
  std::vector<unsigned char> px(static_cast<size_t>(w) * h * 3, 0);
  for (int j = 0; j < h; ++j)
    for (int i = 0; i < w; ++i) {
      int k = raster.idx(i, j);
      unsigned char* out = &px[3 * static_cast<size_t>(k)];
      switch (raster.verdicts[k]) {
        case FatouVerdict::Fatou: {
          int label = raster.components[k];
          const unsigned char* c = kPalette[(label - 1 + 1200) % 12];
          out[0] = c[0]; out[1] = c[1]; out[2] = c[2];
          break;
        }
        case FatouVerdict::Julia:
          out[0] = out[1] = out[2] = 0;
          break;
        case FatouVerdict::NearIndeterminacy:
          out[0] = 220; out[1] = 40; out[2] = 40;
          break;
        case FatouVerdict::Unresolved:
          out[0] = out[1] = out[2] = 128;
          break;
      }
    }
  char header[64];
  std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", w, h);
  write_binary(path, header, px);
}

void write_green_grid(const std::string& path, const GreenField& g) {
  std::string out = "projdyn-grid v1\n";
  out += "kind: green\n";
  out += "slice: " + g.slice.str() + "\n";
  out += "depth: " + std::to_string(g.depth) + "\n";
  for (int j = 0; j < g.slice.height; ++j) {
    for (int i = 0; i < g.slice.width; ++i) {
      int k = g.idx(i, j);
      if (i) out += " ";
      out += g.status[k] == PixelStatus::OK ? fmt_double(g.v[k]) : "dead";
    }
    out += "\n";
  }
  write_text_file(path, out);
}

void write_mask_grid(const std::string& path, const SuppMask& m) {
  std::string out = "projdyn-grid v1\n";
  out += "kind: mask\n";
  out += "slice: " + m.slice.str() + "\n";
  out += "tau: " + fmt_double(m.tau) + "\n";
  for (int j = 0; j < m.slice.height; ++j) {
    for (int i = 0; i < m.slice.width; ++i) {
      if (i) out += " ";
      out += m.mask[m.idx(i, j)] ? "1" : "0";
    }
    out += "\n";
  }
  write_text_file(path, out);
}

}  // namespace projdyn
