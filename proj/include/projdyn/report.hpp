#pragma once

#include <string>
#include <vector>

#include "projdyn/fatou.hpp"
#include "projdyn/green.hpp"

namespace projdyn {

// Deterministic double formatting for reports and grids.
std::string fmt_double(double x, int significant = 12);

// Key-value text report with a versioned schema header; insertion order is
// preserved so identical inputs serialize byte-identically.
class Report {
 public:
  explicit Report(const std::string& schema);
  void kv(const std::string& key, const std::string& value);
  void kv(const std::string& key, const char* value);
  void kv(const std::string& key, long long value);
  void kv(const std::string& key, int value);
  void kv(const std::string& key, double value);
  void kv(const std::string& key, bool value);
  void line(const std::string& raw);
  const std::string& str() const { return body_; }
  void write(const std::string& path) const;  // IoError on failure

 private:
  std::string body_;
};

void write_text_file(const std::string& path, const std::string& content);

// 8-bit binary PGM: values linearly mapped from [lo, hi] (taken from the
// finite data when lo >= hi); non-finite pixels map to 0.
void write_pgm(const std::string& path, int width, int height,
               const std::vector<double>& values, double lo = 0, double hi = -1);
void write_pgm_mask(const std::string& path, const SuppMask& mask);

// Indexed PPM with the documented palette: Fatou components cycle a fixed
// 12-color table, Julia black, near-indeterminacy red, unresolved gray.
void write_ppm_raster(const std::string& path, const FatouRaster& raster);

// Text grid dumps (header lines then rows of values).
void write_green_grid(const std::string& path, const GreenField& g);
void write_mask_grid(const std::string& path, const SuppMask& m);

}  // namespace projdyn
