//==============================================================================
// io.hpp
// CSV and JSON artifact writers. Every floating-point value is printed with
// 17 significant digits so that files round-trip exactly.
//==============================================================================
#pragma once

#include <filesystem>
#include <fstream>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "frontlab/evolution.hpp"

namespace frontlab::io {

namespace fs = std::filesystem;

std::string format_double(double v);

/// Header `# t=<time>`, then `x,phi` rows at the collocation points.
void write_snapshot(const fs::path& path, const spectral::FrontState& state);
/// Columns `k,re,im` for k = 0 .. n/2-1.
void write_spectrum(const fs::path& path, const spectral::FrontState& state);

/// Generic numeric table.
void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

/// Writes to a temporary sibling and renames, so readers never see a
/// partial file.
void write_text_atomic(const fs::path& path, const std::string& text);
void write_json_atomic(const fs::path& path, const nlohmann::json& doc);

/// Streaming writer for `t,H,P,strip_width,max_slope,Hs_<s>...,max_slope_x,singular_x`.
/// strip_width is `nan` when the fit is flagged.
class DiagnosticsWriter {
 public:
  DiagnosticsWriter(const fs::path& path, std::span<const double> s_list);
  void append(const evolution::DiagnosticsRecord& rec);

 private:
  std::ofstream out_;
  std::size_t n_norms_;
};

/// Label used in column names and file names, e.g. 1.5 → "1.5".
std::string short_label(double v);

}  // namespace frontlab::io
