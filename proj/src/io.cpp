#include "frontlab/io.hpp"

#include <cstdio>
#include <stdexcept>

namespace frontlab::io {
namespace {

std::ofstream open_or_throw(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string short_label(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

void write_snapshot(const fs::path& path, const spectral::FrontState& state) {
  auto out = open_or_throw(path);
  const auto values = state.values();
  out << "# t=" << format_double(state.time()) << "\n";
  out << "x,phi\n";
  for (int j = 0; j < state.grid().size(); ++j)
    out << format_double(state.grid().point(j)) << ',' << format_double(values[j]) << '\n';
}

void write_spectrum(const fs::path& path, const spectral::FrontState& state) {
  auto out = open_or_throw(path);
  out << "k,re,im\n";
  for (int k = 0; k < state.grid().k_max(); ++k) {
    const auto c = state[k];
    out << k << ',' << format_double(c.real()) << ',' << format_double(c.imag()) << '\n';
  }
}

void write_csv(const fs::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows) {
  auto out = open_or_throw(path);
  for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
  out << '\n';
  for (const auto& row : rows) {
    if (row.size() != header.size())
      throw std::invalid_argument("write_csv: row width does not match header");
    for (std::size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << format_double(row[i]);
    out << '\n';
  }
}

void write_text_atomic(const fs::path& path, const std::string& text) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    auto out = open_or_throw(tmp);
    out << text;
    if (!out) throw std::runtime_error("short write to '" + tmp.string() + "'");
  }
  fs::rename(tmp, path);
}

void write_json_atomic(const fs::path& path, const nlohmann::json& doc) {
  write_text_atomic(path, doc.dump(2) + "\n");
}

DiagnosticsWriter::DiagnosticsWriter(const fs::path& path, std::span<const double> s_list)
    : out_(open_or_throw(path)), n_norms_(s_list.size()) {
  out_ << "t,H,P,strip_width,max_slope";
  for (double s : s_list) out_ << ",Hs_" << short_label(s);
  out_ << ",max_slope_x,singular_x\n";
}

void DiagnosticsWriter::append(const evolution::DiagnosticsRecord& rec) {
  if (rec.sobolev_norms.size() != n_norms_)
    throw std::invalid_argument("DiagnosticsWriter: norm count does not match header");
  out_ << format_double(rec.time) << ',' << format_double(rec.hamiltonian) << ','
       << format_double(rec.momentum) << ','
       << (rec.strip_flagged ? std::string("nan") : format_double(rec.strip_width)) << ','
       << format_double(rec.max_slope);
  for (const auto& [s, v] : rec.sobolev_norms) out_ << ',' << format_double(v);
  out_ << ',' << format_double(rec.max_slope_x) << ',' << format_double(rec.singular_x) << '\n';
  out_.flush();
}

}  // namespace frontlab::io
