#include "rbl/report.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "rbl/common.hpp"

namespace rbl {

std::uint64_t fnv1a64(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;  // offset basis
  for (unsigned char c : text) {
    h ^= static_cast<std::uint64_t>(c);
    h *= 1099511628211ull;  // prime
  }
  return h;
}

std::string hex64(std::uint64_t h) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return std::string(buf);
}

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return std::string(buf);
}

namespace {

void ensure_parent_dir(const std::string& path) {
  std::filesystem::path p(path);
  std::filesystem::path dir = p.parent_path();
  if (dir.empty()) return;
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw Error("io-error", "cannot create directory " + dir.string());
}

void write_file(const std::string& path, const std::string& bytes,
                std::ios::openmode mode) {
  ensure_parent_dir(path);
  std::ofstream out(path, mode);
  if (!out) throw Error("io-error", "cannot open " + path + " for writing");
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  out.flush();
  if (!out) throw Error("io-error", "short write to " + path);
}

}  // namespace

void write_text_file(const std::string& path, const std::string& content) {
  write_file(path, content, std::ios::out | std::ios::trunc);
}

void write_binary_file(const std::string& path, const std::string& bytes) {
  write_file(path, bytes, std::ios::out | std::ios::trunc | std::ios::binary);
}

std::string pgm_bytes(const ClassificationGrid& grid) {
  std::string out = "P5\n" + std::to_string(grid.res) + " " +
                    std::to_string(grid.res) + "\n255\n";
  out.reserve(out.size() + grid.cells.size());
  for (const BasinVerdict& v : grid.cells) {
    char byte;
    switch (v.status) {
      case BasinVerdict::Status::not_in_basin: byte = static_cast<char>(0); break;
      case BasinVerdict::Status::undetermined: byte = static_cast<char>(128); break;
      case BasinVerdict::Status::in_basin: byte = static_cast<char>(static_cast<unsigned char>(255)); break;
      default: byte = static_cast<char>(128); break;
    }
    out.push_back(byte);
  }
  return out;
}

std::string orbit_csv(const OrbitTrace& trace) {
  const int k = trace.points.empty() ? 0 : trace.points[0].k;
  std::string out = "n";
  for (int j = 1; j <= k; ++j) {
    out += ",re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
  }
  out += ",re_u,im_u\n";
  for (std::size_t n = 0; n < trace.points.size(); ++n) {
    out += std::to_string(n);
    for (int j = 0; j < k; ++j) {
      out += "," + fmt17(trace.points[n].c[static_cast<std::size_t>(j)].real());
      out += "," + fmt17(trace.points[n].c[static_cast<std::size_t>(j)].imag());
    }
    out += "," + fmt17(trace.u_seq[n].real());
    out += "," + fmt17(trace.u_seq[n].imag());
    out += "\n";
  }
  return out;
}

std::string rates_csv(const std::vector<std::pair<long, double>>& rows) {
  std::string out = "m,max_increment\n";
  for (const auto& [m, inc] : rows) {
    out += std::to_string(m) + "," + fmt17(inc) + "\n";
  }
  return out;
}

std::string grid_stats_csv(const ClassificationGrid& grid) {
  const long total = static_cast<long>(grid.cells.size());
  const long decided = grid.n_in + grid.n_out;
  std::string out = "res,cells,in_basin,not_in_basin,undetermined,decided_fraction\n";
  out += std::to_string(grid.res) + "," + std::to_string(total) + "," +
         std::to_string(grid.n_in) + "," + std::to_string(grid.n_out) + "," +
         std::to_string(grid.n_undetermined) + "," +
         fmt17(total == 0 ? 0.0 : static_cast<double>(decided) / static_cast<double>(total)) +
         "\n";
  return out;
}

std::string points_csv(const std::vector<ComplexPoint>& pts) {
  const int k = pts.empty() ? 0 : pts[0].k;
  std::string out = "sample";
  for (int j = 1; j <= k; ++j) {
    out += ",re_z" + std::to_string(j) + ",im_z" + std::to_string(j);
  }
  out += "\n";
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out += std::to_string(i);
    for (int j = 0; j < k; ++j) {
      out += "," + fmt17(pts[i].c[static_cast<std::size_t>(j)].real());
      out += "," + fmt17(pts[i].c[static_cast<std::size_t>(j)].imag());
    }
    out += "\n";
  }
  return out;
}

}  // namespace rbl
