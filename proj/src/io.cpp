#include "dpc/io.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <system_error>

#include "json.hpp"

namespace dpc {

namespace {

constexpr std::array<char, 8> kMagic = {'D', 'P', 'C', 'P', 'T', 'S', '1', '\0'};

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

bool parse_field(std::string_view field, double& out) {
  field = trim(field);
  if (field.empty()) return false;
  const char* first = field.data();
  const char* last = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

bool parse_row(std::string_view line, std::vector<double>& out) {
  out.clear();
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    const std::string_view field =
        comma == std::string_view::npos ? line.substr(start) : line.substr(start, comma - start);
    double value = 0.0;
    if (!parse_field(field, value)) return false;
    out.push_back(value);
    if (comma == std::string_view::npos) return true;
    start = comma + 1;
  }
}

PointSet read_points_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  if (!in || magic != kMagic) throw std::runtime_error(path + ": bad binary header");
  std::uint64_t n = 0;
  std::uint64_t d = 0;
  in.read(reinterpret_cast<char*>(&n), sizeof(n));
  in.read(reinterpret_cast<char*>(&d), sizeof(d));
  if (!in || n == 0 || d == 0) throw std::runtime_error(path + ": bad binary dimensions");
  std::vector<double> coords(n * d);
  in.read(reinterpret_cast<char*>(coords.data()),
          static_cast<std::streamsize>(coords.size() * sizeof(double)));
  if (!in) throw std::runtime_error(path + ": truncated binary point data");
  return PointSet(std::move(coords), static_cast<std::size_t>(d));
}

}  // namespace

std::string format_double(double value) {
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  std::array<char, 64> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  if (ec != std::errc()) throw std::runtime_error("format_double failed");
  return std::string(buf.data(), ptr);
}

bool is_binary_points_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::array<char, 8> magic{};
  in.read(magic.data(), magic.size());
  return in && magic == kMagic;
}

PointSet read_points(const std::string& path) {
  if (is_binary_points_file(path)) return read_points_binary(path);

  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<double> coords;
  std::size_t dim = 0;
  std::size_t lineno = 0;
  std::size_t rows = 0;
  bool header_skipped = false;
  std::string line;
  std::vector<double> row;
  while (std::getline(in, line)) {
    ++lineno;
    if (trim(line).empty()) continue;
    if (!parse_row(line, row)) {
      if (rows == 0 && !header_skipped) {
        header_skipped = true;  // a single non-numeric leading row is a header
        continue;
      }
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": cannot parse row");
    }
    for (double v : row) {
      if (!std::isfinite(v)) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": non-finite coordinate");
      }
    }
    if (rows == 0) {
      dim = row.size();
    } else if (row.size() != dim) {
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected " +
                               std::to_string(dim) + " fields, got " +
                               std::to_string(row.size()));
    }
    coords.insert(coords.end(), row.begin(), row.end());
    ++rows;
  }
  if (in.bad()) throw std::runtime_error(path + ": read error");
  if (rows == 0) throw std::runtime_error(path + ": no points");
  return PointSet(std::move(coords), dim);
}

void write_points_csv(const std::string& path, const PointSet& points) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  std::string line;
  for (std::size_t i = 0; i < points.size(); ++i) {
    line.clear();
    const PointView p = points[i];
    for (std::size_t k = 0; k < points.dim(); ++k) {
      if (k > 0) line += ',';
      line += format_double(p[k]);
    }
    line += '\n';
    out << line;
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_points_binary(const std::string& path, const PointSet& points) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out.write(kMagic.data(), kMagic.size());
  const std::uint64_t n = points.size();
  const std::uint64_t d = points.dim();
  out.write(reinterpret_cast<const char*>(&n), sizeof(n));
  out.write(reinterpret_cast<const char*>(&d), sizeof(d));
  out.write(reinterpret_cast<const char*>(points.coords().data()),
            static_cast<std::streamsize>(points.coords().size() * sizeof(double)));
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_labels(const std::string& path, const DpcResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < result.labels.size(); ++i) {
    const std::int64_t label = result.labels[i];
    const std::int64_t external = label == kNoiseLabel ? -1 : label + 1;
    out << (i + 1) << ',' << external << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

void write_decision_graph(const std::string& path, const DpcResult& result) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (std::size_t i = 0; i < result.rho.size(); ++i) {
    out << (i + 1) << ',' << result.rho[i] << ',' << format_double(result.delta[i]) << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

std::uint64_t labels_digest(const std::vector<std::int64_t>& labels) {
  std::uint64_t h = 1469598103934665603ull;
  for (std::int64_t l : labels) {
    auto v = static_cast<std::uint64_t>(l);
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (v >> (8 * byte)) & 0xffu;
      h *= 1099511628211ull;
    }
  }
  return h;
}

namespace {

// timings are reported at millisecond resolution
double to_ms_resolution(double seconds) { return std::round(seconds * 1000.0) / 1000.0; }

}  // namespace

std::string run_report_json(const RunReport& report) {
  nlohmann::json j;
  j["step_times"] = {{"build", to_ms_resolution(report.step_times.build)},
                     {"density", to_ms_resolution(report.step_times.density)},
                     {"dependent", to_ms_resolution(report.step_times.dependent)},
                     {"linkage", to_ms_resolution(report.step_times.linkage)}};
  j["n"] = report.n;
  j["d"] = report.d;
  j["d_cut"] = report.params.d_cut;
  j["rho_min"] = report.params.rho_min;
  j["delta_min"] = report.params.delta_min;
  j["algo"] = to_string(report.algo);
  j["threads"] = report.threads;
  j["clusters"] = report.clusters;
  j["noise"] = report.noise;
  return j.dump(2);
}

std::string run_report_csv_header() {
  return "n,d,d_cut,rho_min,delta_min,algo,threads,t_build,t_density,t_dependent,t_linkage,"
         "t_total,clusters,noise";
}

std::string run_report_csv_row(const RunReport& report) {
  std::ostringstream out;
  out << report.n << ',' << report.d << ',' << format_double(report.params.d_cut) << ','
      << format_double(report.params.rho_min) << ',' << format_double(report.params.delta_min)
      << ',' << to_string(report.algo) << ',' << report.threads << ','
      << format_double(to_ms_resolution(report.step_times.build)) << ','
      << format_double(to_ms_resolution(report.step_times.density)) << ','
      << format_double(to_ms_resolution(report.step_times.dependent)) << ','
      << format_double(to_ms_resolution(report.step_times.linkage)) << ','
      << format_double(to_ms_resolution(report.step_times.total())) << ',' << report.clusters
      << ',' << report.noise;
  return out.str();
}

}  // namespace dpc
